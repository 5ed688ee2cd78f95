"""
Counting systems of distinct representatives
============================================

A family ``(A_1, ..., A_n)`` is stored as bit-masks over a dense ground
set. ``count_sdr`` runs a subset DP over the members; ``enumerate_sdrs``
lists the representatives themselves and serves as a cross-check.
"""

from sdrkit import SetFamily, count_sdr, enumerate_sdrs, has_sdr

family = SetFamily.from_sets([["a", "b", "c"], ["b", "c"], ["c", "d"]])
print(family)
print("SDRs:", count_sdr(family))

# The enumeration fills members in order and tries elements in dense-index
# order, so the listing below is stable between runs.
labels = family.ground.labels
for sdr in enumerate_sdrs(family).sequences:
    print("  ", tuple(labels[x] for x in sdr))

# Hall's condition fails when three members share two elements.
crowded = SetFamily.from_sets([[1, 2], [1, 2], [2, 1]])
print("has SDR:", has_sdr(crowded), "count:", count_sdr(crowded))

# Counts are exact Python integers, so they never overflow.
wide = SetFamily.from_sets([range(k, k + 40) for k in range(8)])
print("8 overlapping 40-sets:", count_sdr(wide))
