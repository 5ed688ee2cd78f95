"""
Closed forms for the extremal families
======================================

The star family ``A_i = {i, n+1, ..., n+t}`` and its weighted relative
(disjoint private blocks of sizes ``a_i`` plus one shared ``t``-block) have
SDR counts given by short sums. Here they are checked against the DP.
"""

from sdrkit import chang_U, construct_bar, construct_star, count_sdr, valued_U

print(" t\\n " + "".join(f"{n:>6}" for n in range(1, 8)))
for t in range(5):
    row = [chang_U(t, n) for n in range(1, 8)]
    assert row == [count_sdr(construct_star(t, n)) for n in range(1, 8)]
    print(f"{t:>3}  " + "".join(f"{v:>6}" for v in row))

# t = 1 gives n + 1 and t = 2 gives n^2 + n + 1.
assert all(chang_U(1, n) == n + 1 and chang_U(2, n) == n * n + n + 1 for n in range(1, 50))

for t, a in [(2, (2, 1)), (3, (1, 2, 3)), (4, (2, 2, 2, 2))]:
    bar = construct_bar(t, a)
    print(f"t={t} a={a}: formula {valued_U(t, a)}, DP {count_sdr(bar)}")
