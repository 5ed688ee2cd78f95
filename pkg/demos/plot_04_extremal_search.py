"""
Exhaustive search for the minimum
=================================

``verify_theorem4`` walks every valued family for ``(t, a)`` up to
isomorphism, counts SDRs, and reports the minimum together with the
minimizing classes. For ``t >= 2`` the only minimizer is the shared-block
family and the minimum equals the closed form.
"""

import time

from sdrkit import SearchSpec, verify_theorem4

for t, a in [(2, (1, 1)), (2, (1, 1, 1)), (3, (1, 1)), (2, (2, 1)), (3, (1, 1, 1)), (2, (1, 1, 1, 1))]:
    start = time.perf_counter()
    report = verify_theorem4(SearchSpec(t, a, mode="collect-minimizers"))
    print(
        f"t={t} a={a}: min {report.minimum} (closed form {report.closed_form}), "
        f"{report.canonical_classes} classes from {report.families_scanned} families, "
        f"unique={report.unique_bar}, {time.perf_counter() - start:.2f}s"
    )
    print("   minimizer:", report.representatives[0])

# Below t = 2 the minimum still follows the formula but minimizers need not be unique.
for n in (2, 3):
    report = verify_theorem4(SearchSpec(1, (1,) * n, mode="collect-minimizers"))
    print(f"t=1 n={n}: min {report.minimum}, {len(report.minimizers)} minimizing classes")
