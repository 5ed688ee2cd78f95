"""
Exclusive pairs, saturation and the exchange step
=================================================

For a valued family, an exclusive pair ``{x, y}`` can be exchanged
(``x`` replaced by ``y`` wherever ``y`` is missing). When the pair is not
saturated the result is still valued and has strictly fewer SDRs, so
repeating the step walks down to a family where every exclusive pair is
saturated.
"""

import random

from sdrkit import census, count_sdr, descent_step, is_bar_family, tight_sets
from sdrkit.sampling import random_valued_family

t, a = 2, (1, 2, 1)
family = random_valued_family(random.Random(3), t, a, ground_cap=sum(a) + len(a) * t)
print("start:", family, "SDRs:", count_sdr(family))

report = census(family, t, a)
print(f"exclusive pairs {report.nep}, saturated {report.nsp}, bound {report.bound}")
print("tight sets:", [bin(ts.indices) for ts in tight_sets(family, t, a)])

while (step := descent_step(family, t, a)) is not None:
    family, pair = step
    print(f"exchange on pair ({pair.x}, {pair.y}) -> {family}  SDRs: {count_sdr(family)}")

final = census(family, t, a)
print(f"fixpoint: nep={final.nep} nsp={final.nsp} bound={final.bound}")
print("is the shared-block family:", is_bar_family(family, t, a))
