"""Independent hand-evaluation of the frozen expected values used in the C++ tests.

Run with `python3 tests/oracles/frozen_values.py`. Everything here is written
from the loss and thermal formulas directly, without the C++ library.
"""
import math


def thermal_unrolled(current, r90, alpha, i_rated, t_amb, steps=64):
    """Plain temperature/resistance recurrence iterated a fixed number of times."""
    r = r90
    t = 90.0
    for _ in range(steps):
        t = t_amb + (current ** 2 * r / (i_rated ** 2 * r90)) * (90.0 - t_amb)
        r = r90 * (1 + alpha * (t - t_amb)) / (1 + alpha * (90.0 - t_amb))
    return t, r


def thermal_closed(current, r90, alpha, i_rated, t_amb):
    x2 = (current / i_rated) ** 2
    rho = 1.0 / (1.0 + alpha * (90.0 - t_amb) * (1.0 - x2))
    return t_amb + x2 * rho * (90.0 - t_amb), r90 * rho


print("thermal 0.5 i_rated (unrolled):", ["%.15g" % v for v in thermal_unrolled(50.0, 0.10, 0.00403, 100.0, 20.0)])
print("thermal 0.5 i_rated (closed):  ", ["%.15g" % v for v in thermal_closed(50.0, 0.10, 0.00403, 100.0, 20.0)])

# Reference cable: 400 mm2 Al, r90 0.0997, alpha 0.00403, 470 A, AC ratio 1.02
r90, alpha, i_rated, acr = 0.0997, 0.00403, 470.0, 1.02
v = 10.0
s_link = math.sqrt(3) * v * i_rated / 1e3
print("s_link reference 400 mm2 @ 10 kV [MVA]:", "%.15g" % s_link)

s = 3 * s_link
length = 10.0
k = s * 1e3 / v
i_c0 = s * 1e3 / (4 * math.sqrt(3) * v)
_, r_c0 = thermal_unrolled(i_c0, r90, alpha, i_rated, 20.0)
r_c0 *= acr
p_c0 = 12 * i_c0 ** 2 * r_c0 * length
print("C0 3 p.u. 10 km: I =", "%.15g" % i_c0, "r_ac =", "%.15g" % r_c0, "P [W] =", "%.15g" % p_c0)
print("  closed form 3k^2 L r/(n_ori+3) =", "%.15g" % (3 * k * k * length * r_c0 / 12))

vdc = 2 * math.sqrt(2) / math.sqrt(3) * v
pf, eta = 0.9, 0.9934
i_c1 = s * pf * 1e3 / (4 * vdc)
_, r_c1 = thermal_unrolled(i_c1, r90, alpha, i_rated, 20.0)
p_c1 = 8 * i_c1 ** 2 * r_c1 * length + 2 * (1 - eta) * s * pf * 1e6
print("C1 3 p.u. 0.9 pf 10 km: I =", "%.15g" % i_c1, "P [W] =", "%.15g" % p_c1)
print("C1 normalized intercept:", "%.15g" % (2 * (1 - eta) * pf))
print("I_C1/I_C0 at pf=1 (n_ori=9):", "%.15g" % (4 * math.sqrt(3) * v / (4 * vdc)))
