"""Independent high-precision reference values frozen into the golden tests.

Requires mpmath and numpy. Run with `python3 oracles/reference_values.py`.
"""

import mpmath as mp
import numpy as np

mp.mp.dps = 40


def residual(s, z, w):
    """s sinh(sigma) + t sin(tau) on the hyperbola 2st = z."""
    t = z / (2 * s)
    return s * mp.sinh(2 * (s - t * w)) + t * mp.sin(2 * (t + s * w))


def residual_grid(s, z, w):
    t = z / (2 * s)
    with np.errstate(all="ignore"):
        return s * np.sinh(2 * (s - t * w)) + t * np.sin(2 * (t + s * w))


def real_levels(z, w, e_max, s_max=12.0, n=3_000_000):
    s_edge = np.sqrt(z**2 / (2 * (e_max + np.sqrt(e_max**2 + z**2))))
    s = np.geomspace(s_edge, s_max, n)
    v = residual_grid(s, z, w)
    out = []
    for i in np.where(np.sign(v[:-1]) != np.sign(v[1:]))[0]:
        r = mp.findroot(lambda x: residual(x, z, w), (mp.mpf(s[i]), mp.mpf(s[i + 1])), solver="anderson")
        t = z / (2 * r)
        out.append(t * t - r * r)
    return sorted(out)


def quantization(e, z, w):
    kp, km = mp.sqrt(-e - 1j * z), mp.sqrt(-e + 1j * z)
    a, b = 1 - 1j * w, 1 + 1j * w
    return mp.cosh(kp * a) * mp.sinh(km * b) / km + mp.cosh(km * b) * mp.sinh(kp * a) / kp


def coalescence(z0, s0, w):
    """Coupling and s where two real levels merge: residual and its s-derivative vanish."""
    f = lambda z, s: [residual(s, z, w), mp.diff(lambda x: residual(x, z, w), s)]
    return mp.findroot(f, (z0, s0))


def show(label, values):
    print(label, [mp.nstr(v, 14) for v in values])


if __name__ == "__main__":
    show("Z=1 w=0 E<=100", real_levels(1, 0.0, 100))
    for z, w in [(1, 0.1), (1, -0.1), (0.5, 0.05), (2, 0.2)]:
        e = real_levels(z, w, 1e5)
        print(f"Z={z} w={w}: {len(e)} levels, first {mp.nstr(e[0], 14)}, second {mp.nstr(e[1], 14)}, last {mp.nstr(e[-1], 14)}")
    show("Z=1e-3 w=0 E<=250", real_levels(1e-3, 0.0, 250))
    pairs = [mp.findroot(lambda e: quantization(e, 1, 0.1), e0) for e0 in (2290 + 48j, 2598 + 81j, 2926 + 114j, 3273 + 151j, 3639 + 190j)]
    show("Z=1 w=0.1 pairs", pairs)
    print("Z1(w=0)", coalescence(4.47, 0.85, 0)[0])
    print("Z2(w=0)", coalescence(12.8, 1.2, 0)[0])
    print("Z1(w=0.05)", coalescence(4.47, 0.85, 0.05)[0])
