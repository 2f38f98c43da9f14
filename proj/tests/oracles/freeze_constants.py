# SPDX-License-Identifier: Apache-2.0
# Copyright (C) 2026 The lfnoma authors
"""Independent reference values frozen into the C++ tests.

Occurrence probabilities use Poisson thinning: the four quadrant counts are
independent Poisson variables, so every emptiness pattern has an exact product
probability. The branch rule is written out from the feedback tables.
Gain CDFs use scipy's adaptive double quadrature on the polar integrand.

Run:  python3 tests/oracles/freeze_constants.py
"""
import itertools
import math

import mpmath as mp
import numpy as np
from scipy import integrate

mp.mp.dps = 40

# Reference operating point.
LAM, M, GAMMA, SIGMA2 = 0.01, 64, 2.0, 1.0
D_MIN, D_MAX, DELTA = 0.0, 45.0, math.radians(15.0)
C_THETA, C_D = 0.1, 0.2
BETA_S, BETA_W = 0.4, 0.6
R_S, R_W, R_SUT = 8.0, 1.0, 8.0

mu = mp.mpf(D_MAX**2 - D_MIN**2) * mp.mpf(DELTA) / 2 * mp.mpf(LAM)
d_th = D_MIN + C_D * (D_MAX - D_MIN)
theta_th = C_THETA * DELTA / 2
p_theta = mp.mpf(C_THETA)
p_d = mp.mpf(d_th**2 - D_MIN**2) / (D_MAX**2 - D_MIN**2)

# quadrant order: S2B (in, near), W2B (out, far), Sbar (out, near), Wbar (in, far)
mass = [p_theta * p_d, (1 - p_theta) * (1 - p_d), (1 - p_theta) * p_d, p_theta * (1 - p_d)]


def branch(kind, s2b, w2b, sbar, wbar):
    if kind == "2B":
        return "noma_2b" if s2b and w2b else "sut_s_2b" if s2b else "sut_w_2b" if w2b else "none"
    angle = kind.endswith("A")
    st = s2b or (wbar if angle else sbar)
    wt = w2b or (sbar if angle else wbar)
    if kind.startswith("1B"):
        return "noma_1b" if st and wt else "sut_s_1b" if st else "sut_w_1b" if wt else "none"
    if s2b and w2b:
        return "noma_2b"
    if st and wt:
        return "noma_1b"
    if s2b:
        return "sut_s_2b"
    if st:
        return "sut_s_1b"
    if wt:
        return "sut_w_1b"
    return "none"


def occurrence(kind):
    out = {}
    for pattern in itertools.product([False, True], repeat=4):
        p = mp.mpf(1)
        for occupied, m in zip(pattern, mass):
            p *= (1 - mp.exp(-mu * m)) if occupied else mp.exp(-mu * m)
        b = branch(kind, *pattern)
        out[b] = out.get(b, 0) + p
    return out


def fejer(theta):
    psi = math.pi * 0.5 * (math.sin(0.0) - math.sin(theta))
    s = math.sin(psi)
    if abs(s) < 1e-12:
        return 1.0
    return (math.sin(M * psi) / (M * s)) ** 2


def cdf(x, r_lo, r_hi, bands):
    total = 0.0
    xi = 0.0
    for a, b in bands:
        def f(theta, r):
            F = fejer(theta)
            if F < 1e-300:
                return r
            return -math.expm1(-(r**GAMMA) / F * x / SIGMA2) * r
        # split the angular range at kernel nulls so the integrator sees smooth pieces
        nulls = [math.asin(2 * k / M) for k in range(-M, M + 1) if abs(2 * k / M) < 1 and a < math.asin(2 * k / M) < b]
        edges = [a] + sorted(nulls) + [b]
        for lo, hi in zip(edges, edges[1:]):
            v, _ = integrate.dblquad(f, r_lo, r_hi, lo, hi, epsabs=1e-14, epsrel=1e-11)
            total += v
        xi += 0.5 * (r_hi**2 - r_lo**2) * (b - a)
    return total / xi


def main():
    print(f"mu = {mp.nstr(mu, 17)}  p_theta = {mp.nstr(p_theta, 17)}  p_d = {mp.nstr(p_d, 17)}")
    for kind in ["2B", "1B-A", "1B-D", "C-A", "C-D"]:
        occ = occurrence(kind)
        print(kind, {k: mp.nstr(v, 17) for k, v in sorted(occ.items())})

    eps = {s: 2**r - 1 for s, r in (("S", R_S), ("W", R_W), ("SUT", R_SUT))}
    eta_w = eps["W"] / (BETA_W - eps["W"] * BETA_S)
    eta_s = eps["S"] / BETA_S
    print(f"eta_w = {eta_w!r}  eta_s = {eta_s!r}")

    rho = 10 ** (50 / 10)
    inner = [(-theta_th, theta_th)]
    flanks = [(-DELTA / 2, -theta_th), (theta_th, DELTA / 2)]
    full = [(-DELTA / 2, DELTA / 2)]
    cases = {
        "S2B": (D_MIN, d_th, inner),
        "W2B": (d_th, D_MAX, flanks),
        "SA": (D_MIN, D_MAX, inner),
        "WA": (D_MIN, D_MAX, flanks),
        "SD": (D_MIN, d_th, full),
        "WD": (d_th, D_MAX, full),
    }
    points = {"eta_w/rho": eta_w / rho, "eta_s/rho": max(eta_w, eta_s) / rho, "eps_sut/rho": eps["SUT"] / rho}
    for name, (lo, hi, bands) in cases.items():
        vals = {p: repr(cdf(x, lo, hi, bands)) for p, x in points.items()}
        print(name, vals)


if __name__ == "__main__":
    main()
