#!/usr/bin/env python3
"""Pre-build oracle: freeze arbitrary-precision reference values.

Run once before (or after changing) the numerics; the shipped library never
imports mpmath.  Writes tests/fixtures/oracle.json with:

  * a 100-point complex grid of log-gamma / digamma reference values
  * the named special-function spot checks used in the docs and tests
  * parabolic cylinder D_nu / D_nu' reference points (mpmath.pcfd)
  * matching-ratio values and independently solved sigma(h) roots
    (bisection on Im log A at 40 digits, no shared code with the library)
  * one certified value of the oscillatory integral g(alpha, 1/h)

Usage:  python scripts/gen_oracle_fixtures.py [--out tests/fixtures/oracle.json]
"""

from __future__ import annotations

import argparse
import json
import pathlib

import mpmath as mp

SEED = 20260809


def cjson(z) -> dict:
    z = mp.mpc(z)
    return {"re": float(z.real), "im": float(z.imag)}


def specfun_grid(n: int = 100) -> list[dict]:
    import numpy as np
    rng = np.random.default_rng(SEED)
    rows = []
    while len(rows) < n:
        re = float(rng.uniform(-5.0, 8.0))
        im = float(rng.uniform(-20.0, 20.0))
        if abs(im) < 0.25 and re < 0.3:
            continue                      # stay clear of the cut and poles
        z = mp.mpc(re, im)
        rows.append({
            "z": {"re": re, "im": im},
            "log_gamma": cjson(mp.loggamma(z)),
            "digamma": cjson(mp.digamma(z)),
        })
    return rows


def named_points() -> dict:
    half = mp.mpf(1) / 2
    out = {
        "log_gamma_a": {"z": cjson(mp.mpc(0.75, 5.0)),
                        "value": cjson(mp.loggamma(mp.mpc(0.75, 5.0)))},
        "gamma_a": {"z": cjson(mp.mpc(0.75, -1.5)),
                    "value": cjson(mp.gamma(mp.mpc(0.75, -1.5)))},
        "digamma_a": {"z": cjson(mp.mpc(0.25, 2.0)),
                      "value": cjson(mp.digamma(mp.mpc(0.25, 2.0)))},
        "digamma_half_gap_a": {
            "z": cjson(mp.mpc(0.1, 0.1)),
            "value": cjson(mp.digamma(mp.mpc(0.1, 0.1))
                           - mp.digamma(mp.mpc(0.1, 0.1) + half))},
        "log_gamma_diff_a": {
            "z": cjson(mp.mpc(5.0, 5.0)), "s": 0.4,
            "value": cjson(mp.loggamma(mp.mpc(5.4, 5.0))
                           - mp.loggamma(mp.mpc(5.0, 5.0)))},
    }
    return out


def weber_points() -> list[dict]:
    import numpy as np
    rng = np.random.default_rng(SEED + 1)
    pts = [(mp.mpc(-0.3, 0.7), mp.mpc(1.0, -2.0)),
           (mp.mpc(0.5, 0.0), mp.mpc(1.0, 1.0)),
           (mp.mpc(-0.5, 0.0), mp.mpc(0.0, 0.0)),
           (mp.mpc(-1.0, 0.0), mp.mpc(0.0, 0.0))]
    while len(pts) < 16:
        nu = mp.mpc(float(rng.uniform(-1.0, 0.8)), float(rng.uniform(-1.2, 1.2)))
        z = mp.mpc(float(rng.uniform(-2.0, 2.0)), float(rng.uniform(-2.0, 2.0)))
        pts.append((nu, z))
    rows = []
    for nu, z in pts:
        d = mp.pcfd(nu, z)
        dp = mp.diff(lambda t: mp.pcfd(nu, t), z)
        rows.append({"nu": cjson(nu), "z": cjson(z),
                     "d": cjson(d), "d_prime": cjson(dp)})
    return rows


def v_points() -> dict:
    rot_m = mp.exp(-1j * mp.pi / 4)
    rot_p = mp.exp(1j * mp.pi / 4)
    lam1 = mp.mpc(-2.0, -0.1)
    lam2 = mp.mpc(-1.0, -0.2)
    return {
        "v": {"x": 3.0, "lam": cjson(lam1),
              "value": cjson(mp.pcfd(1j * lam1 - mp.mpf(1) / 2, rot_m * 3.0))},
        "v_star": {"x": 2.0, "lam": cjson(lam2),
                   "value": cjson(mp.pcfd(-1j * lam2 - mp.mpf(1) / 2, rot_p * 2.0))},
    }


def matching_a(sigma, h, kappa):
    y = mp.mpf(kappa) / (2 * mp.mpf(h))
    za = mp.mpc(mp.mpf(3) / 4 - sigma / 2, y)
    zb = mp.mpc(mp.mpf(1) / 4 - sigma / 2, y)
    return (mp.exp(-1j * mp.pi / 4) * mp.sqrt(2)
            * mp.exp(mp.loggamma(za) - mp.loggamma(zb)))


def phase_f(sigma, h_inv):
    y = mp.mpf(h_inv) / 2
    za = mp.mpc(mp.mpf(3) / 4 - mp.mpf(sigma) / 2, y)
    zb = mp.mpc(mp.mpf(1) / 4 - mp.mpf(sigma) / 2, y)
    return mp.im(-1j * mp.pi / 4 + mp.loggamma(za) - mp.loggamma(zb))


def sigma_root(h, iters: int = 140):
    h_inv = 1 / mp.mpf(h)
    lo, hi = mp.mpf(0), mp.mpf(1)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if phase_f(mid, h_inv) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def h_root_for_p(p, iters: int = 90):
    sigma_c = mp.mpf(1) / 2 - 1 / (mp.mpf(p) - 1)
    lo, hi = mp.mpf(1), mp.mpf(8)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if sigma_root(mid, iters=120) > sigma_c:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def g_direct_oracle(alpha, h_inv, sigma):
    alpha, h_inv, sigma = mp.mpf(alpha), mp.mpf(h_inv), mp.mpf(sigma)
    eps = mp.mpf("0.3")
    rot = mp.exp(-1j * eps)

    def f(r):
        z = rot * r
        p = -0.125j * z * z / (alpha * alpha) - z + 1j * mp.log(z)
        return mp.exp(h_inv * p) * z ** (-sigma - mp.mpf(1) / 2) * rot

    return mp.quad(f, [0, mp.mpf("0.05"), mp.mpf("0.3"), 1, 3, 8, 20])


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="tests/fixtures/oracle.json")
    args = parser.parse_args()

    mp.mp.dps = 40
    data = {
        "meta": {"dps": mp.mp.dps, "seed": SEED},
        "specfun_grid": specfun_grid(),
        "named": named_points(),
        "weber_d": weber_points(),
        "weber_v": v_points(),
        "matching_a": [
            {"sigma": s, "h": h, "kappa": k, "value": cjson(matching_a(s, h, k))}
            for (s, h, k) in [(0.3, 1.0, 1), (0.1, 0.5, -1), (0.5, 0.2, -1)]],
        "sigma_roots": [
            {"h": h, "sigma": float(sigma_root(h))} for h in (0.3, 1.0, 2.0)],
        "h_for_p": [{"p": 5.0, "h": float(h_root_for_p(5.0))}],
        "g_direct": [{"alpha_t": 0.5, "h_inv": 5.0, "sigma": 0.1,
                      "value": cjson(g_direct_oracle(0.5, 5.0, 0.1))}],
    }
    out = pathlib.Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {out} ({out.stat().st_size} bytes)")


if __name__ == "__main__":
    main()
