"""Acceptance criteria, one test per criterion, each printed as a PASS line
at its stated tolerance.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import math
import time

import numpy as np

from blowup_profiles import asymptotics, matching, profile, solver, specfun, weber

from conftest import as_complex


def report(num: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_c01_figure_one_asymptote():
    t0 = time.time()
    devs = []
    for h_inv in (1.5, 2.0, 3.0, 4.0, 5.0):
        root = solver.solve_sigma(1.0 / h_inv)
        devs.append(abs(math.log(root.value) - solver.log_sigma_asymptote(h_inv)))
    elapsed = time.time() - t0
    ok = (max(devs) <= 0.15
          and all(a > b for a, b in zip(devs, devs[1:]))
          and elapsed < 10.0)
    report(1, ok, f"log-sigma asymptote devs {['%.4f' % d for d in devs]} "
                  f"<= 0.15, decreasing, {elapsed:.2f}s")


def test_c02_large_h_expansion():
    t0 = time.time()
    worst = 0.0
    for h in (50.0, 100.0, 1000.0):
        root = solver.solve_sigma(h)
        worst = max(worst, abs(root.value - (0.5 - 1.0 / h)) * h * h / 5.0)
    elapsed = time.time() - t0
    ok = worst <= 1.0 and elapsed < 5.0
    report(2, ok, f"|sigma - (1/2 - 1/h)| <= 5 h^-2 (worst ratio {worst:.3f}), "
                  f"{elapsed:.2f}s")


def test_c03_sigma_limit_half():
    root = solver.solve_sigma(1000.0)
    dev = abs(root.value - 0.5)
    ok = dev <= 2e-3
    report(3, ok, f"sigma at h_inv=1e-3 is {root.value:.6f}, |dev from 1/2| = "
                  f"{dev:.2e} <= 2e-3")


def test_c04_a_reality_at_roots():
    worst = 0.0
    for h in np.geomspace(0.2, 100.0, 20):
        root = solver.solve_sigma(float(h))
        a = matching.a_stable(root.value, float(h), 1.0)
        worst = max(worst, abs(a.imag) / abs(a))
        assert a.real > 0.0
    ok = worst <= 1e-10
    report(4, ok, f"max |Im A|/|A| over 20 roots in [0.2, 100] = {worst:.2e} <= 1e-10")


def test_c05_kappa_minus_nonexistence():
    t0 = time.time()
    ok_scan, cells = solver.kappa_minus_scan(sigma_steps=200, h_inv_min=0.1,
                                             h_inv_max=10.0, h_inv_steps=50)
    elapsed = time.time() - t0
    ok = ok_scan and elapsed < 30.0
    report(5, ok, f"kappa=-1: no sign change of f - 2 pi n on 200x50 grid "
                  f"({cells} cells, {elapsed:.2f}s)")


def test_c06_wronskian_identity(cfg):
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(10):
        lam = complex(rng.uniform(-3.0, 2.0), rng.uniform(-0.95, -0.05))
        for x in (0.25, 1.0, 2.5):
            num, closed = weber.wronskian_check(lam, x, cfg)
            worst = max(worst, abs(num - closed)
                        / abs(np.exp(0.5 * math.pi * np.complex128(lam))))
    ok = worst <= 1e-8
    report(6, ok, f"max Wronskian residual over 10 lambda x 3 x = {worst:.2e} <= 1e-8")


def test_c07_jump_condition(cfg):
    worst = 0.0
    for p in (4.0, 5.0, 7.0):
        sol = profile.build_profile(p=p, grid=profile.profile_grid(5.0, 24), cfg=cfg)
        worst = max(worst, profile.jump_residual(sol))
    # negative control: sigma + 0.05 must visibly break the jump
    base = profile.build_profile(p=5.0, grid=profile.profile_grid(5.0, 24), cfg=cfg)
    pert = weber.SpectralParams.from_rate(
        p=5.0, sigma=base.params.sigma + 0.05, h=base.params.h)
    bad = profile.build_profile_from_params(pert, grid=profile.profile_grid(5.0, 24),
                                            cfg=cfg)
    control = profile.jump_residual(bad)
    ok = worst <= 1e-8 and control > 1e-3
    report(7, ok, f"jump residual p in (4,5,7): worst {worst:.2e} <= 1e-8; "
                  f"negative control {control:.2e} > 1e-3")


def test_c08_zero_energy_and_decay(profile_p5):
    energy = profile.energy(profile_p5)
    tail = profile.grad_tail_estimate(profile_p5)
    r1 = profile.pohozhaev_report(profile_p5, 60.0)
    r2 = profile.pohozhaev_report(profile_p5, 120.0)
    expo = (math.log(abs(r2.final_residual) / abs(r1.final_residual))
            / math.log(r2.R_eff / r1.R_eff))
    target = 2.0 * profile_p5.params.sigma - 2.0
    ok = abs(energy) <= 10.0 * tail and abs(expo - target) <= 0.3
    report(8, ok, f"|E(eta)| = {abs(energy):.2e} <= 10 x tail {tail:.2e}; "
                  f"Pohozhaev decay exponent {expo:.3f} vs {target:.3f} +- 0.3")


def test_c09_stationary_phase_accuracy(cfg):
    h_invs = (10.0, 20.0, 40.0)
    details = []
    ok = True
    for maker, alpha in ((asymptotics.g2_stationary, 0.5),
                         (asymptotics.g3_stationary, 1.5)):
        errs = []
        for h_inv in h_invs:
            sigma = 2.0 * h_inv * math.exp(-math.pi * h_inv)
            g = asymptotics.g_direct(alpha, h_inv, sigma, cfg)
            errs.append(abs(maker(alpha, h_inv, sigma) - g) / abs(g))
        fitted_c = max(e * hi for e, hi in zip(errs, h_invs))
        ok &= all(e <= fitted_c / hi * (1 + 1e-12) for e, hi in zip(errs, h_invs))
        ratios = [b / a for a, b in zip(errs, errs[1:])]
        ok &= all(0.35 <= r <= 0.7 for r in ratios)
        details.append(f"alpha={alpha}: C={fitted_c:.3f} "
                       f"ratios {['%.3f' % r for r in ratios]}")
    report(9, ok, "; ".join(details) + " (ratios in [0.35, 0.7])")


def test_c10_specfun_oracle_suite(oracle):
    worst_grid = 0.0
    for row in oracle["specfun_grid"]:
        z = as_complex(row["z"])
        lg = specfun.log_gamma(z)
        dg = specfun.digamma(z)
        worst_grid = max(
            worst_grid,
            abs(lg - as_complex(row["log_gamma"])) / max(1.0, abs(lg)),
            abs(dg - as_complex(row["digamma"])) / max(1.0, abs(dg)))
    rng = np.random.default_rng(20260809)
    worst_ident = 0.0
    count = 0
    while count < 200:
        z = complex(rng.uniform(-5.0, 5.0), rng.uniform(-20.0, 20.0))
        if abs(z.imag) < 0.1:
            continue
        count += 1
        refl = specfun.gamma(z) * specfun.gamma(1.0 - z)
        rhs = complex(math.pi) / complex(np.sin(np.pi * np.complex128(z)))
        worst_ident = max(worst_ident, abs(refl - rhs) / abs(rhs))
        dup = (2.0 ** (z - 1.0) / math.sqrt(math.pi)
               * specfun.gamma(0.5 * z) * specfun.gamma(0.5 * z + 0.5))
        worst_ident = max(worst_ident, abs(specfun.gamma(z) - dup) / abs(dup))
    ok = worst_grid <= 1e-10 and worst_ident <= 1e-10
    report(10, ok, f"oracle grid worst rel {worst_grid:.2e} <= 1e-10; "
                   f"reflection/duplication worst {worst_ident:.2e} <= 1e-10")
