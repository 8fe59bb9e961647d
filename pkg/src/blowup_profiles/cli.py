"""Command-line front end.

Subcommands:

    sweep        sigma(h) table over an h_inv grid (the Figure-1 data)
    solve-sigma  one root sigma(h)
    solve-h      invert sigma(h) = sigma_c(p) for h
    profile      sampled profile CSV plus a JSON-lines sidecar of scalars
    verify       machine-readable invariant groups, fast or full
    asymptotics  stationary-phase vs direct-quadrature error table

CSV cells are written with 17 significant digits (round-trip exact for
doubles) and LF line endings, so identical configurations produce
byte-identical files.  `--out -` streams data to stdout; diagnostics always
go to stderr.  Exit codes: 0 success, 1 I/O failure, 2 solver/tolerance
failure, 3 verification failure (first failing group named on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import asymptotics, matching, profile, solver, specfun, weber
from .errors import BlowupProfilesError, ToleranceError

EXIT_OK = 0
EXIT_IO = 1
EXIT_SOLVER = 2
EXIT_VERIFY = 3


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _rows_to_csv(header: list[str], rows: list[list[float]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(_fmt(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _rows_to_jsonl(header: list[str], rows: list[list[float]]) -> str:
    return "".join(json.dumps(dict(zip(header, row))) + "\n" for row in rows)


def _write_table(out: str, fmt: str, header: list[str],
                 rows: list[list[float]]) -> None:
    text = (_rows_to_csv if fmt == "csv" else _rows_to_jsonl)(header, rows)
    _emit(out, text)


def cmd_sweep(args: argparse.Namespace) -> int:
    header = ["h_inv", "sigma", "log_sigma", "asym_log_sigma", "f_residual"]
    if not (0.0 < args.h_inv_min < args.h_inv_max) or args.steps < 2:
        print("sweep: need 0 < h-inv-min < h-inv-max and steps >= 2",
              file=sys.stderr)
        return EXIT_SOLVER
    grid = [args.h_inv_min + (args.h_inv_max - args.h_inv_min) * i / (args.steps - 1)
            for i in range(args.steps)]

    def one(h_inv: float) -> tuple[list[float], str | None]:
        try:
            root = solver.solve_sigma(1.0 / h_inv, tol=args.tol)
            return [h_inv, root.value, math.log(root.value),
                    solver.log_sigma_asymptote(h_inv), root.residual], None
        except BlowupProfilesError as exc:
            # annotate the failed row with NaNs and keep sweeping
            nan = math.nan
            return ([h_inv, nan, nan, solver.log_sigma_asymptote(h_inv), nan],
                    f"h_inv={h_inv:g}: {exc}")

    workers = solver._max_workers()
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, grid))      # index order preserved
    else:
        results = [one(h) for h in grid]
    table = [row for row, _ in results]
    failures = [msg for _, msg in results if msg is not None]
    try:
        _write_table(args.out, args.format, header, table)
    except OSError as exc:
        print(f"sweep: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    for msg in failures:
        print(f"sweep: solver failure at {msg}", file=sys.stderr)
    return EXIT_SOLVER if failures else EXIT_OK


def _root_table(root: solver.RootResult) -> tuple[list[str], list[list[float]]]:
    header = ["value", "bracket_lo", "bracket_hi", "residual",
              "iterations", "converged"]
    return header, [[root.value, root.bracket_lo, root.bracket_hi,
                     root.residual, float(root.iterations),
                     float(root.converged)]]


def cmd_solve_sigma(args: argparse.Namespace) -> int:
    try:
        root = solver.solve_sigma(args.h, tol=args.tol)
    except BlowupProfilesError as exc:
        print(f"solve-sigma: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    header, table = _root_table(root)
    try:
        _write_table(args.out, args.format, header, table)
    except OSError as exc:
        print(f"solve-sigma: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_solve_h(args: argparse.Namespace) -> int:
    try:
        root = solver.solve_h_for_p(args.p, tol=args.tol)
    except BlowupProfilesError as exc:
        print(f"solve-h: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    header, table = _root_table(root)
    try:
        _write_table(args.out, args.format, header, table)
    except OSError as exc:
        print(f"solve-h: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    if (args.p is None) == (args.h is None):
        print("profile: give exactly one of --p / --h", file=sys.stderr)
        return EXIT_SOLVER
    if args.p is not None and args.p <= 3.0:
        print("profile: p must exceed 3", file=sys.stderr)
        return EXIT_SOLVER
    grid = profile.profile_grid(args.z_max, args.samples)
    try:
        sol = profile.build_profile(p=args.p, h=args.h, grid=grid, tol=args.tol)
    except BlowupProfilesError as exc:
        print(f"profile: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    header = ["z", "phi_re", "phi_im", "eta_re", "eta_im", "abs_eta"]
    table = [[s.z, s.phi.real, s.phi.imag, s.eta.real, s.eta.imag, abs(s.eta)]
             for s in sol.samples]
    sidecar = {
        "sigma": sol.params.sigma,
        "h": sol.params.h,
        "p": sol.params.p,
        "alpha_re": sol.alpha.real, "alpha_im": sol.alpha.imag,
        "c0_re": sol.c0.real, "c0_im": sol.c0.imag,
        "jump_residual": profile.jump_residual(sol),
        "energy": profile.energy(sol),
    }
    try:
        _write_table(args.out, args.format, header, table)
        line = json.dumps(sidecar) + "\n"
        if args.out == "-":
            sys.stderr.write(line)
        else:
            with open(args.out + ".meta.jsonl", "w", newline="") as fh:
                fh.write(line)
    except OSError as exc:
        print(f"profile: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def _group_specfun(full: bool) -> tuple[float, float]:
    rng = np.random.default_rng(20260809)
    n = 200 if full else 120
    worst = 0.0
    count = 0
    while count < n:
        z = complex(rng.uniform(-5, 5), rng.uniform(-20, 20))
        if abs(z.imag) < 0.1:     # keep z, 1-z, z/2 clear of the poles/cut
            continue
        count += 1
        # reflection
        lhs = specfun.gamma(z) * specfun.gamma(1.0 - z)
        rhs = complex(math.pi) / complex(np.sin(np.pi * np.complex128(z)))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
        # duplication (the half-argument product form)
        lhs = specfun.gamma(z)
        rhs = (2.0 ** (z - 1.0) / math.sqrt(math.pi)
               * specfun.gamma(0.5 * z) * specfun.gamma(0.5 * z + 0.5))
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
        # recurrence
        lhs = specfun.gamma(z + 1.0)
        rhs = z * specfun.gamma(z)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    # digamma as log-derivative and the half-gap identity
    for z in (complex(0.8, 1.2), complex(2.0, -3.0), complex(0.25, 6.0)):
        fd = (specfun.log_gamma(z + 1e-5) - specfun.log_gamma(z - 1e-5)) / 2e-5
        worst = max(worst, abs(fd - specfun.digamma(z)) * 1e-4)  # scaled to 1e-10
        gap = specfun.digamma_half_gap(z)
        ident = gap + specfun.digamma(z + 0.5) - specfun.digamma(z)
        worst = max(worst, abs(ident) * 0.1)
        worst = max(worst, abs(specfun.binet_log_gamma(z + 0.5)
                               - specfun.log_gamma(z + 0.5)) * 0.1)
    return worst, 1e-10


def _group_weber(full: bool) -> tuple[float, float]:
    cfg = weber.DEFAULT_CONFIG
    lams = [complex(-3.0, -0.05), complex(-2.0, -0.1), complex(0.5, -0.45),
            complex(-1.0, -0.9)]
    if full:
        lams += [complex(1.5, -0.25), complex(-0.3, -0.6)]
    worst = 0.0
    for lam in lams:
        for x in (0.3, 1.4):
            num, closed = weber.wronskian_check(lam, x, cfg)
            worst = max(worst, abs(num - closed) / abs(closed))
    for (nu, z) in [(-0.5, 1.3), (complex(-0.25, 0.5), complex(0.7, -0.2)),
                    (complex(-0.8, -0.3), complex(-0.4, 1.0))]:
        worst = max(worst, 10.0 * weber.connection_residual(nu, z, cfg))
    nu = complex(-0.4, 0.9)
    d0, d0p = weber.d_at_zero(nu)
    worst = max(worst, abs(d0 - weber.d_nu_integral(nu, 0.0, cfg)))
    worst = max(worst, abs(d0p - weber.d_nu_prime(nu, 0.0, cfg)))
    return worst, 1e-8


def _group_matching(full: bool) -> tuple[float, float]:
    worst = 0.0
    h_invs = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0]
    sigmas = np.linspace(0.02, 0.98, 33 if full else 13)
    for kappa in (1.0, -1.0):
        for hi in h_invs:
            for s in sigmas:
                fg = matching.f_phase_gamma_form(float(s), hi, kappa).f
                fs = matching.f_phase_stable_form(float(s), hi, kappa).f
                worst = max(worst, abs(fg - fs))
            # the strict Lemma boxes, with a rounding margin: f(0) tends to
            # -pi/2 like e^{-pi h_inv}, which underflows the ulp of pi/2
            margin = 1e-9
            f0 = matching.f_phase(0.0, hi, kappa).f
            if not -0.5 * math.pi - margin <= f0 <= 0.0:
                worst = max(worst, 1.0)
            f1 = matching.f_phase(1.0, hi, kappa).f
            box = (-margin <= f1 <= math.pi + margin) if kappa > 0 else \
                (-1.5 * math.pi - margin <= f1 <= -0.5 * math.pi + margin)
            if not box:
                worst = max(worst, 1.0)
    d = matching.f_phase_dsigma(0.5, 1.0, 1.0)
    fd = (matching.f_phase(0.5 + 1e-5, 1.0, 1.0).f
          - matching.f_phase(0.5 - 1e-5, 1.0, 1.0).f) / 2e-5
    worst = max(worst, abs(d - fd) * 1e-3)
    if matching.f_phase_dsigma(0.5, 1.0, -1.0) >= 0.0:
        worst = max(worst, 1.0)
    return worst, 1e-9


def _group_solver(full: bool) -> tuple[float, float]:
    worst = 0.0
    for h_inv in (1.5, 2.0, 3.0, 4.0, 5.0):
        root = solver.solve_sigma(1.0 / h_inv)
        dev = abs(math.log(root.value) - solver.log_sigma_asymptote(h_inv))
        worst = max(worst, dev / 0.15)
    for h in (50.0, 100.0, 1000.0):
        root = solver.solve_sigma(h)
        worst = max(worst, abs(root.value - (0.5 - 1.0 / h)) / (5.0 / h ** 2))
    hs = np.geomspace(0.2, 100.0, 20 if full else 8)
    for h in hs:
        root = solver.solve_sigma(float(h))
        a = matching.a_stable(root.value, float(h), 1.0)
        worst = max(worst, abs(a.imag) / abs(a) / 1e-10 * 0.5)
        if a.real <= 0:
            worst = max(worst, 10.0)
    return worst, 1.0


def _group_pohozhaev(full: bool) -> tuple[float, float]:
    z_max, n_side = (240.0, 2400) if full else (130.0, 1400)
    sol = profile.build_profile(p=5.0, grid=profile.profile_grid(z_max, n_side))
    worst = profile.jump_residual(sol) / 1e-8
    worst = max(worst, abs(profile.energy(sol))
                / (10.0 * profile.grad_tail_estimate(sol)))
    r1 = profile.pohozhaev_report(sol, z_max / 4.4)
    r2 = profile.pohozhaev_report(sol, z_max / 2.2)
    expo = (math.log(abs(r2.final_residual) / abs(r1.final_residual))
            / math.log(r2.R_eff / r1.R_eff))
    worst = max(worst, abs(expo - (2.0 * sol.params.sigma - 2.0)) / 0.3)
    pert = weber.SpectralParams.from_rate(
        p=5.0, sigma=sol.params.sigma + 0.05, h=sol.params.h)
    bad = profile.build_profile_from_params(
        pert, grid=profile.profile_grid(10.0, 60))
    if profile.jump_residual(bad) <= 1e-3:   # designed negative control
        worst = max(worst, 10.0)
    return worst, 1.0


def _group_asymptotics(full: bool) -> tuple[float, float]:
    cfg = weber.DEFAULT_CONFIG
    worst = 0.0
    for (a, hi, s, tol) in [(0.5, 10.0, 0.05, 1e-8), (1.5, 10.0, 0.02, 1e-6)]:
        g = asymptotics.g_direct(a, hi, s, cfg, allow_contour_fallback=False)
        split = (asymptotics.g2_contour(a, hi, s, cfg)
                 + asymptotics.g3_contour(a, hi, s, cfg))
        worst = max(worst, abs(g - split) / abs(g) / tol)
    h_invs = (10.0, 20.0, 40.0) if full else (10.0, 20.0)
    for maker, alpha in ((asymptotics.g2_stationary, 0.5),
                         (asymptotics.g3_stationary, 1.5)):
        errs = []
        for hi in h_invs:
            sig = 2.0 * hi * math.exp(-math.pi * hi)
            g = asymptotics.g_direct(alpha, hi, sig, cfg)
            errs.append(abs(maker(alpha, hi, sig) - g) / abs(g))
        for e_lo, e_hi in zip(errs, errs[1:]):
            ratio = e_hi / e_lo
            if not 0.35 <= ratio <= 0.7:
                worst = max(worst, 5.0)
    return worst, 1.0


def _group_kappa_minus(full: bool) -> tuple[float, float]:
    ok, _ = solver.kappa_minus_scan()
    return (0.0 if ok else 10.0), 1.0


_FAST_GROUPS = [
    ("specfun-identities", _group_specfun),
    ("weber-wronskians-connections", _group_weber),
    ("matching-representations", _group_matching),
    ("solver-asymptotics", _group_solver),
    ("pohozhaev-energy", _group_pohozhaev),
    ("asymptotics-contour-split", _group_asymptotics),
]
_FULL_GROUPS = _FAST_GROUPS + [("kappa-minus-no-root", _group_kappa_minus)]


def cmd_verify(args: argparse.Namespace) -> int:
    groups = _FULL_GROUPS if args.level == "full" else _FAST_GROUPS
    full = args.level == "full"
    first_fail = None
    for name, fn in groups:
        t0 = time.time()
        try:
            worst, threshold = fn(full)
            passed = worst <= threshold
        except BlowupProfilesError as exc:
            worst, threshold, passed = math.inf, 0.0, False
            print(f"{name}: {exc}", file=sys.stderr)
        line = {"group": name, "level": args.level, "passed": passed,
                "max_residual": worst, "threshold": threshold,
                "seconds": round(time.time() - t0, 3)}
        sys.stdout.write(json.dumps(line) + "\n")
        sys.stdout.flush()
        if not passed and first_fail is None:
            first_fail = name
    if first_fail is not None:
        print(f"verify: first failing group: {first_fail}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_asymptotics(args: argparse.Namespace) -> int:
    header = ["alpha_t", "h_inv", "sigma", "branch",
              "g_sp_re", "g_sp_im", "g_direct_re", "g_direct_im", "rel_err"]
    rows = []
    try:
        for hi in (10.0, 20.0, 40.0):
            sig = 2.0 * hi * math.exp(-math.pi * hi)
            for alpha in (0.4, 0.5, 0.7, 1.3, 1.5, 2.0):
                branch = 2.0 if alpha < 1.0 else 3.0
                sp = (asymptotics.g2_stationary(alpha, hi, sig) if alpha < 1.0
                      else asymptotics.g3_stationary(alpha, hi, sig))
                g = asymptotics.g_direct(alpha, hi, sig)
                rows.append([alpha, hi, sig, branch, sp.real, sp.imag,
                             g.real, g.imag, abs(sp - g) / abs(g)])
    except ToleranceError as exc:
        print(f"asymptotics: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    try:
        _write_table(args.out, args.format, header, rows)
    except OSError as exc:
        print(f"asymptotics: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blowup-profiles",
        description="Outgoing self-similar blow-up profiles of the 1D NLS "
                    "with focusing point nonlinearity")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default="-", help="output path, '-' for stdout")
        p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
        p.add_argument("--tol", type=float, default=solver.DEFAULT_F_TOL)

    p = sub.add_parser("sweep", help="sigma(h) table over an h_inv grid")
    p.add_argument("--h-inv-min", dest="h_inv_min", type=float, required=True)
    p.add_argument("--h-inv-max", dest="h_inv_max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("solve-sigma", help="one root sigma(h)")
    p.add_argument("--h", type=float, required=True)
    common(p)
    p.set_defaults(fn=cmd_solve_sigma)

    p = sub.add_parser("solve-h", help="h with sigma(h) = sigma_c(p)")
    p.add_argument("--p", type=float, required=True)
    common(p)
    p.set_defaults(fn=cmd_solve_h)

    p = sub.add_parser("profile", help="sampled profile CSV + JSON sidecar")
    p.add_argument("--p", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--z-max", dest="z_max", type=float, default=50.0)
    p.add_argument("--samples", type=int, default=800)
    common(p)
    p.set_defaults(fn=cmd_profile)

    p = sub.add_parser("verify", help="run invariant groups")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("asymptotics", help="stationary phase vs quadrature table")
    common(p)
    p.set_defaults(fn=cmd_asymptotics)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
