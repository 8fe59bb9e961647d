"""Root solving for the outgoing-profile condition.

For kappa = +1 the phase f(sigma, 1/h) crosses zero exactly once on (0, 1)
(f(0,.) < 0 < f(1,.), df/dsigma > 0), so sigma(h) is found by safeguarded
bisection with Newton acceleration through the digamma formula for
df/dsigma.  The inverse problem h(sigma_c) for a given p runs an outer
bracketed solve in log h on top of that.

Asymptotic seeds:

    sigma(h) ~ 2 e^{-pi/h} / h          (h -> 0)
    sigma(h) ~ 1/2 - 1/h                (h -> inf)
    h(p)     ~ pi / log(8/(p-3))        (p -> 3+)
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import matching
from .errors import BracketError, ConvergenceError, DomainError

DEFAULT_F_TOL = 1e-12
DEFAULT_SIGMA_TOL = 1e-10
_MAX_ITER = 200


@dataclass(frozen=True)
class RootResult:
    """Outcome of a bracketed root solve."""
    value: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int
    converged: bool


def solve_sigma(h: float, tol: float = DEFAULT_F_TOL,
                sigma_tol: float = DEFAULT_SIGMA_TOL) -> RootResult:
    """The unique sigma in (0,1) with f(sigma, 1/h) = 0 at kappa = +1.

    Bisection on the proven bracket [0, 1], accelerated by Newton steps that
    are only accepted while they stay inside the current bracket.  Returns
    with |f| <= tol; BracketError if the endpoint signs are wrong (which
    would mean a bug upstream, not a legitimate no-root case).
    """
    if h <= 0.0:
        raise DomainError("solve_sigma: h must be positive")
    if tol <= 0.0:
        raise DomainError("solve_sigma: tol must be positive")
    h_inv = 1.0 / h
    f = lambda s: matching.f_phase(s, h_inv, 1.0).f
    lo, hi = 0.0, 1.0
    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo < 0.0 < f_hi):
        raise BracketError(
            f"solve_sigma: no sign change on [0,1] at h={h} (f(0)={f_lo}, f(1)={f_hi})")
    s = 0.5 * (lo + hi)
    for it in range(1, _MAX_ITER + 1):
        fs = f(s)
        if abs(fs) <= tol:
            return RootResult(value=s, bracket_lo=lo, bracket_hi=hi,
                              residual=abs(fs), iterations=it, converged=True)
        if fs > 0.0:
            hi = s
        else:
            lo = s
        step_ok = False
        slope = matching.f_phase_dsigma(min(max(s, 1e-300), 1.0), h_inv, 1.0)
        if slope > 0.0:
            cand = s - fs / slope
            if lo < cand < hi:
                s = cand
                step_ok = True
        if not step_ok:
            s = 0.5 * (lo + hi)
        if hi - lo < 1e-16 * max(1.0, abs(s)) and abs(fs) > tol:
            # bracket exhausted at double precision; accept if within noise
            break
    fs = f(s)
    if abs(fs) <= tol:
        return RootResult(s, lo, hi, abs(fs), _MAX_ITER, True)
    raise ConvergenceError(
        f"solve_sigma: |f|={abs(fs):g} > tol={tol:g} after {_MAX_ITER} iterations (h={h})")


def sigma_seed_small_h(h: float) -> float:
    """Leading small-h root: 2 e^{-pi/h} / h."""
    if h <= 0.0:
        raise DomainError("sigma_seed_small_h: h must be positive")
    return 2.0 * math.exp(-math.pi / h) / h


def sigma_seed_large_h(h: float) -> float:
    """Leading large-h root: 1/2 - 1/h."""
    if h <= 0.0:
        raise DomainError("sigma_seed_large_h: h must be positive")
    return 0.5 - 1.0 / h


def h_seed_for_p(p: float) -> float:
    """Starting guess for h with sigma(h) = sigma_c(p).

    Near p = 3 the first-order inversion of the small-h root gives
    pi / log(8/(p-3)); for sigma_c >= 0.3 the large-h branch 1/(1/2-sigma_c)
    is the better start.
    """
    if p <= 3.0:
        raise DomainError("h_seed_for_p: p must exceed 3")
    sigma_c = 0.5 - 1.0 / (p - 1.0)
    if sigma_c >= 0.3:
        return 1.0 / (0.5 - sigma_c)
    return math.pi / math.log(8.0 / (p - 3.0))


def solve_h_for_p(p: float, tol: float = 1e-10) -> RootResult:
    """h with sigma(h) = sigma_c = 1/2 - 1/(p-1), for p > 3.

    Outer bracketed solve in log h (sigma varies over many orders of
    magnitude for small h); sigma(h) is strictly increasing in h on the
    bracket, checked by the straddle test, so bisection+secant is safe.
    """
    if p <= 3.0:
        raise DomainError("solve_h_for_p: p must exceed 3")
    if tol <= 0.0:
        raise DomainError("solve_h_for_p: tol must be positive")
    sigma_c = 0.5 - 1.0 / (p - 1.0)
    h0 = h_seed_for_p(p)
    g = lambda u: solve_sigma(math.exp(u), tol=1e-13).value - sigma_c
    lo, hi = math.log(h0 / 4.0), math.log(4.0 * h0)
    g_lo, g_hi = g(lo), g(hi)
    expand = 0
    while not (g_lo < 0.0 < g_hi) and expand < 4:
        lo -= math.log(4.0)
        hi += math.log(4.0)
        g_lo, g_hi = g(lo), g(hi)
        expand += 1
    if not (g_lo < 0.0 < g_hi):
        raise BracketError(
            f"solve_h_for_p: bracket failed to straddle sigma_c={sigma_c} for p={p}")
    u, gu = 0.5 * (lo + hi), None
    for it in range(1, _MAX_ITER + 1):
        gu = g(u)
        if abs(gu) <= tol:
            return RootResult(value=math.exp(u), bracket_lo=math.exp(lo),
                              bracket_hi=math.exp(hi), residual=abs(gu),
                              iterations=it, converged=True)
        if gu > 0.0:
            hi, g_hi = u, gu
        else:
            lo, g_lo = u, gu
        # secant through the bracket endpoints, safeguarded by bisection
        denom = g_hi - g_lo
        cand = lo - g_lo * (hi - lo) / denom if denom != 0.0 else 0.5 * (lo + hi)
        u = cand if lo < cand < hi else 0.5 * (lo + hi)
        if hi - lo < 1e-15:
            break
    raise ConvergenceError(
        f"solve_h_for_p: residual {abs(gu):g} > tol={tol:g} for p={p}")


@dataclass(frozen=True)
class SweepRow:
    h_inv: float
    sigma: float
    log_sigma: float
    asym_log_sigma: float
    f_residual: float


def log_sigma_asymptote(h_inv: float) -> float:
    """log(2) - pi h_inv + log(h_inv), the dashed small-h asymptote."""
    if h_inv <= 0.0:
        raise DomainError("log_sigma_asymptote: h_inv must be positive")
    return math.log(2.0) - math.pi * h_inv + math.log(h_inv)


def _max_workers() -> int:
    env = os.environ.get("BLOWUP_PROFILES_THREADS", "")
    try:
        return max(1, int(env)) if env.strip() else 1
    except ValueError:
        return 1


def sweep_sigma(h_inv_min: float, h_inv_max: float, steps: int,
                tol: float = DEFAULT_F_TOL, workers: int | None = None
                ) -> list[SweepRow]:
    """sigma(h) on an inclusive linear h_inv grid, in grid order.

    Rows are computed independently (optionally in a thread pool capped by
    BLOWUP_PROFILES_THREADS) and assembled in index order, so the output is
    deterministic regardless of scheduling.
    """
    if not (0.0 < h_inv_min < h_inv_max):
        raise DomainError("sweep_sigma: need 0 < h_inv_min < h_inv_max")
    if steps < 2:
        raise DomainError("sweep_sigma: steps must be >= 2")
    grid = [h_inv_min + (h_inv_max - h_inv_min) * i / (steps - 1)
            for i in range(steps)]

    def one(h_inv: float) -> SweepRow:
        root = solve_sigma(1.0 / h_inv, tol=tol)
        return SweepRow(h_inv=h_inv, sigma=root.value,
                        log_sigma=math.log(root.value),
                        asym_log_sigma=log_sigma_asymptote(h_inv),
                        f_residual=root.residual)

    n_workers = workers if workers is not None else _max_workers()
    if n_workers <= 1:
        return [one(hi) for hi in grid]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(one, grid))


def kappa_minus_scan(sigma_steps: int = 200, h_inv_min: float = 0.1,
                     h_inv_max: float = 10.0, h_inv_steps: int = 50
                     ) -> tuple[bool, int]:
    """Certify there is no outgoing root at kappa = -1.

    Scans f - 2 pi n for n in {-1, 0, 1} over the open sigma grid (0,1) x
    [h_inv_min, h_inv_max] and reports (no_sign_change_found, cells_checked).
    """
    sigmas = [(i + 1) / (sigma_steps + 1) for i in range(sigma_steps)]
    cells = 0
    for j in range(h_inv_steps):
        h_inv = h_inv_min + (h_inv_max - h_inv_min) * j / (h_inv_steps - 1)
        vals = [matching.f_phase(s, h_inv, -1.0).f for s in sigmas]
        for n in (-1, 0, 1):
            target = 2.0 * math.pi * n
            prev = vals[0] - target
            for val in vals[1:]:
                cur = val - target
                cells += 1
                if prev == 0.0 or cur == 0.0 or (prev < 0.0) != (cur < 0.0):
                    return False, cells
                prev = cur
    return True, cells
