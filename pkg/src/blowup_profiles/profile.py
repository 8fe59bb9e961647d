"""Outgoing blow-up profiles and their verification reports.

The outgoing solution of

    (kappa + i h sigma) phi - phi_zz - (1/4) h^2 z^2 phi - delta |phi|^{p-1} phi = 0

is phi(z) = alpha w(|z|, lambda) with lambda = -kappa/h - i sigma and sigma
pinned by the matching condition; the amplitude is

    alpha = (-2 w_z(0)/w(0))^{1/(p-1)} / w(0)

so the jump condition 2 phi'(0+) = -|phi(0)|^{p-1} phi(0) holds identically
once -2 w_z(0)/w(0) is real positive.  The energy-space profile is
eta(z) = e^{-i h z^2/4} phi(z), which decays like |c0| |z|^{sigma - 1/2}
without the quadratic phase.

This module builds sampled profiles (two entry modes: prescribe p and solve
for h, or prescribe h and take the self-consistent p), evaluates the ODE
residual by local stencils, integrates the truncated Pohozhaev identities,
the energy and the truncated mass, and reconstructs the time-dependent
blow-up solution psi(x,t) from a profile and a blow-up time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import solver, weber
from .errors import DomainError, GridError, MatchError
from .weber import QuadratureConfig, SpectralParams


def sigma_c_of_p(p: float) -> float:
    """Scaling-critical exponent 1/2 - 1/(p-1); p=3 is the L^2-critical case."""
    if p <= 1.0:
        raise DomainError("sigma_c_of_p: p must exceed 1")
    return 0.5 - 1.0 / (p - 1.0)


@dataclass(frozen=True)
class ProfileSample:
    """One grid point of a sampled profile; eta = e^{-i h z^2/4} phi exactly."""
    z: float
    phi: complex
    phi_prime: complex
    eta: complex
    eta_prime: complex


@dataclass(frozen=True)
class BlowupCurve:
    """Self-similar time law: lam(t) = (2h(T*-t))^{-1/2} diverges at T*."""
    T_star: float
    h: float
    kappa: float = 1.0
    tau0: float = 0.0

    def __post_init__(self) -> None:
        if self.T_star <= 0.0 or self.h <= 0.0:
            raise DomainError("BlowupCurve: T_star and h must be positive")

    def lam_of_t(self, t: float) -> float:
        return 1.0 / math.sqrt(2.0 * self.h * (self.T_star - t))

    def tau_of_t(self, t: float) -> float:
        return (self.kappa / (2.0 * self.h)
                * math.log(self.T_star / (self.T_star - t)) + self.tau0)


@dataclass(frozen=True)
class ProfileSolution:
    """Sampled outgoing profile with its far-field constants.

    c0 is the coefficient of |z|^{i lam - 1/2} in eta; c1 = c0 (i lam - 1/2)
    is the derivative coefficient obtained by differentiating that leading
    term (the only place it is pinned down).  phi0/dphi0 are the closed-form
    boundary values used by the jump condition; samples are symmetric in z.
    """
    params: SpectralParams
    alpha: complex
    samples: tuple[ProfileSample, ...]
    c0: complex
    c1: complex
    phi0: complex
    dphi0_plus: complex
    cfg: QuadratureConfig = field(repr=False, default=weber.DEFAULT_CONFIG)

    def positive_side(self) -> list[ProfileSample]:
        return [s for s in self.samples if s.z >= 0.0]


def amplitude(params: SpectralParams, cfg: QuadratureConfig | None = None,
              strict: bool = True) -> complex:
    """alpha = (-2 w_z(0)/w(0))^{1/(p-1)} / w(0), phase that of 1/w(0).

    With strict=True the matching ratio must be real positive to 1e-8
    relative (i.e. sigma sits at the solver root), else MatchError.  With
    strict=False the principal complex power is used as-is, which is what
    the perturbed negative controls need.
    """
    if params.p <= 1.0:
        raise DomainError("amplitude: p must exceed 1")
    v0, v0p = weber.v_at_zero(params.lam)
    ratio = -2.0 * math.sqrt(params.h) * v0p / v0      # = 2 h^{1/2} A(lambda)
    if strict and abs(ratio.imag) > 1e-8 * abs(ratio):
        raise MatchError(
            f"amplitude: matching ratio {ratio!r} is not real positive "
            "(sigma is not at the root)")
    return ratio ** (1.0 / (params.p - 1.0)) / v0


def profile_grid(z_max: float, n_side: int, z_min: float = 1e-3) -> np.ndarray:
    """Symmetric sampling grid: 0 plus geometric points out to +-z_max."""
    if not (0.0 < z_min < z_max) or n_side < 8:
        raise DomainError("profile_grid: need 0 < z_min < z_max and n_side >= 8")
    pos = np.geomspace(z_min, z_max, n_side)
    return np.concatenate([-pos[::-1], [0.0], pos])


def build_profile(p: float | None = None, h: float | None = None,
                  grid: np.ndarray | None = None,
                  cfg: QuadratureConfig | None = None,
                  kappa: float = 1.0, tol: float = solver.DEFAULT_F_TOL
                  ) -> ProfileSolution:
    """Resolve (sigma, h, p) and sample the outgoing profile.

    Entry modes: given p (> 3), h is solved so sigma(h) = sigma_c(p); given
    h, sigma = sigma(h) and p is the self-consistent 1 + 1/(1/2 - sigma).
    Given both, sigma = sigma(h) with the prescribed p (the profile solves
    the jump condition for that p; it feeds a blow-up solution only when
    sigma(h) happens to equal sigma_c(p)).
    """
    if kappa != 1.0:
        raise DomainError("build_profile: outgoing roots exist only for kappa=+1")
    if p is None and h is None:
        raise DomainError("build_profile: give p, h, or both")
    if h is None:
        if p <= 3.0:
            raise DomainError("build_profile: p must exceed 3 when h is free")
        h = solver.solve_h_for_p(p).value
    sigma = solver.solve_sigma(h, tol=tol).value
    if p is None:
        if sigma >= 0.5:
            raise DomainError("build_profile: solved sigma >= 1/2, no p > 3 matches")
        p = 1.0 + 1.0 / (0.5 - sigma)
    params = SpectralParams.from_rate(p=p, sigma=sigma, h=h, kappa=kappa)
    return build_profile_from_params(params, grid=grid, cfg=cfg, strict=True)


def build_profile_from_params(params: SpectralParams,
                              grid: np.ndarray | None = None,
                              cfg: QuadratureConfig | None = None,
                              strict: bool = False) -> ProfileSolution:
    """Sample phi = alpha w(|z|) for explicit params (no solving).

    strict=False permits sigma off the matching root; the profile then
    violates the jump condition, which is exactly what negative controls
    measure.
    """
    cfg = cfg or weber.DEFAULT_CONFIG
    if grid is None:
        grid = profile_grid(60.0, 1200)
    grid = np.asarray(grid, dtype=float)
    alpha = amplitude(params, cfg, strict=strict)
    lam, h = params.lam, params.h
    rt_h = math.sqrt(h)

    abs_z = np.abs(grid)
    xs, inverse = np.unique(abs_z, return_inverse=True)
    v_vals = weber.v_many(rt_h * xs, lam, cfg)[inverse]
    vp_vals = weber.v_prime_many(rt_h * xs, lam, cfg)[inverse]

    sign = np.where(grid >= 0.0, 1.0, -1.0)
    phi = alpha * v_vals
    phi_p = sign * alpha * rt_h * vp_vals
    osc = np.exp(-0.25j * h * grid ** 2)
    eta = osc * phi
    eta_p = osc * (phi_p - 0.5j * h * grid * phi)

    samples = tuple(
        ProfileSample(z=float(z), phi=complex(f), phi_prime=complex(fp),
                      eta=complex(e), eta_prime=complex(ep))
        for z, f, fp, e, ep in zip(grid, phi, phi_p, eta, eta_p))

    # eta ~ c0 |z|^{i lam - 1/2}: from w(z) ~ (h^{1/2} z)^{i lam -1/2}
    # e^{i h z^2/4} e^{pi lam/4} e^{i pi/8}, the quadratic phase cancelling in eta
    log_c0 = (cmath.log(alpha) + 0.25 * math.pi * lam + 0.125j * math.pi
              + (0.5j * lam - 0.25) * math.log(h))
    c0 = cmath.exp(log_c0)
    c1 = c0 * (1j * lam - 0.5)

    v0, v0p = weber.v_at_zero(lam)
    return ProfileSolution(params=params, alpha=alpha, samples=samples,
                           c0=c0, c1=c1, phi0=alpha * v0,
                           dphi0_plus=alpha * rt_h * v0p, cfg=cfg)


def phi_at(sol: ProfileSolution, z: float) -> complex:
    """Fresh evaluation of phi(z) = alpha w(|z|) off the sample grid."""
    return sol.alpha * weber.v(math.sqrt(sol.params.h) * abs(z),
                               sol.params.lam, sol.cfg)


def eta_at(sol: ProfileSolution, z: float) -> complex:
    return cmath.exp(-0.25j * sol.params.h * z * z) * phi_at(sol, z)


def jump_residual(sol: ProfileSolution) -> float:
    """|2 phi'(0+) + |phi(0)|^{p-1} phi(0)|; zero at a matching root."""
    p = sol.params.p
    return abs(2.0 * sol.dphi0_plus + abs(sol.phi0) ** (p - 1.0) * sol.phi0)


def _stencil_step(sol: ProfileSolution, z: float) -> float:
    h = sol.params.h
    k = math.sqrt(h * abs(sol.params.lam) + (0.5 * h * z) ** 2) + 1e-9
    return min(0.05, 0.13 / k ** 1.5, abs(z) / 4.0)


def ode_residual(sol: ProfileSolution, z: float, step: float | None = None) -> float:
    """|(kappa + i h sigma) phi - phi_zz - h^2 z^2 phi/4| by 5-point stencil.

    phi is re-evaluated at z + k*delta (one-sided in |z|, never crossing the
    kink at 0); the delta-function term is absent for z != 0.  An explicit
    step overrides the curvature-adapted default (the residual then scales
    like step^4, the stencil order).
    """
    if abs(z) < 5e-3:
        raise GridError(f"ode_residual: z={z} too close to the jump at 0")
    d = step if step is not None else _stencil_step(sol, z)
    if abs(z) < 2.0 * d:
        raise GridError(f"ode_residual: stencil at z={z} would cross 0")
    vals = [phi_at(sol, z + k * d) for k in (-2, -1, 0, 1, 2)]
    phi_zz = (-vals[0] + 16.0 * vals[1] - 30.0 * vals[2]
              + 16.0 * vals[3] - vals[4]) / (12.0 * d * d)
    pr = sol.params
    lhs = ((pr.kappa + 1j * pr.h * pr.sigma) * vals[2] - phi_zz
           - 0.25 * pr.h ** 2 * z ** 2 * vals[2])
    return abs(lhs)


def ode_residual_eta(sol: ProfileSolution, z: float) -> float:
    """|(kappa + i h sigma) eta - i h (1/2 + z d/dz) eta - eta_zz|, the
    equivalent eta-form of the profile equation away from 0."""
    if abs(z) < 5e-3:
        raise GridError(f"ode_residual_eta: z={z} too close to the jump at 0")
    d = _stencil_step(sol, z)
    vals = [eta_at(sol, z + k * d) for k in (-2, -1, 0, 1, 2)]
    eta_z = (vals[0] - 8.0 * vals[1] + 8.0 * vals[3] - vals[4]) / (12.0 * d)
    eta_zz = (-vals[0] + 16.0 * vals[1] - 30.0 * vals[2]
              + 16.0 * vals[3] - vals[4]) / (12.0 * d * d)
    pr = sol.params
    lam_eta = 0.5 * vals[2] + z * eta_z
    lhs = ((pr.kappa + 1j * pr.h * pr.sigma) * vals[2]
           - 1j * pr.h * lam_eta - eta_zz)
    return abs(lhs)


# --------------------------------------------------------------------------
# integral quantities
# --------------------------------------------------------------------------

def _half_arrays(sol: ProfileSolution):
    side = sol.positive_side()
    z = np.array([s.z for s in side])
    eta = np.array([s.eta for s in side])
    eta_p = np.array([s.eta_prime for s in side])
    return z, eta, eta_p


def _cut_index(z: np.ndarray, R: float) -> int:
    if R > z[-1] * (1.0 + 1e-12):
        raise DomainError(f"R={R} beyond the sampled grid (z_max={z[-1]})")
    return int(np.searchsorted(z, R, side="right"))


def _mass_to(z, eta, i) -> float:
    return 2.0 * float(np.trapezoid(np.abs(eta[:i]) ** 2, z[:i]))


def _grad_to(z, eta_p, i) -> float:
    return 2.0 * float(np.trapezoid(np.abs(eta_p[:i]) ** 2, z[:i]))


def _lambda_form_to(z, eta, eta_p, i) -> complex:
    integrand = (0.5 * eta[:i] + z[:i] * eta_p[:i]) * np.conj(eta[:i])
    return 2.0 * complex(np.trapezoid(integrand, z[:i]))


def grad_tail_estimate(sol: ProfileSolution) -> float:
    """Far-field completion of int |eta_z|^2 beyond the grid:
    2 |c1|^2 int_Z^inf z^{2 sigma - 3} dz = |c1|^2 Z^{2 sigma-2}/(1 - sigma)."""
    z, _, _ = _half_arrays(sol)
    s = sol.params.sigma
    return abs(sol.c1) ** 2 * z[-1] ** (2.0 * s - 2.0) / (1.0 - s)


def gradient_integral(sol: ProfileSolution) -> float:
    """int_{-inf}^{inf} |eta_z|^2: grid quadrature plus the c1 tail."""
    z, _, eta_p = _half_arrays(sol)
    return _grad_to(z, eta_p, len(z)) + grad_tail_estimate(sol)


def mass_truncated(sol: ProfileSolution, R: float) -> float:
    """int_{-R}^{R} |eta|^2 (diagnostic; grows like |c0|^2 R^{2 sigma}/sigma)."""
    z, eta, _ = _half_arrays(sol)
    return _mass_to(z, eta, _cut_index(z, R))


@dataclass(frozen=True)
class PohozhaevReport:
    """Truncated Pohozhaev identities at radius R_eff (snapped to the grid).

    Each residual is the left-hand side of an identity whose exact value is
    0 + O(R^{2 sigma - 2}); the final_residual uses the R-truncated gradient
    so it, too, decays at that rate.  c0_ratio -> 1 certifies the far-field
    normalization sigma int |eta|^2 ~ |c0|^2 R^{2 sigma}.
    """
    R_eff: float
    p1_residual: float
    p2_residual: float
    p7_residual: float
    final_residual: float
    c0_ratio: float
    sigma_positive: bool
    kappa_positive: bool


def pohozhaev_report(sol: ProfileSolution, R: float) -> PohozhaevReport:
    pr = sol.params
    if pr.sigma >= 1.0:
        raise DomainError("pohozhaev_report: requires sigma < 1")
    z, eta, eta_p = _half_arrays(sol)
    i = _cut_index(z, R)
    R_eff = float(z[i - 1])
    mass = _mass_to(z, eta, i)
    grad_R = _grad_to(z, eta_p, i)
    grad_full = _grad_to(z, eta_p, len(z)) + grad_tail_estimate(sol)
    lam_form = _lambda_form_to(z, eta, eta_p, i)
    eta0_pow = abs(sol.phi0) ** (pr.p + 1.0)

    p1 = (pr.kappa * mass + pr.h * lam_form.imag + grad_full - eta0_pow)
    p2 = pr.sigma * mass - abs(sol.c0) ** 2 * R_eff ** (2.0 * pr.sigma)
    p7 = (pr.kappa * pr.sigma * mass + pr.h * pr.sigma * lam_form.imag
          + grad_full - 0.5 * eta0_pow)
    final = (1.0 - pr.sigma) * grad_R - (0.5 - pr.sigma) * eta0_pow
    c0_ratio = (pr.sigma * mass * R_eff ** (-2.0 * pr.sigma)
                / abs(sol.c0) ** 2)
    return PohozhaevReport(R_eff=R_eff, p1_residual=p1, p2_residual=p2,
                           p7_residual=p7, final_residual=final,
                           c0_ratio=c0_ratio,
                           sigma_positive=pr.sigma > 0.0,
                           kappa_positive=pr.kappa > 0.0)


def energy(sol: ProfileSolution) -> float:
    """E(eta) = (1/2) int |eta_z|^2 - |eta(0)|^{p+1}/(p+1); zero when
    sigma = sigma_c (tail-corrected quadrature)."""
    pr = sol.params
    return (0.5 * gradient_integral(sol)
            - abs(sol.phi0) ** (pr.p + 1.0) / (pr.p + 1.0))


def energy_identity_form(sol: ProfileSolution) -> float:
    """E(eta) through the Pohozhaev identity,
    (1/2 - (2/(p+1)) (1-sigma)/(1-2 sigma)) int |eta_z|^2 (sigma != 1/2)."""
    pr = sol.params
    if abs(1.0 - 2.0 * pr.sigma) < 1e-12:
        raise DomainError("energy_identity_form: undefined at sigma = 1/2")
    factor = 0.5 - (2.0 / (pr.p + 1.0)) * (1.0 - pr.sigma) / (1.0 - 2.0 * pr.sigma)
    return factor * gradient_integral(sol)


def reconstruct_psi(curve: BlowupCurve, sol: ProfileSolution,
                    x: float, t: float) -> complex:
    """psi(x,t) = lam(t)^{1/(p-1)} e^{i tau(t)} eta(lam(t) x) for 0 <= t < T*."""
    if not 0.0 <= t < curve.T_star:
        raise DomainError(f"reconstruct_psi: t={t} outside [0, T*)")
    if abs(curve.h - sol.params.h) > 1e-12 * curve.h or curve.kappa != sol.params.kappa:
        raise DomainError("reconstruct_psi: curve and profile disagree on (h, kappa)")
    lam_t = curve.lam_of_t(t)
    tau = curve.tau_of_t(t)
    return (lam_t ** (1.0 / (sol.params.p - 1.0))
            * cmath.exp(1j * tau) * eta_at(sol, lam_t * x))
