"""Small-h shape of the outgoing profile: contour integrals and WKB forms.

Rescaling the Weber integral for v(x) at lambda = -1/h - i sigma puts
everything into

    g(alpha, 1/h) = int_0^inf e^{p(t)/h} t^{-sigma-1/2} dt,
    p(z) = -(i/8) alpha^{-2} z^2 - z + i log z,    alpha = (1/2) h^{1/2} x,

through the prefactor chain

    v(x) = e^{i x^2/4} (h x)^{-i/h + sigma - 1/2}
           e^{-pi/(4h)} e^{-i sigma pi/4} e^{i pi/8} g(alpha, 1/h)
           / Gamma(1/2 - sigma + i/h).

The turning point of the underlying oscillator sits at alpha = 1.  Three
evaluations of g are provided:

  g_direct    certified quadrature along a slightly rotated ray (both
              exponential terms have negative real part in the wedge
              arg z in (-pi/4, 0), so the rotation is exact by Cauchy)
  g2/g3_contour  the two pieces of the contour split: the curve
              r = 2 alpha^2 csc(theta) and the imaginary-axis segment
              [0, 2 i alpha^2]; their sum reproduces g_direct
  g2/g3_stationary  the Laplace/stationary-phase approximations at the
              interior critical points theta_0 = arcsin(alpha) (alpha < 1)
              and s_0 = 2/(1 + sqrt(1 - alpha^{-2})) (alpha > 1), accurate
              to relative O(h)

plus the two closed WKB forms of the profile itself (inner decaying,
outer oscillatory power law) and the piecewise assembly turning_asymp_v.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, ToleranceError
from .weber import QuadratureConfig, SpectralParams, DEFAULT_CONFIG, _gauss_legendre

_RAY_ANGLE = 0.3        # rotation of the g_direct integration ray (radians)


@dataclass(frozen=True)
class TurningParams:
    """Turning-point coordinate alpha_t = (1/2) h^{1/2} x; alpha_t = 1 exactly
    at the classical turning point x = 2 h^{-1/2}."""
    alpha_t: float
    h: float
    sigma: float

    @classmethod
    def from_x(cls, x: float, h: float, sigma: float) -> "TurningParams":
        if h <= 0.0:
            raise DomainError("TurningParams: h must be positive")
        return cls(alpha_t=0.5 * math.sqrt(h) * x, h=h, sigma=sigma)


# --------------------------------------------------------------------------
# phase landscape helpers (checked against figures' stated facts in tests)
# --------------------------------------------------------------------------

def phase_landscape_f(alpha: float, theta: float) -> float:
    """f_alpha(theta) = alpha^2 cot(theta) + theta on (0, pi/2]."""
    return alpha * alpha / math.tan(theta) + theta


def phase_landscape_nu(alpha: float, theta: float) -> float:
    """nu_alpha(theta) = -alpha^2 csc^2/2 + log csc - alpha^2 + log(2 alpha^2),
    the imaginary part of p along the csc contour."""
    csc = 1.0 / math.sin(theta)
    return (-0.5 * alpha * alpha * csc * csc + math.log(csc)
            - alpha * alpha + math.log(2.0 * alpha * alpha))


def action_s(x: float) -> float:
    """S(x) = x sqrt(1-x^2) + arcsin x, increasing on [0,1] with S(1) = pi/2."""
    if not 0.0 <= x <= 1.0:
        raise DomainError("action_s: x must lie in [0, 1]")
    return x * math.sqrt(1.0 - x * x) + math.asin(x)


# --------------------------------------------------------------------------
# WKB forms of the profile
# --------------------------------------------------------------------------

def wkb_inner_phi(x: float, h: float) -> complex:
    """Inner (decaying) branch, valid strictly inside (1/2) h x < 1:

        2^{1/2} (1 - h^2 x^2/4)^{-1/4}
            e^{-[arcsin(hx/2) + (hx/2) sqrt(1 - h^2 x^2/4)]/h}
    """
    if h <= 0.0:
        raise DomainError("wkb_inner_phi: h must be positive")
    u = 0.5 * h * x
    if not u < 1.0:
        raise DomainError("wkb_inner_phi: requires (1/2) h x < 1 (inside the turning point)")
    root = math.sqrt(1.0 - u * u)
    return complex(math.sqrt(2.0) * (1.0 - u * u) ** -0.25
                   * math.exp(-(math.asin(u) + u * root) / h))


def wkb_outer_phi(x: float, h: float, sigma: float) -> complex:
    """Outer (oscillatory) branch c_h e^{i x^2/4} x^{-i/h + sigma - 1/2} with
    c_h = 2 e^{i pi/4} e^{-i/(2h)} e^{-pi/(2h)}; modulus decays like
    x^{sigma - 1/2}.

    The x-shape is exact in the far field, but the constant is only accurate
    to leading exponential order: resolved profiles carry an additional
    algebraic factor ~ h^{-1/2} (composing the far-field of the oscillator
    solution with the amplitude gives 2 h^{-1/2} e^{-pi/(2h)} (1 + O(h))),
    which this closed form leaves out.
    """
    if h <= 0.0 or x <= 0.0:
        raise DomainError("wkb_outer_phi: h and x must be positive")
    c_h = 2.0 * cmath.exp(0.25j * math.pi - 0.5j / h - 0.5 * math.pi / h)
    return c_h * cmath.exp(0.25j * x * x
                           + (-1j / h + sigma - 0.5) * math.log(x))


# --------------------------------------------------------------------------
# the oscillatory integral g and its contour pieces
# --------------------------------------------------------------------------

def _series_head_g(mu: complex, a2: complex, a1: complex, delta: complex,
                   max_terms: int = 300) -> complex:
    """int_0^delta e^{a2 s^2 + a1 s} s^{mu-1} ds along the straight segment.

    The exponential is expanded with c_{m+1} = (a1 c_m + 2 a2 c_{m-1})/(m+1)
    and each moment integrates to delta^{mu+m}/(mu+m); needs |a1 delta| and
    |a2 delta^2| of order a few for fast convergence.
    """
    c_prev = 0.0 + 0.0j
    c_cur = 1.0 + 0.0j
    total = 0.0 + 0.0j
    d_pow = cmath.exp(mu * cmath.log(delta))
    dm = 1.0 + 0.0j
    quiet = 0
    for m in range(max_terms):
        term = c_cur * d_pow * dm / (mu + m)
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            quiet += 1
            if quiet >= 3 and m >= 8:
                break
        else:
            quiet = 0
        c_prev, c_cur = c_cur, (a1 * c_cur + 2.0 * a2 * c_prev) / (m + 1.0)
        dm *= delta
    return total


def _panels(lo: float, hi: float, rate, n_nodes: int) -> list[float]:
    """Breakpoints on [lo, hi] with width capped by the local phase rate."""
    edges = [lo]
    a = lo
    while a < hi:
        width = min(max(0.5 * a, 1e-4), n_nodes / (1.0 + abs(rate(a))), hi - a)
        a += width
        edges.append(min(a, hi))
    return edges


def _certified_panels(integrand, rate, lo: float, hi: float,
                      cfg: QuadratureConfig, what: str) -> tuple[complex, float]:
    """Refine until two levels agree; returns (value, absolute mass).

    The mass (integral of |integrand|) sets the cancellation noise floor:
    agreement is demanded only down to max(rel_tol |value|, 64 eps mass).
    Callers decide whether |value| clears their own noise requirements.
    """
    prev = None
    mass = 0.0
    for level in range(3):
        n = cfg.n_nodes + 12 * level
        nodes, wgts = _gauss_legendre(n)
        total = 0.0 + 0.0j
        mass = 0.0
        base_edges = _panels(lo, hi, rate, cfg.n_nodes)
        for a, b in zip(base_edges[:-1], base_edges[1:]):
            sub = np.linspace(a, b, 2 ** level + 1)
            for c, d in zip(sub[:-1], sub[1:]):
                half = 0.5 * (d - c)
                t = 0.5 * (c + d) + half * nodes
                vals = integrand(t)
                total += complex(np.sum(vals * wgts)) * half
                mass += float(np.sum(np.abs(vals) * wgts)) * half
        if prev is not None:
            bound = max(cfg.rel_tol * abs(total), 64.0 * np.finfo(float).eps * mass)
            if abs(total - prev) <= bound:
                return total, mass
        prev = total
    raise ToleranceError(f"{what}: quadrature failed to certify")


def g_direct(alpha_t: float, h_inv: float, sigma: float,
             cfg: QuadratureConfig | None = None,
             allow_contour_fallback: bool = True) -> complex:
    """g(alpha, 1/h) by certified quadrature on the ray arg z = -0.3.

    On that ray both -z and -(i/8) alpha^{-2} z^2 have negative real part,
    so the rotation is exact and supplies quadratic damping that the real
    axis lacks; the t^{i/h - sigma - 1/2} endpoint factor is integrated in
    closed form against the Taylor expansion of the rest on [0, delta].

    When |g| is exponentially small (alpha < 1 with large h_inv) the ray
    integral cancels below the double-precision noise floor of its own
    mass.  In that regime the certified contour-split quadrature (still
    direct integration of the exact integrand, deformed by Cauchy's
    theorem) is authoritative: it is returned when allow_contour_fallback
    is set, else ToleranceError is raised.
    """
    if alpha_t <= 0.0 or h_inv <= 0.0:
        raise DomainError("g_direct: alpha_t and h_inv must be positive")
    if not sigma < 0.5:
        raise DomainError("g_direct: endpoint integrability needs sigma < 1/2")
    cfg = cfg or DEFAULT_CONFIG
    eps = _RAY_ANGLE
    rot = cmath.exp(-1j * eps)
    mu = complex(0.5 - sigma, h_inv)
    a2 = -0.125j * h_inv * rot * rot / (alpha_t * alpha_t)   # coeff of r^2
    a1 = -h_inv * rot                                        # coeff of r
    delta = min(4.0 / abs(a1), 2.0 / math.sqrt(abs(a2)), 0.5)
    head = _series_head_g(mu, a2, a1, delta)

    # tail cutoff: |exp| falls like exp(Re a2 r^2 + Re a1 r)
    ra2, ra1 = a2.real, a1.real
    T = delta
    while ra2 * T * T + ra1 * T > -46.0 and T < 1e4:
        T = T * 1.25 + 0.1

    def integrand(r: np.ndarray) -> np.ndarray:
        return np.exp(a2 * r * r + a1 * r + (mu - 1.0) * np.log(r))

    def rate(r: float) -> float:
        osc = 2.0 * a2.imag * r + a1.imag + h_inv / r
        curv = math.sqrt(2.0 * abs(a2.imag) + h_inv / (r * r))
        return abs(osc) + curv

    try:
        body, mass = _certified_panels(integrand, rate, delta, T, cfg, "g_direct")
        value = cmath.exp(-1j * eps * mu) * (head + body)
        noise = 64.0 * np.finfo(float).eps * (mass + abs(head))
        if abs(head + body) >= 1e3 * noise:
            return value
    except ToleranceError:
        if not allow_contour_fallback:
            raise
        return g2_contour(alpha_t, h_inv, sigma, cfg) + g3_contour(
            alpha_t, h_inv, sigma, cfg)
    if not allow_contour_fallback:
        raise ToleranceError(
            "g_direct: value below the cancellation noise floor of the ray integral")
    return g2_contour(alpha_t, h_inv, sigma, cfg) + g3_contour(
        alpha_t, h_inv, sigma, cfg)


def g2_contour(alpha_t: float, h_inv: float, sigma: float,
               cfg: QuadratureConfig | None = None) -> complex:
    """The csc-curve piece of the contour split, parameterized by theta:

        (2 alpha^2)^{1/2-sigma} int_0^{pi/2} e^{(-f + i nu)/h}
            (sin theta)^{sigma-3/2} e^{-i (sigma+1/2) theta} d theta
    """
    if alpha_t <= 0.0 or h_inv <= 0.0:
        raise DomainError("g2_contour: alpha_t and h_inv must be positive")
    cfg = cfg or DEFAULT_CONFIG
    a2 = alpha_t * alpha_t

    f_min = action_s(alpha_t) if alpha_t < 1.0 else 0.5 * math.pi
    # essential decay e^{-h_inv (f - f_min)} with f ~ alpha^2/theta kills
    # everything below this theta; the e^{-50} left of it is below any tol
    lo = min(a2 / (f_min + 50.0 / h_inv), 0.5)

    def integrand(th: np.ndarray) -> np.ndarray:
        sin = np.sin(th)
        csc = 1.0 / sin
        f = a2 * np.cos(th) * csc + th
        nu = -0.5 * a2 * csc * csc + np.log(csc) - a2 + math.log(2.0 * a2)
        return np.exp(h_inv * (-f + 1j * nu)
                      + (sigma - 1.5) * np.log(sin) - 1j * (sigma + 0.5) * th)

    def rate(th: float) -> float:
        csc2 = 1.0 / math.sin(th) ** 2
        nu_p = (a2 * csc2 - 1.0) / math.tan(th)
        f_pp = 2.0 * a2 * csc2 / math.tan(th)
        return h_inv * abs(nu_p) + 3.0 * math.sqrt(h_inv * abs(f_pp))

    body, _ = _certified_panels(integrand, rate, lo, 0.5 * math.pi, cfg, "g2_contour")
    return (2.0 * a2) ** (0.5 - sigma) * body


def g3_contour(alpha_t: float, h_inv: float, sigma: float,
               cfg: QuadratureConfig | None = None) -> complex:
    """The imaginary-axis piece [0, 2 i alpha^2] of the contour split:

        e^{-pi/(2h)} e^{-i pi sigma/2} e^{i pi/4}
            int_0^{2 alpha^2} e^{i phi(s)/h} s^{-sigma-1/2} ds,
        phi(s) = alpha^{-2} s^2/8 - s + log s
    """
    if alpha_t <= 0.0 or h_inv <= 0.0:
        raise DomainError("g3_contour: alpha_t and h_inv must be positive")
    if not sigma < 0.5:
        raise DomainError("g3_contour: endpoint integrability needs sigma < 1/2")
    cfg = cfg or DEFAULT_CONFIG
    a2 = alpha_t * alpha_t
    hi = 2.0 * a2
    mu = complex(0.5 - sigma, h_inv)
    c2 = 0.125j * h_inv / a2
    c1 = -1j * h_inv
    delta = min(4.0 / abs(c1), 2.0 / math.sqrt(abs(c2)), 0.5 * hi)
    head = _series_head_g(mu, c2, c1, delta)

    def integrand(s: np.ndarray) -> np.ndarray:
        return np.exp(c2 * s * s + c1 * s + (mu - 1.0) * np.log(s))

    def rate(s: float) -> float:
        osc = h_inv * abs(0.25 * s / a2 - 1.0 + 1.0 / s)
        curv = math.sqrt(h_inv * (0.25 / a2 + 1.0 / (s * s)))
        return osc + 3.0 * curv

    body, _ = _certified_panels(integrand, rate, delta, hi, cfg, "g3_contour")
    pref = cmath.exp(-0.5 * math.pi * h_inv - 0.5j * math.pi * sigma + 0.25j * math.pi)
    return pref * (head + body)


# --------------------------------------------------------------------------
# stationary phase / Laplace approximations
# --------------------------------------------------------------------------

def _log_g2_stationary(alpha_t: float, h_inv: float, sigma: float) -> complex:
    theta0 = math.asin(alpha_t)
    root = math.sqrt(1.0 - alpha_t * alpha_t)
    f0 = alpha_t * root + theta0
    nu0 = -0.5 - alpha_t * alpha_t + math.log(2.0 * alpha_t)
    # f'' - i nu'' at the critical point, |.| e^{i(pi/2 - theta0)} form
    a0 = 2.0 * root / (alpha_t * alpha_t) * cmath.exp(1j * (0.5 * math.pi - theta0))
    return ((0.5 - sigma) * math.log(2.0 * alpha_t * alpha_t)
            + h_inv * (-f0 + 1j * nu0)
            + (sigma - 1.5) * math.log(alpha_t)
            - 1j * (sigma + 0.5) * theta0
            + 0.5 * math.log(2.0 * math.pi / h_inv)
            - 0.5 * cmath.log(a0))


def g2_stationary(alpha_t: float, h_inv: float, sigma: float) -> complex:
    """Laplace evaluation of the csc-curve piece at theta_0 = arcsin(alpha).

    Valid for 0 < alpha < 1 where f has its interior minimum; the curvature
    combination is f''(theta_0) - i nu''(theta_0)
    = 2 sqrt(1-alpha^2) alpha^{-2} e^{i(pi/2 - arcsin alpha)}, which
    degenerates at the turning point alpha = 1.
    """
    if not 0.0 < alpha_t < 1.0:
        raise DomainError("g2_stationary: requires 0 < alpha_t < 1")
    if h_inv <= 0.0:
        raise DomainError("g2_stationary: h_inv must be positive")
    return cmath.exp(_log_g2_stationary(alpha_t, h_inv, sigma))


def g2_curvature(alpha_t: float) -> complex:
    """f''(theta_0) - i nu''(theta_0) = 2 (1-alpha^2)^{1/2} alpha^{-2}
    e^{i(pi/2 - arcsin alpha)}."""
    if not 0.0 < alpha_t < 1.0:
        raise DomainError("g2_curvature: requires 0 < alpha_t < 1")
    root = math.sqrt(1.0 - alpha_t * alpha_t)
    return 2.0 * root / (alpha_t * alpha_t) * cmath.exp(
        1j * (0.5 * math.pi - math.asin(alpha_t)))


def g3_stationary_point(alpha_t: float) -> float:
    """Interior critical point s_0 = 2/(1 + sqrt(1 - alpha^{-2})) for alpha >= 1."""
    if alpha_t < 1.0:
        raise DomainError("g3_stationary_point: requires alpha_t >= 1")
    return 2.0 / (1.0 + math.sqrt(1.0 - alpha_t ** -2))


def g3_phase_at(alpha_t: float, s: float) -> float:
    """phi_alpha(s) = alpha^{-2} s^2/8 - s + log s."""
    return 0.125 * s * s / (alpha_t * alpha_t) - s + math.log(s)


def _log_g3_stationary(alpha_t: float, h_inv: float, sigma: float) -> complex:
    s0 = g3_stationary_point(alpha_t)
    phi0 = g3_phase_at(alpha_t, s0)
    root = math.sqrt(1.0 - alpha_t ** -2)
    phi2 = -0.5 * root * (1.0 + root)
    return (0.5 * math.log(2.0 * math.pi / (h_inv * abs(phi2)))
            - 0.5 * math.pi * h_inv - 0.5j * math.pi * sigma
            + 1j * h_inv * phi0 + (-sigma - 0.5) * math.log(s0))


def g3_stationary(alpha_t: float, h_inv: float, sigma: float) -> complex:
    """Stationary-phase evaluation of the axis piece at s_0 (alpha > 1):

        sqrt(2 pi/(h_inv |phi''(s_0)|)) e^{-pi h_inv/2} e^{-i pi sigma/2}
            e^{i h_inv phi(s_0)} s_0^{-sigma-1/2}

    (phi''(s_0) < 0 and the e^{-i pi/4} Fresnel phase cancels the contour's
    e^{+i pi/4}).  Degenerate exactly at alpha = 1 where phi''(s_0) = 0.
    """
    if alpha_t <= 1.0:
        raise DomainError("g3_stationary: requires alpha_t > 1")
    if h_inv <= 0.0:
        raise DomainError("g3_stationary: h_inv must be positive")
    return cmath.exp(_log_g3_stationary(alpha_t, h_inv, sigma))


# --------------------------------------------------------------------------
# piecewise profile asymptotics through the prefactor chain
# --------------------------------------------------------------------------

_GUARD_LO, _GUARD_HI = 0.85, 1.15


def turning_asymp_v(x: float, params: SpectralParams) -> complex:
    """v(x) assembled from the stationary-phase g pieces and the prefactor
    chain; branch by alpha_t < 1 (inner, g2) or > 1 (outer, g3) with the
    guard band [0.85, 1.15] refused (no uniform matching across the
    degenerate turning point is attempted).
    """
    if x <= 0.0:
        raise DomainError("turning_asymp_v: x must be positive")
    if params.kappa != 1.0:
        raise DomainError("turning_asymp_v: stated for kappa = +1")
    h = params.h
    sigma = params.sigma
    h_inv = 1.0 / h
    alpha = 0.5 * math.sqrt(h) * x
    if _GUARD_LO <= alpha <= _GUARD_HI:
        raise DomainError(
            f"turning_asymp_v: alpha_t={alpha:.3f} inside the turning guard band")
    log_g = (_log_g2_stationary(alpha, h_inv, sigma) if alpha < 1.0
             else _log_g3_stationary(alpha, h_inv, sigma))
    log_pref = (0.25j * x * x
                + (-1j * h_inv + sigma - 0.5) * math.log(h * x)
                - 0.25 * math.pi * h_inv - 0.25j * math.pi * sigma
                + 0.125j * math.pi
                - specfun.log_gamma(complex(0.5 - sigma, h_inv)))
    return cmath.exp(log_pref + log_g)


def v_from_g(x: float, params: SpectralParams,
             cfg: QuadratureConfig | None = None) -> complex:
    """v(x) through the exact prefactor chain with g_direct (no stationary
    phase); cross-check of the chain itself against the Weber evaluation."""
    if x <= 0.0:
        raise DomainError("v_from_g: x must be positive")
    h = params.h
    sigma = params.sigma
    h_inv = 1.0 / h
    alpha = 0.5 * math.sqrt(h) * x
    g = g_direct(alpha, h_inv, sigma, cfg)
    log_pref = (0.25j * x * x
                + (-1j * h_inv + sigma - 0.5) * math.log(h * x)
                - 0.25 * math.pi * h_inv - 0.25j * math.pi * sigma
                + 0.125j * math.pi
                - specfun.log_gamma(complex(0.5 - sigma, h_inv)))
    return cmath.exp(log_pref) * g
