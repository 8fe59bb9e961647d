"""Parabolic cylinder (Weber) functions of complex order.

D_nu solves  gamma'' + (nu + 1/2 - z^2/4) gamma = 0  and is evaluated for
Re nu < 0 from the integral representation

    D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf e^{-z t - t^2/2} t^{-nu-1} dt

with the endpoint singularity t^{-nu-1} absorbed analytically: on [0, t1] the
entire factor e^{-z t - t^2/2} is expanded in a Taylor series whose moments
int t^{m-nu-1} dt integrate in closed form, and [t1, T] is covered by
Gauss-Legendre panels with width capped by the local oscillation rate.
For Re nu >= 0 the order recurrence

    D_{nu+1}(z) = z D_nu(z) - nu D_{nu-1}(z)

extends the integral values upward (validated against the integral on the
overlap strip -1 < Re nu < 0).

On top of D_nu sit the two inverted-harmonic-oscillator solutions of
-v'' - x^2 v / 4 = lambda v,

    v(x)  = D_{i lambda - 1/2}(e^{-i pi/4} x)
    v*(x) = D_{-i lambda - 1/2}(e^{+i pi/4} x)

their scaled versions w(x) = v(h^{1/2} x), the x<0 connection formulas, the
Wronskians and the far-field asymptotics.  All evaluations are certified by
comparing quadrature refinement levels; ToleranceError is raised if two
successive levels disagree beyond the configured tolerances.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, ToleranceError

ROT_M = cmath.exp(-0.25j * math.pi)    # e^{-i pi/4} = (1 - i)/sqrt(2)
ROT_P = cmath.exp(0.25j * math.pi)     # e^{+i pi/4}


@dataclass(frozen=True)
class QuadratureConfig:
    """Controls for the oscillatory/decaying Weber integrals.

    t_max     ceiling for the tail scan; panels stop earlier once the
              integrand magnitude is negligible relative to its peak
    n_nodes   Gauss-Legendre nodes per panel at the base refinement level
    abs_tol   absolute certification target for D_nu values
    rel_tol   relative certification target
    """
    t_max: float = 80.0
    n_nodes: int = 24
    abs_tol: float = 1e-11
    rel_tol: float = 1e-11

    def __post_init__(self) -> None:
        if not self.t_max > 0:
            raise DomainError("QuadratureConfig: t_max must be positive")
        if self.n_nodes < 16:
            raise DomainError("QuadratureConfig: n_nodes must be >= 16")
        for tol in (self.abs_tol, self.rel_tol):
            if not 0.0 < tol < 1e-2:
                raise DomainError("QuadratureConfig: tolerances must lie in (0, 1e-2)")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class SpectralParams:
    """Parameter bundle (p, sigma, sigma_c, h, kappa) with lam derived.

    lam = -kappa/h - i sigma is exposed as a property so the constraint can
    never drift.  kappa is +-1 for normalized profiles but arbitrary nonzero
    values are accepted so the mu-rescaling relation can be exercised.
    """
    p: float
    sigma: float
    sigma_c: float
    h: float
    kappa: float = 1.0

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise DomainError("SpectralParams: h must be positive")
        if self.kappa == 0.0:
            raise DomainError("SpectralParams: kappa must be nonzero")
        if self.p > 1.0:
            expected = 0.5 - 1.0 / (self.p - 1.0)
            if abs(self.sigma_c - expected) > 1e-12:
                raise DomainError(
                    f"SpectralParams: sigma_c={self.sigma_c} inconsistent with p={self.p}")

    @property
    def lam(self) -> complex:
        return complex(-self.kappa / self.h, -self.sigma)

    @classmethod
    def from_rate(cls, p: float, sigma: float, h: float, kappa: float = 1.0
                  ) -> "SpectralParams":
        if p <= 1.0:
            raise DomainError("SpectralParams.from_rate: p must exceed 1")
        return cls(p=p, sigma=sigma, sigma_c=0.5 - 1.0 / (p - 1.0), h=h, kappa=kappa)


@functools.lru_cache(maxsize=32)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _series_head(nu: complex, zs: np.ndarray, t1: float) -> np.ndarray:
    """int_0^t1 e^{-z t - t^2/2} t^{-nu-1} dt, exact in the endpoint power.

    Expands e^{-z t - t^2/2} = sum c_m t^m via (m+1) c_{m+1} = -z c_m - c_{m-1}
    and integrates the moments t^{m-nu-1} in closed form.  Requires
    |z| t1 <~ 1.5 so the series converges in a few dozen terms.
    """
    c_prev = np.zeros_like(zs)
    c_cur = np.ones_like(zs)
    total = np.zeros_like(zs)
    t1_pow = t1 ** (-nu)        # complex power of a positive real
    tm = 1.0
    quiet = 0
    for m in range(400):
        term = c_cur * (t1_pow * tm / (m - nu))
        total += term
        if float(np.max(np.abs(term))) < 1e-18 * (1.0 + float(np.max(np.abs(total)))):
            quiet += 1
            if quiet >= 3 and m >= 8:
                break
        else:
            quiet = 0
        c_prev, c_cur = c_cur, (-zs * c_cur - c_prev) / (m + 1.0)
        tm *= t1
    return total


def _tail_cutoff(nu_re: float, re_min: float, t1: float, t_ceiling: float) -> float:
    """Smallest T past the integrand peak with magnitude ~1e-18 of the peak."""
    m = -nu_re - 1.0
    hi = max(t_ceiling, t1 * 4.0, 10.0)
    ts = np.linspace(t1, hi, 600)
    lm = -0.5 * ts * ts - re_min * ts + m * np.log(ts)
    i_peak = int(np.argmax(lm))
    thresh = float(lm[i_peak]) + math.log(1e-18)
    for i in range(i_peak, len(ts)):
        if lm[i] < thresh:
            return float(ts[i])
    return float(hi)


def _panel_edges(nu: complex, t1: float, T: float, zs: np.ndarray,
                 n_nodes: int) -> list[float]:
    """Geometric growth from t1, width-capped by the live oscillation rate.

    Two phases oscillate: e^{-i Im(z) t} at rate |Im z| (only for z whose
    damping has not yet killed the integrand) and t^{-i Im(nu)} at the
    logarithmic rate |Im nu|/t.
    """
    re = zs.real
    im = np.abs(zs.imag)
    im_nu = abs(nu.imag)
    edges = [t1]
    a = t1
    while a < T:
        alive = (-re * a - 0.5 * a * a) > -55.0
        im_alive = float(np.max(im[alive])) if bool(np.any(alive)) else 0.0
        width = min(max(a, 0.02), n_nodes / (1.0 + im_alive + im_nu / a), T - a)
        a = a + width
        edges.append(min(a, T))
    return edges


def _quad_level(nu: complex, zs: np.ndarray, t1: float, T: float,
                n_nodes: int, splits: int) -> tuple[np.ndarray, np.ndarray]:
    """One refinement level; returns (values, absolute mass per z).

    The mass sum of |weight * integrand| sets the double-precision noise
    floor of the result, which the certification must not pretend to beat.
    """
    base_edges = _panel_edges(nu, t1, T, zs, n_nodes)
    nodes, wgts = _gauss_legendre(n_nodes)
    total = _series_head(nu, zs, t1)
    mass = np.abs(total)
    for lo0, hi0 in zip(base_edges[:-1], base_edges[1:]):
        sub = np.linspace(lo0, hi0, splits + 1)
        for lo, hi in zip(sub[:-1], sub[1:]):
            half = 0.5 * (hi - lo)
            t = 0.5 * (hi + lo) + half * nodes
            base = np.exp(-0.5 * t * t + (-nu - 1.0) * np.log(t)) * (wgts * half)
            block = np.exp(-np.outer(zs, t))
            total = total + block @ base
            mass = mass + np.abs(block) @ np.abs(base)
    return total, mass


def _integral_many(nu: complex, zs: np.ndarray, cfg: QuadratureConfig,
                   tol_abs: float) -> np.ndarray:
    """Certified int_0^inf e^{-z t - t^2/2} t^{-nu-1} dt over an array of z."""
    zs = np.asarray(zs, dtype=complex)
    t1 = min(0.5, 1.5 / (1.0 + float(np.max(np.abs(zs)))))
    T = _tail_cutoff(nu.real, float(np.min(zs.real)), t1, cfg.t_max)
    prev = None
    for level in range(3):
        vals, mass = _quad_level(nu, zs, t1, T, cfg.n_nodes + 12 * level, 2 ** level)
        if prev is not None:
            err = np.abs(vals - prev)
            bound = np.maximum.reduce([
                np.full_like(mass, tol_abs),
                cfg.rel_tol * np.abs(vals),
                64.0 * np.finfo(float).eps * mass,   # rounding noise floor
            ])
            if bool(np.all(err <= bound)):
                return vals
        prev = vals
    raise ToleranceError(
        f"weber integral failed to certify abs_tol={tol_abs:g} for nu={nu!r}")


def _d_integral_many(nu: complex, zs: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    pref = specfun.rgamma(-nu)     # 1/Gamma(-nu), entire
    if pref == 0.0:
        return np.zeros_like(np.asarray(zs, dtype=complex))
    tol_abs = cfg.abs_tol / max(abs(pref), 1e-300)
    vals = _integral_many(nu, zs, cfg, tol_abs)
    return np.exp(-0.25 * np.asarray(zs, dtype=complex) ** 2) * vals * pref


def _d_many(nu: complex, zs: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    """D_nu over an array of z, any Re nu (recurrence extension upward)."""
    zs = np.asarray(zs, dtype=complex)
    if nu.real < 0.0:
        return _d_integral_many(nu, zs, cfg)
    shift = int(math.floor(nu.real)) + 1
    mu = nu - shift                      # Re mu in [-1, 0)
    d_lo = _d_integral_many(mu - 1.0, zs, cfg)
    d_hi = _d_integral_many(mu, zs, cfg)
    for j in range(shift):
        order = mu + j
        d_lo, d_hi = d_hi, zs * d_hi - order * d_lo
    return d_hi


def _d_prime_many(nu: complex, zs: np.ndarray, cfg: QuadratureConfig) -> np.ndarray:
    """d/dz D_nu(z) = nu D_{nu-1}(z) - (z/2) D_nu(z) (differentiation under
    the integral sign brings down one power of t, which is the nu-1 moment)."""
    zs = np.asarray(zs, dtype=complex)
    return nu * _d_many(nu - 1.0, zs, cfg) - 0.5 * zs * _d_many(nu, zs, cfg)


# --------------------------------------------------------------------------
# public scalar API
# --------------------------------------------------------------------------

def d_nu_integral(nu: complex, z: complex, cfg: QuadratureConfig | None = None) -> complex:
    """D_nu(z) from the integral representation; requires Re nu < 0."""
    nu = complex(nu)
    if nu.real >= 0.0:
        raise DomainError(f"d_nu_integral: Re nu must be negative, got {nu!r}")
    cfg = cfg or DEFAULT_CONFIG
    return complex(_d_integral_many(nu, np.array([z], dtype=complex), cfg)[0])


def d_nu(nu: complex, z: complex, cfg: QuadratureConfig | None = None) -> complex:
    """D_nu(z) for any complex order (integral + recurrence extension)."""
    cfg = cfg or DEFAULT_CONFIG
    return complex(_d_many(complex(nu), np.array([z], dtype=complex), cfg)[0])


def d_nu_prime(nu: complex, z: complex, cfg: QuadratureConfig | None = None) -> complex:
    """d/dz D_nu(z), same domain as d_nu."""
    cfg = cfg or DEFAULT_CONFIG
    return complex(_d_prime_many(complex(nu), np.array([z], dtype=complex), cfg)[0])


def d_at_zero(nu: complex) -> tuple[complex, complex]:
    """(D_nu(0), D_nu'(0)) in closed form through the gamma function:

        D_nu(0)  =  sqrt(pi) 2^{nu/2}   / Gamma((1-nu)/2)
        D_nu'(0) = -sqrt(pi) 2^{nu/2+1/2} / Gamma(-nu/2)

    Implemented with the reciprocal gamma, so points where a denominator
    gamma has a pole return the genuine zero value instead of failing.
    """
    nu = complex(nu)
    pow_half = cmath.exp(0.5 * nu * math.log(2.0))
    value = specfun.SQRT_PI * pow_half * specfun.rgamma(0.5 * (1.0 - nu))
    deriv = -specfun.SQRT_PI * pow_half * math.sqrt(2.0) * specfun.rgamma(-0.5 * nu)
    return value, deriv


def connection_residual(nu: complex, z: complex,
                        cfg: QuadratureConfig | None = None) -> float:
    """|D_nu(z) - e^{i pi nu} D_nu(-z)
         - e^{i pi (nu+1)/2} sqrt(2 pi)/Gamma(-nu) D_{-nu-1}(-i z)|."""
    cfg = cfg or DEFAULT_CONFIG
    nu = complex(nu)
    z = complex(z)
    lhs = d_nu(nu, z, cfg)
    t1 = cmath.exp(1j * math.pi * nu) * d_nu(nu, -z, cfg)
    t2 = (cmath.exp(0.5j * math.pi * (nu + 1.0)) * specfun.SQRT_TWO_PI
          * specfun.rgamma(-nu) * d_nu(-nu - 1.0, -1j * z, cfg))
    return abs(lhs - t1 - t2)


# --------------------------------------------------------------------------
# inverted harmonic oscillator solutions v, v*
# --------------------------------------------------------------------------

def _order(lam: complex) -> complex:
    return 1j * complex(lam) - 0.5


def _order_star(lam: complex) -> complex:
    return -1j * complex(lam) - 0.5


def v(x: float, lam: complex, cfg: QuadratureConfig | None = None) -> complex:
    """v(x) = D_{i lam - 1/2}(e^{-i pi/4} x); x < 0 goes through the
    connection formula so only the positive axis is ever integrated."""
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    if x >= 0.0:
        return d_nu(_order(lam), ROT_M * x, cfg)
    c1 = -1j * cmath.exp(-math.pi * lam)
    c2 = (specfun.SQRT_TWO_PI * specfun.rgamma(0.5 - 1j * lam)
          * cmath.exp(-0.5 * math.pi * lam) * ROT_P)
    return c1 * v(-x, lam, cfg) + c2 * v_star(-x, lam, cfg)


def v_prime(x: float, lam: complex, cfg: QuadratureConfig | None = None) -> complex:
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    if x >= 0.0:
        return ROT_M * d_nu_prime(_order(lam), ROT_M * x, cfg)
    c1 = -1j * cmath.exp(-math.pi * lam)
    c2 = (specfun.SQRT_TWO_PI * specfun.rgamma(0.5 - 1j * lam)
          * cmath.exp(-0.5 * math.pi * lam) * ROT_P)
    return -c1 * v_prime(-x, lam, cfg) - c2 * v_star_prime(-x, lam, cfg)


def v_star(x: float, lam: complex, cfg: QuadratureConfig | None = None) -> complex:
    """v*(x) = D_{-i lam - 1/2}(e^{+i pi/4} x)."""
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    if x >= 0.0:
        return d_nu(_order_star(lam), ROT_P * x, cfg)
    c1 = 1j * cmath.exp(-math.pi * lam)
    c2 = (ROT_M * cmath.exp(-0.5 * math.pi * lam)
          * specfun.SQRT_TWO_PI * specfun.rgamma(0.5 + 1j * lam))
    return c1 * v_star(-x, lam, cfg) + c2 * v(-x, lam, cfg)


def v_star_prime(x: float, lam: complex, cfg: QuadratureConfig | None = None) -> complex:
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    if x >= 0.0:
        return ROT_P * d_nu_prime(_order_star(lam), ROT_P * x, cfg)
    c1 = 1j * cmath.exp(-math.pi * lam)
    c2 = (ROT_M * cmath.exp(-0.5 * math.pi * lam)
          * specfun.SQRT_TWO_PI * specfun.rgamma(0.5 + 1j * lam))
    return -c1 * v_star_prime(-x, lam, cfg) - c2 * v_prime(-x, lam, cfg)


def v_many(xs: np.ndarray, lam: complex,
           cfg: QuadratureConfig | None = None) -> np.ndarray:
    """Vectorized v over an array of x >= 0 (shared quadrature panels)."""
    cfg = cfg or DEFAULT_CONFIG
    xs = np.asarray(xs, dtype=float)
    if xs.size and float(np.min(xs)) < 0.0:
        raise DomainError("v_many: all x must be nonnegative")
    return _d_many(_order(complex(lam)), ROT_M * xs, cfg)


def v_prime_many(xs: np.ndarray, lam: complex,
                 cfg: QuadratureConfig | None = None) -> np.ndarray:
    cfg = cfg or DEFAULT_CONFIG
    xs = np.asarray(xs, dtype=float)
    if xs.size and float(np.min(xs)) < 0.0:
        raise DomainError("v_prime_many: all x must be nonnegative")
    return ROT_M * _d_prime_many(_order(complex(lam)), ROT_M * xs, cfg)


# --------------------------------------------------------------------------
# scaled solutions of -w'' - h^2 x^2 w / 4 = h lam w
# --------------------------------------------------------------------------

def w(x: float, lam: complex, h: float, cfg: QuadratureConfig | None = None) -> complex:
    """w(x, lam) = v(h^{1/2} x, lam)."""
    if h <= 0.0:
        raise DomainError("w: h must be positive")
    return v(math.sqrt(h) * x, lam, cfg)


def w_prime(x: float, lam: complex, h: float,
            cfg: QuadratureConfig | None = None) -> complex:
    if h <= 0.0:
        raise DomainError("w_prime: h must be positive")
    rt = math.sqrt(h)
    return rt * v_prime(rt * x, lam, cfg)


def w_star(x: float, lam: complex, h: float,
           cfg: QuadratureConfig | None = None) -> complex:
    if h <= 0.0:
        raise DomainError("w_star: h must be positive")
    return v_star(math.sqrt(h) * x, lam, cfg)


def w_star_prime(x: float, lam: complex, h: float,
                 cfg: QuadratureConfig | None = None) -> complex:
    if h <= 0.0:
        raise DomainError("w_star_prime: h must be positive")
    rt = math.sqrt(h)
    return rt * v_star_prime(rt * x, lam, cfg)


# --------------------------------------------------------------------------
# Wronskians and far-field asymptotics
# --------------------------------------------------------------------------

def wronskian_check(lam: complex, x: float,
                    cfg: QuadratureConfig | None = None) -> tuple[complex, complex]:
    """(numeric, closed) for the v/v* Wronskian, closed form i e^{pi lam / 2}.

    The numeric value is v'(x) v*(x) - v(x) v*'(x); with this ordering the
    closed form comes out +i e^{pi lam/2} (the opposite ordering flips the
    sign), which is the identity the verification suite pins down.
    """
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    numeric = (v_prime(x, lam, cfg) * v_star(x, lam, cfg)
               - v(x, lam, cfg) * v_star_prime(x, lam, cfg))
    closed = 1j * cmath.exp(0.5 * math.pi * lam)
    return numeric, closed


def wronskian_mirror_check(lam: complex, x: float,
                           cfg: QuadratureConfig | None = None
                           ) -> tuple[complex, complex]:
    """(numeric, closed) for the v(x)/v(-x) pair:

        v'(x) v(-x) + v(x) v'(-x)  =  -e^{-i pi/4} sqrt(2 pi) / Gamma(1/2 - i lam)

    (equal to 2 v(0) v'(0); constant in x)."""
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    numeric = (v_prime(x, lam, cfg) * v(-x, lam, cfg)
               + v(x, lam, cfg) * v_prime(-x, lam, cfg))
    closed = -ROT_M * specfun.SQRT_TWO_PI * specfun.rgamma(0.5 - 1j * lam)
    return numeric, closed


def v_at_zero(lam: complex) -> tuple[complex, complex]:
    """(v(0), v'(0)) in closed gamma form:

        v(0)  =  sqrt(pi) 2^{i lam/2 - 1/4} / Gamma(3/4 - i lam/2)
        v'(0) = -e^{-i pi/4} sqrt(pi) 2^{i lam/2 + 1/4} / Gamma(1/4 - i lam/2)
    """
    lam = complex(lam)
    base = cmath.exp((0.5j * lam) * math.log(2.0)) * specfun.SQRT_PI
    value = base * 2.0 ** -0.25 * specfun.rgamma(0.75 - 0.5j * lam)
    deriv = -ROT_M * base * 2.0 ** 0.25 * specfun.rgamma(0.25 - 0.5j * lam)
    return value, deriv


def v_asym_plus(x: float, lam: complex) -> complex:
    """Leading x -> +inf form  x^{i lam - 1/2} e^{i x^2/4} e^{pi lam/4} e^{i pi/8}."""
    if x <= 0.0:
        raise DomainError("v_asym_plus: x must be positive")
    lam = complex(lam)
    return cmath.exp((1j * lam - 0.5) * math.log(x) + 0.25j * x * x
                     + 0.25 * math.pi * lam + 0.125j * math.pi)


def v_asym_minus(x: float, lam: complex) -> complex:
    """Two-term x -> -inf form (x < 0):

        -i e^{i pi/8} e^{-3 pi lam/4} (-x)^{i lam - 1/2} e^{i x^2/4}
        + sqrt(2 pi)/Gamma(1/2 - i lam) e^{i pi/8} e^{-pi lam/4}
          (-x)^{-i lam - 1/2} e^{-i x^2/4}
    """
    if x >= 0.0:
        raise DomainError("v_asym_minus: x must be negative")
    lam = complex(lam)
    y = -x
    phase = cmath.exp(0.125j * math.pi)
    t1 = -1j * phase * cmath.exp(-0.75 * math.pi * lam
                                 + (1j * lam - 0.5) * math.log(y) + 0.25j * x * x)
    t2 = (specfun.SQRT_TWO_PI * specfun.rgamma(0.5 - 1j * lam) * phase
          * cmath.exp(-0.25 * math.pi * lam
                      + (-1j * lam - 0.5) * math.log(y) - 0.25j * x * x))
    return t1 + t2


def v_asym_error_band(x: float, lam: complex) -> float:
    """Relative error bound of the leading asymptotic term:
    (1/2) x^{-2} |Gamma(Im lam + 5/2) / Gamma(1/2 - i lam)|."""
    lam = complex(lam)
    if lam.imag <= -2.5:
        raise DomainError("v_asym_error_band: requires Im lam > -5/2")
    num = math.gamma(lam.imag + 2.5)
    return 0.5 * x ** -2 * abs(num * specfun.rgamma(0.5 - 1j * lam))
