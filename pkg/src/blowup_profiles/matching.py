"""The matching ratio A(lambda) and its branch-tracked phase.

An outgoing profile exists exactly when

    A(lambda) = -v'(0, lambda) / v(0, lambda)
              = e^{-i pi/4} sqrt(2) Gamma(3/4 - i lambda/2) / Gamma(1/4 - i lambda/2)

is real and positive, with lambda = -kappa/h - i sigma.  Two evaluations are
provided:

    a_gamma   the gamma-ratio form, assembled in log space (safe against
              gamma overflow/underflow for any h)
    a_stable  the kappa-split form whose exponentially small factors
              e^{-pi/(2h)}, (1 +- i e^{-/+ i sigma pi} e^{-pi/h}) are explicit,
              which is the representation that keeps the *phase* accurate
              as h -> 0

The phase f(sigma, 1/h) = Im log A is what the root solver drives to zero;
f is computed term by term from continuous-branch Im log Gamma values so it
never wraps, and the list of individual log terms is kept for diagnostics.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import specfun
from .errors import DomainError, PoleError

_HALF_LN2 = 0.5 * math.log(2.0)
_LN_2PI = math.log(2.0 * math.pi)

# imaginary nudge used to take the h_inv -> 0 limit of Im log Gamma from the
# correct side when an argument lands on the cut
_LIMIT_EPS = 1e-300


@dataclass(frozen=True)
class PhaseValue:
    """Phase f = Im log A with its branch bookkeeping.

    f             total phase in radians
    branch_terms  imaginary part of each log term, in formula order
    constant      the constant term of the representation used
    representation  "gamma" or "stable"

    Invariant: f == constant + sum(branch_terms) to rounding.
    """
    f: float
    branch_terms: list[float] = field(default_factory=list)
    constant: float = 0.0
    representation: str = "gamma"

    def recombined(self) -> float:
        return self.constant + math.fsum(self.branch_terms)


def _lam(sigma: float, h: float, kappa: float) -> complex:
    return complex(-kappa / h, -sigma)


def _im_log_gamma(re: float, im: float, limit_sign: float) -> float:
    """Im log Gamma with the h_inv = 0 boundary taken as a one-sided limit."""
    if im == 0.0:
        im = limit_sign * _LIMIT_EPS
    return specfun._log_gamma_shifted(complex(re, im)).imag


def a_gamma(sigma: float, h: float, kappa: float) -> complex:
    """A(lambda) from the gamma-ratio representation (log-space assembly)."""
    if h <= 0.0:
        raise DomainError("a_gamma: h must be positive")
    if kappa not in (-1.0, 1.0):
        raise DomainError("a_gamma: kappa must be +1 or -1")
    y = 0.5 * kappa / h
    za = complex(0.75 - 0.5 * sigma, y)
    zb = complex(0.25 - 0.5 * sigma, y)
    for z in (za, zb):
        if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
            raise PoleError(f"a_gamma: gamma argument {z!r} at a pole")
    log_a = (_HALF_LN2 - 0.25j * math.pi
             + specfun._log_gamma_shifted(za) - specfun._log_gamma_shifted(zb))
    return cmath.exp(log_a)


def a_stable(sigma: float, h: float, kappa: float) -> complex:
    """A(lambda) from the kappa-split representation.

    All pieces are assembled in log space; the |Gamma|^{-2} factor enters as
    -2 Re log Gamma so nothing overflows as h -> 0 where |A| ~ h^{-1/2}.
    """
    if h <= 0.0:
        raise DomainError("a_stable: h must be positive")
    if not 0.0 < sigma < 1.0:
        raise DomainError("a_stable: requires 0 < sigma < 1")
    if kappa not in (-1.0, 1.0):
        raise DomainError("a_stable: kappa must be +1 or -1")
    h_inv = 1.0 / h
    y = 0.5 * kappa * h_inv
    zc = complex(0.25 - 0.5 * sigma, y)
    log_a = _HALF_LN2 - 2.0 * specfun._log_gamma_shifted(zc).real - 0.5 * math.pi * h_inv
    damp = math.exp(-math.pi * h_inv)
    if kappa > 0:
        branch = 1.0 + 1j * cmath.exp(-1j * sigma * math.pi) * damp
        log_a += (_LN_2PI - 0.5j * sigma * math.pi - cmath.log(branch)
                  + specfun._log_gamma_shifted(complex(0.25 - 0.5 * sigma, -0.5 * h_inv))
                  - specfun._log_gamma_shifted(complex(0.25 + 0.5 * sigma, -0.5 * h_inv)))
    else:
        branch = 1.0 - 1j * cmath.exp(1j * sigma * math.pi) * damp
        log_a += (_LN_2PI - 0.5j * math.pi + 0.5j * sigma * math.pi - cmath.log(branch)
                  + specfun._log_gamma_shifted(complex(0.25 - 0.5 * sigma, 0.5 * h_inv))
                  - specfun._log_gamma_shifted(complex(0.25 + 0.5 * sigma, 0.5 * h_inv)))
    return cmath.exp(log_a)


# switch from the gamma form to the stable form beyond this h_inv
_REPRESENTATION_SWITCH = 4.0


def f_phase(sigma: float, h_inv: float, kappa: float) -> PhaseValue:
    """f(sigma, h_inv) = Im log A(lambda), branch-tracked.

    Uses the gamma form for h_inv <= 4 and the stable form beyond, where the
    gamma magnitudes decay like e^{-pi h_inv/2} and the phase of the raw
    ratio turns to noise.  Endpoints sigma in {0, 1} are evaluated by the
    same formulas; h_inv = 0 with sigma >= 1/2 is the one-sided limit.
    """
    if kappa not in (-1.0, 1.0):
        raise DomainError("f_phase: kappa must be +1 or -1")
    if h_inv < 0.0:
        raise DomainError("f_phase: h_inv must be nonnegative")
    if not 0.0 <= sigma <= 1.0:
        raise DomainError("f_phase: sigma must lie in [0, 1]")
    if h_inv <= _REPRESENTATION_SWITCH:
        return _f_gamma_form(sigma, h_inv, kappa)
    return _f_stable_form(sigma, h_inv, kappa)


def _f_gamma_form(sigma: float, h_inv: float, kappa: float) -> PhaseValue:
    y = 0.5 * kappa * h_inv
    t1 = _im_log_gamma(0.75 - 0.5 * sigma, y, kappa)
    t2 = -_im_log_gamma(0.25 - 0.5 * sigma, y, kappa)
    const = -0.25 * math.pi
    # fsum: the large gamma terms cancel and must not absorb the small ones
    return PhaseValue(f=math.fsum([const, t1, t2]), branch_terms=[t1, t2],
                      constant=const, representation="gamma")


def _f_stable_form(sigma: float, h_inv: float, kappa: float) -> PhaseValue:
    damp = math.exp(-math.pi * h_inv)
    if kappa > 0:
        branch = 1.0 + 1j * cmath.exp(-1j * sigma * math.pi) * damp
        t1 = -cmath.log(branch).imag
        t2 = _im_log_gamma(0.25 - 0.5 * sigma, -0.5 * h_inv, -1.0)
        t3 = -_im_log_gamma(0.25 + 0.5 * sigma, -0.5 * h_inv, -1.0)
        const = -0.5 * sigma * math.pi
    else:
        branch = 1.0 - 1j * cmath.exp(1j * sigma * math.pi) * damp
        t1 = -cmath.log(branch).imag
        t2 = _im_log_gamma(0.25 - 0.5 * sigma, 0.5 * h_inv, 1.0)
        t3 = -_im_log_gamma(0.25 + 0.5 * sigma, 0.5 * h_inv, 1.0)
        const = -0.5 * math.pi + 0.5 * sigma * math.pi
    return PhaseValue(f=math.fsum([const, t1, t2, t3]),
                      branch_terms=[t1, t2, t3],
                      constant=const, representation="stable")


def f_phase_gamma_form(sigma: float, h_inv: float, kappa: float) -> PhaseValue:
    """Gamma-form phase regardless of h_inv (for representation cross-checks)."""
    return _f_gamma_form(sigma, h_inv, kappa)


def f_phase_stable_form(sigma: float, h_inv: float, kappa: float) -> PhaseValue:
    """Stable-form phase regardless of h_inv (for representation cross-checks)."""
    return _f_stable_form(sigma, h_inv, kappa)


def f_phase_dsigma(sigma: float, h_inv: float, kappa: float) -> float:
    """d f / d sigma = (1/2) Im(psi(z) - psi(z + 1/2)), z = 1/4 - sigma/2 + i kappa h_inv/2.

    Strictly positive for kappa=+1 and strictly negative for kappa=-1 on
    0 < sigma < 1, 0 < h_inv < inf; this is what makes the root unique.
    """
    if kappa not in (-1.0, 1.0):
        raise DomainError("f_phase_dsigma: kappa must be +1 or -1")
    z = complex(0.25 - 0.5 * sigma, 0.5 * kappa * h_inv)
    return 0.5 * specfun.digamma_half_gap(z).imag
