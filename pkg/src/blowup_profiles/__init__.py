"""Outgoing self-similar blow-up profiles for the 1D focusing point-nonlinearity NLS.

Layers, bottom up:

    specfun      complex log-gamma / gamma / digamma machinery
    weber        parabolic cylinder functions D_nu and the oscillator pair v, v*
    matching     the ratio A(lambda) and its branch-tracked phase f
    solver       sigma(h) roots, h(p) inversion, sweeps
    profile      sampled profiles, Pohozhaev / energy verification, psi(x,t)
    asymptotics  small-h contour integrals, stationary phase, WKB forms
    cli          the blowup-profiles command
"""

from .errors import (BlowupProfilesError, BracketError, ConvergenceError,
                     DomainError, GridError, MatchError, PoleError,
                     ToleranceError)
from .weber import QuadratureConfig, SpectralParams
from .solver import RootResult, SweepRow
from .profile import BlowupCurve, ProfileSample, ProfileSolution

__all__ = [
    "BlowupProfilesError", "BracketError", "ConvergenceError", "DomainError",
    "GridError", "MatchError", "PoleError", "ToleranceError",
    "QuadratureConfig", "SpectralParams", "RootResult", "SweepRow",
    "BlowupCurve", "ProfileSample", "ProfileSolution",
]

__version__ = "0.1.0"
