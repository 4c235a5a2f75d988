"""Multipole dispersion models for magneto-dielectric media.

Natural units (eps0 = mu0 = c = 1) throughout. The compiled core exposes the
model type, response evaluators, dispersion-integral transforms, pole and
causal-kernel analysis, passivity scans and the high-frequency sum rule.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
