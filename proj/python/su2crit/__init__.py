"""Critical values of Gaussian SU(2) random polynomials."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
