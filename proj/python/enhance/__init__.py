"""Image enhancement toolkit: tone mapping, frequency-domain and spatial filtering."""

from ._enhance import *  # noqa: F401,F403
from ._enhance import EnhanceError, Spectrum, __doc__  # noqa: F401
