"""Loss and efficiency-boundary model for AC, DC and hybrid corridor refurbishment."""

from ._gridlink import *  # noqa: F401,F403
from ._gridlink import GridlinkError, __version__  # noqa: F401
