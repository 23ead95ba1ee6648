"""Jordan-Wigner observables over fermionic modes and noncontextuality tools."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
