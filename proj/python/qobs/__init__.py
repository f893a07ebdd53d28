"""Direct-coupled coherent quantum observer toolkit.

Thin re-export of the compiled core: system builders, invariant checks,
tracking-coefficient evaluations, envelope and design search.
"""

from qobs._core import *  # noqa: F401,F403
from qobs._core import __version__  # noqa: F401
