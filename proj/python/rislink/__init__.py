"""Link-level simulator for binary-pixel reconfigurable surfaces.

Thin Python wrapper over the C++ core: cavity channel model, QPSK/EVM link,
greedy pixel-flip optimization and the bundled experiments.
"""

from ._rislink import *  # noqa: F401,F403
from ._rislink import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
