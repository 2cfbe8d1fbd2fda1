"""Variational circuit training with network-generated parameters.

Thin re-export of the compiled extension; everything documented lives in
``neqc._core``.
"""

from neqc._core import *  # noqa: F401,F403
from neqc._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = (__doc__ or "") + "\n\n" + (_core_doc or "")
