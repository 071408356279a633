"""Ontology engine for false-information and fact-checking ecosystems."""

try:
    from ._fisheco import *  # noqa: F401,F403  (installed wheel layout)
    from . import _fisheco as _impl
except ImportError:  # in-tree build, extension on PYTHONPATH
    from _fisheco import *  # noqa: F401,F403
    import _fisheco as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
