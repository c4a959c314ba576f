"""van der Waals interactions between finite bodies (compiled core)."""

try:
    from _vdwshape import *  # noqa: F401,F403
    from _vdwshape import __version__  # noqa: F401
except ImportError:  # pragma: no cover - installed-package layout
    from ._vdwshape import *  # noqa: F401,F403
    from ._vdwshape import __version__  # noqa: F401
