"""Half-space Stokes boundary-layer kernels and near-boundary gradient scans."""

from _stokeshs import *  # noqa: F401,F403

try:
    from _stokeshs import __doc__ as _doc  # noqa: F401
except ImportError:  # pragma: no cover
    pass
