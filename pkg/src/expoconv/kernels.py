"""Backend selection for the numerical kernels.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``EXPOCONV_PURE_PYTHON`` is set to a non-empty value
other than ``0``) the pure-Python module is used. ``BACKEND`` names the
active one.
"""
import os

from . import _pykernels

_force_py = os.environ.get("EXPOCONV_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

confluent_matrix = _impl.confluent_matrix
gauss_solve = _impl.gauss_solve
aberth = _impl.aberth
weierstrass_radii = _impl.weierstrass_radii
initial_circle = _impl.initial_circle


def available_backends():
    """Return ``{name: module}`` for every backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
