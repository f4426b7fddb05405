"""Truncated Riesz kernels, singular-integral operators, and potential-class
functionals (compiled core)."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:
    # Build-tree layout: the compiled module sits on PYTHONPATH next to the
    # build directory instead of inside the package.
    from _core import *  # noqa: F401,F403
