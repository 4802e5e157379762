"""Environment-induced symmetrization of two identical particles.

Thin wrapper around the compiled ``_symflow`` extension: exchange-operator
algebra, semigroup decoherence channels, bath decoherence exponents,
constrained operator-sum symmetrization maps, collision probabilities and the
two-positivity witness certificate.
"""

try:  # installed wheel layout: the extension lives inside the package
    from ._symflow import *  # noqa: F401,F403
    from . import _symflow as _impl
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _symflow import *  # noqa: F401,F403
    import _symflow as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
