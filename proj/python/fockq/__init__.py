"""Positive-energy Fock quantization of finite-dimensional linear dynamics.

The heavy lifting lives in the compiled extension ``_fockq``; this package
re-exports its public surface.
"""

try:  # installed wheel layout: extension inside the package
    from ._fockq import *  # noqa: F401,F403
    from ._fockq import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on sys.path
    from _fockq import *  # noqa: F401,F403
    from _fockq import __version__  # noqa: F401

__all__ = [
    "Model",
    "System",
    "FockError",
    "quantize",
    "harmonic_chain",
    "fermion_chain",
    "majorana_chain",
    "random_system",
    "harmonic_dispersion",
    "majorana_dispersion",
    "subset_sums",
    "run_checks",
    "check_names",
    "default_tol",
]
