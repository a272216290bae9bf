"""Third-order Filon time stepper for linear evolution equations with highly
oscillatory potentials.

The heavy lifting lives in the compiled extension ``_nf3``; this package
re-exports its functions: benchmark drivers (``benchmark_error``,
``solve_benchmark``, ``benchmark_exact``, ``benchmark_grid``), the scalar
closed-form oracle (``scalar_error``, ``scalar_one_step_error``), and the
closed-form oscillatory moments (``closed_moment``, ``quadrature_moment``,
``resonant_pair_moment``).
"""

try:
    # Installed layout: the extension sits inside the package.
    from ._nf3 import *  # noqa: F401,F403
    from ._nf3 import __version__  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits next to the package on sys.path.
    from _nf3 import *  # noqa: F401,F403
    from _nf3 import __version__  # noqa: F401

__all__ = [
    "benchmark_error",
    "solve_benchmark",
    "benchmark_exact",
    "benchmark_grid",
    "scalar_error",
    "scalar_one_step_error",
    "closed_moment",
    "quadrature_moment",
    "resonant_pair_moment",
    "__version__",
]
