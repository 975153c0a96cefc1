"""Backend selection for the finite-field brute-force kernel.

The compiled extension is used when it was built; ``ADEQUATE_PURE_PYTHON=1``
forces the pure-Python fallback.
"""

import os

from . import _bruteforce_py

BACKEND = "python"
find_counterexample = _bruteforce_py.find_counterexample

if os.environ.get("ADEQUATE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._bruteforce import find_counterexample  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

find_counterexample_py = _bruteforce_py.find_counterexample
