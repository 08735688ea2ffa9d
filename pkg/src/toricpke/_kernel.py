"""Kernel selection: compiled extension if available, pure Python otherwise.

Set TORICPKE_KERNEL=python to force the fallback (used by the benchmark
and for debugging).
"""

import os

if os.environ.get("TORICPKE_KERNEL", "").lower() == "python":
    from toricpke._pykernel import BACKEND, mul_terms
else:
    try:
        from toricpke._ckernel import BACKEND, mul_terms
    except ImportError:
        from toricpke._pykernel import BACKEND, mul_terms

__all__ = ["BACKEND", "mul_terms"]
