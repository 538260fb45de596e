"""Hot kernel selection.

The compiled ``_snf`` extension is used when it was built; otherwise the
pure-Python reference implementation is loaded.  Set ``COSUPPORT_PURE=1``
to force the fallback.
"""

import os

from ._snf_py import snf_mod as snf_mod_py, unit_for, xgcd

BACKEND = "python"
snf_mod = snf_mod_py

if not os.environ.get("COSUPPORT_PURE"):
    try:
        from ._snf import snf_mod as snf_mod_c
    except ImportError:  # extension not built
        snf_mod_c = None
    else:
        snf_mod = snf_mod_c
        BACKEND = "cython"
else:
    snf_mod_c = None

__all__ = ["BACKEND", "snf_mod", "snf_mod_py", "snf_mod_c", "unit_for", "xgcd"]
