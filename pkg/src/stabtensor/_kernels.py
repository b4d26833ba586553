"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python kernels when
the extension is missing or STABTENSOR_PURE_PYTHON is set.  Both backends
produce bit-identical results; only speed differs.
"""

import os

if os.environ.get("STABTENSOR_PURE_PYTHON"):
    from stabtensor import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from stabtensor import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from stabtensor import _pykernels as _impl  # type: ignore[no-redef]

        BACKEND = "python"

contract_flat = _impl.contract_flat
permute_flat = _impl.permute_flat
