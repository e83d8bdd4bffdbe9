"""Kernel selection: compiled extension if present, pure Python otherwise.

Set KNOTDEFORM_PURE=1 to force the pure backend even when the compiled one
is installed (used by the benchmark and the cross-backend tests).
"""

import os

if os.environ.get("KNOTDEFORM_PURE"):
    from knotdeform._pykernels import (  # noqa: F401
        BACKEND,
        eval_poly3,
        mat2_mul,
        poly_mul_2,
        poly_mul_3,
    )
else:
    try:
        from knotdeform._ckernels import (  # noqa: F401
            BACKEND,
            eval_poly3,
            mat2_mul,
            poly_mul_2,
            poly_mul_3,
        )
    except ImportError:
        from knotdeform._pykernels import (  # noqa: F401
            BACKEND,
            eval_poly3,
            mat2_mul,
            poly_mul_2,
            poly_mul_3,
        )
