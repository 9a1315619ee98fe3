"""Select the arithmetic kernels at import time.

The compiled module is preferred.  Setting ``CONE_GREEN_PURE_PYTHON=1`` in the
environment forces the pure-Python twin, which is also used whenever the
extension has not been built.
"""

import os

if os.environ.get("CONE_GREEN_PURE_PYTHON") == "1":
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
GaussianRational = kernels.GaussianRational
ZERO = kernels.ZERO
ONE = kernels.ONE

poly_trim = kernels.poly_trim
poly_add = kernels.poly_add
poly_mul = kernels.poly_mul
poly_eval = kernels.poly_eval
poly_taylor_shift = kernels.poly_taylor_shift
poly_divmod = kernels.poly_divmod
poly_monic = kernels.poly_monic
poly_gcd = kernels.poly_gcd
rref = kernels.rref
