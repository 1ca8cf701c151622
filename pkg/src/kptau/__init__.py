"""KP tau functions on algebraic curves: Schur expansions, Plücker coordinates
and the abelian-function identities they encode."""

import os as _os

# KPTAU_THREADS caps the BLAS thread pools; it must be set before numpy loads
if "KPTAU_THREADS" in _os.environ:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["KPTAU_THREADS"])

__version__ = "0.1.0"
