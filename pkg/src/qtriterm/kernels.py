"""Double-precision kernel selection.

The compiled ``_ckernels`` module is used when it was built; otherwise the
pure-Python ``_pykernels`` twin is loaded.  ``BACKEND`` names the choice.
"""

try:
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _pykernels as _impl

    BACKEND = "python"

OK, POLE, NOCONV = 0, 1, 2

qpoch_inf = _impl.qpoch_inf
qpoch_fin = _impl.qpoch_fin
phi21 = _impl.phi21
c_pole_index = _impl.c_pole_index
