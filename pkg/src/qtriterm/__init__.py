"""Three-term relation coefficients for basic hypergeometric 2phi1 series,
their order-96 symmetry group, and numerical certification of the symmetries."""

from .coefficients import (
    CoeffResult,
    ShiftVector,
    Q_coeff,
    R_coeff,
    Y,
    Y_unit_closed,
    evaluate_qr,
    lambda_factor,
    relation_residual,
    y1,
    y2,
)
from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    QTriTermError,
    SearchExhausted,
    SizeError,
)
from .kernels import BACKEND
from .numeric import BasePoint, SeriesControl
from .qseries import phi21, phi21_continued, qpoch_finite, qpoch_infinite
from .symmetry import Transform, check_relations, compose, enumerate_group, generator
from .verifier import find_admissible, verify_all, verify_base, verify_chain

__version__ = "0.1.0"
