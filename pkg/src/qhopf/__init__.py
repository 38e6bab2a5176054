"""Exact-arithmetic workbench for q-deformed Hopf algebras.

Builds quantized enveloping (super)algebras as rewrite systems over
truncated hbar-power series, derives their Hopf structure, constructs
universal R-matrices and classical r-matrices, and checks every identity
order by order with exact rational coefficients.
"""

__version__ = "0.1.0"

from .scalars import ExactScalar, HbarSeries, parse_rational
from .algebra import GradedAlgebra, AlgebraElement, TensorElement, MissingRule
from .hopf import HopfAlgebraDef, check_hopf_morphism
from .algebras import build_uq_sl2, build_sl2_pair, build_k_xi, build_rot_momentum
from .superalg import build_uq_d21e, build_max_ext_sl22, DegenerateParameter
from .contraction import ContractionMap, falloff_ratio
from .rmatrix import (
    RMatrixSeries,
    rmat_uq_sl2,
    rmat_k_xi,
    rmat_rot,
    rmat_d21e,
    rmat_max_ext,
    check_momentum_conjugation,
)
from .scattering import (
    Momentum3,
    ScatterConfig,
    scatter,
    conservation_report,
    SingularKinematics,
    BranchAmbiguity,
)

__all__ = [
    "ExactScalar", "HbarSeries", "parse_rational",
    "GradedAlgebra", "AlgebraElement", "TensorElement", "MissingRule",
    "HopfAlgebraDef", "check_hopf_morphism",
    "build_uq_sl2", "build_sl2_pair", "build_k_xi", "build_rot_momentum",
    "build_uq_d21e", "build_max_ext_sl22", "DegenerateParameter",
    "ContractionMap", "falloff_ratio",
    "RMatrixSeries", "rmat_uq_sl2", "rmat_k_xi", "rmat_rot",
    "rmat_d21e", "rmat_max_ext", "check_momentum_conjugation",
    "Momentum3", "ScatterConfig", "scatter", "conservation_report",
    "SingularKinematics", "BranchAmbiguity",
]
