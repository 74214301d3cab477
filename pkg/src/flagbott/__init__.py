"""Cohomology presentations of flag Bott towers of general Lie type, with Weyl-group cross-checks."""

from .errors import (
    BudgetExceeded,
    FlagBottError,
    InadmissibleCoefficients,
    SpecError,
    UnsupportedCentralizer,
)
from .groebner import MonomialOrder, buchberger, hilbert_series, ideal_equal, normal_form
from .oracle import cross_check, euler_characteristic, fiber_poincare, tower_poincare
from .polykernel import GF, QQ, ZZ, CoefficientRing, Polynomial, Variable
from .rootdata import G2, SU, CentralizerSpec, GroupSpec, Sp, U
from .series import GradedSeries
from .specfile import parse_tower
from .tower import (
    Presentation,
    Stage,
    TowerSpec,
    derive_elimination,
    effective_presentation,
    equivariant_presentation,
    flag_bundle_step,
    ordinary_presentation,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "FlagBottError",
    "InadmissibleCoefficients",
    "SpecError",
    "UnsupportedCentralizer",
    "MonomialOrder",
    "buchberger",
    "hilbert_series",
    "ideal_equal",
    "normal_form",
    "cross_check",
    "euler_characteristic",
    "fiber_poincare",
    "tower_poincare",
    "GF",
    "QQ",
    "ZZ",
    "CoefficientRing",
    "Polynomial",
    "Variable",
    "G2",
    "SU",
    "CentralizerSpec",
    "GroupSpec",
    "Sp",
    "U",
    "GradedSeries",
    "parse_tower",
    "Presentation",
    "Stage",
    "TowerSpec",
    "derive_elimination",
    "effective_presentation",
    "equivariant_presentation",
    "flag_bundle_step",
    "ordinary_presentation",
]
