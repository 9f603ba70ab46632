"""taucover: exact verification of tau-connections on mu_n-covers of
affine curve charts in characteristic p."""

from .catalog import Fixture, fixture_names, load_all, load_fixture
from .connections import (
    ClassicalConnection,
    TauConnection,
    cech_class,
    classical_connection,
    coboundary_class,
    coprime_degeneration_check,
    is_trivial_class,
)
from .covers import (
    ChartedScheme,
    Cover,
    CoverChart,
    CoverElem,
    TorsionBundle,
    factor_cover,
    is_etale,
    split_order,
)
from .errors import (
    DegreeOverflow,
    DivisionByZero,
    FieldMismatch,
    GluingFailure,
    IllDefinedMap,
    InvalidCocycle,
    MalformedInput,
    NotAUnit,
    NotCoprime,
    NotIrreducible,
    RingMismatch,
    StabilityFailure,
    TauCoverError,
)
from .fields import FqField
from .forms import (
    ChartForm,
    CoverOneForm,
    CoverTwoForm,
    OmegaL,
    cartier,
    chart_d,
    chart_dlog,
    d_function,
    d_one_form,
    dv_over_v,
)
from .partialforms import (
    PartialFormsChart,
    atiyah_cocycle_check,
    basis_independence_check,
    dga_check,
    rank_torsion_report,
    verify_sequence,
)
from .pidmod import (
    FpmModule,
    ModuleMap,
    PolyMatrix,
    Submodule,
    is_exact,
    smith_normal_form,
    solve,
    syzygy_matrix,
)
from .polys import Poly
from .rings import ChartRing, RingElem, UnitLog

__all__ = [
    "ChartForm",
    "ChartRing",
    "ChartedScheme",
    "ClassicalConnection",
    "Cover",
    "CoverChart",
    "CoverElem",
    "CoverOneForm",
    "CoverTwoForm",
    "DegreeOverflow",
    "DivisionByZero",
    "FieldMismatch",
    "Fixture",
    "FpmModule",
    "FqField",
    "GluingFailure",
    "IllDefinedMap",
    "InvalidCocycle",
    "MalformedInput",
    "ModuleMap",
    "NotAUnit",
    "NotCoprime",
    "NotIrreducible",
    "OmegaL",
    "PartialFormsChart",
    "Poly",
    "PolyMatrix",
    "RingElem",
    "RingMismatch",
    "StabilityFailure",
    "Submodule",
    "TauConnection",
    "TauCoverError",
    "TorsionBundle",
    "UnitLog",
    "atiyah_cocycle_check",
    "basis_independence_check",
    "cartier",
    "cech_class",
    "chart_d",
    "chart_dlog",
    "classical_connection",
    "coboundary_class",
    "coprime_degeneration_check",
    "d_function",
    "d_one_form",
    "dga_check",
    "dv_over_v",
    "factor_cover",
    "fixture_names",
    "is_etale",
    "is_exact",
    "load_all",
    "load_fixture",
    "rank_torsion_report",
    "smith_normal_form",
    "solve",
    "split_order",
    "syzygy_matrix",
    "verify_sequence",
]

__version__ = "0.1.0"
