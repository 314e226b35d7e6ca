"""superserre: Serre-type presentations of the simple contragredient Lie
superalgebras, with exact machine verification against the root systems."""

from .scalars import ALPHA, ONE, Scalar, ZERO, parse_scalar
from .rootdata import (
    SimpleSystem,
    WeightVector,
    bilinear,
    build_root_datum,
    distinguished_simple_system,
    enumerate_simple_systems,
    odd_reflection,
    positive_roots,
)
from .cartan_dynkin import build_diagram, cartan_matrix, full_subdiagrams, parse_diagram, serialize_diagram
from .freelie import bracket, free_dimension, lower_terms, normalize
from .serre import Presentation, SerrePolynomial, higher_order_serre_elements, presentation, standard_serre_elements
from .quotient import (
    GradedQuotientReport,
    check_lowering_stability,
    ideal_component,
    quotient_dimensions,
    total_dimension,
    z_grading_report,
)
from .verify import (
    compare_z_grading,
    necessity_survey,
    necessity_test,
    verify_all_borels,
    verify_presentation,
)

__all__ = [
    "ALPHA",
    "ONE",
    "ZERO",
    "Scalar",
    "parse_scalar",
    "WeightVector",
    "SimpleSystem",
    "bilinear",
    "build_root_datum",
    "distinguished_simple_system",
    "enumerate_simple_systems",
    "odd_reflection",
    "positive_roots",
    "cartan_matrix",
    "build_diagram",
    "full_subdiagrams",
    "serialize_diagram",
    "parse_diagram",
    "normalize",
    "bracket",
    "free_dimension",
    "lower_terms",
    "SerrePolynomial",
    "Presentation",
    "standard_serre_elements",
    "higher_order_serre_elements",
    "presentation",
    "GradedQuotientReport",
    "ideal_component",
    "quotient_dimensions",
    "total_dimension",
    "z_grading_report",
    "check_lowering_stability",
    "verify_presentation",
    "verify_all_borels",
    "necessity_test",
    "necessity_survey",
    "compare_z_grading",
]

__version__ = "0.1.0"
