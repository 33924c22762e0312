"""Exact symbolic verification of Courant algebroids over polynomial charts.

Everything is computed with exact rational (or Gaussian rational)
arithmetic: differential forms and vector fields with polynomial
coefficients, Courant structures given by frame data, matched pairs and
their sums, regular Courant algebroids, the complex bidegree pair, Dirac
structures and Lie algebroids.
"""

from .polynomial import Chart, Polynomial
from .forms import (DiffForm, VectorField, differential, evaluate, exterior_derivative, interior_product,
                    lie_bracket, lie_derivative, wedge)
from .expr import ExpressionError, ExpressionSyntaxError, UnknownSymbol, parse_polynomial
from .courant import (CourantStructure, NonClosedTwist, Section, StructureError, make_twisted_standard)
from .verify import AXIOMS, CheckResult, SampleSpec, VerificationReport, check_axioms
from .matched import (Connection, DegenerateRestriction, MatchedPairData, NotOrthogonal, SplitResult,
                      check_matched_pair, compare_structures, matched_sum, split, split_by_labels)
from .regular import (AmbiguousNormalization, IncompatibleData, NoConsistentNormalization, NotFlat,
                      QuadraticLieBundle, RegularData, build_regular, check_regular_compat,
                      flat_to_matched_pair, normalization_audit)
from .complexpair import ComplexChart, build_complex_matched_pair, check_sum_isomorphism
from .dirac import (DiracFrame, LieAlgebroid, check_dirac, check_lie_matched_pair, check_matched_dirac,
                    dirac_to_lie, lie_matched_sum, restricted_lie_pair)
from .specfile import (ShapeMismatch, SpecDocument, SpecError, SpecSyntaxError, UnknownName, load_spec,
                       parse_spec)

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "Polynomial",
    "DiffForm",
    "VectorField",
    "differential",
    "evaluate",
    "exterior_derivative",
    "interior_product",
    "lie_bracket",
    "lie_derivative",
    "wedge",
    "ExpressionError",
    "ExpressionSyntaxError",
    "UnknownSymbol",
    "parse_polynomial",
    "CourantStructure",
    "NonClosedTwist",
    "Section",
    "StructureError",
    "make_twisted_standard",
    "AXIOMS",
    "CheckResult",
    "SampleSpec",
    "VerificationReport",
    "check_axioms",
    "Connection",
    "DegenerateRestriction",
    "MatchedPairData",
    "NotOrthogonal",
    "SplitResult",
    "check_matched_pair",
    "compare_structures",
    "matched_sum",
    "split",
    "split_by_labels",
    "AmbiguousNormalization",
    "IncompatibleData",
    "NoConsistentNormalization",
    "NotFlat",
    "QuadraticLieBundle",
    "RegularData",
    "build_regular",
    "check_regular_compat",
    "flat_to_matched_pair",
    "normalization_audit",
    "ComplexChart",
    "build_complex_matched_pair",
    "check_sum_isomorphism",
    "DiracFrame",
    "LieAlgebroid",
    "check_dirac",
    "check_lie_matched_pair",
    "check_matched_dirac",
    "dirac_to_lie",
    "lie_matched_sum",
    "restricted_lie_pair",
    "ShapeMismatch",
    "SpecDocument",
    "SpecError",
    "SpecSyntaxError",
    "UnknownName",
    "load_spec",
    "parse_spec",
]
