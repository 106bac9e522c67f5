"""Finite MS-algebras, fuzzy filters, and their extension operators,
with an executable registry of the algebraic laws they satisfy."""

from .errors import (
    CarrierMismatch,
    DuplicateElement,
    EmptyGeneratingSet,
    EmptyW,
    GradeOutOfRange,
    HypothesisUnmet,
    InternalInvariantError,
    MissingGradeStructure,
    MsfuzzError,
    NotALattice,
    NotAPoset,
    NotBounded,
    NotDistributive,
    NotProper,
    SizeCapExceeded,
    UnknownElement,
    UnknownProperty,
)
from .extensions import (
    CanonicalFixedSet,
    DenseElements,
    ExtensionResult,
    dense_elements,
    extend,
    fixed_witness_sets,
    is_fixed_relative,
    omega,
    omega_dense_equivalence,
    upsilon,
    upsilon_via_dense,
)
from .file_format import (
    AlgebraDocument,
    AlgebraSyntaxError,
    DanglingReference,
    document_from_objects,
    document_to_objects,
    parse_algebra,
    serialize_algebra,
)
from .fixtures import FIXTURE_NAMES, fixture_text, load_fixture
from .fuzzy_core import (
    FuzzyClassification,
    FuzzySet,
    classify,
    enumerate_fuzzy_filters,
    fuzzy_filter_report,
    fuzzy_intersection,
    fuzzy_union,
    is_prime_fuzzy_filter_bounded,
    level_cut,
)
from .grades import Grade, format_grade, parse_grade
from .hom_analysis import (
    GradeStructure,
    HomReport,
    cokernel,
    cokernel_characterization,
    grade_ms_hom_check,
    hom_report,
    inverse_class,
    kernel,
    kernel_characterization,
)
from .lattice_core import (
    FilterSet,
    FiniteLattice,
    SubsetVerdict,
    build_lattice,
    enumerate_filters,
    generated_filter,
    is_filter,
    is_prime_filter,
    principal_filter,
)
from .ms_algebra import (
    MSAlgebra,
    check_ms_axioms,
    double_neg,
    enumerate_ms_operations,
    extended_filter_crisp,
    verify_derived_identities,
)
from .report import Check, VerificationReport
from .verifier import (
    Instance,
    PropertyOutcome,
    SearchConfig,
    SweepReport,
    THEOREM_SUITE,
    Witness,
    lattice_catalog,
    properties,
    run_property,
    search_counterexample,
    sweep,
)

__version__ = "0.1.0"
