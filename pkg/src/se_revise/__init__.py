"""Belief revision of logic programs on their SE models."""

from .syntax import (
    DLP,
    GLP,
    MAX_ATOMS,
    NLP,
    Alphabet,
    AlphabetError,
    ParseError,
    Program,
    Rule,
    classify,
    parse_formula,
    parse_program,
    render_program,
    render_rule,
)
from .semantics import (
    ModelSet,
    SESet,
    answer_sets,
    answer_sets_via_se,
    classical_models,
    closure,
    here_projection,
    modelset_from_json,
    modelset_to_json,
    reduct,
    satisfies,
    se_models,
    se_set_properties,
    se_subset,
    seset_from_json,
    seset_to_json,
    strong_equiv,
    synthesize,
)
from .propositional import (
    FaithfulnessError,
    PropOperator,
    TotalPreorder,
    dalal_operator,
    distance_operator,
    drastic_operator,
    faithful_operator,
    hamming,
    hamming_preorder,
    mc_prop,
    rank_table_operator,
    to_dnf,
    two_level_preorder,
    validate_faithful,
)
from .revision import (
    OPERATOR_SPECS,
    AssignmentError,
    FunctionAssignment,
    LPOperator,
    PartedAssignment,
    SelectionFunction,
    TableAssignment,
    assignment_from_json,
    assignment_to_json,
    brave_selection,
    cardinality_operator,
    class_revise,
    dominant_class,
    drastic_lp_operator,
    expand,
    lattice_leq,
    mc_se,
    operator_from_spec,
    parted_operator,
    prop_based_operator,
    skeptical_selection,
    validate_assignment,
    validate_class_assignment,
)
from .verify import (
    CompliantPreorder,
    ExtractionError,
    PostulateReport,
    brave_violation_witness,
    check_km,
    check_ra,
    compliant_from_parted,
    compliant_revise_sets,
    compliant_variants,
    distinguishing_pair,
    enumerate_well_defined,
    extract_assignment,
    lattice_violation_witness,
    operator_difference_witness,
    sample_programs,
    sample_well_defined,
    skeptical_violation_witness,
    validate_compliant,
)

__version__ = "0.1.0"
