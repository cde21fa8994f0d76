"""Statistics of first-order theories over sampled relational structures."""

from .bounds import (
    BoundDomainError,
    classical_vc_expected,
    classical_vc_tail,
    expected_error_bound,
    hoeffding_block_bound,
    mgf_bound,
    tail_bound,
    tail_bound_simplified,
)
from .errors import CapExceededError
from .estimators import (
    BlockEstimate,
    QValue,
    block_estimate,
    exact_q,
    expectation_identity_check,
    mc_q,
    satisfaction_fraction,
    sup_deviation,
)
from .generators import (
    GeneratorSpec,
    broadcaster,
    erdos_renyi_directed,
    smokers_fixture,
    two_smokers_fixture,
)
from .hypotheses import (
    BUILTIN_STATISTICS,
    ExplicitClass,
    Hypothesis,
    HypothesisClass,
    ShatterSearchResult,
    Signature,
    ThresholdClass,
    atom_count_statistic,
    constant_hypothesis,
    from_theory,
    predicate_count_statistic,
    reduce_by_equivalence,
    threshold_class,
    vc_dimension,
)
from .logic import (
    Atom,
    Exists,
    ForAll,
    Formula,
    FormulaError,
    FormulaSyntaxError,
    GroundAtom,
    Implies,
    Not,
    OmegaUniverse,
    Or,
    And,
    RelationalExample,
    ShadowedVariableError,
    UnboundVariableError,
    UnknownPredicateError,
    Vocabulary,
    atom,
    enumerate_omega,
    evaluate,
    evaluate_theory,
    format_example,
    format_formula,
    fragment,
    infer_vocabulary,
    iter_fragments,
    iter_size_k_subsets,
    load_example,
    parse_example_text,
    parse_formula,
    save_example,
)
from .sampling import (
    BlockVector,
    SeededRng,
    enumerate_conditional_block_distribution,
    enumerate_process_distribution,
    sample_block_vectors,
    sample_domain_subset,
    sample_iid_vector,
    total_variation,
)
from .experiments import (
    DEFAULT_EPSILON_GRID,
    FINE_EPSILON_GRID,
    RunReport,
    run_bound_eval,
    run_distribution_equality,
    run_expectation_identity,
    run_expected_verify,
    run_hoeffding_blocks,
    run_q_exact,
    run_q_mc,
    run_sample_blocks,
    run_tail_verify,
    run_variance_contrast,
    run_vc,
)

__version__ = "0.1.0"
