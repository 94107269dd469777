"""Sequential three-way group decision-making for double hierarchy
hesitant fuzzy linguistic evaluations."""

from .linguistic import (
    DHHFLE,
    DHLT,
    DHLTScale,
    HFEValue,
    LengthMismatchError,
    ScaleRangeError,
    add,
    complement,
    euclid_distance,
    f_inverse,
    f_scalar,
    from_hfe,
    linguistic_expected_value,
    mirror,
    power,
    scalar_mul,
    single,
    superior_gradus,
    superior_gradus_term,
    to_hfe,
)
from .syntax import TermSyntaxError, format_dhhfle, parse_dhhfle
from .tables import (
    AttributeSpec,
    ExpertDecisionTable,
    FusedDecisionTable,
    NestedSubsets,
    build_nested_subsets,
    extract,
    fuse_dhhflmwa,
    fuse_dhhflmwa_operational,
    make_table,
    orient_to_concept,
    renormalize_weights,
)
from .neighborhood import (
    ConceptMembership,
    NeighborhoodGranule,
    SimilarityMatrix,
    build_similarity_matrix,
    concept_membership,
    conditional_probability,
    cut_granules,
    kernel_similarity,
    membership_gamma,
)
from .regret import (
    ComprehensiveUtility,
    GainUnit,
    PerceivedUtilityUnit,
    SimplifiedGainUnit,
    build_gain_unit,
    comprehensive_utility,
    direct_simplified_gains,
    perceived_utility_units,
    regret_rejoice,
    simplify_gain_unit,
    utility,
)
from .engine import (
    DecisionReport,
    EngineParams,
    GranularLevel,
    LevelConfig,
    baseline_full_fusion,
    classify,
    expected_perceived_utility,
    rank,
    run_level,
    run_sequential,
)
from .caseio import CaseFile, CaseFormatError, ParamsFile, load_case, load_params

__all__ = [name for name in dir() if not name.startswith("_")]
