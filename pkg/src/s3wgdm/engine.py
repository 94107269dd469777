"""The multi-level sequential three-way decision loop and ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .linguistic import superior_gradus
from .neighborhood import (
    build_similarity_matrix,
    concept_membership,
    conditional_probability,
    cut_granules,
)
from .regret import (
    ComprehensiveUtility,
    comprehensive_utility,
    direct_simplified_gains,
    perceived_utility_units,
    utility,
)
from .tables import (
    AttributeSpec,
    ExpertDecisionTable,
    FusedDecisionTable,
    NestedSubsets,
    build_nested_subsets,
    check_attribute_weights,
    extract,
    fuse_dhhflmwa,
    orient_to_concept,
    renormalize_weights,
)

POS, BND, NEG = "POS", "BND", "NEG"


@dataclass(frozen=True)
class LevelConfig:
    """Per-level cut threshold and kernel width."""

    kappa: float
    sigma: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.kappa <= 1.0):
            raise ValueError(f"kappa {self.kappa} outside [0, 1]")
        if self.sigma <= 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class EngineParams:
    """Behavioral parameters shared by all levels."""

    eta: float = 0.6
    theta: float = 0.88
    delta: float = 0.3

    def __post_init__(self) -> None:
        if not (0.0 <= self.eta <= 1.0):
            raise ValueError(f"eta {self.eta} outside [0, 1]")
        if not (0.0 < self.theta < 1.0):
            raise ValueError(f"theta {self.theta} outside (0, 1)")
        if self.delta < 0:
            raise ValueError(f"delta must be non-negative, got {self.delta}")


def check_level_monotonicity(levels: Sequence[LevelConfig], override: bool = False) -> None:
    """Cut thresholds may only grow and kernel widths only shrink across
    levels, unless explicitly overridden."""
    if override:
        return
    for a, b in zip(levels, levels[1:]):
        if b.kappa < a.kappa - 1e-12:
            raise ValueError(
                "cut thresholds must be non-decreasing across levels "
                "(pass the monotonicity override to allow this)")
        if b.sigma > a.sigma + 1e-12:
            raise ValueError(
                "kernel widths must be non-increasing across levels "
                "(pass the monotonicity override to allow this)")


@dataclass(frozen=True)
class GranularLevel:
    """Everything computed at one decision level."""

    index: int  # 1-based
    universe: tuple
    z: tuple
    granules: tuple
    probability: Mapping[str, float]
    utilities: Mapping[str, ComprehensiveUtility]
    expected: Mapping[str, tuple]  # id -> (accept, defer, reject)
    pos: frozenset
    bnd: frozenset
    neg: frozenset

    def region_of(self, alternative: str) -> str:
        if alternative in self.pos:
            return POS
        if alternative in self.neg:
            return NEG
        if alternative in self.bnd:
            return BND
        raise KeyError(f"{alternative} was not classified at level {self.index}")


@dataclass(frozen=True)
class DecisionReport:
    """Outcome of a full sequential run."""

    alternatives: tuple
    levels: tuple  # GranularLevel per executed level
    exit_level: Mapping[str, int]
    final_region: Mapping[str, str]

    def accept_key(self, alternative: str) -> float:
        """Expected accept utility at the level where the alternative left
        the boundary (survivors: the last executed level)."""
        lvl = self.exit_level[alternative]
        return self.levels[lvl - 1].expected[alternative][0]

    def defer_key(self, alternative: str) -> float:
        lvl = self.exit_level[alternative]
        return self.levels[lvl - 1].expected[alternative][1]

    def regions_after(self, upto: int) -> dict:
        """Cumulative region of every alternative once ``upto`` levels ran."""
        upto = min(upto, len(self.levels))
        out = {}
        for level in self.levels[:upto]:
            for a in level.pos:
                out[a] = POS
            for a in level.neg:
                out[a] = NEG
        for a in self.alternatives:
            out.setdefault(a, BND)
        return out


def expected_perceived_utility(v: ComprehensiveUtility, pr: float) -> tuple:
    """Expected perceived utility of accepting, deferring, rejecting."""
    if not (0.0 <= pr <= 1.0):
        raise ValueError(f"conditional probability {pr} outside [0, 1]")
    against = 1.0 - pr
    return (
        v.pp * pr + v.pn * against,
        v.bp * pr + v.bn * against,
        v.np * pr + v.nn * against,
    )


def classify(expected: tuple) -> str:
    """First maximizing action in the order accept, defer, reject."""
    e_acc, e_def, e_rej = expected
    if e_acc >= e_def and e_acc >= e_rej:
        return POS
    if e_def >= e_acc and e_def >= e_rej:
        return BND
    return NEG


def run_level(universe: Sequence[str], fused: FusedDecisionTable,
              attrs: Sequence[AttributeSpec], z: Sequence[str],
              cfg: LevelConfig, params: EngineParams, index: int = 1) -> GranularLevel:
    """Classify every member of the universe on the given attribute subset."""
    if not universe:
        raise ValueError("empty universe")
    sub = fused.restrict(universe, z)
    weights = renormalize_weights(attrs, z)

    sim = build_similarity_matrix(sub, sub.attributes, cfg.sigma)
    granules = cut_granules(sim, cfg.kappa)
    membership = concept_membership(sub, sub.attributes, weights)
    pr = {g.center: conditional_probability(g, membership) for g in granules}

    # simplified gains per attribute, then regret against the per-attribute
    # reference over the alternatives still in play
    units_by_attr = {}
    for j, attr_id in enumerate(sub.attributes):
        simplified = [direct_simplified_gains(sub.cells[i][j], params.eta, sub.scale)
                      for i in range(len(sub.alternatives))]
        units_by_attr[attr_id] = perceived_utility_units(
            simplified, params.theta, params.delta)

    utilities = {}
    expected = {}
    pos, bnd, neg = set(), set(), set()
    for i, alt in enumerate(sub.alternatives):
        per_attr = {attr_id: units_by_attr[attr_id][i] for attr_id in sub.attributes}
        v = comprehensive_utility(per_attr, weights)
        utilities[alt] = v
        e = expected_perceived_utility(v, pr[alt])
        expected[alt] = e
        {POS: pos, BND: bnd, NEG: neg}[classify(e)].add(alt)

    return GranularLevel(
        index=index,
        universe=tuple(sub.alternatives),
        z=tuple(sub.attributes),
        granules=tuple(granules),
        probability=pr,
        utilities=utilities,
        expected=expected,
        pos=frozenset(pos),
        bnd=frozenset(bnd),
        neg=frozenset(neg),
    )


def run_sequential(tables: Sequence[ExpertDecisionTable],
                   attrs: Sequence[AttributeSpec],
                   levels: Sequence[LevelConfig],
                   params: EngineParams,
                   subsets: Optional[NestedSubsets] = None,
                   monotonicity_override: bool = False) -> DecisionReport:
    """Run the level-by-level loop; the boundary of each level feeds the next."""
    if not tables:
        raise ValueError("no expert tables")
    if not levels:
        raise ValueError("no level configuration")
    check_attribute_weights(attrs)
    check_level_monotonicity(levels, monotonicity_override)
    if subsets is None:
        subsets = build_nested_subsets(attrs)
    if len(levels) > len(subsets):
        raise ValueError(
            f"{len(levels)} levels configured but only {len(subsets)} nested subsets exist")

    alternatives = tables[0].alternatives
    attr_order = tables[0].attributes
    universe = list(alternatives)
    executed = []
    exit_level = {}
    final_region = {}
    for i, cfg in enumerate(levels, start=1):
        if not universe:
            break
        z = [a for a in attr_order if a in subsets[i - 1]]
        try:
            extracted = [extract(t, universe, z) for t in tables]
            fused = orient_to_concept(fuse_dhhflmwa(extracted), attrs)
            level = run_level(universe, fused, attrs, z, cfg, params, index=i)
        except Exception as exc:
            raise RuntimeError(f"decision level {i} failed: {exc}") from exc
        executed.append(level)
        for alt in level.pos:
            exit_level[alt] = i
            final_region[alt] = POS
        for alt in level.neg:
            exit_level[alt] = i
            final_region[alt] = NEG
        universe = [a for a in universe if a in level.bnd]
    for alt in universe:  # survivors stay deferred
        exit_level[alt] = executed[-1].index
        final_region[alt] = BND

    return DecisionReport(
        alternatives=alternatives,
        levels=tuple(executed),
        exit_level=exit_level,
        final_region=final_region,
    )


RANK_KEYS = ("accept", "defer")


def rank(report: DecisionReport, key: str = "accept",
         neg_direction: str = "desc", upto: Optional[int] = None) -> list:
    """Total order: accepted, then deferred, then rejected alternatives.

    Accepted and rejected alternatives keep the expected utility from the
    level that decided them; deferred ones use the latest level at which
    they were evaluated.  ``upto`` ranks the state after that many levels.
    ``neg_direction`` flips the order inside the rejected block.
    """
    if key not in RANK_KEYS:
        raise ValueError(f"rank key must be one of {RANK_KEYS}, got {key!r}")
    if neg_direction not in ("desc", "asc"):
        raise ValueError(f"neg_direction must be 'desc' or 'asc', got {neg_direction!r}")
    upto = len(report.levels) if upto is None else max(1, min(upto, len(report.levels)))
    regions = report.regions_after(upto)
    idx = 0 if key == "accept" else 1

    def level_key(alt: str) -> float:
        lvl = min(report.exit_level[alt], upto)
        # a deferred alternative's value comes from the last level it was in
        values = report.levels[lvl - 1].expected
        return values[alt][idx]

    pos = sorted((a for a in report.alternatives if regions[a] == POS),
                 key=lambda a: (-level_key(a), a))
    bnd = sorted((a for a in report.alternatives if regions[a] == BND),
                 key=lambda a: (-level_key(a), a))
    neg = sorted((a for a in report.alternatives if regions[a] == NEG),
                 key=lambda a: (level_key(a) if neg_direction == "asc" else -level_key(a), a))
    return pos + bnd + neg


def baseline_full_fusion(tables: Sequence[ExpertDecisionTable],
                         attrs: Sequence[AttributeSpec],
                         params: Optional[EngineParams] = None) -> list:
    """One-shot comparator: fuse everything, score each alternative by the
    weighted utility of its per-attribute scores, rank descending.

    Without parameters the raw scores are averaged (utility exponent 1);
    with parameters the same risk-averse utility as the engine applies.
    """
    check_attribute_weights(attrs)
    fused = orient_to_concept(fuse_dhhflmwa(tables), attrs)
    weight = {a.id: a.weight for a in attrs}
    theta = params.theta if params is not None else None

    def score(i: int) -> float:
        total = 0.0
        for j, attr_id in enumerate(fused.attributes):
            b = min(1.0, max(0.0, superior_gradus(fused.cells[i][j], fused.scale)))
            total += weight[attr_id] * (utility(b, theta) if theta is not None else b)
        return total

    scored = [(score(i), alt) for i, alt in enumerate(fused.alternatives)]
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [alt for _, alt in scored]
