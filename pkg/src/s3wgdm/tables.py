"""Expert decision tables, nested attribute subsets, and group fusion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .linguistic import (
    DHHFLE,
    DHLT,
    DHLTScale,
    add,
    linguistic_expected_value,
    mirror,
    scalar_mul,
)

WEIGHT_TOL = 1e-6
_TIE_TOL = 1e-9

KINDS = ("benefit", "cost")


@dataclass(frozen=True)
class AttributeSpec:
    """One evaluation attribute.

    ``align_with_concept`` records whether a larger rating points toward
    the target concept; misaligned attributes get complemented after
    fusion.
    """

    id: str
    weight: float
    kind: str = "benefit"
    align_with_concept: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"attribute kind must be one of {KINDS}, got {self.kind!r}")
        if not (0.0 <= self.weight <= 1.0):
            raise ValueError(f"attribute weight {self.weight} outside [0, 1]")


def check_attribute_weights(attrs: Sequence[AttributeSpec]) -> None:
    total = sum(a.weight for a in attrs)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise ValueError(f"attribute weights sum to {total}, expected 1")


@dataclass(frozen=True)
class ExpertDecisionTable:
    """Complete alternatives x attributes matrix of one expert."""

    expert_id: str
    expert_weight: float
    alternatives: tuple
    attributes: tuple
    cells: tuple  # row-major: cells[i][j] is alternatives[i] under attributes[j]
    scale: DHLTScale

    def __post_init__(self) -> None:
        if not (0.0 <= self.expert_weight <= 1.0):
            raise ValueError(f"expert weight {self.expert_weight} outside [0, 1]")
        if len(self.cells) != len(self.alternatives):
            raise ValueError("row count does not match the alternatives")
        for row in self.cells:
            if len(row) != len(self.attributes):
                raise ValueError("incomplete table: ragged row")
            for cell in row:
                if not isinstance(cell, DHHFLE):
                    raise TypeError("cells must be hesitant elements")
                cell.validate(self.scale)

    def cell(self, alternative: str, attribute: str) -> DHHFLE:
        i = self.alternatives.index(alternative)
        j = self.attributes.index(attribute)
        return self.cells[i][j]


def make_table(expert_id: str, expert_weight: float, alternatives, attributes,
               rows, scale: DHLTScale) -> ExpertDecisionTable:
    return ExpertDecisionTable(
        expert_id=expert_id,
        expert_weight=expert_weight,
        alternatives=tuple(alternatives),
        attributes=tuple(attributes),
        cells=tuple(tuple(row) for row in rows),
        scale=scale,
    )


def check_expert_weights(tables: Sequence[ExpertDecisionTable]) -> None:
    total = sum(t.expert_weight for t in tables)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise ValueError(f"expert weights sum to {total}, expected 1")


@dataclass(frozen=True)
class FusedDecisionTable:
    """Group table after fusion; every cell holds a single term."""

    alternatives: tuple
    attributes: tuple
    cells: tuple
    scale: DHLTScale
    expert_ids: tuple = ()
    expert_weights: tuple = ()

    def __post_init__(self) -> None:
        for row in self.cells:
            for cell in row:
                if len(cell) != 1:
                    raise ValueError("fused cells must be single terms")
                cell.validate(self.scale)

    def cell(self, alternative: str, attribute: str) -> DHHFLE:
        i = self.alternatives.index(alternative)
        j = self.attributes.index(attribute)
        return self.cells[i][j]

    def term(self, alternative: str, attribute: str) -> DHLT:
        return self.cell(alternative, attribute).terms[0]

    def restrict(self, universe: Iterable[str], z: Iterable[str]) -> "FusedDecisionTable":
        rows = _index_of(self.alternatives, universe, "alternative")
        cols = _index_of(self.attributes, z, "attribute")
        return FusedDecisionTable(
            alternatives=tuple(self.alternatives[i] for i in rows),
            attributes=tuple(self.attributes[j] for j in cols),
            cells=tuple(tuple(self.cells[i][j] for j in cols) for i in rows),
            scale=self.scale,
            expert_ids=self.expert_ids,
            expert_weights=self.expert_weights,
        )


@dataclass(frozen=True)
class NestedSubsets:
    """Growing chain of attribute-id sets, coarse to fine."""

    levels: tuple  # tuple of frozensets

    def __post_init__(self) -> None:
        previous: frozenset = frozenset()
        for level in self.levels:
            if not previous < level:
                raise ValueError("attribute subsets must grow strictly")
            previous = level

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> frozenset:
        return self.levels[i]


def build_nested_subsets(attrs: Sequence[AttributeSpec]) -> NestedSubsets:
    """Chain the attributes by descending weight; equal weights enter together."""
    if not attrs:
        raise ValueError("no attributes given")
    ordered = sorted(attrs, key=lambda a: (-a.weight, a.id))
    levels = []
    current: set = set()
    i = 0
    while i < len(ordered):
        w = ordered[i].weight
        while i < len(ordered) and abs(ordered[i].weight - w) <= _TIE_TOL:
            current.add(ordered[i].id)
            i += 1
        levels.append(frozenset(current))
    return NestedSubsets(tuple(levels))


def _index_of(haystack: tuple, wanted: Iterable[str], what: str) -> list:
    wanted = set(wanted)
    unknown = wanted - set(haystack)
    if unknown:
        raise KeyError(f"unknown {what} ids: {sorted(unknown)}")
    return [i for i, x in enumerate(haystack) if x in wanted]


def extract(table: ExpertDecisionTable, universe: Iterable[str],
            z: Iterable[str]) -> ExpertDecisionTable:
    """Sub-table over the given alternatives and attributes, order preserved."""
    rows = _index_of(table.alternatives, universe, "alternative")
    cols = _index_of(table.attributes, z, "attribute")
    return ExpertDecisionTable(
        expert_id=table.expert_id,
        expert_weight=table.expert_weight,
        alternatives=tuple(table.alternatives[i] for i in rows),
        attributes=tuple(table.attributes[j] for j in cols),
        cells=tuple(tuple(table.cells[i][j] for j in cols) for i in rows),
        scale=table.scale,
    )


def _check_same_shape(tables: Sequence[ExpertDecisionTable]) -> None:
    if not tables:
        raise ValueError("no expert tables to fuse")
    first = tables[0]
    for t in tables[1:]:
        if t.alternatives != first.alternatives or t.attributes != first.attributes:
            raise ValueError("expert tables disagree on alternatives or attributes")
        if t.scale != first.scale:
            raise ValueError("expert tables disagree on the linguistic scale")


def fuse_dhhflmwa(tables: Sequence[ExpertDecisionTable]) -> FusedDecisionTable:
    """Matrix weighted average: expected value per expert, then the
    expert-weighted mean of both subscripts (closed form)."""
    _check_same_shape(tables)
    check_expert_weights(tables)
    first = tables[0]
    rows = []
    for i in range(len(first.alternatives)):
        row = []
        for j in range(len(first.attributes)):
            phi = 0.0
            varphi = 0.0
            for t in tables:
                le = linguistic_expected_value(t.cells[i][j]).terms[0]
                phi += t.expert_weight * le.phi
                varphi += t.expert_weight * le.varphi
            row.append(DHHFLE([DHLT(phi, varphi)]))
        rows.append(tuple(row))
    return FusedDecisionTable(
        alternatives=first.alternatives,
        attributes=first.attributes,
        cells=tuple(rows),
        scale=first.scale,
        expert_ids=tuple(t.expert_id for t in tables),
        expert_weights=tuple(t.expert_weight for t in tables),
    )


def fuse_dhhflmwa_operational(tables: Sequence[ExpertDecisionTable]) -> FusedDecisionTable:
    """Alternative fusion route through the unit-interval operational laws:
    scale each expert cell, combine with the probabilistic sum, collapse
    with the expected value.  Differs from the closed form in general;
    kept for cross-checking the two readings of the averaging operator."""
    _check_same_shape(tables)
    check_expert_weights(tables)
    first = tables[0]
    scale = first.scale
    rows = []
    for i in range(len(first.alternatives)):
        row = []
        for j in range(len(first.attributes)):
            combined = None
            for t in tables:
                part = scalar_mul(t.expert_weight, t.cells[i][j], scale)
                combined = part if combined is None else add(combined, part, scale)
            row.append(linguistic_expected_value(combined))
        rows.append(tuple(row))
    return FusedDecisionTable(
        alternatives=first.alternatives,
        attributes=first.attributes,
        cells=tuple(rows),
        scale=scale,
        expert_ids=tuple(t.expert_id for t in tables),
        expert_weights=tuple(t.expert_weight for t in tables),
    )


def renormalize_weights(attrs: Sequence[AttributeSpec], z: Iterable[str]) -> dict:
    """Weights of the chosen attributes rescaled to sum to one."""
    z = set(z)
    chosen = [a for a in attrs if a.id in z]
    if not chosen:
        raise ValueError("empty attribute subset")
    missing = z - {a.id for a in chosen}
    if missing:
        raise KeyError(f"unknown attribute ids: {sorted(missing)}")
    total = sum(a.weight for a in chosen)
    if total <= 0:
        raise ValueError("attribute subset has zero total weight")
    return {a.id: a.weight / total for a in chosen}


def orient_to_concept(table: FusedDecisionTable,
                      attrs: Sequence[AttributeSpec]) -> FusedDecisionTable:
    """Complement the columns whose ratings point away from the concept.

    The complement negates both subscripts, which flips the degree to
    ``1 - gamma`` while keeping the representation, so applying the
    orientation twice restores the table exactly.
    """
    by_id = {a.id: a for a in attrs}
    rows = []
    for i in range(len(table.alternatives)):
        row = []
        for j, attr_id in enumerate(table.attributes):
            cell = table.cells[i][j]
            spec = by_id.get(attr_id)
            if spec is not None and not spec.align_with_concept:
                cell = mirror(cell)
            row.append(cell)
        rows.append(tuple(row))
    return FusedDecisionTable(
        alternatives=table.alternatives,
        attributes=table.attributes,
        cells=tuple(rows),
        scale=table.scale,
        expert_ids=table.expert_ids,
        expert_weights=table.expert_weights,
    )
