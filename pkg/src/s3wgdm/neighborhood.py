"""Kernel similarity, cut granules, concept membership, conditional probability."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linguistic import DHHFLE, DHLT, DHLTScale, superior_gradus, superior_gradus_term
from .tables import FusedDecisionTable

WEIGHT_TOL = 1e-6


@dataclass(frozen=True)
class SimilarityMatrix:
    ids: tuple
    values: np.ndarray  # symmetric, unit diagonal, entries in [0, 1]
    sigma: float

    def value(self, a: str, b: str) -> float:
        i = self.ids.index(a)
        j = self.ids.index(b)
        return float(self.values[i, j])


@dataclass(frozen=True)
class NeighborhoodGranule:
    center: str
    members: frozenset
    kappa: float

    def __post_init__(self) -> None:
        if self.center not in self.members:
            raise ValueError("granule must contain its center")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ConceptMembership:
    """Degree of each alternative toward the target concept."""

    degrees: Mapping[str, float]

    def __post_init__(self) -> None:
        for k, v in self.degrees.items():
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"membership of {k} is {v}, outside [0, 1]")

    def __getitem__(self, alternative: str) -> float:
        return self.degrees[alternative]


def kernel_similarity(x_row: Sequence[DHHFLE], y_row: Sequence[DHHFLE],
                      scale: DHLTScale, sigma: float) -> float:
    """Gaussian kernel on the gap between exponential score profiles."""
    if sigma <= 0:
        raise ValueError(f"kernel width must be positive, got {sigma}")
    if len(x_row) != len(y_row):
        raise ValueError("rows cover different attribute counts")
    d2 = 0.0
    for hx, hy in zip(x_row, y_row):
        d2 += (superior_gradus(hx, scale) - superior_gradus(hy, scale)) ** 2
    return math.exp(-d2 / (2.0 * sigma * sigma))


def build_similarity_matrix(table: FusedDecisionTable, z: Iterable[str],
                            sigma: float) -> SimilarityMatrix:
    sub = table.restrict(table.alternatives, z)
    n = len(sub.alternatives)
    values = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            k = kernel_similarity(sub.cells[i], sub.cells[j], sub.scale, sigma)
            values[i, j] = values[j, i] = k
    np.fill_diagonal(values, 1.0)  # absorb floating error on the diagonal
    np.clip(values, 0.0, 1.0, out=values)
    return SimilarityMatrix(ids=sub.alternatives, values=values, sigma=sigma)


def cut_granules(sim: SimilarityMatrix, kappa: float) -> list:
    """Granule of each alternative: everyone at least ``kappa``-similar to it."""
    if not (0.0 <= kappa <= 1.0):
        raise ValueError(f"cut threshold {kappa} outside [0, 1]")
    granules = []
    for i, center in enumerate(sim.ids):
        members = frozenset(
            sim.ids[j] for j in range(len(sim.ids)) if sim.values[i, j] >= kappa)
        granules.append(NeighborhoodGranule(center=center, members=members, kappa=kappa))
    return granules


def _weight_vector(table: FusedDecisionTable, weights: Mapping[str, float]) -> list:
    missing = set(table.attributes) - set(weights)
    if missing:
        raise KeyError(f"weights missing for attributes: {sorted(missing)}")
    total = sum(weights[a] for a in table.attributes)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise ValueError(f"attribute weights over the subset sum to {total}, expected 1")
    return [weights[a] for a in table.attributes]


def concept_membership(table: FusedDecisionTable, z: Iterable[str],
                       weights: Mapping[str, float]) -> ConceptMembership:
    """Membership toward the concept as the exponential score of the
    weight-averaged term over the chosen attributes.

    Combining single-term cells with weighted averaging keeps the result
    a term; its score is then clipped into the unit interval.
    """
    sub = table.restrict(table.alternatives, z)
    wv = _weight_vector(sub, weights)
    degrees = {}
    for i, alt in enumerate(sub.alternatives):
        phi = sum(w * cell.terms[0].phi for w, cell in zip(wv, sub.cells[i]))
        varphi = sum(w * cell.terms[0].varphi for w, cell in zip(wv, sub.cells[i]))
        score = superior_gradus_term(DHLT(phi, varphi), sub.scale)
        degrees[alt] = min(1.0, max(0.0, score))
    return ConceptMembership(degrees=degrees)


def membership_gamma(table: FusedDecisionTable, z: Iterable[str],
                     weights: Mapping[str, float]) -> ConceptMembership:
    """Membership through the unit-interval laws instead: scale each cell
    by its weight and combine with the probabilistic sum, which closes to
    ``1 - prod((1 - gamma_q) ** w_q)`` on single-term cells.  Kept as the
    reference reading next to :func:`concept_membership`."""
    from .linguistic import f_scalar

    sub = table.restrict(table.alternatives, z)
    wv = _weight_vector(sub, weights)
    degrees = {}
    for i, alt in enumerate(sub.alternatives):
        prod = 1.0
        for w, cell in zip(wv, sub.cells[i]):
            t = cell.terms[0]
            prod *= (1.0 - f_scalar(t.phi, t.varphi, sub.scale)) ** w
        degrees[alt] = 1.0 - prod
    return ConceptMembership(degrees=degrees)


def conditional_probability(granule: NeighborhoodGranule,
                            membership: ConceptMembership) -> float:
    """Mean membership over the granule; the complementary state has
    probability one minus this."""
    values = [membership[m] for m in granule.members]
    return sum(values) / len(values)
