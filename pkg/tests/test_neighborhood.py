import math
import random

import numpy as np
import pytest

from s3wgdm.linguistic import DHLTScale, single, superior_gradus
from s3wgdm.neighborhood import (
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
from s3wgdm.tables import FusedDecisionTable

S33 = DHLTScale(3, 3)


def fused_from_rows(rows, attributes=None):
    attributes = attributes or [f"a{j+1}" for j in range(len(rows[0]))]
    alternatives = [f"x{i+1}" for i in range(len(rows))]
    return FusedDecisionTable(
        alternatives=tuple(alternatives),
        attributes=tuple(attributes),
        cells=tuple(tuple(row) for row in rows),
        scale=S33,
    )


class TestKernel:
    def test_identical_rows(self):
        row = [single(1, 0.5), single(-2, 1)]
        assert kernel_similarity(row, row, S33, 0.7) == 1.0

    def test_closed_form_span(self):
        # score gap of exactly 1 at sigma = 0.7
        k = kernel_similarity([single(3, 0)], [single(-3, 0)], S33, 0.7)
        assert k == pytest.approx(math.exp(-1 / 0.98), abs=1e-12)
        assert k == pytest.approx(0.3604477886, abs=1e-9)

    def test_sigma_monotone(self):
        a = [single(1, 0)]
        b = [single(-1, 2)]
        assert kernel_similarity(a, b, S33, 0.5) <= kernel_similarity(a, b, S33, 0.7)

    def test_sigma_positive_required(self):
        with pytest.raises(ValueError):
            kernel_similarity([single(0, 0)], [single(0, 0)], S33, 0.0)


class TestSimilarityMatrix:
    def test_single_row(self):
        fused = fused_from_rows([[single(1, 1)]])
        sim = build_similarity_matrix(fused, fused.attributes, 0.7)
        assert sim.values.shape == (1, 1)
        assert sim.values[0, 0] == 1.0

    def test_symmetry_and_diagonal(self):
        rng = random.Random(5)
        for _ in range(20):
            n = rng.randint(2, 7)
            rows = [[single(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(3)]
                    for _ in range(n)]
            sim = build_similarity_matrix(fused_from_rows(rows), ["a1", "a2", "a3"], 0.7)
            assert np.allclose(sim.values, sim.values.T, atol=1e-12)
            assert np.allclose(np.diag(sim.values), 1.0)
            assert (sim.values >= 0).all() and (sim.values <= 1).all()

    def test_duplicate_rows_fully_similar(self):
        row = [single(0.3, -1), single(2, 2)]
        sim = build_similarity_matrix(fused_from_rows([row, list(row)]),
                                      ["a1", "a2"], 0.7)
        assert sim.values[0, 1] == pytest.approx(1.0, abs=1e-12)


class TestGranules:
    def _random_similarity(self, rng, n):
        m = np.ones((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                m[i, j] = m[j, i] = rng.random()
        return SimilarityMatrix(ids=tuple(f"x{i}" for i in range(n)), values=m, sigma=0.7)

    def test_vacuous_cut(self):
        rng = random.Random(1)
        sim = self._random_similarity(rng, 5)
        for g in cut_granules(sim, 0.0):
            assert g.members == frozenset(sim.ids)

    def test_strict_cut_singletons(self):
        rng = random.Random(2)
        sim = self._random_similarity(rng, 5)
        for g in cut_granules(sim, 1.0):
            assert g.members == {g.center}

    def test_nesting(self):
        rng = random.Random(3)
        for _ in range(25):
            sim = self._random_similarity(rng, rng.randint(2, 8))
            k1, k2 = sorted((rng.random(), rng.random()))
            coarse = {g.center: g.members for g in cut_granules(sim, k1)}
            fine = {g.center: g.members for g in cut_granules(sim, k2)}
            for center in coarse:
                assert fine[center] <= coarse[center]

    def test_kappa_range(self):
        sim = self._random_similarity(random.Random(4), 3)
        with pytest.raises(ValueError):
            cut_granules(sim, 1.5)

    def test_center_membership_enforced(self):
        with pytest.raises(ValueError):
            NeighborhoodGranule(center="x", members=frozenset({"y"}), kappa=0.5)


class TestMembership:
    def test_single_attribute_is_cell_score(self):
        cell = single(1.2, -0.3)
        fused = fused_from_rows([[cell]])
        out = concept_membership(fused, ["a1"], {"a1": 1.0})
        assert out["x1"] == pytest.approx(superior_gradus(cell, S33), abs=1e-12)

    def test_scores_clipped_to_unit_interval(self):
        fused = fused_from_rows([[single(3, 3)], [single(-3, -3)]])
        out = concept_membership(fused, ["a1"], {"a1": 1.0})
        assert out["x1"] == 1.0
        assert out["x2"] == 0.0

    def test_weighted_term_averaging(self):
        # two attributes combine subscripts before scoring
        fused = fused_from_rows([[single(2, 1), single(-1, 0)]])
        out = concept_membership(fused, ["a1", "a2"], {"a1": 0.5, "a2": 0.5})
        expected = superior_gradus(single(0.5, 0.5), S33)
        assert out["x1"] == pytest.approx(expected, abs=1e-12)

    def test_weights_must_cover_and_sum(self):
        fused = fused_from_rows([[single(0, 0), single(1, 0)]])
        with pytest.raises(KeyError):
            concept_membership(fused, ["a1", "a2"], {"a1": 1.0})
        with pytest.raises(ValueError):
            concept_membership(fused, ["a1", "a2"], {"a1": 0.3, "a2": 0.3})

    def test_gamma_route_closed_form(self):
        fused = fused_from_rows([[single(0, 0), single(0, 0)]])  # both degree 0.5
        out = membership_gamma(fused, ["a1", "a2"], {"a1": 0.5, "a2": 0.5})
        assert out["x1"] == pytest.approx(1 - (0.5 ** 0.5) ** 2, abs=1e-9)
        assert out["x1"] == pytest.approx(0.5, abs=1e-9)

    def test_gamma_route_identity_single_attribute(self):
        fused = fused_from_rows([[single(0, 0)]])
        out = membership_gamma(fused, ["a1"], {"a1": 1.0})
        assert out["x1"] == pytest.approx(0.5, abs=1e-12)

    def test_values_in_unit_interval(self):
        rng = random.Random(6)
        for _ in range(50):
            m = rng.randint(1, 4)
            rows = [[single(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(m)]
                    for _ in range(rng.randint(1, 5))]
            attrs = [f"a{j+1}" for j in range(m)]
            raw = [rng.random() + 0.05 for _ in range(m)]
            weights = {a: w / sum(raw) for a, w in zip(attrs, raw)}
            fused = fused_from_rows(rows, attrs)
            for fn in (concept_membership, membership_gamma):
                out = fn(fused, attrs, weights)
                for alt in fused.alternatives:
                    assert 0.0 <= out[alt] <= 1.0


class TestConditionalProbability:
    def test_singleton(self):
        granule = NeighborhoodGranule(center="x", members=frozenset({"x"}), kappa=1.0)
        membership = ConceptMembership(degrees={"x": 0.42})
        assert conditional_probability(granule, membership) == pytest.approx(0.42)

    def test_three_member_mean(self):
        granule = NeighborhoodGranule(
            center="x1", members=frozenset({"x1", "x3", "x5"}), kappa=0.5)
        membership = ConceptMembership(degrees={"x1": 0.2, "x3": 0.5, "x5": 0.8})
        assert conditional_probability(granule, membership) == pytest.approx(0.5)

    def test_saturation(self):
        granule = NeighborhoodGranule(
            center="x1", members=frozenset({"x1", "x2"}), kappa=0.0)
        membership = ConceptMembership(degrees={"x1": 1.0, "x2": 1.0})
        assert conditional_probability(granule, membership) == 1.0

    def test_within_member_envelope(self):
        rng = random.Random(9)
        for _ in range(50):
            ids = [f"x{i}" for i in range(rng.randint(1, 6))] or ["x0"]
            degrees = {i: rng.random() for i in ids}
            granule = NeighborhoodGranule(
                center=ids[0], members=frozenset(ids), kappa=0.0)
            pr = conditional_probability(granule, ConceptMembership(degrees=degrees))
            assert min(degrees.values()) - 1e-12 <= pr <= max(degrees.values()) + 1e-12
