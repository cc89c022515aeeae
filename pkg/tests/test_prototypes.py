import numpy as np
import pytest
from hypothesis import given, settings

from hopfield_prototypes.datagen import noisy_copy
from hopfield_prototypes.learning import hebbian
from hopfield_prototypes.prototypes import (
    BernoulliProfile,
    RepresentativeVector,
    agreement_factor,
    bernoulli_profile,
    decompose,
    pairwise_factor,
    predicted_representative_term,
    representative,
)
from hopfield_prototypes.theory import StabilityQuery, p_error

from conftest import spin_vector, training_sets


class TestRepresentative:
    def test_unanimous(self, rng):
        xi = spin_vector(9, rng)
        rv = representative(np.stack([xi] * 4))
        assert np.array_equal(rv.psi, xi)
        assert rv.tie_indices == frozenset()

    def test_antipodal_pair_all_ties(self, rng):
        xi = spin_vector(6, rng)
        rv = representative(np.stack([xi, -xi]))
        assert np.all(rv.psi == 1)
        assert rv.tie_indices == frozenset(range(6))

    def test_majority_count_oracle(self, rng):
        # K=5 noisy copies: psi follows the base wherever at most 2 copies flipped.
        base = spin_vector(50, rng)
        copies = np.stack([noisy_copy(base, 0.1, rng) for _ in range(5)])
        rv = representative(copies)
        flips_per_index = (copies != base).sum(axis=0)
        for i in range(50):
            if flips_per_index[i] <= 2:
                assert rv.psi[i] == base[i]
            else:
                assert rv.psi[i] == -base[i]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            representative(np.empty((0, 4), dtype=np.int8))


class TestDecompose:
    def test_psi_itself_is_all_zero(self, rng):
        xi = spin_vector(5, rng)
        rv = representative(np.stack([xi]))
        dm = decompose(np.stack([xi]), rv)
        assert np.all(dm.deltas == 0)

    def test_negated_psi_is_all_one(self, rng):
        xi = spin_vector(5, rng)
        rv = RepresentativeVector(psi=xi, tie_indices=frozenset())
        dm = decompose(np.stack([-xi]), rv)
        assert np.all(dm.deltas == 1)

    def test_dimension_mismatch(self, rng):
        rv = representative(np.stack([spin_vector(4, rng)]))
        with pytest.raises(ValueError):
            decompose(np.stack([spin_vector(5, rng)]), rv)

    @given(training_sets())
    @settings(max_examples=80)
    def test_reconstruction_identity(self, ts):
        rv = representative(ts)
        dm = decompose(ts, rv)
        reconstructed = rv.psi[None, :] * (1 - 2 * dm.deltas.astype(np.int8))
        assert np.array_equal(reconstructed, ts)


class TestBernoulliProfile:
    def test_all_zero(self, rng):
        xi = spin_vector(6, rng)
        dm = decompose(np.stack([xi] * 3), representative(np.stack([xi] * 3)))
        profile = bernoulli_profile(dm)
        assert np.all(profile.p_per_index == 0.0)
        assert profile.pooled_p == 0.0

    def test_single_disagreement_column(self):
        psi = np.ones(5, dtype=np.int8)
        other = psi.copy()
        other[3] = -1
        ts = np.stack([psi, other])
        rv = representative(ts)
        profile = bernoulli_profile(decompose(ts, rv))
        assert profile.p_per_index[3] == 0.5
        assert np.all(np.delete(profile.p_per_index, 3) == 0.0)
        assert profile.pooled_p == pytest.approx(0.5 / 5)

    def test_pooled_estimate_within_three_sigma(self, rng):
        base = spin_vector(50, rng)
        k, p = 100, 0.2
        copies = np.stack([noisy_copy(base, p, rng) for _ in range(k)])
        profile = bernoulli_profile(decompose(copies, representative(copies)))
        sigma = np.sqrt(p * (1 - p) / (k * 50))
        assert abs(profile.pooled_p - p) <= 3 * sigma

    @given(training_sets(min_k=1, max_k=6))
    @settings(max_examples=80)
    def test_rates_never_exceed_half(self, ts):
        profile = bernoulli_profile(decompose(ts, representative(ts)))
        assert np.all(profile.p_per_index <= 0.5)
        assert 0.0 <= profile.pooled_p <= 0.5

    def test_rejects_non_majority_reference(self, rng):
        xi = spin_vector(6, rng)
        rv = RepresentativeVector(psi=-xi, tie_indices=frozenset())
        dm = decompose(np.stack([xi, xi]), rv)
        with pytest.raises(ValueError):
            bernoulli_profile(dm)


class TestFactors:
    def test_agreement_endpoints(self):
        assert agreement_factor(0.0) == 1.0
        assert agreement_factor(0.5) == 0.0
        assert agreement_factor(0.25) == 0.25

    def test_agreement_monotone_decreasing(self):
        ps = np.linspace(0, 0.5, 26)
        values = [agreement_factor(float(p)) for p in ps]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_agreement_range_check(self):
        for bad in (-0.01, 0.51, 1.0):
            with pytest.raises(ValueError):
                agreement_factor(bad)

    def test_pairwise_values(self):
        assert pairwise_factor(0.0, 0.0) == 1.0
        assert pairwise_factor(0.5, 0.3) == pytest.approx(0.0)
        assert pairwise_factor(0.1, 0.3) == pytest.approx(0.32)

    def test_pairwise_equals_factored_form(self):
        for p_j in np.linspace(0, 0.5, 11):
            for p_i in np.linspace(0, 0.5, 11):
                expanded = pairwise_factor(float(p_j), float(p_i))
                assert expanded == pytest.approx((1 - 2 * p_j) * (1 - 2 * p_i), abs=1e-12)

    def test_pairwise_range_check(self):
        with pytest.raises(ValueError):
            pairwise_factor(0.6, 0.1)
        with pytest.raises(ValueError):
            pairwise_factor(0.1, -0.2)


class TestPredictedTerm:
    def test_identical_states_reduce_to_single_state_hebbian(self, rng):
        xi = spin_vector(8, rng)
        ts = np.stack([xi] * 5)
        rv = representative(ts)
        profile = bernoulli_profile(decompose(ts, rv))
        predicted = predicted_representative_term(rv, profile, 5, 5, pooled=True)
        assert np.array_equal(predicted, hebbian([xi]))

    def test_pooled_equals_per_index_for_uniform_profile(self, rng):
        xi = spin_vector(10, rng)
        rv = RepresentativeVector(psi=xi, tie_indices=frozenset())
        profile = BernoulliProfile(p_per_index=np.full(10, 0.15), pooled_p=0.15)
        a = predicted_representative_term(rv, profile, 3, 7, pooled=True)
        b = predicted_representative_term(rv, profile, 3, 7, pooled=False)
        assert np.max(np.abs(a - b)) <= 1e-12

    def test_matches_empirical_hebbian_within_mc_tolerance(self, rng):
        k, n, p = 200, 100, 0.15
        base = spin_vector(n, rng)
        subset = np.stack([noisy_copy(base, p, rng) for _ in range(k)])
        rv = representative(subset)
        profile = bernoulli_profile(decompose(subset, rv))
        predicted = predicted_representative_term(rv, profile, k, k, pooled=False)
        empirical = hebbian(subset)
        assert np.max(np.abs(predicted - empirical)) <= 4.0 / np.sqrt(k)

    def test_size_violation(self, rng):
        xi = spin_vector(4, rng)
        rv = representative(np.stack([xi]))
        profile = bernoulli_profile(decompose(np.stack([xi]), rv))
        with pytest.raises(ValueError):
            predicted_representative_term(rv, profile, 3, 2)


class TestTieInvariance:
    @staticmethod
    def _tied_subset():
        # indices 0..2 unanimous +1, indices 3..5 split 2-2 (exact ties)
        return np.array(
            [
                [1, 1, 1, 1, 1, -1],
                [1, 1, 1, 1, -1, 1],
                [1, 1, 1, -1, 1, -1],
                [1, 1, 1, -1, -1, 1],
            ],
            dtype=np.int8,
        )

    def test_prototype_behavior_equal_under_either_tie_choice(self):
        ts = self._tied_subset()
        rv_plus = representative(ts)
        assert rv_plus.tie_indices == frozenset({3, 4, 5})

        psi_minus = rv_plus.psi.copy()
        for t in rv_plus.tie_indices:
            psi_minus[t] = -psi_minus[t]
        rv_minus = RepresentativeVector(psi=psi_minus, tie_indices=rv_plus.tie_indices)

        prof_plus = bernoulli_profile(decompose(ts, rv_plus))
        prof_minus = bernoulli_profile(decompose(ts, rv_minus))
        assert prof_plus.pooled_p == prof_minus.pooled_p

        term_plus = predicted_representative_term(rv_plus, prof_plus, 4, 4, pooled=False)
        term_minus = predicted_representative_term(rv_minus, prof_minus, 4, 4, pooled=False)
        non_tie = [i for i in range(6) if prof_plus.p_per_index[i] < 0.5]
        sub = np.ix_(non_tie, non_tie)
        assert np.allclose(term_plus[sub], term_minus[sub], atol=1e-15)

        # the closed-form stability probability only sees the pooled rate
        q_plus = StabilityQuery(subset_size=4, p=prof_plus.pooled_p, N=6, K=4)
        q_minus = StabilityQuery(subset_size=4, p=prof_minus.pooled_p, N=6, K=4)
        assert p_error(q_plus) == p_error(q_minus)
