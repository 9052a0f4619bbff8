import numpy as np
import pytest

from histosom import (
    AlignedDataset,
    Dissimilarity,
    Histogram,
    ObservationVector,
    alt_dissimilarity,
    barycenter,
    to_quantile_profile,
    total_inertia,
    wasserstein_components,
    wasserstein_sq,
)
from conftest import (
    random_histogram,
    random_observation,
    uniform_obs,
    wasserstein_oracle,
)


class TestWassersteinSq:
    def test_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            x = random_observation(rng, d=2)
            assert wasserstein_sq(x, x) == 0.0

    def test_uniform_pair_closed_form(self):
        a, b = uniform_obs(0, 2), uniform_obs(2, 6)
        # centers 1 vs 4, radii 1 vs 2: 9 + 1/3
        assert wasserstein_sq(a, b) == pytest.approx(28.0 / 3.0, rel=1e-12)
        assert wasserstein_sq(a, b) == pytest.approx(
            wasserstein_oracle(a, b, 1_000_000), rel=1e-6
        )

    def test_shifted_variable_adds_25(self):
        a = ObservationVector([Histogram([(0, 2, 1.0)]), Histogram([(1, 3, 1.0)])])
        b = ObservationVector([Histogram([(0, 2, 1.0)]), Histogram([(6, 8, 1.0)])])
        assert wasserstein_sq(a, b) == pytest.approx(25.0, rel=1e-12)
        assert wasserstein_sq(a, b) == pytest.approx(
            wasserstein_oracle(a, b, 1_000_000), rel=1e-6
        )

    def test_matches_integration_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            a = random_observation(rng, d=1)
            b = random_observation(rng, d=1)
            want = wasserstein_oracle(a, b)
            assert wasserstein_sq(a, b) == pytest.approx(want, rel=1e-6)

    def test_dimension_mismatch(self):
        rng = np.random.default_rng(2)
        with pytest.raises(ValueError, match="dimension"):
            wasserstein_sq(random_observation(rng, d=1), random_observation(rng, d=2))

    def test_metric_axioms(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            a = random_observation(rng, d=2)
            b = random_observation(rng, d=2)
            c = random_observation(rng, d=2)
            dab = wasserstein_sq(a, b)
            assert dab >= 0.0
            assert dab == wasserstein_sq(b, a)
            # triangle inequality on the distance scale
            ab, bc, ac = np.sqrt([dab, wasserstein_sq(b, c), wasserstein_sq(a, c)])
            assert ac <= ab + bc + 1e-9


class TestComponents:
    def test_sum_is_exactly_the_distance(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            a = random_observation(rng, d=2)
            b = random_observation(rng, d=2)
            cp, rp = wasserstein_components(a, b)
            assert cp + rp == wasserstein_sq(a, b)

    def test_zero_parts(self):
        a, b = uniform_obs(0, 2), uniform_obs(5, 7)  # equal radii
        cp, rp = wasserstein_components(a, b)
        assert rp == 0.0 and cp == pytest.approx(25.0)
        a = ObservationVector([Histogram([(-1, 1, 1.0)])])
        b = ObservationVector([Histogram([(-3, 3, 1.0)])])  # equal centers
        cp, rp = wasserstein_components(a, b)
        assert cp == 0.0 and rp == pytest.approx(4.0 / 3.0)

    def test_uniform_pair_parts(self):
        cp, rp = wasserstein_components(uniform_obs(0, 2), uniform_obs(2, 6))
        assert cp == pytest.approx(9.0, rel=1e-12)
        assert rp == pytest.approx(1.0 / 3.0, rel=1e-12)


class TestBarycenter:
    def test_singleton(self):
        rng = np.random.default_rng(5)
        x = random_observation(rng, d=2)
        b = barycenter([x])
        assert wasserstein_sq(x, b) <= 1e-24

    def test_two_uniforms(self):
        b = barycenter([uniform_obs(0, 2), uniform_obs(2, 4)])
        assert b[0].bins == (pytest.approx((1.0, 3.0, 1.0)),)

    def test_weighted_pull(self):
        b = barycenter([uniform_obs(0, 2), uniform_obs(2, 4)], weights=[3.0, 1.0])
        assert b[0].mean == pytest.approx(1.5)

    def test_uniform_weights_are_plain_means(self):
        rng = np.random.default_rng(6)
        xs = [random_observation(rng, d=1, nbins=3) for _ in range(7)]
        plain = barycenter(xs)
        weighted = barycenter(xs, weights=[1.0] * 7)
        al = AlignedDataset.align(xs)
        want_c = al.centers.mean(axis=0)
        got = to_quantile_profile(plain[0])
        assert np.allclose(got.centers, want_c, rtol=0, atol=1e-15)
        assert plain == weighted

    def test_errors(self):
        rng = np.random.default_rng(7)
        x = random_observation(rng)
        with pytest.raises(ValueError, match="empty barycenter"):
            barycenter([])
        with pytest.raises(ValueError, match="empty barycenter"):
            barycenter([x], weights=[0.0])
        with pytest.raises(ValueError, match="nonnegative"):
            barycenter([x], weights=[-1.0])

    def test_frechet_minimality_under_perturbation(self):
        # gapped histograms leave slack, so perturbed profiles stay valid
        rng = np.random.default_rng(8)
        xs = [random_observation(rng, d=1, nbins=4, gaps=True) for _ in range(20)]
        center = barycenter(xs)
        best = sum(wasserstein_sq(x, center) for x in xs)
        prof = to_quantile_profile(center[0])
        accepted = 0
        while accepted < 100:
            dc = rng.normal(0.0, 0.01, size=prof.centers.shape)
            dr = rng.uniform(-0.02, 0.0, size=prof.radii.shape)
            try:
                cand_profile = type(prof)(
                    prof.cut_points,
                    prof.centers + dc,
                    np.maximum(prof.radii + dr, 0.0),
                )
            except ValueError:
                continue  # perturbation closed a gap; draw again
            cand = ObservationVector([cand_profile.to_histogram()])
            val = sum(wasserstein_sq(x, cand) for x in xs)
            assert val > best
            accepted += 1


class TestTotalInertia:
    def test_identical_observations(self):
        rng = np.random.default_rng(9)
        x = random_observation(rng, d=2)
        assert total_inertia([x, x, x]) <= 1e-20

    def test_two_uniforms(self):
        assert total_inertia([uniform_obs(0, 2), uniform_obs(2, 4)]) == pytest.approx(2.0)

    def test_huygens_decomposition(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            xs = [random_observation(rng, d=2, nbins=3) for _ in range(24)]
            labels = rng.integers(0, 3, size=len(xs))
            ti = total_inertia(xs)
            total = 0.0
            global_bar = barycenter(xs)
            for c in range(3):
                members = [x for x, l in zip(xs, labels) if l == c]
                if not members:
                    continue
                bar_c = barycenter(members)
                total += total_inertia(members)
                total += len(members) * wasserstein_sq(bar_c, global_bar)
            assert ti == pytest.approx(total, abs=1e-9)


class TestAltDissimilarities:
    UNIFORM_CASES = {
        "dW": 28.0 / 3.0,
        "dC": 9.0,
        "dR": 1.0,
        "dM": 9.0,
        "dS": 1.0 / 3.0,
        "dI1": 10.0,
        "dI2": 28.0 / 3.0,  # equals dW for single-bin uniforms
    }

    @pytest.mark.parametrize("kind", sorted(UNIFORM_CASES))
    def test_identity(self, kind):
        rng = np.random.default_rng(11)
        x = random_observation(rng, d=2)
        assert alt_dissimilarity(kind, x, x) == pytest.approx(0.0, abs=1e-18)

    @pytest.mark.parametrize("kind,expected", sorted(UNIFORM_CASES.items()))
    def test_uniform_pair_values(self, kind, expected):
        got = alt_dissimilarity(kind, uniform_obs(0, 2), uniform_obs(2, 6))
        assert got == pytest.approx(expected, rel=1e-9)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown dissimilarity"):
            alt_dissimilarity("dX", uniform_obs(0, 1), uniform_obs(0, 1))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            alt_dissimilarity("dC", uniform_obs(0, 1), uniform_obs(0, 1, d=2))


class TestDissimilarityEmbedding:
    @pytest.mark.parametrize("kind", ["dW", "dC", "dR", "dM", "dS", "dI1", "dI2"])
    def test_cross_matches_pairwise(self, kind):
        # dC/dR depend on the piece decomposition, so use observations with
        # matching cut sets (equal-weight bins) where group and pair grids agree
        rng = np.random.default_rng(12)
        obs = [
            ObservationVector(
                [
                    Histogram(
                        zip(bounds[:-1], bounds[1:], np.full(4, 0.25))
                    )
                    for bounds in np.sort(rng.uniform(0, 10, size=(2, 5)), axis=1)
                ]
            )
            for _ in range(6)
        ]
        al = AlignedDataset.align(obs)
        d = Dissimilarity(kind)
        e = d.embed(al)
        cross = d.cross(e, e)
        for i in range(6):
            for j in range(6):
                want = alt_dissimilarity(kind, obs[i], obs[j])
                assert cross[i, j] == pytest.approx(want, rel=1e-9, abs=1e-9)

    def test_scale_multiplies_values(self):
        rng = np.random.default_rng(13)
        obs = [random_observation(rng, d=1) for _ in range(4)]
        al = AlignedDataset.align(obs)
        base = Dissimilarity("dW")
        scaled = Dissimilarity("dW", scale=2.0)
        e = base.embed(al)
        assert np.allclose(scaled.cross(e, e), 2.0 * base.cross(e, e))

    def test_validation(self):
        with pytest.raises(ValueError):
            Dissimilarity("nope")
        with pytest.raises(ValueError):
            Dissimilarity("dW", scale=0.0)
