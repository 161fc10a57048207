import math

import numpy as np
import pytest

from audiofragility.errors import InsufficientDataError
from audiofragility.stats import (
    effect_size_label,
    paired_t_test,
    seed_stability,
    t_sf,
)

from statutil import diffs_with_moments, two_sided_p_by_quadrature


class TestTsf:
    def test_zero_t(self):
        assert t_sf(0.0, 29) == 1.0

    def test_table_value(self):
        assert t_sf(3.521, 29) == pytest.approx(0.001440, abs=2e-5)

    def test_quantile_inversion(self):
        # 2.045 is the 97.5% Student-t quantile at df=29 (checked by quadrature)
        p = t_sf(2.045, 29)
        assert p == pytest.approx(0.0500, abs=2e-4)
        assert p == pytest.approx(two_sided_p_by_quadrature(2.045, 29), abs=1e-9)

    @pytest.mark.parametrize("df", [1, 5, 29, 44, 100])
    def test_quadrature_oracle(self, df):
        for t in np.linspace(-10, 10, 41):
            assert t_sf(float(t), df) == pytest.approx(
                two_sided_p_by_quadrature(t, df), abs=1e-6
            )

    def test_monotone_in_abs_t(self):
        ps = [t_sf(t, 29) for t in np.linspace(0, 8, 30)]
        assert all(a >= b for a, b in zip(ps, ps[1:]))

    def test_bad_df(self):
        with pytest.raises(ValueError):
            t_sf(1.0, 0)


class TestPairedTTest:
    def test_mls_row_moments(self):
        r = paired_t_test(diffs_with_moments(30, 0.1739, 0.2705))
        assert r.n == 30 and r.df == 29
        assert r.t == pytest.approx(3.52, abs=0.01)
        assert r.p == pytest.approx(0.00144, abs=2e-4)
        assert r.dz == pytest.approx(0.643, abs=0.005)
        assert r.ci_low == pytest.approx(0.073, abs=0.001)
        assert r.ci_high == pytest.approx(0.275, abs=0.001)
        assert r.dz_label == "medium"

    def test_is_row_moments(self):
        r = paired_t_test(diffs_with_moments(45, 0.1840, 0.16517))
        assert r.t == pytest.approx(7.474, abs=0.01)
        assert r.dz == pytest.approx(1.114, abs=0.005)
        assert r.ci_low == pytest.approx(0.1344, abs=0.001)
        assert r.ci_high == pytest.approx(0.2337, abs=0.001)
        assert r.p < 0.001
        assert r.dz_label == "large"

    def test_all_zero_diffs(self):
        r = paired_t_test(np.zeros(10))
        assert r.t == 0.0 and r.p == 1.0 and r.dz == 0.0
        assert r.degenerate
        assert r.ci_low == r.ci_high == 0.0
        assert r.dz_label == "negligible"

    def test_constant_nonzero_diffs(self):
        r = paired_t_test(np.full(10, 0.5))
        assert math.isinf(r.t) and r.t > 0
        assert r.p == 0.0
        assert r.degenerate

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            paired_t_test([0.1])

    def test_dz_identity(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(2, 60))
            d = rng.normal(size=n)
            r = paired_t_test(d)
            assert r.dz == pytest.approx(r.t / math.sqrt(n), abs=1e-9)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(10)
        d = rng.normal(size=25)
        a = paired_t_test(d)
        b = paired_t_test(rng.permutation(d))
        assert a.t == pytest.approx(b.t, abs=1e-12)
        assert a.p == pytest.approx(b.p, abs=1e-12)

    def test_ci_contains_delta_and_shrinks(self):
        r1 = paired_t_test(diffs_with_moments(20, 0.1, 0.3))
        r2 = paired_t_test(diffs_with_moments(200, 0.1, 0.3))
        for r in (r1, r2):
            assert r.ci_low <= r.delta <= r.ci_high
        assert (r2.ci_high - r2.ci_low) < (r1.ci_high - r1.ci_low)


class TestEffectSizeLabels:
    @pytest.mark.parametrize("dz,label", [
        (0.0, "negligible"), (0.19, "negligible"), (0.2, "small"),
        (0.49, "small"), (0.5, "medium"), (0.79, "medium"),
        (0.8, "large"), (-1.2, "large"),
    ])
    def test_thresholds(self, dz, label):
        assert effect_size_label(dz) == label


class TestSeedStability:
    def test_two_seeds(self):
        assert seed_stability({0: 0.60, 1: 0.65}) == pytest.approx((0.05, 5.0))

    def test_identical_means(self):
        rng, pct = seed_stability({s: 0.6 for s in range(6)})
        assert rng == 0.0 and pct == 0.0

    def test_six_seeds(self):
        means = {0: 0.58, 1: 0.61, 2: 0.63, 3: 0.60, 4: 0.67, 5: 0.62}
        rng, pct = seed_stability(means)
        assert rng == pytest.approx(0.09)
        assert pct == pytest.approx(9.0)

    def test_single_seed_rejected(self):
        with pytest.raises(InsufficientDataError):
            seed_stability({0: 0.6})
