import numpy as np
import pytest

from fwsubmix import Box, Cardinality, Polytope, UnsupportedRegion
from fwsubmix._kernels import simplex_max
from fwsubmix.rng import stream

from oracle_utils import brute_force_lmo_value, rejection_sample_polytope


def random_polytope(rng, n=None, m=None):
    n = n if n is not None else int(rng.integers(1, 6))
    m = m if m is not None else int(rng.integers(1, 6))
    A = rng.uniform(0.05, 1.05, size=(m, n))
    b = rng.uniform(0.5, 1.5, m)
    u = rng.uniform(0.2, 1.2, n)
    return Polytope(A, b, u)


class TestContains:
    def test_box(self):
        assert Box(np.zeros(2), np.ones(2)).contains([0.5, 0.5])

    def test_cardinality_budget_exceeded(self):
        assert not Cardinality(1.0, 2).contains([0.7, 0.7])

    def test_polytope_boundary_tolerance(self):
        region = Polytope([[1.0, 1.0]], [1.0], [1.0, 1.0])
        assert region.contains([0.5, 0.5], tol=1e-9)
        assert not region.contains([0.5, 0.5 + 2e-9], tol=1e-9)


class TestLmo:
    def test_box_sign_rule_with_ties(self):
        res = Box(np.zeros(3), np.ones(3)).lmo([1.0, -2.0, 0.0])
        np.testing.assert_array_equal(res.vertex, [1.0, 0.0, 0.0])
        assert res.objective_value == 1.0

    def test_cardinality_top_one(self):
        res = Cardinality(1.0, 3).lmo([3.0, 2.0, 1.0])
        np.testing.assert_array_equal(res.vertex, [1.0, 0.0, 0.0])
        assert res.objective_value == 3.0

    def test_cardinality_fractional_fill(self):
        res = Cardinality(2.5, 4).lmo([4.0, 3.0, 2.0, -1.0])
        np.testing.assert_array_equal(res.vertex, [1.0, 1.0, 0.5, 0.0])

    def test_cardinality_skips_nonpositive(self):
        res = Cardinality(3.0, 3).lmo([1.0, 0.0, -1.0])
        np.testing.assert_array_equal(res.vertex, [1.0, 0.0, 0.0])

    def test_polytope_degenerate_face(self):
        region = Polytope([[1.0, 1.0]], [1.0], [1.0, 1.0])
        res = region.lmo([1.0, 1.0])
        # all of the face {x1 + x2 = 1} is optimal; lowest-index pivoting
        # lands on (1, 0)
        np.testing.assert_allclose(res.vertex, [1.0, 0.0])
        assert res.objective_value == pytest.approx(1.0)

    def test_polytope_matches_vertex_enumeration(self):
        rng = stream(41, 0)
        for trial in range(20):
            region = random_polytope(rng)
            c = rng.uniform(-1.0, 1.0, region.dim)
            res = region.lmo(c)
            expected = brute_force_lmo_value(c, region.A, region.b, region.u)
            assert res.objective_value == pytest.approx(expected, abs=1e-8)
            assert region.contains(res.vertex, 1e-9)

    def test_backends_agree_bit_for_bit(self):
        rng = stream(42, 0)
        for _ in range(25):
            region = random_polytope(rng)
            c = rng.uniform(-1.0, 1.0, region.dim)
            a = region.lmo(c, backend="numba")
            b = region.lmo(c, backend="numpy")
            np.testing.assert_array_equal(a.vertex, b.vertex)
            assert a.objective_value == b.objective_value

    def test_simplex_statuses(self):
        # unbounded: maximize x with no finite cap
        status, _ = simplex_max(
            np.array([1.0]), np.zeros((1, 1)), np.array([1.0]), 1e-9, 100
        )
        assert status == 2

    def test_backend_env_flag(self, monkeypatch):
        from fwsubmix._kernels import _resolve_backend

        monkeypatch.setenv("FWSUBMIX_BACKEND", "numpy")
        assert _resolve_backend(None) == "numpy"
        monkeypatch.setenv("FWSUBMIX_BACKEND", "numba")
        assert _resolve_backend(None) == "numba"
        monkeypatch.delenv("FWSUBMIX_BACKEND")
        assert _resolve_backend("numpy") == "numpy"
        with pytest.raises(ValueError):
            _resolve_backend("fortran")


class TestProject:
    def test_box_clamp(self):
        p = Box(np.zeros(2), np.ones(2)).project([1.5, -0.2])
        np.testing.assert_array_equal(p, [1.0, 0.0])

    def test_cardinality_symmetric(self):
        p = Cardinality(1.0, 2).project([1.0, 1.0])
        np.testing.assert_allclose(p, [0.5, 0.5], atol=1e-9)

    def test_cardinality_shift(self):
        p = Cardinality(1.0, 2).project([0.9, 0.3])
        np.testing.assert_allclose(p, [0.8, 0.2], atol=1e-9)

    def test_polytope_unsupported(self):
        region = Polytope([[1.0, 1.0]], [1.0], [1.0, 1.0])
        with pytest.raises(UnsupportedRegion):
            region.project([0.5, 0.5])

    def test_variational_inequality(self):
        region = Cardinality(2.0, 5)
        rng = stream(43, 0)
        feas = rng.uniform(0.0, 1.0, size=(50, 5))
        feas *= np.minimum(1.0, region.budget / feas.sum(axis=1))[:, None]
        for _ in range(200):
            x = rng.uniform(-0.5, 2.0, 5)
            p = region.project(x)
            assert region.contains(p, 1e-8)
            gaps = (feas - p) @ (x - p)
            assert gaps.max() <= 1e-8


class TestDiameter:
    def test_box(self):
        assert Box(np.zeros(4), np.ones(4)).diameter_bound() == pytest.approx(2.0)

    def test_cardinality(self):
        assert Cardinality(4.0, 9).diameter_bound() == pytest.approx(2.0)

    def test_cardinality_fractional(self):
        assert Cardinality(2.5, 4).diameter_bound() == pytest.approx(np.sqrt(2.25))

    def test_polytope(self):
        region = Polytope([[1.0, 1.0, 1.0]], [2.0], [1.0, 1.0, 1.0])
        assert region.diameter_bound() == pytest.approx(np.sqrt(3.0))


class TestDownClosedness:
    def test_flags(self):
        assert Box(np.zeros(2), np.ones(2)).down_closed
        assert not Box(np.ones(2), 2.0 * np.ones(2)).down_closed
        assert Cardinality(1.0, 2).down_closed
        assert Polytope([[1.0]], [1.0], [1.0]).down_closed

    def test_membership_downward(self):
        rng = stream(44, 0)
        region = random_polytope(rng, n=4, m=3)
        pts = rejection_sample_polytope(region, 50, rng)
        for x in pts:
            y = x * rng.uniform(0.0, 1.0, 4)
            assert region.contains(y, 1e-9)


class TestValidation:
    def test_polytope_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            Polytope([[-0.1]], [1.0], [1.0])
        with pytest.raises(ValueError):
            Polytope([[0.1]], [-1.0], [1.0])

    def test_box_requires_ordered_bounds(self):
        with pytest.raises(ValueError):
            Box(np.ones(2), np.zeros(2))

    def test_cardinality_budget_range(self):
        with pytest.raises(ValueError):
            Cardinality(0.0, 3)
        with pytest.raises(ValueError):
            Cardinality(4.0, 3)
