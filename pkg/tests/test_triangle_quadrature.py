from math import factorial

import numpy as np
import pytest

from tests.conftest import triangle_quadrature_mod

TriangleQuadrature = triangle_quadrature_mod.TriangleQuadrature


def monomial_integral(a: int, b: int) -> float:
    """Integral of x^a y^b over the reference triangle (0,0), (1,0), (0,1)"""

    return factorial(a) * factorial(b) / factorial(a + b + 2)


class TestTriangleRule:
    def test_shape_and_weights(self):
        bary, weights = TriangleQuadrature.triangle_rule()
        assert bary.shape == (12, 3)
        assert weights.shape == (12,)
        assert weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert np.allclose(bary.sum(axis=1), 1.0)
        assert np.all(bary > 0)

    @pytest.mark.parametrize(
        "a, b",
        [(a, b) for a in range(7) for b in range(7 - a)],
    )
    def test_exact_up_to_degree_six(self, a: int, b: int):
        bary, weights = TriangleQuadrature.triangle_rule()
        x, y = bary[:, 1], bary[:, 2]
        value = 0.5 * np.dot(weights, x**a * y**b)
        assert value == pytest.approx(monomial_integral(a, b), rel=1e-10)

    def test_rule_is_cached_and_read_only(self):
        first = TriangleQuadrature.triangle_rule()
        assert TriangleQuadrature.triangle_rule() is first
        with pytest.raises(ValueError):
            first[1][0] = 0.0


class TestEdgeRule:
    def test_points_inside_unit_interval(self):
        points, weights = TriangleQuadrature.edge_rule()
        assert len(points) == TriangleQuadrature.EDGE_POINTS
        assert np.all((points > 0) & (points < 1))
        assert weights.sum() == pytest.approx(1.0)

    @pytest.mark.parametrize("p", range(10))
    def test_exact_up_to_degree_nine(self, p: int):
        points, weights = TriangleQuadrature.edge_rule()
        assert np.dot(weights, points**p) == pytest.approx(1.0 / (p + 1), rel=1e-13)

    def test_custom_count(self):
        points, weights = TriangleQuadrature.edge_rule(2)
        assert len(points) == 2
        assert np.dot(weights, points**3) == pytest.approx(0.25)
