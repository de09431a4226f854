###############################################################################
# tfac (C) tfac contributors 2026
#
# Quadrature rules: a symmetric 12-point rule on triangles exact for
# polynomials of degree 6 and Gauss-Legendre rules on edges
###############################################################################

import functools
from typing import ClassVar

import numpy as np

###############################################################################
# Implementation
###############################################################################


class TriangleQuadrature:
    DEGREE: ClassVar[int] = 6
    """Polynomial degree integrated exactly by the triangle rule"""

    EDGE_POINTS: ClassVar[int] = 5
    """Gauss points per edge (exact to degree 9)"""

    # Orbits of the rule: (weight, barycentric generator), weights sum to 1

    __ORBITS: ClassVar[tuple] = (
        (
            0.116786275726379,
            (0.501426509658179, 0.249286745170910, 0.249286745170910),
        ),
        (
            0.050844906370207,
            (0.873821971016996, 0.063089014491502, 0.063089014491502),
        ),
        (
            0.082851075618374,
            (0.053145049844817, 0.310352451033784, 0.636502499121399),
        ),
    )

    ###########################################################################

    @staticmethod
    @functools.cache
    def triangle_rule() -> tuple[np.ndarray, np.ndarray]:
        """
        Degree-6 rule on the reference triangle.

        :return: Barycentric points of shape (12, 3) and weights of shape (12,)
            summing to 1 (multiply by the element area).
        :rtype: `tuple[np.ndarray, np.ndarray]`
        """

        points: list[tuple[float, float, float]] = []
        weights: list[float] = []

        for weight, generator in TriangleQuadrature.__ORBITS:
            orbit = sorted(set(TriangleQuadrature.__permutations(generator)))
            points.extend(orbit)
            weights.extend([weight] * len(orbit))

        bary = np.array(points)
        w = np.array(weights)

        bary.setflags(write=False)
        w.setflags(write=False)

        return bary, w

    ###########################################################################

    @staticmethod
    @functools.cache
    def edge_rule(count: int = EDGE_POINTS) -> tuple[np.ndarray, np.ndarray]:
        """
        Gauss-Legendre rule mapped to [0, 1].

        :param count: Number of points.
        :type count: `int`

        :return: Points in [0, 1] and weights summing to 1.
        :rtype: `tuple[np.ndarray, np.ndarray]`
        """

        x, w = np.polynomial.legendre.leggauss(count)
        points, weights = 0.5 * (x + 1.0), 0.5 * w

        points.setflags(write=False)
        weights.setflags(write=False)

        return points, weights

    ###########################################################################

    @staticmethod
    def __permutations(generator: tuple[float, float, float]):
        a, b, c = generator

        return [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]


###############################################################################
