###############################################################################
# tfac (C) tfac contributors 2026
#
# Manufactured solutions u(x, y, t) = g(x, y) (1 + t^alpha) with a separable
# spatial profile g = c p(x) p(y) vanishing on the boundary. The Caputo
# derivative of the time factor is the constant Gamma(1 + alpha), so the
# source is available in closed form
###############################################################################

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import ClassVar

import numpy as np
from scipy.special import gamma as gamma_fn

from tfac.errors import ParameterDomainError
from tfac.problem_spec import ProblemSpec
from tfac.separable_profile import SeparableProfile
from tfac.solver_flags import SolverFlags

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True, eq=False)
class ManufacturedCase:
    name: str
    """Catalogue key"""

    domain: tuple[float, float, float, float]
    """Bounds (x_min, x_max, y_min, y_max)"""

    T: float
    """Final time"""

    kappa: float
    """Interaction length"""

    amplitude: float
    """Constant c of g = c p(x) p(y)"""

    profile: SeparableProfile
    """One-dimensional factor p"""

    regularity: str
    """Sobolev class of u0"""

    CASES: ClassVar[dict[str, ManufacturedCase]]
    """Catalogue of the reference experiments"""

    ###########################################################################

    def g(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        p = self.profile.p
        return self.amplitude * p(np.asarray(x, float)) * p(np.asarray(y, float))

    ###########################################################################

    def grad_g(self, x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        x, y = np.asarray(x, float), np.asarray(y, float)
        p, dp = self.profile.p, self.profile.dp

        return (
            self.amplitude * dp(x) * p(y),
            self.amplitude * p(x) * dp(y),
        )

    ###########################################################################

    def laplacian_g(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """
        Element-wise Laplacian of g, defined off the kink lines.

        :param x: Abscissae.
        :type x: `np.ndarray`

        :param y: Ordinates.
        :type y: `np.ndarray`

        :return: p''(x) p(y) + p(x) p''(y), scaled by the amplitude.
        :rtype: `np.ndarray`

        :raises ParameterDomainError: when a point lies on x = 0 or y = 0 and
            the profile has a kink there.
        """

        x, y = np.asarray(x, float), np.asarray(y, float)

        if self.profile.kinked and (np.any(x == 0) or np.any(y == 0)):
            raise ParameterDomainError(
                "x", f"case {self.name}: Laplacian undefined on a kink line"
            )

        p, d2p = self.profile.p, self.profile.d2p

        return self.amplitude * (d2p(x) * p(y) + p(x) * d2p(y))

    ###########################################################################

    def exact_u(
        self, x: np.ndarray, y: np.ndarray, t: float, alpha: float
    ) -> np.ndarray:
        return self.g(x, y) * (1.0 + t**alpha)

    ###########################################################################

    def exact_sigma(
        self, x: np.ndarray, y: np.ndarray, t: float, alpha: float
    ) -> tuple[np.ndarray, np.ndarray]:
        gx, gy = self.grad_g(x, y)
        factor = 1.0 + t**alpha

        return gx * factor, gy * factor

    ###########################################################################

    def manufactured_source(
        self,
        x: np.ndarray,
        y: np.ndarray,
        t: float,
        alpha: float,
        kappa2: float | None = None,
        cubic: bool = True,
    ) -> np.ndarray:
        """
        Source f = D_t^alpha u - kappa^2 Laplace(u) - u + u^3 of the exact
        solution.

        :param x: Abscissae, off the kink lines.
        :type x: `np.ndarray`

        :param y: Ordinates, off the kink lines.
        :type y: `np.ndarray`

        :param t: Time, t >= 0.
        :type t: `float`

        :param alpha: Fractional order.
        :type alpha: `float`

        :param kappa2: Factor of the Laplacian (kappa^2 when omitted).
        :type kappa2: `float` | `None`

        :param cubic: False for the problem without the u^3 term.
        :type cubic: `bool`

        :return: Source values.
        :rtype: `np.ndarray`
        """

        if t < 0:
            raise ParameterDomainError("t", f"must be non-negative, got {t}")
        if kappa2 is None:
            kappa2 = self.kappa**2

        g = self.g(x, y)
        u = g * (1.0 + t**alpha)
        f = gamma_fn(1.0 + alpha) * g - kappa2 * (1.0 + t**alpha) * self.laplacian_g(
            x, y
        )
        f = f - u

        return f + u**3 if cubic else f

    ###########################################################################

    def problem(
        self,
        alpha: float,
        nu: float | None = None,
        flags: SolverFlags = SolverFlags.DEFAULT,
    ) -> ProblemSpec:
        """
        Problem data whose exact solution is this case.

        :param alpha: Fractional order.
        :type alpha: `float`

        :param nu: Offset (alpha / 2 when omitted).
        :type nu: `float` | `None`

        :param flags: Scheme switches; the source follows them.
        :type flags: `SolverFlags`

        :return: Problem with u0 = g and the manufactured source.
        :rtype: `ProblemSpec`
        """

        kappa2 = self.kappa**2 if flags & SolverFlags.KAPPA_IN_SCHEME else 1.0
        cubic = bool(flags & SolverFlags.NONLINEAR)

        def source(x, y, t):
            return self.manufactured_source(x, y, t, alpha, kappa2, cubic)

        return ProblemSpec(
            kappa=self.kappa,
            alpha=alpha,
            u0=self.g,
            nu=nu,
            source=source,
            flags=flags,
        )

    ###########################################################################

    def with_parameters(
        self, kappa: float | None = None, T: float | None = None
    ) -> ManufacturedCase:
        """
        :param kappa: Interaction length replacing the catalogue value.
        :type kappa: `float` | `None`

        :param T: Final time replacing the catalogue value.
        :type T: `float` | `None`

        :return: This case, or a copy with the given values.
        :rtype: `ManufacturedCase`
        """

        if kappa is not None and not (0 < kappa <= 1):
            raise ParameterDomainError("kappa", f"must lie in (0, 1], got {kappa}")
        if T is not None and not (T > 0):
            raise ParameterDomainError("T", f"must be positive, got {T}")

        return replace(
            self,
            kappa=self.kappa if kappa is None else float(kappa),
            T=self.T if T is None else float(T),
        )

    ###########################################################################

    @staticmethod
    def get_case(name: str) -> ManufacturedCase:
        """
        :param name: Catalogue key, e.g. "6.1".
        :type name: `str`

        :return: The case.
        :rtype: `ManufacturedCase`

        :raises ParameterDomainError: listing the available keys.
        """

        case = ManufacturedCase.CASES.get(str(name))

        if case is None:
            available = ", ".join(ManufacturedCase.CASES)
            raise ParameterDomainError(
                "example", f"unknown case {name!r}, available: {available}"
            )

        return case


###############################################################################

ManufacturedCase.CASES = {
    "6.1": ManufacturedCase(
        "6.1", (0.0, 1.0, 0.0, 1.0), 1.0, 1.0, 0.5, SeparableProfile.SINE, "smooth"
    ),
    "6.2": ManufacturedCase(
        "6.2",
        (-1.0, 1.0, -1.0, 1.0),
        0.5,
        0.5,
        1.0,
        SeparableProfile.SQUARE,
        "H^3, not H^4",
    ),
    "6.3": ManufacturedCase(
        "6.3",
        (-1.0, 1.0, -1.0, 1.0),
        0.5,
        0.5,
        1.0,
        SeparableProfile.POWER,
        "H^3.5, not H^4",
    ),
    "6.4": ManufacturedCase(
        "6.4",
        (-1.0, 1.0, -1.0, 1.0),
        0.5,
        0.5,
        1.0,
        SeparableProfile.LINEAR,
        "not H^3",
    ),
}

###############################################################################
