###############################################################################
# tfac (C) tfac contributors 2026
#
# One-dimensional factors p(s) of separable manufactured profiles
# g(x, y) = c * p(x) * p(y), with first and second derivatives. Factors built
# from |s| are smooth on each side of s = 0 only
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, ClassVar

import numpy as np

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True)
class SeparableProfile:
    name: str
    """Short identifier"""

    p: Callable[[np.ndarray], np.ndarray]
    """Factor p(s)"""

    dp: Callable[[np.ndarray], np.ndarray]
    """Derivative p'(s)"""

    d2p: Callable[[np.ndarray], np.ndarray]
    """Second derivative p''(s), valid away from s = 0 for kinked factors"""

    kinked: bool = False
    """True when p is built from |s| and s = 0 is a kink line"""

    SINE: ClassVar[SeparableProfile]
    SQUARE: ClassVar[SeparableProfile]
    POWER: ClassVar[SeparableProfile]
    LINEAR: ClassVar[SeparableProfile]


###############################################################################

SeparableProfile.SINE = SeparableProfile(
    "sin(s)(1-s)",
    p=lambda s: np.sin(s) * (1.0 - s),
    dp=lambda s: np.cos(s) * (1.0 - s) - np.sin(s),
    d2p=lambda s: -np.sin(s) * (1.0 - s) - 2.0 * np.cos(s),
)

SeparableProfile.SQUARE = SeparableProfile(
    "s^2(1-|s|)",
    p=lambda s: s * s * (1.0 - np.abs(s)),
    dp=lambda s: 2.0 * s - 3.0 * s * np.abs(s),
    d2p=lambda s: 2.0 - 6.0 * np.abs(s),
    kinked=True,
)

SeparableProfile.POWER = SeparableProfile(
    "|s|^2.5(1-|s|)",
    p=lambda s: np.abs(s) ** 2.5 * (1.0 - np.abs(s)),
    dp=lambda s: np.sign(s) * (2.5 * np.abs(s) ** 1.5 - 3.5 * np.abs(s) ** 2.5),
    d2p=lambda s: 3.75 * np.abs(s) ** 0.5 - 8.75 * np.abs(s) ** 1.5,
    kinked=True,
)

SeparableProfile.LINEAR = SeparableProfile(
    "s(1-|s|)",
    p=lambda s: s * (1.0 - np.abs(s)),
    dp=lambda s: 1.0 - 2.0 * np.abs(s),
    d2p=lambda s: -2.0 * np.sign(s),
    kinked=True,
)

###############################################################################
