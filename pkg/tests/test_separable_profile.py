import numpy as np
import pytest

from tests.conftest import separable_profile_mod

SeparableProfile = separable_profile_mod.SeparableProfile

PROFILES = [
    SeparableProfile.SINE,
    SeparableProfile.SQUARE,
    SeparableProfile.POWER,
    SeparableProfile.LINEAR,
]

POINTS = np.array([-0.7, -0.3, 0.2, 0.55, 0.9])


@pytest.mark.parametrize("profile", PROFILES, ids=lambda profile: profile.name)
class TestSeparableProfile:
    def test_first_derivative(self, profile: SeparableProfile):
        step = 1e-5
        estimate = (profile.p(POINTS + step) - profile.p(POINTS - step)) / (2 * step)

        assert np.allclose(profile.dp(POINTS), estimate, atol=1e-8)

    def test_second_derivative(self, profile: SeparableProfile):
        step = 1e-4
        estimate = (
            profile.p(POINTS + step) - 2 * profile.p(POINTS) + profile.p(POINTS - step)
        ) / step**2

        assert np.allclose(profile.d2p(POINTS), estimate, atol=1e-5)

    def test_vanishes_at_the_ends(self, profile: SeparableProfile):
        ends = np.array([0.0, 1.0]) if profile is SeparableProfile.SINE else [-1.0, 1.0]

        assert np.allclose(profile.p(np.asarray(ends)), 0.0, atol=1e-15)


class TestKinks:
    def test_only_abs_profiles_are_kinked(self):
        assert not SeparableProfile.SINE.kinked
        assert all(profile.kinked for profile in PROFILES[1:])

    def test_linear_second_derivative_jumps(self):
        d2p = SeparableProfile.LINEAR.d2p

        assert d2p(np.array(-1e-3)) == pytest.approx(2.0)
        assert d2p(np.array(1e-3)) == pytest.approx(-2.0)
