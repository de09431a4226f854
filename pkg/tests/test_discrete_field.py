import numpy as np
import pytest

from tests.conftest import discrete_field_mod, field_role_mod

DiscreteField = discrete_field_mod.DiscreteField
FieldRole = field_role_mod.FieldRole


class TestDiscreteField:
    @pytest.mark.parametrize("role", list(FieldRole))
    def test_zeros(self, unit_space, role: FieldRole):
        field = DiscreteField.zeros(unit_space, role)

        assert field.role == role
        assert field.coefficients.shape == (unit_space.dof_count(role),)
        assert not np.any(field.coefficients)
        assert field.is_finite()

    def test_coefficients_are_copied_and_read_only(self, unit_space):
        source = np.ones(unit_space.n_u)
        field = DiscreteField(unit_space, FieldRole.SCALAR, source)
        source[0] = 5.0

        assert field.coefficients[0] == 1.0
        with pytest.raises(ValueError):
            field.coefficients[0] = 2.0

    def test_rejects_wrong_length(self, unit_space):
        with pytest.raises(ValueError) as info:
            DiscreteField(unit_space, FieldRole.FLUX, np.zeros(unit_space.n_u))
        assert "FLUX" in str(info.value)

    def test_is_finite(self, unit_space):
        values = np.zeros(unit_space.n_u)
        values[-1] = np.nan

        assert not DiscreteField(unit_space, FieldRole.SCALAR, values).is_finite()
