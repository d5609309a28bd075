"""Test ``coeffs.truncation`` module."""

import numpy as np
import pytest

from loglip_sde.coeffs import CoefficientField, TruncatedField, truncate_field
from loglip_sde.coeffs.truncation import ball_probes


@pytest.fixture
def square_field():
    """b(x) = x**2 in one dimension, no noise."""
    return CoefficientField(
        dim_state=1,
        dim_noise=1,
        drift=lambda x: x**2,
        diffusion=lambda x: np.zeros((x.shape[0], 1, 1)),
        drift_jacobian=lambda x: (2 * x)[:, :, None],
        label="square",
    )


def test_square_drift_truncation(square_field):
    """The probes contain +-R, so the probed sup of x**2 on |x| <= 2 is 4."""
    field = truncate_field(square_field, 2.0, safety_factor=1.0)

    assert isinstance(field, TruncatedField)
    assert field.truncation.m_R == pytest.approx(4.0)
    assert field.truncation.clip == pytest.approx(5.0)
    np.testing.assert_allclose(field.drift(np.array([[1.0], [3.0], [-3.0]]))[:, 0], [1.0, 5.0, 5.0])
    assert field.is_bounded
    assert field.base is square_field


def test_truncation_masks_jacobian(square_field):
    field = truncate_field(square_field, 2.0, safety_factor=1.0)

    jac = field.drift_jac(np.array([[1.0], [3.0]]))

    np.testing.assert_allclose(jac[:, 0, 0], [2.0, 0.0])


def test_truncation_is_identity_on_probes(square_field):
    field = truncate_field(square_field, 2.0)
    probes = ball_probes(1, 2.0, 256)

    np.testing.assert_array_equal(field.drift(probes), square_field.drift(probes))


def test_ball_probes_inside_ball():
    probes = ball_probes(3, 1.5, 100, seed=1)

    assert probes.shape == (1 + 6 + 100, 3)
    assert np.all(np.linalg.norm(probes, axis=1) <= 1.5 + 1e-12)


@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"R": 0.0}, "radius R must be positive"),
        ({"R": 1.0, "safety_factor": 0.5}, "safety_factor must be at least 1"),
        ({"R": 1.0, "probe_count": 0}, "probe_count must be positive"),
    ],
)
def test_invalid_truncation(square_field, kwargs, match):
    with pytest.raises(ValueError, match=match):
        truncate_field(square_field, **kwargs)
