import numpy as np
import pytest

from risgf.channel import (
    ChannelRealization,
    PhaseConfig,
    SystemDims,
    effective_channel,
    phase_set,
    sample_realization,
)
from risgf.complexmat import DimensionError


def scalar_realization(direct, to_ris, from_ris):
    return ChannelRealization(np.array([[direct]], complex), np.array([[to_ris]], complex), np.array([[from_ris]], complex))


def test_phase_set_examples():
    np.testing.assert_array_equal(phase_set(1), [1, -1])
    np.testing.assert_array_equal(phase_set(2), [1, 1j, -1, -1j])
    values = phase_set(3)
    assert values.size == 8
    np.testing.assert_allclose(np.abs(values), 1.0, atol=1e-12)
    assert len({complex(round(v.real, 9), round(v.imag, 9)) for v in values}) == 8


@pytest.mark.parametrize("bits", [0, 9])
def test_phase_set_range(bits):
    with pytest.raises(ValueError):
        phase_set(bits)


def test_phase_config_from_indices():
    cfg = PhaseConfig(2, (0, 1, 2, 3))
    np.testing.assert_allclose(cfg.coefficients, np.exp(2j * np.pi * np.arange(4) / 4), atol=1e-15)
    with pytest.raises(ValueError):
        PhaseConfig(1, (2,))
    for bits in range(1, 9):
        cfg = PhaseConfig(bits, tuple(range(2**bits)))
        assert np.max(np.abs(np.abs(cfg.coefficients) - 1)) <= 1e-12


def test_dims_validation():
    with pytest.raises(DimensionError):
        SystemDims(0, 1)
    with pytest.raises(DimensionError):
        SystemDims(1, 1, -1)


def test_sample_shapes_and_determinism():
    dims = SystemDims(sensors=2, slots=3, ris_elements=4)
    a = sample_realization(np.random.default_rng(7), dims)
    b = sample_realization(np.random.default_rng(7), dims)
    assert a.direct.shape == (3, 2) and a.to_ris.shape == (4, 2) and a.from_ris.shape == (3, 4)
    for x, y in ((a.direct, b.direct), (a.to_ris, b.to_ris), (a.from_ris, b.from_ris)):
        np.testing.assert_array_equal(x, y)
    assert a.dims == dims


def test_sample_unit_variance():
    real = sample_realization(np.random.default_rng(0), SystemDims(1, 1, 0), size=1_000_000)
    h = real.direct[:, 0, 0]
    assert abs(np.mean(np.abs(h) ** 2) - 1.0) < 0.01
    # circular symmetry: real and imaginary parts each carry half the power, uncorrelated
    assert abs(np.var(h.real) - 0.5) < 0.005 and abs(np.var(h.imag) - 0.5) < 0.005
    assert abs(np.mean(h.real * h.imag)) < 0.005
    assert abs(np.mean(h)) < 0.005


def test_direct_path_shared_across_ris_sizes():
    a = sample_realization(np.random.default_rng(3), SystemDims(2, 4, 0), size=10)
    b = sample_realization(np.random.default_rng(3), SystemDims(2, 4, 6), size=10)
    np.testing.assert_array_equal(a.direct, b.direct)


def test_effective_channel_examples():
    real = scalar_realization(1, 1, 1)
    assert effective_channel(real, PhaseConfig(1, (1,)))[0, 0] == 0
    assert effective_channel(real, PhaseConfig(1, (0,)))[0, 0] == 2
    rng = np.random.default_rng(1)
    real = sample_realization(rng, SystemDims(3, 4, 0))
    np.testing.assert_array_equal(effective_channel(real), real.direct)
    np.testing.assert_array_equal(effective_channel(real, PhaseConfig(1, ())), real.direct)


def test_effective_channel_length_mismatch():
    real = sample_realization(np.random.default_rng(1), SystemDims(2, 2, 3))
    with pytest.raises(DimensionError):
        effective_channel(real, PhaseConfig(1, (0, 0)))
    with pytest.raises(DimensionError):
        effective_channel(real, None)


def test_effective_channel_matches_explicit_diagonal():
    rng = np.random.default_rng(5)
    real = sample_realization(rng, SystemDims(3, 5, 4), size=7)
    phase = PhaseConfig(2, (0, 3, 1, 2))
    expected = real.direct + real.from_ris @ np.diag(phase.coefficients) @ real.to_ris
    np.testing.assert_allclose(effective_channel(real, phase), expected, atol=1e-13)


def test_effective_channel_linearity_and_conjugation():
    rng = np.random.default_rng(6)
    dims = SystemDims(2, 3, 4)
    a = sample_realization(rng, dims)
    extra = sample_realization(rng, dims).direct
    phase = PhaseConfig(3, (1, 5, 2, 7))
    shifted = ChannelRealization(a.direct + extra, a.to_ris, a.from_ris)
    np.testing.assert_allclose(effective_channel(shifted, phase), effective_channel(a, phase) + extra, atol=1e-13)

    zero = np.zeros_like(a.direct)
    conj_phase = PhaseConfig(3, tuple((-m) % 8 for m in phase.indices))
    lhs = effective_channel(ChannelRealization(zero, a.to_ris, a.from_ris), conj_phase)
    rhs = np.conj(effective_channel(ChannelRealization(zero, np.conj(a.to_ris), np.conj(a.from_ris)), phase))
    np.testing.assert_allclose(lhs, rhs, atol=1e-13)


def test_ris_adds_energy():
    rng = np.random.default_rng(9)
    real = sample_realization(rng, SystemDims(1, 1, 2), size=200_000)
    eff = np.abs(effective_channel(real, PhaseConfig.uniform(2))[:, 0, 0]) ** 2
    direct = np.abs(real.direct[:, 0, 0]) ** 2
    diff = eff.mean() - direct.mean()
    se = np.sqrt(eff.var() / eff.size + direct.var() / direct.size)
    assert diff > 3 * se
