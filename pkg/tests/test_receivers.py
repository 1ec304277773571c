import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risgf.complexmat import hermitian, log_det_hermitian
from risgf.receivers import (
    DetectionFailure,
    LinkParams,
    Receiver,
    detect,
    linear_post_sinr,
    mmse_filter,
    mmse_sic_sinr,
    mmse_sic_sinr_downdate,
    zf_filter,
)


def rayleigh(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def test_link_params_validation():
    with pytest.raises(ValueError):
        LinkParams(noise_var=0)
    with pytest.raises(ValueError):
        LinkParams(channel_uses=0)
    assert LinkParams.from_snr_db(10).noise_var == pytest.approx(0.1)


def test_zf_examples():
    np.testing.assert_allclose(zf_filter(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(zf_filter([[2.0]]), [[0.5]])
    np.testing.assert_allclose(zf_filter([[1.0], [1.0]]), [[0.5, 0.5]])


def test_zf_matches_pseudo_inverse():
    rng = np.random.default_rng(0)
    h = rayleigh(rng, 8, 5)
    np.testing.assert_allclose(zf_filter(h), np.linalg.pinv(h), atol=1e-12)


def test_zf_rank_deficiency():
    h = np.ones((3, 2))
    with pytest.raises(DetectionFailure):
        zf_filter(h)
    with pytest.raises(DetectionFailure):
        zf_filter(np.ones((2, 3)))


def test_mmse_examples():
    np.testing.assert_allclose(mmse_filter([[1.0]], LinkParams(noise_var=1.0)), [[0.5]])
    np.testing.assert_allclose(mmse_filter(np.eye(2), LinkParams(noise_var=1.0)), 0.5 * np.eye(2))
    rng = np.random.default_rng(1)
    h = rayleigh(rng, 6, 4)
    np.testing.assert_allclose(mmse_filter(h, LinkParams(noise_var=1e-12)), zf_filter(h), atol=1e-6)


def test_single_stream_sinr_ignores_filter_scale():
    h = np.array([[0.6 - 0.8j]])
    params = LinkParams(power=2.0, noise_var=0.5)
    for f in (0.1, 3.0 - 2.0j, -7j):
        sinr = linear_post_sinr(np.array([[f]]), h, params).sinr[0]
        assert sinr == pytest.approx(2.0 * 1.0 / 0.5, rel=1e-12)


def test_zf_sinr_identity():
    rng = np.random.default_rng(2)
    h = rayleigh(rng, 6, 4)
    params = LinkParams(power=1.5, noise_var=0.2)
    sinr = linear_post_sinr(zf_filter(h), h, params).sinr
    inv_diag = np.diag(np.linalg.inv(hermitian(h) @ h)).real
    np.testing.assert_allclose(sinr, params.power / (params.noise_var * inv_diag), rtol=1e-10)


def test_mmse_orthogonal_columns_decouple():
    q, _ = np.linalg.qr(rayleigh(np.random.default_rng(3), 5, 3))
    g = 2.5
    h = q * np.sqrt(g)
    params = LinkParams(power=1.0, noise_var=0.4)
    sinr = linear_post_sinr(mmse_filter(h, params), h, params).sinr
    np.testing.assert_allclose(sinr, g / 0.4, rtol=1e-10)


def test_sic_identity_channel():
    report = mmse_sic_sinr(np.eye(2), LinkParams(noise_var=1.0))
    np.testing.assert_allclose(report.sinr, [1.0, 1.0])
    assert report.decode_order.tolist() == [0, 1]
    fast = mmse_sic_sinr_downdate(np.eye(2), LinkParams(noise_var=1.0))
    np.testing.assert_allclose(fast.sinr, [1.0, 1.0])
    assert fast.decode_order.tolist() == [0, 1]


def test_sic_single_stream_is_mmse():
    rng = np.random.default_rng(4)
    h = rayleigh(rng, 4, 1)
    params = LinkParams(noise_var=0.3)
    np.testing.assert_allclose(
        mmse_sic_sinr(h, params).sinr, linear_post_sinr(mmse_filter(h, params), h, params).sinr, rtol=1e-12
    )


def test_sic_rejects_bad_order():
    with pytest.raises(ValueError):
        mmse_sic_sinr(np.eye(3), LinkParams(), order=[0, 0, 1])


@pytest.mark.parametrize("snr", [1.0, 10.0, 100.0])
@pytest.mark.parametrize("shape", [(6, 5), (4, 4), (3, 5)])
def test_sic_sum_rate_equals_log_det(snr, shape):
    rng = np.random.default_rng(5)
    h = rayleigh(rng, 200, *shape)
    n = shape[1]
    params = LinkParams(noise_var=1.0 / snr)
    target = np.linalg.slogdet(np.eye(n) + snr * hermitian(h) @ h)[1] / np.log(2)
    np.testing.assert_allclose(log_det_hermitian(np.eye(n) + snr * hermitian(h) @ h), target, rtol=1e-12)
    orders = np.argsort(rng.random((200, n)), axis=-1)
    for report in (
        mmse_sic_sinr(h, params),
        mmse_sic_sinr_downdate(h, params),
        mmse_sic_sinr(h, params, order=orders),
    ):
        total = np.log2(1 + report.sinr).sum(axis=-1)
        np.testing.assert_allclose(total, target, rtol=1e-8)


def test_downdate_matches_literal_procedure():
    rng = np.random.default_rng(6)
    for shape in ((6, 5), (6, 11), (10, 2)):
        h = rayleigh(rng, 500, *shape)
        for noise in (1.0, 0.03, 1e-3):
            params = LinkParams(noise_var=noise)
            slow = mmse_sic_sinr(h, params)
            fast = mmse_sic_sinr_downdate(h, params)
            np.testing.assert_array_equal(slow.decode_order, fast.decode_order)
            np.testing.assert_allclose(fast.sinr, slow.sinr, rtol=1e-9, atol=1e-12)


def test_detect_flags_zf_failures():
    rng = np.random.default_rng(7)
    h = rayleigh(rng, 3, 4, 2)
    h[1, :, 1] = h[1, :, 0]
    report = detect(h, Receiver.ZF, LinkParams())
    assert report.failed.tolist() == [False, True, False]
    assert (report.sinr[1] == 0).all() and (report.sinr[[0, 2]] > 0).all()
    wide = detect(rayleigh(rng, 2, 5), "zf", LinkParams())
    assert wide.failed and (wide.sinr == 0).all()


channel_shapes = st.tuples(st.integers(1, 6), st.integers(0, 3), st.integers(0, 2**32 - 1), st.floats(-10, 30))


@settings(max_examples=60, deadline=None)
@given(channel_shapes)
def test_receiver_invariants(args):
    n, extra, seed, snr_db = args
    m = n + extra
    rng = np.random.default_rng(seed)
    h = rayleigh(rng, m, n)
    params = LinkParams.from_snr_db(snr_db)
    fz = zf_filter(h)
    g = fz @ h
    assert np.max(np.abs(g - np.diag(np.diag(g)))) < 1e-9

    zf = linear_post_sinr(fz, h, params).sinr
    mmse = linear_post_sinr(mmse_filter(h, params), h, params).sinr
    sic = mmse_sic_sinr(h, params)
    assert np.all(mmse >= zf - 1e-9 * np.maximum(1, zf))
    assert sic.sinr[sic.decode_order[0]] >= mmse.max() - 1e-9 * max(1, mmse.max())
    for s in (zf, mmse, sic.sinr):
        assert np.all(np.isfinite(s)) and np.all(s >= 0)

    c = complex(rng.standard_normal(), rng.standard_normal())
    scaled = LinkParams(noise_var=params.noise_var * abs(c) ** 2)
    np.testing.assert_allclose(mmse_sic_sinr(c * h, scaled).sinr, sic.sinr, rtol=1e-9)
    np.testing.assert_allclose(
        linear_post_sinr(mmse_filter(c * h, scaled), c * h, scaled).sinr, mmse, rtol=1e-9
    )

    long_slot = LinkParams(params.power, params.noise_var, channel_uses=1000)
    np.testing.assert_allclose(linear_post_sinr(fz, h, long_slot).sinr, zf, rtol=1e-12)
    np.testing.assert_allclose(mmse_sic_sinr(h, long_slot).sinr, sic.sinr, rtol=1e-12)
