"""
Linear MIMO receivers and their post-processing SINR.

Each sensor is one transmit stream and each slot one virtual receive
antenna, so a frame is an ``M x N`` MIMO channel ``H``. All functions take
a single channel or a batch of channels stacked along leading axes.

Filters are ``N x M``:

* zero forcing, the left pseudo-inverse ``(H^H H)^-1 H^H``;
* MMSE, ``(H^H H + sigma^2/P I)^-1 H^H``;
* MMSE-SIC, the MMSE filter recomputed after each decoded stream is
  cancelled, decoding the strongest remaining stream first.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .complexmat import (
    DimensionError,
    SingularMatrixError,
    as_matrix,
    cholesky,
    cholesky_solve,
    hermitian,
)


class DetectionFailure(SingularMatrixError):
    """The channel Gram matrix is rank deficient; zero forcing cannot separate the streams."""


class Receiver(str, enum.Enum):
    ZF = "zf"
    MMSE = "mmse"
    MMSE_SIC = "mmse-sic"


@dataclass(frozen=True)
class LinkParams:
    """Per-sensor symbol power, noise variance and slot length in channel uses."""

    power: float = 1.0
    noise_var: float = 1.0
    channel_uses: int = 1

    def __post_init__(self):
        if not (self.power > 0 and self.noise_var > 0 and self.channel_uses >= 1):
            raise ValueError(f"invalid link parameters {self}")

    @classmethod
    def from_snr_db(cls, snr_db, power=1.0, channel_uses=1):
        return cls(power=power, noise_var=power * 10.0 ** (-snr_db / 10.0), channel_uses=channel_uses)

    @property
    def noise_to_power(self):
        return self.noise_var / self.power


@dataclass(frozen=True, eq=False)
class SinrReport:
    """Per-stream SINR (linear) with the order in which streams were decoded.

    ``failed`` flags realizations where detection was impossible (zero
    forcing on a rank-deficient channel); their SINRs are reported as 0.
    """

    sinr: np.ndarray
    decode_order: np.ndarray
    receiver: Receiver = None
    failed: np.ndarray = None

    def __post_init__(self):
        if self.failed is None:
            object.__setattr__(self, "failed", np.zeros(self.sinr.shape[:-1], dtype=bool))


def _identity_order(shape):
    return np.broadcast_to(np.arange(shape[-1]), shape).copy()


def _regularized_gram(h, alpha):
    gram = hermitian(h) @ h
    if alpha:
        n = gram.shape[-1]
        gram = gram + alpha * np.eye(n)
    return gram


def zf_filter(h):
    """Zero-forcing filter ``(H^H H)^-1 H^H``.

    Raises
    ------
    DetectionFailure
        If ``H^H H`` fails the pivot test for any channel in the batch.
    """
    h = as_matrix(h)
    if h.shape[-2] < h.shape[-1]:
        raise DetectionFailure(f"zero forcing needs slots >= sensors, got {h.shape[-2:]}")
    L, ok = cholesky(_regularized_gram(h, 0.0))
    if not np.all(ok):
        raise DetectionFailure("channel is rank deficient")
    return cholesky_solve(L, hermitian(h))


def mmse_filter(h, params):
    """MMSE filter ``(H^H H + sigma^2/P I)^-1 H^H``."""
    h = as_matrix(h)
    L, _ = cholesky(_regularized_gram(h, params.noise_to_power))
    return cholesky_solve(L, hermitian(h))


def post_sinr(f, h, params):
    """Post-filter SINR of every stream as a plain array of shape (..., N).

    The noise reaching stream ``i`` after filtering has power
    ``sigma^2 * L * sum_m |F[i, m]|^2``; signal and interference carry the
    same factor ``L``, so the slot length cancels.
    """
    f = np.asarray(f)
    h = np.asarray(h)
    if f.shape[-1] != h.shape[-2] or f.shape[-2] != h.shape[-1]:
        raise DimensionError(f"filter {f.shape} does not match channel {h.shape}")
    g = f @ h
    energy = g.real**2 + g.imag**2
    signal = np.diagonal(energy, axis1=-2, axis2=-1)
    interference = np.maximum(np.sum(energy, axis=-1) - signal, 0.0)
    filtered_noise = np.sum(f.real**2 + f.imag**2, axis=-1)

    uses = params.channel_uses
    num = params.power * uses * signal
    den = params.power * uses * interference + params.noise_var * uses * filtered_noise
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = np.where(num > 0, num / den, 0.0)
    return sinr


def linear_post_sinr(f, h, params, receiver=None):
    """Wrap :func:`post_sinr` in a report with the identity decode order."""
    sinr = post_sinr(f, h, params)
    return SinrReport(sinr, _identity_order(sinr.shape), receiver)


def mmse_sic_sinr(h, params, order=None):
    """Successive MMSE detection with cancellation.

    At every stage the MMSE filter is built for the streams still undecoded,
    the stream with the largest SINR is decoded (lowest index on ties), and
    its column is cancelled. Cancelled columns are zeroed rather than
    deleted; this leaves the Gram matrix block diagonal, so the remaining
    streams see exactly the sub-channel filter while batch shapes stay fixed.

    Parameters
    ----------
    h : array_like, shape (..., M, N)
    params : LinkParams
    order : array_like of int, shape (N,) or (..., N), optional
        Force this decode order instead of the max-SINR ordering.
    """
    h = as_matrix(h)
    n = h.shape[-1]
    batch = h.shape[:-2]
    if order is not None:
        order = np.broadcast_to(np.asarray(order, dtype=np.intp), batch + (n,))
        if not np.all(np.sort(order, axis=-1) == np.arange(n)):
            raise ValueError("decode order must be a permutation of the stream indices")

    alpha = params.noise_to_power
    active = np.ones(batch + (n,), dtype=bool)
    sinr = np.zeros(batch + (n,))
    decode_order = np.empty(batch + (n,), dtype=np.intp)
    for stage in range(n):
        sub = h * active[..., None, :]
        L, _ = cholesky(_regularized_gram(sub, alpha))
        f = cholesky_solve(L, hermitian(sub))
        stage_sinr = post_sinr(f, sub, params)
        if order is None:
            pick = np.argmax(np.where(active, stage_sinr, -np.inf), axis=-1)
        else:
            pick = order[..., stage]
        pick = pick[..., None]
        np.put_along_axis(sinr, pick, np.take_along_axis(stage_sinr, pick, axis=-1), axis=-1)
        np.put_along_axis(active, pick, False, axis=-1)
        decode_order[..., stage] = pick[..., 0]
    return SinrReport(sinr, decode_order, Receiver.MMSE_SIC)


def mmse_sic_sinr_downdate(h, params):
    """Same result as :func:`mmse_sic_sinr` with optimal ordering, much cheaper.

    With ``W = (H^H H + a I)^-1`` and ``a = sigma^2/P``, the MMSE SINR of
    stream ``i`` is ``1 / (a W[i, i]) - 1``. Cancelling stream ``j`` turns
    ``W`` into the inverse for the remaining streams through the rank-one
    downdate ``W - W[:, j] W[j, :] / W[j, j]``, so only one inversion is
    needed per channel.
    """
    h = as_matrix(h)
    n = h.shape[-1]
    batch = h.shape[:-2]
    alpha = params.noise_to_power
    L, _ = cholesky(_regularized_gram(h, alpha))
    w = cholesky_solve(L, np.broadcast_to(np.eye(n, dtype=np.complex128), batch + (n, n)))

    active = np.ones(batch + (n,), dtype=bool)
    sinr = np.zeros(batch + (n,))
    decode_order = np.empty(batch + (n,), dtype=np.intp)
    for stage in range(n):
        diag = np.diagonal(w, axis1=-2, axis2=-1).real
        with np.errstate(divide="ignore"):
            stage_sinr = np.where(active, 1.0 / (alpha * diag) - 1.0, -np.inf)
        pick = np.argmax(stage_sinr, axis=-1)[..., None]
        np.put_along_axis(sinr, pick, np.maximum(np.take_along_axis(stage_sinr, pick, axis=-1), 0.0), axis=-1)
        np.put_along_axis(active, pick, False, axis=-1)
        decode_order[..., stage] = pick[..., 0]
        if stage + 1 < n:
            col = np.take_along_axis(w, pick[..., None, :], axis=-1)  # (..., n, 1)
            row = np.take_along_axis(w, pick[..., :, None], axis=-2)  # (..., 1, n)
            pivot = np.take_along_axis(col, pick[..., None], axis=-2)  # (..., 1, 1)
            w = w - col * (row / pivot)
    return SinrReport(sinr, decode_order, Receiver.MMSE_SIC)


def detect(h, receiver, params):
    """Per-stream SINR of `receiver` on a channel or batch of channels.

    Unlike :func:`zf_filter`, rank-deficient channels under zero forcing do
    not raise: they are flagged in ``SinrReport.failed`` with zero SINR.
    """
    receiver = Receiver(receiver)
    h = as_matrix(h)
    if receiver is Receiver.MMSE_SIC:
        return mmse_sic_sinr_downdate(h, params)
    if receiver is Receiver.MMSE:
        return linear_post_sinr(mmse_filter(h, params), h, params, receiver)

    batch = h.shape[:-2]
    if h.shape[-2] < h.shape[-1]:
        sinr = np.zeros(batch + h.shape[-1:])
        return SinrReport(sinr, _identity_order(sinr.shape), receiver, np.ones(batch, dtype=bool))
    L, ok = cholesky(_regularized_gram(h, 0.0))
    f = cholesky_solve(L, hermitian(h))
    sinr = np.where(ok[..., None], post_sinr(f, h, params), 0.0)
    return SinrReport(sinr, _identity_order(sinr.shape), receiver, ~ok)
