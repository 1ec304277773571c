"""
Rayleigh sub-channels and the RIS-composed effective channel.

The effective uplink channel seen by the base station is the direct path
plus the reflected path through ``K`` passive elements::

    H = H_direct + H_from_ris @ diag(phi) @ H_to_ris

with every sub-channel entry drawn i.i.d. zero-mean circularly-symmetric
complex Gaussian of unit variance. Each reflection coefficient ``phi_k`` is
a ``2**bits``-th root of unity.
"""

from dataclasses import dataclass, field

import numpy as np

from .complexmat import DimensionError

MAX_PHASE_BITS = 8


@dataclass(frozen=True)
class SystemDims:
    """Sizes of one uplink frame: sensors (streams), slots (virtual antennas) and RIS elements."""

    sensors: int
    slots: int
    ris_elements: int = 0

    def __post_init__(self):
        if self.sensors < 1 or self.slots < 1 or self.ris_elements < 0:
            raise DimensionError(
                f"invalid dimensions sensors={self.sensors}, slots={self.slots}, "
                f"ris_elements={self.ris_elements}"
            )


@dataclass(frozen=True)
class ChannelRealization:
    """One draw (or a batch of draws along the leading axes) of the three sub-channels.

    Attributes
    ----------
    direct : ndarray, shape (..., slots, sensors)
        Sensor to base station.
    to_ris : ndarray, shape (..., ris_elements, sensors)
        Sensor to RIS.
    from_ris : ndarray, shape (..., slots, ris_elements)
        RIS to base station.
    """

    direct: np.ndarray
    to_ris: np.ndarray
    from_ris: np.ndarray

    def __post_init__(self):
        m, n = self.direct.shape[-2:]
        k = self.to_ris.shape[-2]
        if self.to_ris.shape[-1] != n or self.from_ris.shape[-2:] != (m, k):
            raise DimensionError(
                f"inconsistent sub-channel shapes {self.direct.shape}, "
                f"{self.to_ris.shape}, {self.from_ris.shape}"
            )

    @property
    def dims(self):
        m, n = self.direct.shape[-2:]
        return SystemDims(sensors=n, slots=m, ris_elements=self.to_ris.shape[-2])


def phase_set(bits):
    """The ``2**bits`` available reflection coefficients, ordered by phase index."""
    if not 1 <= bits <= MAX_PHASE_BITS:
        raise ValueError(f"phase resolution must be in [1, {MAX_PHASE_BITS}] bits, got {bits}")
    levels = 2**bits
    values = np.exp(2j * np.pi * np.arange(levels) / levels)
    # Snap the exact quarter turns so that b=1 gives exactly +1/-1 and b=2 gives 1, j, -1, -j.
    values.real[np.abs(values.real) < 1e-15] = 0.0
    values.imag[np.abs(values.imag) < 1e-15] = 0.0
    return values


@dataclass(frozen=True)
class PhaseConfig:
    """Discrete RIS configuration: one phase index per element at a given resolution."""

    bits: int
    indices: tuple = ()
    coefficients: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        indices = tuple(int(m) for m in self.indices)
        values = phase_set(self.bits)
        for m in indices:
            if not 0 <= m < values.size:
                raise ValueError(f"phase index {m} out of range for {self.bits}-bit resolution")
        coefficients = values[list(indices)] if indices else np.empty(0, dtype=np.complex128)
        coefficients.setflags(write=False)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "coefficients", coefficients)

    def __len__(self):
        return len(self.indices)

    @classmethod
    def uniform(cls, elements, bits=1, index=0):
        """All elements set to the same phase index."""
        return cls(bits, (index,) * elements)


def sample_realization(rng, dims, size=None):
    """Draw unit-variance Rayleigh sub-channels.

    Parameters
    ----------
    rng : numpy.random.Generator
    dims : SystemDims
    size : int or tuple, optional
        Leading batch shape. None draws a single realization.

    Notes
    -----
    The direct channel is drawn first, so two configurations that differ
    only in ``ris_elements`` see the same direct path from the same stream.
    """
    batch = () if size is None else tuple(np.atleast_1d(size))
    m, n, k = dims.slots, dims.sensors, dims.ris_elements

    def zmcscg(shape):
        draws = rng.standard_normal(batch + shape + (2,))
        return (draws[..., 0] + 1j * draws[..., 1]) * np.sqrt(0.5)

    direct = zmcscg((m, n))
    to_ris = zmcscg((k, n))
    from_ris = zmcscg((m, k))
    return ChannelRealization(direct, to_ris, from_ris)


def effective_channel(realization, phase=None):
    """Compose ``direct + from_ris @ diag(phi) @ to_ris``.

    `phase` may be None (or empty) only when the realization has no RIS elements.
    """
    k = realization.to_ris.shape[-2]
    phi = np.empty(0) if phase is None else phase.coefficients
    if phi.size != k:
        raise DimensionError(f"phase configuration has {phi.size} elements, channel has {k}")
    if k == 0:
        return realization.direct
    # Scale the columns of the RIS->BS channel instead of forming diag(phi).
    return realization.direct + (realization.from_ris * phi) @ realization.to_ris
