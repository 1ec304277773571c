"""
Monte Carlo outage engine.

A sensor is in outage when its rate ``R`` exceeds ``log2(1 + SINR)``. The
engine draws channel realizations in fixed-size blocks. Block ``b`` always
comes from the same substream, keyed by ``(seed, stream, snr key, b)``, so
trial ``t`` (block ``t // BLOCK_TRIALS``, offset ``t % BLOCK_TRIALS``) sees
the same channel however blocks are spread over workers. Workers return
integer event counts, and their sum does not depend on scheduling.

Under common random numbers (the default) the SNR key is constant. Every
SNR point, receiver and RIS phase configuration of one seed then
evaluates the same channel draws.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import allocation, channel, receivers
from .allocation import Scheme
from .channel import PhaseConfig, SystemDims
from .complexmat import DimensionError
from .receivers import LinkParams, Receiver

BLOCK_TRIALS = 4096


class ConfigError(ValueError):
    """Inconsistent experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    dims: SystemDims
    scheme: Scheme = Scheme.SHARED
    retransmissions: int = 0
    receiver: Receiver = Receiver.MMSE
    phase: PhaseConfig = None
    rate: float = 2.0
    snr_db: tuple = (10.0,)
    trials: int = 200_000
    seed: int = 0
    common_random_numbers: bool = True
    stream: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        object.__setattr__(self, "receiver", Receiver(self.receiver))
        object.__setattr__(self, "snr_db", tuple(float(s) for s in self.snr_db))
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not self.rate >= 0:
            raise ConfigError("rate must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        k = self.dims.ris_elements
        if self.phase is None and k:
            raise ConfigError(f"{k} RIS elements need a phase configuration")
        if self.phase is not None and len(self.phase) != k:
            raise DimensionError(f"phase configuration has {len(self.phase)} elements, dims say {k}")

    @property
    def plan(self):
        return allocation.build_plan(self.scheme, self.dims, self.retransmissions)

    def snr_key(self, snr_index):
        return 0 if self.common_random_numbers else snr_index + 1

    def with_phase(self, phase):
        dims = replace(self.dims, ris_elements=0 if phase is None else len(phase))
        return replace(self, dims=dims, phase=phase)


@dataclass(frozen=True)
class OutageEstimate:
    sensor_id: int
    outage_events: int
    trials: int

    @property
    def p_hat(self):
        return self.outage_events / self.trials

    @property
    def std_err(self):
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)


@dataclass
class OutageTally:
    """Integer event counts accumulated over trials.

    ``events[i]`` counts outages of sensor ``i``. ``sq_sum`` is the sum over
    trials of the squared number of sensors in outage in that trial. It
    gives the exact standard error of the sensor-averaged outage even
    when sensors are correlated.
    """

    events: np.ndarray
    trials: int = 0
    sq_sum: int = 0

    @classmethod
    def empty(cls, sensors):
        return cls(np.zeros(sensors, dtype=np.int64))

    def add(self, outage):
        """Accumulate a boolean outage matrix of shape (trials, sensors)."""
        per_trial = outage.sum(axis=-1, dtype=np.int64)
        self.events += outage.sum(axis=0, dtype=np.int64)
        self.trials += outage.shape[0]
        self.sq_sum += int(np.dot(per_trial, per_trial))
        return self

    def merge(self, other):
        self.events += other.events
        self.trials += other.trials
        self.sq_sum += other.sq_sum
        return self

    def estimates(self):
        return [OutageEstimate(i, int(e), self.trials) for i, e in enumerate(self.events)]

    @property
    def mean_outage(self):
        """Outage probability averaged over sensors."""
        return float(self.events.sum()) / (self.trials * self.events.size)

    @property
    def mean_std_err(self):
        n = self.events.size
        mean_count = float(self.events.sum()) / self.trials
        var = max(self.sq_sum / self.trials - mean_count**2, 0.0)
        return math.sqrt(var / self.trials) / n

    @property
    def worst(self):
        return max(self.estimates(), key=lambda e: (e.outage_events, -e.sensor_id))


def max_rate(sinr):
    """Largest reliable rate ``log2(1 + sinr)`` in bits/s/Hz."""
    return np.log2(1.0 + np.asarray(sinr, dtype=float))


def siso_outage_closed_form(snr_linear, rate):
    """Exact outage of a unit-variance Rayleigh scalar link."""
    return -math.expm1(-(2.0**rate - 1.0) / snr_linear)


def block_rng(seed, stream, snr_key, block):
    """Generator for one block of trials."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream, snr_key, block)))


def block_sizes(trials):
    full, rest = divmod(trials, BLOCK_TRIALS)
    return [BLOCK_TRIALS] * full + ([rest] if rest else [])


def outage_from_channel(h, config, snr_db):
    """Boolean outage matrix (..., sensors) for effective channels `h` before allocation."""
    params = LinkParams.from_snr_db(snr_db)
    report = receivers.detect(allocation.apply_plan(h, config.plan), config.receiver, params)
    # rate > log2(1 + sinr)  <=>  1 + sinr < 2**rate; the second form avoids log of the batch.
    return (1.0 + report.sinr < 2.0**config.rate) | report.failed[..., None]


def simulate(rng, config, snr_db, size):
    """Draw `size` realizations from `rng` and return their outage matrix (size, sensors)."""
    real = channel.sample_realization(rng, config.dims, size=size)
    return outage_from_channel(channel.effective_channel(real, config.phase), config, snr_db)


def run_trial(rng, config, snr_db):
    """One realization; list of per-sensor outage flags."""
    return [bool(x) for x in simulate(rng, config, snr_db, 1)[0]]


def _tally_blocks(config, snr_db, snr_key, blocks):
    tally = OutageTally.empty(config.dims.sensors)
    for block, size in blocks:
        rng = block_rng(config.seed, config.stream, snr_key, block)
        tally.add(simulate(rng, config, snr_db, size))
    return tally


def split_blocks(trials, workers):
    """Contiguous runs of (block index, size) pairs, one run per worker."""
    blocks = list(enumerate(block_sizes(trials)))
    workers = max(1, min(workers, len(blocks)))
    step = math.ceil(len(blocks) / workers)
    return [blocks[i:i + step] for i in range(0, len(blocks), step)]


def fan_out(fn, jobs, workers):
    """Run ``fn(*args)`` for each args tuple, in a process pool when workers > 1."""
    if workers <= 1 or len(jobs) <= 1:
        return [fn(*args) for args in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args) for args in jobs]
        return [f.result() for f in futures]


def outage_tally(config, snr_db, snr_index=None, workers=1):
    """Aggregate outage counts of `config` at one SNR point.

    `snr_index` selects the substream when common random numbers are off;
    by default it is the position of `snr_db` in ``config.snr_db``.
    """
    if snr_index is None:
        snr_index = config.snr_db.index(snr_db) if snr_db in config.snr_db else 0
    config.plan  # fail early on capacity errors
    snr_key = config.snr_key(snr_index)
    jobs = [(config, snr_db, snr_key, chunk) for chunk in split_blocks(config.trials, workers)]
    total = OutageTally.empty(config.dims.sensors)
    for part in fan_out(_tally_blocks, jobs, workers):
        total.merge(part)
    return total


def estimate_outage(config, snr_db, snr_index=None, workers=1):
    """Per-sensor outage estimates at one SNR point."""
    return outage_tally(config, snr_db, snr_index, workers).estimates()


@dataclass
class SweepPoint:
    snr_db: float
    tally: OutageTally = field(repr=False)

    @property
    def estimates(self):
        return self.tally.estimates()


def sweep(config, workers=1):
    """Outage tallies for every SNR point of `config`."""
    return [SweepPoint(s, outage_tally(config, s, i, workers)) for i, s in enumerate(config.snr_db)]
