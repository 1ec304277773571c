"""
Exhaustive search over discrete RIS phase configurations.

Every configuration is scored on the same channel realizations: each block
of trials is drawn once and then evaluated under all ``2**(bits*K)``
configurations. Differences between rows therefore come from the phases
alone, not from sampling noise in the channels.
"""

import itertools
from dataclasses import dataclass

from . import channel
from .channel import PhaseConfig
from .outage import OutageEstimate, OutageTally, block_rng, fan_out, outage_from_channel, split_blocks

MAX_SEARCH_BITS = 24


class SearchTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PhaseTableRow:
    phase: PhaseConfig
    tally: OutageTally

    @property
    def phase_indices(self):
        return self.phase.indices

    @property
    def coefficients(self):
        return self.phase.coefficients

    @property
    def per_sensor(self):
        return self.tally.estimates()

    @property
    def worst_sensor_outage(self) -> OutageEstimate:
        return self.tally.worst


def enumerate_configs(elements, bits=1):
    """All phase configurations in lexicographic order of their index tuples."""
    if elements < 1 or bits < 1:
        raise ValueError("need at least one element and one bit of resolution")
    if bits * elements > MAX_SEARCH_BITS:
        raise SearchTooLarge(f"2**{bits * elements} configurations exceed the search limit 2**{MAX_SEARCH_BITS}")
    return [PhaseConfig(bits, idx) for idx in itertools.product(range(2**bits), repeat=elements)]


def _tally_configs(base, configs, snr_db, blocks, hook=None):
    tallies = [OutageTally.empty(base.dims.sensors) for _ in configs]
    for block, size in blocks:
        rng = block_rng(base.seed, base.stream, 0, block)
        real = channel.sample_realization(rng, base.dims, size=size)
        for i, phase in enumerate(configs):
            if hook is not None:
                hook(block, i, real)
            h = channel.effective_channel(real, phase)
            tallies[i].add(outage_from_channel(h, base, snr_db))
    return tallies


def evaluate_configs(base, snr_db, bits=None, workers=1, hook=None):
    """Score every phase configuration of ``base.dims.ris_elements`` elements.

    Parameters
    ----------
    base : ExperimentConfig
        Scenario to evaluate; its own ``phase`` is ignored.
    snr_db : float
    bits : int, optional
        Phase resolution; defaults to that of ``base.phase``, else 1.
    workers : int
    hook : callable, optional
        Called as ``hook(block_index, config_index, realization)`` before
        each configuration is scored on a block. Requires ``workers == 1``.

    Returns
    -------
    list of PhaseTableRow
        Sorted by worst-sensor outage, ties kept in enumeration order.
    """
    k = base.dims.ris_elements
    if k < 1:
        raise ValueError("phase search needs at least one RIS element")
    if bits is None:
        bits = base.phase.bits if base.phase is not None else 1
    if hook is not None and workers > 1:
        raise ValueError("instrumentation hooks only run in-process (workers=1)")
    configs = enumerate_configs(k, bits)
    base.plan  # fail early on capacity errors

    jobs = [(base, configs, snr_db, chunk, hook) for chunk in split_blocks(base.trials, workers)]
    totals = [OutageTally.empty(base.dims.sensors) for _ in configs]
    for part in fan_out(_tally_configs, jobs, workers):
        for total, tally in zip(totals, part):
            total.merge(tally)
    rows = [PhaseTableRow(phase, tally) for phase, tally in zip(configs, totals)]
    return sorted(rows, key=lambda r: r.worst_sensor_outage.outage_events)


def best_config(rows):
    """Configuration with the lowest worst-sensor outage; ties go to the smaller index tuple."""
    if not rows:
        raise ValueError("no rows to choose from")
    best = min(rows, key=lambda r: (r.worst_sensor_outage.p_hat, r.phase_indices))
    return best.phase
