"""
Experiment files for the command-line runner.

An experiment file is a flat YAML (or JSON) mapping::

    sensors: 5
    slots: 6
    ris_elements: [0, 6]     # scalar or list; each value is a sweep variant
    phase_bits: 1
    phase_mode: fixed        # none | fixed | enumerate
    phase_indices: [0, 0, 0, 0, 0, 0]   # optional with fixed; defaults to all zeros
    scheme: shared           # dedicated | shared, scalar or list
    retransmissions: 0
    receivers: [zf, mmse, mmse-sic]     # or `receiver:` with one value
    rate: 2.0                # bits/s/Hz
    snr_db: [0, 5, 10]       # P/sigma^2 per sensor, dB
    trials: 200000
    seed: 1
"""

import itertools
from dataclasses import dataclass

import yaml

from .allocation import Scheme
from .channel import PhaseConfig, SystemDims
from .outage import ConfigError, ExperimentConfig
from .receivers import Receiver

FIELDS = {
    "sensors", "slots", "ris_elements", "phase_bits", "phase_mode", "phase_indices", "scheme",
    "retransmissions", "receiver", "receivers", "rate", "snr_db", "trials", "seed",
}
PHASE_MODES = ("none", "fixed", "enumerate")


def _as_list(value):
    return list(value) if isinstance(value, (list, tuple)) else [value]


def _int(doc, key, default=None):
    value = doc.get(key, default)
    if value is None or isinstance(value, bool) or int(value) != value:
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class ExperimentFile:
    """A parsed experiment file: shared settings plus the list of variants it expands to."""

    raw: dict
    phase_mode: str
    variants: tuple

    @property
    def seed(self):
        return self.variants[0].seed


def parse(doc, seed=None, independent_streams=False):
    """Build the experiment variants described by mapping `doc`.

    Raises ConfigError on malformed input.
    """
    if not isinstance(doc, dict):
        raise ConfigError("experiment file must be a mapping")
    unknown = set(doc) - FIELDS
    if unknown:
        raise ConfigError(f"unknown fields: {', '.join(sorted(unknown))}")
    if "receiver" in doc and "receivers" in doc:
        raise ConfigError("give either receiver or receivers, not both")

    try:
        sensors = _int(doc, "sensors")
        slots = _int(doc, "slots")
        bits = _int(doc, "phase_bits", 1)
        retransmissions = _int(doc, "retransmissions", 0)
        trials = _int(doc, "trials")
        seed = _int(doc, "seed", 0) if seed is None else int(seed)
        rate = float(doc["rate"])
        snrs = tuple(float(s) for s in _as_list(doc["snr_db"]))
        schemes = [Scheme(s) for s in _as_list(doc.get("scheme", "shared"))]
        receivers = [Receiver(r) for r in _as_list(doc.get("receivers", doc.get("receiver", "mmse")))]
        ks = [int(k) for k in _as_list(doc.get("ris_elements", 0))]
    except KeyError as exc:
        raise ConfigError(f"missing field {exc.args[0]}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None

    mode = doc.get("phase_mode", "fixed" if any(ks) else "none")
    if mode not in PHASE_MODES:
        raise ConfigError(f"phase_mode must be one of {PHASE_MODES}, got {mode!r}")
    if mode == "none" and any(ks):
        raise ConfigError("phase_mode none requires ris_elements 0")
    indices = doc.get("phase_indices")

    variants = []
    for i, (scheme, k, receiver) in enumerate(itertools.product(schemes, ks, receivers)):
        phase = None
        if k:
            chosen = tuple(indices) if indices is not None and mode == "fixed" else (0,) * k
            if len(chosen) != k:
                raise ConfigError(f"phase_indices has {len(chosen)} entries, ris_elements is {k}")
            try:
                phase = PhaseConfig(bits, chosen)
            except (TypeError, ValueError) as exc:
                raise ConfigError(str(exc)) from None
        variants.append(ExperimentConfig(
            dims=SystemDims(sensors, slots, k),
            scheme=scheme,
            retransmissions=retransmissions,
            receiver=receiver,
            phase=phase,
            rate=rate,
            snr_db=snrs,
            trials=trials,
            seed=seed,
            common_random_numbers=not independent_streams,
            stream=i if independent_streams else 0,
        ))
    return ExperimentFile(dict(doc), mode, tuple(variants))


def load(path, seed=None, independent_streams=False):
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    return parse(doc, seed=seed, independent_streams=independent_streams)
