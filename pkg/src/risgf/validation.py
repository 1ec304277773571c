"""Self-checks run by ``risgf validate``: analytic oracles and exact identities."""

from dataclasses import dataclass

import numpy as np

from . import channel
from .channel import PhaseConfig, SystemDims
from .complexmat import hermitian, log_det_hermitian
from .outage import ExperimentConfig, estimate_outage, siso_outage_closed_form
from .receivers import LinkParams, Receiver, detect, mmse_sic_sinr, zf_filter


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    limit: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.value:.3e} (limit {self.limit:.3e})"


def _random_channels(rng, count, slots, sensors, ris_elements=0):
    dims = SystemDims(sensors, slots, ris_elements)
    real = channel.sample_realization(rng, dims, size=count)
    phase = PhaseConfig.uniform(ris_elements) if ris_elements else None
    return channel.effective_channel(real, phase)


def check_siso_oracle(trials=200_000, seed=0, workers=1):
    """Largest |p_hat - closed form| in standard errors over the SNR grid, per receiver."""
    results = []
    snrs = (0.0, 5.0, 10.0, 15.0, 20.0)
    for receiver in (Receiver.ZF, Receiver.MMSE):
        cfg = ExperimentConfig(SystemDims(1, 1, 0), receiver=receiver, rate=2.0, snr_db=snrs, trials=trials, seed=seed)
        worst = 0.0
        for snr in snrs:
            est = estimate_outage(cfg, snr, workers=workers)[0]
            exact = siso_outage_closed_form(10 ** (snr / 10), 2.0)
            worst = max(worst, abs(est.p_hat - exact) / est.std_err)
        results.append(CheckResult(f"siso closed form ({receiver.value}), z-score", worst <= 3.0, worst, 3.0))
    return results


def check_zero_isi(count=1000, seed=0):
    rng = np.random.default_rng(seed)
    results = []
    for k in (0, 6):
        h = _random_channels(rng, count, 8, 5, k)
        g = zf_filter(h) @ h
        off = np.max(np.abs(g - np.eye(5) * np.diagonal(g, axis1=-2, axis2=-1)[..., None]))
        results.append(CheckResult(f"zero forcing off-diagonal leakage (K={k})", off < 1e-9, off, 1e-9))
    return results


def check_sic_capacity(count=1000, seed=0):
    rng = np.random.default_rng(seed)
    h = _random_channels(rng, count, 6, 5)
    worst = {"optimal": 0.0, "random": 0.0}
    for snr in (1.0, 10.0, 100.0):
        params = LinkParams(noise_var=1.0 / snr)
        target = log_det_hermitian(np.eye(5) + snr * hermitian(h) @ h)
        orders = np.argsort(rng.random((count, 5)), axis=-1)
        for label, report in (
            ("optimal", detect(h, Receiver.MMSE_SIC, params)),
            ("random", mmse_sic_sinr(h, params, order=orders)),
        ):
            total = np.sum(np.log2(1.0 + report.sinr), axis=-1)
            worst[label] = max(worst[label], float(np.max(np.abs(total - target) / target)))
    return [
        CheckResult(f"SIC sum rate vs log det ({label} order), relative", err < 1e-8, err, 1e-8)
        for label, err in worst.items()
    ]


def run_all(trials=200_000, seed=0, workers=1):
    return check_siso_oracle(trials, seed, workers) + check_zero_isi(seed=seed) + check_sic_capacity(seed=seed)
