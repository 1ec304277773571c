# %% [markdown]
# # Scalar Rayleigh link: simulation against the closed form
#
# With one sensor, one slot and no RIS, the post-detection SNR is
# ``|h|^2 P / sigma^2`` with ``|h|^2 ~ Exp(1)``, so the outage probability at
# rate R is ``1 - exp(-(2**R - 1) / snr)``. This is the cheapest end-to-end
# check of the channel sampler, the receivers and the outage counter.

# %%
from risgf import ExperimentConfig, SystemDims, estimate_outage, siso_outage_closed_form

snrs = [0.0, 5.0, 10.0, 15.0, 20.0]
cfg = ExperimentConfig(SystemDims(sensors=1, slots=1), receiver="zf", rate=2.0, snr_db=snrs, trials=200_000, seed=1)

print(f"{'SNR dB':>7} {'simulated':>11} {'exact':>11} {'z':>6}")
for snr in snrs:
    est = estimate_outage(cfg, snr)[0]
    exact = siso_outage_closed_form(10 ** (snr / 10), cfg.rate)
    print(f"{snr:7.1f} {est.p_hat:11.5f} {exact:11.5f} {(est.p_hat - exact) / est.std_err:6.2f}")
