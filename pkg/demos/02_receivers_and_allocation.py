# %% [markdown]
# # Receivers, slot allocation and the RIS
#
# Five sensors either own two slots each out of eleven (dedicated) or all
# transmit in every one of six slots (shared). For each receiver we compare
# the average per-sensor outage with no RIS and with a 6-element RIS whose
# elements are all set to phase index 0.
#
# Channels are common random numbers: every curve below is evaluated on the
# same channel draws, so the differences between curves are not noise.

# %%
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from risgf import ExperimentConfig, PhaseConfig, SystemDims, outage_tally

snrs = [0, 4, 8, 12, 16, 20]
trials = 50_000
setups = {
    "dedicated": dict(slots=11, retransmissions=1),
    "shared": dict(slots=6, retransmissions=0),
}

fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)
for ax, (scheme, kw) in zip(axes, setups.items()):
    for ris in (0, 6):
        for receiver in ("zf", "mmse", "mmse-sic"):
            cfg = ExperimentConfig(
                SystemDims(5, kw["slots"], ris), scheme=scheme, retransmissions=kw["retransmissions"],
                receiver=receiver, phase=PhaseConfig.uniform(ris) if ris else None,
                rate=2.0, snr_db=snrs, trials=trials, seed=7,
            )
            curve = [max(outage_tally(cfg, s).mean_outage, 1 / (5 * trials)) for s in snrs]
            ax.semilogy(snrs, curve, "-" if ris else "--", marker="o", ms=3, label=f"{receiver}, K={ris}")
            print(f"{scheme:9s} K={ris} {receiver:8s}", " ".join(f"{p:.2e}" for p in curve))
    ax.set_title(f"{scheme} ({kw['slots']} slots)")
    ax.set_xlabel("SNR [dB]")
axes[0].set_ylabel("outage probability")
axes[1].legend(fontsize=7)

out = pathlib.Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
fig.savefig(out / "receivers_and_allocation.png", dpi=150, bbox_inches="tight")
