"""Outage simulation of RIS-aided grant-free uplink access with ZF, MMSE and MMSE-SIC receivers."""

__version__ = "0.1.0"

from .allocation import AllocationPlan, CapacityError, Scheme, apply_plan, build_plan
from .channel import (
    ChannelRealization,
    PhaseConfig,
    SystemDims,
    effective_channel,
    phase_set,
    sample_realization,
)
from .outage import (
    ExperimentConfig,
    OutageEstimate,
    OutageTally,
    estimate_outage,
    max_rate,
    outage_tally,
    run_trial,
    siso_outage_closed_form,
    sweep,
)
from .phasesearch import PhaseTableRow, best_config, enumerate_configs, evaluate_configs
from .receivers import (
    LinkParams,
    Receiver,
    SinrReport,
    detect,
    linear_post_sinr,
    mmse_filter,
    mmse_sic_sinr,
    zf_filter,
)
