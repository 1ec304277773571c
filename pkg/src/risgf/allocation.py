"""
Dedicated and shared slot allocation.

A plan is a boolean slot-by-sensor mask plus a per-sensor amplitude. A
sensor transmitting in ``T`` slots splits its energy evenly, so each copy
carries amplitude ``1/sqrt(T)`` and the total per-sensor power does not
depend on the number of (re)transmissions.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .complexmat import DimensionError


class CapacityError(ValueError):
    """Raised when a dedicated plan needs more slots than the frame has."""


class Scheme(str, enum.Enum):
    DEDICATED = "dedicated"
    SHARED = "shared"


@dataclass(frozen=True, eq=False)
class AllocationPlan:
    scheme: Scheme
    assignment: np.ndarray  # (slots, sensors) bool
    tx_count: np.ndarray  # (sensors,) int
    amplitude_scale: np.ndarray  # (sensors,) float

    @property
    def slots(self):
        return self.assignment.shape[0]

    @property
    def sensors(self):
        return self.assignment.shape[1]

    @property
    def gain(self):
        """Mask times amplitude, shape (slots, sensors); multiply into a channel to apply the plan."""
        return self.assignment * self.amplitude_scale


def build_plan(scheme, dims, retransmissions=0):
    """Build the slot assignment for `dims`.

    Dedicated: sensor ``n`` owns the contiguous block of ``1 + retransmissions``
    slots starting at ``n * (1 + retransmissions)``; leftover slots stay empty.
    Shared: every sensor transmits in every slot and `retransmissions` is ignored.
    """
    scheme = Scheme(scheme)
    n, m = dims.sensors, dims.slots
    if scheme is Scheme.SHARED:
        assignment = np.ones((m, n), dtype=bool)
        tx_count = np.full(n, m)
    else:
        if retransmissions < 0:
            raise ValueError("retransmissions must be non-negative")
        per_sensor = 1 + retransmissions
        if n * per_sensor > m:
            raise CapacityError(
                f"dedicated allocation needs {n * per_sensor} slots for {n} sensors, frame has {m}"
            )
        assignment = np.zeros((m, n), dtype=bool)
        for s in range(n):
            assignment[s * per_sensor:(s + 1) * per_sensor, s] = True
        tx_count = np.full(n, per_sensor)
    amplitude_scale = 1.0 / np.sqrt(tx_count)
    for arr in (assignment, tx_count, amplitude_scale):
        arr.setflags(write=False)
    return AllocationPlan(scheme, assignment, tx_count, amplitude_scale)


def apply_plan(h, plan):
    """Zero the unassigned entries of `h` (..., slots, sensors) and apply the power split."""
    h = np.asarray(h)
    if h.shape[-2:] != plan.assignment.shape:
        raise DimensionError(f"channel shape {h.shape[-2:]} does not match plan {plan.assignment.shape}")
    return h * plan.gain
