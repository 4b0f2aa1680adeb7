"""Power-law propagation and signal-to-interference ratios.

Transmit power appears nowhere: with a common power level at every access
point it cancels out of the ratio, so everything here is pure geometry.
Thermal noise is ignored as well; in the dense deployments this package
targets, interference dominates and the equipment peak rate (applied at rate
computation) bounds the otherwise diverging low-interference rates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from .geometry import (
    Region,
    distance,
    distances_to_points,
    fits_canonical_box,
    paired_distances,
    pairwise_distances,
    spatial_index,
)

if TYPE_CHECKING:
    from .simulate import Snapshot

# Past this many users, the dominant-interferer search goes through a k-d
# tree instead of the full pairwise distance matrix.
_TREE_INTERFERER_MIN = 128


class InterferenceMode(Enum):
    NEAREST_INTERFERER = "nearest_interferer"
    SUM_INTERFERENCE = "sum_interference"


#: Marker for "no interfering transmission exists". Infinity keeps
#: comparisons and the rate cap working without special cases.
NO_INTERFERENCE = math.inf


@dataclass(frozen=True)
class ChannelModel:
    """Propagation and interference settings.

    alpha: path-loss exponent; received gain is ``max(d, d_min) ** -alpha``.
    gain_c: linear interference-suppression/beamforming gain. It multiplies
        the SIR inside the Shannon log at rate computation, keeping the
        geometric SIR itself free of processing gain.
    mode: single dominant interferer, or the sum over all interferers.
    d_min: near-field clamp that keeps the power law finite when a sampled
        user lands on top of an access point.
    """

    alpha: float
    gain_c: float = 1.0
    mode: InterferenceMode = InterferenceMode.NEAREST_INTERFERER
    d_min: float = 0.1

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if self.gain_c <= 0.0:
            raise ValueError("gain_c must be positive")
        if self.d_min <= 0.0:
            raise ValueError("d_min must be positive")


def db_to_linear(db: float) -> float:
    """Convert a power gain in dB to linear units (20 dB -> 100)."""
    return 10.0 ** (db / 10.0)


def path_gain(d, model: ChannelModel):
    """Propagation gain at distance ``d`` (scalar or array), clamped below
    ``d_min``."""
    g = np.maximum(d, model.d_min) ** -model.alpha
    return float(g) if np.ndim(g) == 0 else g


# Every concurrently served user marks one active transmission, evaluated at
# that user's own position: once the network is dense, the access point
# serving an interfering user sits within a small fraction of the interferer
# distance, and link direction stops mattering. A user's own downlink is the
# signal, never interference; everything else counts.


def sir_at_user(user_index: int, snapshot: "Snapshot", model: ChannelModel, region: Region):
    """Linear SIR of one user, or :data:`NO_INTERFERENCE` when no other
    transmission exists (the user is alone in the snapshot)."""
    n_users = len(snapshot.users)
    if not 0 <= user_index < n_users:
        raise ValueError(f"user index {user_index} out of range")
    serving = int(snapshot.serving[user_index])
    if serving < 0 or serving >= len(snapshot.aps):
        raise ValueError(f"user {user_index} has no serving access point")
    u = snapshot.users.points[user_index]
    signal = path_gain(distance(u, snapshot.aps.points[serving], region), model)
    if n_users == 1:
        return NO_INTERFERENCE
    others = np.arange(n_users) != user_index
    d = distances_to_points(u, snapshot.users.points[others], region)
    if model.mode is InterferenceMode.NEAREST_INTERFERER:
        interference = path_gain(float(d.min()), model)
    else:
        interference = float(np.sum(path_gain(d, model)))
    return signal / interference


def sir_for_all_users(snapshot: "Snapshot", model: ChannelModel, region: Region) -> np.ndarray:
    """Vectorized :func:`sir_at_user` over every user of a snapshot."""
    users = snapshot.users.points
    n_users = users.shape[0]
    if n_users == 0:
        return np.empty(0)
    serving = snapshot.serving
    signal = path_gain(paired_distances(users, snapshot.aps.points[serving], region), model)
    if n_users == 1:
        return np.full(1, NO_INTERFERENCE)

    if (
        model.mode is InterferenceMode.NEAREST_INTERFERER
        and n_users > _TREE_INTERFERER_MIN
        and fits_canonical_box(users, region)
    ):
        # self is always the first hit at distance zero; the second is the
        # nearest other user
        d_pair, _ = spatial_index(users, region).query(users, k=2)
        return signal / path_gain(d_pair[:, 1], model)

    sir = np.empty(n_users)
    chunk = 2048  # bounds the n_users x n_users distance matrix
    for lo in range(0, n_users, chunk):
        hi = min(lo + chunk, n_users)
        d = pairwise_distances(users[lo:hi], users, region)
        rows = np.arange(hi - lo)
        if model.mode is InterferenceMode.NEAREST_INTERFERER:
            d[rows, lo + rows] = np.inf  # a user never interferes with itself
            interference = path_gain(d.min(axis=1), model)
        else:
            gains = path_gain(d, model)
            gains[rows, lo + rows] = 0.0
            interference = gains.sum(axis=1)
        sir[lo:hi] = signal[lo:hi] / interference
    return sir
