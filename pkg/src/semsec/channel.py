"""Rayleigh-fading wiretap channel: distance path loss and noise-normalized gain sampling.

Both links share one transmitter; per state the receiver sees gain g_l and the
eavesdropper g_e, each an exponential |h|^2 (Rayleigh envelope) divided by the
link noise power, so downstream rate math never touches the noise again.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelConfig",
    "FadingState",
    "path_loss_linear",
    "dbm_to_watt",
    "sample_states",
    "gain_arrays",
]


def path_loss_linear(d: float, pl0_db: float, alpha: float) -> float:
    """Linear power gain at distance d meters, for reference loss pl0_db at 1 m."""
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d!r}")
    return 10.0 ** (pl0_db / 10.0) * float(d) ** (-alpha)


def dbm_to_watt(x_dbm: float) -> float:
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class ChannelConfig:
    """Geometry, path-loss law, noise floors, and the RNG seed for one experiment."""

    d_l: float = 30.0
    d_e: float = 30.0
    pl0_db: float = -30.0
    alpha: float = 4.0
    noise_l_dbm: float = -80.0
    noise_e_dbm: float = -80.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.d_l > 0 and self.d_e > 0):
            raise ValueError("link distances must be positive")
        if not self.alpha > 0:
            raise ValueError("path-loss exponent must be positive")
        for name in ("pl0_db", "noise_l_dbm", "noise_e_dbm"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not (isinstance(self.seed, (int, np.integer)) and self.seed >= 0):
            raise ValueError("seed must be a non-negative integer")

    @property
    def noise_l_w(self) -> float:
        return dbm_to_watt(self.noise_l_dbm)

    @property
    def noise_e_w(self) -> float:
        return dbm_to_watt(self.noise_e_dbm)

    @property
    def mean_gain_l(self) -> float:
        """Expected g_l: path loss over noise power."""
        return path_loss_linear(self.d_l, self.pl0_db, self.alpha) / self.noise_l_w

    @property
    def mean_gain_e(self) -> float:
        return path_loss_linear(self.d_e, self.pl0_db, self.alpha) / self.noise_e_w


@dataclass(frozen=True)
class FadingState:
    """One fading realization: noise-normalized channel gains (1/W)."""

    g_l: float
    g_e: float


def sample_states(cfg: ChannelConfig, n: int) -> list[FadingState]:
    """Draw n i.i.d. fading states.

    Each state gets its own RNG substream spawned from (seed, state index), so
    the draw for state i never depends on how many states surround it.
    """
    if n < 1:
        raise ValueError(f"need at least one fading state, got n={n}")
    mean_l = path_loss_linear(cfg.d_l, cfg.pl0_db, cfg.alpha)
    mean_e = path_loss_linear(cfg.d_e, cfg.pl0_db, cfg.alpha)
    inv_noise_l = 1.0 / cfg.noise_l_w
    inv_noise_e = 1.0 / cfg.noise_e_w
    children = np.random.SeedSequence(cfg.seed).spawn(n)
    states = []
    for child in children:
        rng = np.random.default_rng(child)
        h2_l, h2_e = rng.exponential((mean_l, mean_e))
        states.append(
            FadingState(g_l=float(h2_l * inv_noise_l), g_e=float(h2_e * inv_noise_e))
        )
    return states


def gain_arrays(states: list[FadingState]) -> tuple[np.ndarray, np.ndarray]:
    """Pack a state list into (g_l, g_e) float arrays for vectorized solvers."""
    g_l = np.array([s.g_l for s in states], dtype=float)
    g_e = np.array([s.g_e for s in states], dtype=float)
    return g_l, g_e
