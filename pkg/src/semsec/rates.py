"""SINRs and rates for superimposed semantic+bit transmission, plus bit-oriented baselines.

An allocation is (p, beta, mu): transmit power, semantic power share, and SIC
order at the receiver (mu=1 decodes the bit stream first).  The eavesdropper
always decodes the bit stream against semantic interference, so its SINR does
not depend on mu.  All gains are noise-normalized (see channel module).

The array helpers (underscore names) carry the same formulas for solver grids;
the public functions are the scalar reference used for audits and recomputation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .semantic import SemanticParams, _similarity_arr
from .channel import FadingState

__all__ = [
    "Allocation",
    "SchemeKind",
    "sinr_bit",
    "sinr_sem",
    "sinr_eve",
    "rate_rx",
    "rate_eve",
    "secrecy_rate",
    "bit_only_secrecy_rate",
    "bit_an_secrecy_rate",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class Allocation:
    """Per-state transmit decision: power (W), semantic share in [0,1], SIC order."""

    p: float
    beta: float
    mu: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.p) and self.p >= 0):
            raise ValueError(f"power must be finite and nonnegative, got {self.p!r}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"semantic share must lie in [0,1], got {self.beta!r}")
        if self.mu not in (0, 1):
            raise ValueError(f"decoding order must be 0 or 1, got {self.mu!r}")


class SchemeKind(str, Enum):
    """Transmission schemes the experiment sweep can run."""

    SC_OPTIMAL = "sc_optimal"
    SC_SCA = "sc_sca"
    BIT_AN = "bit_an"
    BIT_ONLY = "bit_only"


def _log2p1(x):
    return np.log1p(x) / _LN2


def _sinr_bit_arr(p, beta, mu, g):
    return (1.0 - beta) * p * g / (mu * beta * p * g + 1.0)


def _sinr_sem_arr(p, beta, mu, g):
    return beta * p * g / ((1.0 - mu) * (1.0 - beta) * p * g + 1.0)


def _sinr_eve_arr(p, beta, g):
    return (1.0 - beta) * p * g / (beta * p * g + 1.0)


def _rate_rx_arr(p, beta, mu, g, sp: SemanticParams):
    bit = _log2p1(_sinr_bit_arr(p, beta, mu, g))
    sem = sp.rho / sp.k * _similarity_arr(_sinr_sem_arr(p, beta, mu, g), sp)
    return bit + sem


def _rate_eve_arr(p, beta, g):
    return _log2p1(_sinr_eve_arr(p, beta, g))


def _secrecy_arr(p, beta, mu, g_l, g_e, sp: SemanticParams):
    return np.maximum(_rate_rx_arr(p, beta, mu, g_l, sp) - _rate_eve_arr(p, beta, g_e), 0.0)


def _bit_only_arr(p, g_l, g_e):
    return np.maximum(_log2p1(p * g_l) - _log2p1(p * g_e), 0.0)


def _bit_an_arr(p, beta, g_l, g_e):
    data = (1.0 - beta) * p
    return np.maximum(_log2p1(data * g_l) - _log2p1(data * g_e / (beta * p * g_e + 1.0)), 0.0)


def sinr_bit(a: Allocation, g: float) -> float:
    """Bit-stream SINR at the legitimate receiver."""
    return float(_sinr_bit_arr(a.p, a.beta, a.mu, g))


def sinr_sem(a: Allocation, g: float) -> float:
    """Semantic-stream SINR at the legitimate receiver."""
    return float(_sinr_sem_arr(a.p, a.beta, a.mu, g))


def sinr_eve(a: Allocation, g: float) -> float:
    """Bit-stream SINR at the eavesdropper; independent of the SIC order."""
    return float(_sinr_eve_arr(a.p, a.beta, g))


def rate_rx(a: Allocation, g: float, sp: SemanticParams) -> float:
    """Receiver sum rate: bit rate plus the equivalent bit rate of the semantic stream."""
    return float(_rate_rx_arr(a.p, a.beta, a.mu, g, sp))


def rate_eve(a: Allocation, g: float) -> float:
    """Eavesdropper bit rate."""
    return float(_rate_eve_arr(a.p, a.beta, g))


def secrecy_rate(a: Allocation, s: FadingState, sp: SemanticParams) -> float:
    """Per-state secrecy rate, clamped at zero."""
    return float(_secrecy_arr(a.p, a.beta, a.mu, s.g_l, s.g_e, sp))


def bit_only_secrecy_rate(p: float, s: FadingState) -> float:
    """Baseline without a semantic stream: full power on the bit stream."""
    if not (np.isfinite(p) and p >= 0):
        raise ValueError(f"power must be finite and nonnegative, got {p!r}")
    return float(_bit_only_arr(p, s.g_l, s.g_e))


def bit_an_secrecy_rate(p: float, beta: float, s: FadingState) -> float:
    """Baseline replacing the semantic stream with artificial noise.

    The receiver knows the noise sequence and cancels it; the eavesdropper
    decodes against it.  Share beta of the power funds the noise.
    """
    if not (np.isfinite(p) and p >= 0):
        raise ValueError(f"power must be finite and nonnegative, got {p!r}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"noise share must lie in [0,1], got {beta!r}")
    return float(_bit_an_arr(p, beta, s.g_l, s.g_e))
