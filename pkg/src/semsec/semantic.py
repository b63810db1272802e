"""Logistic semantic-similarity model and the rates derived from it.

Similarity versus SINR is a logistic curve in the dB domain, fit per K
(average words per semantic symbol).  The zero-SINR value is pinned to the
curve's lower asymptote a1 so the map is continuous on [0, inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

__all__ = [
    "SemanticParams",
    "semantic_similarity",
    "semantic_rate_suts",
    "equivalent_bit_rate",
]

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class SemanticParams:
    """Similarity-curve fit plus the text statistics that scale it into rates.

    k: average words per semantic symbol; rho: bits per word the bit stream
    would spend; i_suts/l_words: sentence payload in semantic units and words.
    """

    k: int = 5
    rho: float = 40.0
    a1: float = 0.37
    a2: float = 0.98
    c1: float = 0.2525
    c2: float = -0.7895
    i_suts: float = 20.0
    l_words: float = 10.0

    def __post_init__(self) -> None:
        if not (isinstance(self.k, (int, np.integer)) and self.k >= 1):
            raise ValueError("k must be a positive integer")
        if not 0.0 <= self.a1 < self.a2 <= 1.0:
            raise ValueError("similarity asymptotes need 0 <= a1 < a2 <= 1")
        if not self.c1 > 0:
            raise ValueError("logistic slope c1 must be positive")
        if not (self.rho > 0 and self.i_suts > 0 and self.l_words > 0):
            raise ValueError("rho, i_suts, l_words must be positive")
        if not np.isfinite(self.c2):
            raise ValueError("c2 must be finite")


def _similarity_arr(gamma: np.ndarray, sp: SemanticParams) -> np.ndarray:
    """Similarity for a nonnegative SINR array; vectorized, gamma=0 maps to a1."""
    gamma = np.asarray(gamma, dtype=float)
    # log(0) -> -inf -> expit(-inf) = 0 gives the a1 limit directly
    with np.errstate(divide="ignore"):
        z = (10.0 * sp.c1 / _LN10) * np.log(gamma) + sp.c2
    return sp.a1 + (sp.a2 - sp.a1) * expit(z)


def semantic_similarity(gamma: float, sp: SemanticParams) -> float:
    """Expected semantic similarity at the semantic-stream SINR gamma."""
    if not gamma >= 0:
        raise ValueError(f"SINR must be nonnegative, got {gamma!r}")
    return float(_similarity_arr(np.asarray(gamma, dtype=float), sp))


def semantic_rate_suts(gamma: float, sp: SemanticParams) -> float:
    """Semantic rate in semantic units per symbol: (I/(K*L)) * similarity."""
    return sp.i_suts / (sp.k * sp.l_words) * semantic_similarity(gamma, sp)


def equivalent_bit_rate(gamma: float, sp: SemanticParams) -> float:
    """Bit/s/Hz a bit stream would need to deliver the same payload: (rho/K) * similarity."""
    return sp.rho / sp.k * semantic_similarity(gamma, sp)
