"""Ergodic secrecy-rate maximization under an average-power constraint.

The average-power constraint is dualized with multiplier lam, which decouples
the problem into one subproblem per fading state: maximize the clamped secrecy
rate minus lam times power over (p, beta, mu).  Each subproblem is solved by a
(p, beta) grid search with local refinement; since higher lam never raises the
per-state power draw, the multiplier is found by bisection until the average
power meets the budget from the feasible side.

When the receiver gain does not exceed the eavesdropper gain, decoding the bit
stream first can be ruled out analytically, so those states search mu=0 only.
The bit-oriented baselines reuse the same machinery with their own objectives:
bit_only pins beta=0 and drops the semantic stream; bit_an spends share beta
on receiver-cancelable artificial noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import FadingState, gain_arrays
from .errors import ConvergenceError
from .rates import (
    Allocation,
    SchemeKind,
    _bit_an_arr,
    _bit_only_arr,
    _secrecy_arr,
)
from .semantic import SemanticParams

__all__ = [
    "PowerBudget",
    "DualConfig",
    "DualSolution",
    "per_state_objective",
    "solve_state",
    "avg_power",
    "solve",
]

_DUAL_SCHEMES = (SchemeKind.SC_OPTIMAL, SchemeKind.BIT_AN, SchemeKind.BIT_ONLY)

_MAX_BRACKET_DOUBLINGS = 60


@dataclass(frozen=True)
class PowerBudget:
    """Average (p_bar) and peak (p_hat) transmit power in watts."""

    p_bar: float
    p_hat: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.p_hat) and self.p_hat > 0):
            raise ValueError(f"peak power must be positive and finite, got {self.p_hat!r}")
        if not (np.isfinite(self.p_bar) and 0 < self.p_bar <= self.p_hat):
            raise ValueError(
                f"average power must satisfy 0 < p_bar <= p_hat, got p_bar={self.p_bar!r}"
            )


@dataclass(frozen=True)
class DualConfig:
    """Grid resolution and bisection controls for the dual solver."""

    grid_p: int = 64
    grid_beta: int = 64
    refine_rounds: int = 3
    refine_grid: int = 17
    lambda_lo: float = 0.0
    lambda_hi: float = 1.0
    lambda_tol: float = 1e-3
    max_bisect_iters: int = 200
    chunk_states: int = 256

    def __post_init__(self) -> None:
        if self.grid_p < 2 or self.grid_beta < 2 or self.refine_grid < 3:
            raise ValueError("grids need at least 2 points (3 for refinement)")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be nonnegative")
        if not 0.0 <= self.lambda_lo < self.lambda_hi:
            raise ValueError("need 0 <= lambda_lo < lambda_hi")
        if not 0.0 < self.lambda_tol < 1.0:
            raise ValueError("lambda_tol must lie in (0,1)")
        if self.max_bisect_iters < 1 or self.chunk_states < 1:
            raise ValueError("iteration and chunk counts must be positive")


@dataclass(frozen=True)
class DualSolution:
    """Converged policy: one allocation per state plus the dual certificates."""

    allocations: list[Allocation]
    lam: float
    ergodic_rate: float
    avg_power: float
    dual_value: float

    @property
    def duality_gap(self) -> float:
        """Relative gap between the dual bound and the achieved ergodic rate."""
        if self.dual_value <= 0:
            return 0.0
        return (self.dual_value - self.ergodic_rate) / self.dual_value

    @property
    def zero_power_fraction(self) -> float:
        """Share of states the policy silences; surfaced for diagnostics."""
        n_zero = sum(1 for a in self.allocations if a.p == 0.0)
        return n_zero / len(self.allocations)


def _objective_grid(p, beta, mu, g_l, g_e, lam, sp, scheme):
    """Clamped scheme secrecy rate minus lam*p on broadcastable grids."""
    if scheme is SchemeKind.SC_OPTIMAL:
        rate = _secrecy_arr(p, beta, mu, g_l, g_e, sp)
    elif scheme is SchemeKind.BIT_AN:
        rate = _bit_an_arr(p, beta, g_l, g_e)
    else:
        rate = _bit_only_arr(p, g_l, g_e)
    return rate - lam * p


def _grid(lo: np.ndarray, hi: np.ndarray, n: int) -> np.ndarray:
    """Per-state inclusive linspace, shape (len(lo), n)."""
    t = np.arange(n, dtype=float) / max(n - 1, 1)
    return lo[:, None] + (hi - lo)[:, None] * t[None, :]


def _branch_best(g_l, g_e, mu, lam, p_hat, sp, cfg, scheme):
    """Best (utility, p, beta) per state for one fixed decoding order.

    A full grid pass over [0, p_hat] x [0, 1] seeds an incumbent per state;
    each refinement round re-grids a one-cell window around the incumbent and
    keeps whichever point wins, so earlier candidates are never lost.
    """
    v = g_l.shape[0]
    one_d = scheme is SchemeKind.BIT_ONLY
    best_u = np.full(v, -np.inf)
    best_p = np.zeros(v)
    best_b = np.zeros(v)

    p_lo, p_hi = np.zeros(v), np.full(v, float(p_hat))
    b_lo, b_hi = np.zeros(v), np.ones(v)

    for rnd in range(cfg.refine_rounds + 1):
        if rnd == 0:
            n_p, n_b = cfg.grid_p, cfg.grid_beta
        else:
            n_p = n_b = cfg.refine_grid
        if one_d:
            n_b = 1
            b_lo = b_hi = np.zeros(v)

        for start in range(0, v, cfg.chunk_states):
            sl = slice(start, min(start + cfg.chunk_states, v))
            pg = _grid(p_lo[sl], p_hi[sl], n_p)
            bg = _grid(b_lo[sl], b_hi[sl], n_b)
            util = _objective_grid(
                pg[:, :, None],
                bg[:, None, :],
                mu,
                g_l[sl, None, None],
                g_e[sl, None, None],
                lam,
                sp,
                scheme,
            )
            flat = util.reshape(util.shape[0], -1)
            idx = np.argmax(flat, axis=1)
            u = np.take_along_axis(flat, idx[:, None], axis=1)[:, 0]
            ip, ib = np.divmod(idx, n_b)
            p_cand = np.take_along_axis(pg, ip[:, None], axis=1)[:, 0]
            b_cand = np.take_along_axis(bg, ib[:, None], axis=1)[:, 0]
            gain = u > best_u[sl]
            best_u[sl] = np.where(gain, u, best_u[sl])
            best_p[sl] = np.where(gain, p_cand, best_p[sl])
            best_b[sl] = np.where(gain, b_cand, best_b[sl])

        # shrink to one current grid cell around the incumbent
        span_p = (p_hi - p_lo) / max(n_p - 1, 1)
        span_b = (b_hi - b_lo) / max(n_b - 1, 1)
        p_lo = np.clip(best_p - span_p, 0.0, p_hat)
        p_hi = np.clip(best_p + span_p, 0.0, p_hat)
        if not one_d:
            b_lo = np.clip(best_b - span_b, 0.0, 1.0)
            b_hi = np.clip(best_b + span_b, 0.0, 1.0)

    return best_u, best_p, best_b


def _best_response(g_l, g_e, lam, p_hat, sp, cfg, scheme):
    """Per-state maximizers of the dualized objective at multiplier lam."""
    u0, p0, b0 = _branch_best(g_l, g_e, 0, lam, p_hat, sp, cfg, scheme)
    mu = np.zeros(g_l.shape[0], dtype=int)
    if scheme is SchemeKind.SC_OPTIMAL:
        # decoding the bit stream first can only help when the receiver
        # out-hears the eavesdropper, so restrict the mu=1 branch to there
        cand = np.flatnonzero(g_l > g_e)
        if cand.size:
            u1, p1, b1 = _branch_best(g_l[cand], g_e[cand], 1, lam, p_hat, sp, cfg, scheme)
            swap = u1 > u0[cand]
            take = cand[swap]
            u0[take], p0[take], b0[take] = u1[swap], p1[swap], b1[swap]
            mu[take] = 1
    return u0, p0, b0, mu


def per_state_objective(
    a: Allocation, s: FadingState, lam: float, sp: SemanticParams
) -> float:
    """Dualized per-state objective: clamped secrecy rate minus lam * power."""
    if not (np.isfinite(lam) and lam >= 0):
        raise ValueError(f"multiplier must be nonnegative, got {lam!r}")
    return float(
        _objective_grid(a.p, a.beta, a.mu, s.g_l, s.g_e, lam, sp, SchemeKind.SC_OPTIMAL)
    )


def solve_state(
    s: FadingState,
    lam: float,
    sp: SemanticParams,
    cfg: DualConfig,
    p_hat: float,
    scheme: SchemeKind = SchemeKind.SC_OPTIMAL,
) -> tuple[float, Allocation]:
    """Solve one per-state subproblem; returns (best utility, allocation)."""
    if not (np.isfinite(lam) and lam >= 0):
        raise ValueError(f"multiplier must be nonnegative, got {lam!r}")
    if scheme not in _DUAL_SCHEMES:
        raise ValueError(f"scheme {scheme.value!r} is not handled by the dual solver")
    g_l = np.array([s.g_l], dtype=float)
    g_e = np.array([s.g_e], dtype=float)
    u, p, b, mu = _best_response(g_l, g_e, lam, p_hat, sp, cfg, scheme)
    return float(u[0]), Allocation(p=float(p[0]), beta=float(b[0]), mu=int(mu[0]))


def avg_power(
    lam: float,
    states: list[FadingState],
    sp: SemanticParams,
    cfg: DualConfig,
    p_hat: float,
    scheme: SchemeKind = SchemeKind.SC_OPTIMAL,
) -> float:
    """Mean per-state power drawn by the best response at multiplier lam."""
    g_l, g_e = gain_arrays(states)
    _, p, _, _ = _best_response(g_l, g_e, lam, p_hat, sp, cfg, scheme)
    return float(p.mean())


def _assemble(g_l, g_e, lam, budget, sp, cfg, scheme) -> DualSolution:
    util, p, beta, mu = _best_response(g_l, g_e, lam, budget.p_hat, sp, cfg, scheme)
    ergodic = float((util + lam * p).mean())
    allocations = [
        Allocation(p=float(pi), beta=float(bi), mu=int(mi))
        for pi, bi, mi in zip(p, beta, mu)
    ]
    return DualSolution(
        allocations=allocations,
        lam=float(lam),
        ergodic_rate=ergodic,
        avg_power=float(p.mean()),
        dual_value=float(util.mean() + lam * budget.p_bar),
    )


def solve(
    states: list[FadingState],
    budget: PowerBudget,
    sp: SemanticParams,
    cfg: DualConfig,
    scheme: SchemeKind = SchemeKind.SC_OPTIMAL,
) -> DualSolution:
    """Find the multiplier meeting the average-power budget and its policy.

    If the budget is slack at lam=0 that solution is returned directly.
    Otherwise lambda_hi doubles until the budget holds strictly, then
    bisection tightens from the feasible side until average power is within
    lambda_tol (relative) of the budget.
    """
    if scheme not in _DUAL_SCHEMES:
        raise ValueError(f"scheme {scheme.value!r} is not handled by the dual solver")
    if not states:
        raise ValueError("need at least one fading state")
    g_l, g_e = gain_arrays(states)

    def power_at(lam: float) -> float:
        _, p, _, _ = _best_response(g_l, g_e, lam, budget.p_hat, sp, cfg, scheme)
        return float(p.mean())

    if power_at(cfg.lambda_lo) <= budget.p_bar:
        return _assemble(g_l, g_e, cfg.lambda_lo, budget, sp, cfg, scheme)

    lo, hi = cfg.lambda_lo, cfg.lambda_hi
    p_hi = power_at(hi)
    doublings = 0
    while p_hi >= budget.p_bar:
        if p_hi == budget.p_bar:
            return _assemble(g_l, g_e, hi, budget, sp, cfg, scheme)
        lo, hi = hi, 2.0 * hi
        doublings += 1
        if doublings > _MAX_BRACKET_DOUBLINGS:
            raise ConvergenceError(
                f"multiplier bracket failed to cap average power after "
                f"{_MAX_BRACKET_DOUBLINGS} doublings (p_bar={budget.p_bar})"
            )
        p_hi = power_at(hi)

    # feasible-side incumbent: largest average power not exceeding the budget
    best_lam, best_pow = hi, p_hi
    for _ in range(cfg.max_bisect_iters):
        if best_pow >= budget.p_bar * (1.0 - cfg.lambda_tol):
            break
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        p_mid = power_at(mid)
        if p_mid > budget.p_bar:
            lo = mid
        else:
            hi = mid
            if p_mid > best_pow:
                best_lam, best_pow = mid, p_mid
    if best_pow < budget.p_bar * (1.0 - cfg.lambda_tol):
        raise ConvergenceError(
            f"bisection stalled at avg power {best_pow:.6g} W for budget "
            f"{budget.p_bar:.6g} W (tol {cfg.lambda_tol:g})"
        )
    return _assemble(g_l, g_e, best_lam, budget, sp, cfg, scheme)
