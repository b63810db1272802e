"""Successive convex approximation solver for the semantic wiretap power policy.

The decoding order is pinned to semantic-first (mu=0) and each state's power
splits into a semantic part p_s and a bit part p_b.  An auxiliary similarity
variable chi relaxes the logistic curve into an inequality; per round, the two
nonconvex pieces are replaced by first-order bounds anchored at the previous
iterate (an upper bound on the eavesdropper rate, and a linearization of the
concave side of the similarity constraint), which leaves a concave surrogate
problem.  That surrogate is solved by dual decomposition: bisection on the
average-power multiplier around per-state concave maximizations.

Inside a per-state maximization the surrogate constraint is handled through
its boundary: the objective grows with chi, so the optimal chi sits where the
linearized constraint becomes tight, an increasing-minus-decreasing root that
is safe to bisect.  The remaining problem in (p_s, p_b) is concave over a
triangle and is solved by projected gradient ascent with backtracking; the
chi terms enter the gradient through the implicit-function derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import FadingState, gain_arrays
from .dual import PowerBudget
from .errors import ConvergenceError
from .rates import Allocation, _log2p1, _secrecy_arr
from .semantic import SemanticParams, _similarity_arr

__all__ = [
    "ScaConfig",
    "ScaPoint",
    "ScaResult",
    "chi_exact",
    "eve_rate_split",
    "constraint_lhs",
    "constraint_rhs",
    "re_upper_bound",
    "eta_bound",
    "init_point",
    "solve_surrogate",
    "run",
]

_LN2 = math.log(2.0)
_LN10 = math.log(10.0)
_CHI_EDGE = 1e-14  # bracket inset keeping the chi logs finite


@dataclass(frozen=True)
class ScaConfig:
    """Iteration caps and tolerances for the SCA loop and its inner solves."""

    max_iters: int = 50
    obj_tol: float = 1e-4
    inner_tol: float = 1e-6
    power_tol: float = 1e-3
    p_floor: float = 1e-9
    chi_margin: float = 1e-6
    pgd_max_steps: int = 300
    max_bisect_iters: int = 200

    def __post_init__(self) -> None:
        if self.max_iters < 1 or self.pgd_max_steps < 1 or self.max_bisect_iters < 1:
            raise ValueError("iteration caps must be positive")
        if not (0 < self.obj_tol < 1 and 0 < self.inner_tol < 1):
            raise ValueError("tolerances must lie in (0,1)")
        if not 0 < self.power_tol < 1:
            raise ValueError("power_tol must lie in (0,1)")
        if not self.p_floor > 0:
            raise ValueError("p_floor must be positive")
        if not 0 < self.chi_margin < 0.1:
            raise ValueError("chi_margin must lie in (0, 0.1)")


@dataclass
class ScaPoint:
    """Per-state iterate: semantic power, bit power, similarity variable."""

    p_s: np.ndarray
    p_b: np.ndarray
    chi: np.ndarray


@dataclass(frozen=True)
class ScaResult:
    """Converged policy with the objective trace of the outer loop."""

    allocations: list[Allocation]
    lam: float
    ergodic_rate: float
    avg_power: float
    objective_history: list[float]
    iterations: int
    converged: bool


def chi_exact(p_s, p_b, g_l, sp: SemanticParams):
    """Similarity the logistic curve actually delivers at the split (p_s, p_b)."""
    p_s = np.asarray(p_s, dtype=float)
    gamma = p_s * g_l / (np.asarray(p_b, dtype=float) * g_l + 1.0)
    return _similarity_arr(gamma, sp)


def eve_rate_split(p_b, p_s, g_e):
    """Eavesdropper bit rate at split powers (semantic part acts as interference)."""
    p_b = np.asarray(p_b, dtype=float)
    return _log2p1(p_b * g_e / (np.asarray(p_s, dtype=float) * g_e + 1.0))


def re_upper_bound(p_b, p_s, at: tuple, g_e):
    """Concave-part linearization of the eavesdropper rate; meets it at the anchor."""
    p_b_r, p_s_r = (np.asarray(a, dtype=float) for a in at)
    p_b = np.asarray(p_b, dtype=float)
    p_s = np.asarray(p_s, dtype=float)
    total_r = (p_s_r + p_b_r) * g_e
    slope = g_e / ((1.0 + total_r) * _LN2)
    return (
        _log2p1(total_r)
        + slope * ((p_s - p_s_r) + (p_b - p_b_r))
        - _log2p1(p_s * g_e)
    )


def constraint_lhs(chi, p_b, g_l, sp: SemanticParams):
    """Increasing side of the log-domain similarity constraint."""
    chi = np.asarray(chi, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(chi - sp.a1) + 10.0 * sp.c1 / _LN10 * np.log1p(
            np.asarray(p_b, dtype=float) * g_l
        )


def constraint_rhs(chi, p_s, g_l, sp: SemanticParams):
    """Decreasing side of the log-domain similarity constraint."""
    chi = np.asarray(chi, dtype=float)
    with np.errstate(divide="ignore"):
        return (
            10.0 * sp.c1 / _LN10 * np.log(np.asarray(p_s, dtype=float) * g_l)
            + sp.c2
            + np.log(sp.a2 - chi)
        )


def eta_bound(chi, p_b, at: tuple, g_l, sp: SemanticParams):
    """Affine over-bound of constraint_lhs, tangent at the anchor (chi_r, p_b_r)."""
    chi_r, p_b_r = (np.asarray(a, dtype=float) for a in at)
    if np.any(chi_r <= sp.a1):
        raise ValueError("anchor similarity must exceed a1")
    chi = np.asarray(chi, dtype=float)
    p_b = np.asarray(p_b, dtype=float)
    lead = np.log(chi_r - sp.a1) + (chi - chi_r) / (chi_r - sp.a1)
    bit = 10.0 * sp.c1 / _LN10 * np.log1p(p_b_r * g_l)
    bit_slope = 10.0 * sp.c1 * g_l / ((1.0 + p_b_r * g_l) * _LN10)
    return lead + bit + bit_slope * (p_b - p_b_r)


class _Anchor:
    """Per-state constants frozen for one surrogate round."""

    def __init__(self, point: ScaPoint, g_l, g_e, sp: SemanticParams):
        tcl = 10.0 * sp.c1 / _LN10
        self.sp = sp
        self.g_l = g_l
        self.g_e = g_e
        self.tcl = tcl
        self.chi_r = point.chi
        self.p_s_r = point.p_s
        self.p_b_r = point.p_b
        self.inv_m = 1.0 / (point.chi - sp.a1)
        self.ln_m = np.log(point.chi - sp.a1)
        self.bit_r = tcl * np.log1p(point.p_b * g_l)
        self.bit_slope = tcl * g_l / (1.0 + point.p_b * g_l)
        total_r = (point.p_s + point.p_b) * g_e
        self.eve_slope = g_e / ((1.0 + total_r) * _LN2)
        self.eve_const = _log2p1(total_r) - self.eve_slope * (point.p_s + point.p_b)

    def _cut(self, sel):
        """Anchor constants, restricted to the selected states."""
        if sel is None:
            return (
                self.inv_m,
                self.ln_m,
                self.bit_r,
                self.bit_slope,
                self.eve_slope,
                self.eve_const,
                self.g_l,
                self.g_e,
                self.chi_r,
                self.p_b_r,
            )
        return (
            self.inv_m[sel],
            self.ln_m[sel],
            self.bit_r[sel],
            self.bit_slope[sel],
            self.eve_slope[sel],
            self.eve_const[sel],
            self.g_l[sel],
            self.g_e[sel],
            self.chi_r[sel],
            self.p_b_r[sel],
        )

    def chi_max(self, p_s, p_b, sel=None):
        """Largest chi the linearized constraint allows at (p_s, p_b).

        Root of an increasing function of chi; states whose section is empty
        are pinned at the lower edge and flagged so gradients flatten there.
        """
        sp = self.sp
        inv_m, ln_m, bit_r, bit_slope, _, _, g_l, _, chi_r, p_b_r = self._cut(sel)
        with np.errstate(divide="ignore", invalid="ignore"):
            base = (
                ln_m
                - chi_r * inv_m
                + bit_r
                + bit_slope * (p_b - p_b_r)
                - self.tcl * np.log(p_s * g_l)
                - sp.c2
            )

        def h(chi):
            return base + chi * inv_m - np.log(sp.a2 - chi)

        lo = np.full_like(p_s, sp.a1 + _CHI_EDGE)
        hi = np.full_like(p_s, sp.a2 - _CHI_EDGE)
        pinned = h(lo) >= 0.0
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            high = h(mid) > 0.0
            hi = np.where(high, mid, hi)
            lo = np.where(high, lo, mid)
        chi = np.where(pinned, sp.a1 + _CHI_EDGE, 0.5 * (lo + hi))
        return chi, pinned

    def phi(self, p_s, p_b, lam, sel=None):
        """Surrogate Lagrangian value per state, with the implied chi."""
        sp = self.sp
        _, _, _, _, eve_slope, eve_const, g_l, g_e, _, _ = self._cut(sel)
        chi, pinned = self.chi_max(p_s, p_b, sel)
        val = (
            sp.rho / sp.k * chi
            + _log2p1(p_b * g_l)
            - (eve_const + eve_slope * (p_s + p_b) - _log2p1(p_s * g_e))
            - lam * (p_s + p_b)
        )
        return val, chi, pinned

    def grad(self, p_s, p_b, chi, pinned, lam, sel=None):
        """Ascent direction of phi; chi enters via the implicit derivative."""
        sp = self.sp
        inv_m, _, _, bit_slope, eve_slope, _, g_l, g_e, _, _ = self._cut(sel)
        hp = inv_m + 1.0 / (sp.a2 - chi)
        dchi_ds = np.where(pinned, 0.0, self.tcl / (p_s * hp))
        dchi_db = np.where(pinned, 0.0, -bit_slope / hp)
        rk = sp.rho / sp.k
        g_s = rk * dchi_ds - eve_slope + g_e / ((1.0 + p_s * g_e) * _LN2) - lam
        g_b = rk * dchi_db - eve_slope + g_l / ((1.0 + p_b * g_l) * _LN2) - lam
        return g_s, g_b


def _project(p_s, p_b, p_hat, floor):
    """Euclidean projection onto {p_s >= floor, p_b >= 0, p_s + p_b <= p_hat}."""
    cs = np.maximum(p_s, floor)
    cb = np.maximum(p_b, 0.0)
    over = cs + cb > p_hat
    shift = 0.5 * (p_s + p_b - p_hat)
    zs = p_s - shift
    zb = p_b - shift
    zb = np.where(zs < floor, np.clip(p_b, 0.0, p_hat - floor), zb)
    zs = np.where(zs < floor, floor, zs)
    zs = np.where(zb < 0.0, np.clip(p_s, floor, p_hat), zs)
    zb = np.where(zb < 0.0, 0.0, zb)
    return np.where(over, zs, cs), np.where(over, zb, cb)


def _maximize_states(anc: _Anchor, lam, p_s, p_b, p_hat, cfg: ScaConfig):
    """Projected gradient ascent on the per-state surrogate Lagrangians."""
    p_s = p_s.copy()
    p_b = p_b.copy()
    phi, chi, pinned = anc.phi(p_s, p_b, lam)
    step = np.full_like(p_s, 0.25 * p_hat)
    alive = np.ones(p_s.shape, dtype=bool)
    stop_gain = 0.1 * cfg.inner_tol
    for _ in range(cfg.pgd_max_steps):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        g_s, g_b = anc.grad(p_s[idx], p_b[idx], chi[idx], pinned[idx], lam, sel=idx)
        # move along the unit gradient so step is a displacement in watts;
        # raw gradients blow up near the semantic power floor
        norm = np.hypot(g_s, g_b)
        scale = 1.0 / np.maximum(norm, 1e-300)
        g_s = g_s * scale
        g_b = g_b * scale
        pos = np.arange(idx.size)
        best_gain = 0.0
        for _ in range(40):
            if idx.size == 0:
                break
            cs, cb = _project(
                p_s[idx] + step[idx] * g_s[pos],
                p_b[idx] + step[idx] * g_b[pos],
                p_hat,
                cfg.p_floor,
            )
            phic, chic, pinc = anc.phi(cs, cb, lam, sel=idx)
            acc = phic > phi[idx]
            if acc.any():
                won = idx[acc]
                best_gain = max(best_gain, float((phic[acc] - phi[won]).max()))
                p_s[won] = cs[acc]
                p_b[won] = cb[acc]
                phi[won] = phic[acc]
                chi[won] = chic[acc]
                pinned[won] = pinc[acc]
                step[won] = np.minimum(step[won] * 1.3, 1e3 * p_hat)
            rej = ~acc
            idx = idx[rej]
            pos = pos[rej]
            step[idx] *= 0.5
            # a step this small cannot move the point; retire the state
            frozen = step[idx] < 1e-16 * p_hat
            alive[idx[frozen]] = False
            keep = ~frozen
            idx = idx[keep]
            pos = pos[keep]
        if best_gain < stop_gain:
            break
    return p_s, p_b, phi


def _chi_feasible(p_s, p_b, g_l, sp: SemanticParams, margin: float):
    """Exact similarity at the split, nudged strictly inside (a1, a2)."""
    chi = chi_exact(p_s, p_b, g_l, sp)
    return np.clip(chi, sp.a1 + 1e-15, sp.a2 - margin)


def init_point(
    states: list[FadingState],
    budget: PowerBudget,
    sp: SemanticParams,
    cfg: ScaConfig,
) -> ScaPoint:
    """Even semantic/bit split of the attainable average power, per state."""
    _check_budget(budget, cfg)
    g_l, _ = gain_arrays(states)
    n = len(states)
    half = 0.5 * min(budget.p_bar, budget.p_hat)
    p_s = np.full(n, max(half, cfg.p_floor))
    p_b = np.full(n, min(half, budget.p_hat - float(p_s[0])))
    chi = _chi_feasible(p_s, p_b, g_l, sp, cfg.chi_margin)
    return ScaPoint(p_s=p_s, p_b=p_b, chi=chi)


def _check_budget(budget: PowerBudget, cfg: ScaConfig) -> None:
    if budget.p_bar < cfg.p_floor:
        raise ValueError(
            f"average power {budget.p_bar!r} is below the semantic power floor"
        )


def _check_anchor(anchor: ScaPoint, n, g_l, budget, sp, cfg) -> None:
    if not (anchor.p_s.shape == anchor.p_b.shape == anchor.chi.shape == (n,)):
        raise ValueError("anchor arrays must be one value per fading state")
    tol = 1e-9
    if np.any(anchor.p_s < cfg.p_floor * (1 - tol)) or np.any(anchor.p_b < -tol):
        raise ValueError("anchor powers violate their lower bounds")
    if np.any(anchor.p_s + anchor.p_b > budget.p_hat * (1 + tol)):
        raise ValueError("anchor powers exceed the peak power")
    if float(np.mean(anchor.p_s + anchor.p_b)) > budget.p_bar * (1 + tol):
        raise ValueError("anchor average power exceeds the budget")
    if np.any(anchor.chi <= sp.a1) or np.any(anchor.chi >= sp.a2):
        raise ValueError("anchor similarity must lie strictly inside (a1, a2)")
    if np.any(anchor.chi > chi_exact(anchor.p_s, anchor.p_b, g_l, sp) + tol):
        raise ValueError("anchor similarity exceeds what the logistic curve delivers")


def _solve_surrogate(
    states: list[FadingState],
    anchor: ScaPoint,
    budget: PowerBudget,
    sp: SemanticParams,
    cfg: ScaConfig,
    lam_init: float = 0.0,
) -> tuple[ScaPoint, float]:
    """solve_surrogate plus the budget multiplier it settled on."""
    _check_budget(budget, cfg)
    g_l, g_e = gain_arrays(states)
    _check_anchor(anchor, len(states), g_l, budget, sp, cfg)
    anc = _Anchor(anchor, g_l, g_e, sp)

    def solved(lam: float):
        # always start from the anchor so the power response is a function
        # of lam alone; warm-starting from the previous multiplier's point
        # makes it path-dependent and quietly non-monotone
        p_s, p_b, _ = _maximize_states(anc, lam, anchor.p_s, anchor.p_b, budget.p_hat, cfg)
        return p_s, p_b, float(np.mean(p_s + p_b))

    lam_final = 0.0
    p_s, p_b, power = solved(0.0)
    if power > budget.p_bar:
        lo, hi = 0.0, (1.25 * lam_init if lam_init > 0.0 else 1.0)
        p_s, p_b, power = solved(hi)
        doublings = 0
        while power > budget.p_bar:
            lo, hi = hi, 2.0 * hi
            doublings += 1
            if doublings > 60:
                raise ConvergenceError("budget multiplier bracket failed to close")
            p_s, p_b, power = solved(hi)
        best = (p_s, p_b, power, hi)
        for _ in range(cfg.max_bisect_iters):
            if best[2] >= budget.p_bar * (1.0 - cfg.power_tol):
                break
            if hi - lo <= 1e-15 * max(1.0, hi):
                break
            mid = 0.5 * (lo + hi)
            p_s, p_b, power = solved(mid)
            if power > budget.p_bar:
                lo = mid
            else:
                hi = mid
                if power > best[2]:
                    best = (p_s, p_b, power, mid)
        p_s, p_b, power, lam_final = best
        if power < budget.p_bar * (1.0 - cfg.power_tol):
            raise ConvergenceError(
                f"budget multiplier bisection stalled at average power "
                f"{power:.6g} W for budget {budget.p_bar:.6g} W"
            )

    chi = _chi_feasible(p_s, p_b, g_l, sp, cfg.chi_margin)
    return ScaPoint(p_s=p_s, p_b=p_b, chi=chi), lam_final


def solve_surrogate(
    states: list[FadingState],
    anchor: ScaPoint,
    budget: PowerBudget,
    sp: SemanticParams,
    cfg: ScaConfig,
) -> ScaPoint:
    """Maximize one surrogate round exactly (concave), meeting the power budget.

    Bisection on the budget multiplier wraps the per-state maximizations; the
    multiplier search accepts from the feasible side so the returned point
    never overdraws the average power.
    """
    point, _ = _solve_surrogate(states, anchor, budget, sp, cfg)
    return point


def _model_objective(p_s, p_b, g_l, g_e, sp: SemanticParams) -> float:
    """Unclamped ergodic objective the SCA loop climbs: E[R_L - R_E] at mu=0."""
    r_l = sp.rho / sp.k * chi_exact(p_s, p_b, g_l, sp) + _log2p1(p_b * g_l)
    return float(np.mean(r_l - eve_rate_split(p_b, p_s, g_e)))


def run(
    states: list[FadingState],
    budget: PowerBudget,
    sp: SemanticParams,
    cfg: ScaConfig,
) -> ScaResult:
    """Iterate surrogate rounds from the even split until the objective settles."""
    if not states:
        raise ValueError("need at least one fading state")
    g_l, g_e = gain_arrays(states)
    point = init_point(states, budget, sp, cfg)
    history = [_model_objective(point.p_s, point.p_b, g_l, g_e, sp)]
    converged = False
    iterations = 0
    lam = 0.0
    for _ in range(cfg.max_iters):
        candidate, lam_cand = _solve_surrogate(states, point, budget, sp, cfg, lam_init=lam)
        obj = _model_objective(candidate.p_s, candidate.p_b, g_l, g_e, sp)
        iterations += 1
        if obj < history[-1] - cfg.inner_tol:
            # surrogate round failed to improve beyond solver noise: keep the
            # previous point rather than step backwards
            history.append(history[-1])
            converged = True
            break
        point = candidate
        lam = lam_cand
        gain = obj - history[-1]
        history.append(obj)
        if gain <= cfg.obj_tol * max(abs(obj), 1.0):
            converged = True
            break

    p = point.p_s + point.p_b
    beta = np.clip(point.p_s / p, 0.0, 1.0)
    allocations = [
        Allocation(p=float(pi), beta=float(bi), mu=0) for pi, bi in zip(p, beta)
    ]
    ergodic = float(np.mean(_secrecy_arr(p, beta, 0, g_l, g_e, sp)))
    return ScaResult(
        allocations=allocations,
        lam=lam,
        ergodic_rate=ergodic,
        avg_power=float(np.mean(p)),
        objective_history=history,
        iterations=iterations,
        converged=converged,
    )
