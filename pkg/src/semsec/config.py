"""Experiment configuration, the Monte-Carlo sweep, and artifact emission.

A sweep draws one shared set of fading states per seed and reuses it across
every scheme and budget, so scheme comparisons are paired.  Results land in a
CSV with six-significant-digit fixed-notation values, per-run allocation dumps
at full precision for audits, and SVG rate-versus-budget plots.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import dual, sca
from .channel import ChannelConfig, sample_states
from .dual import DualConfig, PowerBudget
from .errors import ConfigError, SweepError
from .rates import Allocation, SchemeKind
from .sca import ScaConfig
from .semantic import SemanticParams

__all__ = [
    "ExperimentConfig",
    "SweepRow",
    "SweepResult",
    "default_config",
    "load_config",
    "run_sweep",
    "emit_csv",
    "emit_plot",
    "allocations_filename",
    "emit_allocations",
]

CSV_HEADER = (
    "scheme,p_bar_w,k,ergodic_secrecy_rate_bps_hz,avg_power_w,duality_gap,wall_ms,seed"
)

_ALL_SCHEMES = (
    SchemeKind.SC_OPTIMAL,
    SchemeKind.SC_SCA,
    SchemeKind.BIT_AN,
    SchemeKind.BIT_ONLY,
)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one sweep needs; the no-argument form is the stock experiment."""

    channel: ChannelConfig = field(default_factory=ChannelConfig)
    semantic: SemanticParams = field(default_factory=SemanticParams)
    solver: DualConfig = field(default_factory=DualConfig)
    sca: ScaConfig = field(default_factory=ScaConfig)
    p_hat_w: float = 10.0
    p_bar_w: tuple[float, ...] = (0.1, 0.5, 1.0, 5.0, 10.0)
    schemes: tuple[SchemeKind, ...] = _ALL_SCHEMES
    k_values: tuple[int, ...] = (3, 5, 8)
    per_k_semantic: dict[int, SemanticParams] = field(default_factory=dict)
    n_states: int = 1000
    output_dir: str = "out"

    def __post_init__(self) -> None:
        if not self.p_bar_w:
            raise ConfigError("budget.p_bar_w must list at least one average power")
        for p_bar in self.p_bar_w:
            try:
                PowerBudget(p_bar=p_bar, p_hat=self.p_hat_w)
            except ValueError as exc:
                raise ConfigError(f"budget.p_bar_w entry {p_bar!r}: {exc}") from exc
        if not self.schemes:
            raise ConfigError("schemes must name at least one scheme")
        if len(set(self.schemes)) != len(self.schemes):
            raise ConfigError("schemes must not repeat")
        if not self.k_values:
            raise ConfigError("k_values must list at least one K")
        for k in self.k_values:
            if not (isinstance(k, (int, np.integer)) and k >= 1):
                raise ConfigError(f"k_values entry {k!r} must be a positive integer")
        if self.n_states < 1:
            raise ConfigError("n_states must be at least 1")

    def semantic_for_k(self, k: int) -> SemanticParams:
        """Similarity parameters for prefactor K: explicit override or the base
        curve rescaled by 1/K."""
        if k in self.per_k_semantic:
            return self.per_k_semantic[k]
        if k == self.semantic.k:
            return self.semantic
        return dataclasses.replace(self.semantic, k=k)


@dataclass(frozen=True)
class SweepRow:
    """One (scheme, budget, K) cell of the sweep."""

    scheme: str
    p_bar_w: float
    k: int
    ergodic_secrecy_rate_bps_hz: float
    avg_power_w: float
    duality_gap: float | None
    wall_ms: float
    seed: int
    allocations: list[Allocation] = field(repr=False)
    extra: dict = field(default_factory=dict, repr=False)


@dataclass(frozen=True)
class SweepResult:
    rows: list[SweepRow]
    n_states: int
    seed: int


def default_config() -> ExperimentConfig:
    return ExperimentConfig()


_SECTIONS = {
    "channel": ChannelConfig,
    "semantic": SemanticParams,
    "solver": DualConfig,
    "sca": ScaConfig,
}


def _build_section(cls, data: dict, section: str):
    if not isinstance(data, dict):
        raise ConfigError(f"section {section!r} must be an object")
    known = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"unknown key {key!r} in section {section!r}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"section {section!r}: {exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse a JSON experiment file; unknown keys and bad values are named."""
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!s}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!s} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")

    allowed = set(_SECTIONS) | {
        "budget",
        "schemes",
        "k_values",
        "per_k_semantic",
        "n_states",
        "output_dir",
    }
    for key in raw:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} at config top level")

    kwargs: dict = {}
    for name, cls in _SECTIONS.items():
        if name in raw:
            kwargs[name] = _build_section(cls, raw[name], name)

    budget = raw.get("budget", {})
    if not isinstance(budget, dict):
        raise ConfigError("section 'budget' must be an object")
    for key in budget:
        if key not in ("p_hat_w", "p_bar_w"):
            raise ConfigError(f"unknown key {key!r} in section 'budget'")
    if "p_hat_w" in budget:
        kwargs["p_hat_w"] = float(budget["p_hat_w"])
    if "p_bar_w" in budget:
        entries = budget["p_bar_w"]
        if not isinstance(entries, list):
            raise ConfigError("budget.p_bar_w must be a list")
        kwargs["p_bar_w"] = tuple(float(v) for v in entries)

    if "schemes" in raw:
        if not isinstance(raw["schemes"], list):
            raise ConfigError("schemes must be a list of scheme tags")
        kwargs["schemes"] = tuple(_parse_scheme(tag) for tag in raw["schemes"])
    if "k_values" in raw:
        if not isinstance(raw["k_values"], list):
            raise ConfigError("k_values must be a list of integers")
        kwargs["k_values"] = tuple(raw["k_values"])
    if "per_k_semantic" in raw:
        if not isinstance(raw["per_k_semantic"], dict):
            raise ConfigError("per_k_semantic must map K to a semantic section")
        overrides = {}
        for key, sub in raw["per_k_semantic"].items():
            try:
                k = int(key)
            except ValueError as exc:
                raise ConfigError(f"per_k_semantic key {key!r} must be an integer") from exc
            overrides[k] = _build_section(SemanticParams, sub, f"per_k_semantic.{key}")
        kwargs["per_k_semantic"] = overrides
    if "n_states" in raw:
        kwargs["n_states"] = raw["n_states"]
    if "output_dir" in raw:
        kwargs["output_dir"] = str(raw["output_dir"])

    try:
        return ExperimentConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _parse_scheme(tag: str) -> SchemeKind:
    try:
        return SchemeKind(tag)
    except ValueError:
        known = ", ".join(s.value for s in _ALL_SCHEMES)
        raise ConfigError(f"unknown scheme tag {tag!r} (known: {known})") from None


def run_sweep(cfg: ExperimentConfig, quiet: bool = False) -> SweepResult:
    """Run every requested (scheme, budget, K) cell on one shared state set.

    Schemes price K through the rate prefactor; only the SCA scheme sweeps the
    configured k_values (the bit-oriented baselines carry no semantic stream,
    and the grid scheme reports the base K), mirroring how the reference
    experiment explores K.
    """
    states = sample_states(cfg.channel, cfg.n_states)
    seed = cfg.channel.seed
    rows: list[SweepRow] = []
    for scheme in cfg.schemes:
        if scheme is SchemeKind.SC_SCA:
            ks = tuple(cfg.k_values)
        else:
            ks = (cfg.semantic.k,)
        for k in ks:
            sp = cfg.semantic_for_k(k)
            for p_bar in cfg.p_bar_w:
                budget = PowerBudget(p_bar=p_bar, p_hat=cfg.p_hat_w)
                start = time.perf_counter()
                try:
                    if scheme is SchemeKind.SC_SCA:
                        res = sca.run(states, budget, sp, cfg.sca)
                        allocations = res.allocations
                        rate = res.ergodic_rate
                        power = res.avg_power
                        gap = None
                        extra = {
                            "iterations": res.iterations,
                            "converged": res.converged,
                            "objective_history": res.objective_history,
                        }
                    else:
                        sol = dual.solve(states, budget, sp, cfg.solver, scheme)
                        allocations = sol.allocations
                        rate = sol.ergodic_rate
                        power = sol.avg_power
                        gap = sol.duality_gap
                        extra = {
                            "lam": sol.lam,
                            "dual_value": sol.dual_value,
                            "zero_power_fraction": sol.zero_power_fraction,
                        }
                except Exception as exc:
                    raise SweepError(
                        f"scheme {scheme.value!r} failed at p_bar={p_bar:g} W, "
                        f"K={k}: {exc}"
                    ) from exc
                wall_ms = (time.perf_counter() - start) * 1e3
                rows.append(
                    SweepRow(
                        scheme=scheme.value,
                        p_bar_w=p_bar,
                        k=k,
                        ergodic_secrecy_rate_bps_hz=rate,
                        avg_power_w=power,
                        duality_gap=gap,
                        wall_ms=wall_ms,
                        seed=seed,
                        allocations=allocations,
                        extra=extra,
                    )
                )
                if not quiet:
                    note = ""
                    if "zero_power_fraction" in extra and extra["zero_power_fraction"]:
                        note = f"  silent states: {extra['zero_power_fraction']:.1%}"
                    if "iterations" in extra:
                        note = f"  iterations: {extra['iterations']}"
                    print(
                        f"{scheme.value:>10}  p_bar={p_bar:<6g} K={k}  "
                        f"rate={rate:.4f} bit/s/Hz  power={power:.4g} W  "
                        f"[{wall_ms:.0f} ms]{note}"
                    )
    return SweepResult(rows=rows, n_states=cfg.n_states, seed=seed)


def _fmt6(value: float) -> str:
    """Fixed (non-exponential) notation with six significant digits."""
    return np.format_float_positional(
        float(value), precision=6, unique=False, fractional=False, trim="k"
    )


def emit_csv(result: SweepResult, path: str | Path) -> None:
    """Write the sweep table; one row per (scheme, budget, K) cell."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in result.rows:
            writer.writerow(
                [
                    row.scheme,
                    _fmt6(row.p_bar_w),
                    str(row.k),
                    _fmt6(row.ergodic_secrecy_rate_bps_hz),
                    _fmt6(row.avg_power_w),
                    "" if row.duality_gap is None else _fmt6(max(row.duality_gap, 0.0)),
                    _fmt6(row.wall_ms),
                    str(row.seed),
                ]
            )


def allocations_filename(scheme: str, p_bar: float, k: int, base_k: int) -> str:
    stem = f"allocations_{scheme}_{p_bar:g}"
    if k != base_k:
        stem += f"_k{k}"
    return stem + ".csv"


def emit_allocations(row: SweepRow, path: str | Path) -> None:
    """Full-precision per-state dump so policies can be audited and replayed."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["state_index", "p_w", "beta", "mu"])
        for i, a in enumerate(row.allocations):
            writer.writerow([str(i), repr(a.p), repr(a.beta), str(a.mu)])


def emit_plot(result: SweepResult, path: str | Path) -> None:
    """Rate-versus-budget SVG with one series per (scheme, K) in the result."""
    if not result.rows:
        raise ValueError("cannot plot an empty sweep result")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    series: dict[tuple[str, int], list[SweepRow]] = {}
    for row in result.rows:
        series.setdefault((row.scheme, row.k), []).append(row)
    multi_k = len({k for _, k in series}) > 1

    with plt.rc_context({"svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for (scheme, k), rows in series.items():
            rows = sorted(rows, key=lambda r: r.p_bar_w)
            label = f"{scheme} (K={k})" if multi_k else scheme
            ax.plot(
                [r.p_bar_w for r in rows],
                [r.ergodic_secrecy_rate_bps_hz for r in rows],
                marker="o",
                label=label,
            )
        ax.set_xscale("log")
        ax.set_xlabel("average power budget (W)")
        ax.set_ylabel("ergodic secrecy rate (bit/s/Hz)")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
