"""Command-line workbench: every analysis as a subcommand.

Artifacts are plot-ready CSV (comma separated, dot decimal, LF endings, one
header row) with provenance comment lines, plus a JSON summary on stdout.
Energies appear in both joule and watt-hour columns.  Exit code 0 means all
requested computations completed; infeasible points are reported in-band.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import __version__
from .classical import (
    classical_energy_per_sample,
    classical_time_per_sample,
    flop_lower_bound,
    rcs_energy_ratio,
)
from .config import ConfigError, WorkbenchConfig, load_config
from .fluctuation import McConfig, averaged_thresholds, run_fluctuation
from .metric import metric_breakdown, mode_count
from .optimizer import (
    OperatingPoint,
    computational_threshold,
    energy_threshold,
    fixed_hardware_sweep,
    lost_photon_sweep,
    optimize_for_metric,
    sweep_targets,
)
from .oracle import click_statistics
from .photon import effective_indistinguishability, indistinguishability_zpl
from .resources import (
    end_to_end_transmission,
    quantum_energy_per_sample,
    transmission_factors,
    watt_hours,
)

FIGURE_IDS = ("fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig4", "fig5", "table1")


@dataclass
class Artifact:
    name: str
    header: list[str]
    rows: list[list]


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def format_csv(artifact: Artifact, provenance: dict[str, Any]) -> str:
    lines = [f"# {key}={value}" for key, value in provenance.items()]
    lines.append(",".join(artifact.header))
    for row in artifact.rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _parse_int_range(text: str) -> range:
    """Inclusive integer range 'a:b'."""
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a:b', got '{text}'") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"range '{text}' is empty")
    return range(lo, hi + 1)


def _point_row(point: OperatingPoint) -> list:
    return point.row() + [watt_hours(point.e_q_J), watt_hours(point.e_c_J)]


_POINT_HEADER = list(OperatingPoint.FIELDS) + ["e_q_Wh", "e_c_Wh"]


def _avg_rows_artifact(name: str, result) -> Artifact:
    header = [
        "target",
        "mean_metric",
        "e_q_J",
        "e_q_wh",
        "mean_e_c_J",
        "mean_e_c_wh",
        "t_q_s",
        "mean_t_c_s",
        "eta_star",
    ]
    rows = []
    for row in result.rows:
        f = row.fluctuation
        rows.append(
            [
                row.target,
                f.mean_metric,
                f.e_q_J,
                watt_hours(f.e_q_J),
                f.mean_e_c_J,
                watt_hours(f.mean_e_c_J),
                f.t_q_s,
                f.mean_t_c_s,
                row.point.eta_star,
            ]
        )
    return Artifact(name=name, header=header, rows=rows)


def _histogram_artifact(name: str, fluct) -> Artifact:
    rows = [[bin_, count] for bin_, count in sorted(fluct.metric_histogram.items())]
    return Artifact(name=name, header=["metric_bin", "count"], rows=rows)


def _hardware_artifact(name: str, rows) -> Artifact:
    header = ["n", "m", "l", "eta", "metric", "e_q_J", "e_q_Wh", "t_q_s", "e_c_J", "e_c_Wh", "t_c_s"]
    data = [
        [r.n, r.m, r.l, r.eta, r.metric, r.e_q_J, watt_hours(r.e_q_J), r.t_q_s, r.e_c_J,
         watt_hours(r.e_c_J), r.t_c_s]
        for r in rows
    ]
    return Artifact(name=name, header=header, rows=data)


def _indist_artifact(name: str, cfg: WorkbenchConfig, tmin: float, tmax: float, step: float) -> Artifact:
    if tmin <= 0 or tmax < tmin or step <= 0:
        raise ValueError("need 0 < tmin <= tmax and step > 0")
    rows = []
    count = int(round((tmax - tmin) / step))
    for i in range(count + 1):
        t = tmin + i * step
        rows.append(
            [
                t,
                indistinguishability_zpl(t, cfg.distinguishability),
                effective_indistinguishability(t, cfg.distinguishability),
            ]
        )
    return Artifact(name=name, header=["T_K", "I_zpl", "I_eff"], rows=rows)


def _fluctuation_summary(fluct) -> dict[str, Any]:
    return {
        "n": fluct.n,
        "m": fluct.m,
        "eta": fluct.eta,
        "T_K": fluct.temperature_K,
        "seed": fluct.seed,
        "n_samples": fluct.n_samples,
        "mean_metric": fluct.mean_metric,
        "mean_e_c_J": fluct.mean_e_c_J,
        "mean_e_c_wh": watt_hours(fluct.mean_e_c_J),
        "e_q_J": fluct.e_q_J,
        "e_q_wh": watt_hours(fluct.e_q_J),
        "mean_t_c_s": fluct.mean_t_c_s,
        "t_q_s": fluct.t_q_s,
    }


def _optimizer_args(cfg: WorkbenchConfig) -> dict[str, Any]:
    return {
        "space": cfg.search,
        "model": cfg.distinguishability,
        "tol": cfg.tolerances,
        "facility": cfg.facility,
        "platform": cfg.platform,
    }


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (summary dict, list of artifacts)


def _cmd_model_indist(args, cfg, seed):
    artifact = _indist_artifact("indist", cfg, args.tmin, args.tmax, args.step)
    summary = {"rows": len(artifact.rows), "T_min_K": args.tmin, "T_max_K": args.tmax}
    return summary, [artifact]


def _cmd_metric_eval(args, cfg, seed):
    breakdown = metric_breakdown(args.T, args.n, args.l, cfg.distinguishability, cfg.tolerances)
    summary = {
        "I": breakdown.indistinguishability,
        "c_s": breakdown.c_s,
        "c_s_l": breakdown.c_s_l,
        "ratio": breakdown.ratio,
        "k_eff": breakdown.k_eff,
        "metric": breakdown.value,
        "clamped": breakdown.clamped,
    }
    return summary, []


def _cmd_budget_eval(args, cfg, seed):
    budget = cfg.budget(args.column)
    factors = transmission_factors(args.modes, budget)
    summary = {
        "column": args.column,
        "modes": args.modes,
        "eta": end_to_end_transmission(args.modes, budget),
        "factors": factors,
    }
    rows = [[args.column, args.modes] + list(factors.values()) + [summary["eta"]]]
    header = ["budget", "m"] + list(factors) + ["eta_total"]
    return summary, [Artifact(name="budget", header=header, rows=rows)]


def _cmd_classical_eval(args, cfg, seed):
    flops = flop_lower_bound(args.modes, args.metric)
    joule = classical_energy_per_sample(args.modes, args.metric, cfg.platform)
    summary = {
        "flops": flops,
        "joule": joule,
        "wh": watt_hours(joule),
        "seconds": classical_time_per_sample(args.modes, args.metric, cfg.platform),
    }
    return summary, []


def _cmd_optimize(args, cfg, seed):
    point = optimize_for_metric(args.M0, args.l, **_optimizer_args(cfg))
    summary = {name: getattr(point, name) for name in OperatingPoint.FIELDS}
    summary["e_q_Wh"] = watt_hours(point.e_q_J)
    summary["e_c_Wh"] = watt_hours(point.e_c_J)
    artifact = Artifact(name="optimize", header=_POINT_HEADER, rows=[_point_row(point)])
    return summary, [artifact]


def _cmd_sweep(args, cfg, seed):
    points = sweep_targets(args.M0_range, args.l, **_optimizer_args(cfg))
    artifact = Artifact(
        name="sweep", header=_POINT_HEADER, rows=[_point_row(p) for p in points]
    )
    summary = {
        "targets": len(points),
        "feasible": sum(1 for p in points if p.feasible),
        "l": args.l,
    }
    return summary, [artifact]


def _cmd_thresholds(args, cfg, seed):
    kwargs = _optimizer_args(cfg)
    targets = args.M0_range
    points = sweep_targets(targets, args.l, **kwargs)
    summary = {
        "l": args.l,
        "energy": energy_threshold(args.l, targets=targets, **kwargs),
        "computational": computational_threshold(args.l, targets=targets, **kwargs),
    }
    artifact = Artifact(
        name="thresholds", header=_POINT_HEADER, rows=[_point_row(p) for p in points]
    )
    return summary, [artifact]


def _cmd_lsweep(args, cfg, seed):
    rows = lost_photon_sweep(args.l_range, **_optimizer_args(cfg))
    artifact = Artifact(
        name="lsweep",
        header=["l", "energy_threshold", "min_k_eff", "note"],
        rows=[[r.l, r.energy_threshold, r.min_k_eff, r.note] for r in rows],
    )
    summary = {
        "l_values": len(rows),
        "energy_thresholds": {str(r.l): r.energy_threshold for r in rows},
    }
    return summary, [artifact]


def _cmd_hardware_sweep(args, cfg, seed):
    rows = fixed_hardware_sweep(
        args.n_range,
        cfg.budget(args.budget),
        args.T,
        cfg.distinguishability,
        cfg.tolerances,
        cfg.facility,
        cfg.platform,
    )
    artifact = _hardware_artifact("hardware_sweep", rows)
    best = max(rows, key=lambda r: r.metric)
    summary = {
        "budget": args.budget,
        "T_K": args.T,
        "argmax_n": best.n,
        "max_metric": best.metric,
        "metric_at_last_n": rows[-1].metric,
    }
    return summary, [artifact]


def _cmd_fluctuate(args, cfg, seed):
    mc = McConfig(n_samples=args.samples, seed=seed, n_seeds=cfg.mc.n_seeds)
    fluct = run_fluctuation(
        args.n,
        args.modes,
        args.eta,
        args.T,
        mc,
        cfg.distinguishability,
        cfg.tolerances,
        cfg.facility,
        cfg.platform,
    )
    return _fluctuation_summary(fluct), [_histogram_artifact("fluctuate", fluct)]


def _cmd_thresholds_avg(args, cfg, seed):
    mc = McConfig(n_samples=args.samples, seed=seed, n_seeds=cfg.mc.n_seeds)
    result = averaged_thresholds(args.l, mc, **_optimizer_args(cfg))
    summary = {
        "l": args.l,
        "n_samples": mc.n_samples,
        "energy": result.energy,
        "computational": result.computational,
    }
    return summary, [_avg_rows_artifact("thresholds_avg", result)]


def _cmd_oracle_verify(args, cfg, seed):
    stats = click_statistics(args.n, args.m, args.trials, seed)
    summary = {
        "n": stats.n,
        "m": stats.m,
        "trials": stats.trials,
        "seed": seed,
        "mean_clicks": stats.mean_clicks,
        "predicted": stats.predicted,
        "flat_average_clicks": stats.flat_average_clicks,
        "ld_center": stats.ld_center,
        "std_clicks": stats.std_clicks,
        "se_mean": stats.se_mean,
        "z_score": stats.z_score,
        "normalization_max_err": stats.normalization_max_err,
        "ld_violations": stats.ld_violations,
    }
    artifact = Artifact(
        name="oracle_verify",
        header=["t", "mean_tail", "se", "bound"],
        rows=[list(row) for row in stats.tail],
    )
    return summary, [artifact]


def _cmd_compare_rcs(args, cfg, seed):
    e_q = quantum_energy_per_sample(args.T, args.n, cfg.facility)
    ratio = rcs_energy_ratio(watt_hours(e_q), cfg.rcs)
    summary = {
        "n": args.n,
        "T_K": args.T,
        "e_q_J": e_q,
        "e_q_wh": watt_hours(e_q),
        "rcs_energy_per_sample_Wh": cfg.rcs.energy_per_sample_Wh,
        "rcs_time_per_sample_s": cfg.rcs.time_per_sample_s,
        "energy_ratio": ratio,
        "note": "order-of-magnitude hardware benchmark; the two sampling tasks "
        "have no known hardness mapping",
    }
    return summary, []


def _cmd_figure(args, cfg, seed):
    fig = args.id
    mc = McConfig(n_samples=cfg.mc.n_samples, seed=seed, n_seeds=cfg.mc.n_seeds)
    opt = _optimizer_args(cfg)
    if fig in ("fig2a", "fig2b"):
        result = averaged_thresholds(12, mc, **opt)
        summary = {
            "figure": fig,
            "energy_threshold": result.energy,
            "computational_threshold": result.computational,
        }
        return summary, [_avg_rows_artifact(fig, result)]
    if fig in ("fig2c", "fig2d"):
        rows = fixed_hardware_sweep(
            range(1, 76), cfg.budget("energetic"), 3.0,
            cfg.distinguishability, cfg.tolerances, cfg.facility, cfg.platform,
        )
        best = max(rows, key=lambda r: r.metric)
        summary = {"figure": fig, "argmax_n": best.n, "max_metric": best.metric}
        return summary, [_hardware_artifact(fig, rows)]
    if fig == "fig3":
        artifact = _indist_artifact(fig, cfg, 1.0, 50.0, 0.1)
        return {"figure": fig, "rows": len(artifact.rows)}, [artifact]
    if fig == "fig4":
        artifacts = []
        summary: dict[str, Any] = {"figure": fig}
        for n in (29, 24):
            m = mode_count(n)
            fluct = run_fluctuation(
                n, m, 0.60, 3.0, mc,
                cfg.distinguishability, cfg.tolerances, cfg.facility, cfg.platform,
            )
            artifacts.append(_histogram_artifact(f"{fig}_n{n}_m{m}", fluct))
            summary[f"n{n}"] = _fluctuation_summary(fluct)
        return summary, artifacts
    if fig == "fig5":
        points = sweep_targets(range(1, 26), 12, **opt)
        summary = {
            "figure": fig,
            "energy_threshold": energy_threshold(12, **opt),
            "computational_threshold": computational_threshold(12, **opt),
        }
        return summary, [
            Artifact(name=fig, header=_POINT_HEADER, rows=[_point_row(p) for p in points])
        ]
    if fig == "table1":
        rows = []
        for name, m in (("sota", 51), ("energetic", 51), ("comp", 59)):
            budget = cfg.budget(name)
            factors = transmission_factors(m, budget)
            rows.append(
                [name, m, budget.eta_of, budget.eta_d, budget.eta_dmx, budget.c_mzi_db,
                 budget.c_coup_db, factors["coupling"], factors["propagation"],
                 end_to_end_transmission(m, budget)]
            )
        header = ["budget", "m", "eta_of", "eta_d", "eta_dmx", "c_mzi_db", "c_coup_db",
                  "coupling", "propagation", "eta_total"]
        summary = {"figure": fig, "eta_totals": {r[0]: r[-1] for r in rows}}
        return summary, [Artifact(name=fig, header=header, rows=rows)]
    raise ValueError(f"unknown figure id '{fig}'")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boson-energetics",
        description="Energy and runtime cost workbench for photonic boson sampling.",
    )
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config entry, e.g. cryostat.power_override_W=1237.5 (repeatable)",
    )
    parser.add_argument("--out", help="directory for CSV/JSON artifacts")
    parser.add_argument("--seed", type=int, help="seed override for randomized commands")
    parser.add_argument("--format", choices=("csv", "json"), default="json",
                        help="stdout format (default json)")
    sub = parser.add_subparsers(dest="command", required=True)

    model = sub.add_parser("model", help="source physics").add_subparsers(
        dest="subcommand", required=True
    )
    p = model.add_parser("indist", help="indistinguishability vs temperature")
    p.add_argument("--tmin", type=float, default=1.0)
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--step", type=float, default=0.1)
    p.set_defaults(handler=_cmd_model_indist)

    metric_parser = sub.add_parser("metric", help="hardness metric").add_subparsers(
        dest="subcommand", required=True
    )
    p = metric_parser.add_parser("eval", help="evaluate the metric at one point")
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=float, required=True)
    p.set_defaults(handler=_cmd_metric_eval)

    budget = sub.add_parser("budget", help="transmission budget").add_subparsers(
        dest="subcommand", required=True
    )
    p = budget.add_parser("eval", help="end-to-end transmission for a named budget")
    p.add_argument("--column", required=True)
    p.add_argument("--modes", type=int, required=True)
    p.set_defaults(handler=_cmd_budget_eval)

    classical = sub.add_parser("classical", help="classical cost").add_subparsers(
        dest="subcommand", required=True
    )
    p = classical.add_parser("eval", help="FLOP bound, energy, and time at one point")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--metric", type=float, required=True)
    p.set_defaults(handler=_cmd_classical_eval)

    p = sub.add_parser("optimize", help="minimum-power operating point for a target metric")
    p.add_argument("--M0", type=float, required=True)
    p.add_argument("--l", type=float, required=True)
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("sweep", help="operating points over a target range")
    p.add_argument("--M0-range", dest="M0_range", type=_parse_int_range, default=range(1, 26))
    p.add_argument("--l", type=float, required=True)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("thresholds", help="fixed-loss advantage thresholds")
    p.add_argument("--l", type=float, required=True)
    p.add_argument("--M0-range", dest="M0_range", type=_parse_int_range, default=range(1, 26))
    p.set_defaults(handler=_cmd_thresholds)

    p = sub.add_parser("lsweep", help="threshold and k_eff floor per lost-photon count")
    p.add_argument("--l-range", dest="l_range", type=_parse_int_range, default=range(1, 26))
    p.set_defaults(handler=_cmd_lsweep)

    p = sub.add_parser("hardware-sweep", help="fixed per-component-loss scaling study")
    p.add_argument("--budget", default="energetic")
    p.add_argument("--T", type=float, default=3.0)
    p.add_argument("--n-range", dest="n_range", type=_parse_int_range, default=range(1, 76))
    p.set_defaults(handler=_cmd_hardware_sweep)

    p = sub.add_parser("fluctuate", help="Monte Carlo over binomial transmission")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--T", type=float, default=3.0)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(handler=_cmd_fluctuate)

    p = sub.add_parser("thresholds-avg", help="advantage thresholds on the mean-metric axis")
    p.add_argument("--l", type=float, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(handler=_cmd_thresholds_avg)

    oracle = sub.add_parser("oracle", help="exact sampler checks").add_subparsers(
        dest="subcommand", required=True
    )
    p = oracle.add_parser("verify", help="click statistics against their predictions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(handler=_cmd_oracle_verify)

    p = sub.add_parser("figure", help="emit a named dataset preset")
    p.add_argument("id", choices=FIGURE_IDS)
    p.set_defaults(handler=_cmd_figure)

    p = sub.add_parser("compare-rcs", help="energy ratio against the RCS reference point")
    p.add_argument("--n", type=int, default=24)
    p.add_argument("--T", type=float, default=3.0)
    p.set_defaults(handler=_cmd_compare_rcs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    seed = args.seed if args.seed is not None else cfg.mc.seed
    if getattr(args, "samples", None) is None and hasattr(args, "samples"):
        args.samples = cfg.mc.n_samples

    provenance = {
        "config_sha256": cfg.sha256(),
        "seed": seed,
        "version": __version__,
    }
    try:
        summary, artifacts = args.handler(args, cfg, seed)
    except (ValueError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    payload = {
        "command": args.command,
        "provenance": provenance,
        "summary": summary,
        "config": cfg.raw,
    }

    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        for artifact in artifacts:
            (out_dir / f"{artifact.name}.csv").write_text(format_csv(artifact, provenance))
        (out_dir / f"{args.command}_summary.json").write_text(
            json.dumps(payload, indent=2) + "\n"
        )

    if args.format == "csv" and artifacts:
        sys.stdout.write(format_csv(artifacts[0], provenance))
    else:
        compact = dict(payload)
        compact.pop("config")
        print(json.dumps(compact, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
