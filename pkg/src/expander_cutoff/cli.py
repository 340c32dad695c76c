"""Command-line front end: builds, spectral reports, exact TV profiles,
hitting-time sampling, and the sweep studies, with reproducible artifacts.

Every artifact starts with `#` provenance lines (tool version, one
timestamp line, the command and parameters); reruns with identical
parameters are byte-identical except for the timestamp line.  JSON bodies
follow the header; read_artifact() strips the header again.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, construction, mixing, montecarlo, spectral
from .construction import ConstructionParams
from .expanders import ExpanderSpec, make_expander
from .graphs import GraphError, from_text, to_text


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# artifact io


def _header(command: str, params: dict) -> str:
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    param_s = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    return (f"# expander-cutoff {__version__}\n"
            f"# generated: {stamp}\n"
            f"# command: {command} {param_s}\n")


def write_artifact(path: Path, command: str, params: dict, body: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_header(command, params) + body)


def write_json(path: Path, command: str, params: dict, obj) -> None:
    write_artifact(path, command, params,
                   json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_artifact(path) -> str:
    """Artifact body with the provenance header stripped."""
    lines = Path(path).read_text().splitlines(keepends=True)
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        i += 1
    return "".join(lines[i:])


def read_json(path):
    return json.loads(read_artifact(path))


# ---------------------------------------------------------------------------
# argument plumbing


def _add_common(p, seed_required=False):
    p.add_argument("--config", type=str, default=None,
                   help="key=value file; explicit flags override it")
    p.add_argument("--seed", type=int, default=None, required=False)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.add_argument("--out", type=str, default="out")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(_seed_required=seed_required)


def _add_build_params(p):
    # defaults are filled after the config merge so a config file can set
    # them while explicit flags still win
    p.add_argument("--variant", choices=construction.VARIANTS, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--Lprime", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--min-gap", type=float, default=None)


def _add_walk_params(p):
    p.add_argument("--tmax", type=int, default=None)
    p.add_argument("--stride", type=int, default=None)
    p.add_argument("--laziness", type=float, default=None)
    p.add_argument("--eps", type=float, action="append", default=None,
                   help="repeatable; defaults to 0.25 and 0.75")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="expander-cutoff",
        description="Build leveled expander families and measure their "
                    "random-walk mixing behavior.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a graph and emit it with a census")
    _add_build_params(p)
    _add_common(p, seed_required=True)

    p = sub.add_parser("spectral", help="spectral report for a built graph")
    p.add_argument("--graph", type=str, required=True)
    p.add_argument("--cheeger-exact", action="store_true")
    p.add_argument("--dirichlet", action="store_true")
    _add_common(p)

    p = sub.add_parser("profile", help="exact TV profiles from chosen starts")
    p.add_argument("--graph", type=str, required=True)
    p.add_argument("--starts", type=str, default=None,
                   help="comma-separated vertex ids; defaults to the "
                        "representative start set")
    _add_walk_params(p)
    _add_common(p)

    p = sub.add_parser("hitting", help="hitting-time samples to the leaf level")
    p.add_argument("--graph", type=str, default=None)
    p.add_argument("--chain", action="store_true",
                   help="sample the exact level chain instead of a built "
                        "graph (any h, 5-regular family only)")
    _add_build_params(p)
    p.add_argument("--start", type=str, default="0",
                   help="start vertex (graph mode) or start level (chain mode)")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--raw", action="store_true",
                   help="also write one sample per line")
    _add_common(p, seed_required=True)

    p = sub.add_parser("cutoff-report",
                       help="cutoff ratio versus h for a build family")
    _add_build_params(p)
    p.add_argument("--hmin", type=int, required=True)
    p.add_argument("--hmax", type=int, required=True)
    _add_walk_params(p)
    _add_common(p, seed_required=True)

    p = sub.add_parser("cylinder-sweep",
                       help="mixing time versus cylinder length at fixed host")
    p.add_argument("--Ls", type=str, default="5,9,13")
    p.add_argument("--m", type=int, default=4)
    _add_walk_params(p)
    _add_common(p, seed_required=True)

    p = sub.add_parser("nocutoff-demo",
                       help="uneven-stretch build: bimodality plus cutoff ratio")
    _add_build_params(p)
    p.add_argument("--samples", type=int, default=5000)
    _add_walk_params(p)
    _add_common(p, seed_required=True)
    return ap


_CONFIG_TYPES = {"h": int, "L": int, "Lprime": int, "m": int, "seed": int,
                 "tmax": int, "stride": int, "samples": int, "threads": int,
                 "laziness": float, "min_gap": float}
_POST_CONFIG_DEFAULTS = {"variant": "five_regular", "Lprime": 0, "m": 0,
                         "min_gap": 0.05}


def _apply_config(args):
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise UsageError(f"config file not found: {path}")
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"bad config line: {line!r}")
            key, val = line.split("=", 1)
            key = key.strip().replace("-", "_")
            val = val.strip()
            if not hasattr(args, key):
                raise UsageError(f"unknown config key: {key}")
            if getattr(args, key) is None:
                setattr(args, key, _CONFIG_TYPES.get(key, str)(val))
    for key, default in _POST_CONFIG_DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, default)


def _require_seed(args):
    if getattr(args, "_seed_required", False) and args.seed is None:
        raise UsageError("this command needs an explicit --seed")


def _params_from_args(args) -> ConstructionParams:
    if args.h is None and args.variant != "cylinder":
        raise UsageError("--h is required for this variant")
    if args.L is None:
        raise UsageError("--L is required")
    seed = args.seed if args.seed is not None else 1
    return ConstructionParams(
        h=args.h or 0, L=args.L, variant=args.variant,
        L_prime=args.Lprime, m=args.m,
        expander_seeds=(seed, seed + 1), min_gap=args.min_gap)


def _load_graph(path):
    p = Path(path)
    if not p.exists():
        raise UsageError(f"graph file not found: {p}")
    return from_text(read_artifact(p))


def _param_summary(args, keys):
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


# ---------------------------------------------------------------------------
# subcommands


def _cmd_build(args) -> int:
    params = _params_from_args(args)
    g = construction.build(params)
    out = Path(args.out)
    meta = {k: v for k, v in g.meta.items()
            if k in ("variant", "h", "L", "L_prime", "m", "degree", "seeds",
                     "gap1", "gap2", "L_floor", "meets_L_floor", "bipartite")}
    info = _param_summary(args, ("variant", "h", "L", "Lprime", "m", "seed"))
    write_artifact(out / "graph.ev", "build", info, to_text(g))
    census = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "degree_min": int(g.degrees().min()),
        "degree_max": int(g.degrees().max()),
        "levels": {str(k): v for k, v in construction.level_census(g).items()},
        "meta": {k: (list(v) if isinstance(v, tuple) else v)
                 for k, v in meta.items()},
    }
    write_json(out / "census.json", "build", info, census)
    print(f"wrote {out / 'graph.ev'} ({g.vertex_count} vertices, "
          f"{g.edge_count} edges)")
    return 0


def _cmd_spectral(args) -> int:
    g = _load_graph(args.graph)
    rep = spectral.spectral_report(g, cheeger_exact=args.cheeger_exact,
                                   dirichlet=args.dirichlet)
    info = {"graph": args.graph}
    write_json(Path(args.out) / "spectral.json", "spectral", info,
               rep.as_dict())
    print(f"gap={rep.gap:.6f} lambda_abs={rep.lambda_abs:.6f}")
    return 0


def _cmd_profile(args) -> int:
    g = _load_graph(args.graph)
    laziness = mixing.default_laziness(g) if args.laziness is None else args.laziness
    starts = ([int(s) for s in args.starts.split(",")] if args.starts
              else mixing.default_starts(g))
    eps = args.eps or [0.25, 0.75]
    tstar = g.meta.get("tstar")
    t_max = args.tmax or (int(20 * tstar) + 200 if tstar else 20000)
    out = Path(args.out)
    summaries = []
    for s in starts:
        prof = mixing.tv_profile_until(g, s, target=min(eps) * 0.98,
                                       t_cap=t_max, stride=args.stride,
                                       laziness=laziness)
        info = {"graph": args.graph, "start": s, "laziness": laziness,
                "stride": prof.stride}
        rows = "t,tv\n" + "".join(f"{t},{v:.12g}\n" for t, v in prof.as_rows())
        write_artifact(out / f"profile_start{s}.csv", "profile", info, rows)
        summaries.append(mixing.summarize_profile(prof, eps, tstar=tstar))
    worst = max(summaries, key=lambda sm: sm.tmix[0.25])
    body = {"starts": [sm.as_dict() for sm in summaries],
            "worst_start": worst.as_dict()}
    write_json(out / "profile_summary.json", "profile",
               {"graph": args.graph}, body)
    print(f"worst start {worst.start}: tmix(1/4)={worst.tmix[0.25]} "
          f"ratio={worst.cutoff_ratio:.3f}")
    return 0


def _cmd_hitting(args) -> int:
    out = Path(args.out)
    info = _param_summary(args, ("variant", "h", "L", "Lprime", "seed",
                                 "samples", "start", "chain"))
    if args.chain:
        params = _params_from_args(args)
        chain = montecarlo.descent_chain(params)
        predicted = (montecarlo.predicted_tau(0, params.h, params.L)
                     if params.variant == "five_regular" else None)
        stats = montecarlo.chain_hitting_stats(chain, args.samples, args.seed,
                                               start_level=int(args.start),
                                               predicted=predicted)
    else:
        if not args.graph:
            raise UsageError("hitting needs --graph or --chain")
        g = _load_graph(args.graph)
        stats = montecarlo.sample_hitting_times(g, int(args.start),
                                                args.samples, args.seed,
                                                threads=args.threads)
    bimodal = montecarlo.bimodality_check(stats) if len(stats.samples) >= 1000 else None
    body = stats.as_dict()
    if bimodal is not None:
        body["bimodality"] = bimodal.as_dict()
        body["quantile_ratio"] = montecarlo.hitting_mixing_ratio(stats)
    write_json(out / "hitting.json", "hitting", info, body)
    if args.raw:
        write_artifact(out / "hitting_samples.txt", "hitting", info,
                       "".join(f"{x}\n" for x in stats.samples.tolist()))
    print(f"mean={stats.mean:.2f} stddev={stats.stddev:.2f} "
          f"median={stats.quantiles[0.5]:.0f}")
    return 0


def _cmd_cutoff_report(args) -> int:
    if args.L is None:
        raise UsageError("--L is required")
    eps = args.eps or [0.25, 0.75]
    rows = ["h,n,tmix_quarter,tmix_threequarter,cutoff_ratio,window"]
    details = []
    for h in range(args.hmin, args.hmax + 1):
        params = ConstructionParams(
            h=h, L=args.L, variant=args.variant, L_prime=args.Lprime,
            m=args.m, expander_seeds=(args.seed, args.seed + 1),
            min_gap=args.min_gap)
        g = construction.build(params)
        summaries, worst = mixing.cutoff_report(
            g, [0], eps_grid=eps, t_max=args.tmax, laziness=args.laziness,
            stride=args.stride or 1)
        s = summaries[0]
        rows.append(f"{h},{g.vertex_count},{s.tmix[0.25]},{s.tmix[0.75]},"
                    f"{s.cutoff_ratio:.6f},{s.window_estimate}")
        details.append({"h": h, "n": g.vertex_count, **s.as_dict()})
        print(f"h={h}: ratio={s.cutoff_ratio:.3f}")
    info = _param_summary(args, ("variant", "L", "hmin", "hmax", "seed"))
    out = Path(args.out)
    write_artifact(out / "cutoff_vs_h.csv", "cutoff-report", info,
                   "\n".join(rows) + "\n")
    write_json(out / "cutoff_vs_h.json", "cutoff-report", info,
               {"rows": details})
    return 0


def _cmd_cylinder_sweep(args) -> int:
    lengths = [int(x) for x in args.Ls.split(",")]
    host = make_expander(ExpanderSpec(3, args.m, 0.01, args.seed))
    rows = ["L,n,tmix_quarter,tmix_threequarter"]
    pts = []
    for L in lengths:
        g = construction.build_cylinder(host, L)
        laziness = (mixing.default_laziness(g) if args.laziness is None
                    else args.laziness)
        summaries, worst = mixing.cutoff_report(
            g, mixing.default_starts(g),
            t_max=args.tmax or 400 * g.vertex_count,
            laziness=laziness, stride=args.stride or 1)
        rows.append(f"{L},{g.vertex_count},{worst.tmix[0.25]},{worst.tmix[0.75]}")
        pts.append((L, worst.tmix[0.25]))
        print(f"L={L}: n={g.vertex_count} tmix(1/4)={worst.tmix[0.25]}")
    xs = np.log([p[0] for p in pts])
    ys = np.log([p[1] for p in pts])
    slope = float(np.polyfit(xs, ys, 1)[0])
    info = _param_summary(args, ("m", "Ls", "seed"))
    out = Path(args.out)
    write_artifact(out / "cylinder_sweep.csv", "cylinder-sweep", info,
                   "\n".join(rows) + "\n")
    write_json(out / "cylinder_sweep.json", "cylinder-sweep", info,
               {"points": [{"L": L, "tmix": t} for L, t in pts],
                "loglog_slope": slope})
    print(f"log-log slope of tmix vs L: {slope:.3f}")
    return 0


def _cmd_nocutoff_demo(args) -> int:
    if args.h is None or args.L is None or not args.Lprime:
        raise UsageError("nocutoff-demo needs --h, --L and --Lprime")
    params = ConstructionParams(
        h=args.h, L=args.L, variant="no_cutoff", L_prime=args.Lprime,
        expander_seeds=(args.seed, args.seed + 1), min_gap=args.min_gap)
    chain = montecarlo.descent_chain(params)
    stats = montecarlo.chain_hitting_stats(chain, args.samples, args.seed)
    bimodal = montecarlo.bimodality_check(stats)
    body = {
        "params": {"h": args.h, "L": args.L, "L_prime": args.Lprime},
        "hitting": stats.as_dict(),
        "bimodality": bimodal.as_dict(),
        "hitting_quantile_ratio": montecarlo.hitting_mixing_ratio(stats),
    }
    # exact TV ratio where the build is desk-sized
    if args.h <= 2:
        g = construction.build(params)
        summaries, _ = mixing.cutoff_report(g, [0], t_max=args.tmax,
                                            laziness=args.laziness,
                                            stride=args.stride or 1)
        body["exact_cutoff"] = summaries[0].as_dict()
        print(f"exact cutoff ratio from root: {summaries[0].cutoff_ratio:.3f}")
    info = _param_summary(args, ("h", "L", "Lprime", "seed", "samples"))
    write_json(Path(args.out) / "nocutoff.json", "nocutoff-demo", info, body)
    print(f"bimodal={bimodal.flag} weights={bimodal.cluster_weights} "
          f"quantile_ratio={montecarlo.hitting_mixing_ratio(stats):.3f}")
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "spectral": _cmd_spectral,
    "profile": _cmd_profile,
    "hitting": _cmd_hitting,
    "cutoff-report": _cmd_cutoff_report,
    "cylinder-sweep": _cmd_cylinder_sweep,
    "nocutoff-demo": _cmd_nocutoff_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        _require_seed(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
