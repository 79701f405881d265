"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import random
import secrets
import sys
import time
from pathlib import Path
from typing import Sequence

from . import charclass as cc
from .chow import ChowClass, build_chow_ring, invert_unit
from .errors import ConditionFailed, ToricSegreError
from .fan import affine_codim_condition, cox_ring, info, load_fan, primitive_collections, require_smooth_complete
from .polyring import PrimeField, render

COMMANDS = ("fan-info", "chow", "segre", "csm", "csm-ci", "euler", "all")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toricsegre",
        description="Segre, Chern-Fulton and CSM classes of subschemes of smooth complete toric varieties.",
    )
    ap.add_argument("command", choices=COMMANDS)
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--space", help='product of projective spaces, e.g. "P4xP2"')
    src.add_argument("--fan", help="fan JSON file (or inline JSON)")
    ap.add_argument(
        "--ideal",
        action="append",
        default=[],
        help="generator(s): inline, comma separated, or a file with one per line; repeatable",
    )
    ap.add_argument("--seed", type=int, default=None, help="RNG seed (default: fresh entropy, echoed)")
    ap.add_argument("--prime", type=int, default=32749)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--check", action="store_true", help="run the invariant suite on the fan first")
    ap.add_argument("--workers", type=int, default=None, help="parallel projective-degree tasks (default: cores)")
    ap.add_argument(
        "--pairing",
        choices=cc.PAIRINGS,
        default="dual",
        help="how projective-degree counts become classes (see README)",
    )
    ap.add_argument("--no-timing", action="store_true", help="emit wall_time_ms as null for byte-stable output")
    return ap


def read_generators(values: Sequence[str]) -> list[str]:
    out = []
    for v in values:
        p = Path(v)
        text = p.read_text() if len(v) < 4096 and p.is_file() else v
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            out.extend(s.strip() for s in line.split(",") if s.strip())
    return out


def _class_json(c: ChowClass) -> dict:
    return {"text": str(c), "terms": c.to_json()}


def run_checks(chow, rng: random.Random) -> dict:
    """Invariant suite: ranks, tangent degree, unit inversion, orthogonality, closed forms."""
    fan = chow.fan
    checks = {
        "rank_sum": sum(chow.ranks) == len(fan.max_cones),
        "tangent_degree": chow.chern_tangent().degree() == len(fan.max_cones),
        "orthogonal": chow.check_orthogonality(),
    }
    u = chow.ONE + chow.gens()[0] * 3
    checks["unit_inverse"] = invert_unit(u) * u == chow.ONE
    ring = cox_ring(fan)
    beta = tuple(sum(b[j] for b in chow.basis) for j in range(chow.q))
    f = ring.random_form(beta, rng)
    V = cc.prepare_generators([f], fan, chow)
    D = chow.divisor(beta)
    checks["hypersurface_closed_form"] = cc.segre_class(V, rng) == D * invert_unit(chow.ONE + D)
    return checks


def run(args: argparse.Namespace) -> dict:
    t0 = time.perf_counter()
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    fan = load_fan(args.fan if args.fan else args.space)
    report: dict = {"command": args.command, "seed": seed, "prime": args.prime, "fan": info(fan)}
    if args.command == "fan-info":
        return _finish(report, t0, args)
    require_smooth_complete(fan)
    if args.command != "chow" and not affine_codim_condition(fan):
        raise ConditionFailed(
            f"{len(primitive_collections(fan))} primitive collections but m - n = {fan.nrays - fan.dim}"
        )
    chow = build_chow_ring(fan)
    report["chow"] = chow.describe()
    if args.check:
        report["checks"] = run_checks(chow, random.Random(f"{seed}:check"))
    if args.command == "chow":
        report["class"] = {"chern_tangent": _class_json(chow.chern_tangent())}
        return _finish(report, t0, args)
    ring = cox_ring(fan, PrimeField(args.prime))
    gens = [ring.parse(g) for g in read_generators(args.ideal)]
    V = cc.prepare_generators(gens, fan, chow)
    workers = args.workers or cc.default_workers()
    report["generators"] = [render(g) for g in V.original]
    report["alpha"] = None if V.alpha is None else {
        "degree": list(V.alpha),
        "class": str(V.alpha_class()),
    }
    report["degree_table"] = None
    report["euler"] = None
    classes: dict = {}
    cmd = args.command
    if cmd in ("segre", "all"):
        table = cc.projective_degrees(V, random.Random(f"{seed}:segre"), args.pairing, workers)
        s = cc.segre_from_table(V, table)
        report["degree_table"] = table.to_json()
        report["degree_table"]["G"] = str(table.total())
        classes["segre"] = _class_json(s)
        if cmd == "all":
            classes["chern_fulton"] = _class_json(chow.chern_tangent() * s)
    if cmd in ("csm", "euler", "all"):
        c = cc.csm(V, random.Random(f"{seed}:csm"), args.pairing, workers)
        if cmd != "euler":
            classes["csm"] = _class_json(c)
        report["euler"] = c.degree()
    if cmd == "csm-ci":
        c = cc.csm_complete_intersection(V, random.Random(f"{seed}:csm-ci"), args.pairing, workers)
        classes["csm"] = _class_json(c)
        report["euler"] = c.degree()
    report["class"] = classes
    return _finish(report, t0, args)


def _finish(report: dict, t0: float, args) -> dict:
    report["wall_time_ms"] = None if args.no_timing else round((time.perf_counter() - t0) * 1000)
    return report


def format_text(report: dict) -> str:
    fan = report["fan"]
    lines = [f"command: {report['command']}", f"seed: {report['seed']}", f"prime: {report['prime']}"]
    lines.append(
        f"fan: {fan['label'] or 'custom'}  dim {fan['dimension']}  rays {len(fan['rays'])}  "
        f"smooth {fan['smooth']}  complete {fan['complete']}"
    )
    if "primitive_collections" in fan:
        lines.append("primitive collections: " + "; ".join(" ".join(p) for p in fan["primitive_collections"]))
        lines.append(f"affine codimension condition: {fan['affine_codim_condition']}")
        lines.append("grading: " + ", ".join(f"{v}={tuple(d)}" for v, d in fan["grading"].items()))
        if fan.get("nef_basis"):
            lines.append("nef basis: " + ", ".join(f"{k}={tuple(v)}" for k, v in fan["nef_basis"].items()))
    if "chow" in report:
        ch = report["chow"]
        lines.append(f"chow relations: {', '.join(ch['relations'])}")
        lines.append(f"ranks: {ch['ranks']}  point class: {ch['point_class']}  orthogonal: {ch['orthogonal']}")
    if report.get("checks"):
        lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in report["checks"].items()))
    if report.get("alpha"):
        lines.append(f"alpha: {report['alpha']['class']}  {tuple(report['alpha']['degree'])}")
    if report.get("degree_table"):
        dt = report["degree_table"]
        lines.append(f"codim V: {dt['codim']}  projective degrees: {dt['gamma']}  G = {dt['G']}")
    for name, c in (report.get("class") or {}).items():
        lines.append(f"{name}: {c['text']}")
    if report.get("euler") is not None:
        lines.append(f"euler: {report['euler']}")
    if report.get("wall_time_ms") is not None:
        lines.append(f"time: {report['wall_time_ms']} ms")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except ToricSegreError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(format_text(report))
    checks = report.get("checks") or {}
    if any(not v for k, v in checks.items() if k != "orthogonal"):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
