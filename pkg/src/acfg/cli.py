"""Command-line front end: ``acfg {eval,compare,verify,exists,gen,props}``."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings
from pathlib import Path

from . import __version__
from .game import (
    CoalitionStructure,
    FriendGraph,
    GameError,
    format_graph,
    parse_graph,
    parse_partition,
)
from .instances import FIXTURE_NAMES, Variant, builtin, make_gadget, planted_rx3c, random_graph
from .properties import (
    check_sovereignty,
    check_unanimity_sample,
    random_structure,
    sample_monotonicity,
)
from .search import ExistenceResult, exists_stable, nash_construct, sf_perfect
from .stability import Notion, verify
from .valuation import ALL_MODELS, Model, aggregates, compare, count_prefers, utility, values

SCHEMA = "acfg-report/1"
EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _read_graph(path: str) -> FriendGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GameError(f"cannot read graph file {path}: {exc.strerror}") from exc
    return parse_graph(text)


def _read_partition(arg: str, n: int) -> CoalitionStructure:
    """A partition given inline ("1 2 | 3") or as a file holding one on its first line."""
    p = Path(arg)
    if p.is_file():
        lines = [ln for ln in p.read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise GameError(f"partition file {arg} is empty")
        arg = lines[0]
    return parse_partition(arg, n)


def _model(name: str) -> Model:
    try:
        return Model.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _notion(name: str) -> Notion:
    try:
        return Notion.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- commands ------------------------------------------------------------------
# Each returns (exit code, inputs, result payload, text lines).


def cmd_eval(args):
    g = _read_graph(args.graph)
    gamma = _read_partition(args.partition, g.n)
    vals = values(g, gamma)
    rows = []
    for i in g.players:
        row = {"player": i, **aggregates(g, gamma, i), "u": utility(g, gamma, i, args.model)}
        rows.append(row)
    result = {"structure": str(gamma), "model": args.model.value, "welfare": sum(vals),
              "min_value": min(vals), "utilities": [r["u"] for r in rows]}
    lines = [f"structure {gamma}", f"model {args.model}"]
    if args.per_player:
        result["players"] = rows
        lines.append(f"{'i':>3} {'v':>6} {'sumF':>7} {'sumF+':>7} {'minF':>6} {'minF+':>6} {'u':>12}")
        for r in rows:
            lines.append(f"{r['player']:>3} {r['v']:>6} {r['sumF']:>7} {r['sumF+']:>7} "
                         f"{r['minF']:>6} {r['minF+']:>6} {r['u']:>12}")
    else:
        lines.append(f"welfare {sum(vals)}  min value {min(vals)}")
        lines.append("utilities " + " ".join(map(str, result["utilities"])))
    inputs = {"graph": args.graph, "partition": args.partition, "model": args.model.value}
    return EXIT_OK, inputs, result, lines


def cmd_compare(args):
    g = _read_graph(args.graph)
    a, b = _read_partition(args.first, g.n), _read_partition(args.second, g.n)
    players = [args.player] if args.player else list(g.players)
    prefs = {i: compare(g, i, a, b, args.model).name for i in players}
    first, second = count_prefers(g, a, b, args.model)
    result = {"first": str(a), "second": str(b), "prefer_first": first, "prefer_second": second,
              "preferences": {str(i): p for i, p in prefs.items()}}
    lines = [f"{i}: {p}" for i, p in prefs.items()]
    lines.append(f"prefer first {first}, prefer second {second}")
    inputs = {"graph": args.graph, "first": args.first, "second": args.second, "model": args.model.value}
    return EXIT_OK, inputs, result, lines


def cmd_verify(args):
    g = _read_graph(args.graph)
    gamma = _read_partition(args.partition, g.n)
    verdict = verify(g, gamma, args.model, args.notion, workers=args.threads)
    result = verdict.to_dict()
    result["structure"] = str(gamma)
    if not args.witness:
        result.pop("witness")
    lines = [f"{args.notion} under {args.model}: {'stable' if verdict.stable else 'unstable'}"]
    if args.witness and verdict.witness is not None:
        lines.append("witness " + json.dumps(verdict.witness.to_dict()))
    inputs = {"graph": args.graph, "partition": args.partition,
              "model": args.model.value, "notion": args.notion.value}
    return (EXIT_OK if verdict.stable else EXIT_NEGATIVE), inputs, result, lines


def cmd_exists(args):
    g = _read_graph(args.graph)
    model, notion = args.model, args.notion
    if notion is Notion.NASH:
        res = ExistenceResult(True, nash_construct(g), 0, "construction")
    elif notion is Notion.PERFECT and model in (Model.SUM_SF, Model.MIN_SF):
        res = sf_perfect(g)
    else:
        res = exists_stable(g, model, notion, workers=args.threads, cap=args.limit)
    result = {"notion": notion.value, "model": model.value, **res.to_dict()}
    lines = [f"{notion} under {model}: {'found ' + str(res.structure) if res.found else 'none'}",
             f"partitions examined {res.partitions_examined} ({res.method})"]
    inputs = {"graph": args.graph, "model": model.value, "notion": notion.value, "limit": args.limit}
    return (EXIT_OK if res.found else EXIT_NEGATIVE), inputs, result, lines


def cmd_gen(args):
    inputs = {"kind": args.kind, "seed": args.seed}
    sidecar = None
    if args.kind in FIXTURE_NAMES:
        fx = builtin(args.kind)
        g = fx.graph
        sidecar = {"fixture": fx.name, "structures": {k: str(v) for k, v in fx.structures.items()},
                   "coalitions": {k: sorted(v) for k, v in fx.coalitions.items()}}
    elif args.kind == "random":
        if args.n is None:
            raise GameError("gen random needs --n")
        g = random_graph(args.n, args.p, args.seed)
        inputs.update(n=args.n, p=args.p)
    elif args.kind == "gadget":
        if args.variant is None or args.k is None:
            raise GameError("gen gadget needs --variant and --k")
        inst, cover = planted_rx3c(args.k, args.seed)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gg = make_gadget(inst, Variant.parse(args.variant), args.alpha_count)
        g = gg.graph
        sidecar = {**gg.sidecar(), "cover": list(cover), "seed": args.seed}
        inputs.update(variant=gg.variant.value, k=args.k, alpha_count=args.alpha_count)
    else:
        raise GameError(f"unknown kind {args.kind!r}; use random, gadget or one of {', '.join(FIXTURE_NAMES)}")

    text = format_graph(g)
    result = {"n": g.n, "m": len(g.edges())}
    lines = []
    if args.output:
        Path(args.output).write_text(text)
        result["output"] = args.output
        lines.append(f"wrote {args.output} ({g.n} players, {len(g.edges())} edges)")
        if sidecar is not None:
            side = args.output + ".json"
            Path(side).write_text(json.dumps(sidecar, indent=2) + "\n")
            result["sidecar"] = side
            lines.append(f"wrote {side}")
    else:
        lines.append(text.rstrip("\n"))
        if sidecar is not None and args.json:
            result["sidecar"] = sidecar
    return EXIT_OK, inputs, result, lines


def cmd_props(args):
    g = _read_graph(args.graph) if args.graph else None
    models = [args.model] if args.model else list(ALL_MODELS)
    reports = []
    for model in models:
        if args.check == "unanimity":
            rep = check_unanimity_sample(g, model, args.samples, args.seed).to_dict()
        elif args.check in ("mono1", "mono2"):
            kind = "I" if args.check == "mono1" else "II"
            rep = sample_monotonicity(model, kind, args.samples, args.seed, graph=g).to_dict()
        else:
            rep = _sovereignty_sample(g, model, args.samples, args.seed)
        reports.append(rep)
    bad = sum(r["violations"] for r in reports)
    lines = [f"{r['model']:>6} {r['check']}: {r['premise_hits']} premise hits, {r['violations']} violations"
             for r in reports]
    inputs = {"graph": args.graph, "check": args.check, "samples": args.samples, "seed": args.seed,
              "models": [m.value for m in models]}
    return (EXIT_NEGATIVE if bad else EXIT_OK), inputs, {"reports": reports}, lines


def _sovereignty_sample(g, model, samples, seed):
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        n = g.n if g is not None else rng.randint(1, 7)
        gamma = random_structure(n, rng)
        if not check_sovereignty(n, rng.randint(1, n), gamma, [model]):
            bad += 1
    return {"check": "sovereignty", "model": model.value, "samples": samples, "seed": seed,
            "premise_hits": samples, "rejected_draws": 0, "violations": bad}


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized commands")

    p = argparse.ArgumentParser(prog="acfg", parents=[common],
                                description="Altruistic coalition formation games over networks of friends.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def model_arg(sp, required=True):
        sp.add_argument("--model", "-m", type=_model, required=required,
                        help="sumSF, sumEQ, sumAL, minSF, minEQ or minAL")

    s = sub.add_parser("eval", parents=[common], help="values, aggregates and utilities of a structure")
    s.add_argument("graph")
    s.add_argument("partition", help='partition file, or inline text such as "1 2 | 3"')
    model_arg(s)
    s.add_argument("--per-player", action="store_true")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compare", parents=[common], help="how players rank two structures")
    s.add_argument("graph")
    s.add_argument("first")
    s.add_argument("second")
    model_arg(s)
    s.add_argument("--player", type=int)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("verify", parents=[common], help="check a stability notion")
    s.add_argument("graph")
    s.add_argument("partition")
    model_arg(s)
    s.add_argument("--notion", "-n", type=_notion, required=True,
                   help="nash, ir, is, cis, tis, core, strictcore, popular, strictpopular or perfect")
    s.add_argument("--witness", action="store_true", help="report the violating witness")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("exists", parents=[common], help="search for a stable structure")
    s.add_argument("graph")
    model_arg(s)
    s.add_argument("--notion", "-n", type=_notion, required=True)
    s.add_argument("--limit", type=int, help="override the player-count cap of the search")
    s.set_defaults(func=cmd_exists)

    s = sub.add_parser("gen", parents=[common], help="write an example, random or gadget graph")
    s.add_argument("kind", help=f"random, gadget, or a fixture: {', '.join(FIXTURE_NAMES)}")
    s.add_argument("-o", "--output")
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--variant", help="min-sf-core, sum-sf-core, min-sf-strictpop or sum-sf-strictpop")
    s.add_argument("--k", type=int)
    s.add_argument("--alpha-count", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("props", parents=[common], help="sample axiomatic property checks")
    s.add_argument("graph", nargs="?", help="fixed graph; random graphs when omitted")
    model_arg(s, required=False)
    s.add_argument("--check", choices=["unanimity", "mono1", "mono2", "sovereignty"], required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.set_defaults(func=cmd_props)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.threads = max(1, getattr(args, "threads", 1))
    args.seed = getattr(args, "seed", 0)
    started = time.perf_counter()
    try:
        code, inputs, result, lines = args.func(args)
    except (GameError, OSError) as exc:
        if args.json:
            print(json.dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)}))
        else:
            print(f"acfg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        report = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": inputs,
            "result": result,
            "timing": {"seconds": round(time.perf_counter() - started, 6), "threads": args.threads},
            "version": __version__,
        }
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
