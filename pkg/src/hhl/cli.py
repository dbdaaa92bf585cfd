"""Command-line front end: instance generation, learning runs, benchmark
sweeps, bound tables, cover-free verification, and two-stage trials.

Every flag can also be supplied through the environment with the HHL_
prefix (--max-n becomes HHL_MAX_N); explicit flags win over the
environment, which wins over built-in defaults. Machine-readable output
goes to stdout (or --out), diagnostics to stderr. JSON is the canonical
format; CSV is a flat projection of the same rows.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .bounds import family_size_exact, info_lower_bound, rate_point
from .core import (
    FamilyParams,
    load_hypergraph,
    hypergraph_to_dict,
    random_disjoint_instance,
    random_family_instance,
    save_hypergraph,
)
from .coverfree import (
    cf_rate_bounds,
    find_violation,
    load_code,
    save_code,
    search_random_cf_code,
)
from .learner import learn_detailed, worst_case_query_budget
from .oracle import Oracle
from .twostage import two_stage_trial

ENV_PREFIX = "HHL_"

BENCH_COLUMNS = (
    "t",
    "s",
    "l",
    "seed",
    "queries",
    "lower_bound",
    "rate",
    "budget",
    "within_budget",
)
TRIAL_COLUMNS = (
    "t",
    "s",
    "l",
    "seed",
    "epsilon",
    "layers",
    "stage1_queries",
    "stage2_queries",
    "success",
    "recovered_edges",
)


def _env_name(flag: str) -> str:
    return ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper()


def _opt(sub: argparse.ArgumentParser, flag: str, *, type=str, default=None,
         choices=None, help: str = "") -> None:
    env = _env_name(flag)
    raw = os.environ.get(env)
    if raw is not None:
        try:
            default = type(raw)
        except ValueError:
            print(f"error: bad value for {env}: {raw!r}", file=sys.stderr)
            raise SystemExit(2)
        if choices is not None and default not in choices:
            print(f"error: bad value for {env}: {raw!r}", file=sys.stderr)
            raise SystemExit(2)
    sub.add_argument(flag, type=type, default=default, choices=choices,
                     help=f"{help} [env {env}]")


def _require(parser: argparse.ArgumentParser, args: argparse.Namespace,
             *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        parser.error("missing required " + ", ".join("--" + n for n in missing))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        flat = dict(row)
        for key, val in flat.items():
            if isinstance(val, (list, dict, bool)) or val is None:
                flat[key] = json.dumps(val)
        writer.writerow(flat)
    return buf.getvalue()


def _parse_sweep(text: str) -> list[int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad sweep {text!r}, expected t_min:t_max:factor")
    t_min, t_max, factor = (int(p) for p in parts)
    if t_min < 2 or t_max < t_min or factor < 2:
        raise ValueError(f"bad sweep {text!r}: need 2 <= t_min <= t_max, factor >= 2")
    values = []
    t = t_min
    while t <= t_max:
        values.append(t)
        t *= factor
    return values


def _map_ordered(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _bench_trial(cfg: tuple[int, int, int, int, bool]) -> dict:
    t, s, l, seed, enforce = cfg
    params = FamilyParams(t, s, l)
    hidden = random_family_instance(params, sperner_only=True, seed=seed)
    budget = worst_case_query_budget(params)
    oracle = Oracle(hidden, budget=budget if enforce else None)
    report = learn_detailed(oracle, params)
    return {
        "t": t,
        "s": s,
        "l": l,
        "seed": seed,
        "queries": report.queries_total,
        "lower_bound": info_lower_bound(params),
        "rate": rate_point(t, report.queries_total).rate,
        "budget": budget,
        "within_budget": report.queries_total <= budget,
    }


def _twostage_one(cfg: tuple[int, int, int, int, float, int | None]) -> dict:
    t, s, l, seed, epsilon, layers = cfg
    params = FamilyParams(t, s, l)
    hidden = random_disjoint_instance(params, seed=seed)
    oracle = Oracle(hidden)
    report = two_stage_trial(oracle, params, epsilon, seed, n_layers=layers)
    row = report.to_dict()
    row["seed"] = seed
    return row


def _cmd_gen(args, parser) -> int:
    _require(parser, args, "t", "s", "l", "seed")
    params = FamilyParams(args.t, args.s, args.l)
    if args.kind == "disjoint":
        hidden = random_disjoint_instance(params, seed=args.seed)
    else:
        hidden = random_family_instance(
            params, sperner_only=(args.kind == "sperner"), seed=args.seed
        )
    if args.out:
        save_hypergraph(args.out, hidden)
    else:
        _emit(_json_text(hypergraph_to_dict(hidden)), None)
    return 0


def _cmd_learn(args, parser) -> int:
    _require(parser, args, "in", "s", "l")
    hidden = load_hypergraph(getattr(args, "in"))
    params = FamilyParams(hidden.t, args.s, args.l)
    budget = worst_case_query_budget(params) if args.budget_enforce == "on" else None
    oracle = Oracle(hidden, budget=budget)
    report = learn_detailed(oracle, params)
    if args.transcript:
        oracle.write_transcript(args.transcript)
    payload = report.to_dict()
    if args.format == "csv":
        row = {k: v for k, v in payload.items()}
        _emit(_csv_text([row], payload.keys()), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return 0


def _cmd_bounds(args, parser) -> int:
    _require(parser, args, "t", "s", "l")
    params = FamilyParams(args.t, args.s, args.l)
    payload = {
        "t": args.t,
        "s": args.s,
        "l": args.l,
        "family_size": family_size_exact(params),
        "lower_bound_queries": info_lower_bound(params),
    }
    if args.format == "csv":
        _emit(_csv_text([payload], payload.keys()), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return 0


def _cmd_bench(args, parser) -> int:
    _require(parser, args, "s", "l", "seed")
    if args.sweep is None and args.t is None:
        parser.error("bench needs --sweep or --t")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    ts = _parse_sweep(args.sweep) if args.sweep else [args.t]
    enforce = args.budget_enforce == "on"
    configs = [
        (t, args.s, args.l, args.seed + i, enforce)
        for t in ts
        for i in range(args.trials)
    ]
    rows = _map_ordered(_bench_trial, configs, args.jobs)
    if args.format == "csv":
        _emit(_csv_text(rows, BENCH_COLUMNS), args.out)
    else:
        _emit(_json_text(rows), args.out)
    return 0


def _cmd_twostage(args, parser) -> int:
    _require(parser, args, "t", "s", "l", "seed")
    if args.trials < 1:
        parser.error("--trials must be at least 1")
    if not 0 < args.epsilon < 1:
        parser.error("--epsilon must lie in (0, 1)")
    configs = [
        (args.t, args.s, args.l, args.seed + i, args.epsilon, args.layers)
        for i in range(args.trials)
    ]
    rows = _map_ordered(_twostage_one, configs, args.jobs)
    successes = [r for r in rows if r["success"]]
    aggregate = {
        "trials": len(rows),
        "success_rate": len(successes) / len(rows),
        "mean_stage1": sum(r["stage1_queries"] for r in rows) / len(rows),
        "mean_stage2": (
            sum(r["stage2_queries"] for r in successes) / len(successes)
            if successes
            else 0.0
        ),
    }
    if args.format == "csv":
        _emit(_csv_text(rows, TRIAL_COLUMNS), args.out)
    else:
        _emit(_json_text({"trials": rows, "aggregate": aggregate}), args.out)
    return 0


def _cmd_cf_verify(args, parser) -> int:
    _require(parser, args, "in", "s", "l")
    code = load_code(getattr(args, "in"))
    violation = find_violation(code, args.s, args.l, work_limit=args.work_limit)
    payload = {
        "n_rows": code.n_rows,
        "n_cols": code.n_cols,
        "s": args.s,
        "l": args.l,
        "cover_free": violation is None,
        "violation": (
            None
            if violation is None
            else {"zero_cols": list(violation[0]), "one_cols": list(violation[1])}
        ),
    }
    if args.format == "csv":
        _emit(_csv_text([payload], payload.keys()), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return 0


def _cmd_cf_search(args, parser) -> int:
    _require(parser, args, "t", "s", "l", "seed")
    code = search_random_cf_code(args.t, args.s, args.l, args.max_n, seed=args.seed)
    payload = {
        "t": args.t,
        "s": args.s,
        "l": args.l,
        "found": code is not None,
        "n_rows": None if code is None else code.n_rows,
    }
    # --out stores the code file; the summary always goes to stdout
    if code is not None and args.out:
        save_code(args.out, code)
    if args.format == "csv":
        _emit(_csv_text([payload], payload.keys()), None)
    else:
        _emit(_json_text(payload), None)
    return 0


def _cmd_cf_bounds(args, parser) -> int:
    _require(parser, args, "s", "l")
    lower, upper = cf_rate_bounds(args.s, args.l)
    payload = {"s": args.s, "l": args.l, "rate_lower": lower, "rate_upper": upper}
    if args.format == "csv":
        _emit(_csv_text([payload], payload.keys()), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhl",
        description=(
            "Learn hidden hypergraphs through simulated edge-detecting "
            "queries: adaptive learner, information-theoretic bounds, "
            "cover-free codes, and the two-stage strategy."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, fmt=True):
        _opt(p, "--seed", type=int, help="RNG seed")
        _opt(p, "--out", help="write output to this path instead of stdout")
        if fmt:
            _opt(p, "--format", default="json", choices=("json", "csv"),
                 help="output encoding")

    p = sub.add_parser("gen", help="generate a hidden hypergraph instance")
    _opt(p, "--t", type=int, help="number of vertices")
    _opt(p, "--s", type=int, help="maximum number of edges")
    _opt(p, "--l", type=int, help="maximum edge size")
    _opt(p, "--kind", default="sperner", choices=("sperner", "family", "disjoint"),
         help="sperner: antichain member; family: any member; "
              "disjoint: s disjoint edges of size exactly l")
    common(p, fmt=False)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("learn", help="run the adaptive learner on an instance file")
    _opt(p, "--in", help="hidden hypergraph JSON file")
    _opt(p, "--s", type=int, help="maximum number of edges")
    _opt(p, "--l", type=int, help="maximum edge size")
    _opt(p, "--budget-enforce", default="off", choices=("on", "off"),
         help="make the oracle fail the run past the worst-case budget")
    _opt(p, "--transcript", help="write the query transcript (JSON lines) here")
    common(p)
    p.set_defaults(func=_cmd_learn)

    p = sub.add_parser("bounds", help="family size and query lower bound")
    _opt(p, "--t", type=int, help="number of vertices")
    _opt(p, "--s", type=int, help="maximum number of edges")
    _opt(p, "--l", type=int, help="maximum edge size")
    common(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser(
        "bench",
        help="learner query-count sweep; CSV columns: " + ",".join(BENCH_COLUMNS),
    )
    _opt(p, "--t", type=int, help="single vertex count (alternative to --sweep)")
    _opt(p, "--s", type=int, help="maximum number of edges")
    _opt(p, "--l", type=int, help="maximum edge size")
    _opt(p, "--sweep", help="t_min:t_max:factor geometric sweep of t")
    _opt(p, "--trials", type=int, default=10, help="instances per t")
    _opt(p, "--jobs", type=int, default=1, help="parallel worker processes")
    _opt(p, "--budget-enforce", default="off", choices=("on", "off"),
         help="make the oracle fail runs past the worst-case budget")
    common(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser(
        "twostage",
        help="two-stage trials; CSV columns: " + ",".join(TRIAL_COLUMNS),
    )
    _opt(p, "--t", type=int, help="number of vertices")
    _opt(p, "--s", type=int, help="number of disjoint edges")
    _opt(p, "--l", type=int, help="edge size")
    _opt(p, "--epsilon", type=float, default=0.05,
         help="stage-one failure probability target")
    _opt(p, "--trials", type=int, default=10, help="number of trials")
    _opt(p, "--layers", type=int, help="override the computed layer count")
    _opt(p, "--jobs", type=int, default=1, help="parallel worker processes")
    common(p)
    p.set_defaults(func=_cmd_twostage)

    p = sub.add_parser("cf-verify", help="verify a code file is cover-free")
    _opt(p, "--in", help="code file: first line 'N t', then N rows of 0/1")
    _opt(p, "--s", type=int, help="all-zero column set size")
    _opt(p, "--l", type=int, help="all-one column set size")
    _opt(p, "--work-limit", type=int, default=100_000_000,
         help="refuse verifications above this many pair-row checks")
    common(p)
    p.set_defaults(func=_cmd_cf_verify)

    p = sub.add_parser(
        "cf-search",
        help="randomized search for a cover-free code",
        description="--out stores the found code file; the JSON/CSV summary "
                    "always goes to stdout.",
    )
    _opt(p, "--t", type=int, help="code size (columns)")
    _opt(p, "--s", type=int, help="all-zero column set size")
    _opt(p, "--l", type=int, help="all-one column set size")
    _opt(p, "--max-n", type=int, default=64, help="largest code length to try")
    common(p)
    p.set_defaults(func=_cmd_cf_search)

    p = sub.add_parser("cf-bounds", help="numeric cover-free rate bound guides")
    _opt(p, "--s", type=int, help="all-zero column set size")
    _opt(p, "--l", type=int, help="all-one column set size")
    common(p)
    p.set_defaults(func=_cmd_cf_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
