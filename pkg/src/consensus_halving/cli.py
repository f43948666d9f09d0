"""Command-line front end: generate, solve, verify, oracle, stats.

Exit codes: 0 success, 1 verification failed, 2 bad input, 3 size guard
exceeded, 4 a solver failed to find an object that must exist.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .additive import greedy_one_cut, solve_halving, solve_k_splitting
from .agreeable import agreeable_additive, agreeable_monotonic, check_agreeable
from .core import (
    HALVING,
    DimensionError,
    FractionalSplit,
    GuardError,
    Instance,
    Ratios,
    TheoremViolation,
    cut_items,
)
from .generators import (
    gen_agreeable_tight,
    gen_ksplit_worstcase,
    gen_line_lower_bound,
    gen_partition_reduction,
    gen_random,
)
from .monotonic import (
    austin_exact1,
    check_discrete_halving,
    check_exact1,
    exact1_to_discrete,
    lovasz_extension,
    oracle_from_json,
    solve_discrete_halving,
    solve_lovasz_halving,
)
from .oracles import min_agreeable_size_oracle, min_cuts_line_oracle, min_cuts_oracle, verify_split

THREADS_ENV = "CONSENSUS_THREADS"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD, EXIT_THEOREM = 0, 1, 2, 3, 4

MIN_CUTS_MAX_N, MIN_CUTS_MAX_M = 4, 8
GREEDY_MAX_M = 10**5


class InputError(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_instance(path: str) -> Instance:
    data = _load_json(path)
    if data.get("kind", "additive") != "additive":
        raise InputError(f"{path} holds a {data['kind']!r} oracle, not an additive instance")
    return Instance.from_json(data)


def _load_oracle(path: str):
    return oracle_from_json(_load_json(path))


def _emit(payload: dict, args) -> None:
    if getattr(args, "pretty", False):
        text = _pretty(payload)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _pretty(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = " " * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_pretty(value, indent + 2))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  " + "  ".join(str(v).rjust(8) for v in row) for row in value)
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    if args.kind == "random":
        inst = gen_random(args.n, args.m, args.seed, args.denom)
        payload = {**inst.to_json(), "metadata": {"generator": "random", "seed": args.seed, "denom_bound": args.denom}}
    elif args.kind == "partition":
        weights = [int(w) for w in args.weights.split(",") if w.strip()]
        payload = gen_partition_reduction(weights, args.n).to_json()
    elif args.kind == "ksplit-worstcase":
        payload = gen_ksplit_worstcase(args.n, _ratios(args)).to_json()
    elif args.kind == "line":
        payload = gen_line_lower_bound(args.n).to_json()
    elif args.kind == "agreeable-tight":
        payload = gen_agreeable_tight(args.n, args.m).to_json()
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown generator {args.kind}")
    _emit(payload, args)
    return EXIT_OK


def _ratios(args, default: Ratios = HALVING) -> Ratios:
    if getattr(args, "ratios", None):
        try:
            return Ratios.parse(args.ratios)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad ratios {args.ratios!r}: {exc}") from exc
    if getattr(args, "k", None):
        return Ratios.uniform(args.k)
    return default


# ---------------------------------------------------------------------------
# solve


def _split_payload(inst: Instance, split: FractionalSplit, ratios: Ratios) -> tuple[dict, bool]:
    report = verify_split(inst, split, ratios)
    return {"split": split.to_json(), "ratios": str(ratios), "verification": report.to_json()}, report.passed


def cmd_solve(args) -> int:
    kind = args.kind
    if kind in ("halving", "ksplit", "greedy-one-cut"):
        inst = _load_instance(args.instance)
        if kind == "halving":
            split, trace = solve_halving(inst)
            payload, ok = _split_payload(inst, split, HALVING)
            payload["pinned"] = [[j, str(v)] for j, v in trace.pinned]
            ok = ok and len(cut_items(split)) <= min(inst.n, inst.m)
        elif kind == "ksplit":
            ratios = _ratios(args)
            split = solve_k_splitting(inst, ratios)
            payload, ok = _split_payload(inst, split, ratios)
            ok = ok and payload["verification"]["cut_count"] <= (ratios.k - 1) * min(inst.n, inst.m)
        else:
            if inst.n != 1:
                raise GuardError(f"greedy-one-cut handles a single agent, got n={inst.n}")
            ratios = _ratios(args)
            split = greedy_one_cut(inst.utilities[0], ratios)
            if split is None:
                payload, ok = {"condition_met": False, "ratios": str(ratios)}, False
            else:
                payload, ok = _split_payload(inst, split, ratios)
                payload["condition_met"] = True
                ok = ok and len(cut_items(split)) <= 1
    elif kind == "agreeable":
        data = _load_json(args.instance)
        if data.get("kind", "additive") == "additive":
            inst = Instance.from_json(data)
            result, oracle = agreeable_additive(inst), inst
        else:
            oracle = oracle_from_json(data)
            result = agreeable_monotonic(oracle)
        ok = check_agreeable(oracle, result.items) and len(result.items) <= result.size_bound
        payload = {
            "set": sorted(result.items),
            "size": len(result.items),
            "size_bound": result.size_bound,
            "blocks": result.blocks,
            "order": list(result.order),
            "verification": {"agreeable": ok},
        }
    else:
        oracle = _load_oracle(args.instance)
        if kind == "discrete":
            m0, m1, m2 = solve_discrete_halving(oracle)
            ok = check_discrete_halving(oracle, m0, m1, m2) and len(m0) <= min(oracle.n, oracle.m)
            payload = {"M0": sorted(m0), "M1": sorted(m1), "M2": sorted(m2), "verification": {"discrete_halving": ok}}
        elif kind == "austin":
            result = austin_exact1(oracle)
            arcs = (result.part1, result.part2)
            exact1 = check_exact1(oracle, arcs)
            m0, m1, m2 = exact1_to_discrete(oracle, arcs)
            discrete = check_discrete_halving(oracle, m0, m1, m2)
            ok = exact1 and discrete
            payload = {
                "arcs": [list(result.part1), list(result.part2)],
                "oracle_calls": result.calls,
                "moves": "".join(result.moves),
                "discrete": {"M0": sorted(m0), "M1": sorted(m1), "M2": sorted(m2)},
                "verification": {"exact1": exact1, "discrete_halving": discrete},
            }
        elif kind == "lovasz":
            split = solve_lovasz_halving(oracle)
            values = [
                [str(lovasz_extension(oracle, i, split.column(p))) for p in range(2)] for i in range(oracle.n)
            ]
            ok = all(a == b for a, b in values) and len(cut_items(split)) <= min(oracle.n, oracle.m)
            payload = {"split": split.to_json(), "values": values, "verification": {"halving": ok}}
        else:  # pragma: no cover
            raise InputError(f"unknown solver {kind}")
    payload["kind"] = kind
    _emit(payload, args)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify and oracle


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    split = FractionalSplit.from_json(_load_json(args.split))
    ratios = _ratios(args, Ratios.uniform(split.k))
    report = verify_split(inst, split, ratios)
    _emit({"ratios": str(ratios), **report.to_json()}, args)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
    if args.kind == "agreeable-size":
        data = _load_json(args.instance)
        f = Instance.from_json(data) if data.get("kind", "additive") == "additive" else oracle_from_json(data)
        _emit({"kind": args.kind, "min_size": min_agreeable_size_oracle(f)}, args)
        return EXIT_OK
    inst = _load_instance(args.instance)
    ratios = _ratios(args)
    if args.kind == "min-cuts":
        result = min_cuts_oracle(inst, ratios, args.measure)
    else:
        order = [int(t) for t in args.order.split(",")] if args.order else None
        result = min_cuts_line_oracle(inst, order, ratios)
    report = verify_split(inst, result.witness, ratios)
    _emit({"kind": args.kind, "min_cuts": result.cuts, "witness": result.witness.to_json(), "verification": report.to_json()}, args)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# stats


def _min_cuts_trial(params) -> int:
    n, m, seed, denom = params
    return min_cuts_oracle(gen_random(n, m, seed, denom)).cuts


def _greedy_trial(params) -> bool:
    m, k, seed, denom = params
    u = gen_random(1, m, seed, denom).utilities[0]
    split = greedy_one_cut(u, Ratios.uniform(k))
    if split is None:
        return False
    inst = Instance.from_rows([u])
    return verify_split(inst, split, Ratios.uniform(k)).passed and len(cut_items(split)) <= 1


def _run_trials(fn, params: list, threads: int) -> list:
    if threads <= 1 or len(params) <= 1:
        return [fn(p) for p in params]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, params, chunksize=max(1, len(params) // (4 * threads))))


def run_stats(experiment: str, trials: int, n: int, m: int, k: int, seed: int, denom: int, threads: int = 1) -> dict:
    if trials < 0:
        raise InputError("trials must be nonnegative")
    report: dict = {"experiment": experiment, "trials": trials, "seed": seed, "denom_bound": denom}
    if experiment == "min-cuts":
        if n > MIN_CUTS_MAX_N or m > MIN_CUTS_MAX_M:
            raise GuardError(f"min-cuts stats limited to n <= {MIN_CUTS_MAX_N}, m <= {MIN_CUTS_MAX_M}")
        results = _run_trials(_min_cuts_trial, [(n, m, seed + t, denom) for t in range(trials)], threads)
        dist: dict[str, int] = {}
        for c in results:
            dist[str(c)] = dist.get(str(c), 0) + 1
        expected = min(n, m)
        report.update(
            n=n,
            m=m,
            distribution=dist,
            expected=expected,
            fraction_at_expected=str(Fraction(results.count(expected), trials)) if trials else None,
        )
    elif experiment == "greedy-one-cut":
        if m > GREEDY_MAX_M:
            raise GuardError(f"greedy-one-cut stats limited to m <= {GREEDY_MAX_M}")
        results = _run_trials(_greedy_trial, [(m, k, seed + t, denom) for t in range(trials)], threads)
        report.update(m=m, k=k, successes=sum(results), success_rate=str(Fraction(sum(results), trials)) if trials else None)
    else:  # pragma: no cover
        raise InputError(f"unknown experiment {experiment}")
    return report


def cmd_stats(args) -> int:
    report = run_stats(args.experiment, args.trials, args.n, args.m, args.k, args.seed, args.denom, args.threads)
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="consensus-halving", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="emit an instance")
    g.add_argument("kind", choices=["random", "partition", "ksplit-worstcase", "line", "agreeable-tight"])
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--m", type=int, default=5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--denom", type=int, default=10**6)
    g.add_argument("--weights", default="1,1")
    g.add_argument("--ratios")
    g.add_argument("--k", type=int)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", parents=[common], help="solve and verify")
    s.add_argument("kind", choices=["halving", "ksplit", "greedy-one-cut", "discrete", "austin", "lovasz", "agreeable"])
    s.add_argument("instance")
    s.add_argument("--ratios")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="check a split against an instance")
    v.add_argument("instance")
    v.add_argument("split")
    v.add_argument("--ratios")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    o.add_argument("kind", choices=["min-cuts", "line", "agreeable-size"])
    o.add_argument("instance")
    o.add_argument("--ratios")
    o.add_argument("--k", type=int)
    o.add_argument("--measure", choices=["items", "cuts"], default="items")
    o.add_argument("--order", help="comma separated item order for the line oracle")
    o.set_defaults(func=cmd_oracle)

    st = sub.add_parser("stats", parents=[common], help="repeated randomized experiments")
    st.add_argument("experiment", choices=["min-cuts", "greedy-one-cut"])
    st.add_argument("--trials", type=int, default=100)
    st.add_argument("--n", type=int, default=3)
    st.add_argument("--m", type=int, default=5)
    st.add_argument("--k", type=int, default=4)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--denom", type=int, default=10**6)
    st.add_argument("--threads", type=int, default=int(os.environ.get(THREADS_ENV, "1")))
    st.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except TheoremViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except (InputError, DimensionError, ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
