"""Command-line front end: ``parking <command> ...``.

Results are printed as a JSON envelope ``{command, params, result, version[, seed]}``
with sorted keys, so identical arguments give byte-identical output.  Tables
(``enumerate``, ``moments``, ``sample`` rows) are CSV.

Exit status: 0 success, 1 usage error, 2 domain error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .abel import (
    abel_all_minus_one,
    abel_last_zero,
    abel_multinomial,
    check_peel_recurrence,
    check_shift_recurrence,
    check_symmetry,
)
from .core import FailureReport, is_parking_function, park
from .enumeration import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    completion_thresholds,
    count_pf,
    count_pf_composition,
    count_pf_contiguous,
    count_pf_gap,
    count_pf_prefix,
    count_u_parking,
    enumerate_pf,
    is_u_parking_function,
)
from .ipf import IntervalPF, conjugate_props_check, count_ipf, ipf_to_tree, is_ipf, tree_to_bipartite, tree_to_ipf
from .moments import REFINED_KINDS, moment_report
from .multishuffle import decompose, is_multishuffle, max_completion
from .sampler import SampleConfig, mc_report, sample_ipf_square, sample_pf_batch
from .serialize import dumps, ipf_to_json, tree_from_json, tree_to_dot, tree_to_json

THREADS_ENV = "PARKING_THREADS"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    """A well-formed request whose answer is a negative verdict (printed, then exit 2)."""

    def __init__(self, reason: str, payload: dict):
        super().__init__(reason)
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _emit(out, command, params, result, seed=None):
    doc = {"command": command, "params": params, "result": result, "version": __version__}
    if seed is not None:
        doc["seed"] = seed
    out.write(dumps(doc))


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_count(args, out):
    m, n = args.m, args.n
    params = {"m": m, "n": n}
    if args.prefix is not None:
        params["prefix"] = list(args.prefix)
        value = count_pf_prefix(args.prefix, m, n)
    elif args.contiguous is not None:
        k, l = args.contiguous
        params["contiguous"] = [k, l]
        value = count_pf_contiguous(k, l, m, n)
    elif args.gap is not None:
        i, k = args.gap
        params["gap"] = [i, k]
        value = count_pf_gap(i, k, m, n)
    elif args.u_vector is not None:
        params = {"u": list(args.u_vector)}
        value = count_u_parking(args.u_vector)
    elif args.ipf:
        value = count_ipf(m, n)
        params["ipf"] = True
    elif args.method == "composition":
        value = count_pf_composition(m, n)
        params["method"] = "composition"
    else:
        value = count_pf(m, n)
    _emit(out, "count", params, {"count": str(value)})


def cmd_enumerate(args, out):
    rows = enumerate_pf(args.m, args.n, budget=args.budget)
    # the budget check runs on the first step; do it before writing anything
    rows = itertools.chain([next(rows)], rows)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"pi{i}" for i in range(1, args.m + 1)])
    for pi in rows:
        writer.writerow(pi)


def cmd_check(args, out):
    pf, n = args.pf, args.n
    params = {"pf": list(pf), "n": n}
    result: dict = {}
    if args.u is not None:
        params["u"] = list(args.u)
        result["u_parking"] = is_u_parking_function(pf, args.u)
        ok = result["u_parking"]
        reason = "sorted preferences exceed u"
    elif args.b is not None:
        params["b"] = list(args.b)
        if len(args.b) != len(pf):
            raise ValueError("a and b must have the same length")
        ok = is_ipf(pf, args.b, n)
        result["interval_parking_function"] = ok
        if ok:
            result["conjugate_properties"] = conjugate_props_check(pf, args.b, n)
        reason = "some car finds no free spot inside its interval"
    elif args.multishuffle is not None:
        params["multishuffle"] = list(args.multishuffle)
        ok = is_multishuffle(pf, args.multishuffle)
        result["multishuffle"] = ok
        reason = "not a multi-shuffle of the given shape"
    else:
        res = park(pf, n)
        ok = not isinstance(res, FailureReport)
        result["parking_function"] = ok
        if ok:
            result["outcome"] = list(res.slots)
            result["unattempted"] = list(res.gaps)
        else:
            reason = str(res)
        if ok != is_parking_function(pf, n):
            raise AssertionError("simulation and counting criterion disagree")
    if not ok:
        result["reason"] = reason
        raise DomainFailure(reason, {"command": "check", "params": params, "result": result})
    _emit(out, "check", params, result)


def cmd_decompose(args, out):
    params = {"suffix": list(args.suffix), "l": args.l, "m": args.m, "n": args.n}
    u = max_completion(args.suffix, args.l, args.m, args.n)
    if u is None:
        reason = "no prefix completes this suffix to a parking function"
        raise DomainFailure(reason, {"command": "decompose", "params": params, "result": {"reason": reason}})
    d = decompose(args.suffix, u, args.m, args.n)
    result = {
        "u": list(u),
        "components": [list(c) for c in d.components],
        "frames": [list(f) for f in d.frames],
        "offsets": list(d.offsets),
    }
    _emit(out, "decompose", params, result)


def cmd_complete(args, out):
    v, m, n = args.prefix, args.m, args.n
    params = {"prefix": list(v), "m": m, "n": n}
    if len(set(v)) < len(v) or sorted(v) != list(v):
        raise ValueError("the prefix must be strictly increasing")
    u = completion_thresholds(v, m, n)
    result = {"thresholds": list(u), "completions": str(count_u_parking(u))}
    _emit(out, "complete", params, result)


def cmd_sample(args, out):
    threads = args.threads if args.threads is not None else _default_threads()
    params = {"m": args.m, "n": args.n, "count": args.count, "threads": threads}
    if args.ipf:
        if args.m != args.n:
            raise ValueError("uniform interval parking functions are only supported for m = n")
        rng = np.random.default_rng(args.seed)
        draws = [sample_ipf_square(args.n, rng) for _ in range(args.count)]
        _emit(out, "sample", params | {"ipf": True}, {"samples": [ipf_to_json(c) for c in draws]}, seed=args.seed)
        return
    if args.stat:
        cfg = SampleConfig(args.m, args.n, args.count, args.seed, threads)
        est = mc_report(cfg, args.stat)
        for e in est:
            if e.note:
                print(f"warning: {e.name}: {e.note}", file=sys.stderr)
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["statistic", "mean", "std_error", "N", "seed", "threads"])
            for e in est:
                writer.writerow([e.name, repr(float(e.mean)), repr(float(e.std_error)), e.N, args.seed, threads])
        else:
            rows = [{"statistic": e.name, "mean": float(e.mean), "std_error": float(e.std_error), "N": e.N} for e in est]
            _emit(out, "sample", params | {"stat": list(args.stat)}, {"estimates": rows}, seed=args.seed)
        return
    if args.m < 1:
        raise ValueError("need at least one car")
    rng = np.random.default_rng(args.seed)
    draws = sample_pf_batch(args.m, args.n, args.count, rng)
    if args.format == "json":
        _emit(out, "sample", params, {"samples": draws.tolist()}, seed=args.seed)
    else:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([f"pi{i}" for i in range(1, args.m + 1)])
        writer.writerows(draws.tolist())


def _fmt_exact(x):
    if isinstance(x, Fraction):
        return str(x)
    return ""


def cmd_moments(args, out):
    m, n = args.m, args.n
    if args.kind:
        kinds = args.kind
    elif m == n:
        kinds = ["E_pi1", "E_pi1pi2"]
    else:
        kinds = list(REFINED_KINDS)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["kind", "m", "n", "i", "j", "exact_rational", "exact", "asymptotic", "abs_err", "rel_err", "terms"])
    for kind in kinds:
        r = moment_report(kind, m, n, args.i, args.j, args.method)
        writer.writerow(
            [kind, m, n, args.i, args.j, _fmt_exact(r.exact), repr(float(r.exact)),
             repr(r.asymptotic), repr(r.abs_err), repr(r.rel_err), r.terms_used]
        )


def cmd_abel(args, out):
    x, p, n = args.x, args.p, args.n
    if len(x) != len(p) or not x:
        raise ValueError("x and p need the same non-zero length")
    params = {"x": list(x), "p": list(p), "n": n}
    checks = []

    def add(name, lhs, rhs):
        checks.append({"identity": name, "lhs": str(lhs), "rhs": str(rhs), "holds": lhs == rhs})

    for a, b in itertools.combinations(range(len(x)), 2):
        add(f"swap({a + 1},{b + 1})", *check_symmetry(x, p, n, a, b))
    if n >= 1:
        add("shift recurrence", *check_shift_recurrence(x, p, n))
    add("peel recurrence", *check_peel_recurrence(x, p, n))
    if all(q == -1 for q in p):
        add("all exponents -1", abel_multinomial(x, p, n), abel_all_minus_one(x, n))
    if all(q == -1 for q in p[:-1]) and p[-1] == 0:
        add("last exponent 0", abel_multinomial(x, p, n), abel_last_zero(x, n))
    result = {"value": str(abel_multinomial(x, p, n)), "checks": checks}
    if not all(c["holds"] for c in checks):
        raise DomainFailure("an identity failed", {"command": "abel", "params": params, "result": result})
    _emit(out, "abel", params, result)


def cmd_ipf(args, out):
    a, b = args.a, args.b
    if len(a) != len(b):
        raise ValueError("a and b must have the same length")
    n = args.n if args.n is not None else len(a)
    params = {"a": list(a), "b": list(b), "n": n}
    if not is_ipf(a, b, n):
        reason = "not an interval parking function"
        raise DomainFailure(reason, {"command": "ipf", "params": params, "result": {"reason": reason}})
    if len(a) != n:
        raise ValueError("the tree encoding needs as many cars as spots")
    t = ipf_to_tree(IntervalPF(a, b))
    if args.dot:
        out.write(tree_to_dot(t))
        return
    result = {"tree": tree_to_json(t), "bipartite": [list(e) for e in tree_to_bipartite(t)]}
    _emit(out, "ipf", params, result)


def cmd_tree(args, out):
    t = tree_from_json(_read_json(args.file))
    if args.dot:
        out.write(tree_to_dot(t))
        return
    params = {"file": args.file}
    result = {"ipf": ipf_to_json(tree_to_ipf(t))}
    if args.bipartite:
        result["bipartite"] = [list(e) for e in tree_to_bipartite(t)]
    _emit(out, "tree", params, result)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parking", description="Parking function toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def mn(p, m_required=True):
        p.add_argument("--m", type=int, required=m_required, help="number of cars")
        p.add_argument("--n", type=int, required=True, help="number of spots")

    p = sub.add_parser("count", help="exact counts")
    p.add_argument("--m", type=int, help="number of cars")
    p.add_argument("--n", type=int, help="number of spots")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--prefix", type=_ints, help="fixed first preferences, e.g. 3,4")
    g.add_argument("--contiguous", type=int, nargs=2, metavar=("K", "L"), help="first L cars prefer K..K+L-1")
    g.add_argument("--gap", type=int, nargs=2, metavar=("I", "K"), help="i-th unattempted spot equals K")
    g.add_argument("--u-vector", type=_ints, help="count u-parking functions")
    g.add_argument("--ipf", action="store_true", help="count interval parking functions")
    p.add_argument("--method", choices=["formula", "composition"], default="formula")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list PF(m, n) as CSV")
    mn(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum (n+1)^m")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", help="membership tests")
    p.add_argument("--pf", type=_ints, required=True, help="preference sequence, e.g. 2,2,1")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--u", type=_ints, help="test u-parking instead")
    g.add_argument("--b", type=_ints, help="right ends; test (pf, b) as an interval parking function")
    g.add_argument("--multishuffle", type=_ints, metavar="A,B,C2,...", help="test membership in MS(A,B,C2,...)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", help="maximal completion and multi-shuffle components of a suffix")
    p.add_argument("--suffix", type=_ints, required=True)
    p.add_argument("--l", type=int, required=True, help="length of the missing prefix")
    mn(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("complete", help="completion thresholds for a fixed prefix")
    p.add_argument("--prefix", type=_ints, required=True)
    mn(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("sample", help="uniform samples or Monte Carlo estimates")
    mn(p)
    p.add_argument("--count", type=int, default=10, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help=f"worker threads (default ${THREADS_ENV} or 1)")
    p.add_argument("--stat", action="append", help="statistic such as pi1, pi1*pi2, tau2, k1, var(pi1), cov(pi1,k1)")
    p.add_argument("--ipf", action="store_true", help="sample interval parking functions (m = n)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("moments", help="exact versus asymptotic moments as CSV")
    mn(p)
    p.add_argument("--kind", action="append", choices=list(REFINED_KINDS))
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--method", choices=["auto", "exact", "float"], default="auto")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("abel", help="verify Abel multinomial identities at a point")
    p.add_argument("--x", type=_ints, required=True)
    p.add_argument("--p", type=_ints, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_abel)

    p = sub.add_parser("ipf", help="encode an interval parking function as an edge-labelled tree")
    p.add_argument("--a", type=_ints, required=True)
    p.add_argument("--b", type=_ints, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of JSON")
    p.set_defaults(func=cmd_ipf)

    p = sub.add_parser("tree", help="decode a tree JSON file into an interval parking function")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--decode", dest="file", metavar="FILE", help="tree JSON ('-' for stdin)")
    g.add_argument("--dot", dest="dot_file", metavar="FILE", help="convert tree JSON to DOT")
    p.add_argument("--bipartite", action="store_true", help="also list the bipartite edges")
    p.set_defaults(func=_tree_entry)
    return parser


def _tree_entry(args, out):
    if args.dot_file is not None:
        args.file, args.dot = args.dot_file, True
    else:
        args.dot = False
    cmd_tree(args, out)


_NEGATIVE_LIST = re.compile(r"^-\d[\d,-]*$")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--p -1,0`` into ``--p=-1,0`` so argparse does not read ``-1,0`` as an option."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE_LIST.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = _join_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "count" and args.u_vector is None and (args.m is None or args.n is None):
            raise UsageError("parking count: --m and --n are required")
        args.func(args, out)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except DomainFailure as exc:
        out.write(dumps(exc.payload | {"version": __version__}))
        print(exc, file=err)
        return EXIT_DOMAIN
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
