"""Command line front end.

Every subcommand prints one JSON document (or a CSV/text rendering of its
table) to stdout.  Exit codes: 0 success, 2 bad arguments, 3 size or
capacity limits, 4 a consistency check or certificate failed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .blattice import LatticeError, balanced_bw, irrational_part, rational_part
from .cgroup import (
    DEFAULT_CAP,
    GENERATOR_MODEL_VERSION,
    CapacityError,
    GroupError,
    aut_backtrack,
    clifford_group,
    molien_series,
)
from .codes import BinaryCode, ClassificationError, classify_self_dual, hamming8, i2
from .enumeration import (
    UnsupportedError,
    bw_pair,
    design_moment_test,
    kissing_number,
    minimal_vectors,
    theta_prefix,
)
from .invariants import DEFAULT_BUDGET, StructuralError, cwe_tensor, runge_span_check
from .qring import format_scalar

CACHE_ENV = "BARNESWALL_CACHE_DIR"

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_CONSISTENCY = 0, 2, 3, 4


class UsageError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


# --- results -------------------------------------------------------------------------

class Result:
    """A JSON payload plus an optional table for csv/text output."""

    def __init__(self, payload, header=None, rows=None):
        self.payload = payload
        self.header = header
        self.rows = rows


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render(result: Result, fmt: str) -> str:
    if fmt == "json" or result.header is None:
        return dumps(result.payload)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(result.header)
        w.writerows(result.rows)
        return buf.getvalue()
    widths = [max(len(str(x)) for x in col) for col in zip(result.header, *result.rows)]
    lines = ["  ".join(str(x).rjust(k) for x, k in zip(r, widths)) for r in [result.header, *result.rows]]
    return "\n".join(lines) + "\n"


# --- cache ----------------------------------------------------------------------------

def cache_key(command: str, args: dict) -> str:
    version = f"{__version__}/generators-{GENERATOR_MODEL_VERSION}"
    blob = json.dumps({"command": command, "version": version, "args": args}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_dir(opt):
    d = opt or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cached(command, args, directory, compute):
    """Look up (command, version, args) in the cache; compute and store on a miss."""
    if directory is None:
        return compute()
    path = directory / f"{cache_key(command, args)}.json"
    if path.exists():
        data = json.loads(path.read_text())
        return Result(data["payload"], data.get("header"), data.get("rows"))
    res = compute()
    directory.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"payload": res.payload, "header": res.header, "rows": res.rows}))
    tmp.replace(path)
    return res


# --- commands -----------------------------------------------------------------------

def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise UsageError(f"{name} must be in [{lo}, {hi}], got {value}")


def cmd_construct(a) -> Result:
    _check_range("m", a.m, 1, 6)
    mm = balanced_bw(a.m)
    if a.target == "M":
        return Result(mm.to_json())
    if a.target == "L":
        return Result(rational_part(mm).to_json(a.m))
    lp = irrational_part(mm, divide=not a.scaled)
    return Result(lp.to_json(a.m))


def _lattice(m, which):
    _check_range("m", m, 1, 4)
    lat, lp = bw_pair(m)
    return lat if which == "L" else lp


def cmd_theta(a) -> Result:
    lat = _lattice(a.m, a.which)
    bound = Fraction(a.max_norm)
    if bound < 0:
        raise UsageError("max-norm must be non-negative")
    th = theta_prefix(lat, bound)
    rows = [[format_scalar(n), c] for n, c in th.counts]
    return Result({"m": a.m, "which": a.which, "max_norm": str(bound), **th.to_json()},
                  ["norm", "count"], rows)


def cmd_kissing(a) -> Result:
    if a.which == "M":
        _check_range("m", a.m, 1, 2)
    else:
        _check_range("m", a.m, 1, 4)
    k = kissing_number(a.m, a.which)
    return Result({"m": a.m, "which": a.which, "kissing": k}, ["m", "which", "kissing"],
                  [[a.m, a.which, k]])


def cmd_design(a) -> Result:
    lat = _lattice(a.m, a.which)
    if a.t_max < 0:
        raise UsageError("t-max must be non-negative")
    t = a.t_max - a.t_max % 2
    vs = minimal_vectors(lat)
    rep = design_moment_test(vs, t)
    rows = [[s, format_scalar(d), d == 0] for s, d in rep.discrepancies]
    payload = {
        "m": a.m,
        "which": a.which,
        "vectors": len(vs),
        "moments": [{"t": s, "discrepancy": d, "pass": ok} for s, d, ok in rows],
        "strength": rep.strength,
    }
    return Result(payload, ["t", "discrepancy", "pass"], rows)


def cmd_group(a) -> Result:
    _check_range("m", a.m, 1, 3)
    if (a.molien is not None or a.validate) and a.m > 2:
        raise UsageError("--molien and --validate need m <= 2")
    grp = clifford_group(a.m, elements=a.m <= 2, cap=a.cap)
    payload = {**grp.to_json(), "method": grp.source}
    header, rows = ["quantity", "value"], [["order", str(grp.order)]]
    if a.molien is not None:
        _check_range("molien degree", a.molien, 0, 40)
        series = molien_series(grp, a.molien)
        if any(c.denominator != 1 or c < 0 for c in series):
            raise ConsistencyError("Molien coefficients are not nonnegative integers")
        payload["molien"] = [str(c) for c in series]
        rows += [[f"c_{d}", int(c)] for d, c in enumerate(series)]
    if a.validate:
        bt = aut_backtrack(balanced_bw(a.m))
        same = set(bt.elements) == set(grp.elements)
        payload["validate"] = {"backtrack_order": str(bt.order), "closure_order": str(grp.order),
                               "same_elements": same}
        rows.append(["backtrack_order", str(bt.order)])
        if not same:
            raise ConsistencyError("generator closure and backtracking disagree")
    return Result(payload, header, rows)


def cmd_codes(a) -> Result:
    if a.n <= 0 or a.n % 2:
        raise UsageError("length must be even and positive")
    _check_range("n", a.n, 2, 12)
    cls = classify_self_dual(a.n)
    rows = [[i, str(o), c.weight2_generated(), c.is_doubly_even()]
            for i, (c, o) in enumerate(zip(cls.representatives, cls.aut_orders))]
    return Result(cls.to_json(), ["class", "aut_order", "weight2_generated", "doubly_even"], rows)


_NAMED = {"h8": hamming8, "i2": i2}


def _load_code(source: str) -> BinaryCode:
    if source in _NAMED:
        return _NAMED[source]()
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such code file: {source}")
    try:
        return BinaryCode.load(path)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot read code from {source}: {exc}") from exc


def cmd_cwe(a) -> Result:
    _check_range("m", a.m, 1, 3)
    code = _load_code(a.code)
    p = cwe_tensor(code, a.m)
    rows = [[" ".join(map(str, t["exp"])), t["coef"]] for t in p.to_json()["terms"]]
    return Result({**p.to_json(), "text": str(p)}, ["exponent", "coefficient"], rows)


def cmd_runge(a) -> Result:
    _check_range("m", a.m, 1, 2)
    _check_range("k", a.k, 1, 6)
    rep = runge_span_check(a.m, a.k, budget=a.budget)
    if not rep.consistent:
        raise ConsistencyError(f"Runge check inconsistent: {rep.to_json()}")
    payload = rep.to_json()
    return Result(payload, list(payload), [list(payload.values())])


# --- reference reproduction----------------------------------------------------------

def _repro_checks(quick: bool):
    """(name, slow, thunk) for each number anchored in the acceptance suite."""
    def order(m):
        return str(clifford_group(m, elements=m <= 2).order)

    checks = [
        ("construct_M1_basis", False, lambda: balanced_bw(1).to_json()["basis"]),
        ("construct_M1_gram", False, lambda: balanced_bw(1).to_json()["gram"]),
        ("construct_L2_basis", False, lambda: rational_part(balanced_bw(2)).to_json()["basis"]),
        ("construct_sqrt2_Lprime2_basis", False,
         lambda: irrational_part(balanced_bw(2), divide=False).to_json()["basis"]),
        ("index_law", True, lambda: [_index(m) for m in range(1, 5)]),
        ("kissing_L", True, lambda: [kissing_number(m, "L") for m in range(1, 5)]),
        ("minimal_vectors_M1", False, lambda: kissing_number(1, "M")),
        ("order_C1", False, lambda: order(1)),
        ("order_C2", False, lambda: order(2)),
        ("order_C3", True, lambda: order(3)),
        ("molien_C1", False, lambda: [int(c) for c in molien_series(clifford_group(1), 12)]),
        ("molien_C2", True, lambda: [int(c) for c in molien_series(clifford_group(2), 12)]),
        ("design_L3", False, lambda: design_moment_test(minimal_vectors(bw_pair(3)[0]), 8).strength),
        ("code_classes", False, lambda: [len(classify_self_dual(n)) for n in range(2, 11, 2)]),
        ("code_classes_12", True, lambda: len(classify_self_dual(12))),
        ("cwe_h8_m1", False, lambda: str(cwe_tensor(hamming8(), 1))),
        ("runge_m1_k4", False, lambda: runge_span_check(1, 4).to_json()),
    ]
    return [(n, t) for n, slow, t in checks if not (quick and slow)]


def _index(m):
    from .blattice import index

    lat, lp = bw_pair(m)
    return index(lat, lp)


def golden_path(directory=None) -> Path:
    if directory:
        return Path(directory) / "repro.json"
    return Path(str(resources.files("barneswall") / "golden" / "repro.json"))


def cmd_repro(a) -> Result:
    golden = json.loads(golden_path(a.golden_dir).read_text())
    rows = []
    results = {}
    failures = []
    for name, thunk in _repro_checks(a.quick):
        t0 = time.perf_counter()
        value = json.loads(json.dumps(thunk()))
        dt = time.perf_counter() - t0
        expected = golden.get(name)
        ok = value == expected
        results[name] = {"value": value, "expected": expected, "match": ok}
        rows.append([name, ok, f"{dt:.1f}s"])
        if not ok:
            failures.append(name)
    if a.update_golden:
        golden_path(a.golden_dir).write_text(dumps({k: v["value"] for k, v in results.items()}))
    payload = {"checks": results, "all_match": not failures}
    if failures and not a.update_golden:
        print(dumps(payload), end="")
        raise ConsistencyError(f"golden mismatch: {', '.join(failures)}")
    # timings are not part of the JSON so that repeated runs are byte-identical
    return Result(payload, ["check", "match", "time"], rows)


# --- argument parsing -----------------------------------------------------------------

def _common(p):
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--cache-dir", default=None,
                   help=f"result cache directory (default: ${CACHE_ENV}, unset = no cache)")
    p.add_argument("--threads", type=int, default=1, help="upper bound on worker threads")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum group size to enumerate")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="maximum monomials x group order for Reynolds averaging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="barneswall", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="basis and Gram matrix of M_m, L_m or L'_m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--target", choices=["M", "L", "Lprime"], default="M")
    p.add_argument("--scaled", action="store_true", help="for Lprime: emit sqrt(2) L'_m")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("theta", help="theta series prefix of L_m or L'_m")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--which", choices=["L", "Lprime"], default="L")
    p.add_argument("--max-norm", required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("kissing", help="number of minimal vectors")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--which", choices=["L", "Lprime", "M"], default="L")
    p.set_defaults(func=cmd_kissing)

    p = sub.add_parser("design", help="exact spherical design moments of the minimal vectors")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--which", choices=["L", "Lprime"], default="L")
    p.add_argument("--t-max", type=int, default=8)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("group", help="Clifford group order, Molien series, cross-validation")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--order", action="store_true", help="report the order (always included)")
    p.add_argument("--molien", type=int, default=None, metavar="D")
    p.add_argument("--validate", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("codes", help="binary self-dual codes")
    csub = p.add_subparsers(dest="codes_command", required=True)
    c = csub.add_parser("classify", help="classify self-dual codes of length n")
    c.add_argument("-n", type=int, required=True)
    _common(c)
    c.set_defaults(func=cmd_codes)

    p = sub.add_parser("cwe", help="complete weight enumerator of C tensor GF(2^m)")
    p.add_argument("--code", required=True, help="code file (JSON or 0/1 rows) or h8 / i2")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_cwe)

    p = sub.add_parser("runge", help="span of weight enumerators vs invariant dimension")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="code length is 2k")
    p.set_defaults(func=cmd_runge)

    p = sub.add_parser("repro-paper", help="recompute all reference numbers and diff against golden files")
    p.add_argument("--quick", action="store_true", help="skip the slow checks")
    p.add_argument("--golden-dir", default=None)
    p.add_argument("--update-golden", action="store_true")
    p.set_defaults(func=cmd_repro)

    for name, sp in sub.choices.items():
        if name != "codes":
            _common(sp)
    return parser


_UNCACHED = {"repro-paper"}
_NOT_ARGS = {"func", "format", "cache_dir", "threads", "command", "update_golden"}


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.threads < 1:
        parser.error("--threads must be >= 1")
    if a.cap < 1 or a.budget < 1:
        parser.error("--cap and --budget must be positive")
    name = a.command if a.command != "codes" else f"codes {a.codes_command}"
    args = {k: v for k, v in sorted(vars(a).items()) if k not in _NOT_ARGS}
    try:
        if a.command in _UNCACHED:
            res = a.func(a)
        else:
            res = cached(name, args, cache_dir(a.cache_dir), lambda: a.func(a))
    except (UsageError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, UnsupportedError) as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ConsistencyError, ClassificationError, StructuralError, GroupError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    sys.stdout.write(render(res, a.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
