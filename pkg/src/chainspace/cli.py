"""Command line interface: ``chainspace analyze|compare|enumerate|realize|selftest``.

JSON goes to stdout with a fixed key order; rationals are rendered as "p/q".
Exit codes: 0 success, 1 infeasible / failed check, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .cohomology import betti_numbers, euler_characteristic, morse_inventory, ring_presentation
from .complex import connected_components, f_vector
from .lengths import (
    DEFAULT_MAX_N,
    LengthVector,
    NonGenericError,
    check_size,
    degenerate_subsets,
    format_rational,
    is_dominated,
    is_generic,
    members,
    normalize,
    sorting_permutation,
)
from .realization import (
    ENUMERATE_MAX_N,
    RealizationProblem,
    enumerate_chambers,
    equivalent,
    realize,
    short_complex,
)
from .subsets import ChamberCode, a_vector, genetic_code

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _lengths(text: str, max_n: int | None) -> LengthVector:
    text = text.strip()
    try:
        if text.startswith("["):
            lv = LengthVector(tuple(json.loads(text)))
        else:
            lv = LengthVector.parse(text)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    try:
        check_size(lv.n, DEFAULT_MAX_N if max_n is None else max_n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return lv


def _d_list(values) -> list[int]:
    ds = sorted(set(values or [3]))
    for d in ds:
        if d < 3:
            raise InputError(f"d={d} is not supported: Betti numbers and rings are only available for d >= 3")
    return ds


# -- analyze -----------------------------------------------------------------------


def analyze_report(lv: LengthVector, ds: list[int]) -> dict:
    """Full analysis document; raises NonGenericError for balanced inputs."""
    if not is_generic(lv):
        raise NonGenericError(lv, degenerate_subsets(lv, limit=8))
    dominated = is_dominated(lv)
    code = genetic_code(lv)
    cx = short_complex(lv)
    doc: dict = {
        "lengths": lv.as_strings(),
        "normalized": normalize(lv).as_strings(),
        "sorting_permutation": list(sorting_permutation(lv)),
        "n": lv.n,
        "generic": True,
        "dominated": dominated,
        "genetic_code": {"text": str(code), "genes": code.to_json()},
        "a_vector": list(a_vector(lv)),
        "short_complex": {
            "facets": cx.to_json(),
            "f_vector": list(f_vector(cx)),
            "vertices": len(cx.vertices),
            "components": connected_components(cx),
        },
    }
    if dominated:
        betti = []
        ring = []
        for d in ds:
            t = betti_numbers(lv, d)
            row = t.to_json()
            row["euler_characteristic"] = euler_characteristic(t)
            betti.append(row)
            r = ring_presentation(lv, d)
            ring.append(
                {
                    "d": d,
                    "grade_unit": r.grade_unit,
                    "graded_dims": {str(k): v for k, v in sorted(r.graded_dims().items())},
                    "basis_size": len(r.basis),
                    "product_table_size": len(r.product_table()),
                }
            )
        doc["betti"] = betti
        doc["ring"] = ring
    doc["morse"] = [
        {
            "d": d,
            "g_on_V": morse_inventory(lv, d, "g_on_V").to_json(),
            "f_prime_on_Z_prime": morse_inventory(lv, d, "f_prime_on_Z_prime").to_json(full=False),
        }
        for d in ds
    ]
    warnings = []
    if not dominated:
        warnings.append(
            "length vector is not dominated (l_n is not a maximum): Betti numbers and the "
            "cohomology ring are not determined by the short complex here and are withheld"
        )
    if code.empty_space:
        warnings.append("{n} is long: the chain space is empty")
    doc["warnings"] = warnings
    return doc


def _analyze_text(doc: dict) -> str:
    lines = [
        f"lengths      ({','.join(doc['lengths'])})",
        f"n            {doc['n']}",
        f"dominated    {doc['dominated']}",
        f"code         {doc['genetic_code']['text']}",
        f"a-vector     {tuple(doc['a_vector'])}",
        f"short cx     facets {doc['short_complex']['facets']}, f-vector {tuple(doc['short_complex']['f_vector'])}, "
        f"{doc['short_complex']['components']} component(s)",
    ]
    for t in doc.get("betti", []):
        lines.append(f"betti d={t['d']}    {tuple(t['ranks'])}")
    for m in doc["morse"]:
        counts = ", ".join(f"{k}:{v}" for k, v in m["g_on_V"]["index_counts"].items())
        lines.append(f"morse d={m['d']}    g on V {{{counts}}}; f' has {m['f_prime_on_Z_prime']['count']} critical points")
    for w in doc["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    lv = _lengths(args.lengths, args.max_n)
    ds = _d_list(args.d)
    try:
        doc = analyze_report(lv, ds)
    except NonGenericError as exc:
        err = {
            "lengths": lv.as_strings(),
            "generic": False,
            "error": str(exc),
            "degenerate_subsets": [members(m) for m in exc.subsets],
        }
        sys.stdout.write(_dump(err))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(_dump(doc) if args.format == "json" else _analyze_text(doc))
    return EXIT_OK


# -- compare -------------------------------------------------------------------------


def compare_report(l1: LengthVector, l2: LengthVector, ds: list[int]) -> dict:
    records = []
    for d in ds:
        cmp = equivalent(l1, l2, d)
        rec = {"d": d}
        rec.update(cmp.to_json())
        records.append(rec)
    verdicts = {r["verdict"] for r in records}
    return {
        "lengths": [l1.as_strings(), l2.as_strings()],
        "verdict": verdicts.pop() if len(verdicts) == 1 else "mixed",
        "by_d": records,
    }


def cmd_compare(args) -> int:
    l1 = _lengths(args.first, args.max_n)
    l2 = _lengths(args.second, args.max_n)
    ds = _d_list(args.d)
    try:
        doc = compare_report(l1, l2, ds)
    except (NonGenericError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    else:
        for r in doc["by_d"]:
            c = r["consistency"]
            print(
                f"d={r['d']}: {r['verdict']} ({r['codes'][0]} vs {r['codes'][1]}); "
                f"certificate: {_describe(r['certificate'])}; betti equal: {c['betti_equal']}; "
                f"ring iso: {c['ring_isomorphic']}"
            )
    return EXIT_OK


def _describe(cert: dict) -> str:
    if cert["isomorphic"]:
        return "bijection " + ", ".join(f"{a}->{b}" for a, b in cert["bijection"])
    if "values" in cert:
        return f"{cert['invariant']} {cert['values'][0]} != {cert['values'][1]}"
    return cert["invariant"]


# -- enumerate / realize --------------------------------------------------------------


def cmd_enumerate(args) -> int:
    limit = args.max_n if args.max_n is not None else ENUMERATE_MAX_N
    try:
        codes = enumerate_chambers(args.n, args.dominated_only, not args.all_codes, max_n=limit)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        doc = {
            "n": args.n,
            "dominated_only": args.dominated_only,
            "up_to_isomorphism": not args.all_codes,
            "count": len(codes),
            "chambers": [{"code": str(c), "genes": c.to_json(), "a_vector": list(c.a_vector())} for c in codes],
        }
        sys.stdout.write(_dump(doc))
    else:
        print(f"n={args.n}  chambers={len(codes)}")
        for c in codes:
            print(f"{str(c):<28} a={c.a_vector()}")
    return EXIT_OK


def _problem(args) -> RealizationProblem:
    dominated = not args.allow_undominated
    sources = [x for x in (args.facets, args.facets_file, args.code) if x is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --facets, --facets-file, --code")
    try:
        if args.code is not None:
            code = ChamberCode.parse(args.code, args.n)
            return RealizationProblem.from_code(code, require_dominated=dominated)
        if args.n is None:
            raise InputError("--n is required with --facets")
        raw = args.facets
        if args.facets_file is not None:
            with open(args.facets_file, encoding="utf-8") as fh:
                raw = fh.read()
        facets = json.loads(raw)
        if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
            raise InputError("facets must be a JSON list of integer lists")
        return RealizationProblem.from_facets(args.n, facets, require_dominated=dominated)
    except (ValueError, TypeError, OSError) as exc:
        raise InputError(str(exc)) from exc


def cmd_realize(args) -> int:
    p = _problem(args)
    res = realize(p)
    doc = {
        "n": p.n,
        "target": p.target.to_json(),
        "n_short": p.n_short,
        "require_dominated": p.require_dominated,
        "feasible": res.feasible,
    }
    if res.feasible:
        code = genetic_code(res.witness)
        doc["witness"] = res.witness.as_strings()
        doc["integer_witness"] = res.integer_witness().as_strings()
        doc["slack"] = format_rational(res.slack)
        doc["genetic_code"] = str(code)
    if args.format == "json":
        sys.stdout.write(_dump(doc))
    elif res.feasible:
        print(f"feasible: witness ({','.join(doc['integer_witness'])}), code {doc['genetic_code']}, slack {doc['slack']}")
    else:
        print("infeasible")
    return EXIT_OK if res.feasible else EXIT_FAIL


# -- selftest ------------------------------------------------------------------------


def _selftest_case(name: str) -> tuple[str, bool, str]:
    from . import selftest

    t0 = time.perf_counter()
    ok, detail = selftest.CHECKS[name]()
    return name, ok, f"{detail} ({time.perf_counter() - t0:.2f}s)"


def cmd_selftest(args) -> int:
    from . import selftest

    names = list(selftest.CHECKS)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_selftest_case, names))
    else:
        results = [_selftest_case(n) for n in names]
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failed += not ok
    return EXIT_OK if not failed else EXIT_FAIL


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    env_max = os.environ.get("CHAINS_MAX_N")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument(
        "--max-n",
        type=int,
        default=int(env_max) if env_max else None,
        help=f"cap on n (default {DEFAULT_MAX_N}; {ENUMERATE_MAX_N} for enumerate); env CHAINS_MAX_N",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker processes (selftest only)")

    p = argparse.ArgumentParser(prog="chainspace", description="Invariants of spaces of chains")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="invariants of one length vector")
    a.add_argument("lengths", help='comma separated rationals, e.g. "1/4,1,1,1,2,2", or a JSON array')
    a.add_argument("--d", type=int, action="append", help="ambient dimension (repeatable, default 3)")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", parents=[common], help="decide whether two chain spaces are diffeomorphic")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--d", type=int, action="append")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("enumerate", parents=[common], help="list chambers for small n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--dominated-only", action="store_true")
    e.add_argument("--all-codes", action="store_true", help="keep isomorphic duplicates")
    e.set_defaults(func=cmd_enumerate)

    r = sub.add_parser("realize", parents=[common], help="find a length vector with a given short complex")
    r.add_argument("--n", type=int)
    r.add_argument("--facets", help='JSON facet list, e.g. "[[1,2],[1,3]]"')
    r.add_argument("--facets-file")
    r.add_argument("--code", help='genetic code such as "<632,64>"')
    r.add_argument("--allow-undominated", action="store_true", help="drop the l_n >= l_i constraint")
    r.set_defaults(func=cmd_realize)

    s = sub.add_parser("selftest", parents=[common], help="run the oracle cross-checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
