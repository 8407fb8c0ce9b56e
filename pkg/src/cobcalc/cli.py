"""Command-line front end.

All reports go to standard output as JSON (or Markdown/CSV where a table
format is offered); diagnostics go to standard error.  Output is
byte-stable for fixed inputs: fixed key order, decimal strings for big
integers, no timestamps.  Exit codes: 0 success (and all checks passed),
1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import adams, chow, criterion, partitions, steenrod, stong, symfun
from .symfun import BPoly


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def bpoly_to_json(p: BPoly) -> list:
    """Sparse monomial list: [{"exponents": {"1": k1, ...}, "coeff": c}]."""
    rows = []
    for mono in sorted(p.coeffs):
        rows.append(
            {
                "exponents": {str(i): k for i, k in mono},
                "coeff": int(p.coeffs[mono]),
            }
        )
    return rows


def bpoly_from_json(rows: list, modulus: int | None = None) -> BPoly:
    coeffs = {}
    for row in rows:
        mono = tuple(sorted((int(i), int(k)) for i, k in row["exponents"].items()))
        coeffs[mono] = coeffs.get(mono, 0) + int(row["coeff"])
    return BPoly(coeffs, modulus)


def parse_b_class(text: str) -> dict:
    """Parse a product like "b1^2*b2" (optionally "3*b1^2*b2") into a
    single-monomial coefficient map."""
    coeff = 1
    exps: dict[int, int] = {}
    for factor in text.replace(" ", "").split("*"):
        if not factor:
            raise ValueError("empty factor")
        if re.fullmatch(r"-?\d+", factor):
            coeff *= int(factor)
            continue
        m = re.fullmatch(r"b(\d+)(?:\^(\d+))?", factor)
        if not m:
            raise ValueError(f"cannot parse factor {factor!r}")
        i, k = int(m.group(1)), int(m.group(2) or 1)
        if i < 1:
            raise ValueError("generator indices start at 1")
        exps[i] = exps.get(i, 0) + k
    return {tuple(sorted(exps.items())): coeff}


def family_to_json(fam: criterion.CandidateFamily) -> dict:
    return {
        "kind": fam.kind,
        "entries": {str(d): str(fam.entries[d]) for d in sorted(fam.entries)},
    }


def family_from_json(obj: dict) -> criterion.CandidateFamily:
    return criterion.CandidateFamily(
        obj["kind"], {int(d): int(v) for d, v in obj["entries"].items()}
    )


def snumbers_rows(ell: int, d_max: int) -> list[dict]:
    rows = []
    for row in stong.valuation_table(ell, d_max):
        rows.append(
            {
                "d": row.d,
                "factors": list(row.factors.dims),
                "s": str(row.s_number),
                "nu": row.valuation,
                "expected": row.expected,
                "match": row.matches,
            }
        )
    return rows


def family_from_snumbers_rows(rows: list[dict]) -> criterion.CandidateFamily:
    """Read a snumbers JSON report back as a candidate family."""
    return criterion.CandidateFamily(
        "msp", {int(r["d"]): abs(int(r["s"])) for r in rows}
    )


# ---------------------------------------------------------------------------
# chow expression evaluator
# ---------------------------------------------------------------------------


def parse_bundle(space: chow.ProjProduct, spec) -> chow.VirtualBundle:
    if spec == "tangent":
        return chow.tangent_bundle(space)
    if isinstance(spec, dict) and "terms" in spec:
        terms = tuple(
            chow.LineTerm(int(t.get("sign", 1)), tuple(int(c) for c in t["twist"]))
            for t in spec["terms"]
        )
        return chow.VirtualBundle(space, terms)
    raise ValueError(f"cannot parse bundle {spec!r}")


def eval_chow_expr(space: chow.ProjProduct, expr):
    """Evaluate an expression tree; returns a ChowClass or an int (deg)."""
    if expr == "alpha":
        return chow.alpha(space)
    if not isinstance(expr, dict) or "op" not in expr:
        raise ValueError(f"cannot parse expression {expr!r}")
    op = expr["op"]
    if op == "alpha":
        return chow.alpha(space)
    if op == "deg":
        value = eval_chow_expr(space, expr["of"])
        if not isinstance(value, chow.ChowClass):
            raise ValueError("deg needs a class")
        return chow.deg(value)
    if op == "pow":
        base = eval_chow_expr(space, expr["base"])
        return base ** int(expr["n"])
    if op == "mul":
        factors = [eval_chow_expr(space, e) for e in expr["factors"]]
        out = factors[0]
        for f in factors[1:]:
            out = out * f
        return out
    if op == "add":
        terms = [eval_chow_expr(space, e) for e in expr["terms"]]
        out = terms[0]
        for t in terms[1:]:
            out = out + t
        return out
    if op == "newton":
        return chow.newton_class(parse_bundle(space, expr["bundle"]), int(expr["n"]))
    if op == "cf":
        return chow.cf_chern(
            parse_bundle(space, expr["bundle"]), tuple(expr["partition"])
        )
    raise ValueError(f"unknown op {op!r}")


def chow_result_to_json(value) -> dict:
    if isinstance(value, chow.ChowClass):
        return {
            "class": [
                {"exponents": list(e), "coeff": str(value.coeffs[e])}
                for e in sorted(value.coeffs)
            ]
        }
    return {"deg": str(value)}


def chow_class_from_json(space: chow.ProjProduct, rows: list) -> chow.ChowClass:
    return chow.ChowClass(
        space, {tuple(int(x) for x in r["exponents"]): int(r["coeff"]) for r in rows}
    )


# ---------------------------------------------------------------------------
# table rendering
# ---------------------------------------------------------------------------


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if not rows:
        return ""
    headers = list(rows[0])
    cells = [[_cell(r[h]) for h in headers] for r in rows]
    if fmt == "csv":
        lines = [",".join(headers)]
        lines += [",".join(row) for row in cells]
        return "\n".join(lines)
    if fmt == "md":
        lines = ["| " + " | ".join(headers) + " |"]
        lines.append("|" + "|".join(" --- " for _ in headers) + "|")
        lines += ["| " + " | ".join(row) + " |" for row in cells]
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "x".join(str(v) for v in value)
    return str(value)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_snumbers(args) -> int:
    rows = snumbers_rows(args.prime, args.max_d)
    _emit(render_table(rows, args.format), args.output)
    return 0 if all(r["match"] for r in rows) else 1


def _cmd_verify_generators(args) -> int:
    d_max = args.max_d
    if args.family:
        with open(args.family, encoding="utf-8") as fh:
            fam = family_from_json(json.load(fh))
        per_prime_default = None
    else:
        fam = None
        per_prime_default = lambda ell: criterion.stong_family(ell, d_max)  # noqa: E731

    def verdict_json(v: criterion.GeneratorVerdict) -> list[dict]:
        rows = []
        for r in v.rows:
            row = {
                "d": r.d,
                "required": r.required,
                "observed": r.observed,
                "pass": r.passed,
            }
            if r.reason:
                row["reason"] = r.reason
            rows.append(row)
        return rows

    if args.all_primes_up_to:
        primes = criterion.odd_primes_up_to(args.all_primes_up_to, args.exclude)
        if fam is not None:
            verdicts = criterion.global_criterion(
                fam, args.all_primes_up_to, d_max, args.exclude
            )
        else:
            # no family given: each prime checks its own construction
            verdicts = {
                ell: criterion.msp_criterion(per_prime_default(ell), ell, d_max)
                for ell in primes
            }
        ok = criterion.aggregate_passed(verdicts)
        report = {
            "kind": "msp",
            "prime_bound": args.all_primes_up_to,
            "excluded": sorted(args.exclude),
            "primes": primes,
            "max_d": d_max,
            "pass": ok,
            "verdicts": [
                {"prime": ell, "pass": verdicts[ell].passed, "rows": verdict_json(verdicts[ell])}
                for ell in primes
            ],
        }
    else:
        f = fam if fam is not None else per_prime_default(args.prime)
        v = criterion.msp_criterion(f, args.prime, d_max)
        ok = v.passed
        report = {
            "kind": "msp",
            "prime": args.prime,
            "max_d": d_max,
            "pass": ok,
            "rows": verdict_json(v),
        }
    _emit(json.dumps(report, indent=2), args.output)
    return 0 if ok else 1


def _cmd_steenrod(args) -> int:
    m = re.fullmatch(r"P(-?\d+)", args.op)
    if not m:
        raise ValueError(f"cannot parse operation {args.op!r}, expected like P2")
    i = int(m.group(1))
    f = BPoly(parse_b_class(args.cls), args.prime)
    if args.untwisted:
        result = steenrod.power_op_untwisted(i, f, args.prime)
    else:
        result = steenrod.power_op(i, f, args.prime)
    _emit(json.dumps(bpoly_to_json(result), indent=2), args.output)
    return 0


def _cmd_decomp_check(args) -> int:
    report = adams.decomposition_check(args.max_weight, args.prime)
    rows = [
        {
            "weight": r.weight,
            "even_partitions": r.even_partition_count,
            "module_side": r.module_count,
            "equal": r.equal,
        }
        for r in report.rows
    ]
    _emit(render_table(rows, args.format), args.output)
    return 0 if report.all_equal else 1


def _cmd_ranks(args) -> int:
    rows = []
    for d in range(1, args.max_d + 1):
        rank = adams.e2_rank(d)
        by_gens = adams.e2_rank_from_generators(d, args.prime)
        rows.append(
            {"d": d, "rank": rank, "by_generators": by_gens, "equal": rank == by_gens}
        )
    _emit(render_table(rows, args.format), args.output)
    return 0 if all(r["equal"] for r in rows) else 1


def _parse_parts(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _cmd_partition_tools(args) -> int:
    if args.is_even is not None:
        p = partitions.Partition(_parse_parts(args.is_even))
        report = {"partition": list(p), "is_even": p.is_even()}
        _emit(json.dumps(report, indent=2), args.output)
        return 0
    if args.is_ladic is not None:
        p = partitions.Partition(_parse_parts(args.is_ladic))
        report = {"partition": list(p), "prime": args.prime, "is_ladic": p.is_ladic(args.prime)}
        _emit(json.dumps(report, indent=2), args.output)
        return 0
    if args.weight is None:
        raise ValueError("need --weight (or --is-even / --is-ladic)")
    ell = args.prime if args.predicate == "even-non-ladic" else None
    plist = partitions.enumerate_partitions(args.weight, args.predicate, ell)
    _emit(json.dumps([list(p) for p in plist], indent=2), args.output)
    return 0


def _cmd_u_to_b(args) -> int:
    omega = _parse_parts(args.partition)
    result = symfun.u_to_b(omega, modulus=args.modulus)
    _emit(json.dumps(bpoly_to_json(result), indent=2), args.output)
    return 0


def _cmd_chow(args) -> int:
    if args.input == "-":
        payload = json.load(sys.stdin)
    else:
        with open(args.input, encoding="utf-8") as fh:
            payload = json.load(fh)
    space = chow.ProjProduct(tuple(int(n) for n in payload["space"]))
    value = eval_chow_expr(space, payload["expr"])
    report = {"space": list(space.dims)}
    report.update(chow_result_to_json(value))
    _emit(json.dumps(report, indent=2), args.output)
    return 0


def _cmd_self_test(args) -> int:
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
        if not ok:
            failures += 1

    for ell in (3, 5):
        rows = stong.valuation_table(ell, 15)
        check(f"valuation dichotomy d<=15, prime {ell}", all(r.matches for r in rows))
        gen = [
            d
            for d in range(1, 16)
            if stong.exceptional_exponent(d, ell) is None
        ]
        check(
            f"digit-factorial congruence d<=15, prime {ell}",
            all(stong.congruence_check(d, ell)[2] for d in gen),
        )
        report = adams.decomposition_check(40, ell)
        check(f"decomposition identity w<=40, prime {ell}", report.all_equal)

    for ell in (3, 5, 7):
        X = stong.build_X(2, ell)
        if X.total_dimension <= stong.bruteforce_cap():
            check(
                f"closed form vs expansion, d=2, prime {ell}",
                stong.s_number(X) == stong.s_number_bruteforce(X),
            )
        fam = criterion.stong_family(ell, 10)
        check(
            f"generator criterion d<=10, prime {ell}",
            criterion.msp_criterion(fam, ell, 10).passed,
        )

    for ell in (3, 5):
        ok = True
        for j in (1, 2):
            for i in (0, 1, 2, 3, 4):
                f = BPoly.generator(j, ell)
                r = steenrod.stability_bound(f, i, ell)
                if steenrod.power_op(i, f, ell) != steenrod.power_op_oracle(i, f, ell, r):
                    ok = False
        check(f"power operation differential test, prime {ell}", ok)

    check(
        "rank bookkeeping d<=15",
        all(
            adams.e2_rank(d) == adams.e2_rank_from_generators(d, ell)
            for d in range(1, 16)
            for ell in (3, 5, 7)
        ),
    )

    anchor = BPoly({((1, 3),): 2, ((1, 1), (2, 1)): 1}, 3)
    check("anchored value P2(b1) at prime 3", steenrod.power_op(2, BPoly.generator(1, 3), 3) == anchor)

    print("self-test: all passed" if failures == 0 else f"self-test: {failures} failed")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", help="write the report to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobcalc",
        description="Exact calculator for characteristic numbers, valuations, "
        "power operations, and generator criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snumbers", help="characteristic-number valuation table")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--format", choices=("json", "md", "csv"), default="json")
    _add_output(p)
    p.set_defaults(func=_cmd_snumbers)

    p = sub.add_parser("verify-generators", help="run the generator criterion")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--prime", type=int)
    g.add_argument("--all-primes-up-to", type=int)
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--family", help="JSON family file; default: the construction")
    p.add_argument(
        "--exclude",
        type=int,
        nargs="*",
        default=[2],
        help="primes excluded from the all-primes sweep",
    )
    _add_output(p)
    p.set_defaults(func=_cmd_verify_generators)

    p = sub.add_parser("steenrod", help="apply a power operation to a b-monomial")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--op", required=True, help="operation, e.g. P2")
    p.add_argument("--class", dest="cls", required=True, help='e.g. "b1^2*b2"')
    p.add_argument(
        "--untwisted",
        action="store_true",
        help="classifying-space action instead of the rank-twisted one",
    )
    _add_output(p)
    p.set_defaults(func=_cmd_steenrod)

    p = sub.add_parser("decomp-check", help="graded-dimension decomposition identity")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--format", choices=("json", "md", "csv"), default="json")
    _add_output(p)
    p.set_defaults(func=_cmd_decomp_check)

    p = sub.add_parser("ranks", help="per-degree diagonal ranks, two ways")
    p.add_argument("--max-d", type=int, required=True)
    p.add_argument("--prime", type=int, default=3, help="prime for the generator route")
    p.add_argument("--format", choices=("json", "md", "csv"), default="json")
    _add_output(p)
    p.set_defaults(func=_cmd_ranks)

    p = sub.add_parser("partition-tools", help="partition enumeration and predicates")
    p.add_argument("--weight", type=int)
    p.add_argument("--predicate", choices=partitions.PREDICATES, default="all")
    p.add_argument("--prime", type=int, default=3)
    p.add_argument("--is-even", metavar="PARTS", help='e.g. "4,2"')
    p.add_argument("--is-ladic", metavar="PARTS", help='e.g. "8,4"')
    _add_output(p)
    p.set_defaults(func=_cmd_partition_tools)

    p = sub.add_parser("u-to-b", help="b-polynomial of an even partition")
    p.add_argument("--partition", required=True, help='e.g. "4,2"; empty for ()')
    p.add_argument("--modulus", type=int, default=None)
    _add_output(p)
    p.set_defaults(func=_cmd_u_to_b)

    p = sub.add_parser("chow", help="evaluate a degree/class expression")
    p.add_argument("--input", required=True, help="JSON file, or - for stdin")
    _add_output(p)
    p.set_defaults(func=_cmd_chow)

    p = sub.add_parser("self-test", help="run the built-in invariant suite")
    p.set_defaults(func=_cmd_self_test)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
