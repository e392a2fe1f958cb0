# src/cli.py
"""
Command line for the toolkit: `python -m src.cli <command> ...` (prog name qps).

Exit codes: 0 on success, 1 on a usage or domain error, 2 when `verify` finds a
failing check. stdout carries only the result; progress goes to stderr with
--verbose.
"""

import argparse
import json
import sys
from io import StringIO
from pathlib import Path
from typing import List, Optional

from src.config import load_bounds
from src.errors import ParseError, QPSError
from src.gadgets import catalog, proj_cofinite, proj_finite, verify_gadget_identities
from src.groupoid_algebra import identity, zero
from src.ktheory import (
    ConeVerdict,
    ElementaryProj,
    K0Class,
    class_of_elementary,
    class_of_standard_sum,
    composition_series,
    cone_contains,
    cone_witness,
    csr_upper,
    gl0_threshold,
    stable_rank,
    v,
)
from src.line_bundles import decompose_L, lb_json, nu, nu_table, realize_decomposition
from src.matrix_ops import AlgMatrix, diag, format_matrix, is_projection
from src.projection_monoid import (
    Ambient,
    classify_n1,
    equivalent,
    format_sum,
    free_rank_threshold,
    parse_sum,
    realize,
    reduce,
    rho,
)
from src.verification import run_suites

AMBIENTS = [a.value for a in Ambient]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--verbose", action="store_true")

    parser = _Parser(prog="qps", description="Exact computations over Toeplitz cubes, "
                                             "quantum spheres and quantum projective spaces")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in [("reduce", "reduced form of a standard sum"),
                            ("rho", "ρ vector of a standard sum"),
                            ("realize", "matrix of a standard sum")]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--ambient", choices=AMBIENTS, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("sum", help='e.g. "2*{1,2} + 1*{1}"')

    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two standard sums")
    p.add_argument("--ambient", choices=AMBIENTS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("classify-n1", parents=[common], help="class of an idempotent over 𝒯")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--diag", help='diagonal blocks, e.g. "P3,I,P-2,0"')
    group.add_argument("--matrix", help="JSON file holding an AlgMatrix")

    p = sub.add_parser("k0-class", parents=[common], help="K0 class over the projective space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--slot", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sum", help="standard sum over prefix indices")
    p.add_argument("--v", type=int, help="class of ∂(Î⊗P_{-v})")

    p = sub.add_parser("cone", parents=[common], help="positive cone membership")
    p.add_argument("--coords", type=int, nargs="+", required=True)

    p = sub.add_parser("sr", parents=[common], help="stable rank and related thresholds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ambient", choices=AMBIENTS[:2], default="toeplitz")

    p = sub.add_parser("series", parents=[common], help="composition series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ambient", choices=AMBIENTS[:2], default="toeplitz")

    p = sub.add_parser("nu", parents=[common], help="ν(m, l) = C(m+l-1, m)")
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--table", type=int, nargs=2, metavar=("M", "L"))

    p = sub.add_parser("linebundle", parents=[common], help="decomposition of L_k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["closed_form", "recursion"], default="closed_form")
    p.add_argument("--realize", action="store_true", help="materialize and certify the projection")

    p = sub.add_parser("gadgets", parents=[common], help="gadget catalog")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="run the gadget identity checks")

    p = sub.add_parser("verify", parents=[common], help="run the identity suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bounds", default="default")
    p.add_argument("--config", help="bounds YAML (default configs/verify_config.yaml)")
    p.add_argument("--workers", type=int)
    p.add_argument("--suite", action="append", help="restrict to the named suite (repeatable)")
    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _parse_diag(text: str) -> AlgMatrix:
    blocks = []
    for token in (t.strip() for t in text.split(",")):
        if token == "I":
            blocks.append(identity(1))
        elif token == "0":
            blocks.append(zero(1))
        elif token.startswith("P"):
            try:
                k = int(token[1:])
            except ValueError as exc:
                raise ParseError(f"bad block {token!r}") from exc
            blocks.append(proj_finite(k) if k >= 0 else proj_cofinite(-k))
        else:
            raise ParseError(f"bad block {token!r} (use I, 0, Pk or P-k)")
    return diag(*blocks)


def _load_matrix(path: str) -> AlgMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return AlgMatrix.from_json(data)


def cmd_reduce(args):
    s = reduce(parse_sum(args.sum, args.ambient, args.n))
    return s.to_json(), format_sum(s)


def cmd_rho(args):
    r = rho(parse_sum(args.sum, args.ambient, args.n))
    return r.to_json(), str(r)


def cmd_equiv(args):
    s = parse_sum(args.left, args.ambient, args.n)
    t = parse_sum(args.right, args.ambient, args.n)
    result = equivalent(s, t)
    return {"ambient": args.ambient, "n": args.n, "equivalent": result}, str(result).lower()


def cmd_realize(args):
    p = realize(parse_sum(args.sum, args.ambient, args.n))
    payload = p.to_json()
    payload["is_projection"] = is_projection(p)
    return payload, format_matrix(p)


def cmd_classify(args):
    p = _parse_diag(args.diag) if args.diag else _load_matrix(args.matrix)
    c = classify_n1(p)
    return c.to_json(), str(c)


def cmd_k0(args):
    if args.v is not None:
        c = v(args.n, args.v)
    elif args.sum is not None:
        c = class_of_standard_sum(parse_sum(args.sum, Ambient.CPN, args.n))
    elif args.slot is not None and args.k is not None:
        c = class_of_elementary(ElementaryProj(args.n, args.slot, args.k))
    else:
        raise ParseError("k0-class needs --slot with --k, --sum or --v")
    return c.to_json(), str(c)


def cmd_cone(args):
    c = K0Class.of(args.coords)
    verdict = cone_contains(c)
    payload = {"coords": list(c.coords), "verdict": verdict.value}
    if verdict == ConeVerdict.IN:
        payload["witness"] = [{"token": e.token, "mult": m} for e, m in cone_witness(c).items()]
    return payload, verdict.value


def cmd_sr(args):
    n = args.n
    payload = {
        "n": n,
        "ambient": args.ambient,
        "stable_rank": stable_rank(n, args.ambient),
        "csr_upper": csr_upper(n),
        "gl0_threshold": gl0_threshold(n),
        "free_rank_threshold": free_rank_threshold(args.ambient, n),
    }
    return payload, str(payload["stable_rank"])


def cmd_series(args):
    layers = composition_series(args.n, args.ambient)
    return ({"n": args.n, "ambient": args.ambient, "layers": [l.to_json() for l in layers]},
            "\n".join(l.describe() for l in layers))


def cmd_nu(args):
    if args.table:
        m_max, l_max = args.table
        table = nu_table(m_max, l_max)
        rows = [[int(x) for x in row[1:]] for row in table]
        text = "\n".join(" ".join(str(x) for x in row) for row in rows)
        return {"m_max": m_max, "l_max": l_max, "rows": rows}, text
    if args.m is None or args.l is None:
        raise ParseError("nu needs --m and --l, or --table M L")
    value = nu(args.m, args.l)
    return {"m": args.m, "l": args.l, "nu": value}, str(value)


def cmd_linebundle(args):
    d = decompose_L(args.n, args.k, args.method)
    payload = lb_json(d)
    if args.realize:
        p = realize_decomposition(d)
        payload["realized"] = {"size": p.rows, "projection_mod_compact": True, "degree_zero": True}
    text = f"{d}\nK0 {d.k0}  rank {d.rank}  ({d.source})"
    return payload, text


def cmd_gadgets(args):
    if args.check:
        report = verify_gadget_identities(args.n)
        return report.to_dict(), report, not report.passed
    entries = catalog(args.n)
    text = "\n".join(f"{e['name']:<14} {e['params']}  degree={e['degree']}  {e['certified']}" for e in entries)
    return entries, text


def cmd_verify(args):
    bounds = load_bounds(args.bounds, args.config)

    def progress(task, part):
        if args.verbose:
            name, n, _ = task
            mark = "✓" if part.passed else "✗"
            print(f"  [VERIFY] {mark} {name} (n={n}) {len(part.results) - len(part.failures)}/{len(part.results)}",
                  file=sys.stderr)

    report = run_suites(args.n, bounds, args.suite, args.workers, on_task=progress)
    return report.to_dict(), report, not report.passed


COMMANDS = {
    "reduce": cmd_reduce,
    "rho": cmd_rho,
    "equiv": cmd_equiv,
    "realize": cmd_realize,
    "classify-n1": cmd_classify,
    "k0-class": cmd_k0,
    "cone": cmd_cone,
    "sr": cmd_sr,
    "series": cmd_series,
    "nu": cmd_nu,
    "linebundle": cmd_linebundle,
    "gadgets": cmd_gadgets,
    "verify": cmd_verify,
}


def _emit(args, payload, text):
    if args.format == "json":
        rendered = json.dumps(payload, indent=2, ensure_ascii=False)
    elif hasattr(text, "print_summary"):
        buffer = StringIO()
        text.print_summary(verbose=args.verbose, stream=buffer)
        rendered = buffer.getvalue().rstrip("\n")
    else:
        rendered = text
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(rendered + "\n")
        if args.verbose:
            print(f"✅ Result saved to {path}", file=sys.stderr)
    else:
        print(rendered)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except QPSError as exc:
        print(f"qps: error: {exc}", file=sys.stderr)
        return 1
    failed = len(result) == 3 and result[2]
    _emit(args, result[0], result[1])
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
