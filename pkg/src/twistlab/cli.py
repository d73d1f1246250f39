"""Command-line entry point: ``twistlab verify|table|structure-constants|podles``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .calculus import sphere_calculus, structure_to_json
from .cochain import coboundary, degree_bits, make_octonion_cochain
from .graded import basis_element, group_algebra_bullet, multiplication_table
from .podles import SeriesCochain, associator_scan
from .suites import SUITES, run_suite

ALGEBRAS = {"octonion": 3, "quaternion": 2, "complex": 1}


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else [args.suite]
    ok = True
    docs = []
    for name in names:
        report = run_suite(name)
        ok &= report.passed
        if args.format == "json":
            docs.append(report.to_json(not args.no_timings))
        else:
            print(report.to_text(not args.no_timings))
    if args.format == "json":
        body = docs[0] if len(docs) == 1 else {"suites": docs, "passed": ok}
        print(json.dumps(body, indent=2, sort_keys=True))
    return 0 if ok else 1


def _basis_name(label: int, n: int) -> str:
    return "e" + "".join(map(str, degree_bits(label, n))) if label else "e0"


def cmd_table(args) -> int:
    n = ALGEBRAS[args.algebra]
    F = make_octonion_cochain(n)
    table = multiplication_table(F)
    size = 1 << n
    # alternativity over basis pairs
    e = basis_element
    mul = lambda u, v: group_algebra_bullet(F, u, v)
    alternative = all(
        mul(mul(e(a), e(b)), e(a)) == mul(e(a), mul(e(b), e(a)))
        for a in range(size)
        for b in range(size)
    )
    phi = coboundary(F)
    associative = all(v == 1 for v in phi.values.values())
    if args.format == "json":
        doc = {
            "algebra": args.algebra,
            "basis": [_basis_name(a, n) for a in range(size)],
            "table": [[{"sign": s, "index": k} for s, k in row] for row in table],
            "alternative": alternative,
            "associative": associative,
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True))
    else:
        names = [_basis_name(a, n) for a in range(size)]
        width = max(len(x) for x in names) + 2
        lines = [" " * width + "".join(x.rjust(width) for x in names)]
        for a, row in enumerate(table):
            cells = [("-" if s < 0 else "+") + names[k] for s, k in row]
            lines.append(names[a].rjust(width) + "".join(c.rjust(width) for c in cells))
        lines.append(f"alternative: {'yes' if alternative else 'no'}")
        lines.append(f"associative: {'yes' if associative else 'no'}")
        _emit("\n".join(lines))
    return 0 if alternative else 1


def cmd_structure(args) -> int:
    calc = sphere_calculus(args.n)
    table = calc.structure_functions()
    if args.format == "json":
        text = json.dumps(structure_to_json(calc, table), indent=2, sort_keys=True)
    else:
        text = "\n".join(f"c^{i}_{j}{k} = {p}" for (i, j, k), p in sorted(table.items()))
    _emit(text, args.out)
    return 0


def cmd_podles(args) -> int:
    if not args.find_nonassoc:
        print("nothing to do: pass --find-nonassoc", file=sys.stderr)
        return 2
    if args.max_degree < 3:
        print("--max-degree must be at least 3", file=sys.stderr)
        return 2
    Fc = SeriesCochain(trivial=True) if args.trivial else SeriesCochain.podles()
    witness = associator_scan(Fc, args.max_degree)
    doc = {"max_degree": args.max_degree, "found": witness is not None, "witness": witness}
    print(json.dumps(doc, indent=2, sort_keys=True))
    # finding a witness is the expected outcome for the nontrivial cochain
    return 0 if (witness is not None) != args.trivial else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistlab", description="Exact checks for cochain-twisted geometry.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-timings", action="store_true", help="omit timings so repeated runs are byte-identical")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="signed multiplication table of a twisted group algebra")
    p.add_argument("--algebra", choices=sorted(ALGEBRAS), default="octonion")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("structure-constants", help="emit the structure functions c^i_jk")
    p.add_argument("--n", type=int, choices=(1, 2, 3), default=3, help="sphere S^(2^n - 1); 3 is S^7")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.add_argument("--out", help="write to this path instead of stdout")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("podles", help="search for nonassociative monomial triples")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--find-nonassoc", action="store_true")
    p.add_argument("--trivial", action="store_true", help="use the trivial cochain (expects no witness)")
    p.set_defaults(func=cmd_podles)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
