"""Command-line front end.

Every command prints deterministic text: exact rationals, pi^2 kept
symbolic unless --float asks for decimals.  Exit codes: 0 success,
1 a computed verdict failed (wheeling residue, analysis constraint),
2 usage or input errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .scalars import parse_pi_scalar
from .graph_core import GraphError, GraphParseError, canonical_form, format_oriented, parse_graph
from .graph_algebra import (
    AlgebraError, dimension, format_vector, ihx_relations,
    parse_vector, reduce as ihx_reduce,
)
from .wheeling import WheelingError, omega, wheeling_check
from .genus import (
    ChernData, DegreeMismatch, MissingMonomial, SeriesError, builtin_genera,
)
from .hk_analysis import AnalysisError, ManifoldData, validate
from .lie_oracle import OracleError, builtin, weight_vector

SERIES_NAMES = {"ahat": "ahat", "todd": "todd", "sqrt-ahat": "sqrt_ahat"}

CHERN_FLAGS = {
    1: (("c2", (2,)),),
    2: (("c2sq", (2, 2)), ("c4", (4,))),
    3: (("c2cube", (2, 2, 2)), ("c2c4", (2, 4)), ("c6", (6,))),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphgenus",
        description="oriented trivalent graph homology, wheels, genera, "
                    "and hyperkähler curvature-norm identities")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("normalize", help="canonical form and sign of a graph file")
    sp.add_argument("file")

    sp = sub.add_parser("reduce", help="normal form of a graph vector modulo IHX")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("file")

    sp = sub.add_parser("dim", help="dimension of degree-k trivalent classes")
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("wheeling", help="verify the degree-k gluing identity")
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("omega", help="wheeled exponential coefficients up to weight k")
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("ihx", help="relation stream utilities")
    isub = sp.add_subparsers(dest="action", required=True)
    emit = isub.add_parser("emit", help="print the degree-k relations as vector text")
    emit.add_argument("--k", type=int, required=True)
    emit.add_argument("--index", type=int, default=None,
                      help="emit only relation INDEX (0-based)")

    sp = sub.add_parser("genus", help="genus polynomial in Chern classes")
    sp.add_argument("--series", choices=sorted(SERIES_NAMES), required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("analyze", help="hyperkähler curvature-norm report")
    sp.add_argument("--k", type=int, required=True, choices=(1, 2, 3))
    sp.add_argument("--vol", type=str, required=True,
                    help="volume, e.g. 1, 7/3, or 2*pi^2")
    sp.add_argument("--normRsq", type=str, default=None,
                    help="measured L2 curvature norm squared (same syntax)")
    sp.add_argument("--reducible", action="store_true",
                    help="mark the manifold as reducible (identities not asserted)")
    sp.add_argument("--float", dest="use_float", action="store_true",
                    help="decimal output instead of exact p/q * pi^2")
    for flags in CHERN_FLAGS.values():
        for name, _ in flags:
            sp.add_argument(f"--{name}", type=str, default=None)

    sp = sub.add_parser("oracle", help="metric Lie algebra weight of a graph vector")
    sp.add_argument("--algebra", required=True,
                    help="abelian(d), sl2, gl2, gl3, ...")
    sp.add_argument("file")

    return p


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _chern_data(args) -> ChernData:
    values = {}
    for name, mono in CHERN_FLAGS.get(args.k, ()):
        raw = getattr(args, name)
        if raw is not None:
            values[mono] = Fraction(raw)
    return ChernData(args.k, values)


def _partition_label(parts: tuple[int, ...]) -> str:
    if not parts:
        return "1"
    factors = []
    i = 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j] == parts[i]:
            j += 1
        power = j - i
        name = f"w{2 * parts[i]}"
        factors.append(name if power == 1 else f"{name}^{power}")
        i = j
    return "*".join(factors)


def _run(args) -> int:
    out = sys.stdout
    if args.command == "normalize":
        g = parse_graph(_read(args.file))
        out.write(format_oriented(canonical_form(g)) + "\n")
        return 0

    if args.command == "reduce":
        v = parse_vector(_read(args.file))
        out.write(format_vector(ihx_reduce(v, ihx_relations(args.k))) + "\n")
        return 0

    if args.command == "dim":
        out.write(f"{dimension(args.k)}\n")
        return 0

    if args.command == "wheeling":
        rep = wheeling_check(args.k)
        if rep.passed:
            if rep.exact:
                out.write("PASS (exact, no reduction needed)\n")
            else:
                out.write("PASS (residual 0 modulo IHX)\n")
            return 0
        out.write("FAIL residual=\n")
        out.write(format_vector(rep.residual) + "\n")
        return 1

    if args.command == "omega":
        om = omega(args.k)
        for n in sorted(om.b_table):
            out.write(f"b{n} = {om.b_table[n]}\n")
        terms = []
        for parts, coeff in om.partition_terms:
            if not parts:
                terms.append("1")
            else:
                terms.append(f"({coeff}){_partition_label(parts)}")
        out.write("omega = " + " + ".join(terms) + "\n")
        return 0

    if args.command == "ihx":
        rels = ihx_relations(args.k).relations
        if args.index is not None:
            if not 0 <= args.index < len(rels):
                raise AlgebraError(
                    f"relation index {args.index} out of range 0..{len(rels) - 1}")
            rels = [rels[args.index]]
        for rel in rels:
            out.write(format_vector(rel) + "\n")
        return 0

    if args.command == "genus":
        genus = builtin_genera()[SERIES_NAMES[args.series]]
        out.write(genus.polynomial(args.k).render() + "\n")
        return 0

    if args.command == "analyze":
        data = ManifoldData(
            k=args.k,
            chern=_chern_data(args),
            volume=parse_pi_scalar(args.vol),
            norm_R_sq=(parse_pi_scalar(args.normRsq)
                       if args.normRsq is not None else None),
            irreducible=not args.reducible,
        )
        report = validate(data)
        out.write(report.render(use_float=args.use_float) + "\n")
        return 0 if report.all_pass else 1

    if args.command == "oracle":
        L = builtin(args.algebra)
        v = parse_vector(_read(args.file))
        out.write(f"{weight_vector(L, v)}\n")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except GraphParseError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (GraphError, AlgebraError, WheelingError, SeriesError,
            DegreeMismatch, MissingMonomial, AnalysisError, OracleError,
            ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
