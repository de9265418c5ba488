"""Command-line interface: analyze documents, generate families, and re-run
the reproduction grid. Exit codes: 0 success, 1 input error, 2 verification
or internal failure."""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import combinations

from . import analyzer, forge, oracle
from .intmatrix import IntMatrix, rank
from .model import (DEGENERATE, EXTENDED, GENERIC, FamilySpec, ProductHom,
                    SchemaError, build_hom_from_family, family_to_dict,
                    parse_document, serialize_family)


class CliInputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # input errors must exit 1, not argparse's 2
        raise CliInputError(message)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load(path: str) -> tuple[ProductHom, FamilySpec | None]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliInputError(str(exc)) from None
    try:
        doc = parse_document(text)
    except SchemaError as exc:
        raise CliInputError(f"{path}: {exc}") from None
    if isinstance(doc, FamilySpec):
        try:
            return build_hom_from_family(doc), doc
        except ValueError as exc:
            raise CliInputError(f"{path}: {exc}") from None
    return doc, None


def _print_report(report: analyzer.AnalysisReport) -> None:
    print(f"effective rank: {report.effective_rank}")
    print(f"fullness: {report.fullness.claim}")
    for s in report.subdirectness:
        extra = f" (index {s.index})" if s.status == analyzer.FINITE_INDEX else ""
        print(f"factor {s.factor}: {s.status}{extra}")
    print(f"max deficient size: {report.max_deficient_size}")
    fin = report.finiteness
    print("finiteness: " + (f"ExactType({fin.m})" if fin.kind == "ExactType" else fin.kind))
    betti = report.betti
    print("first Betti number of kernel: "
          + (str(betti.value) if betti.kind == "Value" else "undetermined by criteria"))
    kahler = report.kahler
    print("Kaehler: " + kahler.kind
          + (f" ({kahler.reason})" if kahler.reason else ""))
    irr = report.irreducibility
    line = "irreducibility: " + irr.kind
    if irr.partition:
        line += " across " + "|".join(",".join(map(str, p)) for p in irr.partition)
    print(line)
    for cert in report.certificates:
        print(f"  [{cert.claim}] {cert.justification}")


def _oracle_check(h: ProductHom) -> list[str]:
    """Cross-check the rank-shortcut tuple classification against the
    independent preimage oracle; returns disagreement descriptions."""
    hn, n_prime = analyzer.normalize(h)
    r = hn.num_factors
    if r > 8:
        raise CliInputError("--oracle supports at most 8 factors")
    problems = []
    for size in range(1, r + 1):
        for t in combinations(range(1, r + 1), size):
            comp = tuple(i for i in range(r) if i + 1 not in t)
            shortcut = rank(analyzer._stack(hn, comp)) == n_prime
            try:
                idx = oracle.vsp_by_preimage(hn, t)
                slow = idx is not None
            except oracle.OracleBoundExceeded:
                continue
            if shortcut != slow:
                problems.append(
                    f"tuple {t}: shortcut says {'finite' if shortcut else 'infinite'}, "
                    f"oracle says {'finite' if slow else 'infinite'}")
    return problems


def cmd_analyze(args) -> int:
    h, family = _load(args.path)
    report = analyzer.analyze(h, family)
    if args.oracle:
        problems = _oracle_check(h)
        if problems:
            for p in problems:
                print(f"oracle disagreement: {p}", file=sys.stderr)
            return 2
    if args.json:
        sys.stdout.write(_dumps(report.to_json_dict()))
    else:
        _print_report(report)
        if args.oracle:
            print("oracle cross-check: agreed on all tuples")
    return 0


def cmd_generate(args) -> int:
    try:
        if args.kind == "generic":
            if args.k is None:
                raise CliInputError("generic family requires -k")
            spec = forge.make_generic_family(args.k, args.r, args.genera,
                                            subdirect_variant=args.subdirect)
        elif args.kind == "extended":
            if args.m is None:
                raise CliInputError("extended family requires -m")
            spec = forge.make_extended_family(args.m, args.r, args.genera,
                                             subdirect_variant=args.subdirect)
        else:  # degenerate
            if not args.profile:
                raise CliInputError("degenerate family requires --profile")
            if args.k is None:
                raise CliInputError("degenerate family requires -k")
            spec = forge.make_degenerate_family(args.k, args.r, args.profile,
                                               args.genera)
    except ValueError as exc:
        raise CliInputError(str(exc)) from None
    text = serialize_family(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _expect_exact_type(report: analyzer.AnalysisReport, m: int) -> bool:
    return report.finiteness.kind == "ExactType" and report.finiteness.m == m


def _dps_shaped_hom(genera: tuple[int, ...]) -> ProductHom:
    """Surjection onto Z with every block the all-(1,0) pattern: subdirect,
    effective rank 1."""
    blocks = tuple(IntMatrix.from_rows([[1, 0] * g], cols=2 * g) for g in genera)
    return ProductHom(genera, 1, blocks)


def _verification_rows(max_r: int):
    achieved: dict[int, set[int]] = {r: set() for r in range(3, max_r + 1)}
    for r in range(3, max_r + 1):
        for k in range(1, r - 1):
            spec = forge.make_generic_family(k, r)
            report = analyzer.analyze(build_hom_from_family(spec), spec)
            ok = _expect_exact_type(report, r - k)
            if ok:
                achieved[r].add(r - k)
            yield (f"generic k={k} r={r}: exact type F_{r - k}", ok)
    for r in range(4, max_r + 1):
        for m in range(1, r - 2):
            spec = forge.make_extended_family(m, r)
            report = analyzer.analyze(build_hom_from_family(spec), spec)
            ok = _expect_exact_type(report, r - m - 1)
            if ok:
                achieved[r].add(r - m - 1)
            yield (f"extended m={m} r={r}: exact type F_{r - m - 1}", ok)
    for r in range(3, max_r + 1):
        yield (f"r={r}: every exact type in 2..{r - 1} realized by a generated family",
               set(range(2, r)) <= achieved[r])
    for n_odd in (1, 3):
        genera = (2,) * (n_odd + 2)
        blocks = tuple(IntMatrix.from_rows(
            [[1 if row == i % n_odd and col == 0 else 0 for col in range(4)]
             for row in range(n_odd)], cols=4)
            for i in range(len(genera)))
        report = analyzer.analyze(ProductHom(genera, n_odd, blocks))
        yield (f"odd effective rank {n_odd}: NotKahler(OddRank)",
               report.kahler.kind == "NotKahler"
               and report.kahler.reason == "OddRank")
    for genera in ((2, 2, 2), (2, 3, 2), (3, 3, 2, 2)):
        report = analyzer.analyze(_dps_shaped_hom(genera))
        expected = sum(2 * g for g in genera) - 1
        yield (f"rank-one subdirect hom, genera {genera}: b1={expected}, parity obstruction",
               report.betti == analyzer.Betti("Value", expected)
               and report.kahler.kind == "NotKahler"
               and "OddBetti" in report.kahler.reasons)
    spec = forge.make_generic_family(2, 4)
    report = analyzer.analyze(build_hom_from_family(spec), spec)
    yield ("generic k=2 r=4: Kaehler construction certified",
           report.kahler.kind == "Kahler")
    yield ("generic k=2 r=4: irreducible",
           report.irreducibility.kind == "Irreducible")


def cmd_verify(args) -> int:
    if args.max_r < 4:
        raise CliInputError("--max-r must be at least 4")
    all_ok = True
    for name, ok in _verification_rows(args.max_r):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        all_ok = all_ok and ok
    print("verification " + ("succeeded" if all_ok else "FAILED"))
    return 0 if all_ok else 2


def cmd_catalog(args) -> int:
    if args.max_r < 3 or args.max_r > 8:
        raise CliInputError("--max-r must be in 3..8")
    os.makedirs(args.out_dir, exist_ok=True)
    entries = []
    jobs = []
    for r in range(3, args.max_r + 1):
        for k in range(1, r - 1):
            jobs.append((f"generic_k{k}_r{r}", forge.make_generic_family(k, r)))
    for r in range(4, args.max_r + 1):
        for m in range(1, r - 2):
            jobs.append((f"extended_m{m}_r{r}", forge.make_extended_family(m, r)))
    for name, spec in jobs:
        report = analyzer.analyze(build_hom_from_family(spec), spec)
        doc = {"family": family_to_dict(spec), "report": report.to_json_dict()}
        path = os.path.join(args.out_dir, name + ".json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(_dumps(doc))
        os.replace(tmp, path)
        entries.append(name + ".json")
    index_path = os.path.join(args.out_dir, "index.json")
    tmp = index_path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(_dumps({"reports": sorted(entries)}))
    os.replace(tmp, index_path)
    print(f"wrote {len(entries)} reports to {args.out_dir}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="coabelian",
                     description="Invariants of coabelian kernels in products "
                                 "of surface groups, with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a hom or family JSON document")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check tuple classifications with the slow oracle")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="generate a family specification")
    p.add_argument("kind", choices=["generic", "extended", "degenerate"])
    p.add_argument("-k", type=int, help="target parameter (generic/degenerate)")
    p.add_argument("-m", type=int, help="multiplicity (extended)")
    p.add_argument("-r", type=int, required=True, help="number of factors")
    p.add_argument("--genera", type=lambda s: tuple(int(x) for x in s.split(",")),
                   help="comma-separated genera, default all 2")
    p.add_argument("--profile", type=lambda s: tuple(int(x) for x in s.split(",")),
                   help="duplicate multiplicities (degenerate)")
    p.add_argument("--subdirect", action="store_true",
                   help="use the fully subdirect variant")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify",
                       help="re-run the reproduction grid and print a table")
    p.add_argument("--max-r", type=int, default=7)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="batch-analyze a parameter grid")
    p.add_argument("--max-r", type=int, default=5)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
