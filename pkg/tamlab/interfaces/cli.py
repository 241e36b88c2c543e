"""Command Line Interface for tamlab.

Commands:
- marks: table of marks (optionally against golden files or the fixed-point oracle)
- lattice: conjugacy classes of subgroups
- norm: nm_e^G(k) in the Burnside basis
- lemma: marks of norms, chi^H(nm_e^G(k)) = k^[G:H]
- primes: Dress prime descriptors containing an element
- unit: units of A(G) and of localizations A(G)[1/u]
- theorem: k is a unit in A(G)[1/nm_e^G(k)]
- axioms: Tambara structure-map laws on an instance
- levels: unit-ness of k at every level of an instance

Groups: C<n>, D<n> (dihedral of order 2n), S<n>, A<n>, Q8, V4,
perm:<degree>:<cycles;cycles;...>

Usage:
    python -m tamlab marks --group S3
    python -m tamlab norm --group C2 --k 2
    python -m tamlab theorem --group S4 --k-max 10 --json
    python -m tamlab axioms --group S3 --functor fixed:n=5 --samples 100

Exit codes: 0 success, 1 a verification failed, 2 parse/input error,
3 cap exceeded.
"""

import argparse
import sys
from pathlib import Path

import polars as pl

from tamlab import __version__
from tamlab.application import TambaraService, VerificationService
from tamlab.domain.burnside import (
    format_element,
    is_unit,
    is_unit_in_localization,
    relevant_primes,
)
from tamlab.domain.errors import (
    CapExceeded,
    ConfigError,
    ElementNotInGroup,
    InvalidPermutation,
    InvariantViolation,
    LatticeMismatch,
    NotASubgroup,
    NotIntegral,
    SpecParseError,
)
from tamlab.infrastructure import EngineConfig, GoldenMarksRepository, GoldenPaths, RepositoryError
from tamlab.infrastructure.repositories import dumps
from tamlab.interfaces.specs import ElementSpec, FunctorSpec, parse_group

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3

INPUT_ERRORS = (
    SpecParseError,
    InvalidPermutation,
    NotIntegral,
    ElementNotInGroup,
    NotASubgroup,
    LatticeMismatch,
    RepositoryError,
    ConfigError,
    ValueError,
)


def _emit(payload: dict) -> None:
    print(dumps(payload))


def _header(args: argparse.Namespace, title: str) -> None:
    if not args.json and not args.quiet:
        print(f"tamlab v{__version__}  {title}")
        print("=" * 60)


def _group(args: argparse.Namespace):
    return parse_group(args.group, args.config.max_order)


# =============================================================================
# Burnside ring commands
# =============================================================================

def cmd_marks(args: argparse.Namespace) -> int:
    """Print the table of marks."""
    G = _group(args)
    service = VerificationService(args.config)
    table = service.marks(G)
    status = EXIT_OK

    if args.write_golden:
        service.write_golden(G, GoldenMarksRepository(GoldenPaths(Path(args.write_golden))))
    golden_ok = None
    if args.check_golden:
        golden_ok = service.check_golden(G, GoldenMarksRepository(GoldenPaths(Path(args.check_golden))))
        if not golden_ok:
            status = EXIT_FAILED
    oracle_ok = None
    if args.oracle:
        oracle_ok = service.oracle_marks(G) == [list(row) for row in table.m]
        if not oracle_ok:
            status = EXIT_FAILED

    if args.json:
        payload = table.to_dict()
        if golden_ok is not None:
            payload["golden_match"] = golden_ok
        if oracle_ok is not None:
            payload["oracle_match"] = oracle_ok
        _emit(payload)
        return status

    _header(args, f"table of marks of {G.label} (order {G.order})")
    print(table.format())
    if golden_ok is not None:
        print(f"\ngolden: {'match' if golden_ok else 'MISMATCH'}")
    if oracle_ok is not None:
        print(f"oracle: {'match' if oracle_ok else 'MISMATCH'}")
    return status


def cmd_lattice(args: argparse.Namespace) -> int:
    """List conjugacy classes of subgroups."""
    G = _group(args)
    lattice = VerificationService(args.config).marks(G).lattice
    rows = []
    for i, rep in enumerate(lattice.class_reps):
        rows.append({
            "class": lattice.labels[i],
            "name": lattice.subgroup_label(i),
            "order": rep.order,
            "index": lattice.index_of[i],
            "weyl_index": lattice.weyl_index[i],
            "conjugates": len(lattice.classes[i]),
            "generators": [G.elements[g].cycle_string() for g in rep.generators],
        })
    if args.json:
        _emit({"group": G.label, "order": G.order,
               "subgroups": len(lattice.all_subgroups), "classes": rows})
        return EXIT_OK

    _header(args, f"subgroup lattice of {G.label}")
    print(f"{len(lattice.all_subgroups)} subgroups in {lattice.class_count} classes")
    print(f"{'class':<6} {'order':>5} {'index':>5} {'weyl':>5} {'conj':>5}  generators")
    print("-" * 56)
    for r in rows:
        print(f"{r['class']:<6} {r['order']:>5} {r['index']:>5} {r['weyl_index']:>5} "
              f"{r['conjugates']:>5}  {' '.join(r['generators']) or '()'}")
    return EXIT_OK


def cmd_norm(args: argparse.Namespace) -> int:
    """nm_e^G(k)."""
    G = _group(args)
    service = VerificationService(args.config)
    x = service.norm(G, args.k, method=args.method)
    if args.json:
        payload = {"group": G.label, "k": abs(args.k), "classes": list(x.table.lattice.labels)}
        payload.update(x.to_dict())
        _emit(payload)
        return EXIT_OK
    marks = ", ".join(str(v) for v in x.marks)
    print(f"{format_element(x)}; marks = ({marks})")
    return EXIT_OK


def cmd_lemma(args: argparse.Namespace) -> int:
    """chi^H(nm_e^G(k)) = k^[G:H] for 0 <= k <= k_max."""
    G = _group(args)
    service = VerificationService(args.config, progress=not (args.quiet or args.json))
    report = service.lemma(G, args.k_max)
    if args.json:
        payload = report.to_dict()
        payload["classes"] = list(service.marks(G).lattice.labels)
        _emit(payload)
    else:
        _header(args, f"marks of norms on {G.label}, k <= {args.k_max}")
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict} {len(report.cells) - len(report.failures)}/{len(report.cells)} cells "
              f"({report.enumerated_cells} enumerated)")
        for cell in report.failures:
            print(f"  k={cell.k} class={cell.label}: expected {cell.expected}, got {cell.observed}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_primes(args: argparse.Namespace) -> int:
    """Dress primes (H, q) containing an element."""
    G = _group(args)
    table = VerificationService(args.config).marks(G)
    x = ElementSpec.parse(args.element).resolve(table)
    support = relevant_primes(x)
    lattice = table.lattice
    if args.json:
        payload = {"group": G.label, "classes": list(lattice.labels), "element": x.to_dict()}
        payload.update(support.to_dict(lattice))
        _emit(payload)
        return EXIT_OK
    print(f"x = {format_element(x)}; marks = ({', '.join(str(v) for v in x.marks)})")
    if not support.descriptors:
        print("no prime contains x (x is a unit)")
    for d in support.descriptors:
        print(f"  {d.label(lattice)}")
    for i in support.zero_classes:
        print(f"  mark 0 at {lattice.labels[i]}: x lies in ({lattice.labels[i]}, q) for every q")
    return EXIT_OK


def cmd_unit(args: argparse.Namespace) -> int:
    """Is x a unit in A(G), or in A(G)[1/u]?"""
    G = _group(args)
    table = VerificationService(args.config).marks(G)
    x = ElementSpec.parse(args.element).resolve(table)
    lattice = table.lattice

    if args.localize_at is None:
        unit = is_unit(x)
        if args.json:
            _emit({"group": G.label, "element": x.to_dict(), "unit": unit})
        else:
            print(f"{format_element(x)} is {'a unit' if unit else 'not a unit'} in A({G.label})")
        return EXIT_OK

    u = ElementSpec.parse(args.localize_at).resolve(table)
    verdict = is_unit_in_localization(x, u)
    if args.json:
        payload = {"group": G.label, "element": x.to_dict(), "localize_at": u.to_dict(), "unit": verdict.unit}
        if verdict.witness is not None:
            payload["witness"] = verdict.witness.to_dict(lattice)
        _emit(payload)
        return EXIT_OK
    where = f"A({G.label})[1/({format_element(u)})]"
    if verdict.unit:
        print(f"{format_element(x)} is a unit in {where}")
    else:
        print(f"{format_element(x)} is not a unit in {where}; witness prime {verdict.witness.label(lattice)}")
    return EXIT_OK


def cmd_theorem(args: argparse.Namespace) -> int:
    """k is a unit in A(G)[1/nm_e^G(k)] for 1 <= k <= k_max."""
    G = _group(args)
    service = VerificationService(args.config, progress=not (args.quiet or args.json))
    report = service.theorem(G, args.k_max)
    if args.json:
        _emit(report.to_dict())
    else:
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{verdict} {report.pass_count}/{len(report.cases)}")
        for row in report.to_frame().filter(~pl.col("pass")).iter_rows(named=True):
            print(f"  k={row['k']}: witness {row['witness']}")
    return EXIT_OK if report.passed else EXIT_FAILED


# =============================================================================
# Tambara commands
# =============================================================================

def cmd_axioms(args: argparse.Namespace) -> int:
    """Structure-map laws and canonical-map checks on an instance."""
    G = _group(args)
    spec = FunctorSpec.parse(args.functor)
    seed = args.config.seed
    report = TambaraService(args.config).axioms(G, spec, args.samples, seed)
    if args.json:
        _emit(report.to_dict())
    else:
        _header(args, f"axioms of {report.instance} over {G.label} (seed {seed})")
        print(f"{'check':<24} {'cases':>7}  result")
        print("-" * 48)
        for row in report.to_frame().iter_rows(named=True):
            result = "pass" if row["pass"] else f"FAIL  {row['witness']}"
            print(f"{row['name']:<24} {row['cases']:>7}  {result}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_levels(args: argparse.Namespace) -> int:
    """Whether k is a unit at each level, k = 0..k_max."""
    G = _group(args)
    spec = FunctorSpec.parse(args.functor)
    report = TambaraService(args.config).levels(G, spec, args.k_max)
    if args.json:
        _emit(report.to_dict())
    else:
        _header(args, f"unit levels of {report.instance} over {G.label}")
        header = " ".join(f"{c:>5}" for c in report.classes)
        print(f"{'k':>3}  {header}  agree")
        for row in report.to_frame().iter_rows(named=True):
            cells = " ".join(f"{('yes' if row[c] else 'no'):>5}" for c in report.classes)
            print(f"{row['k']:>3}  {cells}  {'yes' if row['consistent'] else 'NO'}")
    return EXIT_OK if report.consistent else EXIT_FAILED


# =============================================================================
# Entry point
# =============================================================================

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", "-g", required=True,
                        help="C<n>, D<n> (order 2n), S<n>, A<n>, Q8, V4, perm:<deg>:<cycles;...>")
    common.add_argument("--json", action="store_true", help="Stable JSON output")
    common.add_argument("--max-order", type=int, default=None, help="Group order cap (default 120)")
    common.add_argument("--max-points", type=int, default=None,
                        help="G-set enumeration cap (default 2e7, env TAMLAB_MAX_POINTS)")
    common.add_argument("--workers", type=int, default=None, help="Process pool size for per-k work")
    common.add_argument("--seed", type=int, default=None, help="Seed for sampled checks")
    common.add_argument("--quiet", "-q", action="store_true", help="No headers or progress")
    return common


def main(argv: list[str] | None = None) -> int:
    """Main entry point for CLI."""
    parser = argparse.ArgumentParser(
        prog="tamlab",
        description="Exact Burnside rings and Tambara functors for small finite groups. "
                    "D<n> denotes the dihedral group of order 2n.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    common = _common_parser()
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # marks command
    marks_parser = subparsers.add_parser("marks", parents=[common], help="Table of marks")
    marks_parser.add_argument("--write-golden", metavar="DIR", help="Write marks_<G>.json into DIR")
    marks_parser.add_argument("--check-golden", metavar="DIR", help="Compare against marks_<G>.json in DIR")
    marks_parser.add_argument("--oracle", action="store_true",
                              help="Recount every entry by fixed points on coset G-sets")

    # lattice command
    subparsers.add_parser("lattice", parents=[common], help="Conjugacy classes of subgroups")

    # norm command
    norm_parser = subparsers.add_parser("norm", parents=[common], help="nm_e^G(k)")
    norm_parser.add_argument("--k", type=int, required=True, help="Integer k (|k| is used)")
    norm_parser.add_argument("--method", choices=("auto", "marks", "enumerate"), default="auto")

    # lemma command
    lemma_parser = subparsers.add_parser("lemma", parents=[common], help="Marks of norms")
    lemma_parser.add_argument("--k-max", type=int, default=5)

    # primes command
    primes_parser = subparsers.add_parser("primes", parents=[common], help="Primes containing an element")
    primes_parser.add_argument("--element", "-x", required=True, help="k or [c0,c1,...]")

    # unit command
    unit_parser = subparsers.add_parser("unit", parents=[common], help="Unit test in A(G) or A(G)[1/u]")
    unit_parser.add_argument("--element", "-x", required=True, help="k or [c0,c1,...]")
    unit_parser.add_argument("--localize-at", "-u", default=None, help="u: k or [c0,c1,...]")

    # theorem command
    theorem_parser = subparsers.add_parser("theorem", parents=[common],
                                           help="k is a unit in A(G)[1/nm(k)]")
    theorem_parser.add_argument("--k-max", type=int, default=20)

    # axioms command
    axioms_parser = subparsers.add_parser("axioms", parents=[common], help="Tambara axioms on an instance")
    axioms_parser.add_argument("--functor", "-f", default="burnside",
                               help="burnside | fixed:n=<m> | fixed:n=<m>,diag")
    axioms_parser.add_argument("--samples", type=int, default=20)

    # levels command
    levels_parser = subparsers.add_parser("levels", parents=[common], help="Unit-ness of k at every level")
    levels_parser.add_argument("--functor", "-f", default="burnside",
                               help="burnside | fixed:n=<m> | fixed:n=<m>,diag")
    levels_parser.add_argument("--k-max", type=int, default=10)

    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    commands = {
        "marks": cmd_marks,
        "lattice": cmd_lattice,
        "norm": cmd_norm,
        "lemma": cmd_lemma,
        "primes": cmd_primes,
        "unit": cmd_unit,
        "theorem": cmd_theorem,
        "axioms": cmd_axioms,
        "levels": cmd_levels,
    }

    try:
        args.config = EngineConfig.from_env().with_overrides(
            max_order=args.max_order,
            max_points=args.max_points,
            workers=args.workers,
            seed=args.seed,
        )
        return commands[args.command](args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
