"""Command-line driver.

Usage:
    poisson-bv-calc validate sphere_so3.pois
    poisson-bv-calc modular quadratic_plane.pois
    poisson-bv-calc delta so3_free.pois "x*(d y)* ^ (d z)*" --twist modular
    poisson-bv-calc cohomology free_symplectic_plane.pois --p 0..2 --deg 0..6
    poisson-bv-calc identities --suite bv --samples 20

A structure argument is a path to a ``.pois`` file or the name of a bundled
structure. Reports go to stdout, errors to stderr. Exit status 0 means
every check passed, 1 that a check failed and 2 a usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence

import logfire

from poissonbv.algebra.exterior import KForm, Multivector, schouten
from poissonbv.algebra.expressions import parse_poly
from poissonbv.calculus.bv import BVOperator, bv_delta, bv_delta_explicit, bv_twisted
from poissonbv.calculus.duality import DualityContext, ddag, flat, verify_duality_square
from poissonbv.calculus.homology import cohomology_dims, duality_dim_check, homology_dims
from poissonbv.calculus.modular import modular_derivation, pseudo_unimodular_witness
from poissonbv.calculus.poisson import (
    casimir_basis,
    chain_partial,
    cochain_delta,
    hamiltonian,
    validate_poisson,
)
from poissonbv.config import get_settings
from poissonbv.core.errors import EXIT_CHECK_FAILED, EXIT_USAGE, PoissonBVError
from poissonbv.core.report import ValidationReport
from poissonbv.document import LoadedStructure, load_structure
from poissonbv.identities import SUITES, run_identities
from poissonbv.identities.sampling import random_multivector, random_poisson_derivation, seeded
from poissonbv.infra.observability import configure_observability

EXIT_OK = 0

# Bundled structures the identity suites run over; corrupted_so3 is a negative example.
DEFAULT_CORPUS = (
    "free_symplectic_plane",
    "quadratic_plane",
    "so3_free",
    "sphere_so3",
    "zero_structure",
)

MODULAR_TWIST = "modular"

Handler = Callable[[argparse.Namespace], int]


def parse_range(text: str) -> range:
    """Parse ``A..B`` (inclusive) or a single integer ``A``."""
    head, sep, tail = text.partition("..")
    try:
        start = int(head)
        stop = int(tail) if sep else start
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None
    if stop < start:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(start, stop + 1)


def _emit(text: str) -> None:
    print(text)


def _status(report: ValidationReport) -> int:
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _load(args: argparse.Namespace) -> LoadedStructure:
    return load_structure(args.structure)


def _twist(args: argparse.Namespace, structure: LoadedStructure) -> Multivector | None:
    """``--twist`` as a bare derivation, ``modular`` meaning phi_vol."""
    text: str | None = args.twist
    if text is None:
        return None
    if text.strip() == MODULAR_TWIST:
        return modular_derivation(structure.poisson).phi
    return Multivector.parse(text, structure.pres)


# --- commands ---


def cmd_validate(args: argparse.Namespace) -> int:
    structure = _load(args)
    presentation = structure.pres.validate()
    poisson = validate_poisson(structure.poisson.table, structure.pres, structure.name)
    _emit(presentation.render())
    _emit(poisson.render())
    return EXIT_OK if presentation.passed and poisson.passed else EXIT_CHECK_FAILED


def cmd_modular(args: argparse.Namespace) -> int:
    structure = _load(args)
    data = modular_derivation(structure.poisson)
    _emit(f"phi_vol = {data.phi}")
    _emit(f"phi1 = {data.phi1}")
    _emit(f"phi2 = {data.phi2}")
    return EXIT_OK


def cmd_hamiltonian(args: argparse.Namespace) -> int:
    structure = _load(args)
    a = parse_poly(args.element, structure.pres.ring)
    _emit(f"H = {hamiltonian(structure.poisson, a)}")
    return EXIT_OK


def cmd_casimirs(args: argparse.Namespace) -> int:
    structure = _load(args)
    for degree in args.deg:
        basis = casimir_basis(structure.poisson, degree)
        rendered = ", ".join(str(a) for a in basis) if basis else "none"
        _emit(f"degree {degree}: {rendered}")
    return EXIT_OK


def cmd_delta(args: argparse.Namespace) -> int:
    structure = _load(args)
    F = Multivector.parse(args.expression, structure.pres)
    _emit(str(cochain_delta(structure.poisson, F, _twist(args, structure))))
    return EXIT_OK


def cmd_partial(args: argparse.Namespace) -> int:
    structure = _load(args)
    omega = KForm.parse(args.expression, structure.pres)
    _emit(str(chain_partial(structure.poisson, omega, _twist(args, structure))))
    return EXIT_OK


def cmd_schouten(args: argparse.Namespace) -> int:
    structure = _load(args)
    P = Multivector.parse(args.left, structure.pres)
    Q = Multivector.parse(args.right, structure.pres)
    _emit(str(schouten(P, Q)))
    return EXIT_OK


def _compare_routes(label: str, route: Multivector, other: Multivector) -> int:
    _emit(f"{label} = {route}")
    residue = route - other
    if residue.is_zero():
        _emit("routes agree")
        return EXIT_OK
    _emit(f"routes disagree: {other}")
    _emit(f"residue = {residue}")
    return EXIT_CHECK_FAILED


def cmd_bv(args: argparse.Namespace) -> int:
    structure = _load(args)
    P = Multivector.parse(args.expression, structure.pres)
    op = BVOperator.on(structure.pres)
    return _compare_routes("Delta", bv_delta(op, P), bv_delta_explicit(structure.pres, P))


def cmd_bv_twisted(args: argparse.Namespace) -> int:
    structure = _load(args)
    P = Multivector.parse(args.expression, structure.pres)
    op = BVOperator.on(structure.pres, KForm.parse(args.omega, structure.pres))
    return _compare_routes("Delta_t", bv_delta(op, P), bv_twisted(op, P))


def cmd_duality_check(args: argparse.Namespace) -> int:
    settings = get_settings()
    structure = _load(args)
    pres = structure.pres
    samples = settings.identity_samples if args.samples is None else args.samples
    max_degree = settings.max_coefficient_degree if args.max_degree is None else args.max_degree
    seed = settings.default_seed if args.seed is None else args.seed
    rng = seeded(seed, "duality-check", structure.name)
    ctx = DualityContext(pres)
    report = ValidationReport(subject=f"duality {structure.name}")
    with logfire.span("duality check", name=structure.name, samples=samples):
        for sample in range(samples):
            F = random_multivector(rng, pres, rng.randint(0, ctx.n), max_degree)
            report.record(f"round-trip[p={F.degree}]", flat(ctx, ddag(ctx, F)) - F)
            phi = None if sample % 2 == 0 else random_poisson_derivation(rng, structure.poisson, max_degree)
            report.extend(verify_duality_square(ctx, structure.poisson, F, phi))
    report.note(f"{samples} samples, seed {seed}")
    _emit(report.render())
    return _status(report)


def cmd_cohomology(args: argparse.Namespace) -> int:
    structure = _load(args)
    table = cohomology_dims(structure.poisson, _twist(args, structure), args.p, args.deg)
    _emit(table.render(args.format))
    return EXIT_OK


def cmd_homology(args: argparse.Namespace) -> int:
    structure = _load(args)
    table = homology_dims(structure.poisson, _twist(args, structure), args.p, args.deg)
    _emit(table.render(args.format))
    return EXIT_OK


def cmd_duality_dims(args: argparse.Namespace) -> int:
    structure = _load(args)
    report = duality_dim_check(
        structure.poisson, list(args.p), list(args.deg), twisted=not args.untwisted
    )
    _emit(report.render())
    return _status(report)


def cmd_pseudo_unimodular(args: argparse.Namespace) -> int:
    structure = _load(args)
    bound = get_settings().witness_max_degree if args.max_degree is None else args.max_degree
    varpi = pseudo_unimodular_witness(structure.poisson, max_degree=bound)
    if varpi is None:
        _emit(f"none up to degree {bound}")
    else:
        _emit(f"varpi = {varpi}")
    return EXIT_OK


def cmd_identities(args: argparse.Namespace) -> int:
    locations: list[str] = args.structures or list(DEFAULT_CORPUS)
    structures = [load_structure(location) for location in locations]
    report = run_identities(structures, suite=args.suite, samples=args.samples, seed=args.seed)
    _emit(report.render())
    _emit(f"{len(report.checks)} checks, {len(report.failures)} failures")
    return _status(report)


# --- parser ---


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per computation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--verbose",
        action="store_true",
        help="Log to stderr at debug level",
    )
    with_file = argparse.ArgumentParser(add_help=False, parents=[common])
    with_file.add_argument("structure", help="Path to a .pois file or a bundled structure name")
    twist = argparse.ArgumentParser(add_help=False)
    twist.add_argument(
        "--twist",
        type=str,
        help=f"Poisson derivation to twist by, as a 1-multivector, or '{MODULAR_TWIST}' for phi_vol",
    )
    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--p", type=parse_range, required=True, help="Degrees, A..B")
    table.add_argument("--deg", type=parse_range, required=True, help="Coefficient degrees, C..D")
    table.add_argument(
        "--format",
        choices=("text", "lines"),
        default="text",
        help="Aligned text or 'p d dim_ker dim_im dim_H' lines",
    )
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, help="Random instances (default from settings)")
    sampling.add_argument("--seed", type=int, help="Base seed (default from settings)")

    parser = argparse.ArgumentParser(
        prog="poisson-bv-calc",
        description="Exact Poisson calculus and BV operators on smooth algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    poisson-bv-calc modular quadratic_plane.pois
    poisson-bv-calc validate sphere_so3.pois
    poisson-bv-calc pseudo-unimodular quadratic_plane.pois --max-degree 6
    poisson-bv-calc bv-twisted so3_free.pois "(d x)* ^ (d y)*" --omega "d x"
    poisson-bv-calc homology quadratic_plane.pois --p 0..2 --deg 0..4 --twist modular
        """,
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(
        name: str, handler: Handler, help_text: str, *parents: argparse.ArgumentParser
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text, parents=[with_file, *parents])
        sub.set_defaults(handler=handler)
        return sub

    add("validate", cmd_validate, "Check the presentation data and the Poisson bracket")
    add("modular", cmd_modular, "Print the modular derivation and its two parts")
    add("hamiltonian", cmd_hamiltonian, "Print the Hamiltonian derivation of an element").add_argument(
        "element", help="Polynomial expression"
    )
    add("casimirs", cmd_casimirs, "Casimir basis by coefficient degree").add_argument(
        "--deg", type=parse_range, required=True, help="Coefficient degrees, C..D"
    )
    add("delta", cmd_delta, "Apply the Poisson cochain differential", twist).add_argument(
        "expression", help="Multivector expression"
    )
    add("partial", cmd_partial, "Apply the Poisson chain differential", twist).add_argument(
        "expression", help="Form expression"
    )
    sub = add("schouten", cmd_schouten, "Schouten bracket of two multivectors")
    sub.add_argument("left", help="Multivector expression")
    sub.add_argument("right", help="Multivector expression")
    add("bv", cmd_bv, "BV operator by both routes").add_argument(
        "expression", help="Multivector expression"
    )
    sub = add("bv-twisted", cmd_bv_twisted, "BV operator twisted by a closed 1-form")
    sub.add_argument("expression", help="Multivector expression")
    sub.add_argument("--omega", required=True, help="Closed 1-form")
    sub = add("duality-check", cmd_duality_check, "Round trips and the twisted duality square", sampling)
    sub.add_argument("--max-degree", type=int, help="Coefficient degree of random multivectors")
    add("cohomology", cmd_cohomology, "Poisson cohomology dimensions by strand", table, twist)
    add("homology", cmd_homology, "Poisson homology dimensions by strand", table, twist)
    sub = add("duality-dims", cmd_duality_dims, "Compare PH^p with twisted PH_{n-p}", table)
    sub.add_argument("--untwisted", action="store_true", help="Drop the modular twist")
    add(
        "pseudo-unimodular", cmd_pseudo_unimodular, "Search for a closed 1-form giving phi_vol"
    ).add_argument("--max-degree", type=int, help="Coefficient degree bound (default from settings)")

    sub = commands.add_parser(
        "identities", help="Run the identity suites", parents=[common, sampling]
    )
    sub.add_argument("structures", nargs="*", help="Structures (default: the bundled corpus)")
    sub.add_argument("--suite", choices=SUITES, help="Run one suite only")
    sub.set_defaults(handler=cmd_identities)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_observability(verbose=args.verbose)
    handler: Handler = args.handler
    try:
        with logfire.span("command {command}", command=args.command):
            return handler(args)
    except PoissonBVError as exc:
        print(exc.describe(), file=sys.stderr)
        return exc.exit_status
    except FileNotFoundError as exc:
        print(f"error[FILE_NOT_FOUND]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        logfire.exception("command {command} crashed", command=args.command)
        internal = PoissonBVError(f"{type(exc).__name__}: {exc}")
        print(internal.describe(), file=sys.stderr)
        return internal.exit_status


if __name__ == "__main__":
    sys.exit(main())
