import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from . import zoo
from .bicrossed import bicrossed_coproduct, drinfeld_double_dual, smash_coproduct
from .brace import (
    LEFT,
    BraceData,
    CoactionData,
    braid_operator,
    check_brace,
    check_braid_conjugacy,
    check_braid_equation,
    check_harrison_cocycle,
    check_long_copaired,
    cop_brace,
    twist_comultiplication,
)
from .cocycle import brace_to_cocycle, check_cocycle, cocycle_to_brace
from .errors import CheckFailed, HopfFileError, KernelError, UnknownObject
from .exact_linalg import FieldSpec, split_index
from .hopf_core import FAIL, CheckReport, HopfData, check_hopf, first_failure
from .hopffile import read_hopf_file, serialize
from .lazy_hopf import (
    LazyHopfData,
    check_brace_on_monomials,
    check_braid_on_monomials,
    check_cocycle_on_monomials,
    check_matched_on_monomials,
    window,
)
from .matched import (
    MatchedPairData,
    brace_to_matched,
    check_eq31,
    check_matched_pair,
    check_weak_rmatrix,
    matched_from_rmatrix,
    weak_rmatrix,
)
from .utils import CONFIG_FILE_NAME, OUTPUT_FORMATS, VERSION, Config, configure_logging

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3

CHECK_KINDS = ("hopf", "brace", "matched", "cocycle", "rmatrix", "braid")
BUILD_KINDS = ("bicrossed", "smash", "double-dual", "twist", "cop-brace")


@dataclass
class Report:
    """Outcome of one command, in the stable structured schema."""
    status: str
    object_name: str
    failed_axiom: str = ""
    witness_labels: List[str] = field(default_factory=list)
    residual: List[Tuple[List[str], str]] = field(default_factory=list)

    @staticmethod
    def from_check(object_name: str, report: CheckReport) -> "Report":
        return Report(
            status=report.status,
            object_name=object_name,
            failed_axiom=report.failed_axiom,
            witness_labels=list(report.witness_labels),
            residual=[(list(labels), value) for labels, value in report.residual_terms],
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass
class Settings:
    field: FieldSpec
    window: Tuple[int, int]
    extended: bool
    output: str


def _emit(report: Report, check: CheckReport, settings: Settings) -> int:
    if settings.output == "structured":
        print(report.to_json())
    else:
        print(f"{report.object_name}: {check.summary()}")
    return EXIT_PASS if check.passed else EXIT_FAIL


def load(ref: str, settings: Settings):
    """Resolves ``zoo:<name>`` or a `.hopf` path."""
    if ref.startswith("zoo:"):
        name = ref[4:]
        found = zoo.entry(name)
        if found.extended and not settings.extended:
            raise UnknownObject(f"'{name}' belongs to the extended tier; pass --extended")
        return zoo.get(name, settings.field)
    path = Path(ref)
    if not path.is_file():
        raise UnknownObject(f"Path '{path}' is not a file.")
    return read_hopf_file(path, settings.field)


def _object_name(obj, ref: str) -> str:
    return getattr(obj, "name", "") or ref


def _require(obj, kinds, command: str):
    if not isinstance(obj, kinds):
        raise UnknownObject(f"'{command}' does not apply to a {type(obj).__name__}")


def _brace_cocycle_report(b: BraceData) -> CheckReport:
    c = brace_to_cocycle(b)
    report = check_cocycle(c)
    if not report.passed:
        return report
    if not cocycle_to_brace(c).same_tables(b):
        return CheckReport(status=FAIL, failed_axiom="brace -> cocycle -> brace round trip")
    return report


def _braid_report(b: BraceData) -> CheckReport:
    c = braid_operator(b)
    return first_failure(
        lambda: check_braid_equation(c, b.basis_labels),
        lambda: check_braid_conjugacy(b),
    )


def run_check(kind: str, obj, settings: Settings) -> CheckReport:
    if isinstance(obj, LazyHopfData):
        monomials = window(*settings.window)
        lazy_checks = {
            "brace": lambda: check_brace_on_monomials(obj, monomials),
            "matched": lambda: check_matched_on_monomials(obj, monomials),
            "cocycle": lambda: check_cocycle_on_monomials(obj, monomials),
            "braid": lambda: check_braid_on_monomials(obj, window(min(settings.window[0], 1), min(settings.window[1], 1))),
        }
        if kind not in lazy_checks:
            raise UnknownObject(f"'check {kind}' does not apply to a lazy brace")
        return lazy_checks[kind]()
    if kind == "hopf":
        _require(obj, HopfData, "check hopf")
        return check_hopf(obj)
    if kind == "brace":
        _require(obj, BraceData, "check brace")
        return check_brace(obj)
    if kind == "matched":
        if isinstance(obj, BraceData):
            mp = brace_to_matched(obj)
            return first_failure(lambda: check_matched_pair(mp), lambda: check_eq31(mp))
        _require(obj, MatchedPairData, "check matched")
        return check_matched_pair(obj)
    if kind == "cocycle":
        _require(obj, BraceData, "check cocycle")
        return _brace_cocycle_report(obj)
    if kind == "rmatrix":
        _require(obj, (zoo.RMatrixObject, zoo.CopairingObject), "check rmatrix")
        if isinstance(obj, zoo.CopairingObject):
            return first_failure(
                lambda: check_long_copaired(obj.H, obj.R),
                lambda: check_harrison_cocycle(obj.H, obj.R),
            )
        return check_weak_rmatrix(obj.H, obj.A, obj.R)
    _require(obj, BraceData, "check braid")
    return _braid_report(obj)


def run_build(kind: str, refs: Sequence[str], settings: Settings):
    if len(refs) != 1:
        raise UnknownObject(f"'build {kind}' takes exactly one object reference")
    obj = load(refs[0], settings)
    if kind == "bicrossed":
        if isinstance(obj, zoo.RMatrixObject):
            obj = matched_from_rmatrix(obj.H, obj.A, weak_rmatrix(obj.H, obj.A, obj.R))
        _require(obj, MatchedPairData, "build bicrossed")
        return bicrossed_coproduct(obj).result
    if kind == "smash":
        _require(obj, MatchedPairData, "build smash")
        return smash_coproduct(obj.A, obj.H, CoactionData(LEFT, obj.rho))
    if kind == "double-dual":
        _require(obj, HopfData, "build double-dual")
        return drinfeld_double_dual(obj)
    if kind == "twist":
        _require(obj, zoo.CopairingObject, "build twist")
        return twist_comultiplication(obj.H, obj.R)
    _require(obj, HopfData, "build cop-brace")
    return cop_brace(obj)


def braid_lines(b: BraceData) -> List[str]:
    """``row col value`` lines of the braid matrix, labels joined by ``(*)``."""
    c = braid_operator(b)
    d = b.dim
    labels = b.basis_labels
    fs = b.field

    def name(index: int) -> str:
        i, j = split_index(index, (d, d))
        return f"{labels[i]}(*){labels[j]}"

    lines = []
    for col in range(d * d):
        column = c.column(col)
        for row in sorted(column):
            lines.append(f"{name(row)} {name(col)} {fs.format(column[row])}")
    return lines


def _write_or_print(text: str, out: Optional[Path]):
    if out is None:
        print(text, end="")
    else:
        out.write_text(text, encoding="utf-8")
        print(f"Info: wrote '{out}'.")


def _common_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--field", help="Scalar field: Q or Fp:<p>.")
    parser.add_argument("--window", type=int, nargs=2, metavar=("A", "B"), help="Laurent monomial window |a|<=A, b<=B.")
    parser.add_argument("--extended", action="store_true", default=None, help="Allow the large extended-tier objects.")
    parser.add_argument("--output", choices=OUTPUT_FORMATS, help="Report format.")
    parser.add_argument("--config", type=Path, help="Configuration file (markdown KEY: value lines).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfbrace", description="Verify Hopf algebras, Hopf braces and their constructions.")
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {VERSION}",
        help="Show the version of the program and exit."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Check the axioms of an object.")
    check.add_argument("kind", choices=CHECK_KINDS)
    check.add_argument("ref", help="zoo:<name> or a .hopf file.")
    _common_flags(check)

    build = commands.add_parser("build", help="Build an object and write it as a .hopf file.")
    build.add_argument("kind", choices=BUILD_KINDS)
    build.add_argument("refs", nargs="+", help="zoo:<name> or .hopf files.")
    build.add_argument("--out", type=Path, help="Write here instead of standard output.")
    _common_flags(build)

    braid = commands.add_parser("braid", help="Braid operators of commutative braces.")
    braid.add_argument("action", choices=("export",))
    braid.add_argument("ref")
    braid.add_argument("--out", type=Path, help="Write here instead of standard output.")
    _common_flags(braid)

    zoo_parser = commands.add_parser("zoo", help="Named objects.")
    zoo_parser.add_argument("action", choices=("list",))
    _common_flags(zoo_parser)
    return parser


def settings_from(args: argparse.Namespace) -> Settings:
    config_path = args.config or Path(__file__).parent.resolve() / CONFIG_FILE_NAME
    config = Config.from_file(config_path)
    configure_logging(config.log_level)
    field_spec = FieldSpec.parse(args.field) if args.field else config.field
    window_size = tuple(args.window) if args.window else (config.window_a, config.window_b)
    return Settings(
        field=field_spec,
        window=window_size,
        extended=config.extended if args.extended is None else args.extended,
        output=args.output or config.output,
    )


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Runs one command and returns its exit code."""
    args = build_parser().parse_args(argv)
    try:
        settings = settings_from(args)
    except KernelError as error:
        print(f"Error: {error}")
        return EXIT_USAGE

    ref = getattr(args, "ref", None) or ",".join(getattr(args, "refs", []) or [])
    try:
        if args.command == "zoo":
            for entry in zoo.ZOO.values():
                if entry.extended and not settings.extended:
                    continue
                dim = str(entry.dim) if entry.dim else "infinite"
                print(f"{entry.name:16} {entry.kind:10} {dim:>8}  {entry.description}")
            return EXIT_PASS
        if args.command == "check":
            obj = load(args.ref, settings)
            name = _object_name(obj, args.ref)
            check = run_check(args.kind, obj, settings)
            return _emit(Report.from_check(name, check), check, settings)
        if args.command == "build":
            built = run_build(args.kind, args.refs, settings)
            _write_or_print(serialize(built), args.out)
            return EXIT_PASS
        obj = load(args.ref, settings)
        _require(obj, BraceData, "braid export")
        _write_or_print("\n".join(braid_lines(obj)) + "\n", args.out)
        return EXIT_PASS
    except HopfFileError as error:
        print(f"Error: line {error.line}: {error.message}")
        return EXIT_PARSE
    except UnknownObject as error:
        print(f"Error: {error}")
        return EXIT_USAGE
    except CheckFailed as error:
        return _emit(Report.from_check(ref, error.report), error.report, settings)
    except KernelError as error:
        check = CheckReport(status=FAIL, failed_axiom=type(error).__name__, residual_text=str(error))
        return _emit(Report.from_check(ref, check), check, settings)


def main() -> None:
    """Entry point for the command-line application."""
    sys.exit(run_command())


if __name__ == '__main__':
    main()
