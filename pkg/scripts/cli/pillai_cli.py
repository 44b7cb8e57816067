import argparse
import json
import logging
import sys
from pathlib import Path

from scripts.algebraic.independence import mult_independent
from scripts.bounds.bound_chain import derive_all
from scripts.common.errors import (
    HypothesisFailure,
    Inconclusive,
    PillaiError,
    PrecisionExhausted,
    SpecParseError,
    UnsupportedPlaceStructure,
)
from scripts.common.intervals import working_precision
from scripts.config.settings import PRECISION_BITS
from scripts.recurrence.growth import analyze_sequence
from scripts.recurrence.recurrence_core import load_spec
from scripts.search.pillai_search import (
    SearchBox,
    enumerate_representations,
    load_expected,
    multi_represented,
    verify_against,
)

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

# -----------------------
# Exit codes
# -----------------------
EXIT_OK = 0
EXIT_IO = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64

HYPOTHESIS_ERRORS = (HypothesisFailure, UnsupportedPlaceStructure, PrecisionExhausted, Inconclusive)


class UsageError(Exception):
    pass


class PillaiArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -----------------------
# Output
# -----------------------
def emit(payload, output=None):
    text = json.dumps(payload, indent=2)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        logger.info(f"✅ Report written to {output}")
    else:
        print(text)


def _box(args):
    try:
        box = SearchBox.from_ranges(args.n, args.m)
    except ValueError as e:
        raise UsageError(str(e))
    if box.is_empty:
        raise UsageError(f"empty search range --n {args.n} --m {args.m}")
    return box


# -----------------------
# 1️⃣ analyze
# -----------------------
def cmd_analyze(args):
    spec = load_spec(args.spec)
    analysis = analyze_sequence(spec, bits=args.precision)
    emit(analysis.to_dict(), args.output)
    return EXIT_OK


# -----------------------
# 2️⃣ independence
# -----------------------
def cmd_independence(args):
    U = analyze_sequence(load_spec(args.spec_u), bits=args.precision)
    V = analyze_sequence(load_spec(args.spec_v), bits=args.precision)
    verdict = mult_independent(U.alpha, V.alpha)
    emit({"U": U.label, "V": V.label, **verdict.to_dict()}, args.output)
    return EXIT_OK if verdict.passed else EXIT_HYPOTHESIS


# -----------------------
# 3️⃣ bound
# -----------------------
def cmd_bound(args):
    U = analyze_sequence(load_spec(args.spec_u), bits=args.precision)
    V = analyze_sequence(load_spec(args.spec_v), bits=args.precision)
    report = derive_all(U, V, bits=args.precision)
    emit(report.to_dict(), args.output)
    logger.info(f"✅ BOUND: m <= {report.bound}")
    return EXIT_OK


# -----------------------
# 4️⃣ search / verify
# -----------------------
def _search(args):
    box = _box(args)
    U, V = load_spec(args.spec_u), load_spec(args.spec_v)
    return enumerate_representations(U, V, box, threads=args.threads, progress=True)


def cmd_search(args):
    table = _search(args)
    if args.format == "csv":
        if args.output:
            table.to_csv(args.output)
        else:
            table.to_frame().to_csv(sys.stdout, index=False)
    else:
        emit(table.summary(), args.output)
    logger.info(f"ℹ️ Multi-represented values: {multi_represented(table)}")
    return EXIT_OK


def cmd_verify(args):
    table = _search(args)
    expected = load_expected(args.expected)
    report = verify_against(multi_represented(table), expected)
    emit({"box": table.box.to_dict(), **report.to_dict()}, args.output)
    return EXIT_OK if report.passed else EXIT_HYPOTHESIS


# -----------------------
# Argument parsing
# -----------------------
def build_parser():
    parser = PillaiArgumentParser(
        prog="pillai",
        description="Pillai-type problems for two linear recurrences: checks, explicit bounds and searches.",
    )
    parser.add_argument("--precision", type=int, default=PRECISION_BITS, help="Working precision in bits")
    parser.add_argument("--output", type=str, default=None, help="Write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=PillaiArgumentParser)

    analyze = sub.add_parser("analyze", help="Check the hypotheses for one sequence")
    analyze.add_argument("spec")
    analyze.set_defaults(handler=cmd_analyze)

    for name, handler, text in (
        ("independence", cmd_independence, "Test multiplicative independence of the dominant roots"),
        ("bound", cmd_bound, "Derive the explicit bound on m"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("spec_u")
        cmd.add_argument("spec_v")
        cmd.set_defaults(handler=handler)

    for name, handler, text in (
        ("search", cmd_search, "Enumerate U_n - V_m over a box"),
        ("verify", cmd_verify, "Compare the multi-represented values with an expected set"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("spec_u")
        cmd.add_argument("spec_v")
        cmd.add_argument("--n", default="2:200", help="n range LO:HI")
        cmd.add_argument("--m", default="2:150", help="m range LO:HI")
        cmd.add_argument("--threads", type=int, default=1, help="Worker processes for the enumeration")
        cmd.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "verify":
            cmd.add_argument("--expected", required=True, help="File with one integer per line")
        cmd.set_defaults(handler=handler)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(asctime)s [%(levelname)s] %(message)s")
    args = build_parser().parse_args(argv)
    if args.precision < 16:
        logger.error("❌ --precision must be at least 16 bits")
        return EXIT_USAGE
    try:
        with working_precision(args.precision):
            return args.handler(args)
    except UsageError as e:
        logger.error(f"❌ Usage error: {e}")
        return EXIT_USAGE
    except SpecParseError as e:
        logger.error(f"❌ Could not parse spec: {e}")
        return EXIT_IO
    except OSError as e:
        logger.error(f"❌ I/O error: {e}")
        return EXIT_IO
    except HYPOTHESIS_ERRORS as e:
        logger.error(f"❌ {type(e).__name__} failed at stage {e.stage!r}: {e}")
        print(json.dumps(e.to_dict(), indent=2))
        return EXIT_HYPOTHESIS
    except PillaiError as e:
        logger.exception("❌ Unexpected failure")
        print(json.dumps(e.to_dict(), indent=2))
        return EXIT_HYPOTHESIS
    except ValueError as e:
        logger.error(f"❌ Invalid input: {e}")
        print(json.dumps({"error": type(e).__name__, "stage": None, "message": str(e)}, indent=2))
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
