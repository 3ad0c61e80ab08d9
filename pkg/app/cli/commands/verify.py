"""verify: run a cross-check suite; exit code 2 on any failed comparison."""
import json

from app.cli.output import emit_rows
from app.core.errors import VerificationError
from app.services.verify import SUITES, run_suite


def register(subparsers, parents):
    parser = subparsers.add_parser("verify", parents=parents, help="Run a cross-check suite")
    parser.add_argument("suite", choices=sorted(SUITES))
    parser.add_argument("--bound", "--n", dest="bound", type=int, help="Size parameter; defaults to the full range")
    parser.set_defaults(handler=run)


def run(args) -> int:
    report = run_suite(args.suite, args.bound)
    if args.format == "records":
        print(json.dumps(report.model_dump()))
    elif args.format == "csv":
        emit_rows([report.model_dump()], "csv", ["name", "ok", "checked", "failures"])
    else:
        status = "PASS" if report.ok else "FAIL"
        print(f"{report.name}: {status} ({report.checked} checked)")
        for line in report.failures:
            print(f"  {line}")
    if not report.ok:
        raise VerificationError(
            f"suite {report.name} failed {len(report.failures)} of {report.checked} checks",
            details=report.failures[:20],
        )
    return 0
