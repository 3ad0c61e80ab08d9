"""Command-line entry point: python -m app.main <command> [options]."""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.cli.commands import COMMANDS
from app.cli.output import FORMATS
from app.core.cache import CacheStore
from app.core.config import LOG_LEVEL, default_cache_path
from app.core.errors import (
    EXIT_USAGE,
    CacheFormatError,
    DivisibilityError,
    IntegralityError,
    InvalidInputError,
    LimitExceededError,
    NoConvergenceError,
    VerificationError,
    error_envelope,
    exit_code_for,
)
from app.models.common import ErrorResponse

logger = logging.getLogger(__name__)

HANDLED_ERRORS = (
    ValidationError,
    InvalidInputError,
    DivisibilityError,
    IntegralityError,
    NoConvergenceError,
    LimitExceededError,
    CacheFormatError,
    VerificationError,
)


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS lets the shared flags appear before or after the sub-command
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="Output format (default: text)")
    common.add_argument("--cache", default=argparse.SUPPRESS, help="Cache file (default: $MODULI_CACHE_PATH or the per-user data dir)")
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS, help="Do not read or write the cache file")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS, help="-v for INFO, -vv for DEBUG")

    parser = argparse.ArgumentParser(
        prog="moduli",
        description="Exact intersection numbers on moduli spaces of curves",
        parents=[common],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, [common])
    return parser


def configure_logging(verbose: int) -> None:
    level = {0: LOG_LEVEL, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    logging.getLogger().setLevel(level)


def report_error(exc: BaseException, fmt: str) -> None:
    """Print the error envelope to stderr."""
    envelope = ErrorResponse.model_validate(error_envelope(exc))
    if fmt == "records":
        print(json.dumps(envelope.model_dump()), file=sys.stderr)
        return
    print(f"error [{envelope.error.code}]: {envelope.error.message}", file=sys.stderr)
    for line in envelope.error.details:
        print(f"  {line}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0

    args.format = getattr(args, "format", "text")
    configure_logging(getattr(args, "verbose", 0) or 0)

    if getattr(args, "no_cache", False):
        args.store = None
    else:
        args.store = CacheStore(getattr(args, "cache", None) or default_cache_path())
    persist = args.store is not None and not getattr(args, "manages_cache", False)

    try:
        if persist:
            args.store.load()
        return args.handler(args)
    except HANDLED_ERRORS as exc:
        report_error(exc, args.format)
        return exit_code_for(exc)
    finally:
        if persist:
            try:
                args.store.save()
            except OSError as exc:
                logger.warning("Could not write cache %s: %s", args.store.path, exc)


if __name__ == "__main__":
    sys.exit(main())
