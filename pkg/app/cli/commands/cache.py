"""cache: inspect or clear the persistent memo store."""
from app.cli.output import emit_rows
from app.core.cache import clear_all


def register(subparsers, parents):
    parser = subparsers.add_parser("cache", parents=parents, help="Inspect or clear the memo store")
    parser.add_argument("action", choices=["info", "clear"])
    parser.set_defaults(handler=run, manages_cache=True)


def run(args) -> int:
    store = args.store
    if store is None:
        emit_rows([{"path": "-", "version": "-", "entries": 0}], args.format, ["path", "version", "entries"])
        return 0
    if args.action == "clear":
        store.clear()
        clear_all()
    emit_rows([store.info()], args.format, ["path", "version", "entries"])
    return 0
