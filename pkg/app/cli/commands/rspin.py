"""rspin: Witten r-spin intersection numbers for r = 2, 3, 4."""
from app.cli.output import check_limit, emit_value, insertion_list
from app.core.config import MAX_POINTS, MAX_RSPIN_GENUS
from app.models.correlators import RSpinRequest
from app.services.rspin import rspin_correlator


def register(subparsers, parents):
    parser = subparsers.add_parser("rspin", parents=parents, help="r-spin number <tau_{n,m} ...>_g")
    parser.add_argument("--r", type=int, required=True, help="Spin parameter: 2, 3 or 4")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--insertions", required=True, help="n:m pairs, e.g. 0:1,0:1,2:1")
    parser.set_defaults(handler=run)


def run(args) -> int:
    payload = RSpinRequest(r=args.r, g=args.g, insertions=insertion_list(args.insertions))
    check_limit("genus", payload.g, MAX_RSPIN_GENUS)
    check_limit("points", len(payload.insertions), MAX_POINTS)
    value = rspin_correlator(payload.r, payload.g, payload.insertions)
    label = " ".join(f"tau_{n},{m}" for n, m in payload.insertions)
    emit_value(f"<{label}>_{payload.g} (r={payload.r})", value, args.format)
    return 0
