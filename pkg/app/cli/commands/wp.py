"""wp: higher Weil-Petersson volumes and mixed kappa/psi correlators."""
from app.cli.output import check_limit, emit_value, int_list
from app.core.config import MAX_GENUS, MAX_POINTS
from app.models.correlators import VolumeRequest
from app.services.exact import MultiIndex
from app.services.wpvolumes import kappa_psi_correlator, volume


def register(subparsers, parents):
    parser = subparsers.add_parser("wp", parents=parents, help="Weil-Petersson volume V_{g,n}(b)")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--n", type=int, default=0, help="Number of tau_0 insertions")
    parser.add_argument("--kappa", default="", help="Kappa indices as a multiset, e.g. 1,1,1")
    parser.add_argument("--psi", default="", help="Psi exponents for a mixed correlator")
    parser.add_argument("--route", choices=["volume", "mixed", "kappa"], default="volume")
    parser.set_defaults(handler=run)


def run(args) -> int:
    payload = VolumeRequest(g=args.g, n=args.n, kappa=int_list(args.kappa), psi=int_list(args.psi), route=args.route)
    check_limit("genus", payload.g, MAX_GENUS)
    check_limit("points", max(payload.n, len(payload.psi)), MAX_POINTS)
    b = MultiIndex.from_parts(payload.kappa)
    if payload.psi:
        value = kappa_psi_correlator(payload.g, b, payload.psi)
        quantity = f"<tau{payload.psi} kappa({b})>_{payload.g}"
    else:
        value = volume(payload.g, payload.n, b, payload.route)
        quantity = f"V_{payload.g},{payload.n}({b})"
    emit_value(quantity, value, args.format)
    return 0
