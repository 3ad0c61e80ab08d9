"""npoint: n-point functions F_g and G_g as coefficient lists."""
from app.cli.output import check_limit, emit_rows
from app.core.config import MAX_GENUS, MAX_POINTS
from app.models.correlators import NpointRequest
from app.services.npoint import npoint_F, npoint_F_via_K, npoint_G, wmb_F


def register(subparsers, parents):
    parser = subparsers.add_parser("npoint", parents=parents, help="n-point function coefficients")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--n", type=int, required=True, help="Number of variables")
    parser.add_argument("--kind", choices=["F", "G"], default="F")
    parser.add_argument("--route", choices=["sum", "recursion", "kernel", "trees"], default="sum")
    parser.set_defaults(handler=run)


def compute(payload: NpointRequest):
    if payload.kind == "G":
        return npoint_G(payload.g, payload.n, payload.route)
    if payload.route == "kernel":
        return npoint_F_via_K(payload.g, payload.n)
    if payload.route == "trees":
        return wmb_F(payload.g, payload.n)
    return npoint_F(payload.g, payload.n, payload.route)


def run(args) -> int:
    payload = NpointRequest(g=args.g, n=args.n, kind=args.kind, route=args.route)
    check_limit("genus", payload.g, MAX_GENUS)
    check_limit("points", payload.n, MAX_POINTS)
    poly = compute(payload)
    rows = [{"exponents": list(exponents), "coefficient": coef} for exponents, coef in sorted(poly.items(), reverse=True)]
    emit_rows(rows, args.format, ["exponents", "coefficient"])
    return 0
