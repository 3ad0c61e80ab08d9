"""psi: descendent integrals <tau_{d_1} ... tau_{d_n}>_g."""
from fractions import Fraction

from app.cli.output import check_limit, emit_rows, emit_value, int_list
from app.core.config import MAX_GENUS, MAX_POINTS
from app.models.correlators import PsiRequest
from app.services.descendent import dimension_ok, dvv_expand, effective_recursion, is_stable, psi_correlator
from app.services.npoint import npoint_F


def register(subparsers, parents):
    parser = subparsers.add_parser("psi", parents=parents, help="Descendent integral <tau_d>_g")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--d", required=True, help="Comma-separated psi exponents, e.g. 0,0,1")
    parser.add_argument("--route", choices=["dvv", "effective", "npoint"], default="dvv")
    parser.add_argument("--explain", action="store_true", help="List the DVV right-hand side")
    parser.set_defaults(handler=run)


def _label(key) -> str:
    g, d = key
    return "<" + " ".join(f"tau_{x}" for x in d) + f">_{g}"


def compute(payload: PsiRequest) -> Fraction:
    g, d = payload.g, tuple(payload.d)
    if payload.route == "effective":
        return effective_recursion(g, d)
    if payload.route == "npoint":
        if not is_stable(g, len(d)) or not dimension_ok(g, d):
            return Fraction(0)
        return npoint_F(g, len(d)).coefficient(d)
    return psi_correlator(g, d)


def run(args) -> int:
    payload = PsiRequest(g=args.g, d=int_list(args.d), route=args.route, explain=args.explain)
    check_limit("genus", payload.g, MAX_GENUS)
    check_limit("points", len(payload.d), MAX_POINTS)
    value = compute(payload)
    emit_value(_label((payload.g, payload.d)), value, args.format)
    if payload.explain and max(payload.d) >= 1:
        rows = [
            {"coefficient": coef, "factors": " ".join(_label(key) for key in keys)}
            for coef, keys in dvv_expand(payload.g, payload.d)
        ]
        emit_rows(rows, args.format, ["coefficient", "factors"])
    return 0
