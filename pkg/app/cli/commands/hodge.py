"""hodge: Hodge integrals, their closed formulas and Hurwitz numbers."""
from app.cli.output import check_limit, emit_value, int_list
from app.core.config import MAX_GENUS, MAX_POINTS
from app.models.correlators import HodgeRequest
from app.services.exact import MultiIndex
from app.services.hodge import closed_formula_oracle, hodge_integral, hurwitz_number


def register(subparsers, parents):
    parser = subparsers.add_parser("hodge", parents=parents, help="Hodge integral or Hurwitz number")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--psi", default="", help="Psi exponents, e.g. 1,0")
    parser.add_argument("--kappa", default="", help="Kappa indices as a multiset, e.g. 1,1")
    parser.add_argument("--lambdas", default="", help="Lambda indices as a multiset, e.g. 1,1,1")
    parser.add_argument("--ch", default="", help="Odd Chern character degrees")
    parser.add_argument("--formula", choices=["lg", "l2g", "l3g"], help="Evaluate a closed formula")
    parser.add_argument("--hurwitz", default="", help="Ramification profile mu, e.g. 2,1")
    parser.set_defaults(handler=run)


def run(args) -> int:
    payload = HodgeRequest(
        g=args.g,
        psi=int_list(args.psi),
        kappa=int_list(args.kappa),
        lambdas=int_list(args.lambdas),
        ch=int_list(args.ch),
        formula=args.formula,
        hurwitz=int_list(args.hurwitz),
    )
    check_limit("genus", payload.g, MAX_GENUS)
    check_limit("points", max(len(payload.psi), len(payload.hurwitz)), MAX_POINTS)

    if payload.hurwitz:
        value = hurwitz_number(payload.g, payload.hurwitz)
        quantity = f"H_{payload.g},{payload.hurwitz}/|Aut|"
    elif payload.formula:
        value = closed_formula_oracle(payload.formula, payload.g, payload.psi)
        quantity = f"{payload.formula}(g={payload.g}, d={payload.psi})"
    else:
        kappa = MultiIndex.from_parts(payload.kappa)
        value = hodge_integral(payload.g, psi=payload.psi, kappa=kappa, lambdas=payload.lambdas, ch=payload.ch)
        quantity = f"<psi{payload.psi} kappa{payload.kappa} lambda{payload.lambdas} ch{payload.ch}>_{payload.g}"
    emit_value(quantity, value, args.format)
    return 0
