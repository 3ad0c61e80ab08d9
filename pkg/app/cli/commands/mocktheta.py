"""mocktheta: coefficients of omega(q) and f(q), and Garthwaite's exact formula."""
from app.cli.output import check_limit, emit_rows
from app.core.config import GARTHWAITE_K_MAX, MAX_GARTHWAITE_N, MAX_SERIES_ORDER
from app.models.correlators import MockThetaRequest
from app.services.mocktheta import f_series, garthwaite_omega, garthwaite_partial_sum, omega_series, omega_series_alt

_SERIES = {"omega": omega_series, "omega-alt": omega_series_alt, "f": f_series}


def register(subparsers, parents):
    parser = subparsers.add_parser("mocktheta", parents=parents, help="Mock theta coefficients")
    parser.add_argument("--n", type=int, required=True, help="Highest power of q, or the index for --garthwaite")
    parser.add_argument("--route", choices=sorted(_SERIES), default="omega", help="Which expansion")
    parser.add_argument("--garthwaite", action="store_true", help="Evaluate omega(n) by the exact formula")
    parser.add_argument("--k-max", type=int, default=GARTHWAITE_K_MAX, help="Truncation of the exact formula")
    parser.set_defaults(handler=run)


def run(args) -> int:
    payload = MockThetaRequest(order=args.n, series=args.route, garthwaite=args.garthwaite, k_max=args.k_max)
    if payload.garthwaite:
        check_limit("n", payload.order, MAX_GARTHWAITE_N)
        partial = garthwaite_partial_sum(payload.order, payload.k_max)
        rounded = garthwaite_omega(payload.order, payload.k_max)
        # the only floating-point output of the tool
        emit_rows(
            [{"n": payload.order, "k_max": payload.k_max, "partial_sum_float": str(partial), "omega": rounded}],
            args.format,
            ["n", "k_max", "partial_sum_float", "omega"],
        )
        return 0
    check_limit("series order", payload.order, MAX_SERIES_ORDER)
    coeffs = _SERIES[payload.series](payload.order)
    emit_rows([{"n": n, "coefficient": c} for n, c in enumerate(coeffs)], args.format, ["n", "coefficient"])
    return 0
