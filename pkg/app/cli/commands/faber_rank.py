"""faber-rank: ranks of the Faber intersection matrices."""
from app.cli.output import check_limit, emit_rows
from app.core.config import MAX_FABER_GENUS
from app.models.correlators import FaberRankRequest
from app.models.tables import FaberRankRow
from app.services.fabering import exact_rank, faber_matrix, rank_profile


def register(subparsers, parents):
    parser = subparsers.add_parser("faber-rank", parents=parents, help="Rank profile R_g^k")
    parser.add_argument("--g", type=int, required=True, help="Genus")
    parser.add_argument("--k", type=int, help="Single degree k; omit for the whole profile")
    parser.set_defaults(handler=run)


def run(args) -> int:
    payload = FaberRankRequest(g=args.g, k=args.k)
    check_limit("genus", payload.g, MAX_FABER_GENUS)
    if payload.k is not None:
        rows, cols, matrix = faber_matrix(payload.g, payload.k)
        emit_rows(
            [{"g": payload.g, "k": payload.k, "rows": len(rows), "cols": len(cols), "rank": exact_rank(matrix)}],
            args.format,
            ["g", "k", "rows", "cols", "rank"],
        )
        return 0
    profile, total = rank_profile(payload.g)
    row = FaberRankRow(g=payload.g, profile=profile, total=total)
    emit_rows([row.model_dump()], args.format, ["g", "profile", "total"])
    return 0
