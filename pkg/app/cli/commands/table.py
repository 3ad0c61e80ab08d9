"""table: reproduce the Faber rank, omega and r-spin tables over a genus range."""
from app.cli.output import check_limit, emit_rows, fraction_text, genus_range
from app.core.config import MAX_FABER_GENUS, MAX_RSPIN_GENUS
from app.models.correlators import TableRequest
from app.models.tables import FaberRankRow, OmegaProfile, RSpinRecord
from app.services.fabering import rank_profile
from app.services.mocktheta import omega_decomposition, omega_series
from app.services.reference import RSPIN_TABLES
from app.services.rspin import rspin_correlator


def register(subparsers, parents):
    parser = subparsers.add_parser("table", parents=parents, help="Reproduce a published table")
    parser.add_argument("which", choices=["faber-rank", "omega", "rspin3", "rspin4"])
    parser.add_argument("--g", required=True, help="Genus or inclusive range, e.g. 2..12")
    parser.set_defaults(handler=run)


def faber_rank_rows(g_min: int, g_max: int):
    check_limit("genus", g_max, MAX_FABER_GENUS)
    for g in range(g_min, g_max + 1):
        profile, total = rank_profile(g)
        yield FaberRankRow(g=g, profile=profile, total=total).model_dump()


def omega_rows(g_min: int, g_max: int):
    check_limit("genus", g_max, MAX_FABER_GENUS)
    _, _, profiles = omega_decomposition(g_max)
    omega = omega_series(g_max - 2)
    for g in range(g_min, g_max + 1):
        yield OmegaProfile(g=g, omega_g=omega[g - 2], profile=profiles[g]).model_dump()


def rspin_rows(r: int, g_min: int, g_max: int):
    check_limit("genus", g_max, MAX_RSPIN_GENUS)
    for g, insertions, _ in RSPIN_TABLES[r]:
        if not g_min <= g <= g_max:
            continue
        record = RSpinRecord(r=r, g=g, insertions=list(insertions), value=fraction_text(rspin_correlator(r, g, insertions)))
        yield {
            "g": record.g,
            "insertions": " ".join(f"tau_{n},{m}" for n, m in record.insertions),
            "value": record.value,
        }


def run(args) -> int:
    g_min, g_max = genus_range(args.g)
    payload = TableRequest(which=args.which, g_min=g_min, g_max=g_max)
    if payload.which == "faber-rank":
        emit_rows(list(faber_rank_rows(g_min, g_max)), args.format, ["g", "profile", "total"])
    elif payload.which == "omega":
        emit_rows(list(omega_rows(g_min, g_max)), args.format, ["g", "omega_g", "profile"])
    else:
        r = 3 if payload.which == "rspin3" else 4
        emit_rows(list(rspin_rows(r, g_min, g_max)), args.format, ["g", "insertions", "value"])
    return 0
