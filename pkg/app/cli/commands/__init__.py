"""Sub-command modules; each exposes register(subparsers, parents)."""
from app.cli.commands import cache, faber_rank, hodge, mocktheta, npoint, psi, rspin, table, verify, wp

COMMANDS = [psi, npoint, hodge, wp, faber_rank, mocktheta, rspin, table, verify, cache]
