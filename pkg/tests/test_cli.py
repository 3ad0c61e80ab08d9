"""Tests for the command-line surface."""
import json

from app.main import main
from app.models.tables import SuiteReport


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_psi_text(capsys):
    """Test <tau_1>_1 prints as a bare reduced fraction."""
    code, out, _ = run_cli(capsys, "psi", "--g", "1", "--d", "1")
    assert code == 0
    assert out.strip() == "1/24"


def test_psi_genus_zero(capsys):
    """Test <tau_0^3>_0 = 1 and an off-dimension zero."""
    assert run_cli(capsys, "psi", "--g", "0", "--d", "0,0,0")[1].strip() == "1"
    assert run_cli(capsys, "psi", "--g", "0", "--d", "0,0,1")[1].strip() == "0"


def test_psi_routes_agree(capsys):
    """Test the three psi routes print the same value."""
    values = {
        run_cli(capsys, "psi", "--g", "2", "--d", "2,3", "--route", route)[1].strip()
        for route in ("dvv", "effective", "npoint")
    }
    assert values == {"29/5760"}


def test_psi_records(capsys):
    """Test the records format prints one JSON object."""
    code, out, _ = run_cli(capsys, "psi", "--g", "1", "--d", "1", "--format", "records")
    assert code == 0
    record = json.loads(out)
    assert record == {"ok": True, "quantity": "<tau_1>_1", "value": "1/24"}


def test_shared_flags_before_command(capsys):
    """Test that --format works before the sub-command too."""
    code, out, _ = run_cli(capsys, "--format", "csv", "psi", "--g", "1", "--d", "1")
    assert code == 0
    assert out.splitlines() == ["quantity,value", "<tau_1>_1,1/24"]


def test_psi_explain(capsys):
    """Test that --explain lists the DVV terms after the value."""
    code, out, _ = run_cli(capsys, "psi", "--g", "2", "--d", "4", "--explain")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1/1152"
    assert lines[1].startswith("coefficient")
    assert len(lines) > 2


def test_npoint_rows(capsys):
    """Test F_1(x, y) = (x^2 + xy + y^2)/24 as CSV rows."""
    code, out, _ = run_cli(capsys, "npoint", "--g", "1", "--n", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "exponents,coefficient"
    assert '"2,0",1/24' in lines
    assert '"1,1",1/24' in lines
    assert len(lines) == 4


def test_hodge_and_wp(capsys):
    """Test a Hodge integral, a Hurwitz number and a volume."""
    assert run_cli(capsys, "hodge", "--g", "2", "--lambdas", "1,1,1")[1].strip() == "1/2880"
    assert run_cli(capsys, "hodge", "--g", "0", "--hurwitz", "1,1,1")[1].strip() == "4"
    assert run_cli(capsys, "wp", "--g", "1", "--n", "1", "--kappa", "1")[1].strip() == "1/24"
    assert run_cli(capsys, "wp", "--g", "2", "--kappa", "1,1,1", "--route", "kappa")[1].strip() == "43/2880"


def test_faber_rank(capsys):
    """Test the genus nine rank profile."""
    code, out, _ = run_cli(capsys, "faber-rank", "--g", "9")
    assert code == 0
    assert "1,1,2,3,3,2,1,1" in out
    assert out.split()[-1] == "14"


def test_table_faber_rank_range(capsys):
    """Test a table over a genus range in CSV."""
    code, out, _ = run_cli(capsys, "table", "faber-rank", "--g", "2..4", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["g,profile,total", "2,1,1", '3,"1,1",2', '4,"1,1,1",3']


def test_table_rspin3(capsys):
    """Test the r = 3 genus-one table."""
    code, out, _ = run_cli(capsys, "table", "rspin3", "--g", "1")
    assert code == 0
    assert "1/12" in out
    assert "1/36" in out


def test_rspin_value(capsys):
    """Test a single r = 4 number."""
    code, out, _ = run_cli(capsys, "rspin", "--r", "4", "--g", "1", "--insertions", "0:2,1:2")
    assert code == 0
    assert out.strip() == "1/96"


def test_mocktheta_csv(capsys):
    """Test the omega coefficients as CSV."""
    code, out, _ = run_cli(capsys, "mocktheta", "--n", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,coefficient", "0,1", "1,2", "2,3", "3,4", "4,6", "5,8"]


def test_verify_pass(capsys):
    """Test a passing suite exits 0."""
    code, out, _ = run_cli(capsys, "verify", "faber-table", "--bound", "6")
    assert code == 0
    assert out.startswith("faber-table: PASS")


def test_verify_failure_exit_code(capsys, monkeypatch):
    """Test that a failed suite exits 2."""
    failing = SuiteReport(name="faber-table", ok=False, checked=1, failures=["ranks at g=2: got [2], expected [1]"])
    monkeypatch.setattr("app.cli.commands.verify.run_suite", lambda name, bound: failing)
    code, out, err = run_cli(capsys, "verify", "faber-table")
    assert code == 2
    assert "FAIL" in out
    assert "VERIFICATION_FAILED" in err


def test_limit_exit_code(capsys):
    """Test that a request over the genus limit exits 3."""
    code, _, err = run_cli(capsys, "psi", "--g", "40", "--d", "117")
    assert code == 3
    assert "LIMIT_EXCEEDED" in err


def test_usage_errors(capsys):
    """Test argparse and validation failures exit 1."""
    assert run_cli(capsys, "psi", "--g", "1")[0] == 1
    assert run_cli(capsys, "psi", "--g", "-1", "--d", "1")[0] == 1
    assert run_cli(capsys, "rspin", "--r", "5", "--g", "1", "--insertions", "1:0")[0] == 1
    assert run_cli(capsys, "table", "omega", "--g", "1..3")[0] == 1


def test_unstable_error(capsys):
    """Test that an unstable n-point request reports UNSTABLE."""
    code, _, err = run_cli(capsys, "npoint", "--g", "0", "--n", "2")
    assert code == 1
    assert "UNSTABLE" in err


def test_records_error_envelope(capsys):
    """Test errors in records format are a JSON envelope on stderr."""
    code, _, err = run_cli(capsys, "--format", "records", "psi", "--g", "-1", "--d", "1")
    assert code == 1
    envelope = json.loads(err)
    assert envelope["ok"] is False
    assert envelope["error"]["code"] == "VALIDATION_ERROR"
    assert envelope["error"]["details"]


def test_help_exits_zero(capsys):
    """Test --help returns 0."""
    assert run_cli(capsys, "--help")[0] == 0


def test_cache_round_trip(capsys, tmp_path):
    """Test values persist between runs and the cache command clears them."""
    cache = str(tmp_path / "cli-cache.txt")
    assert run_cli(capsys, "psi", "--g", "2", "--d", "2,2,2", "--cache", cache)[0] == 0
    code, out, _ = run_cli(capsys, "cache", "info", "--cache", cache, "--format", "records")
    assert code == 0
    assert json.loads(out)["entries"] > 0

    run_cli(capsys, "cache", "clear", "--cache", cache)
    _, out, _ = run_cli(capsys, "cache", "info", "--cache", cache, "--format", "records")
    assert json.loads(out)["entries"] == 0


def test_no_cache_writes_nothing(capsys, tmp_path):
    """Test --no-cache leaves the cache file alone."""
    cache = tmp_path / "unused.txt"
    assert run_cli(capsys, "--no-cache", "psi", "--g", "1", "--d", "1", "--cache", str(cache))[0] == 0
    assert not cache.exists()
