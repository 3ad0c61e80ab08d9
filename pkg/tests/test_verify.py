"""Tests for the cross-check suites."""
import pytest

from app.core.errors import InvalidInputError
from app.services.verify import SUITES, run_suite

SMALL_BOUNDS = {
    "dvv-vs-effective": 5,
    "dvv-vs-npoint": 4,
    "npoint-closed": 2,
    "npoint-coeff": 2,
    "hodge-closed-forms": 3,
    "faber-fa3": 3,
    "elsv-roundtrip": 3,
    "wp-routes": 1,
    "faber-table": 9,
    "mock-series": 60,
    "mock-decomposition": 6,
    "rspin-tables": 1,
}


@pytest.mark.parametrize("name", sorted(SMALL_BOUNDS))
def test_suite_passes_at_small_bound(name):
    """Test that every exact suite passes on a reduced range."""
    report = run_suite(name, SMALL_BOUNDS[name])
    assert report.name == name
    assert report.checked > 0
    assert report.ok, report.failures


def test_every_exact_suite_is_covered():
    """Test that only the numerical suite is left out of the small-bound run."""
    assert set(SUITES) - set(SMALL_BOUNDS) == {"mock-garthwaite"}


def test_garthwaite_suite_reports_each_n():
    """Test the numerical suite counts one comparison per n."""
    report = run_suite("mock-garthwaite", 2)
    assert report.name == "mock-garthwaite"
    assert report.checked == 3


def test_unknown_suite():
    """Test that an unknown suite name is rejected."""
    with pytest.raises(InvalidInputError):
        run_suite("no-such-suite")


def test_negative_bound():
    """Test that a negative bound is rejected."""
    with pytest.raises(InvalidInputError):
        run_suite("faber-table", -1)
