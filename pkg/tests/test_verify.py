import pytest

from orthospeed import verify


@pytest.fixture(scope="module")
def results():
    return {r.name: r for r in verify.battery()}


def test_default_battery_passes(results):
    assert verify.all_hard_pass(list(results.values()))


def test_published_binomial_check_is_soft_flag(results):
    r = results["published binomial formulas"]
    assert not r.hard and r.status == "FLAG"


def test_table_lists_every_check(results):
    table = verify.format_table(list(results.values()))
    assert all(name in table for name in results)


def test_printed_rabi_form_breaks_unitarity():
    assert verify.unitarity_error("printed") > 1e-3
    assert verify.unitarity_error("sqrt") < 1e-12


def test_coarse_grid_fails_completeness():
    assert verify.completeness_misses(0.5) > 0
    assert verify.completeness_misses(0.005) == 0
