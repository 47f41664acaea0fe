import pytest

from hyperseries.verify import PROPERTIES, PropertyResult, partial_identity_exact, run_suite


@pytest.fixture(scope="module")
def suite():
    return run_suite(samples=500, seed=1)


def test_every_module_has_properties():
    modules = {m for m, _ in PROPERTIES.values()}
    assert modules == {"algebra", "slice_rep", "geometry", "series", "expansion"}
    assert len(PROPERTIES) >= 25


def test_suite_passes(suite):
    failed = [r.line() for r in suite if not r.passed]
    assert not failed, "\n".join(failed)
    assert all(r.checked > 0 for r in suite)


def test_suite_is_deterministic():
    names = ["anti_involution", "sigma_metric_axioms", "representation_roundtrip"]
    a = run_suite(samples=300, seed=4, names=names)
    b = run_suite(samples=300, seed=4, names=names)
    assert a == b


def test_unknown_property():
    with pytest.raises(KeyError):
        run_suite(names=["nope"])


def test_result_line():
    r = PropertyResult("x", "m", 10, 0, 1.5e-13)
    assert r.line() == "PASS m.x checked=10 failures=0 worst=1.500e-13"
    assert not PropertyResult("x", "m", 10, 2, 1.0).passed


@pytest.mark.parametrize("n", range(7))
def test_partial_identity_rows(n):
    for l in range(13):
        assert partial_identity_exact(n, l) == (True, True)
