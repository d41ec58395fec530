"""Catalog integrity: the shipped sources, expectations, and suite outcomes."""

import pytest

from lagkit.catalog import catalog, catalog_entry, catalog_names, catalog_source
from lagkit.checks import SampleConfig, run_suite
from lagkit.dsl import parse, serialize
from lagkit.errors import UnknownSpecError

CFG = SampleConfig(num_points=14, seed=13)


def test_twelve_entries():
    assert len(catalog_names()) == 12


def test_unknown_name():
    with pytest.raises(UnknownSpecError, match="clifford_torus"):
        catalog("not_a_spec")


@pytest.mark.parametrize("name", catalog_names())
def test_shipped_source_is_canonical(name):
    src = catalog_source(name)
    assert src == serialize(catalog(name))
    assert parse(src).same_structure(catalog(name))


@pytest.mark.parametrize("name", catalog_names())
def test_expectations_hold(name):
    entry = catalog_entry(name)
    report = run_suite(entry.spec, CFG, quadric=entry.quadric)
    for check_name, expected in entry.expects.items():
        got = report.checks[check_name]
        assert got.status == "ok", (check_name, got.reason)
        assert got.passed is expected, (check_name, got.max_residual)


@pytest.mark.parametrize(
    "name",
    [
        "real_circle_S3",
        "clifford_torus",
        "real_sphere_S5",
        "product_S1xS2",
        "minimal_legendrian_torus_S5",
        "pseudo_legendrian_H3",
        "pseudo_legendrian_S3_index1",
        "theorem42_example",
        "theorem43_example",
    ],
)
def test_good_entries_pass_their_suite(name):
    entry = catalog_entry(name)
    report = run_suite(entry.spec, CFG, quadric=entry.quadric)
    assert report.passed, {
        k: (v.status, v.max_residual, v.reason)
        for k, v in report.checks.items()
        if v.status != "skipped" and not v.passed
    }


@pytest.mark.parametrize(
    "name", ["whitney_sphere", "control_non_lagrangian", "control_non_horizontal"]
)
def test_non_examples_fail_their_suite(name):
    entry = catalog_entry(name)
    report = run_suite(entry.spec, CFG, quadric=entry.quadric)
    assert not report.passed


def test_entry_metadata():
    assert catalog("theorem42_example").expected_index == 1
    assert catalog("theorem43_example").expected_index == 1
    assert catalog("clifford_torus").expected_index == 0
    assert catalog("whitney_sphere").expected_index is None
