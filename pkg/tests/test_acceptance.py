"""Acceptance gate: eleven primary checks, one pass or fail line each.

Every test drives the same verification machinery the CLI exposes, prints
the underlying record lines for the log, and asserts the stated error
bound together with its wall clock budget.
"""

import time

import pytest

from rsclifford.suites import (
    RunConfig,
    calibration_check,
    run_algebra,
    run_cauchy,
    run_derivative,
    run_fischer,
    run_hodge,
    run_mvp,
    run_plemelj,
    run_teodorescu,
    run_zonal,
)


def show(records):
    for r in records:
        print(r.line())


def by_name(records, name):
    return next(r for r in records if r.name == name)


@pytest.fixture(scope="module")
def config():
    return RunConfig()


@pytest.fixture(scope="module")
def algebra_records(config):
    return run_algebra(config)


@pytest.fixture(scope="module")
def cauchy_records(config):
    return run_cauchy(config)


@pytest.fixture(scope="module")
def plemelj_records(config):
    return run_plemelj(config)


@pytest.fixture(scope="module")
def teodorescu_records(config):
    return run_teodorescu(config)


@pytest.fixture(scope="module")
def derivative_records(config):
    return run_derivative(config)


@pytest.fixture(scope="module")
def hodge_records(config):
    return run_hodge(config)


def test_01_clifford_algebra_relations(algebra_records):
    wanted = ["anticommutation", "associativity", "conjugation-positivity"]
    records = [by_name(algebra_records, n) for n in wanted]
    show(records)
    for r in records:
        assert r.passed
        assert r.error == 0.0
    assert by_name(algebra_records, "associativity").parameters["triples"] == 100
    assert sum(r.runtime for r in records) < 1.0


def test_02_dirac_square_is_negative_laplacian(algebra_records):
    r = by_name(algebra_records, "dirac-squared")
    show([r])
    assert r.passed
    assert r.error == 0.0
    assert r.parameters == {"m": 3, "polynomials": 50, "max_degree": 6}
    assert r.runtime < 5.0


def test_03_fischer_decomposition():
    t0 = time.time()
    records = []
    for m in (3, 4):
        for k in range(4):
            records.extend(run_fischer(RunConfig(m=m, k=k)))
    elapsed = time.time() - t0
    show(records)
    assert all(r.passed for r in records)
    assert all(r.error == 0.0 for r in records if r.error is not None)
    names = {r.name for r in records}
    assert {"projection-idempotent", "projection-monogenic", "dimension-split"} <= names
    assert "complement-annihilated" in names
    assert elapsed < 60.0


def test_04_zonal_reproducing_kernel():
    t0 = time.time()
    records = run_zonal(RunConfig(m=4, k=2))
    elapsed = time.time() - t0
    show(records)
    assert all(r.passed for r in records)
    assert by_name(records, "reproduction").error == 0.0
    assert by_name(records, "annihilation").error == 0.0
    assert elapsed < 120.0


def test_05_cauchy_calibration_factor(config):
    r = calibration_check(config)
    show([r])
    assert r.passed
    assert abs(r.calibration_factor - 1.0) <= 1e-6


def test_06_mean_value_property():
    t0 = time.time()
    records = []
    for m in (3, 4):
        for k in (1, 2):
            records.extend(run_mvp(RunConfig(m=m, k=k, d=2)))
    elapsed = time.time() - t0
    show(records)
    assert len(records) == 12
    for r in records:
        assert r.passed
        assert r.error == 0.0
        assert r.parameters["forms"] == "sphere+ball"
    assert elapsed < 120.0


def test_07_cauchy_and_plemelj_boundary(cauchy_records, plemelj_records):
    records = cauchy_records + plemelj_records
    show(records)
    interior = by_name(cauchy_records, "interior-reproduction")
    assert interior.passed
    assert interior.error <= 1e-6
    decay = by_name(cauchy_records, "exterior-decay")
    assert decay.passed
    errs = decay.details["refinement_errors"]
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] <= 1e-3
    half = by_name(plemelj_records, "principal-value-half-trace")
    assert half.passed
    assert half.error <= 1e-3
    limits = by_name(plemelj_records, "one-sided-limits")
    assert limits.passed
    assert limits.details["jump_error"] <= 1e-3
    assert sum(r.runtime for r in records) < 600.0


def test_08_teodorescu_right_inverse(teodorescu_records):
    show(teodorescu_records)
    bump = by_name(teodorescu_records, "right-inverse-bump")
    assert bump.passed
    assert bump.error <= 1e-3
    assert bump.parameters["points"] == 10
    assert all(r.passed for r in teodorescu_records)
    assert sum(r.runtime for r in teodorescu_records) < 1200.0


def test_09_teodorescu_derivative(derivative_records):
    r = by_name(derivative_records, "closed-form-vs-finite-difference")
    show([r])
    assert r.passed
    assert r.error <= 1e-3
    assert r.parameters["points"] == 5
    assert r.runtime < 1200.0


def test_10_hodge_orthogonality_and_bergman(hodge_records):
    wanted = [
        "kernel-image-orthogonality",
        "negative-control",
        "bergman-projection",
        "gram-positive-definite",
        "coefficient-roundtrip",
    ]
    records = [by_name(hodge_records, n) for n in wanted]
    show(records)
    for r in records:
        assert r.passed
    assert by_name(records, "kernel-image-orthogonality").error == 0.0
    assert by_name(records, "negative-control").error > 1e-3
    bergman = by_name(records, "bergman-projection")
    assert bergman.details["idempotent"]
    assert bergman.details["orthogonal_split"]
    assert sum(r.runtime for r in records) < 300.0


def test_11_pointwise_l2_diagnostic(hodge_records):
    stability = by_name(hodge_records, "diagnostic-grid-stability")
    nested = by_name(hodge_records, "diagnostic-nested-monotone")
    constant = by_name(hodge_records, "diagnostic-empirical-constant")
    show([stability, nested, constant])
    assert stability.passed
    assert stability.error <= 0.10
    assert nested.passed
    assert nested.details["half_ball"] <= nested.details["nine_tenths_ball"]
    assert constant.passed is None
    assert constant.details["max_ratio"] > 0
    runtime = stability.runtime + nested.runtime + constant.runtime
    assert runtime < 120.0
