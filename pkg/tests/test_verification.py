import pytest

from src.config import Bounds, load_bounds
from src.errors import DomainError
from src.verification import SUITES, plan, run_suites

TINY = Bounds(
    name="tiny",
    k_max=1,
    r_max=1,
    kn_max=2,
    N_max=1,
    l_max=1,
    random_pairs=4,
    random_triples=2,
    random_projections=4,
    samples_per_degree=1,
    weight_max=1,
    rho_n_max=2,
    rho_weight_max=1,
    nu_max=6,
    split_n=(3,),
    split_k_min=-2,
)


def test_registry():
    assert {"gadgets", "linebundle", "absorption", "rho", "nu", "k0", "algebra"} <= set(SUITES)
    assert SUITES["nu"].global_
    assert SUITES["rho"].applies(2, TINY) and not SUITES["rho"].applies(3, TINY)


def test_plan_respects_ranges():
    tasks = plan(3, TINY, ["gadgets", "nu", "linebundle", "oracle"])
    assert [(name, n) for name, n, _ in tasks] == [
        ("gadgets", 1), ("gadgets", 2), ("gadgets", 3),
        ("nu", 3),
        ("linebundle", 2), ("linebundle", 3),
        ("oracle", 1),
    ]
    with pytest.raises(DomainError):
        plan(2, TINY, ["nope"])


def test_rho_range_follows_bounds_not_n():
    assert [n for _, n, _ in plan(1, TINY, ["rho"])] == [1, 2]
    assert [n for _, n, _ in plan(3, TINY, ["rho"])] == [1, 2]


def test_acceptance_plan_reaches_rho_at_four():
    bounds = load_bounds("acceptance")
    tasks = [(name, n) for name, n, _ in plan(bounds.n_max, bounds)]
    assert ("rho", 4) in tasks
    assert ("rho", 5) not in tasks
    assert ("gadgets", 4) not in tasks


def test_global_suites_pass():
    report = run_suites(2, TINY, ["nu", "splitting", "k0_consistency", "structure"])
    assert report.passed, [r.label() for r in report.failures]
    groups = report.get_summary()["groups"]
    assert set(groups) == {"nu", "splitting", "k0_consistency", "structure"}


@pytest.mark.parametrize("name", ["oracle", "classify", "absorption", "rho", "k0", "algebra"])
def test_suite_passes_at_small_bounds(name):
    report = run_suites(2, TINY, [name])
    assert report.results
    assert report.passed, [r.label() for r in report.failures]


def test_progress_callback_sees_tasks_in_order():
    seen = []
    run_suites(2, TINY, ["nu", "gadgets"], on_task=lambda task, part: seen.append(task[:2]))
    assert seen == [("nu", 2), ("gadgets", 1), ("gadgets", 2)]


def test_parallel_run_matches_serial():
    serial = run_suites(2, TINY, ["nu", "structure", "k0"], workers=1)
    parallel = run_suites(2, TINY, ["nu", "structure", "k0"], workers=2)
    assert parallel.to_dict() == serial.to_dict()
