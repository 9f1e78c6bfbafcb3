"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances are fixed here, not configurable.
"""

import time

import numpy as np
import pytest

from fwsubmix import (
    NonObliviousWrapper,
    QuadraticObjective,
    SolverConfig,
    check_concave,
    check_dr_submodular,
    check_guarantee,
    estimate_smoothness,
    gradient_combining_bound,
    gradient_combining_fw,
    gradient_rel_error,
    greedy_bound,
    greedy_fw,
    grid_maximize,
    make_bound_instance,
    make_gaussian_kernel,
    make_qp_instance,
    measured_bound,
    measured_greedy_fw,
    non_oblivious_bound,
    non_oblivious_fw,
    standard_fw,
)
from fwsubmix.experiments import (
    ExperimentConfig,
    run_interpolation_experiment,
    run_qp_experiment,
)
from fwsubmix.objectives import DOptimalDesign, LogBarrier, SimilarityConcave, SoftmaxExtension
from fwsubmix.rng import stream
from oracle_utils import brute_force_lmo_value

BOUND_SLACK = 1e-6


def _report(criterion: str, detail: str) -> None:
    print(f"[PASS] {criterion}: {detail}")


def _instance_data(seed, monotone_g=True, monotone_c=True):
    problem = make_bound_instance(4, 2, seed, monotone_g, monotone_c)
    obj = problem.objective
    L = estimate_smoothness(lambda x: obj.gradient(x), np.zeros(4), np.ones(4))
    D = problem.region.diameter_bound()
    oracle = grid_maximize(problem, 0.05)
    return problem, L, D, oracle


def test_criterion_1_greedy_guarantee():
    t0 = time.perf_counter()
    margins = []
    for seed in (0, 1, 2):
        problem, L, D, oracle = _instance_data(seed)
        report = greedy_fw(problem, SolverConfig(epsilon=0.05))
        check = check_guarantee(report, greedy_bound(0.05, L, D), oracle, BOUND_SLACK)
        assert check.passed, f"seed {seed}: {check.achieved} < {check.required}"
        margins.append(check.achieved - check.required)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _report(
        "criterion 1 (greedy guarantee, 3 seeds)",
        f"min margin {min(margins):.4f}, {elapsed:.1f}s",
    )


@pytest.mark.parametrize(
    "monotone_g,monotone_c",
    [(True, True), (True, False), (False, True), (False, False)],
    ids=["mono-mono", "mono-gen", "gen-mono", "gen-gen"],
)
def test_criterion_2_measured_guarantee_rows(monotone_g, monotone_c):
    t0 = time.perf_counter()
    margins = []
    for seed in (0, 1, 2):
        problem, L, D, oracle = _instance_data(seed, monotone_g, monotone_c)
        report = measured_greedy_fw(problem, SolverConfig(epsilon=0.05))
        bound = measured_bound(monotone_g, monotone_c, 0.05, L, D)
        check = check_guarantee(report, bound, oracle, BOUND_SLACK)
        assert check.passed, f"seed {seed}: {check.achieved} < {check.required}"
        margins.append(check.achieved - check.required)
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _report(
        f"criterion 2 (measured guarantee, row {bound.source_row})",
        f"min margin {min(margins):.4f}, {elapsed:.1f}s",
    )


def test_criterion_3_gradient_combining_guarantee():
    t0 = time.perf_counter()
    margins = []
    for seed in (0, 1, 2):
        problem, L, D, oracle = _instance_data(seed)
        report = gradient_combining_fw(problem, SolverConfig(epsilon=0.2))
        assert report.eta is not None and report.eta >= 0.0
        bound = gradient_combining_bound(0.2, report.eta, L, D)
        check = check_guarantee(report, bound, oracle, BOUND_SLACK)
        assert check.passed, f"seed {seed}: {check.achieved} < {check.required}"
        margins.append(check.achieved - check.required)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(
        "criterion 3 (gradient-combining guarantee, certified eta)",
        f"min margin {min(margins):.4f}, {elapsed:.1f}s",
    )


def test_criterion_4_non_oblivious_guarantee():
    t0 = time.perf_counter()
    margins = []
    for seed in (0, 1, 2):
        problem, L, D, oracle = _instance_data(seed)
        report = non_oblivious_fw(problem, SolverConfig(epsilon=0.1))
        check = check_guarantee(report, non_oblivious_bound(0.1, L, D), oracle, BOUND_SLACK)
        assert check.passed, f"seed {seed}: {check.achieved} < {check.required}"
        margins.append(check.achieved - check.required)
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report(
        "criterion 4 (non-oblivious guarantee)",
        f"min margin {min(margins):.4f}, {elapsed:.1f}s",
    )


def test_criterion_5_measured_iterate_cap():
    eps = 0.1
    worst = -np.inf
    for seed in range(10):
        problem = make_bound_instance(4, 2, seed)
        report = measured_greedy_fw(problem, SolverConfig(epsilon=eps))
        for i, iterate in enumerate(report.iterates):
            cap = 1.0 - (1.0 - eps) ** i + 1e-12
            excess = float(np.max(iterate)) - cap
            worst = max(worst, excess)
            assert excess <= 0.0, f"seed {seed}, iteration {i}"
    _report("criterion 5 (iterate cap, 10 runs)", f"worst slack {worst:.2e}")


def _library_objectives():
    """(name, value, gradient, sample-box, dr-submodular?, concave?)."""
    G, C, region = make_qp_instance(8, 4, 0)
    pts = stream(6, 0).uniform(0.0, 1.0, size=(3, 2))
    L3 = make_gaussian_kernel(pts, 0.5)
    soft = SoftmaxExtension(L3)
    pts5 = stream(6, 1).uniform(0.0, 1.0, size=(5, 2))
    sim = SimilarityConcave(make_gaussian_kernel(pts5, 0.5))
    dopt = DOptimalDesign(stream(3, 0).standard_normal((8, 8)))
    barrier = LogBarrier(0.1, 8)
    problem = make_bound_instance(4, 2, 0)
    wrapper = NonObliviousWrapper(
        problem.objective.value_g, problem.objective.gradient_g, 0.25, 4
    )
    cube = lambda n, lo=0.05, hi=0.95: (np.full(n, lo), np.full(n, hi))
    shifted = (np.full(8, 1.05), np.full(8, 1.95))
    return [
        ("quadratic-g", G.value, G.gradient, cube(8), True, False),
        ("quadratic-c", C.value, C.gradient, cube(8), False, True),
        ("softmax", soft.value, soft.gradient, cube(3), True, False),
        ("similarity", sim.value, sim.gradient, cube(5), False, True),
        ("doptimal", dopt.value, dopt.gradient, shifted, True, True),
        ("logbarrier", barrier.value, barrier.gradient, shifted, False, True),
        ("nonoblivious", wrapper.value, wrapper.gradient, cube(4), True, False),
    ]


def test_criterion_6_gradient_fidelity_and_structure():
    worst_overall = 0.0
    for name, val, grad, (lo, hi), is_dr, is_concave in _library_objectives():
        rng = stream(99, 0)
        worst = 0.0
        for _ in range(100):
            x = lo + rng.uniform(0.0, 1.0, lo.shape[0]) * (hi - lo)
            worst = max(worst, gradient_rel_error(val, grad, x))
        assert worst <= 1e-4, f"{name}: finite-difference mismatch {worst:.2e}"
        worst_overall = max(worst_overall, worst)
        if is_dr:
            assert check_dr_submodular(grad, lo, hi).passed, name
        if is_concave:
            assert check_concave(val, lo, hi).passed, name

    # negative controls: the probes must be able to fail
    bad_quad = QuadraticObjective([[0.0, 1.0], [1.0, 0.0]], np.zeros(2))
    assert not check_dr_submodular(bad_quad.gradient, np.zeros(2), np.ones(2)).passed
    assert not check_concave(lambda x: float(x @ x), np.zeros(2), np.ones(2)).passed
    _report(
        "criterion 6 (gradient fidelity + structure checks)",
        f"max rel err {worst_overall:.2e}; negative controls fail as required",
    )


def test_criterion_7_lmo_against_vertex_enumeration():
    from fwsubmix.regions import Polytope

    rng = stream(7, 0)
    worst = 0.0
    for trial in range(50):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 6))
        A = rng.uniform(0.05, 1.05, size=(m, n))
        b = rng.uniform(0.5, 1.5, m)
        u = rng.uniform(0.2, 1.2, n)
        region = Polytope(A, b, u)
        c = rng.uniform(-1.0, 1.0, n)
        value = region.lmo(c).objective_value
        expected = brute_force_lmo_value(c, A, b, u)
        worst = max(worst, abs(value - expected))
        assert abs(value - expected) <= 1e-8, f"trial {trial}"
    _report("criterion 7 (LMO vs vertex enumeration, 50 polytopes)", f"max gap {worst:.2e}")


def test_criterion_8_qp_reproduction(tmp_path):
    t0 = time.perf_counter()
    algos = ("greedy_fw", "non_oblivious_fw", "standard_fw")
    seeds = tuple(range(50))
    res4 = run_qp_experiment(
        ExperimentConfig(
            experiment="qp", n=8, m=4, seeds=seeds, algorithms=algos,
            iterations=50, output_dir=str(tmp_path),
        )
    )
    res12 = run_qp_experiment(
        ExperimentConfig(
            experiment="qp", n=8, m=12, seeds=seeds, algorithms=algos,
            iterations=50, output_dir=str(tmp_path),
        )
    )
    fw_mean = res4.final_means["standard_fw"]
    assert res4.final_means["greedy_fw"] >= fw_mean
    assert res4.final_means["non_oblivious_fw"] >= fw_mean
    for algo in algos:
        assert res12.final_means[algo] <= res4.final_means[algo]
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _report(
        "criterion 8 (QP reproduction, 50 seeds)",
        f"means m=4 {res4.final_means}, m=12 below m=4, {elapsed:.1f}s",
    )


def test_criterion_9_interpolation(tmp_path):
    t0 = time.perf_counter()

    def run(lam):
        return run_interpolation_experiment(
            ExperimentConfig(
                experiment="interpolation", lam=lam, sigma=0.04, budget=25.0,
                side=20, iterations=150, step=0.1, seeds=(0,),
                output_dir=str(tmp_path),
            )
        )

    clustered = run(0.0)
    spread = run(1.0)
    assert clustered.similarity_score > spread.similarity_score
    assert clustered.max_l1 <= 25.0 + 1e-8
    assert spread.max_l1 <= 25.0 + 1e-8
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    _report(
        "criterion 9 (interpolation, 20x20 grid)",
        f"similarity {clustered.similarity_score:.3f} > {spread.similarity_score:.3f}, "
        f"l1 cap satisfied, {elapsed:.1f}s",
    )


def test_criterion_10_deterministic_csv(tmp_path):
    cfg = ExperimentConfig(
        experiment="qp", n=8, m=4, seeds=(0, 1),
        algorithms=("greedy_fw", "standard_fw", "pga"),
        iterations=5, output_dir=str(tmp_path),
    )
    first = run_qp_experiment(cfg).csv_path.read_bytes()
    second = run_qp_experiment(cfg).csv_path.read_bytes()
    assert first == second
    _report("criterion 10 (byte-identical CSV)", f"{len(first)} bytes reproduced")
