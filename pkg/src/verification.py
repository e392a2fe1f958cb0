# src/verification.py
"""
Named identity suites behind `qps verify` and experiments/run_verification.py.

A suite maps (n, bounds) to a VerificationReport. Suites marked global do not
depend on n and run once. Tasks can be spread over a multiprocessing pool;
results are merged in task order, so the report is the same for any worker count.
"""

from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.cone_sets import INF, BoxRegion, ClopenSet, ExtNat
from src.config import Bounds
from src.errors import DomainError
from src.gadgets import verify_gadget_identities
from src.groupoid_algebra import adjoint, convolve, in_compact_ideal, indicator, is_homogeneous
from src.ktheory import (
    ConeVerdict,
    ElementaryProj,
    K0Class,
    class_of_elementary,
    class_of_tokens,
    composition_series,
    cone_contains,
    cone_witness,
    gl0_threshold,
    stable_rank,
    v,
)
from src.line_bundles import (
    class_of_L,
    closed_form_matches_recursion,
    nu,
    verify_line_bundle_isometries,
)
from src.matrix_ops import conjugate
from src.operator_model import matmul, mismatches, to_matrix, window_equal
from src.projection_monoid import (
    Ambient,
    N1Class,
    StandardSum,
    classify_n1,
    enumerate_reduced_sums,
    free_rank_threshold,
    omega,
    rho,
    rho_by_restriction,
    rho_injective,
    verify_absorption,
    witness_is_degree_zero,
)
from src.report import VerificationReport
from src.sampling import (
    random_diagonal_projection,
    random_element,
    random_unitary,
    sample_degree_elements,
)

SuiteFn = Callable[[int, Bounds], VerificationReport]


@dataclass(frozen=True)
class Suite:
    name: str
    fn: SuiteFn
    global_: bool = False
    min_n: int = 1
    max_n: Optional[int] = None
    # top dimension read from the bounds; such suites ignore the run's n
    top_n: Optional[Callable[[Bounds], int]] = None

    def dimensions(self, n: int, bounds: Bounds) -> range:
        if self.top_n is not None:
            top = self.top_n(bounds)
        else:
            top = n if self.max_n is None else min(n, self.max_n)
        return range(self.min_n, top + 1)

    def applies(self, n: int, bounds: Bounds) -> bool:
        return n in self.dimensions(n, bounds)


SUITES: Dict[str, Suite] = {}


def suite(name: str, global_: bool = False, min_n: int = 1, max_n: Optional[int] = None,
          top_n: Optional[Callable[[Bounds], int]] = None):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = Suite(name, fn, global_, min_n, max_n, top_n)
        return fn
    return register


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@suite("gadgets")
def gadgets_suite(n: int, bounds: Bounds) -> VerificationReport:
    return verify_gadget_identities(n, bounds)


@suite("linebundle", min_n=2)
def line_bundle_suite(n: int, bounds: Bounds) -> VerificationReport:
    return verify_line_bundle_isometries(
        n,
        range(-bounds.k_max, bounds.k_max + 1),
        range(1, bounds.r_max + 1),
        samples=bounds.samples_per_degree,
        seed=bounds.seed,
    )


@suite("absorption", max_n=3)
def absorption_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    subsets = [A.A for A in omega(n)]
    for sup in subsets:
        for sub in subsets:
            if not sub < sup:
                continue
            for l in range(1, bounds.weight_max + 1):
                for l_sub in range(1, bounds.weight_max + 1):
                    report.check("absorption.exact", verify_absorption(n, sup, l, sub, l_sub),
                                 n=n, sup=sorted(sup), sub=sorted(sub), l=l, l_sub=l_sub)
            if n >= 2:
                report.check("absorption.cpn_witness_leaves_degree_zero",
                             not witness_is_degree_zero(n, sub, sup),
                             n=n, sup=sorted(sup), sub=sorted(sub))
    report.note("Over the projective space the absorption witnesses are not degree 0; no absorption is applied there.")
    return report


@suite("rho", top_n=lambda b: b.rho_n_max)
def rho_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    for ambient in (Ambient.TOEPLITZ, Ambient.SPHERE):
        injective, count, collision = rho_injective(ambient, n, bounds.rho_weight_max)
        report.check("rho.injective", injective, "" if injective else f"collision {collision}",
                     n=n, ambient=ambient.value, sums=count)
    if n <= 3:
        for ambient in (Ambient.TOEPLITZ, Ambient.SPHERE):
            for s in enumerate_reduced_sums(ambient, n, min(2, bounds.rho_weight_max)):
                if s.is_empty():
                    continue
                report.check("rho.restriction_rank", rho_by_restriction(s) == rho(s),
                             n=n, ambient=ambient.value, sum=str(s))
    rng = np.random.default_rng(bounds.seed + n)
    indices = omega(n)
    for i in range(bounds.random_pairs // 4 or 1):
        s, t = (_random_sum(rng, n, indices, bounds.rho_weight_max) for _ in range(2))
        report.check("rho.additive", rho(s.dsum(t)) == rho(s) + rho(t), n=n, sample=i)
    return report


def _random_sum(rng: np.random.Generator, n: int, indices, weight_max: int) -> StandardSum:
    picks = rng.choice(len(indices), size=int(rng.integers(0, 3)), replace=True)
    return StandardSum.make(Ambient.TOEPLITZ, n,
                            [(indices[int(i)], int(rng.integers(1, weight_max + 1))) for i in picks])


@suite("nu", global_=True)
def nu_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    ok, first_bad = True, None
    for m in range(bounds.nu_max + 1):
        for l in range(1, bounds.nu_max + 1):
            try:
                nu(m, l)
            except ValueError as exc:
                ok, first_bad = False, str(exc)
                break
        if not ok:
            break
    report.check("nu.closed_form", ok, first_bad or "", m_max=bounds.nu_max, l_max=bounds.nu_max)
    pascal = all(nu(m, l) == nu(m - 1, l) + nu(m, l - 1)
                 for m in range(2, bounds.nu_max + 1) for l in range(2, bounds.nu_max + 1))
    report.check("nu.pascal", pascal, m_max=bounds.nu_max, l_max=bounds.nu_max)
    report.check("nu.spot", nu(2, 2) == 3 and nu(2, 3) == 6 and nu(7, 1) == 1)
    return report


@suite("splitting", global_=True)
def closed_form_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    for dim in bounds.split_n:
        for k in range(bounds.split_k_min, 0):
            report.check("splitting.closed_form_matches_recursion", closed_form_matches_recursion(dim, k), n=dim, k=k)
    for dim in (2, 3, 4):
        for k in range(-5, 6):
            rank = class_of_L(dim, k).rank
            report.check("splitting.rank_one", rank == 1, f"rank {rank}", n=dim, k=k)
    report.note("For n = 2 and k < 0 the line bundle summands come from the recursion alone.")
    return report


@suite("k0_consistency", global_=True)
def consistency_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    combo = class_of_L(3, 1) + class_of_L(3, -1) - 2 * K0Class.basis(3, 3)
    report.check("k0_consistency.line_bundle_sum", combo == K0Class.of((1, 0, 0)), f"got {combo}", n=3)
    return report


@suite("oracle", max_n=1)
def oracle_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    rng = np.random.default_rng(bounds.seed)
    size, window = 16, 8
    for i in range(bounds.random_pairs):
        f = random_element(1, rng, max_shift=5, window=8)
        g = random_element(1, rng, max_shift=5, window=8)
        lhs = to_matrix(convolve(f, g), size)
        rhs = matmul(to_matrix(f, size), to_matrix(g, size))
        ok = window_equal(lhs, rhs, window)
        report.check("oracle.convolution", ok, "" if ok else f"entries {mismatches(lhs, rhs, window)[:3]}",
                     sample=i)
    return report


@suite("classify", max_n=1)
def classify_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    rng = np.random.default_rng(bounds.seed + 1)
    for i in range(bounds.random_projections):
        size = int(rng.integers(1, 4))
        p, symbol_rank, finite_rank = random_diagonal_projection(rng, size)
        u = random_unitary(rng, size)
        expected = N1Class(symbol_rank, INF) if symbol_rank else N1Class(0, ExtNat(finite_rank))
        got = classify_n1(conjugate(u, p))
        report.check("classify.n1", got == expected, f"got {got}, expected {expected}", sample=i, size=size)
    return report


@suite("k0", min_n=2)
def k0_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    for k in range(1, 11):
        c = v(n, k)
        report.check("k0.v_pattern", c.coords[-2:] == (-k, 1), f"got {c}", n=n, k=k)
        if n == 2:
            report.check("k0.v_two", c == K0Class.of((-k, 1)), n=n, k=k)
    for j in range(1, n + 1):
        e = class_of_elementary(ElementaryProj(n, j, 0))
        report.check("k0.generator", e == K0Class.basis(n, j), f"got {e}", n=n, slot=j)
    rng = np.random.default_rng(bounds.seed + 10 * n)
    for i in range(bounds.random_pairs // 4 or 1):
        c = K0Class.of([int(x) for x in rng.integers(-4, 5, size=n)])
        verdict = cone_contains(c)
        if verdict == ConeVerdict.IN:
            witness = cone_witness(c)
            report.check("k0.cone_witness", class_of_tokens(n, witness) == c, n=n, coords=list(c.coords))
            bumped = c + K0Class.basis(n, int(rng.integers(1, n + 1)))
            report.check("k0.cone_closed", cone_contains(bumped) == ConeVerdict.IN, n=n, coords=list(c.coords))
        elif verdict == ConeVerdict.NOT_IN:
            report.check("k0.cone_rank_obstruction", c.rank < 0, n=n, coords=list(c.coords))
    return report


@suite("structure", global_=True)
def structure_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    table = {1: 2, 2: 2, 3: 2, 4: 3, 5: 3}
    report.check("structure.stable_rank", all(stable_rank(k) == sr for k, sr in table.items()))
    report.check("structure.gl0_threshold", gl0_threshold(2) == 4)
    report.check("structure.free_rank", all(
        free_rank_threshold(a, k) == (k - 1) // 2 + 3
        for a in (Ambient.TOEPLITZ, Ambient.SPHERE) for k in range(1, 8)
    ))
    for k in range(1, 6):
        layers = composition_series(k)
        ok = sum(layer.multiplicity for layer in layers) == 2 ** k and len(layers) == k + 1
        report.check("structure.composition_series", ok, n=k)
    return report


@suite("algebra")
def algebra_suite(n: int, bounds: Bounds) -> VerificationReport:
    report = VerificationReport()
    rng = np.random.default_rng(bounds.seed + 100 * n)
    small = dict(max_terms=2, max_shift=3, window=5)
    for i in range(bounds.random_triples):
        f, g, h = (random_element(n, rng, **small) for _ in range(3))
        report.check("algebra.associative",
                     convolve(convolve(f, g), h) == convolve(f, convolve(g, h)), n=n, sample=i)
    for i in range(bounds.random_pairs):
        f, g = (random_element(n, rng, **small) for _ in range(2))
        report.check("algebra.adjoint_reverses",
                     adjoint(convolve(f, g)) == convolve(adjoint(g), adjoint(f)), n=n, sample=i)
        report.check("algebra.adjoint_involutive", adjoint(adjoint(f)) == f, n=n, sample=i)
    for d1 in (-1, 0, 2):
        for d2 in (-2, 1):
            f = sample_degree_elements(n, d1, 1, bounds.seed + 3)[0]
            g = sample_degree_elements(n, d2, 1, bounds.seed + 4)[0]
            report.check("algebra.grading", is_homogeneous(convolve(f, g), d1 + d2), n=n, d1=d1, d2=d2)
    box = BoxRegion.from_box(tuple(ClopenSet.interval(0, 3) for _ in range(n)))
    compact = indicator(n, (1,) + (0,) * (n - 1), box)
    for i in range(max(1, bounds.random_pairs // 4)):
        f = random_element(n, rng, **small)
        ok = in_compact_ideal(convolve(f, compact)) and in_compact_ideal(convolve(compact, f))
        report.check("algebra.compact_ideal", ok, n=n, sample=i)
    return report


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------

Task = Tuple[str, int, Bounds]


def plan(n: int, bounds: Bounds, names: Optional[Sequence[str]] = None) -> List[Task]:
    """(suite, n) tasks for ambient dimensions 1..n; global suites appear once.

    Suites with a bounds-driven top dimension (rho) run 1..top regardless of n.
    """
    unknown = [name for name in (names or ()) if name not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite(s): {', '.join(unknown)} (have: {', '.join(SUITES)})")
    selected = [SUITES[name] for name in (names or SUITES)]
    tasks: List[Task] = []
    for s in selected:
        if s.global_:
            tasks.append((s.name, n, bounds))
            continue
        tasks.extend((s.name, dim, bounds) for dim in s.dimensions(n, bounds))
    return tasks


def _run_task(task: Task) -> VerificationReport:
    name, n, bounds = task
    return SUITES[name].fn(n, bounds)


def run_suites(
    n: int,
    bounds: Bounds,
    names: Optional[Sequence[str]] = None,
    workers: Optional[int] = None,
    on_task: Optional[Callable[[Task, VerificationReport], None]] = None,
) -> VerificationReport:
    tasks = plan(n, bounds, names)
    workers = bounds.workers if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=workers) as pool:
            parts = pool.map(_run_task, tasks)
    else:
        parts = [_run_task(t) for t in tasks]
    report = VerificationReport()
    for task, part in zip(tasks, parts):
        if on_task:
            on_task(task, part)
        report.merge(part)
    return report
