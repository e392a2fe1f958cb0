# src/gadgets.py
"""
Named operators over the Toeplitz cube and their certified identities.

Every builder returns an exact AlgMatrix and certifies it before handing it out:
unitaries are checked with u u* = u* u = 1, the χ partial isometries with
a a* a = a and homogeneity of the expected degree. A failure here means the
construction itself is wrong and raises CertificationError.

Gadgets acting on one tensor slot are the identity on all other coordinates.
Matrix units e_ij use 0-based basis indices.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional

import numpy as np

from src.cone_sets import BoxRegion, ClopenSet, product_box
from src.config import Bounds
from src.errors import CertificationError, DomainError
from src.groupoid_algebra import (
    AlgebraElement,
    convolve,
    degree_split,
    diagonal,
    identity,
    indicator,
    is_homogeneous,
    slot_element,
    tensor,
    zero,
)
from src.matrix_ops import (
    AlgMatrix,
    Mode,
    conjugate,
    diag,
    equal,
    first_difference,
    is_partial_isometry,
    is_projection,
    is_self_adjoint,
    is_unitary,
    mat_adjoint,
    matrix_is_degree_zero,
)
from src.report import CheckResult, VerificationReport


class GadgetName(str, Enum):
    SHIFT = "Shift"
    PROJ_FINITE = "ProjFinite"
    PROJ_COFINITE = "ProjCofinite"
    MATRIX_UNIT = "MatrixUnit"
    STANDARD_PROJ = "StandardProj"
    U_PROP3 = "U_prop3"
    U_KN = "U_kN"
    U_L = "U_l"
    U_K = "u_k"
    CHI_B = "ChiB"
    CHI_B_PRIME = "ChiBprime"


UNITARY_GADGETS = {GadgetName.U_PROP3, GadgetName.U_KN, GadgetName.U_L, GadgetName.U_K}


@dataclass(frozen=True)
class GadgetSpec:
    name: GadgetName
    n: int = 1
    slot: Optional[int] = None
    k: Optional[int] = None
    N: Optional[int] = None
    l: Optional[int] = None
    A: Optional[FrozenSet[int]] = None
    i: Optional[int] = None
    j: Optional[int] = None
    r: Optional[int] = None

    def params(self) -> dict:
        out = {}
        for key in ("slot", "k", "N", "l", "i", "j", "r"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.A is not None:
            out["A"] = sorted(self.A)
        return out


# ---------------------------------------------------------------------------
# one-coordinate building blocks
# ---------------------------------------------------------------------------

def shift_power(p: int) -> AlgebraElement:
    """S^p for p >= 0, (S*)^|p| for p < 0."""
    return indicator(1, (p,), BoxRegion.full(1))


def proj_finite(m: int) -> AlgebraElement:
    """P_m, the projection onto the first m basis vectors."""
    return diagonal(1, {0: ClopenSet.interval(0, m)})


def proj_cofinite(m: int) -> AlgebraElement:
    """P_{-m} = I - P_m."""
    return diagonal(1, {0: ClopenSet.tail_from(m)})


def proj_signed(k: int) -> AlgebraElement:
    """P_k for k > 0, P_{-|k|} for k < 0, and I for k = 0."""
    return proj_finite(k) if k > 0 else proj_cofinite(-k)


def matrix_unit(i: int, j: int) -> AlgebraElement:
    return indicator(1, (i - j,), BoxRegion.from_box((ClopenSet.point(j),)))


def on_slot(n: int, slot: int, f: AlgebraElement) -> AlgebraElement:
    return slot_element(n, slot, f)


def hat_tensor(n: int, f: AlgebraElement) -> AlgebraElement:
    """Î ⊗ f: identity on the first n-1 coordinates, f on the last."""
    return on_slot(n, n, f)


def standard_projection(n: int, A) -> AlgebraElement:
    """Indicator of the box with coordinate i full for i ∈ A and {0} otherwise."""
    A = set(A)
    return diagonal(n, {i - 1: ClopenSet.point(0) for i in range(1, n + 1) if i not in A})


def elementary_element(n: int, slot: int, k: int) -> AlgebraElement:
    """I^(slot-1) ⊗ P_k ⊗ P_1^(n-slot)."""
    coords = {slot - 1: proj_signed_set(k)}
    coords.update({i: ClopenSet.point(0) for i in range(slot, n)})
    return diagonal(n, coords)


def proj_signed_set(k: int) -> ClopenSet:
    return ClopenSet.interval(0, k) if k > 0 else ClopenSet.tail_from(-k)


def iota_element(f: AlgebraElement) -> AlgebraElement:
    """The embedding p ↦ p ⊗ P_1 into one more coordinate."""
    return tensor(f, proj_finite(1))


def iota_matrix(a: AlgMatrix, unitary: bool = False) -> AlgMatrix:
    """
    Entrywise ι; for a unitary the complement (I ⊗ P_{-1}) is added on the diagonal
    so the image stays unitary.
    """
    out = a.map(iota_element)
    if not unitary:
        return out
    rest = tensor(identity(a.n), proj_cofinite(1))
    grid = [list(r) for r in out.entries]
    for i in range(a.rows):
        grid[i][i] = grid[i][i] + rest
    return AlgMatrix.of(grid)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _require(condition: bool, message: str):
    if not condition:
        raise DomainError(message)


def _slot(spec: GadgetSpec) -> int:
    slot = spec.n if spec.slot is None else spec.slot
    _require(1 <= slot <= spec.n, f"slot {slot} outside 1..{spec.n}")
    return slot


def _u_prop3(n: int, slot: int) -> AlgMatrix:
    place = lambda f: on_slot(n, slot, f)
    return AlgMatrix.of([
        [place(shift_power(-1)), zero(n)],
        [place(proj_finite(1)), place(shift_power(1))],
    ])


def _u_kn(n: int, slot: int, k: int, big_n: int) -> AlgMatrix:
    place = lambda f: on_slot(n, slot, f)
    grid = [[zero(n)] * k for _ in range(k)]
    for j in range(k - 1):
        grid[j][j] = place(shift_power(-big_n))
        grid[k - 1][j] = place(convolve(shift_power(j * big_n), proj_finite(big_n)))
    grid[k - 1][k - 1] = place(shift_power((k - 1) * big_n))
    return AlgMatrix.of(grid)


def _u_l(n: int, slot: int, k: int, l: int) -> AlgMatrix:
    place = lambda f: on_slot(n, slot, f)
    grid = [[zero(n)] * k for _ in range(k)]
    grid[0][0] = place(shift_power(l))
    grid[0][k - 1] = place(proj_finite(l))
    for j in range(1, k - 1):
        grid[j][j] = identity(n)
    grid[k - 1][k - 1] = place(shift_power(-l))
    return AlgMatrix.of(grid)


def _u_k(n: int, k: int) -> AlgMatrix:
    head = identity(n - 2)
    pair = lambda a, b: tensor(head, tensor(a, b))
    return AlgMatrix.of([
        [pair(identity(1), proj_finite(k)), pair(shift_power(-k), shift_power(k))],
        [pair(shift_power(k), shift_power(-k)), pair(proj_finite(k), identity(1))],
    ])


def chi_b(n: int, k: int) -> AlgebraElement:
    """Translation k in the last coordinate on every legal source."""
    return indicator(n, (0,) * (n - 1) + (k,), BoxRegion.full(n))


def chi_b_prime(n: int, r: int) -> AlgebraElement:
    """Translation -r in coordinate n-1 on Zbar^(n-2) × [r,∞] × {0}."""
    m = (0,) * (n - 2) + (-r, 0)
    region = product_box(n, {n - 2: ClopenSet.tail_from(r), n - 1: ClopenSet.point(0)})
    return indicator(n, m, region)


def _construct(spec: GadgetSpec) -> AlgMatrix:
    n = spec.n
    _require(n >= 1, f"ambient n must be >= 1, got {n}")
    name = spec.name
    if name == GadgetName.SHIFT:
        return AlgMatrix.scalar(on_slot(n, _slot(spec), shift_power(1 if spec.k is None else spec.k)))
    if name == GadgetName.PROJ_FINITE:
        _require(spec.k is not None and spec.k >= 0, "ProjFinite needs k >= 0")
        return AlgMatrix.scalar(on_slot(n, _slot(spec), proj_finite(spec.k)))
    if name == GadgetName.PROJ_COFINITE:
        _require(spec.k is not None and spec.k >= 0, "ProjCofinite needs k >= 0")
        return AlgMatrix.scalar(on_slot(n, _slot(spec), proj_cofinite(spec.k)))
    if name == GadgetName.MATRIX_UNIT:
        _require(spec.i is not None and spec.j is not None and spec.i >= 0 and spec.j >= 0,
                 "MatrixUnit needs i, j >= 0")
        return AlgMatrix.scalar(on_slot(n, _slot(spec), matrix_unit(spec.i, spec.j)))
    if name == GadgetName.STANDARD_PROJ:
        A = frozenset(spec.A or ())
        _require(all(1 <= a <= n for a in A), f"A = {sorted(A)} not a subset of 1..{n}")
        l = 1 if spec.l is None else spec.l
        _require(l >= 1, "StandardProj needs l >= 1")
        return diag(*[standard_projection(n, A)] * l)
    if name == GadgetName.U_PROP3:
        return _u_prop3(n, _slot(spec))
    if name == GadgetName.U_KN:
        _require(spec.k is not None and spec.k >= 1, "U_kN needs k >= 1")
        _require(spec.N is not None and spec.N >= 1, "U_kN needs N >= 1")
        return _u_kn(n, _slot(spec), spec.k, spec.N)
    if name == GadgetName.U_L:
        _require(spec.k is not None and spec.k >= 2, "U_l needs matrix size k >= 2")
        _require(spec.l is not None and spec.l >= 1, "U_l needs l >= 1")
        return _u_l(n, _slot(spec), spec.k, spec.l)
    if name == GadgetName.U_K:
        _require(n >= 2, "u_k needs n >= 2")
        _require(spec.k is not None and spec.k >= 0, "u_k needs k >= 0")
        return _u_k(n, spec.k)
    if name == GadgetName.CHI_B:
        _require(spec.k is not None, "ChiB needs k")
        return AlgMatrix.scalar(chi_b(n, spec.k))
    if name == GadgetName.CHI_B_PRIME:
        _require(n >= 2, "ChiBprime needs n >= 2")
        _require(spec.r is not None and spec.r > 0, "ChiBprime needs r > 0")
        return AlgMatrix.scalar(chi_b_prime(n, spec.r))
    raise DomainError(f"unknown gadget {name}")


def expected_degree(spec: GadgetSpec) -> Optional[int]:
    if spec.name == GadgetName.SHIFT:
        return 1 if spec.k is None else spec.k
    if spec.name == GadgetName.MATRIX_UNIT:
        return spec.i - spec.j
    if spec.name == GadgetName.CHI_B:
        return spec.k
    if spec.name == GadgetName.CHI_B_PRIME:
        return -spec.r
    if spec.name in (GadgetName.PROJ_FINITE, GadgetName.PROJ_COFINITE,
                     GadgetName.STANDARD_PROJ, GadgetName.U_K):
        return 0
    return None


def certify(spec: GadgetSpec, a: AlgMatrix) -> str:
    """The certificate a built gadget satisfies; raises CertificationError otherwise."""
    if spec.name in UNITARY_GADGETS:
        ok, what = is_unitary(a), "unitary"
    elif spec.name in (GadgetName.PROJ_FINITE, GadgetName.PROJ_COFINITE, GadgetName.STANDARD_PROJ):
        ok, what = is_projection(a), "projection"
    else:
        ok, what = is_partial_isometry(a), "partial isometry"
    degree = expected_degree(spec)
    if ok and degree is not None:
        ok = all(is_homogeneous(e, degree) for r in a.entries for e in r)
        what += f", degree {degree}"
    if not ok:
        raise CertificationError(f"{spec.name.value}{spec.params()} failed: {what}")
    return what


@lru_cache(maxsize=None)
def build(spec: GadgetSpec) -> AlgMatrix:
    a = _construct(spec)
    certify(spec, a)
    return a


def build_element(spec: GadgetSpec) -> AlgebraElement:
    a = build(spec)
    return a[0, 0]


def catalog(n: int) -> List[dict]:
    """One representative per gadget family that makes sense in ambient n."""
    specs = [
        GadgetSpec(GadgetName.SHIFT, n, slot=n, k=1),
        GadgetSpec(GadgetName.PROJ_FINITE, n, slot=n, k=2),
        GadgetSpec(GadgetName.PROJ_COFINITE, n, slot=n, k=2),
        GadgetSpec(GadgetName.MATRIX_UNIT, n, slot=n, i=1, j=0),
        GadgetSpec(GadgetName.STANDARD_PROJ, n, A=frozenset(range(1, n)), l=1),
        GadgetSpec(GadgetName.U_PROP3, n, slot=n),
        GadgetSpec(GadgetName.U_KN, n, slot=n, k=3, N=2),
        GadgetSpec(GadgetName.U_L, n, slot=n, k=3, l=2),
        GadgetSpec(GadgetName.CHI_B, n, k=1),
        GadgetSpec(GadgetName.CHI_B, n, k=-1),
    ]
    if n >= 2:
        specs += [GadgetSpec(GadgetName.U_K, n, k=2), GadgetSpec(GadgetName.CHI_B_PRIME, n, r=1)]
    out = []
    for spec in specs:
        try:
            a = build(spec)
            status = certify(spec, a)
        except CertificationError as exc:
            a, status = None, f"FAILED: {exc}"
        out.append({
            "name": spec.name.value,
            "n": n,
            "params": spec.params(),
            "size": [a.rows, a.cols] if a is not None else None,
            "degree": expected_degree(spec),
            "certified": status,
        })
    return out


# ---------------------------------------------------------------------------
# identity catalog
# ---------------------------------------------------------------------------

def _compare(name: str, lhs: AlgMatrix, rhs: AlgMatrix, mode: Mode = Mode.EXACT, **params) -> CheckResult:
    diff = first_difference(lhs, rhs, mode)
    return CheckResult(name, params, diff is None, "" if diff is None else f"differs ({mode.value})", diff)


def _predicate(name: str, passed: bool, detail: str = "", **params) -> CheckResult:
    return CheckResult(name, params, bool(passed), "" if passed else detail)


def _safe_build(report: VerificationReport, spec: GadgetSpec) -> Optional[AlgMatrix]:
    try:
        return build(spec)
    except CertificationError as exc:
        report.check(f"gadgets.{spec.name.value}.certified", False, str(exc), **spec.params())
        return None


def default_corner(big_n: int) -> AlgebraElement:
    """e_00, plus e_01 when N >= 2."""
    corner = matrix_unit(0, 0)
    return corner + matrix_unit(0, 1) if big_n >= 2 else corner


def sample_rearrangement_input(n: int, slot: int, k: int, big_n: int,
                               corner: Optional[AlgebraElement] = None) -> AlgMatrix:
    """
    diag(I, ..., I, E, 0) with k-2 identity blocks and a finite idempotent E
    supported in [0, N) on the slot coordinate. E defaults to e_00 (+ e_01 for N >= 2).
    """
    if corner is None:
        corner = default_corner(big_n)
    window = proj_finite(big_n)
    if convolve(window, convolve(corner, window)) != corner:
        raise DomainError(f"corner idempotent must live in [0, {big_n})")
    blocks = [identity(n)] * (k - 2) + [on_slot(n, slot, corner), zero(n)]
    return diag(*blocks)


def check_u_kn_rearrangement(n: int, slot: int, k: int, big_n: int,
                             corner: Optional[AlgebraElement] = None,
                             u: Optional[AlgMatrix] = None, **labels) -> CheckResult:
    """
    U (P ⊞ 0) U* must be ((⊞^m I) ⊞ 0) ⊞ R with R a finite idempotent living in
    [0, (k-1)N) on the slot coordinate.
    """
    params = dict(n=n, slot=slot, k=k, N=big_n, **labels)
    if u is None:
        u = build(GadgetSpec(GadgetName.U_KN, n, slot=slot, k=k, N=big_n))
    p = sample_rearrangement_input(n, slot, k, big_n, corner)
    image = conjugate(u, p)
    head = diag(*([identity(n)] * (k - 2) + [zero(n)]))
    top = AlgMatrix.of([list(r[: k - 1]) for r in image.entries[: k - 1]])
    diff = first_difference(top, head)
    if diff is not None:
        return CheckResult("gadgets.U_kN.rearranges", params, False, "upper block differs", diff)
    border = [image[k - 1, j] for j in range(k - 1)] + [image[j, k - 1] for j in range(k - 1)]
    if any(not e.is_zero() for e in border):
        return CheckResult("gadgets.U_kN.rearranges", params, False, "last row/column not split off")
    r = AlgMatrix.scalar(image[k - 1, k - 1])
    window = AlgMatrix.scalar(on_slot(n, slot, proj_finite((k - 1) * big_n)))
    ok = equal(r * r, r) and equal(window * r * window, r)
    return CheckResult("gadgets.U_kN.rearranges", params, ok, "" if ok else "corner is not a finite idempotent")


def rearrangement_corners(big_n: int, count: int, seed: int) -> List[AlgebraElement]:
    """The fixed corner followed by `count` seeded random finite idempotents in [0, N)."""
    from src.sampling import random_finite_idempotent  # sampling builds on the gadgets

    rng = np.random.default_rng(seed + big_n)
    return [default_corner(big_n)] + [random_finite_idempotent(rng, big_n) for _ in range(count)]


def verify_gadget_identities(n: int, bounds: Optional[Bounds] = None) -> VerificationReport:
    bounds = bounds or Bounds()
    report = VerificationReport()
    one = identity(n)

    for slot in range(1, n + 1):
        u = _safe_build(report, GadgetSpec(GadgetName.U_PROP3, n, slot=slot))
        if u is None:
            continue
        report.add(_predicate("gadgets.U_prop3.unitary", is_unitary(u), n=n, slot=slot))
        p = diag(on_slot(n, slot, proj_finite(1)), one)
        report.add(_compare("gadgets.U_prop3.absorbs", conjugate(u, p), diag(zero(n), one), n=n, slot=slot))

    for k in range(2, bounds.kn_max + 1):
        for big_n in range(1, bounds.N_max + 1):
            u = _safe_build(report, GadgetSpec(GadgetName.U_KN, n, slot=n, k=k, N=big_n))
            if u is None:
                continue
            report.add(_predicate("gadgets.U_kN.unitary", is_unitary(u), n=n, k=k, N=big_n))
            corners = rearrangement_corners(big_n, max(1, bounds.random_projections // 5), bounds.seed + k)
            for sample, corner in enumerate(corners):
                report.add(check_u_kn_rearrangement(n, n, k, big_n, corner, u, sample=sample))
    report.note("U_kN is certified unitary exactly as written; no index adjustment was needed.")

    for k in range(2, bounds.kn_max + 1):
        for l in range(1, bounds.l_max + 1):
            u = _safe_build(report, GadgetSpec(GadgetName.U_L, n, slot=n, k=k, l=l))
            if u is None:
                continue
            report.add(_predicate("gadgets.U_l.unitary", is_unitary(u), n=n, k=k, l=l))
            for m in range(1, k):
                blocks = [one] * m + [zero(n)] * (k - 1 - m) + [on_slot(n, n, proj_finite(l))]
                target = diag(*([one] * m + [zero(n)] * (k - m)))
                report.add(_compare("gadgets.U_l.rearranges", conjugate(u, diag(*blocks)), target,
                                    n=n, k=k, l=l, m=m))

    if n >= 2:
        _u_k_checks(report, n, bounds)
        _iota_checks(report, n)
    return report


def _u_k_checks(report: VerificationReport, n: int, bounds: Bounds):
    for k in range(0, bounds.k_max + 1):
        u = _safe_build(report, GadgetSpec(GadgetName.U_K, n, k=k))
        if u is None:
            continue
        report.add(_predicate("gadgets.u_k.unitary", is_unitary(u), n=n, k=k))
        report.add(_predicate("gadgets.u_k.self_adjoint", is_self_adjoint(u), n=n, k=k))
        report.add(_predicate("gadgets.u_k.degree_zero", matrix_is_degree_zero(u), n=n, k=k))
        p = diag(hat_tensor(n, matrix_unit(k, k)), zero(n))
        target = diag(zero(n), tensor(identity(n - 2), tensor(proj_cofinite(k), proj_finite(1))))
        image = conjugate(u, p, Mode.MOD_COMPACT)
        report.add(_compare("gadgets.u_k.conjugates", image, target, Mode.MOD_COMPACT, n=n, k=k))
        report.add(_compare("gadgets.u_k.conjugates_exact", image, target, Mode.EXACT, n=n, k=k))


def _iota_checks(report: VerificationReport, n: int):
    lower = n - 1
    u = build(GadgetSpec(GadgetName.U_PROP3, lower, slot=lower))
    p = diag(on_slot(lower, lower, proj_finite(1)), identity(lower))
    iu = iota_matrix(u, unitary=True)
    report.add(_predicate("gadgets.iota.unitary", is_unitary(iu), n=n))
    report.add(_predicate("gadgets.iota.projection", is_projection(iota_matrix(p)), n=n))
    report.add(_compare("gadgets.iota.intertwines", conjugate(iu, iota_matrix(p)),
                        iota_matrix(conjugate(u, p)), n=n))


def chi_b_expected(n: int, k: int):
    """(χ*χ, χχ*) for χ_{B_k}."""
    one = identity(n)
    corner = hat_tensor(n, proj_cofinite(abs(k)))
    return (one, corner) if k >= 0 else (corner, one)


def chi_b_prime_expected(n: int, r: int):
    head = identity(n - 2)
    source = tensor(head, tensor(proj_cofinite(r), proj_finite(1)))
    rng = tensor(identity(n - 1), proj_finite(1))
    return source, rng


def chi_b_checks(report: VerificationReport, n: int, ks: Iterable[int]):
    for k in ks:
        spec = GadgetSpec(GadgetName.CHI_B, n, k=k)
        a = _safe_build(report, spec)
        if a is None:
            continue
        star = mat_adjoint(a)
        source, rng = chi_b_expected(n, k)
        report.add(_predicate("chi.B.partial_isometry", is_partial_isometry(a), n=n, k=k))
        report.add(_predicate("chi.B.homogeneous", set(degree_split(a[0, 0])) <= {k}, n=n, k=k))
        report.add(_compare("chi.B.source", star * a, AlgMatrix.scalar(source), n=n, k=k))
        report.add(_compare("chi.B.range", a * star, AlgMatrix.scalar(rng), n=n, k=k))


def chi_b_prime_checks(report: VerificationReport, n: int, rs: Iterable[int]):
    for r in rs:
        a = _safe_build(report, GadgetSpec(GadgetName.CHI_B_PRIME, n, r=r))
        if a is None:
            continue
        star = mat_adjoint(a)
        source, rng = chi_b_prime_expected(n, r)
        report.add(_predicate("chi.Bprime.partial_isometry", is_partial_isometry(a), n=n, r=r))
        report.add(_predicate("chi.Bprime.homogeneous", set(degree_split(a[0, 0])) <= {-r}, n=n, r=r))
        report.add(_compare("chi.Bprime.source", star * a, AlgMatrix.scalar(source), n=n, r=r))
        report.add(_compare("chi.Bprime.range", a * star, AlgMatrix.scalar(rng), n=n, r=r))
    report.note(
        "χ_{B'_{-r}}* χ_{B'_{-r}} is checked against the indicator of Zbar^(n-2)×[r,∞]×{0}, "
        "i.e. I^(n-2)⊗P_{-r}⊗P_1."
    )
