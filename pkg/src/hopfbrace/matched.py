"""Hopf matched pairs, weak R-matrices and the matched-pair view of commutative braces.

A matched pair (A, H, ρ, φ) has ρ: A -> H (x) A making A a left H-comodule
algebra and φ: H -> H (x) A making H a right A-comodule algebra.
"""

import logging
from dataclasses import dataclass

from .brace import (
    BraceData,
    assemble_brace,
    check_brace,
    check_left_comodule_algebra,
    check_right_comodule_algebra,
    phi_map,
    rho_map,
)
from .errors import (
    BraceCheckFailed,
    Eq31Failed,
    MatchedCheckFailed,
    NotCommutative,
    NotInvertible,
    RMatrixCheckFailed,
    RolesDiffer,
)
from .exact_linalg import SparseVec, StructureMap, invert_element, leg_permute
from .hopf_core import (
    FAIL,
    CheckReport,
    CoalgebraData,
    HopfData,
    check_hopf_morphism,
    compare,
    first_failure,
    is_commutative,
    product_map,
    tensor_algebra,
)

logger = logging.getLogger(__name__)


@dataclass
class MatchedPairData:
    """Coactions A -> H (x) A and H -> H (x) A."""

    A: HopfData
    H: HopfData
    rho: StructureMap
    phi: StructureMap
    source_order: str = "A,H"

    def same_tables(self, other: "MatchedPairData") -> bool:
        return (
            self.A.same_tables(other.A)
            and self.H.same_tables(other.H)
            and self.rho == other.rho
            and self.phi == other.phi
        )


@dataclass
class WeakRMatrix:
    """An invertible R in H (x) A with its inverse."""

    R: SparseVec
    R_inv: SparseVec


def trivial_coactions(A: HopfData, H: HopfData) -> MatchedPairData:
    """ρ(a) = 1 (x) a and φ(h) = h (x) 1."""
    rho = (H.unit_map @ A.id).materialize()
    phi = (H.id @ A.unit_map).materialize()
    return MatchedPairData(A, H, rho, phi)


def check_matched_pair(mp: MatchedPairData) -> CheckReport:
    A, H, rho, phi = mp.A, mp.H, mp.rho, mp.phi
    fs, da, dh = A.field, A.dim, H.dim
    ai, hi = A.id, H.id
    hm2_rhs = (
        (H.mult @ A.mult @ ai)
        * leg_permute(fs, (dh, da, dh, da, da), (0, 2, 1, 3, 4))
        * (hi @ ai @ phi @ ai)
        * (rho @ rho)
        * A.comult
    )
    hm3_rhs = (
        (hi @ H.mult @ A.mult)
        * leg_permute(fs, (dh, dh, da, dh, da), (0, 1, 3, 2, 4))
        * (hi @ rho @ hi @ ai)
        * (phi @ phi)
        * H.comult
    )
    coactions = phi @ rho
    hm4_lhs = (H.mult @ A.mult) * leg_permute(fs, (dh, da, dh, da), (0, 2, 1, 3)) * coactions
    hm4_rhs = (H.mult @ A.mult) * leg_permute(fs, (dh, da, dh, da), (2, 0, 3, 1)) * coactions
    ha = [H.labels, A.labels]
    return first_failure(
        lambda: check_left_comodule_algebra(rho, H, A, "rho"),
        lambda: check_right_comodule_algebra(phi, A, H, "phi"),
        lambda: compare("HM1 rho", (hi @ A.counit) * rho, H.unit_map * A.counit, A.legs(1), H.legs(1)),
        lambda: compare("HM1 phi", (H.counit @ ai) * phi, A.unit_map * H.counit, H.legs(1), A.legs(1)),
        lambda: compare("HM2", (hi @ A.comult) * rho, hm2_rhs, A.legs(1), [H.labels, A.labels, A.labels]),
        lambda: compare("HM3", (H.comult @ ai) * phi, hm3_rhs, H.legs(1), [H.labels, H.labels, A.labels]),
        lambda: compare("HM4", hm4_lhs, hm4_rhs, ha, ha),
    )


def check_weak_rmatrix(H: HopfData, A: HopfData, R: SparseVec) -> CheckReport:
    """R invertible, (Δ (x) id)R = R13 R23 and (id (x) Δ)R = R13 R12."""
    fs, dh, da = H.field, H.dim, A.dim
    try:
        invert_element(tensor_algebra(H.algebra, A.algebra), R)
    except NotInvertible as exc:
        return CheckReport(status=FAIL, failed_axiom="R is invertible", residual_text=str(exc))
    r = StructureMap.from_vector(fs, (dh, da), R)
    r_h = r @ H.unit_map
    r_a = r @ A.unit_map
    wm1_r13 = leg_permute(fs, (dh, da, dh), (0, 2, 1)) * r_h
    wm1_r23 = H.unit_map @ r
    wm2_r13 = leg_permute(fs, (dh, da, da), (0, 2, 1)) * r_a
    hha = product_map([H, H, A])
    haa = product_map([H, A, A])
    return first_failure(
        lambda: compare("WM1", (H.comult @ A.id) * r, hha * (wm1_r13 @ wm1_r23), [], [H.labels, H.labels, A.labels]),
        lambda: compare("WM2", (H.id @ A.comult) * r, haa * (wm2_r13 @ r_a), [], [H.labels, A.labels, A.labels]),
    )


def weak_rmatrix(H: HopfData, A: HopfData, R: SparseVec) -> WeakRMatrix:
    report = check_weak_rmatrix(H, A, R)
    if not report.passed:
        raise RMatrixCheckFailed(report)
    return WeakRMatrix(R, invert_element(tensor_algebra(H.algebra, A.algebra), R))


def matched_from_rmatrix(H: HopfData, A: HopfData, R: WeakRMatrix) -> MatchedPairData:
    """Conjugation by τ(R) in A (x) H: ρ(h) = τ(R)(1 (x) h)τ(R⁻¹), φ(a) = τ(R)(a (x) 1)τ(R⁻¹).

    ρ makes H a left A-comodule algebra, so in the returned pair H plays the
    role of the coacted algebra and A the coacting one.
    """
    report = check_weak_rmatrix(H, A, R.R)
    if not report.passed:
        raise RMatrixCheckFailed(report)
    fs, dh, da = H.field, H.dim, A.dim
    flip = leg_permute(fs, (dh, da), (1, 0))
    tau_r = flip * StructureMap.from_vector(fs, (dh, da), R.R)
    tau_r_inv = flip * StructureMap.from_vector(fs, (dh, da), R.R_inv)
    ah = product_map([A, H])

    def conjugate(embedding: StructureMap) -> StructureMap:
        return (ah * (tau_r @ (ah * (embedding @ tau_r_inv)))).materialize()

    rho = conjugate(A.unit_map @ H.id)
    phi = conjugate(A.id @ H.unit_map)
    logger.debug("matched pair of %s and %s from a weak R-matrix", H.name, A.name)
    return MatchedPairData(H, A, rho, phi, source_order="H,A")


def brace_to_matched(b: BraceData) -> MatchedPairData:
    """The pair (A_Δ′, A_Δ′) with ρ(a) = S(a1)a21′ (x) a22′ and φ from the brace."""
    if not b.is_commutative():
        raise NotCommutative(f"the brace '{b.name}' is not commutative")
    report = check_brace(b)
    if not report.passed:
        raise BraceCheckFailed(report)
    return MatchedPairData(b.second, b.second, rho_map(b), phi_map(b))


def _require_equal_roles(mp: MatchedPairData):
    if not mp.A.same_tables(mp.H):
        raise RolesDiffer("the pair does not coact on a single Hopf algebra")


def check_eq31(mp: MatchedPairData) -> CheckReport:
    """Δ′(a) = a1′(-1)a2′[0] (x) a1′(0)a2′[1]."""
    _require_equal_roles(mp)
    A = mp.A
    d = A.dim
    rhs = (A.mult @ A.mult) * leg_permute(A.field, (d,) * 4, (0, 2, 1, 3)) * (mp.rho @ mp.phi) * A.comult
    return compare("comultiplication from the coactions", A.comult, rhs, A.legs(1), A.legs(2))


def matched_to_brace(mp: MatchedPairData) -> BraceData:
    """(A, Δ, Δ′) with Δ(a) = a1′T(a2′(-1)) (x) a2′(0) and S(a) = a(-1)T(a(0))."""
    _require_equal_roles(mp)
    A = mp.A
    if not is_commutative(A):
        raise NotCommutative(f"{A.name} is not commutative")
    report = check_matched_pair(mp)
    if not report.passed:
        raise MatchedCheckFailed(report)
    report = check_eq31(mp)
    if not report.passed:
        raise Eq31Failed(report)
    i = A.id
    comult = ((A.mult @ i) * (i @ A.antipode @ i) * (i @ mp.rho) * A.comult).materialize()
    antipode = (A.mult * (i @ A.antipode) * mp.rho).materialize()
    first = HopfData(A.algebra, CoalgebraData(comult, A.counit), antipode, f"{A.name}-from-pair")
    return assemble_brace(first, A, f"{A.name}-from-pair")


def check_reconstruction_identities(mp: MatchedPairData, b: BraceData) -> CheckReport:
    """Identities linking a matched pair to the brace built from it.

    Δ′(a) = a1 a2(-1) (x) a2(0), (id (x) Δ)ρ = a1(-1)a2(-1) (x) a1(0) (x) a2(0)
    and ρ(a) = S(a1)a21′ (x) a22′.
    """
    fs, d = b.field, b.dim
    i = b.first.id
    rho = mp.rho
    splitting = (b.mult @ i @ i) * leg_permute(fs, (d,) * 4, (0, 2, 1, 3)) * (rho @ rho) * b.delta
    return first_failure(
        lambda: compare("second comultiplication from rho", b.delta_prime, (b.mult @ i) * (i @ rho) * b.delta, b.legs(1), b.legs(2)),
        lambda: compare("rho splits the first comultiplication", (i @ b.delta) * rho, splitting, b.legs(1), b.legs(3)),
        lambda: compare("rho from the antipode", rho, rho_map(b), b.legs(1), b.legs(2)),
    )


def check_matched_morphism(f: StructureMap, source: MatchedPairData, target: MatchedPairData) -> CheckReport:
    """A Hopf map commuting with both coactions of pairs coacting on one algebra."""
    _require_equal_roles(source)
    _require_equal_roles(target)
    two = target.A.legs(2)
    return first_failure(
        lambda: check_hopf_morphism(f, source.A, target.A),
        lambda: compare("rho f = (f (x) f) rho", target.rho * f, (f @ f) * source.rho, source.A.legs(1), two),
        lambda: compare("phi f = (f (x) f) phi", target.phi * f, (f @ f) * source.phi, source.A.legs(1), two),
    )
