"""Bicrossed coproducts A ⋈ H and the braces built on them.

The tensor algebra A (x) H is indexed a * dim(H) + h. Comultiplications are
first assembled on unflattened legs (A, H) -> (A, H, A, H) and regrouped.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from .brace import (
    LEFT,
    BraceData,
    CoactionData,
    _m3,
    assemble_brace,
    check_brace,
    check_left_comodule_algebra,
    check_left_comodule_coalgebra,
    cop_brace,
    trivial_brace,
)
from .errors import (
    ClosedFormulaMismatch,
    ComoduleBialgebraCheckFailed,
    Eq41Failed,
    Eq42Failed,
    Eq43Failed,
    HopfCheckFailed,
    HypothesisFailed,
    MatchedCheckFailed,
    NotCocommutative,
    RMatrixCheckFailed,
    RolesDiffer,
)
from .exact_linalg import FieldSpec, SparseVec, StructureMap, leg_permute
from .hopf_core import (
    FAIL,
    CheckReport,
    CoalgebraData,
    FiniteGroup,
    HopfData,
    canonical_element,
    check_hopf,
    compare,
    dual_hopf,
    first_failure,
    group_algebra,
    is_cocommutative,
    is_commutative,
    opposite,
    sweedler_h4,
    tensor_algebra,
    tensor_hopf,
)
from .matched import (
    MatchedPairData,
    check_matched_pair,
    matched_from_rmatrix,
    weak_rmatrix,
)

logger = logging.getLogger(__name__)


@dataclass
class BicrossedData:
    """A ⋈ H with its comultiplication, antipode and the plain tensor comultiplication.

    delta_bar is the smash comultiplication from a second coaction, when one was given.
    """

    result: HopfData
    provenance: MatchedPairData
    delta_tilde: StructureMap
    s_tilde: StructureMap
    delta_hat: StructureMap
    delta_bar: Optional[StructureMap] = None


def trivial_left_coaction(A: HopfData, H: HopfData) -> CoactionData:
    """a -> 1 (x) a."""
    return CoactionData(LEFT, (H.unit_map @ A.id).materialize())


def _trivial_phi(A: HopfData, H: HopfData) -> StructureMap:
    return (H.id @ A.unit_map).materialize()


def _mixed_coproduct(A: HopfData, H: HopfData, rho: StructureMap, phi: StructureMap, name: str) -> HopfData:
    """Δ(a (x) h) = a1 (x) a2(-1)h1[0] (x) a2(0)h1[1] (x) h2 with its antipode, unchecked."""
    fs, da, dh = A.field, A.dim, H.dim
    n = da * dh
    ai, hi = A.id, H.id
    comult = (
        (ai @ H.mult @ A.mult @ hi)
        * leg_permute(fs, (da, dh, da, dh, da, dh), (0, 1, 3, 2, 4, 5))
        * (ai @ rho @ phi @ hi)
        * (A.comult @ H.comult)
    )
    antipode = (
        (A.mult @ H.mult)
        * leg_permute(fs, (dh, da, dh, da), (3, 1, 2, 0))
        * (H.antipode @ A.antipode @ H.antipode @ A.antipode)
        * (rho @ phi)
    )
    coalgebra = CoalgebraData(
        comult.regroup((n,), (n, n)).materialize(),
        (A.counit @ H.counit).regroup((n,), ()).materialize(),
    )
    return HopfData(
        tensor_algebra(A.algebra, H.algebra),
        coalgebra,
        antipode.regroup((n,), (n,)).materialize(),
        name,
    )


def _checked(h: HopfData) -> HopfData:
    report = check_hopf(h)
    if not report.passed:
        raise HopfCheckFailed(report)
    return h


def bicrossed_coproduct(mp: MatchedPairData, rho_prime: Optional[CoactionData] = None) -> BicrossedData:
    report = check_matched_pair(mp)
    if not report.passed:
        raise MatchedCheckFailed(report)
    A, H = mp.A, mp.H
    result = _checked(_mixed_coproduct(A, H, mp.rho, mp.phi, f"{A.name}-{H.name}-bicrossed"))
    logger.info("bicrossed coproduct %s of dimension %d", result.name, result.dim)
    return BicrossedData(
        result=result,
        provenance=mp,
        delta_tilde=result.comult,
        s_tilde=result.antipode,
        delta_hat=tensor_hopf(A, H).comult,
        delta_bar=smash_coproduct(A, H, rho_prime).comult if rho_prime is not None else None,
    )


def check_comodule_bialgebra(rho: StructureMap, H: HopfData, A: HopfData, name: str = "rho'") -> CheckReport:
    return first_failure(
        lambda: check_left_comodule_algebra(rho, H, A, name),
        lambda: check_left_comodule_coalgebra(rho, H, A, name),
    )


def smash_coproduct(A: HopfData, H: HopfData, rho_prime: CoactionData) -> HopfData:
    """Δ(a (x) h) = a1 (x) a2(-1)h1 (x) a2(0) (x) h2 on the tensor algebra A (x) H."""
    report = check_comodule_bialgebra(rho_prime.map, H, A)
    if not report.passed:
        raise ComoduleBialgebraCheckFailed(report)
    return _checked(_mixed_coproduct(A, H, rho_prime.map, _trivial_phi(A, H), f"{A.name}-{H.name}-smash"))


def check_eq41(H: HopfData, A: HopfData, phi: StructureMap) -> CheckReport:
    """h[0] (x) h[1]1 (x) h[1]2 = h1[0]S(h2)h3[0] (x) h1[1] (x) h3[1]."""
    fs, dh, da = H.field, H.dim, A.dim
    hi = H.id
    rhs = (
        (_m3(H) @ A.id @ A.id)
        * leg_permute(fs, (dh, da, dh, dh, da), (0, 2, 3, 1, 4))
        * (phi @ H.antipode @ phi)
        * (H.comult @ hi)
        * H.comult
    )
    lhs = (hi @ A.comult) * phi
    return compare("phi splitting", lhs, rhs, H.legs(1), [H.labels, A.labels, A.labels])


def _hypotheses(*checks):
    for which, check in checks:
        report = check()
        if not report.passed:
            raise HypothesisFailed(which, report)


def _property(holds: bool, axiom: str) -> CheckReport:
    return CheckReport() if holds else CheckReport(status=FAIL, failed_axiom=axiom)


def _require_roles(mp: MatchedPairData, A: HopfData, H: HopfData):
    if not (mp.A.same_tables(A) and mp.H.same_tables(H)):
        raise RolesDiffer("the matched pair is not defined on the given Hopf algebras")


def prop41_candidate(brace_a: BraceData, H: HopfData, mp: MatchedPairData) -> BraceData:
    """(A_Δ′ ⋈ H, Δ̂, Δ̃) assembled without the brace check."""
    _require_roles(mp, brace_a.second, H)
    first = tensor_hopf(brace_a.first, H)
    second = _mixed_coproduct(mp.A, H, mp.rho, mp.phi, f"{brace_a.name}-{H.name}-bicrossed")
    return assemble_brace(first, second, f"{brace_a.name}-{H.name}", verify=False)


def prop41_brace(brace_a: BraceData, H: HopfData, mp: MatchedPairData) -> BraceData:
    """The brace (A_Δ′ ⋈ H, Δ̂, Δ̃); Δ̂ is the tensor comultiplication of (A, Δ) and H."""
    _require_roles(mp, brace_a.second, H)
    _hypotheses(
        ("H is commutative", lambda: _property(is_commutative(H), "H is commutative")),
        ("H is cocommutative", lambda: _property(is_cocommutative(H), "H is cocommutative")),
        ("rho is a comodule coalgebra", lambda: check_left_comodule_coalgebra(mp.rho, H, brace_a.first, "rho")),
        ("matched pair", lambda: check_matched_pair(mp)),
    )
    report = check_eq41(H, mp.A, mp.phi)
    if not report.passed:
        raise Eq41Failed(report)
    brace = prop41_candidate(brace_a, H, mp)
    report = check_brace(brace)
    if not report.passed:
        raise Eq41Failed(report, "phi splitting holds but the bicrossed brace does not")
    return brace


def smash_brace(A: HopfData, H: HopfData, rho: StructureMap) -> BraceData:
    """(A (x) H, Δ̂, Δ̄) from the trivial brace on A and a trivial φ."""
    mp = MatchedPairData(A, H, rho, _trivial_phi(A, H))
    return prop41_brace(trivial_brace(A), H, mp)


def check_eq42(A: HopfData, brace_h: BraceData, rho: StructureMap, rho_prime: StructureMap) -> CheckReport:
    """a(-1)′ (x) a(0)′(-1) (x) a(0)′(0) = a(-1)11′S(a(-1)2)a(0)(-1)′ (x) a(-1)12′ (x) a(0)(0)′."""
    fs, dh, da = A.field, brace_h.dim, A.dim
    hi, ai = brace_h.first.id, A.id
    rhs = (
        (_m3(brace_h.first) @ hi @ ai)
        * leg_permute(fs, (dh, dh, dh, dh, da), (0, 2, 3, 1, 4))
        * (hi @ hi @ brace_h.S @ hi @ ai)
        * (hi @ hi @ hi @ rho_prime)
        * (brace_h.delta_prime @ hi @ ai)
        * (brace_h.delta @ ai)
        * rho
    )
    lhs = (hi @ rho) * rho_prime
    return compare("coactions commute", lhs, rhs, A.legs(1), [brace_h.basis_labels, brace_h.basis_labels, A.labels])


def check_eq43(A: HopfData, brace_h: BraceData, phi: StructureMap, rho_prime: StructureMap) -> CheckReport:
    """h1′ (x) h2′[0] (x) h2′[1] = h1[0]11′S(h1[0]2)h1[1](-1)′h2 (x) h1[0]12′ (x) h1[1](0)′."""
    fs, dh, da = A.field, brace_h.dim, A.dim
    h = brace_h.first
    hi, ai = h.id, A.id
    m4 = h.mult * (h.mult @ hi) * (h.mult @ hi @ hi)
    rhs = (
        (m4 @ hi @ ai)
        * leg_permute(fs, (dh, dh, dh, dh, da, dh), (0, 2, 3, 5, 1, 4))
        * (hi @ hi @ brace_h.S @ rho_prime @ hi)
        * (brace_h.delta_prime @ hi @ ai @ hi)
        * (brace_h.delta @ ai @ hi)
        * (phi @ hi)
        * brace_h.delta
    )
    lhs = (hi @ phi) * brace_h.delta_prime
    labels = brace_h.basis_labels
    return compare("phi through the second comultiplication", lhs, rhs, [labels], [labels, labels, A.labels])


def check_eq44(H: HopfData, A: HopfData, phi: StructureMap, rho_prime: StructureMap) -> CheckReport:
    """h1[0] (x) h2 (x) h1[1] = h1[0] (x) h1[1](-1)′h2 (x) h1[1](0)′."""
    fs, dh, da = H.field, H.dim, A.dim
    hi = H.id
    split = (phi @ hi) * H.comult
    lhs = leg_permute(fs, (dh, da, dh), (0, 2, 1)) * split
    rhs = (
        (hi @ H.mult @ A.id)
        * leg_permute(fs, (dh, dh, da, dh), (0, 1, 3, 2))
        * (hi @ rho_prime @ hi)
        * split
    )
    return compare("phi against rho'", lhs, rhs, H.legs(1), [H.labels, H.labels, A.labels])


def _check_prop43_hypotheses(A: HopfData, brace_h: BraceData, mp: MatchedPairData, rho_prime: CoactionData):
    _require_roles(mp, A, brace_h.first)
    _hypotheses(
        ("the brace on H is commutative", lambda: _property(brace_h.is_commutative(), "H is commutative")),
        ("matched pair", lambda: check_matched_pair(mp)),
        ("rho' is a comodule bialgebra", lambda: check_comodule_bialgebra(rho_prime.map, brace_h.second, A)),
    )


def prop43_candidate(
    A: HopfData, brace_h: BraceData, mp: MatchedPairData, rho_prime: CoactionData, name: str = ""
) -> BraceData:
    """(A ⋈ H, Δ̃, Δ̄) assembled without the brace check."""
    _require_roles(mp, A, brace_h.first)
    name = name or f"{A.name}-{brace_h.name}"
    first = _mixed_coproduct(A, brace_h.first, mp.rho, mp.phi, f"{name}-bicrossed")
    second = _mixed_coproduct(A, brace_h.second, rho_prime.map, _trivial_phi(A, brace_h.second), f"{name}-smash")
    return assemble_brace(first, second, name, verify=False)


def prop43_brace(
    A: HopfData, brace_h: BraceData, mp: MatchedPairData, rho_prime: CoactionData, name: str = ""
) -> BraceData:
    _check_prop43_hypotheses(A, brace_h, mp, rho_prime)
    report = check_eq42(A, brace_h, mp.rho, rho_prime.map)
    if not report.passed:
        raise Eq42Failed(report)
    report = check_eq43(A, brace_h, mp.phi, rho_prime.map)
    if not report.passed:
        raise Eq43Failed(report)
    brace = prop43_candidate(A, brace_h, mp, rho_prime, name)
    report = check_brace(brace)
    if not report.passed:
        raise Eq43Failed(report, "both coaction identities hold but the bicrossed brace does not")
    logger.info("bicrossed brace %s of dimension %d", brace.name, brace.dim)
    return brace


def closed_double_dual_comultiplication(H: HopfData) -> StructureMap:
    """x (x) f -> x1 (x) hi* f1 hj* (x) S⁻¹(hj) x2 hi (x) f2, products taken in H and H*."""
    fs, d = H.field, H.dim
    dual = dual_hopf(H)
    canonical = StructureMap.from_vector(fs, (d, d), canonical_element(H))
    shifted = (H.antipode_inverse @ dual.id) * canonical
    n = d * d
    closed = (
        (H.id @ _m3(dual) @ _m3(H) @ dual.id)
        * leg_permute(fs, (d,) * 8, (0, 5, 2, 7, 6, 1, 4, 3))
        * ((H.comult @ dual.comult) @ canonical @ shifted)
    )
    return closed.regroup((n,), (n, n)).materialize()


def drinfeld_double_dual(H: HopfData) -> BraceData:
    """The brace on D(H)* = H^op ⋈ H* from the canonical element.

    The second comultiplication is the tensor comultiplication of H^op and
    (H*)^cop, which is the plain tensor one when H is commutative.
    """
    if not is_cocommutative(H):
        raise NotCocommutative(f"{H.name} is not cocommutative")
    op, dual = opposite(H), dual_hopf(H)
    r = weak_rmatrix(op, dual, canonical_element(H))
    mp = matched_from_rmatrix(op, dual, r)
    bicrossed = bicrossed_coproduct(mp)
    report = compare(
        "closed dual-basis comultiplication",
        bicrossed.delta_tilde,
        closed_double_dual_comultiplication(H),
        [bicrossed.result.labels],
        bicrossed.result.legs(2),
    )
    if not report.passed:
        raise ClosedFormulaMismatch(report)
    brace = prop43_brace(op, cop_brace(dual), mp, trivial_left_coaction(op, dual), f"double-dual-{H.name}")
    return brace


def h4_z2_rmatrix(h4: HopfData, z2: HopfData) -> SparseVec:
    """½(1 (x) 1 + 1 (x) a + g (x) 1 - g (x) a) in H4 (x) kZ2."""
    fs = h4.field
    half = fs.scalar(1, 2)
    d = z2.dim
    terms = {("1", "1"): half, ("1", "a"): half, ("g", "1"): half, ("g", "a"): -half}
    return SparseVec(h4.dim * d, {h4.index(x) * d + z2.index(y): c for (x, y), c in terms.items()})


def h4_z2_brace(fs: Optional[FieldSpec] = None) -> BraceData:
    """(H4 ⋈ kZ2, Δ̃, Δ̂) from the self-inverse weak R-matrix; needs characteristic other than 2."""
    fs = fs or FieldSpec.rationals()
    h4 = sweedler_h4(fs)
    z2 = group_algebra(fs, FiniteGroup.cyclic(2, "a"), "z2")
    r = weak_rmatrix(h4, z2, h4_z2_rmatrix(h4, z2))
    if r.R_inv != r.R:
        raise RMatrixCheckFailed(CheckReport(status=FAIL, failed_axiom="R is its own inverse"))
    mp = matched_from_rmatrix(h4, z2, r)
    brace = prop43_brace(h4, cop_brace(z2), mp, trivial_left_coaction(h4, z2), "h4-z2")
    return brace
