"""Hopf braces: one algebra carrying two Hopf coalgebra structures.

A brace (H, Δ, Δ′) is stored as two HopfData sharing the algebra and the
counit. ``first`` carries (Δ, S), ``second`` carries (Δ′, T).
"""

import logging
from dataclasses import dataclass
from typing import List

from .errors import (
    BraceCheckFailed,
    CounitMismatch,
    HarrisonCheckFailed,
    HopfCheckFailed,
    LongCheckFailed,
    NotCommutative,
)
from .exact_linalg import (
    FieldSpec,
    SparseVec,
    StructureMap,
    identity,
    invert_element,
    leg_permute,
)
from .hopf_core import (
    CheckReport,
    CoalgebraData,
    HopfData,
    LinearStructure,
    check_hopf,
    check_hopf_morphism,
    co_opposite,
    compare,
    first_failure,
    is_commutative,
    product_map,
    tagged,
    tensor_algebra,
)

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"


@dataclass
class CoactionData:
    """A coaction V -> H (x) V (left) or V -> V (x) H (right)."""

    side: str
    map: StructureMap


@dataclass
class BraceData:
    """A Hopf brace (H, m, 1, Δ, ε, S; Δ′, ε, T)."""

    first: HopfData
    second: HopfData
    name: str = ""

    @property
    def field(self) -> FieldSpec:
        return self.first.field

    @property
    def dim(self) -> int:
        return self.first.dim

    @property
    def basis_labels(self) -> List[str]:
        return self.first.labels

    @property
    def mult(self) -> StructureMap:
        return self.first.mult

    @property
    def unit(self) -> SparseVec:
        return self.first.unit

    @property
    def delta(self) -> StructureMap:
        return self.first.comult

    @property
    def counit(self) -> StructureMap:
        return self.first.counit

    @property
    def S(self) -> StructureMap:
        return self.first.antipode

    @property
    def delta_prime(self) -> StructureMap:
        return self.second.comult

    @property
    def counit_prime(self) -> StructureMap:
        return self.second.counit

    @property
    def T(self) -> StructureMap:
        return self.second.antipode

    def legs(self, n: int) -> List[List[str]]:
        return self.first.legs(n)

    def is_commutative(self) -> bool:
        return is_commutative(self.first)

    def same_tables(self, other: "BraceData") -> bool:
        return self.first.same_tables(other.first) and self.second.same_tables(other.second)


def _m3(h: LinearStructure) -> StructureMap:
    return h.mult * (h.mult @ h.id)


def assemble_brace(first: HopfData, second: HopfData, name: str = "", verify: bool = True) -> BraceData:
    """Pairs two Hopf structures on one algebra, refusing anything but a brace.

    The counits must agree; the stored brace keeps the first one.
    """
    shared = first_failure(
        lambda: compare("shared multiplication", first.mult, second.mult, first.legs(2), first.legs(1)),
        lambda: compare("shared unit", first.unit_map, second.unit_map, [], first.legs(1)),
    )
    if not shared.passed:
        raise BraceCheckFailed(shared)
    if first.counit != second.counit:
        raise CounitMismatch(f"the counits of {first.name} and {second.name} differ")
    second = HopfData(second.algebra, CoalgebraData(second.comult, first.counit), second.antipode, second.name)
    brace = BraceData(first, second, name)
    if verify:
        report = check_brace(brace)
        if not report.passed:
            raise BraceCheckFailed(report)
        logger.debug("assembled brace %s of dimension %d", name, first.dim)
    return brace


def compatibility_sides(b: BraceData):
    """h1′ (x) h2′1 (x) h2′2 and h11′S(h2)h31′ (x) h12′ (x) h32′ as 1 -> 3 maps."""
    h, i = b.first, b.first.id
    fs, d = b.field, b.dim
    lhs = (i @ b.delta) * b.delta_prime
    rhs = (
        (_m3(h) @ i @ i)
        * leg_permute(fs, (d,) * 5, (0, 2, 3, 1, 4))
        * (b.delta_prime @ b.S @ b.delta_prime)
        * (b.delta @ i)
        * b.delta
    )
    return lhs, rhs


def check_compatibility(b: BraceData) -> CheckReport:
    lhs, rhs = compatibility_sides(b)
    return compare("brace compatibility", lhs, rhs, b.legs(1), b.legs(3))


def check_brace(b: BraceData) -> CheckReport:
    return first_failure(
        lambda: tagged("first structure: ", check_hopf(b.first)),
        lambda: tagged("second structure: ", check_hopf(b.second)),
        lambda: compare("shared multiplication", b.first.mult, b.second.mult, b.legs(2), b.legs(1)),
        lambda: compare("shared unit", b.first.unit_map, b.second.unit_map, [], b.legs(1)),
        lambda: compare("counits agree", b.counit, b.counit_prime, b.legs(1), []),
        lambda: check_compatibility(b),
    )


def trivial_brace(h: HopfData) -> BraceData:
    return assemble_brace(h, h, f"trivial-{h.name}")


def cop_brace(h: HopfData) -> BraceData:
    """(H, Δ, Δ^cop)."""
    return assemble_brace(h, co_opposite(h), f"{h.name}-cop")


def check_left_comodule(rho: StructureMap, coacting: LinearStructure, target: LinearStructure, name: str = "coaction") -> CheckReport:
    """(Δ_H (x) id)ρ = (id (x) ρ)ρ and (ε_H (x) id)ρ = id."""
    hi, vi = coacting.id, target.id
    legs_v = target.legs(1)
    return first_failure(
        lambda: compare(f"{name} coassociativity", (coacting.comult @ vi) * rho, (hi @ rho) * rho,
                        legs_v, [coacting.labels, coacting.labels, target.labels]),
        lambda: compare(f"{name} counit", (coacting.counit @ vi) * rho, vi, legs_v, legs_v),
    )


def check_right_comodule(phi: StructureMap, coacting: LinearStructure, target: LinearStructure, name: str = "coaction") -> CheckReport:
    ai, vi = coacting.id, target.id
    legs_v = target.legs(1)
    return first_failure(
        lambda: compare(f"{name} coassociativity", (vi @ coacting.comult) * phi, (phi @ ai) * phi,
                        legs_v, [target.labels, coacting.labels, coacting.labels]),
        lambda: compare(f"{name} counit", (vi @ coacting.counit) * phi, vi, legs_v, legs_v),
    )


def check_left_comodule_coalgebra(rho: StructureMap, coacting: LinearStructure, target: LinearStructure, name: str = "coaction") -> CheckReport:
    """c(-1) (x) c(0)1 (x) c(0)2 = c1(-1)c2(-1) (x) c1(0) (x) c2(0) and c(-1)ε(c(0)) = ε(c)1."""
    fs, dh, dc = coacting.field, coacting.dim, target.dim
    ci = target.id
    rhs = (
        (coacting.mult @ ci @ ci)
        * leg_permute(fs, (dh, dc, dh, dc), (0, 2, 1, 3))
        * (rho @ rho)
        * target.comult
    )
    return first_failure(
        lambda: check_left_comodule(rho, coacting, target, name),
        lambda: compare(f"{name} respects comultiplication", (coacting.id @ target.comult) * rho, rhs,
                        target.legs(1), [coacting.labels, target.labels, target.labels]),
        lambda: compare(f"{name} respects counit", (coacting.id @ target.counit) * rho,
                        coacting.unit_map * target.counit, target.legs(1), coacting.legs(1)),
    )


def check_left_comodule_algebra(rho: StructureMap, coacting: LinearStructure, target: LinearStructure, name: str = "coaction") -> CheckReport:
    fs, dh, db = coacting.field, coacting.dim, target.dim
    rhs = (coacting.mult @ target.mult) * leg_permute(fs, (dh, db, dh, db), (0, 2, 1, 3)) * (rho @ rho)
    out = [coacting.labels, target.labels]
    return first_failure(
        lambda: check_left_comodule(rho, coacting, target, name),
        lambda: compare(f"{name} is multiplicative", rho * target.mult, rhs, target.legs(2), out),
        lambda: compare(f"{name} is unital", rho * target.unit_map, coacting.unit_map @ target.unit_map, [], out),
    )


def check_right_comodule_algebra(phi: StructureMap, coacting: LinearStructure, target: LinearStructure, name: str = "coaction") -> CheckReport:
    fs, da, db = coacting.field, coacting.dim, target.dim
    rhs = (target.mult @ coacting.mult) * leg_permute(fs, (db, da, db, da), (0, 2, 1, 3)) * (phi @ phi)
    out = [target.labels, coacting.labels]
    return first_failure(
        lambda: check_right_comodule(phi, coacting, target, name),
        lambda: compare(f"{name} is multiplicative", phi * target.mult, rhs, target.legs(2), out),
        lambda: compare(f"{name} is unital", phi * target.unit_map, target.unit_map @ coacting.unit_map, [], out),
    )


def rho_map(b: BraceData) -> StructureMap:
    """ρ(h) = S(h1)h21′ (x) h22′."""
    return ((b.mult @ b.first.id) * (b.S @ b.delta_prime) * b.delta).materialize()


def rho_coaction(b: BraceData) -> CoactionData:
    return CoactionData(LEFT, rho_map(b))


def _require_commutative(b: BraceData):
    if not b.is_commutative():
        raise NotCommutative(f"the brace '{b.name}' is not commutative")


def phi_map(b: BraceData) -> StructureMap:
    """φ(a) = T(a1′)(-1)a2′ (x) T(a1′)(0)a3′."""
    _require_commutative(b)
    fs, d = b.field, b.dim
    i = b.first.id
    rho = rho_map(b)
    return (
        (b.mult @ b.mult)
        * leg_permute(fs, (d,) * 4, (0, 2, 1, 3))
        * (rho @ i @ i)
        * (b.T @ i @ i)
        * (b.delta_prime @ i)
        * b.delta_prime
    ).materialize()


def phi_coaction(b: BraceData) -> CoactionData:
    return CoactionData(RIGHT, phi_map(b))


def gamma_map(b: BraceData) -> StructureMap:
    """γ(x (x) y) = x y(-1) (x) y(0)."""
    i = b.first.id
    return ((b.mult @ i) * (i @ rho_map(b))).materialize()


def gamma_inverse_map(b: BraceData) -> StructureMap:
    """γ⁻¹(x (x) y) = x T(y(-1)) (x) y(0)."""
    i = b.first.id
    return ((b.mult @ i) * (i @ b.T @ i) * (i @ rho_map(b))).materialize()


def sigma_map(h: HopfData) -> StructureMap:
    """σ(x (x) y) = y2 (x) x S(y1) y3."""
    fs, d, i = h.field, h.dim, h.id
    delta2 = (h.comult @ i) * h.comult
    return (
        (i @ _m3(h))
        * leg_permute(fs, (d,) * 4, (2, 0, 1, 3))
        * (i @ h.antipode @ i @ i)
        * (i @ delta2)
    ).materialize()


def braid_operator(b: BraceData) -> StructureMap:
    """c(x (x) y) = x(-1)y[0] (x) x(0)y[1]; checked to be invertible."""
    _require_commutative(b)
    fs, d = b.field, b.dim
    c = (
        (b.mult @ b.mult)
        * leg_permute(fs, (d,) * 4, (0, 2, 1, 3))
        * (rho_map(b) @ phi_map(b))
    ).materialize()
    c.inverse()
    logger.debug("braid operator of %s built", b.name)
    return c


def check_braid_equation(c: StructureMap, labels=None) -> CheckReport:
    """(c (x) id)(id (x) c)(c (x) id) = (id (x) c)(c (x) id)(id (x) c)."""
    d = c.in_dims[0]
    i = identity(c.field, (d,))
    legs = [labels or [str(k) for k in range(d)]] * 3
    lhs = (c @ i) * (i @ c) * (c @ i)
    rhs = (i @ c) * (c @ i) * (i @ c)
    return compare("braid equation", lhs, rhs, legs, legs)


def check_braid_conjugacy(b: BraceData) -> CheckReport:
    """γ γ⁻¹ = id and γ⁻¹ c γ = σ."""
    gamma, gamma_inv = gamma_map(b), gamma_inverse_map(b)
    two = b.legs(2)
    ii = identity(b.field, (b.dim, b.dim))
    return first_failure(
        lambda: compare("gamma inverse", gamma * gamma_inv, ii, two, two),
        lambda: compare("gamma inverse (other side)", gamma_inv * gamma, ii, two, two),
        lambda: compare("braid operator conjugate to sigma", gamma_inv * braid_operator(b) * gamma, sigma_map(b.first), two, two),
    )


def check_brace_identities(b: BraceData) -> CheckReport:
    """Identities every brace satisfies: the ρ coaction and its consequences."""
    h, fs, d = b.first, b.field, b.dim
    i = h.id
    rho = rho_map(b)
    one, two = b.legs(1), b.legs(2)
    antipode_lhs = (b.mult @ i) * leg_permute(fs, (d,) * 3, (0, 2, 1)) * (b.delta_prime @ i) * (b.S @ i) * b.delta
    antipode_rhs = (b.mult @ b.S) * (b.S @ b.delta_prime) * b.delta
    unit_rhs = (
        (_m3(h) @ b.mult)
        * leg_permute(fs, (d,) * 5, (0, 2, 3, 1, 4))
        * (i @ i @ i @ i @ b.S)
        * (b.delta_prime @ b.S @ b.delta_prime)
        * (b.delta @ i)
        * b.delta
    )
    rho_rhs = (b.mult @ i) * (i @ b.T @ i) * (i @ rho) * b.delta_prime
    return first_failure(
        lambda: compare("antipode through second comultiplication", antipode_lhs, antipode_rhs, one, two),
        lambda: compare("unit splitting", i @ h.unit_map, unit_rhs, one, two),
        lambda: compare("second comultiplication from rho", b.delta_prime, (b.mult @ i) * (i @ rho) * b.delta, one, two),
        lambda: compare("first comultiplication from rho", b.delta, rho_rhs, one, two),
        lambda: check_left_comodule_coalgebra(rho, b.second, b.first, "rho"),
    )


def check_commutative_coactions(b: BraceData) -> CheckReport:
    """For commutative braces: ρ is a comodule algebra, φ a right comodule algebra, (id (x) S)ρ = ρS."""
    rho, phi = rho_map(b), phi_map(b)
    i = b.first.id
    return first_failure(
        lambda: check_left_comodule_algebra(rho, b.second, b.first, "rho"),
        lambda: check_right_comodule_algebra(phi, b.second, b.first, "phi"),
        lambda: compare("rho commutes with the antipode", (i @ b.S) * rho, rho * b.S, b.legs(1), b.legs(2)),
    )


def check_brace_morphism(f: StructureMap, source: BraceData, target: BraceData) -> CheckReport:
    """f is a Hopf map for both comultiplications."""
    return first_failure(
        lambda: check_hopf_morphism(f, source.first, target.first, "first structure: "),
        lambda: check_hopf_morphism(f, source.second, target.second, "second structure: "),
    )


class _TwoTensor:
    """Elements of H (x) H and H (x) H (x) H as arity-0 maps."""

    def __init__(self, h: HopfData, r: SparseVec):
        fs, d = h.field, h.dim
        self.h = h
        self.r = StructureMap.from_vector(fs, (d, d), r)
        self.prod2 = product_map([h, h])
        self.prod3 = product_map([h, h, h])
        u = h.unit_map
        self.r12 = self.r @ u
        self.r23 = u @ self.r
        self.r13 = leg_permute(fs, (d, d, d), (0, 2, 1)) * self.r12

    def times3(self, x: StructureMap, y: StructureMap) -> StructureMap:
        return self.prod3 * (x @ y)


def _require_invertible(h: HopfData, r: SparseVec) -> SparseVec:
    return invert_element(tensor_algebra(h.algebra, h.algebra), r)


def check_harrison_cocycle(h: HopfData, r: SparseVec) -> CheckReport:
    """R12 (Δ (x) id)(R) = R23 (id (x) Δ)(R) and (ε (x) id)R = 1 = (id (x) ε)R."""
    _require_invertible(h, r)
    t = _TwoTensor(h, r)
    i, u = h.id, h.unit_map
    three = h.legs(3)
    return first_failure(
        lambda: compare("harrison cocycle", t.times3(t.r12, (h.comult @ i) * t.r), t.times3(t.r23, (i @ h.comult) * t.r), [], three),
        lambda: compare("left normalization", (h.counit @ i) * t.r, u, [], h.legs(1)),
        lambda: compare("right normalization", (i @ h.counit) * t.r, u, [], h.legs(1)),
    )


def check_long_copaired(h: HopfData, r: SparseVec) -> CheckReport:
    _require_invertible(h, r)
    t = _TwoTensor(h, r)
    i, u = h.id, h.unit_map
    x_one = i @ u
    one, two, three = h.legs(1), h.legs(2), h.legs(3)
    return first_failure(
        lambda: compare("LC1 first leg central", t.prod2 * (t.r @ x_one), t.prod2 * (x_one @ t.r), one, two),
        lambda: compare("LC2 counit on first leg", (h.counit @ i) * t.r, u, [], one),
        lambda: compare("LC3 first leg splitting", (h.comult @ i) * t.r, t.times3(t.r23, t.r13), [], three),
        lambda: compare("LC4 counit on second leg", (i @ h.counit) * t.r, u, [], one),
        lambda: compare("LC5 second leg splitting", (i @ h.comult) * t.r, t.times3(t.r12, t.r13), [], three),
    )


def twist_comultiplication(h: HopfData, r: SparseVec) -> HopfData:
    """(H, m, 1, Δ_R, ε, S^R) with Δ_R(h) = R Δ(h) R⁻¹."""
    report = check_harrison_cocycle(h, r)
    if not report.passed:
        raise HarrisonCheckFailed(report)
    fs, d = h.field, h.dim
    r_inv = StructureMap.from_vector(fs, (d, d), _require_invertible(h, r))
    t = _TwoTensor(h, r)
    comult = (t.prod2 * (t.r @ (t.prod2 * (h.comult @ r_inv)))).materialize()
    left = (h.mult * (h.id @ h.antipode)) * t.r
    right = (h.mult * (h.antipode @ h.id)) * r_inv
    antipode = (_m3(h) * (left @ h.antipode @ right)).materialize()
    twisted = HopfData(h.algebra, CoalgebraData(comult, h.counit), antipode, f"{h.name}-twist")
    result = check_hopf(twisted)
    if not result.passed:
        raise HopfCheckFailed(result)
    return twisted


def long_brace(h: HopfData, r: SparseVec) -> BraceData:
    """(H, Δ, Δ_R) for a Long copairing R."""
    report = check_long_copaired(h, r)
    if not report.passed:
        raise LongCheckFailed(report)
    return assemble_brace(h, twist_comultiplication(h, r), f"long-{h.name}")
