"""Bijective 1-cocycles and their correspondence with Hopf braces.

``brace_to_cocycle`` sends (A, Δ, Δ′) to id: A_Δ -> A_Δ′ with the ρ
coaction; ``cocycle_to_brace`` transports the comultiplication of H back
along π.
"""

import logging
from dataclasses import dataclass

from .brace import (
    BraceData,
    CoactionData,
    assemble_brace,
    check_brace,
    check_left_comodule_coalgebra,
    rho_coaction,
)
from .errors import BraceCheckFailed, CocycleCheckFailed, NotInvertible
from .exact_linalg import StructureMap
from .hopf_core import (
    FAIL,
    CheckReport,
    CoalgebraData,
    HopfData,
    check_hopf_morphism,
    compare,
    first_failure,
)

logger = logging.getLogger(__name__)


@dataclass
class CocycleData:
    """An algebra isomorphism π: A -> H with A a left H-comodule coalgebra."""

    A: HopfData
    H: HopfData
    pi: StructureMap
    rho: CoactionData

    def same_tables(self, other: "CocycleData") -> bool:
        return (
            self.A.same_tables(other.A)
            and self.H.same_tables(other.H)
            and self.pi == other.pi
            and self.rho.map == other.rho.map
        )


@dataclass
class CocycleMorphism:
    """(f: K -> H, g: B -> A) between cocycles η: B -> K and π: A -> H."""

    f: StructureMap
    g: StructureMap


def _check_bijective(pi: StructureMap) -> CheckReport:
    try:
        pi.inverse()
    except NotInvertible as exc:
        return CheckReport(status=FAIL, failed_axiom="pi is bijective", residual_text=str(exc))
    return CheckReport()


def check_cocycle(c: CocycleData) -> CheckReport:
    A, H, pi = c.A, c.H, c.pi
    rho = c.rho.map
    cocycle_rhs = (H.mult @ pi) * (pi @ rho) * A.comult
    return first_failure(
        lambda: _check_bijective(pi),
        lambda: compare("pi is multiplicative", pi * A.mult, H.mult * (pi @ pi), A.legs(2), H.legs(1)),
        lambda: compare("pi is unital", pi * A.unit_map, H.unit_map, [], H.legs(1)),
        lambda: compare("pi preserves the counit", H.counit * pi, A.counit, A.legs(1), []),
        lambda: check_left_comodule_coalgebra(rho, H, A, "rho"),
        lambda: compare("cocycle identity", H.comult * pi, cocycle_rhs, A.legs(1), H.legs(2)),
    )


def brace_to_cocycle(b: BraceData) -> CocycleData:
    report = check_brace(b)
    if not report.passed:
        raise BraceCheckFailed(report)
    return CocycleData(b.first, b.second, b.first.id.materialize(), rho_coaction(b))


def cocycle_to_brace(c: CocycleData) -> BraceData:
    """Δ′(a) = π⁻¹(π(a)1) (x) π⁻¹(π(a)2) and T = π⁻¹ S_H π on A."""
    report = check_cocycle(c)
    if not report.passed:
        raise CocycleCheckFailed(report)
    pi_inv = c.pi.inverse()
    comult = ((pi_inv @ pi_inv) * c.H.comult * c.pi).materialize()
    antipode = (pi_inv * c.H.antipode * c.pi).materialize()
    second = HopfData(c.A.algebra, CoalgebraData(comult, c.A.counit), antipode, c.H.name)
    logger.debug("transported %s back along pi", c.H.name)
    return assemble_brace(c.A, second, c.A.name)


def check_cocycle_morphism(m: CocycleMorphism, source: CocycleData, target: CocycleData) -> CheckReport:
    """πg = fη, g(b)(-1) (x) g(b)(0) = f(b(-1)) (x) g(b(0)), f and g Hopf maps."""
    f, g = m.f, m.g
    return first_failure(
        lambda: compare("pi g = f eta", target.pi * g, f * source.pi, source.A.legs(1), target.H.legs(1)),
        lambda: compare("g is colinear", target.rho.map * g, (f @ g) * source.rho.map,
                        source.A.legs(1), [target.H.labels, target.A.labels]),
        lambda: check_hopf_morphism(f, source.H, target.H, "f: "),
        lambda: check_hopf_morphism(g, source.A, target.A, "g: "),
    )
