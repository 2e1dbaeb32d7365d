"""Named objects the command line and tests refer to as ``zoo:<name>``.

Objects are built on first use and cached per field.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional

from .bicrossed import drinfeld_double_dual, h4_z2_brace, h4_z2_rmatrix
from .brace import cop_brace, long_brace, trivial_brace
from .errors import UnknownObject
from .exact_linalg import FieldSpec, SparseVec
from .hopf_core import (
    FiniteGroup,
    HopfData,
    canonical_element,
    co_opposite,
    dual_hopf,
    group_algebra,
    opposite,
    sweedler_h4,
)
from .lazy_hopf import laurent_brace
from .matched import brace_to_matched, matched_from_rmatrix, weak_rmatrix

logger = logging.getLogger(__name__)

HOPF = "hopf"
BRACE = "brace"
LAZY = "lazy"
MATCHED = "matched"
RMATRIX = "rmatrix"
COPAIRING = "copairing"


@dataclass
class RMatrixObject:
    """A candidate weak R-matrix R in H (x) A."""

    H: HopfData
    A: HopfData
    R: SparseVec
    name: str = ""


@dataclass
class CopairingObject:
    """A candidate Long copairing R in H (x) H."""

    H: HopfData
    R: SparseVec
    name: str = ""


@dataclass(frozen=True)
class ZooEntry:
    name: str
    kind: str
    dim: int
    description: str
    build: Callable[[FieldSpec], object]
    extended: bool = False


_GROUPS: Dict[str, Callable[[], FiniteGroup]] = {
    "z2": lambda: FiniteGroup.cyclic(2),
    "z3": lambda: FiniteGroup.cyclic(3),
    "z2xz2": FiniteGroup.klein,
    "s3": FiniteGroup.symmetric3,
    "d4": lambda: FiniteGroup.dihedral(4),
}

_BASE_DESCRIPTIONS = {
    "z2": "group algebra of the cyclic group of order 2",
    "z3": "group algebra of the cyclic group of order 3",
    "z2xz2": "group algebra of the Klein four-group",
    "s3": "group algebra of the symmetric group on three letters",
    "d4": "group algebra of the dihedral group of order 8",
    "h4": "Sweedler's four-dimensional Hopf algebra",
}


def _base(name: str, fs: FieldSpec) -> HopfData:
    if name == "h4":
        return sweedler_h4(fs)
    return group_algebra(fs, _GROUPS[name](), name)


_VARIANTS = {
    "dual": (dual_hopf, "dual of the {}"),
    "op": (opposite, "opposite algebra of the {}"),
    "cop": (co_opposite, "co-opposite coalgebra of the {}"),
}


def _copairing(h: HopfData, central: str, involution: str) -> SparseVec:
    """1 (x) (1 + s)/2 + c (x) (1 - s)/2 for a central group-like c and an involution s."""
    half = h.field.scalar(1, 2)
    d = h.dim
    unit = h.index("e") if "e" in h.labels else h.index("1")
    c, s = h.index(central), h.index(involution)
    return SparseVec(d * d, {unit * d + unit: half, unit * d + s: half, c * d + unit: half, c * d + s: -half})


def _d4_copairing(fs: FieldSpec) -> CopairingObject:
    h = hopf("d4", fs)
    return CopairingObject(h, _copairing(h, "r2", "s"), "r-d4")


def _z2_copairing(fs: FieldSpec) -> CopairingObject:
    h = hopf("z2", fs)
    return CopairingObject(h, _copairing(h, "g", "g"), "r0-z2")


def _h4_z2_rmatrix(fs: FieldSpec) -> RMatrixObject:
    h4 = hopf("h4", fs)
    z2 = group_algebra(fs, FiniteGroup.cyclic(2, "a"), "z2")
    return RMatrixObject(h4, z2, h4_z2_rmatrix(h4, z2), "r-h4-z2")


def _canonical_rmatrix(base: str) -> Callable[[FieldSpec], RMatrixObject]:
    def build(fs: FieldSpec) -> RMatrixObject:
        h = hopf(base, fs)
        return RMatrixObject(opposite(h), dual_hopf(h), canonical_element(h), f"r-can-{base}")

    return build


def _pair_from_rmatrix(name: str) -> Callable[[FieldSpec], object]:
    def build(fs: FieldSpec):
        r = get(name, fs)
        return matched_from_rmatrix(r.H, r.A, weak_rmatrix(r.H, r.A, r.R))

    return build


def _entries() -> List[ZooEntry]:
    entries = []
    dims = {"z2": 2, "z3": 3, "z2xz2": 4, "s3": 6, "d4": 8, "h4": 4}
    for base, description in _BASE_DESCRIPTIONS.items():
        entries.append(ZooEntry(base, HOPF, dims[base], description, lambda fs, b=base: _base(b, fs)))
        for prefix, (construct, template) in _VARIANTS.items():
            entries.append(ZooEntry(
                f"{prefix}-{base}", HOPF, dims[base], template.format(description),
                lambda fs, b=base, c=construct: c(hopf(b, fs)),
            ))
    entries += [
        ZooEntry("trivial-z2", BRACE, 2, "trivial brace on kZ2", lambda fs: trivial_brace(hopf("z2", fs))),
        ZooEntry("trivial-h4", BRACE, 4, "trivial brace on H4", lambda fs: trivial_brace(hopf("h4", fs))),
        ZooEntry("h4-cop", BRACE, 4, "H4 with its co-opposite comultiplication", lambda fs: cop_brace(hopf("h4", fs))),
        ZooEntry("dual-s3-cop", BRACE, 6, "the commutative dual of kS3 with its co-opposite comultiplication",
                 lambda fs: cop_brace(hopf("dual-s3", fs))),
        ZooEntry("h4-z2", BRACE, 8, "bicrossed coproduct of H4 and kZ2 from a self-inverse weak R-matrix", h4_z2_brace),
        ZooEntry("double-dual-z2", BRACE, 4, "dual Drinfeld double of kZ2", lambda fs: drinfeld_double_dual(hopf("z2", fs))),
        ZooEntry("double-dual-z3", BRACE, 9, "dual Drinfeld double of kZ3", lambda fs: drinfeld_double_dual(hopf("z3", fs))),
        ZooEntry("double-dual-s3", BRACE, 36, "dual Drinfeld double of kS3",
                 lambda fs: drinfeld_double_dual(hopf("s3", fs)), extended=True),
        ZooEntry("long-d4", BRACE, 8, "kD4 twisted by a Long copairing", lambda fs: long_brace(*_copairing_args("r-d4", fs))),
        ZooEntry("long-z2", BRACE, 2, "kZ2 twisted by a Long copairing", lambda fs: long_brace(*_copairing_args("r0-z2", fs))),
        ZooEntry("laurent", LAZY, 0, "Laurent polynomials in g with a primitive-like x, checked on monomials", laurent_brace),
        ZooEntry("h4-z2-pair", MATCHED, 8, "matched pair of H4 and kZ2 from its weak R-matrix", _pair_from_rmatrix("r-h4-z2")),
        ZooEntry("dual-s3-pair", MATCHED, 36, "matched pair of the commutative brace dual-s3-cop",
                 lambda fs: brace_to_matched(get("dual-s3-cop", fs))),
        ZooEntry("r-h4-z2", RMATRIX, 8, "½(1(*)1 + 1(*)a + g(*)1 - g(*)a) in H4 (x) kZ2", _h4_z2_rmatrix),
        ZooEntry("r-can-z2", RMATRIX, 4, "canonical element of kZ2^op (x) kZ2*", _canonical_rmatrix("z2")),
        ZooEntry("r-can-z3", RMATRIX, 9, "canonical element of kZ3^op (x) kZ3*", _canonical_rmatrix("z3")),
        ZooEntry("r-d4", COPAIRING, 64, "1(*)(1+s)/2 + r2(*)(1-s)/2 in kD4 (x) kD4", _d4_copairing),
        ZooEntry("r0-z2", COPAIRING, 4, "1(*)(1+g)/2 + g(*)(1-g)/2 in kZ2 (x) kZ2", _z2_copairing),
    ]
    return entries


def _copairing_args(name: str, fs: FieldSpec):
    pairing = get(name, fs)
    return pairing.H, pairing.R


ZOO: Dict[str, ZooEntry] = {e.name: e for e in _entries()}


def entry(name: str) -> ZooEntry:
    try:
        return ZOO[name]
    except KeyError:
        raise UnknownObject(f"no zoo object named '{name}'") from None


@lru_cache(maxsize=None)
def get(name: str, fs: Optional[FieldSpec] = None):
    """Builds (once per field) the zoo object called ``name``."""
    fs = fs or FieldSpec.rationals()
    found = entry(name)
    logger.debug("building zoo object %s over %s", name, fs)
    return found.build(fs)


def hopf(name: str, fs: Optional[FieldSpec] = None) -> HopfData:
    found = entry(name)
    if found.kind != HOPF:
        raise UnknownObject(f"'{name}' is a {found.kind}, not a Hopf algebra")
    return get(name, fs)


def names(kind: Optional[str] = None, extended: bool = True) -> List[str]:
    return [e.name for e in ZOO.values() if (kind is None or e.kind == kind) and (extended or not e.extended)]
