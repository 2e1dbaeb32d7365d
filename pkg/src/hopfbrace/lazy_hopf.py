"""Locally finite Hopf data on the monomial basis g^a x^b of k[g, g^-1, x].

Nothing is truncated: structure maps are functions on monomials returning
finite linear combinations, and every check is an exact computation at the
monomials it is given.
"""

import logging
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .exact_linalg import FieldSpec
from .hopf_core import FAIL, CheckReport, first_failure

logger = logging.getLogger(__name__)

# (a, b) stands for g^a x^b
LaurentMonomial = Tuple[int, int]
Key = Tuple[LaurentMonomial, ...]
Tensor = Dict[Key, object]
LegMap = Callable[..., Tensor]

ONE: LaurentMonomial = (0, 0)
G: LaurentMonomial = (1, 0)
X: LaurentMonomial = (0, 1)


def format_monomial(m: LaurentMonomial) -> str:
    a, b = m
    g_part = "" if a == 0 else ("g" if a == 1 else f"g^{a}")
    x_part = "" if b == 0 else ("x" if b == 1 else f"x^{b}")
    return (g_part + x_part) or "1"


def format_lazy(fs: FieldSpec, tensor: Tensor) -> str:
    pieces = []
    for key in sorted(tensor):
        coeff = fs.format(tensor[key])
        basis = "(*)".join(format_monomial(m) for m in key)
        negative = coeff.startswith("-")
        magnitude = coeff[1:] if negative else coeff
        term = basis if magnitude == "1" and basis else (f"{magnitude}*{basis}" if basis else magnitude)
        sign = ("- " if negative else "+ ") if pieces else ("-" if negative else "")
        pieces.append(sign + term)
    return " ".join(pieces) if pieces else "0"


def _add(target: Tensor, key: Key, value):
    total = target.get(key)
    total = value if total is None else total + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def combine(*tensors: Tuple[object, Tensor]) -> Tensor:
    """Linear combination of (coefficient, tensor) pairs."""
    result: Tensor = {}
    for coeff, tensor in tensors:
        for key, value in tensor.items():
            _add(result, key, coeff * value)
    return result


def apply_at(tensor: Tensor, position: int, arity: int, f: LegMap) -> Tensor:
    """Applies an arity -> k map to legs position .. position+arity-1."""
    result: Tensor = {}
    for key, coeff in tensor.items():
        head, args, tail = key[:position], key[position:position + arity], key[position + arity:]
        for out, c in f(*args).items():
            _add(result, head + out + tail, coeff * c)
    return result


def permute(tensor: Tensor, perm: Sequence[int]) -> Tensor:
    """Output leg k carries input leg perm[k]."""
    return {tuple(key[p] for p in perm): value for key, value in tensor.items()}


@dataclass
class LazyHopfData:
    """Two Hopf structures on one commutative algebra with an infinite monomial basis."""

    field: FieldSpec
    mult: LegMap
    comult: LegMap
    comult_prime: LegMap
    counit: LegMap
    antipode_S: LegMap
    antipode_T: LegMap
    name: str = ""

    @property
    def one(self):
        return self.field.one

    def basis(self, m: LaurentMonomial) -> Tensor:
        return {(m,): self.one}

    def unit(self) -> Tensor:
        return {(ONE,): self.one}


def laurent_brace(fs: FieldSpec) -> LazyHopfData:
    """k[g, g^-1, x] with Δ(x) = x (x) 1 + 1 (x) x and Δ′(x) = x (x) 1 + g (x) x."""
    K = fs.domain
    one = fs.one

    def mult(m: LaurentMonomial, n: LaurentMonomial) -> Tensor:
        return {((m[0] + n[0], m[1] + n[1]),): one}

    def comult(m: LaurentMonomial) -> Tensor:
        a, b = m
        return _pruned({((a, k), (a, b - k)): K(comb(b, k)) for k in range(b + 1)})

    def comult_prime(m: LaurentMonomial) -> Tensor:
        a, b = m
        return _pruned({((a + b - k, k), (a, b - k)): K(comb(b, k)) for k in range(b + 1)})

    def counit(m: LaurentMonomial) -> Tensor:
        return {(): one} if m[1] == 0 else {}

    def antipode_S(m: LaurentMonomial) -> Tensor:
        a, b = m
        return {((-a, b),): K((-1) ** b)}

    def antipode_T(m: LaurentMonomial) -> Tensor:
        a, b = m
        return {((-a - b, b),): K((-1) ** b)}

    return LazyHopfData(fs, mult, comult, comult_prime, counit, antipode_S, antipode_T, "laurent")


def _pruned(tensor: Tensor) -> Tensor:
    return {k: v for k, v in tensor.items() if v}


def window(a_max: int = 2, b_max: int = 2) -> List[LaurentMonomial]:
    """Monomials g^a x^b with |a| <= a_max and 0 <= b <= b_max."""
    return [(a, b) for b in range(b_max + 1) for a in range(-a_max, a_max + 1)]


def _monomial_check(L: LazyHopfData, axiom: str, witness: Key, lhs: Tensor, rhs: Tensor) -> CheckReport:
    if lhs == rhs:
        return CheckReport()
    residual = combine((L.one, lhs), (-L.one, rhs))
    labels = tuple(format_monomial(m) for m in witness)
    logger.info("axiom %s fails at %s", axiom, labels)
    return CheckReport(
        status=FAIL,
        failed_axiom=axiom,
        witness=tuple(c for m in witness for c in m),
        witness_labels=labels,
        residual_terms=[
            (tuple(format_monomial(m) for m in key), L.field.format(residual[key])) for key in sorted(residual)
        ],
        residual_text=format_lazy(L.field, residual),
    )


def compatibility_at(L: LazyHopfData, m: LaurentMonomial) -> Tuple[Tensor, Tensor]:
    """Both sides of the brace compatibility at one monomial."""
    h = L.basis(m)
    lhs = apply_at(apply_at(h, 0, 1, L.comult_prime), 1, 1, L.comult)
    rhs = apply_at(apply_at(h, 0, 1, L.comult), 1, 1, L.comult)
    rhs = apply_at(rhs, 0, 1, L.comult_prime)
    rhs = apply_at(rhs, 2, 1, L.antipode_S)
    rhs = apply_at(rhs, 3, 1, L.comult_prime)
    rhs = permute(rhs, (0, 2, 3, 1, 4))
    rhs = apply_at(apply_at(rhs, 0, 2, L.mult), 0, 2, L.mult)
    return lhs, rhs


def _coalgebra_checks(L: LazyHopfData, m: LaurentMonomial, comult: LegMap, antipode: LegMap, name: str):
    h = L.basis(m)
    delta = apply_at(h, 0, 1, comult)
    unit_counit = combine(*((c, L.unit()) for key, c in apply_at(h, 0, 1, L.counit).items()))
    return (
        lambda: _monomial_check(L, f"{name} coassociativity", (m,), apply_at(delta, 0, 1, comult), apply_at(delta, 1, 1, comult)),
        lambda: _monomial_check(L, f"{name} left counit", (m,), apply_at(delta, 0, 1, L.counit), h),
        lambda: _monomial_check(L, f"{name} right counit", (m,), apply_at(delta, 1, 1, L.counit), h),
        lambda: _monomial_check(L, f"{name} antipode left identity", (m,), apply_at(apply_at(delta, 0, 1, antipode), 0, 2, L.mult), unit_counit),
        lambda: _monomial_check(L, f"{name} antipode right identity", (m,), apply_at(apply_at(delta, 1, 1, antipode), 0, 2, L.mult), unit_counit),
    )


def check_brace_on_monomials(L: LazyHopfData, test_set: Iterable[LaurentMonomial]) -> CheckReport:
    """Coalgebra and antipode laws for both halves and the brace compatibility at each monomial."""
    checks = []
    for m in test_set:
        checks.extend(_coalgebra_checks(L, m, L.comult, L.antipode_S, "first structure:"))
        checks.extend(_coalgebra_checks(L, m, L.comult_prime, L.antipode_T, "second structure:"))
        checks.append(lambda m=m: _monomial_check(L, "brace compatibility", (m,), *compatibility_at(L, m)))
    return first_failure(*checks)


def check_multiplicative_on_monomials(L: LazyHopfData, test_set: Sequence[LaurentMonomial]) -> CheckReport:
    """Δ and Δ′ are algebra maps on every pair from the test set."""
    checks = []
    for m, n in product(test_set, repeat=2):
        pair = {(m, n): L.one}
        for comult, name in ((L.comult, "first"), (L.comult_prime, "second")):
            def check(m=m, n=n, pair=pair, comult=comult, name=name):
                lhs = apply_at(apply_at(pair, 0, 2, L.mult), 0, 1, comult)
                rhs = apply_at(apply_at(pair, 1, 1, comult), 0, 1, comult)
                rhs = apply_at(apply_at(permute(rhs, (0, 2, 1, 3)), 0, 2, L.mult), 1, 2, L.mult)
                return _monomial_check(L, f"{name} comultiplication is multiplicative", (m, n), lhs, rhs)
            checks.append(check)
    return first_failure(*checks)


class _Memo:
    def __init__(self, f: LegMap):
        self.f = f
        self.cache: Dict[Tuple, Tensor] = {}

    def __call__(self, *args) -> Tensor:
        value = self.cache.get(args)
        if value is None:
            value = self.cache[args] = self.f(*args)
        return value


def laurent_rho(L: LazyHopfData) -> LegMap:
    """ρ(h) = S(h1)h21′ (x) h22′."""
    def rho(m: LaurentMonomial) -> Tensor:
        t = apply_at(apply_at(L.basis(m), 0, 1, L.comult), 1, 1, L.comult_prime)
        return apply_at(apply_at(t, 0, 1, L.antipode_S), 0, 2, L.mult)
    return _Memo(rho)


def laurent_phi(L: LazyHopfData) -> LegMap:
    """φ(a) = T(a1′)(-1)a2′ (x) T(a1′)(0)a3′."""
    rho = laurent_rho(L)

    def phi(m: LaurentMonomial) -> Tensor:
        t = apply_at(apply_at(L.basis(m), 0, 1, L.comult_prime), 1, 1, L.comult_prime)
        t = apply_at(apply_at(t, 0, 1, L.antipode_T), 0, 1, rho)
        t = permute(t, (0, 2, 1, 3))
        return apply_at(apply_at(t, 0, 2, L.mult), 1, 2, L.mult)
    return _Memo(phi)


def check_cocycle_on_monomials(L: LazyHopfData, test_set: Iterable[LaurentMonomial]) -> CheckReport:
    """The identity map as a 1-cocycle: Δ′(a) = a1 a2(-1) (x) a2(0), with ρ a comodule coalgebra."""
    rho = laurent_rho(L)
    checks = []
    for m in test_set:
        a = L.basis(m)
        delta = apply_at(a, 0, 1, L.comult)
        coaction = rho(m)

        def cocycle(m=m, a=a, delta=delta):
            rhs = apply_at(apply_at(delta, 1, 1, rho), 0, 2, L.mult)
            return _monomial_check(L, "cocycle identity", (m,), apply_at(a, 0, 1, L.comult_prime), rhs)

        def coassociative(m=m, coaction=coaction):
            return _monomial_check(L, "rho coassociativity", (m,),
                                   apply_at(coaction, 0, 1, L.comult_prime), apply_at(coaction, 1, 1, rho))

        def counital(m=m, a=a, coaction=coaction):
            return _monomial_check(L, "rho counit", (m,), apply_at(coaction, 0, 1, L.counit), a)

        def coalgebra(m=m, delta=delta, coaction=coaction):
            lhs = apply_at(coaction, 1, 1, L.comult)
            rhs = apply_at(apply_at(delta, 0, 1, rho), 2, 1, rho)
            rhs = apply_at(permute(rhs, (0, 2, 1, 3)), 0, 2, L.mult)
            return _monomial_check(L, "rho respects comultiplication", (m,), lhs, rhs)

        checks.extend((cocycle, coassociative, counital, coalgebra))
    return first_failure(*checks)


def check_matched_on_monomials(L: LazyHopfData, test_set: Sequence[LaurentMonomial]) -> CheckReport:
    """The pair (A_Δ′, A_Δ′, ρ, φ): coaction laws and the four compatibilities.

    Single-element axioms run at every monomial, the mixed ones on every pair.
    """
    rho, phi = laurent_rho(L), laurent_phi(L)
    dp, eps, mult = L.comult_prime, L.counit, L.mult
    checks = []
    for m in test_set:
        a = L.basis(m)

        def single(m=m, a=a):
            ra, pa = rho(m), phi(m)
            return first_failure(
                lambda: _monomial_check(L, "rho coassociativity", (m,), apply_at(ra, 0, 1, dp), apply_at(ra, 1, 1, rho)),
                lambda: _monomial_check(L, "phi coassociativity", (m,), apply_at(pa, 1, 1, dp), apply_at(pa, 0, 1, phi)),
                lambda: _monomial_check(L, "phi counit", (m,), apply_at(pa, 1, 1, eps), a),
                lambda: _monomial_check(L, "HM1 rho", (m,), apply_at(ra, 1, 1, eps), combine(*((c, L.unit()) for c in apply_at(a, 0, 1, eps).values()))),
                lambda: _monomial_check(L, "HM1 phi", (m,), apply_at(pa, 0, 1, eps), combine(*((c, L.unit()) for c in apply_at(a, 0, 1, eps).values()))),
                lambda: _monomial_check(L, "HM2", (m,), apply_at(ra, 1, 1, dp), _hm2_rhs(L, a, rho, phi)),
                lambda: _monomial_check(L, "HM3", (m,), apply_at(pa, 0, 1, dp), _hm3_rhs(L, a, rho, phi)),
            )

        checks.append(single)
    for m, n in product(test_set, repeat=2):
        def pair(m=m, n=n):
            h_a = {(m, n): L.one}
            # h[0]a(-1) (x) h[1]a(0) against a(-1)h[0] (x) a(0)h[1]
            lhs = permute(apply_at(apply_at(h_a, 1, 1, rho), 0, 1, phi), (0, 2, 1, 3))
            lhs = apply_at(apply_at(lhs, 0, 2, mult), 1, 2, mult)
            rhs = permute(apply_at(apply_at(h_a, 1, 1, rho), 0, 1, phi), (2, 0, 3, 1))
            rhs = apply_at(apply_at(rhs, 0, 2, mult), 1, 2, mult)
            product_ = apply_at({(m, n): L.one}, 0, 2, mult)
            return first_failure(
                lambda: _monomial_check(L, "HM4", (m, n), lhs, rhs),
                lambda: _monomial_check(L, "rho is multiplicative", (m, n), apply_at(product_, 0, 1, rho), _product_coaction(L, m, n, rho, rho)),
                lambda: _monomial_check(L, "phi is multiplicative", (m, n), apply_at(product_, 0, 1, phi), _product_coaction(L, m, n, phi, phi)),
            )

        checks.append(pair)
    return first_failure(*checks)


def _product_coaction(L: LazyHopfData, m, n, left: LegMap, right: LegMap) -> Tensor:
    t = apply_at(apply_at({(m, n): L.one}, 0, 1, left), 2, 1, right)
    t = permute(t, (0, 2, 1, 3))
    return apply_at(apply_at(t, 0, 2, L.mult), 1, 2, L.mult)


def _hm2_rhs(L: LazyHopfData, a: Tensor, rho: LegMap, phi: LegMap) -> Tensor:
    """a1(-1)a2(-1)[0] (x) a1(0)a2(-1)[1] (x) a2(0)."""
    t = apply_at(a, 0, 1, L.comult_prime)
    t = apply_at(apply_at(t, 0, 1, rho), 2, 1, rho)
    # a1(-1), a1(0), a2(-1), a2(0) -> a1(-1), a1(0), a2(-1)[0], a2(-1)[1], a2(0)
    t = apply_at(t, 2, 1, phi)
    t = permute(t, (0, 2, 1, 3, 4))
    return apply_at(apply_at(t, 0, 2, L.mult), 1, 2, L.mult)


def _hm3_rhs(L: LazyHopfData, h: Tensor, rho: LegMap, phi: LegMap) -> Tensor:
    """h1[0] (x) h1[1](-1)h2[0] (x) h1[1](0)h2[1]."""
    t = apply_at(h, 0, 1, L.comult_prime)
    t = apply_at(apply_at(t, 0, 1, phi), 2, 1, phi)
    # h1[0], h1[1], h2[0], h2[1] -> h1[0], h1[1](-1), h1[1](0), h2[0], h2[1]
    t = apply_at(t, 1, 1, rho)
    t = permute(t, (0, 1, 3, 2, 4))
    return apply_at(apply_at(t, 1, 2, L.mult), 2, 2, L.mult)


def laurent_braid(L: LazyHopfData) -> LegMap:
    """c(x (x) y) = x(-1)y[0] (x) x(0)y[1]."""
    rho, phi = laurent_rho(L), laurent_phi(L)

    def c(m: LaurentMonomial, n: LaurentMonomial) -> Tensor:
        t = permute(apply_at(apply_at({(m, n): L.one}, 0, 1, rho), 2, 1, phi), (0, 2, 1, 3))
        return apply_at(apply_at(t, 0, 2, L.mult), 1, 2, L.mult)
    return _Memo(c)


def check_braid_on_monomials(L: LazyHopfData, test_set: Sequence[LaurentMonomial]) -> CheckReport:
    c = laurent_braid(L)
    checks = []
    for triple in product(test_set, repeat=3):
        def check(triple=triple):
            start = {triple: L.one}
            lhs = apply_at(apply_at(apply_at(start, 0, 2, c), 1, 2, c), 0, 2, c)
            rhs = apply_at(apply_at(apply_at(start, 1, 2, c), 0, 2, c), 1, 2, c)
            return _monomial_check(L, "braid equation", triple, lhs, rhs)
        checks.append(check)
    return first_failure(*checks)
