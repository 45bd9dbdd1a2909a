"""
Formal diagonal operators

The free commutative graded algebra over Q on generators D^k(c), one for
every k >= 1 and base class c, truncated by total weight. The weight-n
slice of an element is its z^n coefficient.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from sympy import divisors

from .exceptions import PreconditionError, SpecParseError, TruncationMismatchError
from .grp import FreeAbelian, GroupSpec, JSequence, Trivial, closed_form_j, subgroup_type
from .homcount import CycleType, census_sym
from .qexact import RatLike, Series, format_rat, rat_from_json, rat_to_json, series_log, to_rat

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class BaseClass:
    """A symbol such as ``c``, ``1_X`` or ``1^(Z^2)_X/G``"""
    name: str

    def __str__(self) -> str:
        return self.name


DEFAULT_BASE = BaseClass("c")


@dataclass(frozen=True)
class BaseElement:
    """Rational combination of base classes"""
    terms: Mapping[BaseClass, Fraction]

    def __post_init__(self):
        clean = {b: to_rat(q) for b, q in self.terms.items() if q}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def of(cls, base: Union[str, BaseClass], coeff: RatLike = 1) -> "BaseElement":
        b = base if isinstance(base, BaseClass) else BaseClass(base)
        return cls({b: to_rat(coeff)})

    def __add__(self, other: "BaseElement") -> "BaseElement":
        out = dict(self.terms)
        for b, q in other.terms.items():
            out[b] = out.get(b, Fraction(0)) + q
        return BaseElement(out)

    def scale(self, factor: RatLike) -> "BaseElement":
        q = to_rat(factor)
        return BaseElement({b: q * v for b, v in self.terms.items()})

    def __mul__(self, factor: RatLike) -> "BaseElement":
        return self.scale(factor)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> List[Tuple[BaseClass, Fraction]]:
        return sorted(self.terms.items())


Factor = Tuple[int, BaseClass]


@dataclass(frozen=True, order=True)
class DiagMonomial:
    """D^{k_1}(c_1) ... D^{k_l}(c_l), factors sorted by (k, base name)"""
    factors: Tuple[Factor, ...] = ()

    def __post_init__(self):
        if any(k < 1 for k, _ in self.factors):
            raise PreconditionError("diagonal degree must be positive", operation="DiagMonomial")
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @property
    def weight(self) -> int:
        return sum(k for k, _ in self.factors)

    @property
    def length(self) -> int:
        return len(self.factors)

    def __mul__(self, other: "DiagMonomial") -> "DiagMonomial":
        return DiagMonomial(self.factors + other.factors)

    def to_text(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        i = 0
        while i < len(self.factors):
            j = i
            while j < len(self.factors) and self.factors[j] == self.factors[i]:
                j += 1
            k, base = self.factors[i]
            power = j - i
            parts.append(f"D{k}({base.name})" + (f"^{power}" if power > 1 else ""))
            i = j
        return "·".join(parts)


UNIT_MONOMIAL = DiagMonomial()


def _check_trunc(a: "DiagElement", b: "DiagElement", operation: str) -> None:
    if a.trunc != b.trunc:
        raise TruncationMismatchError(a.trunc, b.trunc, operation)


@dataclass(frozen=True)
class DiagElement:
    """Truncated element of the free diagonal-operator algebra"""
    trunc: int
    terms: Mapping[DiagMonomial, Fraction]

    def __post_init__(self):
        if self.trunc < 0:
            raise PreconditionError("truncation order must be non-negative", operation="DiagElement")
        clean = {}
        for mono, q in self.terms.items():
            if mono.weight > self.trunc:
                raise PreconditionError(
                    f"monomial {mono.to_text()} exceeds truncation {self.trunc}",
                    operation="DiagElement",
                )
            if q:
                clean[mono] = to_rat(q)
        object.__setattr__(self, "terms", clean)

    # Constructors

    @classmethod
    def zero(cls, trunc: int) -> "DiagElement":
        return cls(trunc, {})

    @classmethod
    def unit(cls, trunc: int) -> "DiagElement":
        return cls(trunc, {UNIT_MONOMIAL: Fraction(1)})

    @classmethod
    def generator(cls, k: int, base: Union[str, BaseClass], trunc: int,
                  coeff: RatLike = 1) -> "DiagElement":
        b = base if isinstance(base, BaseClass) else BaseClass(base)
        if k > trunc:
            return cls.zero(trunc)
        return cls(trunc, {DiagMonomial(((k, b),)): to_rat(coeff)})

    # Arithmetic

    def __add__(self, other: "DiagElement") -> "DiagElement":
        _check_trunc(self, other, "add")
        out = dict(self.terms)
        for m, q in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + q
        return DiagElement(self.trunc, out)

    def __sub__(self, other: "DiagElement") -> "DiagElement":
        return self + other.scale(-1)

    def __neg__(self) -> "DiagElement":
        return self.scale(-1)

    def scale(self, factor: RatLike) -> "DiagElement":
        q = to_rat(factor)
        return DiagElement(self.trunc, {m: q * v for m, v in self.terms.items()})

    def odot(self, other: "DiagElement") -> "DiagElement":
        return odot(self, other)

    def __mul__(self, other: Union["DiagElement", RatLike]) -> "DiagElement":
        if isinstance(other, DiagElement):
            return odot(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    # Inspection

    def coefficient(self, mono: DiagMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    @property
    def constant(self) -> Fraction:
        return self.coefficient(UNIT_MONOMIAL)

    def slice(self, n: int) -> Dict[DiagMonomial, Fraction]:
        """The weight-n part, i.e. the z^n coefficient"""
        return {m: q for m, q in self.terms.items() if m.weight == n}

    def bases(self) -> List[BaseClass]:
        return sorted({b for m in self.terms for _, b in m.factors})

    def sorted_terms(self) -> List[Tuple[DiagMonomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0].weight, item[0].factors))

    # Rendering

    def to_text(self) -> str:
        """``1 + z·D1(c) + z^2·( 1/2·D1(c)^2 + 1/2·D2(c) )``"""
        if not self.terms:
            return "0"
        chunks = []
        for n in range(self.trunc + 1):
            part = sorted(self.slice(n).items(), key=lambda item: item[0].factors)
            if not part:
                continue
            rendered = [_render_term(m, q) for m, q in part]
            if n == 0:
                chunks.append(rendered[0])
                continue
            prefix = "z" if n == 1 else f"z^{n}"
            if len(rendered) == 1:
                chunks.append(f"{prefix}·{rendered[0]}")
            else:
                chunks.append(f"{prefix}·( " + " + ".join(rendered) + " )")
        return " + ".join(chunks)

    def to_json_obj(self) -> Dict[str, Any]:
        return {
            "trunc": self.trunc,
            "terms": [
                {"coeff": rat_to_json(q),
                 "mono": [{"k": k, "base": b.name} for k, b in m.factors]}
                for m, q in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data: Union[str, Mapping[str, Any]]) -> "DiagElement":
        obj = json.loads(data) if isinstance(data, str) else data
        try:
            terms: Dict[DiagMonomial, Fraction] = {}
            for term in obj["terms"]:
                mono = DiagMonomial(tuple((int(f["k"]), BaseClass(f["base"])) for f in term["mono"]))
                terms[mono] = terms.get(mono, Fraction(0)) + rat_from_json(term["coeff"])
            return cls(int(obj["trunc"]), terms)
        except (KeyError, TypeError, ValueError):
            raise SpecParseError("malformed diagonal element JSON")

    def __str__(self) -> str:
        return self.to_text()


def _render_term(mono: DiagMonomial, q: Fraction) -> str:
    if not mono.factors:
        return format_rat(q)
    if q == 1:
        return mono.to_text()
    if q == -1:
        return "-" + mono.to_text()
    return f"{format_rat(q)}·{mono.to_text()}"


# Products, exp and Log

def odot(a: DiagElement, b: DiagElement) -> DiagElement:
    """Free commutative product; weights add, overweight terms drop"""
    _check_trunc(a, b, "odot")
    out: Dict[DiagMonomial, Fraction] = {}
    for ma, qa in a.terms.items():
        room = a.trunc - ma.weight
        for mb, qb in b.terms.items():
            if mb.weight > room:
                continue
            m = ma * mb
            out[m] = out.get(m, Fraction(0)) + qa * qb
    return DiagElement(a.trunc, out)


def odot_power(a: DiagElement, n: int) -> DiagElement:
    result = DiagElement.unit(a.trunc)
    for _ in range(n):
        result = odot(result, a)
    return result


def diag_exp(a: DiagElement) -> DiagElement:
    """sum_n a^{⊙n} / n! for a without weight-0 part"""
    if a.constant:
        raise PreconditionError("diag_exp needs a zero weight-0 part", operation="diag_exp")
    result = DiagElement.unit(a.trunc)
    power = DiagElement.unit(a.trunc)
    for n in range(1, a.trunc + 1):
        power = odot(power, a).scale(Fraction(1, n))
        if not power.terms:
            break
        result = result + power
    return result


def diag_log(a: DiagElement) -> DiagElement:
    """Log(1 + t) = sum_n (-1)^{n+1} t^{⊙n} / n, t = a - 1"""
    if a.constant != 1:
        raise PreconditionError("diag_log needs weight-0 part equal to 1", operation="diag_log")
    t = a - DiagElement.unit(a.trunc)
    result = DiagElement.zero(a.trunc)
    power = DiagElement.unit(a.trunc)
    for n in range(1, a.trunc + 1):
        power = odot(power, t)
        if not power.terms:
            break
        sign = 1 if n % 2 else -1
        result = result + power.scale(Fraction(sign, n))
    return result


# Standard operators

def _as_base(alpha: Union[BaseElement, BaseClass, str]) -> BaseElement:
    if isinstance(alpha, BaseElement):
        return alpha
    return BaseElement.of(alpha)


def apply_standard(U: Mapping[int, RatLike], alpha: Union[BaseElement, BaseClass, str],
                   trunc: int) -> DiagElement:
    """sum_k v_k D^k(alpha), linear in alpha"""
    base = _as_base(alpha)
    terms: Dict[DiagMonomial, Fraction] = {}
    for k, v in U.items():
        q = to_rat(v)
        if k < 1:
            if q:
                raise PreconditionError("standard operators have no weight-0 part",
                                        operation="apply_standard")
            continue
        if k > trunc or not q:
            continue
        for b, coeff in base.terms.items():
            mono = DiagMonomial(((k, b),))
            terms[mono] = terms.get(mono, Fraction(0)) + q * coeff
    return DiagElement(trunc, terms)


def power_notation(U: Mapping[int, RatLike], alpha: Union[BaseElement, BaseClass, str],
                   trunc: int) -> DiagElement:
    """(1 + U)^alpha := exp(Log(1 + U)(alpha)).

    ``power_notation({1: -1}, -c, N)`` is (1 - zD)^{-c}.
    """
    if to_rat(U.get(0, 0)):
        raise PreconditionError("U must have zero constant term", operation="power_notation")
    one_plus_u = Series.from_terms({0: 1, **{k: v for k, v in U.items() if 1 <= k <= trunc}}, trunc)
    log = series_log(one_plus_u)
    return diag_exp(apply_standard(dict(enumerate(log.coeffs)), alpha, trunc))


def mixed_operator(c: CycleType, alpha: Union[BaseElement, BaseClass, str],
                   trunc: Optional[int] = None) -> DiagElement:
    """D^1(alpha)^{⊙c_1} ⊙ ... ⊙ D^n(alpha)^{⊙c_n}"""
    n = c.n if trunc is None else trunc
    result = DiagElement.unit(n)
    for r, cr in c.items():
        result = odot(result, odot_power(apply_standard({r: 1}, alpha, n), cr))
    return result


# Generating-function engines

def dw_rhs(jseq: JSequence, alpha: Union[BaseElement, BaseClass, str], trunc: int) -> DiagElement:
    """exp(sum_r j_r / r · z^r D^r(alpha))"""
    jseq.require(trunc)
    U = {r: Fraction(jseq[r], r) for r in range(1, trunc + 1)}
    return diag_exp(apply_standard(U, alpha, trunc))


def dw_rhs_wreath(spec: Optional[GroupSpec], base_assignment: Optional[Mapping[int, BaseElement]],
                  trunc: int) -> DiagElement:
    """
    exp(sum_r (1/r) z^r D^r(base_assignment[r])), missing r count as 0.

    Without an explicit assignment the one of spec is used
    (see wreath_base_assignment).
    """
    if base_assignment is None:
        if spec is None:
            raise PreconditionError("dw_rhs_wreath needs a group or a base assignment",
                                    operation="dw_rhs_wreath")
        base_assignment = wreath_base_assignment(spec, trunc)
    total = DiagElement.zero(trunc)
    for r in range(1, trunc + 1):
        base = base_assignment.get(r)
        if base:
            total = total + apply_standard({r: Fraction(1, r)}, base, trunc)
    return diag_exp(total)


def subgroup_symbol(sub: GroupSpec) -> BaseClass:
    """Symbol standing for the canonical function 1^(B)_X/G"""
    if isinstance(sub, FreeAbelian):
        return BaseClass(f"1^({sub.m})_X/G")
    if isinstance(sub, Trivial):
        return BaseClass("1^(e)_X/G")
    return BaseClass(f"1^({sub.to_text()})_X/G")


def wreath_base_assignment(spec: GroupSpec, trunc: int) -> Dict[int, BaseElement]:
    """r -> j_r(A) · symbol of the common index-r subgroup type"""
    assignment: Dict[int, BaseElement] = {}
    for r in range(1, trunc + 1):
        sub = subgroup_type(spec, r)
        j_r = closed_form_j(spec, r)
        if sub is None or not j_r:
            continue
        assignment[r] = BaseElement.of(subgroup_symbol(sub), j_r)
    return assignment


def lemma_dey_lhs(jseq: JSequence, alpha: Union[BaseElement, BaseClass, str],
                  trunc: int) -> DiagElement:
    """sum over cycle types c of weight <= N of (♯c/n!) prod j_i^{c_i} D^i(alpha)^{⊙c_i}"""
    jseq.require(trunc)
    result = DiagElement.zero(trunc)
    for n in range(trunc + 1):
        for c in CycleType.all_of_weight(n):
            coeff = Fraction(c.cardinality, factorial(n))
            for r, cr in c.items():
                coeff *= jseq[r] ** cr
            if coeff:
                result = result + mixed_operator(c, alpha, trunc).scale(coeff)
    return result


def hom_oracle_lhs(spec: GroupSpec, alpha: Union[BaseElement, BaseClass, str], trunc: int,
                   budget: Optional[int] = None) -> DiagElement:
    """sum_n sum_c (N_c / n!) · M_c with N_c from a brute-force census of Hom(A, S_n)"""
    result = DiagElement.zero(trunc)
    for n in range(trunc + 1):
        census = census_sym(spec, n, budget)
        for c, count in census.counts.items():
            if count:
                result = result + mixed_operator(c, alpha, trunc).scale(Fraction(count, factorial(n)))
    logger.debug("hom oracle for %s built to weight %d", spec.to_text(), trunc)
    return result


def euler_form(exponents: Mapping[int, RatLike], alpha: Union[BaseElement, BaseClass, str],
               trunc: int) -> DiagElement:
    """prod_r (1 - z^r D^r)^{-a_r alpha}, one power_notation factor per r"""
    base = _as_base(alpha)
    result = DiagElement.unit(trunc)
    for r in range(1, trunc + 1):
        a_r = to_rat(exponents.get(r, 0))
        if a_r:
            result = odot(result, power_notation({r: -1}, base.scale(-a_r), trunc))
    return result


def cyclic_closed_form(d: int, alpha: Union[BaseElement, BaseClass, str], trunc: int) -> DiagElement:
    """exp(sum_{r | d} (1/r) (zD)^r(alpha))"""
    U = {r: Fraction(1, r) for r in divisors(d) if r <= trunc}
    return diag_exp(apply_standard(U, alpha, trunc))


def artin_hasse_form(p: int, alpha: Union[BaseElement, BaseClass, str], trunc: int) -> DiagElement:
    """exp(sum_k (1/p^k) (zD)^{p^k}(alpha))"""
    U = {}
    r = 1
    while r <= trunc:
        U[r] = Fraction(1, r)
        r *= p
    return diag_exp(apply_standard(U, alpha, trunc))


def exponent_support(element: DiagElement) -> List[int]:
    """Sorted diagonal degrees k of the generators D^k appearing in diag_log(element)"""
    log = diag_log(element)
    return sorted({k for mono in log.terms for k, _ in mono.factors})


def degree_specialize(a: DiagElement, values: Mapping[Union[str, BaseClass], RatLike]) -> Series:
    """Send prod D^{k_i}(c_i) to prod values(c_i) · z^{sum k_i}"""
    lookup = {(k.name if isinstance(k, BaseClass) else k): to_rat(v) for k, v in values.items()}
    coeffs = [Fraction(0)] * (a.trunc + 1)
    for mono, q in a.terms.items():
        term = q
        for _, base in mono.factors:
            if base.name not in lookup:
                raise PreconditionError(f"no value assigned to base class '{base.name}'",
                                        operation="degree_specialize")
            term *= lookup[base.name]
        coeffs[mono.weight] += term
    return Series(a.trunc, tuple(coeffs))
