"""
Exact rationals and truncated formal power series

Rat is fractions.Fraction: always in lowest terms with a positive
denominator and canonical zero 0/1. Series carries its truncation order N
and exactly N+1 coefficients; operations on mismatched orders fail rather
than re-truncate.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from sympy import divisors

from .exceptions import PreconditionError, SpecParseError, TruncationMismatchError

Rat = Fraction
RatLike = Union[int, str, Fraction]


def to_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or decimal string like ``-3/4`` to a Rat"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"not a rational: {value!r}", operation="to_rat")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"invalid rational '{value}'", text=value)
    raise PreconditionError(f"not a rational: {value!r}", operation="to_rat")


def format_rat(q: Fraction) -> str:
    """Exact text form: ``3``, ``-1/2``; never a decimal"""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_to_json(q: Fraction) -> List[str]:
    return [str(q.numerator), str(q.denominator)]


def rat_from_json(pair: Sequence[str]) -> Fraction:
    try:
        num, den = pair
        return Fraction(int(num), int(den))
    except (TypeError, ValueError, ZeroDivisionError):
        raise SpecParseError(f"invalid rational pair {pair!r}")


@dataclass(frozen=True)
class Series:
    """Truncated power series over Q, coefficients of z^0..z^trunc"""

    trunc: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.trunc < 0:
            raise PreconditionError("truncation order must be non-negative", operation="Series")
        if len(self.coeffs) != self.trunc + 1:
            raise PreconditionError(
                f"expected {self.trunc + 1} coefficients, got {len(self.coeffs)}",
                operation="Series",
            )
        object.__setattr__(self, "coeffs", tuple(to_rat(c) for c in self.coeffs))

    # Constructors

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RatLike], trunc: int) -> "Series":
        """Pad with zeros (or cut) to exactly trunc+1 coefficients"""
        values = [to_rat(c) for c in coeffs][: trunc + 1]
        values.extend([Fraction(0)] * (trunc + 1 - len(values)))
        return cls(trunc, tuple(values))

    @classmethod
    def from_terms(cls, terms: Mapping[int, RatLike], trunc: int) -> "Series":
        values = [Fraction(0)] * (trunc + 1)
        for k, c in terms.items():
            if 0 <= k <= trunc:
                values[k] += to_rat(c)
        return cls(trunc, tuple(values))

    @classmethod
    def zero(cls, trunc: int) -> "Series":
        return cls.from_coeffs([], trunc)

    @classmethod
    def one(cls, trunc: int) -> "Series":
        return cls.from_coeffs([1], trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, coeff: RatLike = 1) -> "Series":
        return cls.from_terms({k: coeff}, trunc)

    # Access

    def coeff(self, k: int) -> Fraction:
        if not 0 <= k <= self.trunc:
            raise IndexError(f"coefficient z^{k} is outside 0..{self.trunc}")
        return self.coeffs[k]

    def __getitem__(self, k: int) -> Fraction:
        return self.coeff(k)

    def __len__(self) -> int:
        return self.trunc + 1

    # Arithmetic

    def _check(self, other: "Series", operation: str) -> None:
        if not isinstance(other, Series):
            raise PreconditionError(f"cannot combine Series with {type(other).__name__}",
                                    operation=operation)
        if other.trunc != self.trunc:
            raise TruncationMismatchError(self.trunc, other.trunc, operation)

    def __add__(self, other: "Series") -> "Series":
        self._check(other, "add")
        return Series(self.trunc, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._check(other, "sub")
        return Series(self.trunc, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Series":
        return Series(self.trunc, tuple(-a for a in self.coeffs))

    def scale(self, factor: RatLike) -> "Series":
        q = to_rat(factor)
        return Series(self.trunc, tuple(q * a for a in self.coeffs))

    def __mul__(self, other: Union["Series", RatLike]) -> "Series":
        if isinstance(other, Series):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def exp(self) -> "Series":
        return series_exp(self)

    def log(self) -> "Series":
        return series_log(self)

    def pow(self, e: RatLike) -> "Series":
        return series_pow_rat(self, e)

    # Rendering

    def to_text(self) -> str:
        return ",".join(format_rat(c) for c in self.coeffs)

    def to_json_obj(self) -> Dict[str, Any]:
        return {"trunc": self.trunc, "coeffs": [rat_to_json(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, data: Union[str, Mapping[str, Any]]) -> "Series":
        obj = json.loads(data) if isinstance(data, str) else data
        try:
            trunc = int(obj["trunc"])
            coeffs = tuple(rat_from_json(pair) for pair in obj["coeffs"])
        except (KeyError, TypeError, ValueError):
            raise SpecParseError("malformed series JSON")
        return cls(trunc, coeffs)

    def __str__(self) -> str:
        return f"Series(N={self.trunc}: {self.to_text()})"


def series_mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at the common order"""
    a._check(b, "series_mul")
    n = a.trunc
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return Series(n, tuple(out))


def series_exp(a: Series) -> Series:
    """exp(a) for a with zero constant term.

    Uses b' = a' b, i.e. n b_n = sum_{k=1..n} k a_k b_{n-k}.
    """
    if a.coeffs[0] != 0:
        raise PreconditionError("series_exp needs a zero constant term", operation="series_exp")
    n = a.trunc
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if a.coeffs[k]:
                acc += k * a.coeffs[k] * b[m - k]
        b[m] = acc / m
    return Series(n, tuple(b))


def series_log(a: Series) -> Series:
    """log(a) for a with constant term 1, via l' = a'/a"""
    if a.coeffs[0] != 1:
        raise PreconditionError("series_log needs constant term 1", operation="series_log")
    n = a.trunc
    out = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        acc = m * a.coeffs[m]
        for k in range(1, m):
            if out[k]:
                acc -= k * out[k] * a.coeffs[m - k]
        out[m] = acc / m
    return Series(n, tuple(out))


def series_pow_rat(a: Series, e: RatLike) -> Series:
    """a^e = exp(e log a) for a with constant term 1"""
    if a.coeffs[0] != 1:
        raise PreconditionError("series_pow_rat needs constant term 1",
                                operation="series_pow_rat")
    return series_exp(series_log(a).scale(to_rat(e)))


def euler_product(exponents: Mapping[int, RatLike], trunc: int) -> Series:
    """prod_{r=1..N} (1 - z^r)^(-a_r), truncated at N.

    Computed as exp(sum_r a_r sum_j z^{rj}/j). Missing exponents count as 0.
    """
    logs = [Fraction(0)] * (trunc + 1)
    for r in range(1, trunc + 1):
        a_r = to_rat(exponents.get(r, 0))
        if not a_r:
            continue
        for j in range(1, trunc // r + 1):
            logs[r * j] += a_r / j
    return series_exp(Series(trunc, tuple(logs)))


def macdonald_series(chi: RatLike, trunc: int) -> Series:
    """(1 - z)^(-chi): generating function of chi(S^n X)"""
    return series_pow_rat(Series.from_coeffs([1, -1], trunc), -to_rat(chi))


def free_abelian_j(m: int, k: int) -> int:
    """j(m;k), the number of index-k subgroups of Z^m.

    j(m;k) = sum_{d|k} d j(m-1;d), with j(0;1) = 1 and j(0;k>1) = 0.
    """
    if m < 0 or k < 1:
        raise PreconditionError(f"j(m;k) needs m >= 0, k >= 1 (got m={m}, k={k})",
                                operation="free_abelian_j")
    return _free_abelian_j(m, k)


def _free_abelian_j(m: int, k: int) -> int:
    if m == 0:
        return 1 if k == 1 else 0
    return sum(d * _free_abelian_j(m - 1, d) for d in divisors(k))


def bryan_fulman_exponents(m: int, chi: RatLike, trunc: int) -> Dict[int, Fraction]:
    """Exponent map of prod (1 - z^{j_1...j_{m-1}})^(-j_1^{m-2} ... j_{m-2} chi).

    Tuples (j_1, ..., j_{m-1}) of positive integers are enumerated
    explicitly; the weight of a tuple is prod_i j_i^{m-1-i}.
    """
    if m < 1:
        raise PreconditionError("m must be at least 1", operation="bryan_fulman_exponents")
    q = to_rat(chi)
    out: Dict[int, Fraction] = {r: Fraction(0) for r in range(1, trunc + 1)}
    for r in range(1, trunc + 1):
        for tup in ordered_factorizations(r, m - 1):
            weight = 1
            for i, j in enumerate(tup, start=1):
                weight *= j ** (m - 1 - i)
            out[r] += weight * q
    return out


def ordered_factorizations(k: int, parts: int) -> List[Tuple[int, ...]]:
    """All ordered tuples of `parts` positive integers with product k"""
    if parts == 0:
        return [()] if k == 1 else []
    result = []
    for d in divisors(k):
        for rest in ordered_factorizations(k // d, parts - 1):
            result.append((d,) + rest)
    return result


def tamanoi_series(m: int, chi_m: RatLike, trunc: int) -> Series:
    """prod_r (1 - z^r)^(-j(m-1;r) chi_m)"""
    q = to_rat(chi_m)
    return euler_product({r: free_abelian_j(m - 1, r) * q for r in range(1, trunc + 1)}, trunc)


def exp_coefficients(trunc: int) -> Series:
    """exp(z), coefficients 1/n!"""
    return Series(trunc, tuple(Fraction(1, factorial(n)) for n in range(trunc + 1)))
