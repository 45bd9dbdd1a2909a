"""
Homomorphism censuses into S_n and G wr S_n

Brute-force counts stratified by cycle type, next to the exponential
formulas that predict them.
"""

import csv
import io
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from .exceptions import ConsistencyError, PreconditionError, UnsupportedGroupError
from .grp import (
    FiniteGroup,
    GroupSpec,
    JSequence,
    closed_form_j,
    count_homs,
    count_transitive_homs,
    enumerate_homs,
    orbit_type,
    subgroup_type,
    symmetric_group,
    wreath_product,
)
from .qexact import Series, series_exp

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CycleType:
    """[c_1..c_n] with sum i c_i = n"""
    c: Tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.c):
            raise PreconditionError("cycle type entries must be non-negative", operation="CycleType")
        if self.weight != len(self.c):
            raise PreconditionError(
                f"cycle type {list(self.c)} has weight {self.weight}, expected {len(self.c)}",
                operation="CycleType",
            )

    @classmethod
    def from_parts(cls, n: int, parts: Mapping[int, int]) -> "CycleType":
        c = [0] * n
        for size, mult in parts.items():
            c[size - 1] += mult
        return cls(tuple(c))

    @staticmethod
    def all_of_weight(n: int) -> List["CycleType"]:
        """Every cycle type of weight n, largest length first"""
        if n == 0:
            return [CycleType(())]
        types = [CycleType.from_parts(n, p) for p in partitions(n)]
        return sorted(types, reverse=True)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def weight(self) -> int:
        return sum(i * ci for i, ci in enumerate(self.c, start=1))

    @property
    def length(self) -> int:
        return sum(self.c)

    @property
    def cardinality(self) -> int:
        """n! / prod_i i^{c_i} c_i!, the size of the conjugacy class"""
        denom = 1
        for i, ci in enumerate(self.c, start=1):
            denom *= i ** ci * factorial(ci)
        return factorial(self.n) // denom

    def items(self) -> List[Tuple[int, int]]:
        """(r, c_r) pairs with c_r > 0"""
        return [(i, ci) for i, ci in enumerate(self.c, start=1) if ci]

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.c) + "]"


@dataclass(frozen=True)
class HomCensus:
    """Hom(A, target) counted by cycle type of the S_n-part"""
    n: int
    source: GroupSpec
    target: str
    counts: Mapping[CycleType, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, c: Sequence[int]) -> int:
        key = c if isinstance(c, CycleType) else CycleType(tuple(c))
        return self.counts.get(key, 0)

    def to_json_obj(self) -> Dict[str, object]:
        return {
            "source": self.source.to_text(),
            "target": self.target,
            "n": self.n,
            "total": self.total,
            "by_type": [{"type": list(c.c), "count": self.counts[c]}
                        for c in sorted(self.counts, reverse=True)],
        }

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["type", "count"])
        for c in sorted(self.counts, reverse=True):
            writer.writerow([str(c), self.counts[c]])
        return buffer.getvalue()


def _census(source: GroupSpec, n: int, target_label: str, tally: Counter) -> HomCensus:
    counts = {c: tally.get(c, 0) for c in CycleType.all_of_weight(n)}
    census = HomCensus(n, source, target_label, counts)
    logger.debug("census %s -> %s: total %d", source.to_text(), target_label, census.total)
    return census


def census_sym(spec: GroupSpec, n: int, budget: Optional[int] = None) -> HomCensus:
    """Every homomorphism A -> S_n, typed by its orbit decomposition"""
    target = symmetric_group(n)
    tally: Counter = Counter()
    for images in enumerate_homs(spec, target, budget):
        gens = [target.elements[i] for i in images]
        tally[CycleType(orbit_type(gens, n))] += 1
    return _census(spec, n, f"S{n}", tally)


def census_wreath(spec: GroupSpec, G: FiniteGroup, n: int,
                  budget: Optional[int] = None) -> HomCensus:
    """Every homomorphism A -> G wr S_n, typed by its S_n-projection"""
    wreath = wreath_product(G, n)
    tally: Counter = Counter()
    for images in enumerate_homs(spec, wreath.group, budget):
        sigmas = [wreath.sigma(i) for i in images]
        tally[CycleType(orbit_type(sigmas, n))] += 1
    return _census(spec, n, f"{G.name or 'G'} wr S{n}", tally)


def sym_total_via_formula(jseq: JSequence, trunc: int) -> Series:
    """exp(sum_r j_r z^r / r); z^n coefficient is |Hom(A, S_n)| / n!"""
    jseq.require(trunc)
    log = Series.from_terms({r: Fraction(jseq[r], r) for r in range(1, trunc + 1)}, trunc)
    return series_exp(log)


def wreath_total_via_formula(spec: GroupSpec, G: FiniteGroup, trunc: int,
                             budget: Optional[int] = None) -> Series:
    """exp(sum_r j_r(A) |Hom(B_r, G)| / (|G| r) z^r).

    z^n coefficient is |Hom(A, G_n)| / (|G|^n n!). Needs the common type B_r
    of index-r subgroups, so only Trivial, Z^m and Z/d are accepted.
    """
    terms: Dict[int, Fraction] = {}
    for r in range(1, trunc + 1):
        j_r = closed_form_j(spec, r)
        if j_r is None:
            raise UnsupportedGroupError(
                f"subgroup types unknown for {spec.to_text()}", group=spec.to_text())
        if not j_r:
            continue
        sub = subgroup_type(spec, r)
        h_r = count_homs(sub, G, budget) if sub is not None else 0
        terms[r] = Fraction(j_r * h_r, G.order * r)
    return series_exp(Series.from_terms(terms, trunc))


def hom_count(spec: GroupSpec, G: FiniteGroup, budget: Optional[int] = None) -> int:
    """|Hom(A, G)| by brute force"""
    return count_homs(spec, G, budget)


def commuting_tuple_count(G: FiniteGroup, m: int, within: Optional[Sequence[int]] = None) -> int:
    """|Hom(Z^m, H)| for H = G or the subgroup `within`.

    |Hom(Z^m, H)| = sum_{x in H} |Hom(Z^{m-1}, C_H(x))|; at the top level the
    sum runs over conjugacy classes weighted by class size.
    """
    if m == 0:
        return 1
    if within is None:
        total = 0
        for cls in G.conjugacy_classes():
            total += len(cls) * commuting_tuple_count(G, m - 1, G.centralizer(cls[0]))
        return total
    return sum(commuting_tuple_count(G, m - 1, G.centralizer(x, within)) for x in within)


def type_count_formula(c: CycleType, transitive: Mapping[int, int]) -> int:
    """N_c = n! / prod (r!)^{c_r} c_r! * prod T_r^{c_r}"""
    denom = 1
    numer = 1
    for r, cr in c.items():
        denom *= factorial(r) ** cr * factorial(cr)
        numer *= transitive[r] ** cr
    quotient, remainder = divmod(factorial(c.n) * numer, denom)
    if remainder:
        raise ConsistencyError(f"type count for {c} is not an integer", expected=0, actual=remainder)
    return quotient


def transitive_counts(spec: GroupSpec, n: int, budget: Optional[int] = None) -> Dict[int, int]:
    """T_r = number of transitive actions of A on r points, r = 1..n"""
    return {r: count_transitive_homs(spec, r, budget) for r in range(1, n + 1)}
