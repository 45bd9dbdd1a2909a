"""
Finite G-set model

X is a finite set with a G-action; constructible functions on X^n are
rational-valued functions on tuples, stored densely. Fixed sets, canonical
functions, the ⊙-product, diagonal operators and pushforwards are computed
literally and compared with the symbolic engines by exact equality.
"""

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .config import resolve_budget
from .diagalg import (
    DiagElement,
    degree_specialize,
    dw_rhs,
    dw_rhs_wreath,
    subgroup_symbol,
)
from .exceptions import (
    BudgetExceededError,
    ConsistencyError,
    PreconditionError,
    SpecParseError,
    UnsupportedGroupError,
)
from .grp import (
    Cyclic,
    FiniteGroup,
    FreeAbelian,
    GroupSpec,
    Perm,
    Trivial,
    WreathElement,
    close_group,
    closed_form_j,
    compose,
    count_homs,
    enumerate_homs,
    j_sequence,
    orbit_type,
    subgroup_type,
    trivial_group,
    wreath_act,
    wreath_product,
)
from .homcount import CycleType, wreath_total_via_formula
from .qexact import format_rat, tamanoi_series

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]

UNIT_BASE = "1_X"


class GSet:
    """
    Finite set {0..k-1} with an action of a FiniteGroup.

    ``action[g]`` is the permutation of the points by group element g.
    """

    def __init__(self, points: int, group: FiniteGroup, action: Sequence[Perm]):
        if points < 1:
            raise PreconditionError("a G-set needs at least one point", operation="GSet")
        if len(action) != group.order:
            raise PreconditionError(
                f"action table has {len(action)} rows for a group of order {group.order}",
                operation="GSet",
            )
        self.points = points
        self.group = group
        self.action: Tuple[Perm, ...] = tuple(tuple(p) for p in action)
        self._check_action()

    def _check_action(self) -> None:
        identity = tuple(range(self.points))
        if any(len(p) != self.points or sorted(p) != list(identity) for p in self.action):
            raise PreconditionError("action rows must be permutations of the points",
                                    operation="GSet")
        if self.action[self.group.identity] != identity:
            raise PreconditionError("identity does not act trivially", operation="GSet")
        G = self.group
        for g in range(G.order):
            for h in range(G.order):
                if self.action[G.mul(g, h)] != compose(self.action[g], self.action[h]):
                    raise PreconditionError("action is not compatible with the group law",
                                            operation="GSet")

    # Constructors

    @classmethod
    def from_generator_images(cls, points: int, group: FiniteGroup,
                              images: Sequence[Perm]) -> "GSet":
        """Extend the images of group.generators to the whole group"""
        if len(images) != len(group.generators):
            raise PreconditionError(
                f"{len(images)} image tables for {len(group.generators)} generators",
                operation="GSet.from_generator_images",
            )
        table: List[Optional[Perm]] = [None] * group.order
        table[group.identity] = tuple(range(points))
        frontier = [group.identity]
        while frontier:
            next_frontier = []
            for g in frontier:
                for s, image in zip(group.generators, images):
                    gs = group.mul(g, s)
                    if table[gs] is None:
                        table[gs] = compose(table[g], tuple(image))
                        next_frontier.append(gs)
            frontier = next_frontier
        if any(row is None for row in table):
            raise PreconditionError("generators do not reach every group element",
                                    operation="GSet.from_generator_images")
        if any(table[s] != tuple(image) for s, image in zip(group.generators, images)):
            raise PreconditionError("image tables disagree with the group law",
                                    operation="GSet.from_generator_images")
        return cls(points, group, table)

    @classmethod
    def natural(cls, group: FiniteGroup) -> "GSet":
        return cls(group.degree, group, group.elements)

    @classmethod
    def trivial(cls, group: FiniteGroup, points: int) -> "GSet":
        return cls(points, group, [tuple(range(points))] * group.order)

    @classmethod
    def plain(cls, points: int) -> "GSet":
        """k points under the trivial group"""
        return cls.trivial(trivial_group(), points)

    @classmethod
    def from_json(cls, data: Union[str, Mapping[str, Any]]) -> "GSet":
        """
        ``{"points": k, "group": ["(1 2)", ...], "action": [[...], ...]}``

        ``group`` is a list of cycle-notation generators (or a named group
        such as ``"Z/2"``); ``action`` holds one 0-based image table per
        generator. Without ``action`` the group acts on its own points.
        """
        from .parser import parse_finite_group, parse_perm

        try:
            obj = json.loads(data) if isinstance(data, str) else data
            points = int(obj["points"])
            spec = obj["group"]
            if isinstance(spec, str):
                group = parse_finite_group(spec)
            else:
                perms = [parse_perm(text) for text in spec]
                degree = max((len(p) for p in perms), default=1)
                group = close_group([p + tuple(range(len(p), degree)) for p in perms], degree)
            if "action" not in obj:
                if group.degree != points:
                    raise SpecParseError(
                        f"group acts on {group.degree} points, G-set declares {points}")
                return cls.natural(group)
            images = [tuple(int(x) for x in row) for row in obj["action"]]
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
            raise SpecParseError(f"malformed G-set JSON: {e}")
        return cls.from_generator_images(points, group, images)

    # Structure

    @property
    def order(self) -> int:
        return self.group.order

    def stabilizer(self, x: int) -> List[int]:
        return [g for g in range(self.group.order) if self.action[g][x] == x]

    def orbits(self) -> List[Tuple[int, ...]]:
        seen = set()
        result = []
        for x in range(self.points):
            if x in seen:
                continue
            orbit = tuple(sorted({row[x] for row in self.action}))
            seen.update(orbit)
            result.append(orbit)
        return result

    def orbit_of(self, x: int) -> Tuple[int, ...]:
        return tuple(sorted({row[x] for row in self.action}))

    def tuples(self, n: int) -> List[Point]:
        return list(product(range(self.points), repeat=n))

    def __repr__(self) -> str:
        return f"<GSet points={self.points} group={self.group.name or self.group.order}>"


@dataclass(frozen=True)
class ConstrFn:
    """Rational function on X^n, stored densely"""
    space: GSet
    n: int
    values: Mapping[Point, Fraction] = field(compare=True)

    def __post_init__(self):
        dense = {x: Fraction(self.values.get(x, 0)) for x in self.space.tuples(self.n)}
        if any(x not in dense for x in self.values):
            raise PreconditionError("function values outside X^n", operation="ConstrFn")
        object.__setattr__(self, "values", dense)

    @classmethod
    def constant(cls, space: GSet, n: int, value=1) -> "ConstrFn":
        return cls(space, n, {x: Fraction(value) for x in space.tuples(n)})

    @classmethod
    def zero(cls, space: GSet, n: int) -> "ConstrFn":
        return cls(space, n, {})

    @classmethod
    def indicator(cls, space: GSet, n: int, subset: Iterable[Point]) -> "ConstrFn":
        return cls(space, n, {x: Fraction(1) for x in subset})

    def __getitem__(self, x: Point) -> Fraction:
        return self.values[tuple(x)]

    def _check(self, other: "ConstrFn") -> None:
        if other.space is not self.space or other.n != self.n:
            raise PreconditionError("functions live on different spaces", operation="ConstrFn")

    def __add__(self, other: "ConstrFn") -> "ConstrFn":
        self._check(other)
        return ConstrFn(self.space, self.n, {x: v + other.values[x] for x, v in self.values.items()})

    def __sub__(self, other: "ConstrFn") -> "ConstrFn":
        self._check(other)
        return ConstrFn(self.space, self.n, {x: v - other.values[x] for x, v in self.values.items()})

    def scale(self, factor) -> "ConstrFn":
        q = Fraction(factor)
        return ConstrFn(self.space, self.n, {x: q * v for x, v in self.values.items()})

    def is_invariant(self, elements: Iterable[WreathElement]) -> bool:
        return all(self.values[wreath_act(w, x, self.space.action)] == v
                   for w in elements for x, v in self.values.items())

    def to_json_obj(self) -> Dict[str, Any]:
        return {"n": self.n,
                "values": [{"point": list(x), "value": format_rat(v)}
                           for x, v in sorted(self.values.items())]}


# Fixed sets, pushforwards, integrals

def as_wreath_element(element: Union[WreathElement, Perm], n: int) -> WreathElement:
    if isinstance(element, WreathElement):
        return element
    return WreathElement((0,) * n, tuple(element))


def fixed_set(X: GSet, n: int, elements: Sequence[Union[WreathElement, Perm]]) -> List[Point]:
    """Points of X^n fixed by every listed element of G wr S_n (or S_n)"""
    acting = [as_wreath_element(e, n) for e in elements]
    return [x for x in X.tuples(n) if all(wreath_act(w, x, X.action) == x for w in acting)]


def pushforward(f: Union[Callable[[Point], Hashable], Mapping[Point, Hashable]],
                alpha: ConstrFn) -> Dict[Hashable, Fraction]:
    """Fiberwise sums of alpha along f"""
    image = f.__getitem__ if isinstance(f, Mapping) else f
    out: Dict[Hashable, Fraction] = defaultdict(Fraction)
    for x, v in alpha.values.items():
        out[image(x)] += v
    return dict(out)


def integral(alpha: ConstrFn) -> Fraction:
    """Pushforward to a point"""
    return sum(alpha.values.values(), Fraction(0))


def orbit_pushforward(alpha: ConstrFn) -> Dict[Tuple[int, ...], Fraction]:
    """pi_* to X/G for a function on X; orbits are keyed by their sorted points"""
    if alpha.n != 1:
        raise PreconditionError("orbit pushforward takes a function on X", operation="orbit_pushforward")
    X = alpha.space
    return pushforward(lambda x: X.orbit_of(x[0]), alpha)


def symmetric_product_size(X: GSet, n: int) -> int:
    """|X^n / G_n|, by canonicalizing every tuple"""
    reps = {x: min(X.orbit_of(x)) for x in range(X.points)}
    return len({tuple(sorted(reps[x] for x in t)) for t in X.tuples(n)})


# Canonical functions

def canonical_function(X: GSet, spec: GroupSpec, budget: Optional[int] = None) -> ConstrFn:
    """1^(A)_X/G = (1/|G|) sum over rho in Hom(A, G) of the indicator of X^rho(A).

    Each value is also computed as |Hom(A, Stab_G(x))| / |G|; a disagreement
    raises ConsistencyError.
    """
    G = X.group
    counts = Counter()
    for images in enumerate_homs(spec, G, budget):
        for x in range(X.points):
            if all(X.action[g][x] == x for g in images):
                counts[x] += 1
    values = {(x,): Fraction(counts[x], G.order) for x in range(X.points)}

    by_stabilizer: Dict[Tuple[int, ...], int] = {}
    for x in range(X.points):
        stab = tuple(X.stabilizer(x))
        if stab not in by_stabilizer:
            by_stabilizer[stab] = count_homs(spec, G.subgroup(stab), budget)
        expected = Fraction(by_stabilizer[stab], G.order)
        if expected != values[(x,)]:
            raise ConsistencyError(
                f"canonical function of {spec.to_text()} at point {x}",
                expected=expected,
                actual=values[(x,)],
            )
    return ConstrFn(X, 1, values)


def _fixed_census(X: GSet, spec: GroupSpec, n: int,
                  budget: Optional[int] = None) -> Dict[CycleType, Counter]:
    """Per cycle type, how many homs A -> G_n fix each point of X^n"""
    budget = resolve_budget(budget)
    points = X.points ** n
    if points > budget:
        raise BudgetExceededError(f"X^{n} has {points} points, budget is {budget}",
                                  required=points, budget=budget)
    wreath = wreath_product(X.group, n)
    tuples = X.tuples(n)
    census: Dict[CycleType, Counter] = defaultdict(Counter)
    for images in enumerate_homs(spec, wreath.group, budget):
        elems = [wreath.elements[i] for i in images]
        c = CycleType(orbit_type([w.sigma for w in elems], n))
        fixed = census[c]
        for x in tuples:
            if all(wreath_act(w, x, X.action) == x for w in elems):
                fixed[x] += 1
    return census


def canonical_function_power(X: GSet, spec: GroupSpec, n: int,
                             budget: Optional[int] = None) -> ConstrFn:
    """1^(A)_{X^n/G_n} = (1/(|G|^n n!)) sum over rho: A -> G_n of 1_{(X^n)^rho(A)}"""
    total: Counter = Counter()
    for fixed in _fixed_census(X, spec, n, budget).values():
        total.update(fixed)
    norm = X.order ** n * factorial(n)
    return ConstrFn(X, n, {x: Fraction(v, norm) for x, v in total.items()})


def orbifold_euler_characteristic(X: GSet, m: int, budget: Optional[int] = None) -> Fraction:
    """chi_m(X; G) = (1/|G|) sum over commuting m-tuples of |X^{g_1..g_m}|"""
    if m < 0:
        raise PreconditionError("m must be non-negative", operation="orbifold_euler_characteristic")
    if m == 0:
        return Fraction(X.points, X.order)
    total = 0
    for images in enumerate_homs(FreeAbelian(m), X.group, budget):
        total += sum(1 for x in range(X.points) if all(X.action[g][x] == x for g in images))
    return Fraction(total, X.order)


# The concrete ⊙-algebra

def _exterior(alpha: ConstrFn, beta: ConstrFn) -> Dict[Point, Fraction]:
    return {x + y: a * b for x, a in alpha.values.items() for y, b in beta.values.items()}


def _average(values: Mapping[Point, Fraction], elements: Sequence[WreathElement],
             X: GSet) -> Dict[Point, Fraction]:
    out: Dict[Point, Fraction] = defaultdict(Fraction)
    for w in elements:
        for x, v in values.items():
            if v:
                out[wreath_act(w, x, X.action)] += v
    size = len(elements)
    return {x: v / size for x, v in out.items()}


def _symmetrize(values: Mapping[Point, Fraction], n: int, X: GSet) -> Dict[Point, Fraction]:
    return _average(values, [WreathElement((0,) * n, s) for s in permutations(range(n))], X)


def _coordinate_average(values: Mapping[Point, Fraction], X: GSet) -> Dict[Point, Fraction]:
    """Average over G^n, one coordinate at a time"""
    current = dict(values)
    order = X.order
    for i in range(len(next(iter(current), ()))):
        out: Dict[Point, Fraction] = defaultdict(Fraction)
        for x, v in current.items():
            if not v:
                continue
            for row in X.action:
                out[x[:i] + (row[x[i]],) + x[i + 1:]] += v / order
        current = out
    return current


def odot_concrete(alpha: ConstrFn, beta: ConstrFn, wreath: bool = False,
                  method: str = "factorized") -> ConstrFn:
    """
    Symmetrized exterior product on X^{m+n}.

    Plain: average over S_{m+n}. Wreath: average over G wr S_{m+n}, either
    literally (``method="literal"``) or as an S-average followed by a G^{m+n}
    average (``method="factorized"``).
    """
    if alpha.space is not beta.space:
        raise PreconditionError("⊙ needs functions on the same G-set", operation="odot_concrete")
    X = alpha.space
    n = alpha.n + beta.n
    values = _exterior(alpha, beta)
    if wreath and method == "literal":
        values = _average(values, wreath_product(X.group, n).elements, X)
    elif method in ("factorized", "literal"):
        values = _symmetrize(values, n, X)
        if wreath:
            values = _coordinate_average(values, X)
    else:
        raise PreconditionError(f"unknown method '{method}'", operation="odot_concrete")
    return ConstrFn(X, n, values)


def diagonal_concrete(alpha: ConstrFn, n: int, wreath: bool = False,
                      method: str = "product") -> ConstrFn:
    """
    D^n(alpha): alpha pushed onto the small diagonal of X^n.

    The G-variant averages over G^n (``method="product"``) or over the whole
    of G wr S_n (``method="full"``); both give the same function.
    """
    if alpha.n != 1:
        raise PreconditionError("diagonal operators take a function on X", operation="diagonal_concrete")
    if n < 1:
        raise PreconditionError("diagonal degree must be positive", operation="diagonal_concrete")
    X = alpha.space
    values = {(x,) * n: v for (x,), v in alpha.values.items()}
    if wreath:
        if method == "product":
            values = _coordinate_average(values, X)
        elif method == "full":
            values = _average(values, wreath_product(X.group, n).elements, X)
        else:
            raise PreconditionError(f"unknown method '{method}'", operation="diagonal_concrete")
    return ConstrFn(X, n, values)


def evaluate_concrete(element: DiagElement, assignment: Mapping[str, ConstrFn],
                      wreath: bool = False) -> List[ConstrFn]:
    """Slices 0..N of a symbolic element as functions on X^0..X^N"""
    if not assignment:
        raise PreconditionError("empty base assignment", operation="evaluate_concrete")
    X = next(iter(assignment.values())).space
    diagonals: Dict[Tuple[int, str], ConstrFn] = {}

    def diagonal(k: int, name: str) -> ConstrFn:
        if (k, name) not in diagonals:
            if name not in assignment:
                raise PreconditionError(f"no function assigned to base class '{name}'",
                                        operation="evaluate_concrete")
            diagonals[(k, name)] = diagonal_concrete(assignment[name], k, wreath)
        return diagonals[(k, name)]

    slices = [ConstrFn.zero(X, n) for n in range(element.trunc + 1)]
    for mono, q in element.terms.items():
        value = ConstrFn.constant(X, 0)
        for k, base in mono.factors:
            value = odot_concrete(value, diagonal(k, base.name), wreath)
        slices[mono.weight] = slices[mono.weight] + value.scale(q)
    return slices


# Verification reports

PASS = "pass"
FAIL = "fail"
BUDGET = "budget"


@dataclass
class CheckEntry:
    label: str
    n: int
    status: str
    deviation: Fraction = Fraction(0)
    mismatch: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None

    def to_json_obj(self) -> Dict[str, Any]:
        obj: Dict[str, Any] = {"label": self.label, "n": self.n, "status": self.status,
                               "deviation": format_rat(self.deviation)}
        if self.mismatch is not None:
            obj["mismatch"] = self.mismatch
        if self.detail is not None:
            obj["detail"] = self.detail
        return obj


@dataclass
class VerificationReport:
    name: str
    params: Dict[str, str] = field(default_factory=dict)
    entries: List[CheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.status == PASS for e in self.entries)

    @property
    def status(self) -> str:
        statuses = {e.status for e in self.entries}
        if FAIL in statuses:
            return FAIL
        if BUDGET in statuses:
            return BUDGET
        return PASS

    @property
    def max_deviation(self) -> Fraction:
        return max((e.deviation for e in self.entries), default=Fraction(0))

    def compare_functions(self, label: str, n: int, lhs: ConstrFn, rhs: ConstrFn) -> CheckEntry:
        deviation = Fraction(0)
        mismatch = None
        for x in sorted(lhs.values):
            diff = abs(lhs.values[x] - rhs.values[x])
            if diff and mismatch is None:
                mismatch = {"point": list(x), "lhs": format_rat(lhs.values[x]),
                            "rhs": format_rat(rhs.values[x])}
            deviation = max(deviation, diff)
        return self.add(CheckEntry(label, n, PASS if not deviation else FAIL, deviation, mismatch))

    def compare_values(self, label: str, n: int, lhs, rhs) -> CheckEntry:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        deviation = abs(lhs - rhs)
        mismatch = None
        if deviation:
            mismatch = {"lhs": format_rat(lhs), "rhs": format_rat(rhs)}
        return self.add(CheckEntry(label, n, PASS if not deviation else FAIL, deviation, mismatch))

    def budget_exhausted(self, label: str, n: int, error: BudgetExceededError) -> CheckEntry:
        return self.add(CheckEntry(label, n, BUDGET, detail=error.message))

    def add(self, entry: CheckEntry) -> CheckEntry:
        self.entries.append(entry)
        if entry.status == FAIL:
            logger.info("%s: %s at n=%d failed (deviation %s)", self.name, entry.label,
                        entry.n, format_rat(entry.deviation))
        return entry

    def merge(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    def to_json_obj(self) -> Dict[str, Any]:
        return {"name": self.name, "params": dict(self.params), "status": self.status,
                "max_deviation": format_rat(self.max_deviation),
                "entries": [e.to_json_obj() for e in self.entries]}


def _supported_for_wreath(spec: GroupSpec) -> None:
    if not isinstance(spec, (FreeAbelian, Cyclic, Trivial)):
        raise UnsupportedGroupError(
            f"subgroup types unknown for {spec.to_text()}", group=spec.to_text())


def _params(spec: GroupSpec, X: GSet, **extra) -> Dict[str, str]:
    params = {"A": spec.to_text(), "G": X.group.name or str(X.order), "points": str(X.points)}
    params.update({k: str(v) for k, v in extra.items()})
    return params


def verify_symmetric(spec: GroupSpec, X: Union[GSet, int], trunc: int,
                     budget: Optional[int] = None) -> VerificationReport:
    """Canonical functions on X^n/S_n against the exponential formula, n <= N"""
    if isinstance(X, int):
        X = GSet.plain(X)
    if X.order != 1:
        raise PreconditionError("verify_symmetric takes a set without group action",
                                operation="verify_symmetric")
    report = VerificationReport("theorem1", _params(spec, X, N=trunc))
    try:
        rhs_symbolic = dw_rhs(j_sequence(spec, max(trunc, 1), budget), UNIT_BASE, trunc)
    except BudgetExceededError as e:
        report.budget_exhausted("j-sequence", 0, e)
        return report
    rhs = evaluate_concrete(rhs_symbolic, {UNIT_BASE: ConstrFn.constant(X, 1)})
    integrals = degree_specialize(rhs_symbolic, {UNIT_BASE: X.points})
    for n in range(trunc + 1):
        try:
            lhs = canonical_function_power(X, spec, n, budget)
        except BudgetExceededError as e:
            report.budget_exhausted("canonical function", n, e)
            continue
        report.compare_functions("canonical function", n, lhs, rhs[n])
        report.compare_values("integral", n, integral(lhs), integrals[n])
    return report


def concrete_wreath_assignment(X: GSet, spec: GroupSpec, trunc: int,
                               budget: Optional[int] = None) -> Dict[str, ConstrFn]:
    """Symbol name of 1^(B)_X/G -> its canonical function, per index r <= N"""
    assignment: Dict[str, ConstrFn] = {}
    for r in range(1, trunc + 1):
        sub = subgroup_type(spec, r)
        if sub is None:
            continue
        name = subgroup_symbol(sub).name
        if name not in assignment:
            assignment[name] = canonical_function(X, sub, budget)
    return assignment


def verify_wreath(spec: GroupSpec, G: Optional[FiniteGroup], X: GSet, trunc: int,
                  budget: Optional[int] = None) -> VerificationReport:
    """
    Canonical functions on X^n/G_n against exp(sum_r (1/r) D^r(1^(A;r)_X/G)).

    Also checks the integrals against the degree specialization, the
    Tamanoi product for Z^m, and the Muller counts when X is a point.
    """
    _supported_for_wreath(spec)
    if G is not None and G != X.group:
        raise PreconditionError("G does not match the group of the G-set", operation="verify_wreath")
    G = X.group
    report = VerificationReport("theorem2", _params(spec, X, N=trunc))
    symbolic = dw_rhs_wreath(spec, None, trunc)
    try:
        assignment = concrete_wreath_assignment(X, spec, trunc, budget)
    except BudgetExceededError as e:
        report.budget_exhausted("canonical function", 1, e)
        return report
    rhs = evaluate_concrete(symbolic, assignment, wreath=True)

    integrals = degree_specialize(symbolic, {name: integral(f) for name, f in assignment.items()})
    tamanoi = None
    if isinstance(spec, FreeAbelian):
        chi_m = orbifold_euler_characteristic(X, spec.m, budget)
        tamanoi = tamanoi_series(spec.m, chi_m, trunc)
    muller = wreath_total_via_formula(spec, G, trunc, budget) if X.points == 1 else None

    for n in range(trunc + 1):
        try:
            lhs = canonical_function_power(X, spec, n, budget)
        except BudgetExceededError as e:
            report.budget_exhausted("canonical function", n, e)
            continue
        report.compare_functions("canonical function", n, lhs, rhs[n])
        total = integral(lhs)
        report.compare_values("integral", n, total, integrals[n])
        if tamanoi is not None:
            report.compare_values("orbifold euler characteristic", n, total, tamanoi[n])
        if muller is not None:
            report.compare_values("hom count", n, total, muller[n])
    return report


def _orbit_sets(X: GSet, spec: GroupSpec, r: int, budget: Optional[int]) -> ConstrFn:
    """1^(A;r)_X/G: j_r(A) copies of 1^(B_r)_X/G (1_X when G is trivial)"""
    if X.order == 1:
        j_r = j_sequence(spec, r, budget)[r]
        return ConstrFn.constant(X, 1, j_r)
    _supported_for_wreath(spec)
    sub = subgroup_type(spec, r)
    if sub is None:
        return ConstrFn.zero(X, 1)
    return canonical_function(X, sub, budget).scale(closed_form_j(spec, r))


def lemma_deyg_check(spec: GroupSpec, G: Optional[FiniteGroup], X: GSet, rmax: int,
                     budget: Optional[int] = None) -> VerificationReport:
    """
    The transitive-type and per-type identities behind the wreath formula.

    (1') (1/|G|^r) Theta_r = (r-1)! D^r(1^(A;r)_X/G), where Theta_r sums the
    fixed-set indicators of transitive-type homs A -> G_r.
    (2') for every cycle type c of weight n <= rmax, the fixed-set sum over
    Hom(A, G_n; c) equals n!/prod (r!)^{c_r} c_r! · Theta_1^{c_1} ⊙ ... ⊙ Theta_n^{c_n}.
    """
    if G is not None and G != X.group:
        raise PreconditionError("G does not match the group of the G-set", operation="lemma_deyg_check")
    wreath = X.order != 1
    name = "lemma-deyg" if wreath else "lemma-dey"
    report = VerificationReport(name, _params(spec, X, rmax=rmax))
    censuses: Dict[int, Dict[CycleType, Counter]] = {}
    theta: Dict[int, ConstrFn] = {}
    for r in range(1, rmax + 1):
        try:
            census = _fixed_census(X, spec, r, budget)
            base = _orbit_sets(X, spec, r, budget)
        except BudgetExceededError as e:
            report.budget_exhausted("transitive identity", r, e)
            continue
        censuses[r] = census
        transitive = CycleType(tuple([0] * (r - 1) + [1]))
        theta[r] = ConstrFn(X, r, {x: Fraction(v) for x, v in census.get(transitive, {}).items()})
        lhs = theta[r].scale(Fraction(1, X.order ** r))
        rhs = diagonal_concrete(base, r, wreath).scale(factorial(r - 1))
        report.compare_functions("transitive identity", r, lhs, rhs)

    for n, census in sorted(censuses.items()):
        for c in CycleType.all_of_weight(n):
            if any(r not in theta for r, _ in c.items()):
                continue
            lhs = ConstrFn(X, n, {x: Fraction(v) for x, v in census.get(c, {}).items()})
            rhs = ConstrFn.constant(X, 0)
            denom = 1
            for r, cr in c.items():
                denom *= factorial(r) ** cr * factorial(cr)
                for _ in range(cr):
                    rhs = odot_concrete(rhs, theta[r], wreath)
            report.compare_functions(f"type {c}", n, lhs, rhs.scale(Fraction(factorial(n), denom)))
    return report


def lemma_dey_check(spec: GroupSpec, X: Union[GSet, int], rmax: int,
                    budget: Optional[int] = None) -> VerificationReport:
    """The G = {e} case: theta_r = (r-1)! j_r D^r(1_X) and the per-type identity"""
    if isinstance(X, int):
        X = GSet.plain(X)
    return lemma_deyg_check(spec, None, X, rmax, budget)
