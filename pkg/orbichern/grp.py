"""
Groups: source specs, finite permutation groups, wreath products,
homomorphism search and subgroup-growth sequences.

Permutations are tuples in array form on points 0..degree-1. Products
compose right to left: mul(i, j) is p_i after p_j, so a permutation group
acts on the left.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import divisors, isprime

from .config import default_config, resolve_budget
from .exceptions import (
    BudgetExceededError,
    ConsistencyError,
    GroupCapError,
    PreconditionError,
    UnsupportedGroupError,
)
from .qexact import free_abelian_j, ordered_factorizations

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]
# A word is a sequence of (generator index, +1 or -1).
Word = Tuple[Tuple[int, int], ...]


# Source groups

@dataclass(frozen=True)
class FreeAbelian:
    """Z^m"""
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError(f"Z^m needs m >= 1, got {self.m}", operation="FreeAbelian")

    def to_text(self) -> str:
        return "Z" if self.m == 1 else f"Z^{self.m}"


@dataclass(frozen=True)
class Cyclic:
    """Z/d"""
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise PreconditionError(f"Z/d needs d >= 1, got {self.d}", operation="Cyclic")

    def to_text(self) -> str:
        return f"Z/{self.d}"


@dataclass(frozen=True)
class PAdic:
    """The p-adic integers; only its closed-form j-sequence is used."""
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise PreconditionError(f"Zp(p) needs a prime p, got {self.p}", operation="PAdic")

    def to_text(self) -> str:
        return f"Zp({self.p})"


@dataclass(frozen=True)
class Trivial:
    def to_text(self) -> str:
        return "1"


@dataclass(frozen=True)
class Presentation:
    """Finitely presented group <generators | relators>"""
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PreconditionError("duplicate generator names", operation="Presentation")
        for rel in self.relators:
            for gen, exp in rel:
                if not 0 <= gen < len(self.generators) or exp not in (1, -1):
                    raise PreconditionError(
                        f"relator letter ({gen}, {exp}) does not reference a declared generator",
                        operation="Presentation",
                    )

    def word_text(self, word: Word) -> str:
        letters = []
        for gen, exp in word:
            name = self.generators[gen]
            if exp == 1:
                letters.append(name)
            elif len(name) == 1 and name.islower():
                letters.append(name.upper())
            else:
                letters.append(f"{name}^-1")
        joiner = "" if all(len(self.generators[g]) == 1 for g, _ in word) else " "
        return joiner.join(letters)

    def to_text(self) -> str:
        gens = ",".join(self.generators)
        if not self.relators:
            return f"<{gens}>"
        rels = ", ".join(self.word_text(w) for w in self.relators)
        return f"<{gens} | {rels}>"


GroupSpec = Union[FreeAbelian, Cyclic, PAdic, Trivial, Presentation]

ABELIAN_FAMILIES = (FreeAbelian, Cyclic, PAdic, Trivial)


def commutator(x: int, y: int) -> Word:
    """[x, y] = x y x^-1 y^-1"""
    return ((x, 1), (y, 1), (x, -1), (y, -1))


def _generator_names(count: int) -> Tuple[str, ...]:
    if count <= 26:
        return tuple(chr(ord("a") + i) for i in range(count))
    return tuple(f"x{i + 1}" for i in range(count))


def to_presentation(spec: GroupSpec) -> Presentation:
    """Presentation of a built-in family (commutators for Z^m, x^d for Z/d)"""
    if isinstance(spec, Presentation):
        return spec
    if isinstance(spec, Trivial):
        return Presentation(())
    if isinstance(spec, FreeAbelian):
        names = _generator_names(spec.m)
        rels = tuple(commutator(i, j) for i in range(spec.m) for j in range(i + 1, spec.m))
        return Presentation(names, rels)
    if isinstance(spec, Cyclic):
        return Presentation(("x",), (((0, 1),) * spec.d,))
    raise UnsupportedGroupError(
        f"{spec.to_text()} has no finite presentation; only its j-sequence is available",
        group=spec.to_text(),
    )


def direct_product_with_z(spec: GroupSpec) -> Presentation:
    """Presentation of A x Z: a new generator commuting with A's generators"""
    pres = to_presentation(spec)
    name = "t"
    while name in pres.generators:
        name += "'"
    k = len(pres.generators)
    rels = pres.relators + tuple(commutator(i, k) for i in range(k))
    return Presentation(pres.generators + (name,), rels)


# Finite permutation groups

def compose(p: Perm, q: Perm) -> Perm:
    """p after q"""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: Optional[int] = None,
                     one_based: bool = True) -> Perm:
    """Array form of a product of disjoint cycles, e.g. [[1, 2, 3], [4, 5]]"""
    shift = 1 if one_based else 0
    points = [x - shift for cycle in cycles for x in cycle]
    if any(x < 0 for x in points):
        raise PreconditionError("cycle entries must be positive", operation="perm_from_cycles")
    if len(points) != len(set(points)):
        raise PreconditionError("cycles must be disjoint", operation="perm_from_cycles")
    size = max(points, default=-1) + 1
    degree = size if degree is None else degree
    if degree < size:
        raise PreconditionError(f"cycle point exceeds degree {degree}", operation="perm_from_cycles")
    image = list(range(degree))
    for cycle in cycles:
        for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
            image[a - shift] = b - shift
    return tuple(image)


def perm_to_cycles(p: Perm) -> str:
    """Cycle notation, 1-based; the identity is ``()``"""
    seen = set()
    parts = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = p[x]
        parts.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
    return "".join(parts) or "()"


def orbit_partition(gens: Sequence[Perm], degree: int) -> List[List[int]]:
    """Orbits on 0..degree-1 of the group generated by gens, sorted"""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for x in range(degree):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)

    blocks: Dict[int, List[int]] = {}
    for x in range(degree):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def orbit_type(gens: Sequence[Perm], degree: int) -> Tuple[int, ...]:
    """Cycle type [c_1..c_n] of the orbit decomposition"""
    counts = [0] * degree
    for block in orbit_partition(gens, degree):
        counts[len(block) - 1] += 1
    return tuple(counts)


class FiniteGroup:
    """
    A fully enumerated permutation group.

    Element 0 is the identity. Multiplication goes through an index table
    whose rows are built on first use.
    """

    __slots__ = ("degree", "elements", "generators", "name", "_index", "_rows", "_inverses")

    def __init__(self, degree: int, elements: Sequence[Perm],
                 generators: Sequence[int] = (), name: Optional[str] = None):
        identity = tuple(range(degree))
        elems = [tuple(p) for p in elements]
        if identity not in elems:
            raise PreconditionError("element list lacks the identity", operation="FiniteGroup")
        if elems[0] != identity:
            pos = elems.index(identity)
            elems.insert(0, elems.pop(pos))
            generators = [self._shift_index(g, pos) for g in generators]
        if any(len(p) != degree for p in elems):
            raise PreconditionError("element degree mismatch", operation="FiniteGroup")

        self.degree = degree
        self.elements: Tuple[Perm, ...] = tuple(elems)
        self._index: Dict[Perm, int] = {p: i for i, p in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise PreconditionError("element list has duplicates", operation="FiniteGroup")
        self.generators: Tuple[int, ...] = tuple(generators)
        self.name = name
        self._rows: List[Optional[List[int]]] = [None] * len(self.elements)
        self._inverses: Optional[List[int]] = None

    @staticmethod
    def _shift_index(g: int, pos: int) -> int:
        if g == pos:
            return 0
        return g + 1 if g < pos else g

    @classmethod
    def from_elements(cls, elements: Sequence[Perm], name: Optional[str] = None) -> "FiniteGroup":
        """Wrap a list already known to be a group, checking closure"""
        elems = list(dict.fromkeys(tuple(p) for p in elements))
        if not elems:
            raise PreconditionError("empty element list", operation="FiniteGroup.from_elements")
        group = cls(len(elems[0]), elems, name=name)
        for i in range(group.order):
            for j in range(group.order):
                if compose(group.elements[i], group.elements[j]) not in group._index:
                    raise PreconditionError("element list is not closed under composition",
                                            operation="FiniteGroup.from_elements")
        return group

    # Basic structure

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self._index.keys() == other._index.keys()

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._index)))

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} order={self.order} degree={self.degree}>"

    def index(self, perm: Sequence[int]) -> int:
        try:
            return self._index[tuple(perm)]
        except KeyError:
            raise PreconditionError(f"{perm_to_cycles(tuple(perm))} is not in the group",
                                    operation="FiniteGroup.index")

    def __contains__(self, perm: object) -> bool:
        return isinstance(perm, tuple) and perm in self._index

    def _row(self, i: int) -> List[int]:
        row = self._rows[i]
        if row is None:
            p = self.elements[i]
            index = self._index
            row = [index[tuple(p[x] for x in q)] for q in self.elements]
            self._rows[i] = row
        return row

    def mul(self, i: int, j: int) -> int:
        return self._row(i)[j]

    def inverse(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [self._index[invert(p)] for p in self.elements]
        return self._inverses[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inverse(i), -k
        result = self.identity
        for _ in range(k):
            result = self.mul(result, i)
        return result

    def is_abelian(self) -> bool:
        gens = self.generators or tuple(range(self.order))
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def cycle_type(self, i: int) -> Tuple[int, ...]:
        return orbit_type([self.elements[i]], self.degree)

    def centralizer(self, i: int, within: Optional[Sequence[int]] = None) -> List[int]:
        """Elements of `within` (default: the group) commuting with element i"""
        pool = range(self.order) if within is None else within
        row = self._row(i)
        return [j for j in pool if row[j] == self._row(j)[i]]

    def conjugacy_classes(self) -> List[List[int]]:
        seen = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.mul(self.mul(g, x), self.inverse(g)) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def subgroup(self, indices: Sequence[int], name: Optional[str] = None) -> "FiniteGroup":
        return FiniteGroup.from_elements([self.elements[i] for i in indices], name=name)


def close_group(generators: Sequence[Sequence[int]], degree: Optional[int] = None,
                cap: Optional[int] = None, name: Optional[str] = None) -> FiniteGroup:
    """Enumerate the group generated by permutations of a common degree"""
    gens = [tuple(g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    if any(len(g) != degree for g in gens):
        raise PreconditionError("generators must share one degree", operation="close_group")
    cap = default_config().group_cap if cap is None else cap

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in index:
                    index[h] = len(elements)
                    elements.append(h)
                    next_frontier.append(h)
                    if len(elements) > cap:
                        raise GroupCapError(cap)
        frontier = next_frontier

    gen_indices = tuple(index[g] for g in gens)
    logger.debug("closed group of degree %d: order %d", degree, len(elements))
    return FiniteGroup(degree, elements, gen_indices, name=name)


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements in lexicographic order (identity first)"""
    group = FiniteGroup(n, list(permutations(range(n))), name=f"S{n}")
    if n >= 2:
        gens = [perm_from_cycles([[0, 1]], n, one_based=False),
                perm_from_cycles([list(range(n))], n, one_based=False)]
        group.generators = tuple(dict.fromkeys(group.index(g) for g in gens))
    return group


def cyclic_group(d: int) -> FiniteGroup:
    if d < 1:
        raise PreconditionError("cyclic group needs d >= 1", operation="cyclic_group")
    rotation = tuple((x + 1) % d for x in range(d))
    return close_group([rotation], d, name=f"Z/{d}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n"""
    if n < 3:
        raise PreconditionError("dihedral group needs n >= 3", operation="dihedral_group")
    rotation = tuple((x + 1) % n for x in range(n))
    reflection = tuple((-x) % n for x in range(n))
    return close_group([rotation, reflection], n, name=f"D{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, [(0,)], name="1")


# Wreath products

@dataclass(frozen=True)
class WreathElement:
    """(g_1..g_n; sigma) with g_i element indices of G and sigma in S_n"""
    gbar: Tuple[int, ...]
    sigma: Perm

    def __post_init__(self):
        if len(self.gbar) != len(self.sigma):
            raise PreconditionError("gbar and sigma lengths differ", operation="WreathElement")

    @property
    def n(self) -> int:
        return len(self.sigma)


def wreath_mul(x: WreathElement, y: WreathElement, G: FiniteGroup) -> WreathElement:
    """(h, sigma)(g, tau) = (h . sigma(g), sigma tau) with sigma(g)_i = g_{sigma^-1(i)}"""
    if x.n != y.n:
        raise PreconditionError(f"wreath sizes differ: {x.n} != {y.n}", operation="wreath_mul")
    sigma_inv = invert(x.sigma)
    gbar = tuple(G.mul(x.gbar[i], y.gbar[sigma_inv[i]]) for i in range(x.n))
    return WreathElement(gbar, compose(x.sigma, y.sigma))


def wreath_act(w: WreathElement, point: Sequence[int], action: Sequence[Perm]) -> Tuple[int, ...]:
    """(g, sigma).(x_1..x_n) = (g_1.x_{sigma^-1(1)}, ..., g_n.x_{sigma^-1(n)})"""
    sigma_inv = invert(w.sigma)
    return tuple(action[w.gbar[i]][point[sigma_inv[i]]] for i in range(w.n))


class WreathProduct:
    """
    G wr S_n, enumerated. Its elements are also realized as permutations of
    n*|G| points (block k, regular G-coordinate h) so the group can be
    searched like any FiniteGroup; indices agree between both views.
    """

    def __init__(self, G: FiniteGroup, n: int):
        self.base = G
        self.n = n
        size = G.order
        elements = []
        perms = []
        for gbar in product(range(size), repeat=n):
            for sigma in permutations(range(n)):
                elements.append(WreathElement(gbar, sigma))
                perms.append(self._embed(gbar, sigma))
        self.elements: Tuple[WreathElement, ...] = tuple(elements)
        self.group = FiniteGroup(n * size, perms, name=f"{G.name or 'G'} wr S{n}")

    def _embed(self, gbar: Tuple[int, ...], sigma: Perm) -> Perm:
        size = self.base.order
        image = [0] * (self.n * size)
        for k in range(self.n):
            target = sigma[k]
            g = gbar[target]
            for h in range(size):
                image[k * size + h] = target * size + self.base.mul(g, h)
        return tuple(image)

    @property
    def order(self) -> int:
        return self.group.order

    def element(self, i: int) -> WreathElement:
        return self.elements[i]

    def sigma(self, i: int) -> Perm:
        return self.elements[i].sigma

    def index(self, w: WreathElement) -> int:
        return self.group.index(self._embed(w.gbar, w.sigma))


def wreath_product(G: FiniteGroup, n: int) -> WreathProduct:
    """G wr S_n, cached on the element order of G"""
    return _wreath_product(G.elements, n, G)


@lru_cache(maxsize=32)
def _wreath_product(elements: Tuple[Perm, ...], n: int, G: FiniteGroup) -> WreathProduct:
    return WreathProduct(G, n)


# Homomorphism search

def _relator_schedule(pres: Presentation) -> List[List[Word]]:
    """Relators grouped by the last generator they mention"""
    schedule: List[List[Word]] = [[] for _ in pres.generators]
    for rel in pres.relators:
        if rel:
            schedule[max(g for g, _ in rel)].append(rel)
    return schedule


def evaluate_word(word: Word, images: Sequence[int], target: FiniteGroup) -> int:
    result = target.identity
    for gen, exp in word:
        img = images[gen] if exp == 1 else target.inverse(images[gen])
        result = target.mul(result, img)
    return result


def search_size(spec: GroupSpec, target: FiniteGroup) -> int:
    """Candidate generator-image tuples the search may visit"""
    return target.order ** len(to_presentation(spec).generators)


def enumerate_homs(spec: GroupSpec, target: FiniteGroup,
                   budget: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    Yield every homomorphism spec -> target as a tuple of generator images
    (element indices), in lexicographic order.

    Backtracks over generator images; a relator is evaluated as soon as all
    generators it mentions are assigned.
    """
    pres = to_presentation(spec)
    budget = resolve_budget(budget)
    required = target.order ** len(pres.generators)
    if required > budget:
        raise BudgetExceededError(
            f"Hom({pres.to_text()}, {target.name or 'G'}) needs {required} candidate "
            f"tuples, budget is {budget}",
            required=required,
            budget=budget,
        )
    schedule = _relator_schedule(pres)
    ngens = len(pres.generators)
    images = [0] * ngens
    identity = target.identity

    def extend(depth: int) -> Iterator[Tuple[int, ...]]:
        if depth == ngens:
            yield tuple(images)
            return
        for candidate in range(target.order):
            images[depth] = candidate
            if all(evaluate_word(rel, images, target) == identity for rel in schedule[depth]):
                yield from extend(depth + 1)

    yield from extend(0)


def count_homs(spec: GroupSpec, target: FiniteGroup, budget: Optional[int] = None) -> int:
    return sum(1 for _ in enumerate_homs(spec, target, budget))


def is_transitive(images: Sequence[int], target: FiniteGroup) -> bool:
    gens = [target.elements[i] for i in images]
    return len(orbit_partition(gens, target.degree)) <= 1


def count_transitive_homs(spec: GroupSpec, r: int, budget: Optional[int] = None) -> int:
    """Number of homomorphisms A -> S_r acting transitively on r points"""
    if r < 1:
        raise PreconditionError("r must be positive", operation="count_transitive_homs")
    if isinstance(spec, PAdic):
        raise UnsupportedGroupError(
            "Zp(p) is not finitely presented; use its closed-form j-sequence",
            group=spec.to_text(),
        )
    target = symmetric_group(r)
    return sum(1 for images in enumerate_homs(spec, target, budget)
               if is_transitive(images, target))


# Subgroup growth

CLOSED_FORM = "closed-form"
ENUMERATED = "enumerated"


@dataclass(frozen=True)
class JSequence:
    """j_r(A) for 1 <= r <= rmax, with the provenance of each entry"""
    source: GroupSpec
    values: Mapping[int, int]
    provenance: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.values.get(1, 1) != 1:
            raise ConsistencyError("j_1 must be 1", expected=1, actual=self.values.get(1))

    @property
    def rmax(self) -> int:
        return max(self.values, default=0)

    def __getitem__(self, r: int) -> int:
        try:
            return self.values[r]
        except KeyError:
            raise PreconditionError(f"j_{r} not computed (rmax={self.rmax})",
                                    operation="JSequence")

    def require(self, n: int) -> None:
        if self.rmax < n:
            raise PreconditionError(f"j-sequence known up to {self.rmax}, need {n}",
                                    operation="JSequence")

    def as_list(self) -> List[int]:
        return [self.values[r] for r in range(1, self.rmax + 1)]

    def to_json_obj(self) -> Dict[str, object]:
        return {
            "source": self.source.to_text(),
            "j": [{"r": r, "value": self.values[r], "provenance": self.provenance.get(r, "")}
                  for r in range(1, self.rmax + 1)],
        }


def _is_power_of(r: int, p: int) -> bool:
    while r % p == 0:
        r //= p
    return r == 1


def closed_form_j(spec: GroupSpec, r: int) -> Optional[int]:
    """j_r for the built-in families, None for presentations"""
    if isinstance(spec, Trivial):
        return 1 if r == 1 else 0
    if isinstance(spec, Cyclic):
        return 1 if spec.d % r == 0 else 0
    if isinstance(spec, PAdic):
        return 1 if _is_power_of(r, spec.p) else 0
    if isinstance(spec, FreeAbelian):
        return free_abelian_j(spec.m, r)
    return None


def j_sequence(spec: GroupSpec, rmax: int, budget: Optional[int] = None) -> JSequence:
    """Number of index-r subgroups of A for r = 1..rmax"""
    if rmax < 1:
        raise PreconditionError("rmax must be at least 1", operation="j_sequence")
    values: Dict[int, int] = {}
    provenance: Dict[int, str] = {}
    for r in range(1, rmax + 1):
        closed = closed_form_j(spec, r)
        if closed is not None:
            values[r] = closed
            provenance[r] = CLOSED_FORM
            continue
        transitive = count_transitive_homs(spec, r, budget)
        quotient, remainder = divmod(transitive, factorial(r - 1))
        if remainder:
            raise ConsistencyError(
                f"{transitive} transitive actions on {r} points is not divisible by {r - 1}!",
                expected=0,
                actual=remainder,
            )
        values[r] = quotient
        provenance[r] = ENUMERATED
    logger.debug("j-sequence of %s: %s", spec.to_text(), [values[r] for r in sorted(values)])
    return JSequence(spec, values, provenance)


def u_sequence(spec: GroupSpec, dmax: int, budget: Optional[int] = None) -> Dict[int, int]:
    """Conjugacy classes of index-d subgroups for d = 1..dmax.

    Abelian families return j_d. Presentations count S_d-conjugation orbits
    of transitive homomorphisms A -> S_d.
    """
    if isinstance(spec, ABELIAN_FAMILIES):
        return dict(j_sequence(spec, dmax, budget).values)
    result: Dict[int, int] = {}
    for d in range(1, dmax + 1):
        target = symmetric_group(d)
        transitive = {images for images in enumerate_homs(spec, target, budget)
                      if is_transitive(images, target)}
        orbits = 0
        while transitive:
            seed = transitive.pop()
            orbits += 1
            for s in range(target.order):
                s_inv = target.inverse(s)
                transitive.discard(tuple(target.mul(target.mul(s, x), s_inv) for x in seed))
        result[d] = orbits
    return result


def j_sequence_times_z(spec: GroupSpec, kmax: int, budget: Optional[int] = None) -> Dict[int, int]:
    """j_k(A x Z) = sum_{d|k} d u_d(A)"""
    u = u_sequence(spec, kmax, budget)
    return {k: sum(d * u[d] for d in divisors(k)) for k in range(1, kmax + 1)}


def free_abelian_index_count_explicit(m: int, k: int) -> int:
    """sum of j_1^{m-1} j_2^{m-2} ... j_{m-1} over m-tuples with product k"""
    total = 0
    for tup in ordered_factorizations(k, m):
        term = 1
        for i, j in enumerate(tup, start=1):
            term *= j ** (m - i)
        total += term
    return total


def subgroup_type(spec: GroupSpec, r: int) -> Optional[GroupSpec]:
    """Common isomorphism type of the index-r subgroups, when known.

    Index-r subgroups of Z^m are again Z^m; of Z/d (r | d) are Z/(d/r).
    Returns None when A has no index-r subgroup.
    """
    if isinstance(spec, FreeAbelian):
        return spec
    if isinstance(spec, Cyclic):
        return Cyclic(spec.d // r) if spec.d % r == 0 else None
    if isinstance(spec, Trivial):
        return Trivial() if r == 1 else None
    raise UnsupportedGroupError(
        f"subgroup types unknown for {spec.to_text()}",
        group=spec.to_text(),
    )
