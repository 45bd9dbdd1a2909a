"""
Parser for group specs and cycle notation

Builds GroupSpec values, finite target groups and permutations from text
using a Lark grammar, with line/column error reporting.
"""

from typing import Any, List, Optional, Sequence, Tuple
from pathlib import Path
from lark import Lark, Transformer, Token, LarkError, UnexpectedToken, UnexpectedCharacters
from .exceptions import OrbiChernError, SpecParseError
from .grp import (
    Cyclic,
    FiniteGroup,
    FreeAbelian,
    GroupSpec,
    PAdic,
    Presentation,
    Trivial,
    Word,
    close_group,
    cyclic_group,
    dihedral_group,
    perm_from_cycles,
    symmetric_group,
    trivial_group,
)

# Raw letters before generator names are resolved: (token text, exponent).
RawWord = Tuple[Tuple[str, int], ...]


class GroupSpecTransformer(Transformer):
    """Transforms the Lark parse tree into GroupSpec values and permutations"""

    # Source groups
    def free_abelian(self, children) -> FreeAbelian:
        return FreeAbelian(int(children[0]))

    def free_abelian_one(self, children) -> FreeAbelian:
        return FreeAbelian(1)

    def cyclic(self, children) -> Cyclic:
        return Cyclic(int(children[0]))

    def padic(self, children) -> PAdic:
        return PAdic(int(children[0]))

    def trivial(self, children) -> Trivial:
        return Trivial()

    def gen_list(self, children) -> List[str]:
        return [str(token) for token in children]

    def relators(self, children) -> List[RawWord]:
        return [word for word in children if word is not None]

    def word(self, children) -> RawWord:
        letters: List[Tuple[str, int]] = []
        for factor in children:
            letters.extend(factor)
        return tuple(letters)

    def exponent(self, children) -> int:
        value = int(children[-1])
        return -value if len(children) == 2 else value

    def power(self, children) -> RawWord:
        name = str(children[0])
        exponent = children[1] if len(children) > 1 else 1
        return ((name, exponent),)

    def commutator(self, children) -> RawWord:
        x, y = children
        return x + y + _inverse_raw(x) + _inverse_raw(y)

    def presentation(self, children) -> Presentation:
        gens: List[str] = []
        raw_relators: List[RawWord] = []
        for child in children:
            if child and isinstance(child[0], str):
                gens = child
            else:
                raw_relators = child
        return _resolve_presentation(gens, raw_relators)

    # Finite target groups
    def symmetric(self, children) -> FiniteGroup:
        return symmetric_group(int(children[0]))

    def cyclic_target(self, children) -> FiniteGroup:
        return cyclic_group(int(children[0]))

    def dihedral(self, children) -> FiniteGroup:
        return dihedral_group(int(children[0]))

    def trivial_target(self, children) -> FiniteGroup:
        return trivial_group()

    def generated(self, children) -> List[List[List[int]]]:
        return list(children)

    # Permutations, kept as cycle lists until the degree is known
    def cycle(self, children) -> List[int]:
        return [int(token) for token in children]

    def perm(self, children) -> List[List[int]]:
        return list(children)

    def identity_perm(self, children) -> List[List[int]]:
        return []


def _inverse_raw(word: RawWord) -> RawWord:
    return tuple((name, -exp) for name, exp in reversed(word))


def _resolve_presentation(gens: Sequence[str], raw_relators: Sequence[RawWord]) -> Presentation:
    """Map raw letters to generator indices.

    A token is a generator name, the swapped-case name of a generator
    (its inverse, ``A`` for ``a^-1``), or a run of such one-letter names
    (``abAB``); an exponent binds to the last letter of its token.
    """
    index = {name: i for i, name in enumerate(gens)}
    relators: List[Word] = []
    for raw in raw_relators:
        word: List[Tuple[int, int]] = []
        for token, exponent in raw:
            letters = _split_token(token, index)
            for gen, sign in letters[:-1]:
                word.append((gen, sign))
            gen, sign = letters[-1]
            step = sign if exponent > 0 else -sign
            word.extend([(gen, step)] * abs(exponent))
        relators.append(tuple(word))
    return Presentation(tuple(gens), tuple(relators))


def _split_token(token: str, index: dict) -> List[Tuple[int, int]]:
    if token in index:
        return [(index[token], 1)]
    if token.swapcase() in index:
        return [(index[token.swapcase()], -1)]
    letters = []
    for ch in token:
        if ch in index:
            letters.append((index[ch], 1))
        elif ch.swapcase() in index:
            letters.append((index[ch.swapcase()], -1))
        else:
            raise SpecParseError(f"relator uses undeclared generator '{token}'", text=token)
    return letters


def _cycles_to_group(perms: List[List[List[int]]]) -> FiniteGroup:
    degree = max((x for cycles in perms for cycle in cycles for x in cycle), default=1)
    arrays = [perm_from_cycles(cycles, degree) for cycles in perms]
    return close_group(arrays, degree)


class GroupSpecParser:
    """
    Parser for group specs, finite target groups and cycle notation

    One LALR parser serves three start symbols: ``group_spec``,
    ``finite_group`` and ``perm``.
    """

    START_SYMBOLS = ["group_spec", "finite_group", "perm"]

    def __init__(self, grammar_path: Optional[Path] = None):
        """Initialize parser with grammar file"""
        self.grammar_path = grammar_path or self._find_grammar_path()
        self.lark_parser: Optional[Lark] = None
        self.transformer = GroupSpecTransformer()
        self._initialize_parser()

    def _find_grammar_path(self) -> Path:
        """Find the group spec grammar file"""
        current_dir = Path(__file__).parent
        possible_paths = [
            current_dir / "grammar" / "groupspec.lark",
            current_dir.parent / "grammar" / "groupspec.lark",
        ]

        for path in possible_paths:
            if path.exists():
                return path

        raise FileNotFoundError(
            f"Could not find group spec grammar file. Searched: {possible_paths}"
        )

    def _initialize_parser(self):
        """Initialize the Lark parser"""
        try:
            with open(self.grammar_path, 'r', encoding='utf-8') as f:
                grammar = f.read()

            self.lark_parser = Lark(
                grammar,
                start=self.START_SYMBOLS,
                parser="lalr",
                propagate_positions=True,
                maybe_placeholders=False,
            )

        except Exception as e:
            raise SpecParseError(f"Failed to initialize parser: {e}")

    def _parse(self, text: str, start: str) -> Any:
        if not self.lark_parser:
            raise SpecParseError("Parser not initialized")

        try:
            tree = self.lark_parser.parse(text, start=start)
            return self.transformer.transform(tree)

        except UnexpectedToken as e:
            expected = sorted(e.expected) if hasattr(e, 'expected') else None
            raise SpecParseError(
                f"Unexpected token '{e.token}' in '{text}'",
                line=getattr(e, 'line', 0),
                column=getattr(e, 'column', 0),
                expected=expected,
                text=text,
            )

        except UnexpectedCharacters as e:
            raise SpecParseError(
                f"Unexpected character in '{text}'",
                line=getattr(e, 'line', 0),
                column=getattr(e, 'column', 0),
                text=text,
            )

        except LarkError as e:
            # Errors raised inside transformer callbacks arrive wrapped.
            original = getattr(e, 'orig_exc', None)
            if isinstance(original, OrbiChernError):
                raise original
            raise SpecParseError(f"Parse error in '{text}': {e}", text=text)

    def parse_group_spec(self, text: str) -> GroupSpec:
        """Parse ``Z^m``, ``Z/d``, ``Zp(p)``, ``1`` or ``<a,b | [a,b]>``"""
        return self._parse(text, "group_spec")

    def parse_finite_group(self, text: str) -> FiniteGroup:
        """Parse ``S3``, ``Z/2``, ``D4``, ``1`` or cycle-notation generators"""
        result = self._parse(text, "finite_group")
        if isinstance(result, FiniteGroup):
            return result
        return _cycles_to_group(result)

    def parse_perm(self, text: str, degree: Optional[int] = None) -> Tuple[int, ...]:
        """Parse ``(1 2 3)(4 5)`` into 0-based array form"""
        cycles = self._parse(text, "perm")
        return perm_from_cycles(cycles, degree)

    def validate_syntax(self, text: str, start: str = "group_spec") -> List[SpecParseError]:
        """Validate syntax and return list of errors"""
        errors = []
        try:
            self._parse(text, start)
        except SpecParseError as e:
            errors.append(e)
        return errors


_default_parser: Optional[GroupSpecParser] = None


def default_parser() -> GroupSpecParser:
    global _default_parser
    if _default_parser is None:
        _default_parser = GroupSpecParser()
    return _default_parser


def parse_group_spec(text: str) -> GroupSpec:
    return default_parser().parse_group_spec(text)


def parse_finite_group(text: str) -> FiniteGroup:
    return default_parser().parse_finite_group(text)


def parse_perm(text: str, degree: Optional[int] = None) -> Tuple[int, ...]:
    return default_parser().parse_perm(text, degree)
