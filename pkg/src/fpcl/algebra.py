"""De Morgan algebras used as weight structures.

Four concrete algebras are provided: the two element Boolean algebra, the
three element Kleene algebra, the four element algebra and the fuzzy algebra
on the rational points of ``[0, 1]``.  Elements are immutable values tagged
with their algebra; fuzzy values are exact :class:`fractions.Fraction`
instances so that equality is always decidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

__all__ = [
    "AlgebraError",
    "Algebra",
    "Classification",
    "Element",
    "LawReport",
    "join",
    "meet",
    "complement",
    "leq",
    "elements",
    "sample_grid",
    "classify",
    "check_laws",
]


class AlgebraError(ValueError):
    """Raised for values outside an algebra or for mixed-algebra operands."""


# Operator tables of the finite algebras; rows and columns follow the
# symbol order used in the tables themselves.
_KLEENE3_JOIN = {
    "0": {"0": "0", "1": "1", "u": "u"},
    "1": {"0": "1", "1": "1", "u": "1"},
    "u": {"0": "u", "1": "1", "u": "u"},
}
_KLEENE3_MEET = {
    "0": {"0": "0", "1": "0", "u": "0"},
    "1": {"0": "0", "1": "1", "u": "u"},
    "u": {"0": "0", "1": "u", "u": "u"},
}
_FOUR_JOIN = {
    "0": {"0": "0", "1": "1", "u": "u", "w": "w"},
    "1": {"0": "1", "1": "1", "u": "1", "w": "1"},
    "u": {"0": "u", "1": "1", "u": "u", "w": "1"},
    "w": {"0": "w", "1": "1", "u": "1", "w": "w"},
}
_FOUR_MEET = {
    "0": {"0": "0", "1": "0", "u": "0", "w": "0"},
    "1": {"0": "0", "1": "1", "u": "u", "w": "w"},
    "u": {"0": "0", "1": "u", "u": "u", "w": "0"},
    "w": {"0": "0", "1": "w", "u": "0", "w": "w"},
}
_BOOL2_JOIN = {a: {b: "1" if "1" in (a, b) else "0" for b in "01"} for a in "01"}
_BOOL2_MEET = {a: {b: "1" if a == b == "1" else "0" for b in "01"} for a in "01"}

_SELF_DUAL = {"0": "1", "1": "0", "u": "u", "w": "w"}

# Positional order used for printing and enumeration; not the lattice order.
_CANONICAL_POSITION = {"0": 0, "u": 1, "w": 2, "1": 3}


class Algebra(Enum):
    """The concrete De Morgan algebras."""

    BOOL2 = "bool2"
    KLEENE3 = "kleene3"
    FOUR = "four"
    FUZZY = "fuzzy"

    @property
    def is_finite(self) -> bool:
        return self is not Algebra.FUZZY

    @property
    def size(self) -> Optional[int]:
        """Cardinality of the carrier, ``None`` for the fuzzy algebra."""
        return {Algebra.BOOL2: 2, Algebra.KLEENE3: 3, Algebra.FOUR: 4}.get(self)

    @property
    def zero(self) -> "Element":
        return self.element(0)

    @property
    def one(self) -> "Element":
        return self.element(1)

    def element(self, value: Union[str, int, Fraction]) -> "Element":
        """Build an element from a symbol, an int, a Fraction or a string.

        Fuzzy strings may be decimals (``"0.3"``) or ratios (``"3/10"``).
        """
        if self is Algebra.FUZZY:
            try:
                q = Fraction(value) if not isinstance(value, Fraction) else value
            except (ValueError, ZeroDivisionError, TypeError) as exc:
                raise AlgebraError(f"not a rational in [0, 1]: {value!r}") from exc
            if not 0 <= q <= 1:
                raise AlgebraError(f"fuzzy value {value!r} is outside [0, 1]")
            return Element(self, q)
        symbol = str(value).strip()
        if symbol not in _SYMBOLS[self]:
            raise AlgebraError(f"{value!r} is not an element of {self.value}")
        return Element(self, symbol)

    @classmethod
    def from_name(cls, name: str) -> "Algebra":
        try:
            return cls(name.strip().lower())
        except ValueError:
            known = ", ".join(a.value for a in cls)
            raise AlgebraError(f"unknown algebra {name!r} (expected one of {known})") from None


_SYMBOLS: Dict[Algebra, Tuple[str, ...]] = {
    Algebra.BOOL2: ("0", "1"),
    Algebra.KLEENE3: ("0", "u", "1"),
    Algebra.FOUR: ("0", "u", "w", "1"),
}
_JOIN = {Algebra.BOOL2: _BOOL2_JOIN, Algebra.KLEENE3: _KLEENE3_JOIN, Algebra.FOUR: _FOUR_JOIN}
_MEET = {Algebra.BOOL2: _BOOL2_MEET, Algebra.KLEENE3: _KLEENE3_MEET, Algebra.FOUR: _FOUR_MEET}


@dataclass(frozen=True)
class Element:
    """A value of one of the concrete algebras.

    ``|``, ``&`` and ``~`` are join, meet and complement.
    """

    algebra: Algebra
    value: Union[str, Fraction]

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise AlgebraError(f"expected an algebra element, got {other!r}")
        if other.algebra is not self.algebra:
            raise AlgebraError(
                f"cannot combine {self.algebra.value} and {other.algebra.value} elements"
            )

    def __or__(self, other: "Element") -> "Element":
        self._check(other)
        if self.algebra is Algebra.FUZZY:
            return self if self.value >= other.value else other
        return Element(self.algebra, _JOIN[self.algebra][self.value][other.value])

    def __and__(self, other: "Element") -> "Element":
        self._check(other)
        if self.algebra is Algebra.FUZZY:
            return self if self.value <= other.value else other
        return Element(self.algebra, _MEET[self.algebra][self.value][other.value])

    def __invert__(self) -> "Element":
        if self.algebra is Algebra.FUZZY:
            return Element(self.algebra, 1 - self.value)
        return Element(self.algebra, _SELF_DUAL[self.value])

    @property
    def is_zero(self) -> bool:
        return self.value == 0 if self.algebra is Algebra.FUZZY else self.value == "0"

    def sort_key(self) -> Tuple:
        if self.algebra is Algebra.FUZZY:
            return (self.algebra.value, self.value)
        return (self.algebra.value, _CANONICAL_POSITION[self.value])

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Element({self.algebra.value}, {self.value})"


def join(a: Element, b: Element) -> Element:
    return a | b


def meet(a: Element, b: Element) -> Element:
    return a & b


def complement(a: Element) -> Element:
    return ~a


def leq(a: Element, b: Element) -> bool:
    """Lattice order: ``a <= b`` iff ``a | b == b``."""
    return (a | b) == b


def elements(algebra: Algebra) -> List[Element]:
    """The carrier of a finite algebra in canonical order (0, u, w, 1)."""
    if not algebra.is_finite:
        raise AlgebraError("the fuzzy algebra has an infinite carrier; use sample_grid()")
    return [Element(algebra, s) for s in sorted(_SYMBOLS[algebra], key=_CANONICAL_POSITION.get)]


def sample_grid(denominator: int) -> List[Element]:
    """The fuzzy elements ``0, 1/d, ..., 1``."""
    if denominator < 1:
        raise AlgebraError(f"grid denominator must be >= 1, got {denominator}")
    return [Element(Algebra.FUZZY, Fraction(i, denominator)) for i in range(denominator + 1)]


class Classification(Enum):
    DE_MORGAN = "DeMorgan"
    KLEENE = "Kleene"
    BOOLEAN = "Boolean"


@dataclass
class LawReport:
    """Outcome of an exhaustive law check.

    ``results`` maps law names to pass/fail, ``witnesses`` holds one failing
    tuple of elements per failed law.
    """

    algebra: Algebra
    results: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, Tuple[Element, ...]] = field(default_factory=dict)

    DE_MORGAN_LAWS = (
        "join_commutative",
        "meet_commutative",
        "join_associative",
        "meet_associative",
        "join_idempotent",
        "meet_idempotent",
        "absorption_join_meet",
        "absorption_meet_join",
        "meet_distributes_over_join",
        "join_distributes_over_meet",
        "bounded",
        "involution",
        "de_morgan_join",
        "de_morgan_meet",
    )

    @property
    def de_morgan(self) -> bool:
        return all(self.results[name] for name in self.DE_MORGAN_LAWS)

    @property
    def kleene(self) -> bool:
        return self.de_morgan and self.results["kleene_condition"]

    @property
    def boolean(self) -> bool:
        return self.kleene and self.results["boolean_condition"]

    @property
    def classification(self) -> Classification:
        if self.boolean:
            return Classification.BOOLEAN
        if self.kleene:
            return Classification.KLEENE
        return Classification.DE_MORGAN

    def lines(self) -> List[str]:
        out = []
        for name, ok in self.results.items():
            line = f"{name:28s} {'pass' if ok else 'FAIL'}"
            if not ok:
                line += "  witness: " + ", ".join(str(e) for e in self.witnesses[name])
            out.append(line)
        return out


def _carrier(algebra: Algebra, grid: Optional[int]) -> Sequence[Element]:
    if algebra.is_finite:
        return elements(algebra)
    return sample_grid(grid or 10)


def check_laws(algebra: Algebra, grid: Optional[int] = None) -> LawReport:
    """Check the bounded distributive lattice and De Morgan axioms exhaustively.

    The fuzzy algebra is checked on ``sample_grid(grid)`` (default 10), which
    is closed under all three operations.
    """
    ks = _carrier(algebra, grid)
    zero, one = algebra.zero, algebra.one
    report = LawReport(algebra)

    def check(name: str, arity: int, law) -> None:
        for args in itertools.product(ks, repeat=arity):
            if not law(*args):
                report.results[name] = False
                report.witnesses[name] = args
                return
        report.results[name] = True

    check("join_commutative", 2, lambda a, b: a | b == b | a)
    check("meet_commutative", 2, lambda a, b: a & b == b & a)
    check("join_associative", 3, lambda a, b, c: (a | b) | c == a | (b | c))
    check("meet_associative", 3, lambda a, b, c: (a & b) & c == a & (b & c))
    check("join_idempotent", 1, lambda a: a | a == a)
    check("meet_idempotent", 1, lambda a: a & a == a)
    check("absorption_join_meet", 2, lambda a, b: a | (a & b) == a)
    check("absorption_meet_join", 2, lambda a, b: a & (a | b) == a)
    check("meet_distributes_over_join", 3, lambda a, b, c: a & (b | c) == (a & b) | (a & c))
    check("join_distributes_over_meet", 3, lambda a, b, c: a | (b & c) == (a | b) & (a | c))
    check(
        "bounded",
        1,
        lambda a: a | zero == a and a & one == a and a | one == one and a & zero == zero,
    )
    check("involution", 1, lambda a: ~~a == a)
    check("de_morgan_join", 2, lambda a, b: ~(a | b) == ~a & ~b)
    check("de_morgan_meet", 2, lambda a, b: ~(a & b) == ~a | ~b)
    check("kleene_condition", 2, lambda a, b: (a & ~a) & (b | ~b) == a & ~a)
    check("boolean_condition", 1, lambda a: a & ~a == zero and a | ~a == one)
    return report


def classify(algebra: Algebra, grid: Optional[int] = None) -> Classification:
    """Most specific class (Boolean, Kleene or De Morgan) of an algebra.

    The fuzzy algebra is known to be Kleene and not Boolean; the claim is
    spot-checked on a sample grid.
    """
    report = check_laws(algebra, grid)
    if algebra is Algebra.FUZZY:
        if not report.kleene:
            raise AssertionError("fuzzy grid violates the Kleene condition")
        return Classification.KLEENE
    return report.classification
