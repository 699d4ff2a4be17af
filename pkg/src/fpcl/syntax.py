"""Abstract syntax, parser and printer for fPIL and fPCL formulas.

Interaction formulas (fPIL) are built from ``true``, ports, ``!`` and ``|``;
configuration formulas (fPCL) wrap interaction formulas and add ``neg``,
``+`` and ``#``.  Derived connectives are expanded when a formula is built:

=========  ==========================  ===================================
text       meaning                     stored as
=========  ==========================  ===================================
``a & b``  fuzzy conjunction           ``FNot(FOr(FNot(a), FNot(b)))``
``false``  constant false              ``FNot(Top())``
``a * b``  configuration conjunction   ``Neg(Plus(Neg(a), Neg(b)))``
``cl a``   closure                     ``Coalesce(a, Pil(Top()))``
=========  ==========================  ===================================

Binding strength, tightest first: ``! neg cl``, ``&``, ``|``, ``*``, ``#``,
``+``.  All infix operators associate to the left.  ``&``, ``|`` and ``!``
only accept interaction formulas, so ``neg p & q`` is rejected; write
``neg (p & q)`` or ``(neg p) * q`` instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import FrozenSet, Iterable, List, Sequence, Tuple, Union

__all__ = [
    "ParseError",
    "Top",
    "Atom",
    "FNot",
    "FOr",
    "Pil",
    "Neg",
    "Plus",
    "Coalesce",
    "PilFormula",
    "PclFormula",
    "TRUE",
    "FALSE",
    "KEYWORDS",
    "is_port_name",
    "pil_and",
    "pcl_times",
    "pcl_closure",
    "as_pcl",
    "big_or",
    "big_and",
    "big_plus",
    "big_coalesce",
    "big_times",
    "ports_of",
    "parse_pil",
    "parse_pcl",
    "print_formula",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- interaction formulas -------------------------------------------------


@dataclass(frozen=True)
class Top:
    """The constant ``true``."""


@dataclass(frozen=True)
class Atom:
    port: str


@dataclass(frozen=True)
class FNot:
    arg: "PilFormula"


@dataclass(frozen=True)
class FOr:
    left: "PilFormula"
    right: "PilFormula"


PilFormula = Union[Top, Atom, FNot, FOr]
PIL_TYPES = (Top, Atom, FNot, FOr)

TRUE = Top()
FALSE = FNot(TRUE)


# -- configuration formulas -----------------------------------------------


@dataclass(frozen=True)
class Pil:
    formula: PilFormula


@dataclass(frozen=True)
class Neg:
    arg: "PclFormula"


@dataclass(frozen=True)
class Plus:
    left: "PclFormula"
    right: "PclFormula"


@dataclass(frozen=True)
class Coalesce:
    left: "PclFormula"
    right: "PclFormula"


PclFormula = Union[Pil, Neg, Plus, Coalesce]
PCL_TYPES = (Pil, Neg, Plus, Coalesce)

KEYWORDS = frozenset({"true", "false", "neg", "cl"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_port_name(name: str) -> bool:
    return bool(_IDENT.match(name)) and name not in KEYWORDS


# -- builders -------------------------------------------------------------


def pil_and(a: PilFormula, b: PilFormula) -> PilFormula:
    return FNot(FOr(FNot(a), FNot(b)))


def as_pcl(f: Union[PilFormula, PclFormula]) -> PclFormula:
    """Lift an interaction formula to a configuration formula."""
    if isinstance(f, PIL_TYPES):
        return Pil(f)
    if isinstance(f, PCL_TYPES):
        return f
    raise TypeError(f"not a formula: {f!r}")


def pcl_times(a, b) -> PclFormula:
    return Neg(Plus(Neg(as_pcl(a)), Neg(as_pcl(b))))


def pcl_closure(a) -> PclFormula:
    return Coalesce(as_pcl(a), Pil(TRUE))


def _fold(items: Sequence, op, what: str):
    items = list(items)
    if not items:
        raise ValueError(f"{what} of an empty list")
    return reduce(op, items)


def big_or(items: Iterable[PilFormula]) -> PilFormula:
    return _fold(items, FOr, "big_or")


def big_and(items: Iterable[PilFormula]) -> PilFormula:
    return _fold(items, pil_and, "big_and")


def big_plus(items) -> PclFormula:
    return _fold([as_pcl(i) for i in items], Plus, "big_plus")


def big_coalesce(items) -> PclFormula:
    return _fold([as_pcl(i) for i in items], Coalesce, "big_coalesce")


def big_times(items) -> PclFormula:
    return _fold([as_pcl(i) for i in items], pcl_times, "big_times")


def ports_of(f) -> FrozenSet[str]:
    """All ports mentioned by a formula."""
    out = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.port)
        elif isinstance(node, (FNot, Neg)):
            stack.append(node.arg)
        elif isinstance(node, (FOr, Plus, Coalesce)):
            stack.extend((node.left, node.right))
        elif isinstance(node, Pil):
            stack.append(node.formula)
    return frozenset(out)


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([!&|*#+()]))")

_INFIX = {"+": 10, "#": 20, "*": 30, "|": 40, "&": 50}
_PREFIX_BP = 60
_PCL_ONLY = {"+", "#", "*", "neg", "cl"}


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            if rest.strip():
                bad = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", bad)
            break
        tokens.append((m.group(1) or m.group(2), m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_pcl: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_pcl = allow_pcl

    def peek(self) -> Tuple[str, int]:
        return self.tokens[self.i]

    def take(self) -> Tuple[str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def check_allowed(self, tok: str, pos: int) -> None:
        if not self.allow_pcl and tok in _PCL_ONLY:
            raise ParseError(f"configuration operator {tok!r} in an interaction formula", pos)

    def require_pil(self, node, op: str, pos: int) -> PilFormula:
        if not isinstance(node, PIL_TYPES):
            raise ParseError(f"operator {op!r} needs interaction-formula operands", pos)
        return node

    def parse(self):
        node = self.expr(0)
        tok, pos = self.peek()
        if tok != "<end>":
            raise ParseError(f"unexpected {tok!r}", pos)
        return node

    def expr(self, min_bp: int):
        left = self.prefix()
        while True:
            tok, pos = self.peek()
            bp = _INFIX.get(tok)
            if bp is None or bp <= min_bp:
                return left
            self.check_allowed(tok, pos)
            self.take()
            right = self.expr(bp)
            if tok == "|":
                left = FOr(self.require_pil(left, tok, pos), self.require_pil(right, tok, pos))
            elif tok == "&":
                left = pil_and(self.require_pil(left, tok, pos), self.require_pil(right, tok, pos))
            elif tok == "+":
                left = Plus(as_pcl(left), as_pcl(right))
            elif tok == "#":
                left = Coalesce(as_pcl(left), as_pcl(right))
            else:
                left = pcl_times(left, right)

    def prefix(self):
        tok, pos = self.take()
        if tok == "(":
            node = self.expr(0)
            close, cpos = self.take()
            if close != ")":
                raise ParseError("expected ')'", cpos)
            return node
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok == "!":
            return FNot(self.require_pil(self.expr(_PREFIX_BP), tok, pos))
        if tok in ("neg", "cl"):
            self.check_allowed(tok, pos)
            arg = self.expr(_PREFIX_BP)
            return Neg(as_pcl(arg)) if tok == "neg" else pcl_closure(arg)
        if tok == "<end>":
            raise ParseError("unexpected end of input", pos)
        if _IDENT.match(tok):
            return Atom(tok)
        raise ParseError(f"unexpected {tok!r}", pos)


def parse_pil(text: str) -> PilFormula:
    """Parse an interaction formula."""
    return _Parser(text, allow_pcl=False).parse()


def parse_pcl(text: str) -> PclFormula:
    """Parse a configuration formula; a bare interaction formula is wrapped in ``Pil``."""
    return as_pcl(_Parser(text, allow_pcl=True).parse())


# -- printing -------------------------------------------------------------

_ATOM_BP = 70


def _conjuncts(f):
    """Return ``(a, b)`` when ``f`` is the expansion of ``a & b``."""
    if isinstance(f, FNot) and isinstance(f.arg, FOr):
        inner = f.arg
        if isinstance(inner.left, FNot) and isinstance(inner.right, FNot):
            return inner.left.arg, inner.right.arg
    return None


def _times_operands(z):
    if isinstance(z, Neg) and isinstance(z.arg, Plus):
        inner = z.arg
        if isinstance(inner.left, Neg) and isinstance(inner.right, Neg):
            return inner.left.arg, inner.right.arg
    return None


def _wrap(text: str, bp: int, need: int) -> str:
    return text if bp >= need else f"({text})"


def _show(f) -> Tuple[str, int]:
    if isinstance(f, Top):
        return "true", _ATOM_BP
    if isinstance(f, Atom):
        return f.port, _ATOM_BP
    if f == FALSE:
        return "false", _ATOM_BP
    if isinstance(f, Pil):
        return _show(f.formula)
    pair = _conjuncts(f) if isinstance(f, FNot) else _times_operands(f)
    if pair is not None:
        bp = _INFIX["&"] if isinstance(f, FNot) else _INFIX["*"]
        op = "&" if isinstance(f, FNot) else "*"
        return _binary(pair[0], op, pair[1], bp)
    if isinstance(f, FNot):
        return "!" + _wrap(*_show(f.arg), _PREFIX_BP), _PREFIX_BP
    if isinstance(f, Neg):
        return "neg " + _wrap(*_show(f.arg), _PREFIX_BP), _PREFIX_BP
    if isinstance(f, FOr):
        return _binary(f.left, "|", f.right, _INFIX["|"])
    if isinstance(f, Plus):
        return _binary(f.left, "+", f.right, _INFIX["+"])
    if isinstance(f, Coalesce):
        return _binary(f.left, "#", f.right, _INFIX["#"])
    raise TypeError(f"not a formula: {f!r}")


def _binary(left, op: str, right, bp: int) -> Tuple[str, int]:
    lt = _wrap(*_show(left), bp)
    rt = _wrap(*_show(right), bp + 1)
    return f"{lt} {op} {rt}", bp


def print_formula(f) -> str:
    """Render a formula with minimal parentheses; the text parses back to ``f``."""
    return _show(f)[0]
