"""Normal forms of fPIL and fPCL formulas.

An interaction formula is brought to a disjunction of f-monomials
(conjunctions of ports and negated ports).  A configuration formula is
brought to a sum of coalescing groups whose members are such disjunctions::

    (m11 | m12) # m21  +  m31 # true  +  ...

Three modes are supported.  ``DEMORGAN`` uses only laws valid in every
De Morgan algebra.  ``KLEENE`` additionally expands every contradictory
monomial (one containing both ``p`` and ``!p``) over all missing ports,
which is valid in Kleene algebras such as ``kleene3`` and the fuzzy algebra.
``BOOLEAN`` drops contradictory monomials and rewrites every member as a
set of full minterms.

The configuration-level construction runs in De Morgan mode and applies
the Kleene or Boolean rewriting to the members of the result, followed by
the same clean-up.  A Boolean normal form is computed from the Kleene one,
so equal De Morgan forms imply equal Kleene forms imply equal Boolean forms.

Internally a monomial is a frozenset of ``(port, positive)`` literals
(the empty set is ``true``), a disjunction is a frozenset of monomials
(``frozenset()`` is ``false``), a group is a frozenset of disjunctions and a
sum is a frozenset of groups (``frozenset()`` is ``false``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .syntax import (
    FALSE,
    TRUE,
    Atom,
    Coalesce,
    FNot,
    FOr,
    Neg,
    Pil,
    PilFormula,
    PclFormula,
    Plus,
    Top,
    big_and,
    big_coalesce,
    big_or,
    big_plus,
    pil_and,
    ports_of,
    print_formula,
)

__all__ = [
    "NormalizationMode",
    "NormalizationBudgetExceeded",
    "StepBudget",
    "NnfLit",
    "NnfConst",
    "NnfAnd",
    "NnfOr",
    "nnf_to_pil",
    "Monomial",
    "FpilNF",
    "Group",
    "PclNF",
    "pil_nnf",
    "pil_normal_form",
    "kleene_expand",
    "boolean_canonicalize",
    "pcl_normal_form",
    "to_formula",
    "member_formula",
    "to_set_rep",
    "set_rep_to_json",
    "canonical_set_rep",
    "validate_normal_form",
]

Lit = Tuple[str, bool]
Term = FrozenSet[Lit]
Dnf = FrozenSet[Term]

_TRUE_DNF: Dnf = frozenset({frozenset()})
_FALSE_DNF: Dnf = frozenset()
_TRUE_SUM = frozenset({frozenset({_TRUE_DNF})})
_FALSE_SUM: frozenset = frozenset()

DEFAULT_STEP_LIMIT = 2_000_000


class NormalizationMode(Enum):
    DEMORGAN = "demorgan"
    KLEENE = "kleene"
    BOOLEAN = "boolean"


class NormalizationBudgetExceeded(RuntimeError):
    pass


class StepBudget:
    """Counts construction steps (groups built) and enforces a ceiling."""

    def __init__(self, limit: int = DEFAULT_STEP_LIMIT):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise NormalizationBudgetExceeded(f"normalization exceeded {self.limit} steps")


# -- negation normal form -------------------------------------------------


@dataclass(frozen=True)
class NnfLit:
    port: str
    positive: bool


@dataclass(frozen=True)
class NnfConst:
    value: bool


@dataclass(frozen=True)
class NnfAnd:
    left: "Nnf"
    right: "Nnf"


@dataclass(frozen=True)
class NnfOr:
    left: "Nnf"
    right: "Nnf"


Nnf = object


def pil_nnf(f: PilFormula, negate: bool = False):
    """Push negations down to ports and constants.

    Returns a tree of :class:`NnfLit`, :class:`NnfConst`, :class:`NnfAnd`
    and :class:`NnfOr`; use :func:`nnf_to_pil` to get a formula back.
    """
    if isinstance(f, Top):
        return NnfConst(not negate)
    if isinstance(f, Atom):
        return NnfLit(f.port, not negate)
    if isinstance(f, FNot):
        return pil_nnf(f.arg, not negate)
    if isinstance(f, FOr):
        left, right = pil_nnf(f.left, negate), pil_nnf(f.right, negate)
        return NnfAnd(left, right) if negate else NnfOr(left, right)
    raise TypeError(f"not an interaction formula: {f!r}")


def nnf_to_pil(n) -> PilFormula:
    if isinstance(n, NnfConst):
        return TRUE if n.value else FALSE
    if isinstance(n, NnfLit):
        return Atom(n.port) if n.positive else FNot(Atom(n.port))
    if isinstance(n, NnfAnd):
        return pil_and(nnf_to_pil(n.left), nnf_to_pil(n.right))
    if isinstance(n, NnfOr):
        return FOr(nnf_to_pil(n.left), nnf_to_pil(n.right))
    raise TypeError(f"not an NNF node: {n!r}")


# -- disjunctions of monomials --------------------------------------------


def _absorb(terms: Iterable[Term]) -> Dnf:
    """Deduplicate and drop every monomial that strictly contains another."""
    terms = set(terms)
    if frozenset() in terms:
        return _TRUE_DNF
    ordered = sorted(terms, key=len)
    kept: List[Term] = []
    for t in ordered:
        if not any(k < t for k in kept):
            kept.append(t)
    return frozenset(kept)


def _disj(a: Dnf, b: Dnf) -> Dnf:
    return _absorb(a | b)


def _conj(a: Dnf, b: Dnf) -> Dnf:
    return _absorb(x | y for x in a for y in b)


def _neg_dnf(d: Dnf) -> Dnf:
    out = _TRUE_DNF
    for term in _sorted_terms(d):
        clause = frozenset(frozenset({(p, not s)}) for p, s in term)
        out = _conj(out, clause)
    return out


def _dnf_of_nnf(n) -> Dnf:
    if isinstance(n, NnfConst):
        return _TRUE_DNF if n.value else _FALSE_DNF
    if isinstance(n, NnfLit):
        return frozenset({frozenset({(n.port, n.positive)})})
    if isinstance(n, NnfOr):
        return _disj(_dnf_of_nnf(n.left), _dnf_of_nnf(n.right))
    if isinstance(n, NnfAnd):
        return _conj(_dnf_of_nnf(n.left), _dnf_of_nnf(n.right))
    raise TypeError(f"not an NNF node: {n!r}")


def _dnf(f: PilFormula) -> Dnf:
    return _dnf_of_nnf(pil_nnf(f))


def _contradictory(t: Term) -> bool:
    return any((p, not s) in t for p, s in t)


def _expand_term(t: Term, ports: Sequence[str]) -> Set[Term]:
    mentioned = {p for p, _ in t}
    missing = [p for p in sorted(ports) if p not in mentioned]
    out = set()
    for signs in itertools.product((True, False), repeat=len(missing)):
        out.add(t | frozenset(zip(missing, signs)))
    return out


def _kleene_hook(d: Dnf, ports: Sequence[str]) -> Dnf:
    if d in (_TRUE_DNF, _FALSE_DNF):
        return d
    out: Set[Term] = set()
    for t in d:
        if _contradictory(t):
            out |= _expand_term(t, ports)
        else:
            out.add(t)
    return _absorb(out)


def _boolean_hook(d: Dnf, ports: Sequence[str]) -> Dnf:
    minterms: Set[Term] = set()
    for t in d:
        if not _contradictory(t):
            minterms |= _expand_term(t, ports)
    if len(minterms) == 2 ** len(set(ports)):
        return _TRUE_DNF
    return frozenset(minterms)


# -- canonical ordering ---------------------------------------------------


def _lit_key(lit: Lit):
    port, positive = lit
    return (0 if positive else 1, port)


def _term_key(t: Term):
    return tuple(sorted(_lit_key(l) for l in t))


_TRUE_KEY = (((2, ""),),)  # sorts the member true after every monomial set


def _dnf_key(d: Dnf):
    if d == _TRUE_DNF:
        return _TRUE_KEY
    return tuple(sorted(_term_key(t) for t in d))


def _group_key(g):
    return tuple(sorted(_dnf_key(d) for d in g))


def _sorted_terms(d: Dnf) -> List[Term]:
    return sorted(d, key=_term_key)


def _sorted_members(g) -> List[Dnf]:
    return sorted(g, key=_dnf_key)


def _sorted_groups(s) -> list:
    return sorted(s, key=_group_key)


# -- public normal-form values --------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """Conjunction of the ports in ``pos`` and the negated ports in ``neg``."""

    pos: FrozenSet[str]
    neg: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))
        if not (self.pos or self.neg):
            raise ValueError("a monomial needs at least one literal")

    @property
    def contradictory(self) -> bool:
        return bool(self.pos & self.neg)

    def literals(self) -> List[str]:
        return sorted(self.pos) + ["!" + p for p in sorted(self.neg)]

    def sort_key(self):
        return _term_key(self._term())

    def _term(self) -> Term:
        return frozenset([(p, True) for p in self.pos] + [(p, False) for p in self.neg])

    @classmethod
    def _from_term(cls, t: Term) -> "Monomial":
        return cls(frozenset(p for p, s in t if s), frozenset(p for p, s in t if not s))

    def formula(self) -> PilFormula:
        lits = [Atom(p) for p in sorted(self.pos)] + [FNot(Atom(p)) for p in sorted(self.neg)]
        return big_and(lits)

    def __str__(self) -> str:
        return " & ".join(self.literals())


@dataclass(frozen=True)
class FpilNF:
    """``true``, ``false`` or a disjunction of monomials (``kind == "monomials"``)."""

    kind: str
    monomials: FrozenSet[Monomial] = frozenset()

    @property
    def is_true(self) -> bool:
        return self.kind == "true"

    @property
    def is_false(self) -> bool:
        return self.kind == "false"

    def sorted_monomials(self) -> List[Monomial]:
        return sorted(self.monomials, key=Monomial.sort_key)

    def _dnf(self) -> Dnf:
        if self.is_true:
            return _TRUE_DNF
        if self.is_false:
            return _FALSE_DNF
        return frozenset(m._term() for m in self.monomials)

    @classmethod
    def _from_dnf(cls, d: Dnf) -> "FpilNF":
        if d == _TRUE_DNF:
            return FPIL_TRUE
        if d == _FALSE_DNF:
            return FPIL_FALSE
        return cls("monomials", frozenset(Monomial._from_term(t) for t in d))

    def sort_key(self):
        return _dnf_key(self._dnf())

    def __str__(self) -> str:
        return print_formula(member_formula(self))


FPIL_TRUE = FpilNF("true")
FPIL_FALSE = FpilNF("false")


@dataclass(frozen=True)
class Group:
    """A coalescing of fpil-normal forms, none of them ``false``."""

    members: FrozenSet[FpilNF]

    def sorted_members(self) -> List[FpilNF]:
        return sorted(self.members, key=FpilNF.sort_key)

    def sort_key(self):
        return tuple(m.sort_key() for m in self.sorted_members())

    def __str__(self) -> str:
        return " # ".join(_member_text(m) for m in self.sorted_members())


def _member_text(m: FpilNF) -> str:
    text = str(m)
    return f"({text})" if m.kind == "monomials" and len(m.monomials) > 1 else text


@dataclass(frozen=True)
class PclNF:
    """``true``, ``false`` or a sum of groups (``kind == "sum"``)."""

    kind: str
    groups: FrozenSet[Group] = frozenset()

    @property
    def is_true(self) -> bool:
        return self.kind == "true"

    @property
    def is_false(self) -> bool:
        return self.kind == "false"

    def sorted_groups(self) -> List[Group]:
        return sorted(self.groups, key=Group.sort_key)

    def _sum(self) -> frozenset:
        if self.is_true:
            return _TRUE_SUM
        if self.is_false:
            return _FALSE_SUM
        return frozenset(frozenset(m._dnf() for m in g.members) for g in self.groups)

    @classmethod
    def _from_sum(cls, s: frozenset) -> "PclNF":
        if s == _TRUE_SUM:
            return PCL_TRUE
        if s == _FALSE_SUM:
            return PCL_FALSE
        return cls(
            "sum", frozenset(Group(frozenset(FpilNF._from_dnf(d) for d in g)) for g in s)
        )

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "groups": [[str(m) for m in g.sorted_members()] for g in self.sorted_groups()],
        }

    def __str__(self) -> str:
        return print_formula(to_formula(self))


PCL_TRUE = PclNF("true")
PCL_FALSE = PclNF("false")


# -- fPIL normal form -----------------------------------------------------


def _check_ports(f, ports: Sequence[str]) -> None:
    extra = ports_of(f) - set(ports)
    if extra:
        raise ValueError(f"formula mentions ports not in the port list: {sorted(extra)}")


def _apply_hook(d: Dnf, ports: Sequence[str], mode: NormalizationMode) -> Dnf:
    if mode is NormalizationMode.DEMORGAN:
        return d
    d = _kleene_hook(d, ports)
    if mode is NormalizationMode.BOOLEAN:
        d = _boolean_hook(d, ports)
    return d


def pil_normal_form(
    f: PilFormula, ports: Sequence[str], mode: NormalizationMode = NormalizationMode.DEMORGAN
) -> FpilNF:
    """Disjunction of pairwise distinct, absorption-reduced monomials equivalent to ``f``."""
    _check_ports(f, ports)
    return FpilNF._from_dnf(_apply_hook(_dnf(f), ports, mode))


def kleene_expand(m: Monomial, ports: Sequence[str]) -> Set[Monomial]:
    """Conjoin a contradictory monomial with ``p | !p`` for every port it misses."""
    if not m.contradictory:
        raise ValueError(f"kleene_expand needs a contradictory monomial, got {m}")
    extra = (m.pos | m.neg) - set(ports)
    if extra:
        raise ValueError(f"monomial mentions ports not in the port list: {sorted(extra)}")
    return {Monomial._from_term(t) for t in _expand_term(m._term(), ports)}


def boolean_canonicalize(ms: Iterable[Monomial], ports: Sequence[str]) -> FpilNF:
    """Full-minterm form of a disjunction of monomials over a Boolean algebra."""
    d = frozenset(m._term() for m in ms)
    return FpilNF._from_dnf(_boolean_hook(d, ports))


# -- fPCL normal form -----------------------------------------------------


def _cleanup(groups: Iterable[frozenset]) -> frozenset:
    """Drop groups with a ``false`` member; a group ``{true}`` makes the sum ``true``."""
    out = set()
    for g in groups:
        if _FALSE_DNF in g:
            continue
        if g == {_TRUE_DNF}:
            return _TRUE_SUM
        out.add(g)
    return frozenset(out)


class _Builder:
    def __init__(self, budget: StepBudget):
        self.budget = budget

    def base(self, f: PilFormula) -> frozenset:
        return _cleanup([frozenset({_dnf(f)})])

    def plus(self, a: frozenset, b: frozenset) -> frozenset:
        return _cleanup(a | b)

    def coalesce(self, a: frozenset, b: frozenset) -> frozenset:
        self.budget.spend(len(a) * len(b))
        return _cleanup(g1 | g2 for g1 in _sorted_groups(a) for g2 in _sorted_groups(b))

    def times(self, a: frozenset, b: frozenset) -> frozenset:
        if a == _TRUE_SUM:
            return b
        if b == _TRUE_SUM:
            return a
        self.budget.spend(len(a) * len(b))
        out = []
        for g1 in _sorted_groups(a):
            for g2 in _sorted_groups(b):
                phi = _FALSE_DNF
                for x in _sorted_members(g1):
                    for y in _sorted_members(g2):
                        phi = _disj(phi, _conj(x, y))
                members = {_conj(x, phi) for x in g1 | g2}
                members.add(phi)
                out.append(frozenset(members))
        return _cleanup(out)

    def negate_group(self, g: frozenset) -> frozenset:
        negs = [_neg_dnf(x) for x in _sorted_members(g)]
        groups = [frozenset({n}) for n in negs]
        all_neg = _TRUE_DNF
        for n in negs:
            all_neg = _conj(all_neg, n)
        groups.append(frozenset({all_neg, _TRUE_DNF}))
        return _cleanup(groups)

    def neg(self, a: frozenset) -> frozenset:
        if a == _FALSE_SUM:
            return _TRUE_SUM
        out = None
        for g in _sorted_groups(a):
            ng = self.negate_group(g)
            out = ng if out is None else self.times(out, ng)
        return out

    def build(self, z: PclFormula) -> frozenset:
        if isinstance(z, Pil):
            return self.base(z.formula)
        if isinstance(z, Neg):
            return self.neg(self.build(z.arg))
        if isinstance(z, Plus):
            return self.plus(self.build(z.left), self.build(z.right))
        if isinstance(z, Coalesce):
            return self.coalesce(self.build(z.left), self.build(z.right))
        raise TypeError(f"not a configuration formula: {z!r}")


def pcl_normal_form(
    z: PclFormula,
    ports: Sequence[str],
    mode: NormalizationMode = NormalizationMode.DEMORGAN,
    budget: Optional[StepBudget] = None,
) -> PclNF:
    """Sum-of-coalescings normal form of ``z``, valid for every algebra of ``mode``."""
    _check_ports(z, ports)
    s = _Builder(budget or StepBudget()).build(z)
    if mode is not NormalizationMode.DEMORGAN:
        s = _cleanup(frozenset(_apply_hook(d, ports, mode) for d in g) for g in s)
    return PclNF._from_sum(s)


# -- back to formulas -----------------------------------------------------


def member_formula(m: FpilNF) -> PilFormula:
    if m.is_true:
        return TRUE
    if m.is_false:
        return FALSE
    return big_or(x.formula() for x in m.sorted_monomials())


def to_formula(nf: PclNF) -> PclFormula:
    """The normal form as a configuration formula, in canonical order."""
    if nf.is_true:
        return Pil(TRUE)
    if nf.is_false:
        return Pil(FALSE)
    return big_plus(
        big_coalesce(Pil(member_formula(m)) for m in g.sorted_members()) for g in nf.sorted_groups()
    )


# -- nested-set representation --------------------------------------------


def to_set_rep(nf: PclNF) -> frozenset:
    """Sum -> set of groups -> set of members -> set of monomials -> set of literal tokens."""
    if nf.is_true or nf.is_false:
        token = "true" if nf.is_true else "false"
        return frozenset({frozenset({frozenset({frozenset({token})})})})
    out = set()
    for g in nf.groups:
        members = set()
        for m in g.members:
            if m.is_true:
                members.add(frozenset({frozenset({"true"})}))
            else:
                members.add(frozenset(frozenset(x.literals()) for x in m.monomials))
        out.add(frozenset(members))
    return frozenset(out)


def _token_key(token: str):
    if token in ("true", "false"):
        return (2, token)
    if token.startswith("!"):
        return (1, token[1:])
    return (0, token)


def _canonical(x):
    if isinstance(x, str):
        return _token_key(x), x
    items = sorted((_canonical(y) for y in x), key=lambda kv: kv[0])
    return tuple(k for k, _ in items), [v for _, v in items]


def canonical_set_rep(s) -> tuple:
    """An injective, order-independent encoding of a nested set as sorted tuples."""
    return _canonical(s)[0]


def set_rep_to_json(s) -> str:
    return json.dumps(_canonical(s)[1])


# -- structural validation ------------------------------------------------


def validate_normal_form(nf: PclNF) -> None:
    """Raise ``ValueError`` if ``nf`` breaks a structural invariant."""
    if nf.kind in ("true", "false"):
        if nf.groups:
            raise ValueError("constant normal form with groups")
        return
    if nf.kind != "sum" or not nf.groups:
        raise ValueError("a sum needs at least one group")
    for g in nf.groups:
        if not g.members:
            raise ValueError("empty group")
        if g.members == {FPIL_TRUE}:
            raise ValueError("group {true} should have collapsed the sum to true")
        for m in g.members:
            if m.is_false:
                raise ValueError("false member in a group")
            if m.kind == "monomials":
                if not m.monomials:
                    raise ValueError("empty monomial set")
                terms = [x._term() for x in m.monomials]
                for a in terms:
                    if any(b < a for b in terms):
                        raise ValueError(f"monomial {Monomial._from_term(a)} is absorbed by another")
            elif not m.is_true:
                raise ValueError(f"unknown member kind {m.kind!r}")
