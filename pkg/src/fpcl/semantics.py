"""Fuzzy interactions, configurations and exact formula evaluation.

This module is the reference evaluator: it follows the inductive
definitions literally, including the enumeration of all two-part covers for
the coalescing operator.  :mod:`fpcl.batch` evaluates the same semantics on
whole configuration spaces at once and is tested against this module.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import Algebra, AlgebraError, Element, elements, sample_grid
from .syntax import (
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
    is_port_name,
)

__all__ = [
    "EvaluationError",
    "ConfigurationError",
    "Interaction",
    "Configuration",
    "eval_pil",
    "eval_pil_on_config",
    "enumerate_covers",
    "eval_pcl",
    "eval_closure",
    "enumerate_interactions",
    "enumerate_configurations",
    "configuration_from_json",
    "configuration_to_json",
    "element_to_json",
]


class EvaluationError(ValueError):
    """A formula mentions a port the interaction does not declare."""


class ConfigurationError(ValueError):
    """Malformed interaction or configuration data."""


@dataclass(frozen=True)
class Interaction:
    """A fuzzy interaction: a weight for every declared port, not all zero.

    Ports are kept sorted so that equal maps compare and hash equal.
    """

    ports: Tuple[str, ...]
    weights: Tuple[Element, ...]

    def __post_init__(self):
        if len(self.ports) != len(self.weights):
            raise ConfigurationError("ports and weights differ in length")
        if not self.ports:
            raise ConfigurationError("an interaction needs at least one port")
        if len(set(self.ports)) != len(self.ports):
            raise ConfigurationError(f"duplicate ports in {self.ports}")
        if list(self.ports) != sorted(self.ports):
            order = sorted(range(len(self.ports)), key=self.ports.__getitem__)
            object.__setattr__(self, "ports", tuple(self.ports[i] for i in order))
            object.__setattr__(self, "weights", tuple(self.weights[i] for i in order))
        algebras = {w.algebra for w in self.weights}
        if len(algebras) != 1:
            raise ConfigurationError("all weights of an interaction must come from one algebra")
        if all(w.is_zero for w in self.weights):
            raise ConfigurationError("an interaction must give some port a nonzero weight")

    @classmethod
    def of(cls, mapping: Mapping[str, Union[Element, str, int]], algebra: Optional[Algebra] = None):
        """Build from ``{port: weight}``; raw weights need ``algebra``."""
        ports = tuple(mapping)
        weights = []
        for p in ports:
            w = mapping[p]
            if not isinstance(w, Element):
                if algebra is None:
                    raise ConfigurationError("raw weights need an explicit algebra")
                w = algebra.element(w)
            weights.append(w)
        return cls(ports, tuple(weights))

    @property
    def algebra(self) -> Algebra:
        return self.weights[0].algebra

    def __getitem__(self, port: str) -> Element:
        try:
            return self.weights[self.ports.index(port)]
        except ValueError:
            raise EvaluationError(
                f"port {port!r} is not declared by the interaction (ports: {', '.join(self.ports)})"
            ) from None

    def as_dict(self) -> Dict[str, Element]:
        return dict(zip(self.ports, self.weights))

    def sort_key(self) -> Tuple:
        return tuple(w.sort_key() for w in self.weights)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{p}:{w}" for p, w in zip(self.ports, self.weights)) + "}"


@dataclass(frozen=True)
class Configuration:
    """A nonempty finite set of interactions over one port set and algebra."""

    interactions: frozenset

    def __post_init__(self):
        if not isinstance(self.interactions, frozenset):
            object.__setattr__(self, "interactions", frozenset(self.interactions))
        if not self.interactions:
            raise ConfigurationError("a configuration must contain at least one interaction")
        first = next(iter(self.interactions))
        for a in self.interactions:
            if a.ports != first.ports:
                raise ConfigurationError("interactions of a configuration must share their ports")
            if a.algebra is not first.algebra:
                raise ConfigurationError("interactions of a configuration must share their algebra")

    @classmethod
    def of(cls, interactions: Iterable[Interaction]) -> "Configuration":
        return cls(frozenset(interactions))

    @property
    def algebra(self) -> Algebra:
        return next(iter(self.interactions)).algebra

    @property
    def ports(self) -> Tuple[str, ...]:
        return next(iter(self.interactions)).ports

    def members(self) -> List[Interaction]:
        """Interactions in canonical order."""
        return sorted(self.interactions, key=Interaction.sort_key)

    def __iter__(self) -> Iterator[Interaction]:
        return iter(self.members())

    def __len__(self) -> int:
        return len(self.interactions)

    def __str__(self) -> str:
        return "{" + ", ".join(str(a) for a in self) + "}"


# -- evaluation -----------------------------------------------------------


def eval_pil(f: PilFormula, a: Interaction) -> Element:
    """Value of an interaction formula on one interaction."""
    if isinstance(f, Top):
        return a.algebra.one
    if isinstance(f, Atom):
        return a[f.port]
    if isinstance(f, FNot):
        return ~eval_pil(f.arg, a)
    if isinstance(f, FOr):
        return eval_pil(f.left, a) | eval_pil(f.right, a)
    raise TypeError(f"not an interaction formula: {f!r}")


def eval_pil_on_config(f: PilFormula, g: Configuration) -> Element:
    """Meet of the formula's values over all interactions of ``g``."""
    values = [eval_pil(f, a) for a in g.interactions]
    out = values[0]
    for v in values[1:]:
        out = out & v
    return out


def enumerate_covers(g: Configuration) -> List[Tuple[Configuration, Configuration]]:
    """All ordered pairs of nonempty sub-configurations whose union is ``g``.

    There are ``3**n - 2`` of them for ``n = len(g)``.
    """
    members = g.members()
    covers = []
    for sides in itertools.product((0, 1, 2), repeat=len(members)):
        left = [a for a, s in zip(members, sides) if s != 1]
        right = [a for a, s in zip(members, sides) if s != 0]
        if left and right:
            covers.append((Configuration.of(left), Configuration.of(right)))
    return covers


def _join_all(values: Iterable[Element]) -> Element:
    it = iter(values)
    out = next(it)
    for v in it:
        out = out | v
    return out


def eval_pcl(z: PclFormula, g: Configuration) -> Element:
    """Value of a configuration formula on ``g``.

    Coalescing joins over every cover; results are memoized per
    (subformula, sub-configuration) for the duration of the call.
    """
    memo: Dict[Tuple[int, frozenset], Element] = {}

    def ev(node: PclFormula, conf: Configuration) -> Element:
        key = (id(node), conf.interactions)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Pil):
            out = eval_pil_on_config(node.formula, conf)
        elif isinstance(node, Neg):
            out = ~ev(node.arg, conf)
        elif isinstance(node, Plus):
            out = ev(node.left, conf) | ev(node.right, conf)
        elif isinstance(node, Coalesce):
            out = _join_all(ev(node.left, c1) & ev(node.right, c2) for c1, c2 in enumerate_covers(conf))
        else:
            raise TypeError(f"not a configuration formula: {node!r}")
        memo[key] = out
        return out

    return ev(z, g)


def _nonempty_subconfigurations(g: Configuration) -> Iterator[Configuration]:
    members = g.members()
    for r in range(1, len(members) + 1):
        for combo in itertools.combinations(members, r):
            yield Configuration.of(combo)


def eval_closure(z: PclFormula, g: Configuration) -> Element:
    """Join of ``z``'s values over all nonempty sub-configurations of ``g``."""
    return _join_all(eval_pcl(z, sub) for sub in _nonempty_subconfigurations(g))


# -- enumeration ----------------------------------------------------------


def _carrier(algebra: Algebra, grid: Optional[int]) -> List[Element]:
    if algebra.is_finite:
        return elements(algebra)
    if grid is None:
        raise AlgebraError("the fuzzy algebra needs a grid denominator to enumerate interactions")
    return sample_grid(grid)


def enumerate_interactions(
    ports: Sequence[str], algebra: Algebra, grid: Optional[int] = None
) -> List[Interaction]:
    """Every interaction over ``ports`` with weights from the (grid) carrier.

    Ports are taken in sorted order; weight tuples follow the canonical
    element order lexicographically.  The all-zero map is skipped.
    """
    ports = tuple(sorted(ports))
    if not ports:
        raise ConfigurationError("need at least one port")
    carrier = _carrier(algebra, grid)
    out = []
    for weights in itertools.product(carrier, repeat=len(ports)):
        if all(w.is_zero for w in weights):
            continue
        out.append(Interaction(ports, weights))
    return out


def enumerate_configurations(
    ports: Sequence[str],
    algebra: Algebra,
    max_size: Optional[int] = None,
    grid: Optional[int] = None,
) -> Iterator[Configuration]:
    """Stream all nonempty sets of interactions, smallest first."""
    universe = enumerate_interactions(ports, algebra, grid)
    top = len(universe) if max_size is None else min(max_size, len(universe))
    for r in range(1, top + 1):
        for combo in itertools.combinations(universe, r):
            yield Configuration.of(combo)


# -- JSON -----------------------------------------------------------------


def element_to_json(e: Element) -> str:
    if e.algebra is Algebra.FUZZY:
        q = e.value
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return e.value


def configuration_from_json(data: Union[str, Mapping]) -> Configuration:
    """Load ``{"algebra": ..., "ports": [...], "interactions": [{port: weight}]}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, Mapping):
        raise ConfigurationError("configuration JSON must be an object")
    for key in ("algebra", "ports", "interactions"):
        if key not in data:
            raise ConfigurationError(f"configuration JSON lacks {key!r}")
    try:
        algebra = Algebra.from_name(str(data["algebra"]))
    except AlgebraError as exc:
        raise ConfigurationError(str(exc)) from exc
    ports = data["ports"]
    if not isinstance(ports, list) or not ports:
        raise ConfigurationError("'ports' must be a nonempty list")
    for p in ports:
        if not isinstance(p, str) or not is_port_name(p):
            raise ConfigurationError(f"invalid port name {p!r}")
    if len(set(ports)) != len(ports):
        raise ConfigurationError("duplicate port names")
    rows = data["interactions"]
    if not isinstance(rows, list) or not rows:
        raise ConfigurationError("'interactions' must be a nonempty list")
    interactions = []
    for n, row in enumerate(rows):
        if not isinstance(row, Mapping):
            raise ConfigurationError(f"interaction #{n} is not an object")
        unknown = set(row) - set(ports)
        if unknown:
            raise ConfigurationError(f"interaction #{n} uses undeclared ports {sorted(unknown)}")
        missing = [p for p in ports if p not in row]
        if missing:
            raise ConfigurationError(f"interaction #{n} does not weight ports {missing}")
        try:
            weights = tuple(algebra.element(str(row[p])) for p in ports)
        except AlgebraError as exc:
            raise ConfigurationError(f"interaction #{n}: {exc}") from exc
        try:
            interactions.append(Interaction(tuple(ports), weights))
        except ConfigurationError as exc:
            raise ConfigurationError(f"interaction #{n}: {exc}") from exc
    return Configuration.of(interactions)


def configuration_to_json(g: Configuration) -> dict:
    return {
        "algebra": g.algebra.value,
        "ports": list(g.ports),
        "interactions": [{p: element_to_json(w) for p, w in zip(a.ports, a.weights)} for a in g],
    }
