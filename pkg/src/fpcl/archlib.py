"""Formula templates for two architecture styles and their uncertainty.

Peer-to-peer with ``n`` components uses ports ``r1..rn`` (receive) and
``s1..sn`` (send).  Master/Slave with ``m`` masters and ``s`` slaves uses
ports ``m1..mm`` and ``s1..ss``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from .semantics import Configuration, eval_closure
from .syntax import (
    Atom,
    FNot,
    PclFormula,
    PilFormula,
    big_and,
    big_coalesce,
    big_plus,
)

__all__ = [
    "StyleName",
    "ArchStyle",
    "p2p_ports",
    "p2p_link",
    "p2p_component_summands",
    "p2p_component",
    "p2p_summands",
    "p2p_formula",
    "master_slave_ports",
    "master_slave_link",
    "master_slave_formula",
    "uncertainty",
]


class StyleName(Enum):
    P2P = "p2p"
    MASTER_SLAVE = "master-slave"


@dataclass(frozen=True)
class ArchStyle:
    name: StyleName
    params: Tuple[int, ...]

    def __post_init__(self):
        if self.name is StyleName.P2P:
            if len(self.params) != 1 or self.params[0] < 2:
                raise ValueError("p2p needs one component count n >= 2")
        elif len(self.params) != 2 or min(self.params) < 1:
            raise ValueError("master-slave needs master and slave counts >= 1")

    def ports(self) -> List[str]:
        if self.name is StyleName.P2P:
            return p2p_ports(*self.params)
        return master_slave_ports(*self.params)

    def formula(self) -> PclFormula:
        if self.name is StyleName.P2P:
            return p2p_formula(*self.params)[0]
        return master_slave_formula(*self.params)[0]


def _nonempty_subsets(items: Sequence) -> List[tuple]:
    return [c for r in range(1, len(items) + 1) for c in itertools.combinations(items, r)]


# -- peer to peer ---------------------------------------------------------


def _check_p2p(n: int) -> None:
    if n < 2:
        raise ValueError(f"p2p needs at least 2 components, got {n}")


def p2p_ports(n: int) -> List[str]:
    _check_p2p(n)
    return [f"r{j}" for j in range(1, n + 1)] + [f"s{j}" for j in range(1, n + 1)]


def p2p_link(j: int, k: int, n: int) -> PilFormula:
    """Component ``j`` receives from ``k``; every other port is off."""
    if j == k or not (1 <= j <= n and 1 <= k <= n):
        raise ValueError(f"need distinct components in 1..{n}, got {j} and {k}")
    lits = [Atom(f"r{j}"), Atom(f"s{k}"), FNot(Atom(f"s{j}")), FNot(Atom(f"r{k}"))]
    for other in range(1, n + 1):
        if other not in (j, k):
            lits += [FNot(Atom(f"r{other}")), FNot(Atom(f"s{other}"))]
    return big_and(lits)


def p2p_component_summands(j: int, n: int) -> List[PclFormula]:
    """One coalescing of links per nonempty set of senders for component ``j``."""
    _check_p2p(n)
    others = [k for k in range(1, n + 1) if k != j]
    return [big_coalesce(p2p_link(j, k, n) for k in senders) for senders in _nonempty_subsets(others)]


def p2p_component(j: int, n: int) -> PclFormula:
    return big_plus(p2p_component_summands(j, n))


def p2p_summands(n: int) -> List[PclFormula]:
    """One coalescing of component formulas per nonempty set of active components."""
    _check_p2p(n)
    comps = {j: p2p_component(j, n) for j in range(1, n + 1)}
    return [big_coalesce(comps[j] for j in active) for active in _nonempty_subsets(sorted(comps))]


def p2p_formula(n: int) -> Tuple[PclFormula, List[str]]:
    return big_plus(p2p_summands(n)), p2p_ports(n)


# -- master / slave -------------------------------------------------------


def master_slave_ports(masters: int, slaves: int) -> List[str]:
    if masters < 1 or slaves < 1:
        raise ValueError(f"need at least one master and one slave, got {masters} and {slaves}")
    return [f"m{i}" for i in range(1, masters + 1)] + [f"s{k}" for k in range(1, slaves + 1)]


def master_slave_link(k: int, i: int, masters: int, slaves: int) -> PilFormula:
    """Slave ``k`` talks to master ``i``; all other ports are off."""
    master_slave_ports(masters, slaves)
    if not (1 <= i <= masters and 1 <= k <= slaves):
        raise ValueError(f"no slave {k} / master {i} in a {masters}x{slaves} layout")
    lits = [Atom(f"s{k}"), Atom(f"m{i}")]
    lits += [FNot(Atom(f"s{o}")) for o in range(1, slaves + 1) if o != k]
    lits += [FNot(Atom(f"m{o}")) for o in range(1, masters + 1) if o != i]
    return big_and(lits)


def master_slave_formula(masters: int, slaves: int) -> Tuple[PclFormula, List[str]]:
    """Coalescing over masters of the choice of one slave per master."""
    ports = master_slave_ports(masters, slaves)
    per_master = [
        big_plus(master_slave_link(k, i, masters, slaves) for k in range(1, slaves + 1))
        for i in range(1, masters + 1)
    ]
    return big_coalesce(per_master), ports


def uncertainty(z, g: Configuration):
    """Closure value of ``z`` on ``g``: the best value over its sub-configurations."""
    return eval_closure(z, g)
