"""Deciding equivalence of configuration formulas.

:func:`decide_equiv` compares normal forms through their nested-set
representations.  The brute-force oracles evaluate both formulas on every
configuration of a finite algebra (or of a fuzzy grid) and report the first
disagreement in canonical order.  :func:`cross_check` runs both and records
any disagreement between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, Element
from .batch import MAX_FULL_UNIVERSE, ConfigurationSpace
from .normalize import (
    NormalizationMode,
    canonical_set_rep,
    pcl_normal_form,
    to_set_rep,
)
from .semantics import Configuration, enumerate_interactions, eval_pcl
from .syntax import as_pcl, ports_of

__all__ = [
    "ResourceError",
    "Verdict",
    "EquivVerdict",
    "Discrepancy",
    "ConsistencyReport",
    "nf_equal",
    "nf_equal_reference",
    "decide_equiv",
    "oracle_equiv",
    "oracle_equiv_fuzzy",
    "cross_check",
    "MODE_ORACLES",
]

# |K|^|P| above this needs an explicit max_config_size
ENUMERATION_GUARD = 12
# ceiling on (configuration, cover) pairs for size-bounded spaces
MAX_COVER_WORK = 5_000_000
# verify witnesses with the reference evaluator up to this size
_WITNESS_CHECK_SIZE = 6


class ResourceError(RuntimeError):
    """An enumeration would exceed the configured limits."""


class Verdict(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    NO_COUNTEREXAMPLE = "no_counterexample"


@dataclass(frozen=True)
class EquivVerdict:
    """Outcome of a semantic comparison.

    ``witness`` and ``values`` are set for ``NOT_EQUIVALENT``;
    ``samples_checked`` counts the configurations evaluated.
    """

    status: Verdict
    witness: Optional[Configuration] = None
    values: Optional[Tuple[Element, Element]] = None
    samples_checked: int = 0

    @property
    def equivalent(self) -> bool:
        return self.status is Verdict.EQUIVALENT

    @property
    def refuted(self) -> bool:
        return self.status is Verdict.NOT_EQUIVALENT


# -- nested-set comparison ------------------------------------------------


def nf_equal(s1, s2) -> bool:
    """Equality of two nested-set representations, via canonical sorting."""
    return canonical_set_rep(s1) == canonical_set_rep(s2)


def _count_matches(a, b, inner) -> bool:
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    k = 0
    for x in a:
        for y in b:
            if inner(x, y):
                k += 1
    return k == len(a)


def _set_eq3(a, b) -> bool:
    return _count_matches(a, b, lambda x, y: x == y)


def _set_eq2(a, b) -> bool:
    return _count_matches(a, b, _set_eq3)


def _set_eq1(a, b) -> bool:
    return _count_matches(a, b, _set_eq2)


def nf_equal_reference(s1, s2) -> bool:
    """Literal nested-loop comparison with cardinality guards at every level.

    Each level counts matching pairs and accepts when the count equals the
    cardinality; a cardinality mismatch is a rejection.  Kept as the
    differential-testing reference for :func:`nf_equal`.
    """
    return _count_matches(s1, s2, _set_eq1)


def decide_equiv(
    z1, z2, ports: Sequence[str], mode: NormalizationMode = NormalizationMode.DEMORGAN
) -> bool:
    """True iff both formulas have the same normal form in ``mode``."""
    z1, z2 = as_pcl(z1), as_pcl(z2)
    s1 = to_set_rep(pcl_normal_form(z1, ports, mode))
    s2 = to_set_rep(pcl_normal_form(z2, ports, mode))
    return nf_equal(s1, s2)


# -- brute-force oracles --------------------------------------------------


def _check_ports(z1, z2, ports: Sequence[str]) -> None:
    extra = (ports_of(z1) | ports_of(z2)) - set(ports)
    if extra:
        raise ValueError(f"formulas mention ports not in the port list: {sorted(extra)}")


def _build_space(universe, max_config_size: Optional[int]) -> ConfigurationSpace:
    n = len(universe)
    size = n if max_config_size is None else min(max_config_size, n)
    if size >= n and n > MAX_FULL_UNIVERSE:
        raise ResourceError(
            f"{n} interactions give 2^{n}-1 configurations; the full space is limited to "
            f"{MAX_FULL_UNIVERSE} interactions, pass a smaller max_config_size"
        )
    if size < n:
        work = sum(math.comb(n, r) * (3**r - 2) for r in range(1, size + 1))
        if work > MAX_COVER_WORK:
            raise ResourceError(
                f"{n} interactions with configurations up to size {size} need {work} cover "
                f"evaluations (limit {MAX_COVER_WORK})"
            )
    return ConfigurationSpace(universe, max_size=size)


def _compare(z1, z2, space: ConfigurationSpace) -> EquivVerdict:
    v1, v2 = space.evaluate(z1), space.evaluate(z2)
    diff = (v1 != v2).nonzero()[0]
    if len(diff) == 0:
        return EquivVerdict(Verdict.EQUIVALENT, samples_checked=len(space))
    i = int(diff[0])
    witness = space.configuration(i)
    values = (space.decode(v1[i]), space.decode(v2[i]))
    if len(witness) <= _WITNESS_CHECK_SIZE:
        ref = (eval_pcl(z1, witness), eval_pcl(z2, witness))
        if ref != values:
            raise AssertionError(f"batch and reference evaluators disagree on {witness}")
    return EquivVerdict(Verdict.NOT_EQUIVALENT, witness, values, samples_checked=i + 1)


def oracle_equiv(
    z1, z2, ports: Sequence[str], algebra: Algebra, max_config_size: Optional[int] = None
) -> EquivVerdict:
    """Compare two formulas on every configuration over a finite algebra.

    Without ``max_config_size`` the port count must keep ``|K|**|P|`` at
    most 12.  With it, only configurations of at most that many interactions
    are checked, so ``EQUIVALENT`` is relative to that bound.
    """
    if not algebra.is_finite:
        raise ValueError("oracle_equiv needs a finite algebra; use oracle_equiv_fuzzy")
    z1, z2 = as_pcl(z1), as_pcl(z2)
    _check_ports(z1, z2, ports)
    if max_config_size is not None and max_config_size < 1:
        raise ValueError("max_config_size must be at least 1")
    points = algebra.size ** len(set(ports))
    if max_config_size is None and points > ENUMERATION_GUARD:
        raise ResourceError(
            f"{algebra.value} over {len(set(ports))} ports has {points} weight maps "
            f"(guard {ENUMERATION_GUARD}); pass max_config_size"
        )
    universe = enumerate_interactions(ports, algebra)
    return _compare(z1, z2, _build_space(universe, max_config_size))


def oracle_equiv_fuzzy(
    z1, z2, ports: Sequence[str], grid_denominator: int, max_config_size: int
) -> EquivVerdict:
    """Search the fuzzy grid ``{0, 1/d, ..., 1}`` for a distinguishing configuration.

    Never answers ``EQUIVALENT``: agreement on the grid is reported as
    ``NO_COUNTEREXAMPLE`` with the number of configurations checked.
    """
    if grid_denominator < 1:
        raise ValueError("grid_denominator must be at least 1")
    if max_config_size < 1:
        raise ValueError("max_config_size must be at least 1")
    z1, z2 = as_pcl(z1), as_pcl(z2)
    _check_ports(z1, z2, ports)
    universe = enumerate_interactions(ports, Algebra.FUZZY, grid=grid_denominator)
    verdict = _compare(z1, z2, _build_space(universe, max_config_size))
    if verdict.equivalent:
        return EquivVerdict(Verdict.NO_COUNTEREXAMPLE, samples_checked=verdict.samples_checked)
    return verdict


# -- cross-checking -------------------------------------------------------

MODE_ORACLES: Dict[NormalizationMode, Tuple[str, ...]] = {
    NormalizationMode.DEMORGAN: ("bool2", "kleene3", "four"),
    NormalizationMode.KLEENE: ("bool2", "kleene3", "fuzzy"),
    NormalizationMode.BOOLEAN: ("bool2",),
}


@dataclass(frozen=True)
class Discrepancy:
    """Normal forms and an oracle disagree.

    ``kind`` is ``"soundness"`` (normal forms equal, oracle has a witness)
    or ``"completeness"`` (normal forms differ, no oracle found a witness).
    """

    kind: str
    left: str
    right: str
    mode: NormalizationMode
    algebra: Optional[str] = None
    witness: Optional[Configuration] = None
    values: Optional[Tuple[Element, Element]] = None


@dataclass
class ConsistencyReport:
    left: str
    right: str
    mode: NormalizationMode
    decided: bool
    oracles: Dict[str, EquivVerdict] = field(default_factory=dict)
    discrepancies: List[Discrepancy] = field(default_factory=list)

    @property
    def agreement(self) -> bool:
        return not self.discrepancies

    @property
    def soundness_discrepancies(self) -> List[Discrepancy]:
        return [d for d in self.discrepancies if d.kind == "soundness"]

    @property
    def completeness_discrepancies(self) -> List[Discrepancy]:
        return [d for d in self.discrepancies if d.kind == "completeness"]


def _finite_oracle(z1, z2, ports, algebra: Algebra, max_universe: int) -> EquivVerdict:
    points = algebra.size ** len(set(ports))
    if points <= ENUMERATION_GUARD:
        return oracle_equiv(z1, z2, ports, algebra)
    n = points - 1
    return oracle_equiv(z1, z2, ports, algebra, max_config_size=n if n <= max_universe else 2)


def cross_check(
    z1,
    z2,
    ports: Sequence[str],
    mode: NormalizationMode = NormalizationMode.DEMORGAN,
    *,
    fuzzy_grid: int = 2,
    fuzzy_max_size: int = 2,
    max_universe: int = 16,
) -> ConsistencyReport:
    """Run :func:`decide_equiv` and the oracles matching ``mode``.

    Finite oracles use the full configuration space when it has at most
    ``max_universe`` interactions and configurations of size two otherwise.
    """
    from .syntax import print_formula

    z1, z2 = as_pcl(z1), as_pcl(z2)
    decided = decide_equiv(z1, z2, ports, mode)
    report = ConsistencyReport(print_formula(z1), print_formula(z2), mode, decided)
    for name in MODE_ORACLES[mode]:
        algebra = Algebra.from_name(name)
        if algebra is Algebra.FUZZY:
            verdict = oracle_equiv_fuzzy(z1, z2, ports, fuzzy_grid, fuzzy_max_size)
        else:
            verdict = _finite_oracle(z1, z2, ports, algebra, max_universe)
        report.oracles[name] = verdict
        if decided and verdict.refuted:
            report.discrepancies.append(
                Discrepancy(
                    "soundness", report.left, report.right, mode, name, verdict.witness, verdict.values
                )
            )
    if not decided and not any(v.refuted for v in report.oracles.values()):
        report.discrepancies.append(Discrepancy("completeness", report.left, report.right, mode))
    return report
