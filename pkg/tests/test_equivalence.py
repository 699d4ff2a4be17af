import random

import pytest

from fpcl.algebra import Algebra
from fpcl.equivalence import (
    ResourceError,
    Verdict,
    cross_check,
    decide_equiv,
    nf_equal,
    nf_equal_reference,
    oracle_equiv,
    oracle_equiv_fuzzy,
)
from fpcl.normalize import NormalizationMode
from fpcl.semantics import Configuration, Interaction, eval_pcl
from fpcl.syntax import parse_pcl

from fuzz import mutate_set_rep, random_pair, random_set_rep, shuffled_copy

DM, KL, BO = NormalizationMode.DEMORGAN, NormalizationMode.KLEENE, NormalizationMode.BOOLEAN
PHI, PHI2 = parse_pcl("p & !p"), parse_pcl("(p&!p&q)|(p&!p&!q)")
PQ = ["p", "q"]


def S(*groups):
    return frozenset(
        frozenset(frozenset(frozenset(m) for m in member) for member in g) for g in groups
    )


S1 = S(
    [[{"p", "q"}, {"r"}], [{"p", "!r"}]],
    [[{"!p", "!r"}, {"p", "r"}], [{"p"}], [{"true"}]],
)
S2 = S(
    [[{"p", "q"}, {"!r"}], [{"p"}]],
    [[{"!q"}], [{"!p"}], [{"r"}]],
)


def test_worked_sets_differ():
    assert not nf_equal(S1, S2)
    assert not nf_equal_reference(S1, S2)
    assert nf_equal(S1, S1) and nf_equal_reference(S2, S2)


def test_permuted_copies_equal():
    rng = random.Random(0)
    for _ in range(50):
        s = random_set_rep(rng)
        t = shuffled_copy(rng, s)
        assert nf_equal(s, t) and nf_equal_reference(s, t)


def test_reference_agrees_with_sorting():
    rng = random.Random(1)
    for _ in range(300):
        s = random_set_rep(rng)
        t = mutate_set_rep(rng, s) if rng.random() < 0.7 else random_set_rep(rng)
        assert nf_equal(s, t) == nf_equal_reference(s, t) == (s == t)


def test_decide_example_by_mode():
    assert decide_equiv(PHI, PHI2, PQ, DM) is False
    assert decide_equiv(PHI, PHI2, PQ, KL) is True
    assert decide_equiv(PHI, PHI2, PQ, BO) is True


def test_oracle_four_witness():
    v = oracle_equiv(PHI, PHI2, PQ, Algebra.FOUR, max_config_size=15)
    assert v.status is Verdict.NOT_EQUIVALENT
    assert eval_pcl(PHI, v.witness) != eval_pcl(PHI2, v.witness)
    alpha = Interaction.of({"p": "u", "q": "w"}, Algebra.FOUR)
    g = Configuration.of([alpha])
    assert (str(eval_pcl(PHI, g)), str(eval_pcl(PHI2, g))) == ("u", "0")
    assert v.witness == g


def test_oracle_kleene3_equivalent():
    v = oracle_equiv(PHI, PHI2, PQ, Algebra.KLEENE3)
    assert v.equivalent and v.samples_checked == 255


def test_oracle_guard():
    with pytest.raises(ResourceError, match="16"):
        oracle_equiv(PHI, PHI2, PQ, Algebra.FOUR)
    with pytest.raises(ResourceError):
        oracle_equiv(PHI, PHI, ["p", "q", "r"], Algebra.KLEENE3, max_config_size=26)
    with pytest.raises(ValueError):
        oracle_equiv(PHI, PHI, PQ, Algebra.FUZZY)


def test_fuzzy_oracle():
    v = oracle_equiv_fuzzy(PHI, PHI2, PQ, 2, 2)
    assert v.status is Verdict.NO_COUNTEREXAMPLE and v.samples_checked > 0
    v = oracle_equiv_fuzzy(parse_pcl("p"), parse_pcl("q"), PQ, 1, 2)
    assert v.refuted
    assert {str(x) for x in v.values} == {"0", "1"}
    assert oracle_equiv_fuzzy(PHI, PHI, PQ, 3, 1).status is Verdict.NO_COUNTEREXAMPLE


def test_cross_check_examples():
    rep = cross_check(PHI, PHI2, PQ, KL)
    assert rep.decided and rep.agreement
    assert rep.oracles["fuzzy"].status is Verdict.NO_COUNTEREXAMPLE
    rep = cross_check(PHI, PHI2, PQ, DM)
    assert not rep.decided and rep.agreement and rep.oracles["four"].refuted
    for mode in NormalizationMode:
        rep = cross_check(parse_pcl("p"), parse_pcl("p | p"), PQ, mode)
        assert rep.decided and rep.agreement


def test_known_completeness_gap_is_reported():
    # absorption across groups is not part of the normal form
    rep = cross_check(parse_pcl("p * (p + q)"), parse_pcl("p"), PQ, DM)
    assert not rep.decided
    assert [d.kind for d in rep.discrepancies] == ["completeness"]


@pytest.mark.parametrize("mode", list(NormalizationMode))
def test_soundness_and_monotonicity(mode):
    rng = random.Random(mode.value)
    for _ in range(40):
        ports = PQ[: rng.randint(1, 2)]
        z1, z2 = random_pair(rng, ports, 3)
        rep = cross_check(z1, z2, ports, mode)
        assert not rep.soundness_discrepancies, rep
        if mode is DM and rep.decided:
            assert decide_equiv(z1, z2, ports, KL) and decide_equiv(z1, z2, ports, BO)
