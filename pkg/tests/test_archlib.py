import itertools
import random

import pytest

from fpcl.algebra import Algebra, leq
from fpcl.archlib import (
    ArchStyle,
    StyleName,
    master_slave_formula,
    master_slave_link,
    p2p_component_summands,
    p2p_formula,
    p2p_link,
    p2p_summands,
    uncertainty,
)
from fpcl.batch import ConfigurationSpace
from fpcl.semantics import Configuration, Interaction, enumerate_interactions, eval_pcl
from fpcl.syntax import Coalesce, Pil, Plus, parse_pil, print_formula

B = Algebra.BOOL2


def crisp(ports, on):
    return Interaction.of({p: "1" if p in on else "0" for p in ports}, B)


def test_p2p_link_n2():
    assert p2p_link(1, 2, 2) == parse_pil("r1 & s2 & !s1 & !r2")
    assert print_formula(p2p_link(2, 1, 3)) == "r2 & s1 & !s2 & !r1 & !r3 & !s3"


def test_p2p_counts():
    assert len(p2p_summands(2)) == 3
    assert all(len(p2p_component_summands(j, 4)) == 7 for j in range(1, 5))
    assert len(p2p_summands(4)) == 15
    z, ports = p2p_formula(4)
    assert ports == ["r1", "r2", "r3", "r4", "s1", "s2", "s3", "s4"]


def test_p2p_errors():
    with pytest.raises(ValueError):
        p2p_formula(1)
    with pytest.raises(ValueError):
        p2p_link(1, 1, 3)


def test_p2p_n2_bool2():
    z, ports = p2p_formula(2)
    a12, a21 = crisp(ports, {"r1", "s2"}), crisp(ports, {"r2", "s1"})
    for g in ([a12], [a21], [a12, a21]):
        assert str(eval_pcl(z, Configuration.of(g))) == "1"
    assert str(eval_pcl(z, Configuration.of([crisp(ports, {"r1", "s1"})]))) == "0"


def _phi(s, m, s_other, m_other):
    return parse_pil(f"{s} & {m} & !{s_other} & !{m_other}")


def test_master_slave_2x2_structure():
    z, ports = master_slave_formula(2, 2)
    expected = Coalesce(
        Plus(Pil(_phi("s1", "m1", "s2", "m2")), Pil(_phi("s2", "m1", "s1", "m2"))),
        Plus(Pil(_phi("s1", "m2", "s2", "m1")), Pil(_phi("s2", "m2", "s1", "m1"))),
    )
    assert z == expected
    assert ports == ["m1", "m2", "s1", "s2"]


def test_master_slave_small():
    assert master_slave_formula(1, 1)[0] == Pil(parse_pil("s1 & m1"))
    z, _ = master_slave_formula(1, 2)
    assert z == Plus(Pil(master_slave_link(1, 1, 1, 2)), Pil(master_slave_link(2, 1, 1, 2)))
    with pytest.raises(ValueError):
        master_slave_formula(0, 2)


def _valid_pairing(g, ports):
    on = {frozenset(p for p in ports if str(a[p]) == "1") for a in g}
    return any(
        on == {frozenset({a, "m1"}), frozenset({b, "m2"})}
        for a, b in itertools.product(("s1", "s2"), repeat=2)
    )


def test_master_slave_2x2_bool2_exhaustive():
    z, ports = master_slave_formula(2, 2)
    sp = ConfigurationSpace(enumerate_interactions(ports, B))
    assert len(sp) == 2**15 - 1
    values = sp.evaluate(z)
    for i, g in enumerate(sp.configurations()):
        assert (sp.decode(values[i]) == B.one) == _valid_pairing(g, ports)


def test_uncertainty_examples():
    z, ports = master_slave_formula(2, 2)
    valid = Configuration.of([crisp(ports, {"s1", "m1"}), crisp(ports, {"s2", "m2"})])
    assert str(uncertainty(z, valid)) == "1"
    slaves_only = Configuration.of([crisp(ports, {"s1", "s2"})])
    assert str(uncertainty(z, slaves_only)) == "0"


def test_uncertainty_bounds_and_monotone():
    z, ports = master_slave_formula(2, 2)
    rng = random.Random(5)
    universe = enumerate_interactions(ports, Algebra.FUZZY, grid=2)
    for _ in range(30):
        g1 = Configuration.of(rng.sample(universe, rng.randint(1, 2)))
        g2 = Configuration.of(rng.sample(universe, 1))
        u1 = uncertainty(z, g1)
        assert leq(eval_pcl(z, g1), u1)
        assert leq(u1, uncertainty(z, Configuration.of(g1.interactions | g2.interactions)))


def test_style_descriptor():
    style = ArchStyle(StyleName.MASTER_SLAVE, (2, 2))
    assert style.formula() == master_slave_formula(2, 2)[0]
    assert ArchStyle(StyleName.P2P, (3,)).ports() == ["r1", "r2", "r3", "s1", "s2", "s3"]
    with pytest.raises(ValueError):
        ArchStyle(StyleName.P2P, (1,))
