import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpcl.algebra import Algebra, elements
from fpcl.semantics import (
    Configuration,
    ConfigurationError,
    EvaluationError,
    Interaction,
    configuration_from_json,
    configuration_to_json,
    enumerate_configurations,
    enumerate_covers,
    enumerate_interactions,
    eval_closure,
    eval_pcl,
    eval_pil,
    eval_pil_on_config,
)
from fpcl.syntax import Coalesce, Pil, TRUE, parse_pcl, parse_pil

from fuzz import random_pcl

K3, F4, FZ, B = Algebra.KLEENE3, Algebra.FOUR, Algebra.FUZZY, Algebra.BOOL2


def ia(alg, **weights):
    return Interaction.of(weights, alg)


def test_eval_pil_examples():
    a = ia(F4, p="u", q="w")
    assert str(eval_pil(parse_pil("p & !p"), a)) == "u"
    assert str(eval_pil(parse_pil("p | q"), a)) == "1"
    assert str(eval_pil(parse_pil("true"), a)) == "1"
    f = ia(FZ, p="0.3", q="1")
    assert eval_pil(parse_pil("!p"), f) == FZ.element("7/10")


def test_unknown_port():
    with pytest.raises(EvaluationError, match="'r'"):
        eval_pil(parse_pil("r"), ia(B, p="1"))


def test_pil_on_config_is_meet():
    g = Configuration.of([ia(FZ, p="0.3"), ia(FZ, p="0.8")])
    assert eval_pil_on_config(parse_pil("p"), g) == FZ.element("0.3")


def test_interaction_validation():
    with pytest.raises(ConfigurationError):
        ia(B, p="0", q="0")
    with pytest.raises(ConfigurationError):
        Interaction(("p", "q"), (K3.element("u"), F4.element("u")))
    with pytest.raises(ConfigurationError):
        Configuration.of([])
    with pytest.raises(ConfigurationError):
        Configuration.of([ia(B, p="1"), ia(B, q="1")])


def test_interaction_port_order_normalized():
    assert ia(B, q="1", p="0") == ia(B, p="0", q="1")


@pytest.mark.parametrize("n,count", [(1, 1), (2, 7), (3, 25)])
def test_cover_counts(n, count):
    g = Configuration.of(enumerate_interactions(["p", "q"], K3)[:n])
    covers = enumerate_covers(g)
    assert len(covers) == count == 3**n - 2
    assert all(a.interactions | b.interactions == g.interactions for a, b in covers)
    assert len(set(covers)) == len(covers)


@pytest.mark.parametrize(
    "ports,alg,n", [(["p"], B, 1), (["p", "q"], B, 3), (["p", "q"], K3, 8), (["p"], F4, 3)]
)
def test_interaction_counts(ports, alg, n):
    assert len(enumerate_interactions(ports, alg)) == n


@pytest.mark.parametrize("ports,alg,n", [(["p"], B, 1), (["p", "q"], B, 7), (["p", "q"], K3, 255)])
def test_configuration_counts(ports, alg, n):
    assert sum(1 for _ in enumerate_configurations(ports, alg)) == n


def test_bounded_enumeration():
    sizes = [len(g) for g in enumerate_configurations(["p", "q"], K3, max_size=2)]
    assert len(sizes) == 8 + 28 and sizes == sorted(sizes)


def test_fuzzy_needs_grid():
    with pytest.raises(ValueError):
        enumerate_interactions(["p"], FZ)
    assert len(enumerate_interactions(["p"], FZ, grid=4)) == 4


def test_or_is_not_plus():
    # p | q holds per interaction, p + q needs one port on every interaction
    g = Configuration.of([ia(B, p="1", q="0"), ia(B, p="0", q="1")])
    assert str(eval_pcl(parse_pcl("p | q"), g)) == "1"
    assert str(eval_pcl(parse_pcl("p + q"), g)) == "0"
    assert str(eval_pcl(parse_pcl("p # q"), g)) == "1"


def test_coalesce_needs_nonempty_parts():
    g = Configuration.of([ia(B, p="1", q="0")])
    assert str(eval_pcl(parse_pcl("p # q"), g)) == "0"
    assert str(eval_pcl(parse_pcl("p # true"), g)) == "1"


def _subsets(g):
    m = g.members()
    for r in range(1, len(m) + 1):
        for c in itertools.combinations(m, r):
            yield Configuration.of(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_closure_is_join_over_subsets(seed):
    rng = random.Random(seed)
    z = random_pcl(rng, ["p", "q"], 2)
    universe = enumerate_interactions(["p", "q"], K3)
    g = Configuration.of(rng.sample(universe, rng.randint(1, 3)))
    direct = eval_closure(z, g)
    assert direct == eval_pcl(Coalesce(z, Pil(TRUE)), g)
    best = None
    for sub in _subsets(g):
        v = eval_pcl(z, sub)
        best = v if best is None else best | v
    assert direct == best


def test_json_round_trip():
    text = '{"algebra":"fuzzy","ports":["p","q"],"interactions":[{"p":"0.3","q":"1"},{"p":"1","q":"0"}]}'
    g = configuration_from_json(text)
    assert len(g) == 2 and g.algebra is FZ
    again = configuration_from_json(json.dumps(configuration_to_json(g)))
    assert again == g


@pytest.mark.parametrize(
    "data,msg",
    [
        ('{"algebra":"four","ports":["p"],"interactions":[]}', "nonempty"),
        ('{"algebra":"four","ports":["p"],"interactions":[{"p":"0"}]}', "nonzero"),
        ('{"algebra":"four","ports":["p"],"interactions":[{"p":"1","z":"1"}]}', "undeclared"),
        ('{"algebra":"kleene3","ports":["p"],"interactions":[{"p":"w"}]}', "not an element"),
        ('{"algebra":"fuzzy","ports":["p"],"interactions":[{"p":"1.2"}]}', "outside"),
        ('{"algebra":"bool2","ports":["p","q"],"interactions":[{"p":"1"}]}', "does not weight"),
        ('{"algebra":"five","ports":["p"],"interactions":[{"p":"1"}]}', "unknown algebra"),
        ("{not json", "malformed"),
    ],
)
def test_json_rejects(data, msg):
    with pytest.raises(ConfigurationError, match=msg):
        configuration_from_json(data)
