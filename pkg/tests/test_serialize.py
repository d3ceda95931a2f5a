import json

import pytest
from hypothesis import given

from conftest import spaces
from pact.corpus import CorpusSpec, generate_corpus
from pact.gamma import make_action
from pact.groups import cyclic
from pact.serialize import (
    Aux,
    Instance,
    ParseError,
    action_from_json,
    action_to_json,
    aux_from_json,
    aux_to_json,
    dumps,
    group_from_json,
    group_to_json,
    instance_from_json,
    instance_to_json,
    parse_instance,
    space_from_json,
    space_to_json,
)
from pact.topology import discrete, sierpinski

CORPUS = [
    i.action
    for spec in (
        CorpusSpec(max_points=2, groups=("trivial", "Z2", "Z3"), up_to_iso=False),
        CorpusSpec(mode="random", groups=("Z2", "klein", "S3"), max_points=4, count=60, seed=11),
    )
    for i in generate_corpus(spec)
]


def test_action_round_trip_over_corpus():
    for a in CORPUS:
        obj = action_to_json(a)
        again = action_from_json(json.loads(dumps(obj)))
        assert again.theta_dict() == a.theta_dict()
        assert dumps(action_to_json(again)) == dumps(obj)


@given(spaces())
def test_space_round_trip(s):
    assert space_from_json(space_to_json(s)) == s


def test_generators_and_opens_agree():
    a = space_from_json({"points": ["0", "1"], "generators": [["1"]]})
    b = space_from_json({"points": ["0", "1"], "opens": [[], ["1"], ["0", "1"]]})
    assert a == b == sierpinski()


@pytest.mark.parametrize(
    "literal, order",
    [({"cyclic": 1}, 1), ({"cyclic": 4}, 4), ({"symmetric": 3}, 6), ({"klein": True}, 4), ({"trivial": True}, 1)],
)
def test_named_groups(literal, order):
    G = group_from_json(literal)
    assert len(G) == order
    assert group_from_json(group_to_json(G)).table == G.table


def test_minimal_instance():
    inst = instance_from_json(
        {"group": {"cyclic": 1}, "space": {"points": ["x"], "opens": [[], ["x"]]}, "theta": {}}
    )
    assert inst.action.is_global() and len(inst.space) == 1


def test_theta_of_identity_may_be_omitted():
    a = action_from_json(
        {"group": {"cyclic": 2}, "space": {"points": ["0", "1"], "generators": [["0"], ["1"]]},
         "theta": {"a": {"dom": ["0"], "map": {"0": "0"}}}}
    )
    assert a == make_action(cyclic(2), discrete(["0", "1"]), {"a": {"0": "0"}})


def test_aux_round_trip():
    aux = Aux(x=discrete(["p", "q"]), factors=(sierpinski(),), slot=1, basepoints=("1",))
    assert aux_from_json(aux_to_json(aux)) == aux
    inst = Instance(make_action(cyclic(2), discrete(["0"]), {"a": {}}), aux)
    assert instance_to_json(instance_from_json(instance_to_json(inst))) == instance_to_json(inst)


def test_dumps_is_canonical():
    text = dumps({"b": 1, "a": ["→"]})
    assert text.index('"a"') < text.index('"b"') and "→" in text


# -- errors carry a location --------------------------------------------------------------

SIERP = {"points": ["0", "1"], "generators": [["1"]]}


@pytest.mark.parametrize(
    "obj, where",
    [
        ({"group": {"cyclic": 2}, "space": SIERP, "theta": {"a": {"map": {"0": "0"}}}}, "$.theta"),
        ({"group": {"cyclic": 2}, "space": SIERP, "theta": {"a": {"dom": ["1"], "map": {"0": "0"}}}}, "$.theta.a.dom"),
        ({"group": {"cyclic": 2}, "space": {"points": ["0"], "opens": [["1"]]}, "theta": {}}, "$.space"),
        ({"group": {"cyclic": "2"}, "space": SIERP, "theta": {}}, "$.group.cyclic"),
        ({"group": {"elements": ["e", "a"], "table": [["e", "a"], ["a", "a"]]}, "space": SIERP, "theta": {}}, "$.group"),
        ({"group": {"cyclic": 2}, "space": SIERP, "theta": {"b": {"map": {}}}}, "$.theta"),
        ({"group": {"cyclic": 2}, "space": SIERP, "theta": {}, "extra": 1}, "unknown key 'extra'"),
        ({"group": {"cyclic": 2}, "space": {"points": [0]}, "theta": {}}, "$.space.points[0]"),
    ],
)
def test_errors_name_a_location(obj, where):
    with pytest.raises(ParseError) as info:
        instance_from_json(obj)
    assert where in str(info.value)


def test_non_open_domain_message():
    with pytest.raises(ParseError, match=r"\$\.theta: theta\(a\): domain \['0'\] is not open"):
        action_from_json({"group": {"cyclic": 2}, "space": SIERP, "theta": {"a": {"map": {"0": "0"}}}})


def test_json_syntax_error_has_line_and_column(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "group": {"cyclic": 2},\n  "space": ,\n}')
    with pytest.raises(ParseError, match=r"broken\.json:3:12"):
        parse_instance(p)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="missing.json"):
        parse_instance(tmp_path / "missing.json")


def test_parse_errors_mention_the_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"group": {"cyclic": 2}, "space": SIERP}))
    with pytest.raises(ParseError, match=r"bad\.json: \$: action literal needs 'theta'"):
        parse_instance(p)
