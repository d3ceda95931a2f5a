import itertools
import random

import pytest

import oracles
from conftest import opens_set
from pact.corpus import (
    CorpusSpec,
    all_actions,
    all_topologies,
    generate_corpus,
    group_by_name,
    random_instance,
    random_space,
)
from pact.errors import GuardError, ValidationError
from pact.gamma import check_premorphism
from pact.groups import cyclic, trivial_group
from pact.topology import discrete, sierpinski


@pytest.mark.parametrize("n", [1, 2, 3])
def test_labelled_topology_counts_match_brute_force(n):
    spaces = all_topologies(n, up_to_iso=False)
    assert len(spaces) == oracles.count_topologies(n)
    assert len({frozenset(opens_set(s)) for s in spaces}) == len(spaces)


def test_known_counts():
    assert [len(all_topologies(n, up_to_iso=False)) for n in (1, 2, 3, 4)] == [1, 4, 29, 355]
    assert [len(all_topologies(n)) for n in (1, 2, 3, 4)] == [1, 3, 9, 33]


def _is_iso(a, b):
    oa, ob = opens_set(a), opens_set(b)
    return any(
        {frozenset(dict(zip(a.points, perm))[p] for p in o) for o in oa} == ob
        for perm in itertools.permutations(b.points)
    )


@pytest.mark.parametrize("n", [2, 3])
def test_iso_classes_are_distinct_and_complete(n):
    reps = all_topologies(n)
    assert not any(_is_iso(a, b) for a, b in itertools.combinations(reps, 2))
    for s in all_topologies(n, up_to_iso=False):
        assert any(_is_iso(s, r) for r in reps)


def _brute_z2_count(space):
    """Z2 partial actions are exactly the involutive partial homeomorphisms."""
    pts, opens = list(space.points), opens_set(space)
    return sum(
        1 for f in oracles.partial_homeos(pts, opens) if oracles.compose(f, f) == {x: x for x in f}
    )


@pytest.mark.parametrize("space", [discrete(["0"]), discrete(["0", "1"]), sierpinski()], ids=str)
def test_exhaustive_action_counts(space):
    assert len(list(all_actions(trivial_group(), space))) == 1
    assert len(list(all_actions(cyclic(2), space))) == _brute_z2_count(space)


def test_three_point_z2_counts():
    for s in all_topologies(3, up_to_iso=False):
        assert len(list(all_actions(cyclic(2), s))) == _brute_z2_count(s)


def test_exhaustive_corpus_size():
    spec = CorpusSpec(max_points=2, groups=("trivial", "Z2"))
    expected = sum(
        1 + _brute_z2_count(s) for n in (1, 2) for s in all_topologies(n)
    )
    assert len(list(generate_corpus(spec))) == expected


def test_random_corpus_is_deterministic_and_valid():
    spec = CorpusSpec(mode="random", groups=("Z2", "Z3", "klein"), max_points=4, count=80, seed=4)
    first = [(i.name, i.action.theta_dict()) for i in generate_corpus(spec)]
    again = [(i.name, i.action.theta_dict()) for i in generate_corpus(spec)]
    assert first == again
    for inst in generate_corpus(spec):
        assert check_premorphism(inst.action).passed
        assert 1 <= len(inst.action.space) <= 4


def test_random_corpus_has_partial_instances():
    spec = CorpusSpec(mode="random", groups=("Z2", "Z4"), max_points=4, count=100, seed=0)
    sizes = {len(i.action.space) for i in generate_corpus(spec)}
    partial = sum(not i.action.is_global() for i in generate_corpus(spec))
    assert sizes >= {2, 3, 4} and partial > 20


def test_random_space_is_a_topology():
    rng = random.Random(0)
    for _ in range(50):
        s = random_space(rng, rng.randint(1, 5))
        assert oracles.is_topology(s.points, opens_set(s))


def test_random_instance_respects_bounds():
    rng = random.Random(2)
    for _ in range(30):
        a = random_instance(rng, cyclic(3), 2, 3)
        assert 2 <= len(a.space) <= 3


def test_group_names():
    assert [len(group_by_name(n)) for n in ("trivial", "Z5", "S3", "klein")] == [1, 5, 6, 4]
    with pytest.raises(ValidationError):
        group_by_name("Q8")


def test_spec_guards_and_validation():
    with pytest.raises(GuardError):
        CorpusSpec(max_points=5)
    with pytest.raises(GuardError):
        CorpusSpec(mode="random", max_points=9)
    with pytest.raises(ValidationError):
        CorpusSpec(min_points=3, max_points=2)
    with pytest.raises(ValidationError):
        CorpusSpec.from_json({"mode": "exhaustive", "colour": "red"})


def test_spec_json_round_trip():
    spec = CorpusSpec(mode="random", groups=("Z2",), count=5, seed=9)
    assert CorpusSpec.from_json(spec.to_json()) == spec
