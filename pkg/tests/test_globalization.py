import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import opens_set, raw
from pact.corpus import CorpusSpec, all_actions, all_topologies, generate_corpus
from pact.errors import ValidationError
from pact.gamma import PartialAction, PartialHomeo, global_action, make_action, trivial_action
from pact.globalization import (
    enveloping_relation,
    globalize,
    open_restriction_globalize,
    verify_globalization,
)
from pact.groups import cyclic, trivial_group
from pact.topology import discrete, is_homeomorphism, separation, sierpinski

Z2 = cyclic(2)
D2 = discrete(["0", "1"])


def brute_blocks(a):
    G = a.group
    theta = {g: a(g).as_dict() for g in G.elements}
    return oracles.enveloping_blocks(list(G.elements), G.mul, G.inv, theta, list(a.space.points))


def library_blocks(env):
    return {frozenset(b) for b in env.classes}


def test_z2_partial_identity_has_three_classes():
    a = make_action(Z2, D2, {"a": {"0": "0"}})
    env = globalize(a)
    expected = {
        frozenset({("e", "0"), ("a", "0")}),
        frozenset({("e", "1")}),
        frozenset({("a", "1")}),
    }
    assert brute_blocks(a) == expected == library_blocks(env)
    assert len(env.space) == 3 and separation(env.space, "T2")
    mu_a = env.mu("a").as_dict()
    assert mu_a[env.cls("e", "1")] == env.cls("a", "1")
    assert mu_a[env.cls("e", "0")] == env.cls("e", "0")


def test_class_labels_use_least_member():
    env = globalize(make_action(Z2, D2, {"a": {"0": "0"}}))
    assert env.cls("e", "0") == env.cls("a", "0") == "[a,0]"
    assert env.cls("e", "1") == "[e,1]"


def test_sierpinski_classes_and_quotient_opens():
    s = sierpinski()
    a = make_action(Z2, s, {"a": {"1": "1"}})
    env = globalize(a)
    expected = {
        frozenset({("e", "0")}),
        frozenset({("a", "0")}),
        frozenset({("e", "1"), ("a", "1")}),
    }
    assert library_blocks(env) == brute_blocks(a) == expected
    gx = opens_set(env.gx)
    blocks = {env.cls(*min(b)): frozenset(f"({g},{x})" for g, x in b) for b in expected}
    assert opens_set(env.space) == oracles.quotient_opens(gx, blocks)
    assert verify_globalization(env).passed


def test_trivial_group_gives_copy_of_space():
    s = sierpinski()
    env = globalize(trivial_action(trivial_group(), s))
    assert len(env.space) == len(s) and is_homeomorphism(env.iota)


def test_global_action_classes_are_graphs():
    a = global_action(Z2, D2, {"a": {"0": "1", "1": "0"}})
    env = globalize(a)
    assert len(env.space) == len(D2)
    for g in Z2.elements:
        for x in D2.points:
            assert env.cls(g, x) == env.cls("e", a.apply(g, x))


def test_exhaustive_corpus_against_brute_partition():
    for inst in generate_corpus(CorpusSpec(groups=("trivial", "Z2", "Z3"), max_points=3)):
        env = globalize(inst.action)
        assert library_blocks(env) == brute_blocks(inst.action), inst.name
        report = verify_globalization(env)
        assert report.passed, (inst.name, report.failures())


def test_enveloping_relation_is_sorted_and_deterministic():
    a = make_action(Z2, D2, {"a": {"0": "0"}})
    assert enveloping_relation(a) == enveloping_relation(a) == sorted(enveloping_relation(a))


def test_wrong_mu_is_caught():
    env = globalize(make_action(Z2, D2, {"a": {"0": "0"}}))
    X = env.space
    # a mu that forgets the swap of [e,1] and [a,1]
    ident = PartialHomeo(X, tuple((i, i) for i in range(len(X))))
    fake_mu = raw(PartialAction, group=Z2, space=X, theta=(ident, ident))
    fake = dataclasses.replace(env, mu=fake_mu)
    report = verify_globalization(fake)
    assert not report.passed
    bad = report["mu(g,[h,x]) = [gh,x]"]
    assert not bad.ok and bad.witness["g"] == "a"


def test_wrong_mu_breaking_laws_is_caught():
    env = globalize(make_action(Z2, D2, {"a": {"0": "0"}}))
    X = env.space
    ident = PartialHomeo(X, tuple((i, i) for i in range(len(X))))
    # not an involution: a 3-cycle on the classes
    cyc = PartialHomeo(X, tuple(sorted((i, (i + 1) % 3) for i in range(3))))
    fake = dataclasses.replace(env, mu=raw(PartialAction, group=Z2, space=X, theta=(ident, cyc)))
    report = verify_globalization(fake)
    clause = report["mu satisfies the action laws"]
    assert not clause.ok and clause.witness is not None


# -- open restrictions ------------------------------------------------------------------


def test_open_restriction_whole_space():
    a = global_action(Z2, D2, {"a": {"0": "1", "1": "0"}})
    env, j, report = open_restriction_globalize(a, D2.points)
    assert report.passed and is_homeomorphism(j)


def test_open_restriction_swap_point():
    a = global_action(Z2, D2, {"a": {"0": "1", "1": "0"}})
    env, j, report = open_restriction_globalize(a, ["0"])
    assert len(env.space) == 2
    assert sorted(j.as_dict().values()) == ["0", "1"]
    assert report.passed


def test_open_restriction_z4():
    D4 = discrete(["0", "1", "2", "3"])
    G = cyclic(4)
    a = global_action(G, D4, {g: {str(x): str((x + k) % 4) for x in range(4)} for k, g in enumerate(G.elements)})
    env, j, report = open_restriction_globalize(a, ["0", "1"])
    assert sorted(j.as_dict().values()) == ["0", "1", "2", "3"]
    assert j.is_injective() and report.passed


def test_open_restriction_rejects_non_open():
    a = global_action(Z2, sierpinski(), {"a": {"0": "0", "1": "1"}})
    with pytest.raises(ValidationError, match="not open"):
        open_restriction_globalize(a, ["0"])


@given(st.sampled_from(all_topologies(3, up_to_iso=False)), st.data())
def test_open_restrictions_of_global_actions(s, data):
    globals_ = [a for a in all_actions(Z2, s) if a.is_global()]
    a = data.draw(st.sampled_from(globals_))
    opens = [o for o in s.canonical_opens() if o]
    U = data.draw(st.sampled_from(opens))
    _, _, report = open_restriction_globalize(a, U)
    assert report.passed, report.failures()
