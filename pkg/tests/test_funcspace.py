import dataclasses
import itertools

import pytest

import oracles
from conftest import opens_set, raw
from pact.corpus import all_actions, all_topologies
from pact.funcspace import (
    THEOREMS,
    build_bundle,
    check_bundle,
    check_clopen_corollary,
    check_continuity_equiv,
    check_nice_equiv,
    check_t1_t2_equiv,
    j_embed,
    xi_embed,
)
from pact.gamma import PartialHomeo, global_action, make_action, trivial_action
from pact.groups import cyclic, trivial_group
from pact.topology import discrete, is_homeomorphism, separation, sierpinski

Z2 = cyclic(2)
D2 = discrete(["0", "1"])
XD = discrete(["p", "q"])
XS = sierpinski("p", "q")
PT = discrete(["p"])


@pytest.fixture(scope="module")
def z2_fixed():
    """Z2 on discrete {0,1} with theta(a) = id on {0}."""
    return make_action(Z2, D2, {"a": {"0": "0"}})


@pytest.fixture(scope="module")
def z2_sierpinski():
    return make_action(Z2, sierpinski(), {"a": {"1": "1"}})


def _corrupt(b, g, pairs):
    theta = list(b.ahat.theta)
    theta[b.a.group.index[g]] = raw(PartialHomeo, ambient=b.cxy, pairs=tuple(sorted(pairs)))
    return dataclasses.replace(b, ahat=dataclasses.replace(b.ahat, theta=tuple(theta)))


# -- bundle ---------------------------------------------------------------------------


def test_singleton_parameter_space_mirrors_y(z2_fixed):
    b = build_bundle(PT, z2_fixed)
    ev = b.evs["p"]
    assert is_homeomorphism(ev)
    for g in Z2.elements:
        mapped = {ev(f): ev(h) for f, h in b.ahat(g).as_dict().items()}
        assert mapped == z2_fixed(g).as_dict()


def test_domain_of_induced_map_is_constant_zero(z2_fixed):
    b = build_bundle(XD, z2_fixed)
    assert b.ahat("a").domain_labels() == ["f{p→0,q→0}"]
    # brute force: continuous maps with image inside {0}
    maps = [f for f in oracles.functions(["p", "q"], ["0", "1"]) if set(f.values()) <= {"0"}]
    assert len(maps) == 1


def test_trivial_group_on_sierpinski_maps():
    b = build_bundle(XS, trivial_action(trivial_group(), sierpinski()))
    assert len(b.cxy) == 3 and b.ahat.is_global()
    assert all(f == h for f, h in b.ahat("e").as_dict().items())


@pytest.mark.parametrize("x", [PT, XD, XS], ids=["pt", "d2", "s"])
def test_bundle_invariants_over_small_corpus(x):
    for y in all_topologies(2, up_to_iso=False):
        for a in all_actions(Z2, y):
            b = build_bundle(x, a)
            assert check_bundle(b).passed
            for g, t in zip(Z2.elements, a.theta):
                expected = {
                    name for name, f in zip(b.cxy.points, b.fs.maps) if all(v in t.fwd for v in f)
                }
                assert set(b.ahat(g).domain_labels()) == expected


# -- continuity and niceness ------------------------------------------------------------


def test_continuity_equivalence_and_factorization(z2_fixed):
    r = check_continuity_equiv(build_bundle(XD, z2_fixed))
    assert r.passed
    assert r["theta(g,y) = ev_p(theta_hat(g, c_y))"].ok


def test_corrupted_theta_hat_breaks_continuity():
    a = global_action(Z2, sierpinski(), {"a": {"0": "0", "1": "1"}})
    b = build_bundle(XD, a)
    names = b.cxy.points
    swap = {"f{p→0,q→0}": "f{p→1,q→1}", "f{p→1,q→1}": "f{p→0,q→0}"}
    pairs = [(k, names.index(swap.get(n, n))) for k, n in enumerate(names)]
    r = check_continuity_equiv(_corrupt(b, "a", pairs))
    clause = r["theta continuous <=> theta_hat continuous"]
    assert not clause.ok and clause.witness["g"] == "a"


def test_nice_equivalence(z2_fixed, z2_sierpinski):
    for a in (z2_fixed, z2_sierpinski):
        for x in (PT, XD, XS):
            assert check_nice_equiv(build_bundle(x, a)).passed


def test_corrupted_domain_breaks_niceness():
    a = global_action(Z2, sierpinski(), {"a": {"0": "0", "1": "1"}})
    b = build_bundle(XD, a)
    k = b.cxy.index["f{p→0,q→0}"]
    r = check_nice_equiv(_corrupt(b, "a", [(k, k)]))
    assert not r["theta nice <=> theta_hat nice"].ok
    assert not r["G*Y open <=> G*C(X,Y) open"].ok


# -- J, separation, clopen, xi ---------------------------------------------------------------


def test_j_on_fixed_point_example(z2_fixed):
    b = build_bundle(XD, z2_fixed)
    J, r = j_embed(b)
    assert r.passed and r["Z closed (Y Hausdorff)"].ok
    assert len(b.env_y.space) == 3
    constants = {b.c.assignment[y] for y in range(len(D2))}
    image_classes = {J.assignment[w] for w in range(3)}
    expected = {b.env_c.class_index(g, k) for g in range(2) for k in constants}
    assert image_classes == expected and len(image_classes) == 3


def test_j_trivial_group_is_bijective_onto_constants():
    a = trivial_action(trivial_group(), sierpinski())
    J, r = j_embed(build_bundle(XS, a))
    assert r.passed and J.is_injective()


def test_j_closedness_not_applicable_off_hausdorff(z2_sierpinski):
    _, r = j_embed(build_bundle(XD, z2_sierpinski))
    assert r.passed
    assert r["Z closed (Y Hausdorff)"].status == "n/a"


def _brute_separation(env, axiom):
    return oracles.separated(list(env.space.points), opens_set(env.space), axiom)


def test_separation_examples(z2_fixed, z2_sierpinski):
    b = build_bundle(XD, z2_fixed)
    assert check_t1_t2_equiv(b).passed
    assert _brute_separation(b.env_y, "T1") and _brute_separation(b.env_c, "T1")
    b = build_bundle(XD, z2_sierpinski)
    assert check_t1_t2_equiv(b).passed
    assert not _brute_separation(b.env_y, "T1") and not _brute_separation(b.env_c, "T1")


def test_global_action_on_discrete_is_hausdorff_both_sides():
    a = global_action(Z2, D2, {"a": {"0": "1", "1": "0"}})
    b = build_bundle(XD, a)
    r = check_clopen_corollary(b)
    assert r.passed and r["Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2"].status == "pass"
    assert _brute_separation(b.env_y, "T2") and _brute_separation(b.env_c, "T2")


def test_clopen_examples(z2_fixed, z2_sierpinski):
    b = build_bundle(XD, z2_fixed)
    r = check_clopen_corollary(b)
    assert r["Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2"].status == "pass"
    assert _brute_separation(b.env_y, "T2") and _brute_separation(b.env_c, "T2")
    b = build_bundle(XD, z2_sierpinski)
    r = check_clopen_corollary(b)
    assert r.passed and r["Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2"].status == "n/a"
    assert not _brute_separation(b.env_y, "T2") and not _brute_separation(b.env_c, "T2")
    opens = opens_set(sierpinski())
    assert frozenset({"1"}) in opens and frozenset({"0"}) not in opens  # Y_a = {1} is not closed


def test_trivial_group_on_sierpinski_separates_the_clauses():
    # every Y_g = Y is clopen, yet Y_G = Y is not Hausdorff
    b = build_bundle(PT, trivial_action(trivial_group(), sierpinski()))
    r = check_clopen_corollary(b)
    assert r.passed and r["Y_g clopen <=> Y_G T2 <=> C(X,Y)_G T2"].status == "n/a"
    assert not _brute_separation(b.env_y, "T2")


def test_xi_trivial_group_image_is_maps_into_iota():
    a = trivial_action(trivial_group(), sierpinski())
    b = build_bundle(XD, a)
    xi, r = xi_embed(b)
    assert r.passed
    image = set(b.c_yg.space.sorted_labels(xi.image(b.env_c.space.full)))
    iota = {b.env_y.space.points[k] for k in b.env_y.iota.assignment}
    into_iota = {
        name for name, f in zip(b.c_yg.space.points, b.c_yg.maps)
        if {b.env_y.space.points[v] for v in f} <= iota
    }
    assert image == into_iota


@pytest.mark.parametrize("x", [PT, XD, XS], ids=["pt", "d2", "s"])
def test_xi_battery(x, z2_fixed, z2_sierpinski):
    for a in (z2_fixed, z2_sierpinski):
        xi, r = xi_embed(build_bundle(x, a))
        assert r.passed, r.failures()


def test_every_theorem_on_every_two_point_instance():
    for y in all_topologies(2, up_to_iso=False):
        for a in itertools.chain(all_actions(Z2, y), all_actions(trivial_group(), y)):
            for x in (PT, XD, XS):
                b = build_bundle(x, a)
                for name, check in THEOREMS.items():
                    assert check(b).passed, (name, a.theta_dict())


def test_separation_brute_force_agrees_on_globalizations(z2_sierpinski):
    b = build_bundle(XS, z2_sierpinski)
    for env in (b.env_y, b.env_c):
        for ax in ("T0", "T1", "T2"):
            assert separation(env.space, ax) == _brute_separation(env, ax)
