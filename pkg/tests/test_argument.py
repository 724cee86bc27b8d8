import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argstr.argument import (
    UNDEFINED,
    AntecedentMismatch,
    InconsistentSubarguments,
    NotInKnowledgeBase,
    enumerate_arguments,
    is_isomorphic,
    make_inference,
    make_premise,
    sub,
    top_rule,
    walk,
)
from argstr.dsl import build_argument, load_theory
from argstr.model import Multiset, Theory, defeasible, lit, strict
from argstr.principles import GeneratorConfig, anonymity_instance, generate_theory
from oracles import as_tuple, brute_arguments, iso, iso_classes, t_basis


def test_premise_leaves(fig2, fig2_args):
    a1, a3 = fig2_args["A1"], fig2_args["A3"]
    assert a1.axioms == Multiset([lit("a")]) and not a1.def_basis
    assert a3.ord_prem == Multiset([lit("p")]) and not a3.axioms
    assert top_rule(a1) is UNDEFINED and not top_rule(a1)
    assert sub(a1) == {a1}
    with pytest.raises(NotInKnowledgeBase):
        make_premise(fig2, lit("zzz"))


def test_fig2_accessors(fig2, fig2_args):
    a4 = fig2_args["A4"]
    r = fig2.rules_by_id
    assert a4.basis == Multiset([lit("a"), r["d1"], lit("p"), r["s1"]])
    assert a4.prem == Multiset([lit("a"), lit("p")])
    assert a4.rules == Multiset([r["d1"], r["s1"]])
    assert fig2_args["A1"].is_strict and not fig2_args["A2"].is_strict
    assert sub(a4) == set(fig2_args.values())


def test_rules_and_premises_match_tree_walk(fig2_args):
    for a in fig2_args.values():
        walked = sorted(str(x) for x in t_basis(as_tuple(a)))
        assert walked == sorted(str(x) for x in a.basis)


def test_antecedent_mismatch(fig2, fig2_args):
    d1 = fig2.rules_by_id["d1"]
    with pytest.raises(AntecedentMismatch):
        make_inference(fig2, d1, [fig2_args["A3"]])
    with pytest.raises(AntecedentMismatch):
        make_inference(fig2, d1, [])


def test_inconsistent_chain_rejected():
    t = Theory.build(
        rules=[defeasible("r1", ["p"], "q"), defeasible("r2", ["q"], "~p")],
        ordinary={"p": 0.5},
        rule_weights={"r1": 0.5, "r2": 0.5},
    )
    q = make_inference(t, t.rules_by_id["r1"], [make_premise(t, lit("p"))])
    with pytest.raises(InconsistentSubarguments):
        make_inference(t, t.rules_by_id["r2"], [q])


def test_enumerate_small():
    t = Theory.build(rules=[defeasible("r", ["p"], "q")], ordinary={"p": 0.5}, rule_weights={"r": 0.5})
    assert sorted(a.tree for a in enumerate_arguments(t, 1)) == ["pr_p", "r(pr_p)"]
    assert len(enumerate_arguments(t, 0)) == 1


def test_enumerate_fig2(fig2, fig2_args):
    assert set(enumerate_arguments(fig2, 2)) == set(fig2_args.values())
    assert {as_tuple(a) for a in enumerate_arguments(fig2, 2)} == brute_arguments(fig2, 2)


def test_enumeration_sorted_and_deterministic(fig2):
    a, b = enumerate_arguments(fig2, 3), enumerate_arguments(fig2, 3)
    assert a == b
    assert [x.signature for x in a] == sorted(x.signature for x in a)


def test_budget_bounds_strict_cycles():
    t = Theory.build(rules=[strict("s1", ["a"], "b"), strict("s2", ["b"], "a")], axioms=["a"])
    trees = [a.tree for a in enumerate_arguments(t, 4)]
    assert "s2(s1(ax_a))" in trees and "s2(s1(s2(s1(ax_a))))" in trees
    assert all(a.rule_count <= 4 for a in enumerate_arguments(t, 4))


def test_isomorphism_examples(fig2_args):
    a2, a3 = fig2_args["A2"], fig2_args["A3"]
    assert is_isomorphic(a2, a2)
    assert not is_isomorphic(a2, a3)
    x = make_premise(Theory.build(ordinary={"x": 0.5}), lit("x"))
    y = make_premise(Theory.build(ordinary={"y": 0.5}), lit("y"))
    assert is_isomorphic(x, y)


def test_walk_visits_every_node(fig2_args):
    assert [a.tree for a in walk(fig2_args["A4"])][0] == "s1(d1(a1), p1)"
    assert len(list(walk(fig2_args["A4"]))) == 4


# --- property tests over random theories ------------------------------------

theories = st.integers(0, 10_000).map(lambda s: generate_theory(GeneratorConfig(seed=s)))


@settings(max_examples=60, deadline=None)
@given(theories)
def test_structural_invariants(theory):
    for a in enumerate_arguments(theory, 3):
        assert len(a.basis) == len(a.prem) + len(a.rules)
        assert a.basis == a.def_basis + a.str_basis
        assert a.is_strict == (not a.def_basis)
        for s in sub(a):
            assert build_argument(theory, s.tree) == s  # every subargument is well formed


@settings(max_examples=40, deadline=None)
@given(theories, st.integers(0, 3))
def test_budget_monotone(theory, b):
    smaller, larger = set(enumerate_arguments(theory, b)), set(enumerate_arguments(theory, b + 1))
    assert smaller <= larger
    assert {a for a in larger if a.is_premise} == set(enumerate_arguments(theory, 0))


@settings(max_examples=40, deadline=None)
@given(theories, st.randoms(use_true_random=False))
def test_isomorphism_is_signature_equality(theory, rng):
    args = enumerate_arguments(theory, 3)
    pairs = [(rng.choice(args), rng.choice(args)) for _ in range(30)]
    pairs += [(a, anonymity_instance(a).args[1]) for a in rng.sample(args, min(5, len(args)))]
    for a, b in pairs:
        expected = iso(as_tuple(a), as_tuple(b), a.theory.weights.__getitem__, b.theory.weights.__getitem__)
        assert is_isomorphic(a, b) == expected


def test_isomorphism_is_equivalence():
    rng = random.Random(7)
    args = [a for s in range(20) for a in enumerate_arguments(generate_theory(GeneratorConfig(seed=s)), 2)]
    sample = rng.sample(args, 40)
    for a in sample:
        assert is_isomorphic(a, a)
        for b in sample:
            assert is_isomorphic(a, b) == is_isomorphic(b, a)
            if is_isomorphic(a, b):
                assert all(is_isomorphic(a, c) == is_isomorphic(b, c) for c in sample)


def test_small_theories_match_brute_force():
    cfg = GeneratorConfig(atoms=3, strict_rules=1, defeasible_rules=2, axioms=1, ordinary=2)
    for seed in range(30):
        theory = generate_theory(GeneratorConfig(**{**cfg.__dict__, "seed": seed}))
        ours = enumerate_arguments(theory, 4)
        assert {as_tuple(a) for a in ours} == brute_arguments(theory, 4)
        w = theory.weights.__getitem__
        assert iso_classes([as_tuple(a) for a in ours], w) == iso_classes(list(brute_arguments(theory, 4)), w)
