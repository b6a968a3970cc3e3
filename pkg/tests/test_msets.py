"""Finite/truncated M-sets, tensor products, and flatness criteria."""

import random

import pytest

import generators
import oracles
from monoid_topos.errors import InputError, ParseError
from monoid_topos.msets import (FiniteLeftMSet, FiniteRightMSet, SymbolicMSet,
                                check_flat, parse_mset, tensor)
from monoid_topos.presentation import Word, parse_presentation
from monoid_topos.primes import (Character, groupification,
                                 localization_presentation)
from monoid_topos.registry import free_monoid, torus_monoid, trivial_monoid


# -- parsing and validation --------------------------------------------------


def test_parse_right_mset():
    p = free_monoid(1)
    x = parse_mset("elems: x0 x1\nact a: x0->x1 x1->x1\n", p, "right")
    assert isinstance(x, FiniteRightMSet)
    assert x.elements == ("x0", "x1")
    assert x.act_letter("a", "x0") == "x1"


def test_parse_semicolon_one_liner():
    p = free_monoid(1)
    x = parse_mset("elems: p q; act a: p->q q->q", p, "right")
    assert x.elements == ("p", "q")


def test_parse_comments_and_blank_lines():
    p = free_monoid(1)
    x = parse_mset("# carrier\nelems: p\n\nact a: p->p  # loop\n", p, "left")
    assert isinstance(x, FiniteLeftMSet)


def test_left_vs_right_action_order():
    p = free_monoid(2)
    tables = "elems: 0 1 2\nact a: 0->1 1->1 2->2\nact b: 0->0 1->2 2->2\n"
    left = parse_mset(tables, p, "left")
    right = parse_mset(tables, p, "right")
    ab = Word.of("a", "b")
    # left: (ab).0 = a.(b.0) = a.0 = 1; right: 0.(ab) = (0.a).b = 1.b = 2
    assert left.act_word(ab, "0") == "1"
    assert right.act_word(ab, "0") == "2"


def test_parse_errors():
    p = free_monoid(1)
    with pytest.raises(ParseError):
        parse_mset("act a: p->p\n", p, "left")           # missing elems
    with pytest.raises(ParseError):
        parse_mset("elems: p\nelems: q\nact a: p->p\n", p, "left")
    with pytest.raises(ParseError):
        parse_mset("elems: p\nact a: p=p\n", p, "left")  # bad arrow
    with pytest.raises(ParseError):
        parse_mset("elems: p\nact a: p->p\nact a: p->p\n", p, "left")
    with pytest.raises(ParseError):
        parse_mset("elems: p\nact a: p->p p->p\n", p, "left")
    with pytest.raises(ParseError):
        parse_mset("elems: p\nwhat: ever\n", p, "left")
    with pytest.raises(InputError):
        parse_mset("elems: p\nact a: p->p\n", p, "sideways")


def test_carrier_validation():
    p = free_monoid(1)
    with pytest.raises(InputError):        # image outside the carrier
        parse_mset("elems: p\nact a: p->q\n", p, "left")
    with pytest.raises(InputError):        # action on unknown element
        parse_mset("elems: p\nact a: p->p q->p\n", p, "left")
    with pytest.raises(InputError):        # missing image for an element
        parse_mset("elems: p q\nact a: p->p\n", p, "left")
    with pytest.raises(InputError):        # unknown generator
        parse_mset("elems: p\nact a: p->p\nact z: p->p\n", p, "left")
    with pytest.raises(InputError):        # duplicate carrier names
        FiniteLeftMSet(p, ("p", "p"), {"a": {"p": "p"}})


def test_relation_validation_reports_counterexample():
    p = parse_presentation("gens: a\nrel: aa = a\n")
    with pytest.raises(InputError) as err:
        parse_mset("elems: 0 1\nact a: 0->1 1->0\n", p, "left")
    assert "violates relation" in str(err.value)
    # a valid idempotent action is accepted
    parse_mset("elems: 0 1\nact a: 0->1 1->1\n", p, "left")


# -- tensor products ---------------------------------------------------------


def test_tensor_hand_example():
    p = free_monoid(1)
    x = parse_mset("elems: x0 x1\nact a: x0->x1 x1->x1\n", p, "right")
    a = parse_mset("elems: p q\nact a: p->q q->q\n", p, "left")
    t = tensor(x, a)
    assert not t.truncated
    # (x0.a, p) ~ (x0, a.p) merges (x1,p) with (x0,q), and so on; only
    # (x0,p) stays alone
    assert t.classes == ((("x0", "p"),),
                         (("x0", "q"), ("x1", "p"), ("x1", "q")))
    assert t.class_index(("x0", "p")) == 0
    assert t.class_index(("x1", "q")) == 1
    with pytest.raises(InputError):
        t.class_index(("x9", "p"))


def test_tensor_input_validation():
    p = free_monoid(1)
    x = parse_mset("elems: x\nact a: x->x\n", p, "right")
    other = free_monoid(1)
    a_other = parse_mset("elems: p\nact a: p->p\n", other, "left")
    with pytest.raises(InputError):
        tensor(x, a_other)
    with pytest.raises(InputError):
        tensor(x, x)   # second factor must be a left M-set


def test_tensor_with_trivial_monoid():
    p = trivial_monoid()
    x = FiniteRightMSet(p, ("u", "v"), {})
    a = SymbolicMSet.of_monoid(p, 2)
    t = tensor(x, a)
    assert t.classes == ((("u", "1"),), (("v", "1"),))
    assert not t.truncated


def _symbolic_action(a):
    p = a.presentation
    enc = {g: a.encode_base_word(Word.of(g)) for g in p.generators}
    return (list(a.carrier),
            lambda g, item: a.act_internal(enc[g], item),
            a.label)


def test_tensor_identity_law_and_naive_closure_agreement():
    rng = random.Random(411)
    pool = generators.presentation_pool()
    for i in range(32):
        p = pool[i % len(pool)]
        x = generators.random_right_mset(p, rng)
        a = SymbolicMSet.of_monoid(p, trunc=3)
        t = tensor(x, a)
        # identity law: x |-> class of (x, 1) is a bijection
        idx = {e: t.class_index((e, "1")) for e in x.elements}
        assert len(t.classes) == len(x.elements)
        assert sorted(idx.values()) == list(range(len(t.classes)))
        # independent naive-fixpoint closure gives the same partition
        a_items, a_act, label = _symbolic_action(a)
        naive = oracles.naive_tensor_classes(
            list(x.elements), lambda e, g: x.act_letter(g, e),
            a_items, a_act, p.generators)
        relabelled = sorted(tuple(sorted((xe, label(ai)) for xe, ai in cls))
                            for cls in naive)
        assert t.classes == tuple(relabelled)


# -- symbolic carriers -------------------------------------------------------


def test_of_monoid_carrier():
    a = SymbolicMSet.of_monoid(free_monoid(2), 2)
    assert [str(w) for w in a.elements] == [
        "1", "a", "b", "aa", "ab", "ba", "bb"]
    assert a.trunc == 2
    b_int = a.encode_base_word(Word.of("b"))
    assert a.label(a.act_internal(a.encode_base_word(Word.of("a")), b_int)) \
        == "ab"
    # actions beyond the bound leave the carrier
    aa_int = a.encode_base_word(Word.of("a", "a"))
    assert a.act_internal(aa_int, a.encode_base_word(Word.of("b", "b"))) is None


def test_symbolic_group_words():
    p = free_monoid(2)
    loc = groupification(p)
    a = SymbolicMSet(loc, 2)
    enc = loc.result.encode(Word.of("a", "b'"))
    assert a.as_group_word(enc) == (("a", 1), ("b", -1))
    with pytest.raises(InputError):
        SymbolicMSet(loc, -1)


# -- flatness ----------------------------------------------------------------


def test_flat_monoid_over_itself():
    p = parse_presentation("gens: a\nrel: aa = a\n")
    a = parse_mset("elems: 1 a\nact a: 1->a a->a\n", p, "left")
    rep = check_flat(a, search_len=4)
    assert rep.kind == "finite"
    assert rep.overall == "flat"


def test_flat_fails_on_collapsed_point():
    # one point under free:2: 1.e = a.e forces F3's premise with no resolver,
    # exactly refutable because the base is free
    p = free_monoid(2)
    a = parse_mset("elems: e\nact a: e->e\nact b: e->e\n", p, "left")
    rep = check_flat(a, search_len=3)
    assert rep.overall == "not-flat"
    assert rep.f3.status == "fails"
    assert rep.f3.witness == ("1", "a", "e")


def test_flat_fails_on_merging_action():
    # q has two unrelated preimage words (1 and a) in free:1
    p = free_monoid(1)
    a = parse_mset("elems: p q\nact a: p->q q->q\n", p, "left")
    rep = check_flat(a, search_len=3)
    assert rep.overall == "not-flat"
    assert rep.f3.status == "fails"


def test_flat_empty_carrier():
    p = free_monoid(1)
    a = parse_mset("elems:\nact a:\n", p, "left")
    rep = check_flat(a, search_len=2)
    assert rep.f1.status == "fails"
    assert rep.overall == "not-flat"


def test_flat_f2_failure_on_disjoint_orbits():
    # two fixed points under free:1 never meet: F2 fails exactly by the
    # finite closure of the action
    p = free_monoid(1)
    a = parse_mset("elems: p q\nact a: p->p q->q\n", p, "left")
    rep = check_flat(a, search_len=3)
    assert rep.f2.status == "fails"
    assert rep.f2.witness == ("p", "q")
    assert rep.overall == "not-flat"


def test_flat_representable_symbolic():
    a = SymbolicMSet.of_monoid(free_monoid(2), 3)
    rep = check_flat(a, search_len=3)
    assert rep.kind == "symbolic"
    assert rep.overall == "flat"
    assert rep.trunc == 3


def test_flat_groupification_f2_witness():
    # the localization inverting both free generators is not flat; the
    # factorization test refutes F2 on the pair of formal inverses
    loc = groupification(free_monoid(2))
    a = SymbolicMSet(loc, 3)
    rep = check_flat(a, search_len=6)
    assert rep.overall == "not-flat"
    assert rep.f2.status == "fails"
    assert rep.f2.witness == ("a'", "b'")


def test_flat_single_inverted_generator_not_flat():
    # inverting only a: mixed words like a'b vs b a' cannot factor
    p = free_monoid(2)
    loc = localization_presentation(p, Character.from_bitstring(p, "10"))
    rep = check_flat(SymbolicMSet(loc, 3), search_len=6)
    assert rep.overall == "not-flat"
    assert rep.f2.status == "fails"


def test_flat_torus_localization_is_honestly_unknown():
    # the localized torus presentation only completes partially, so the
    # bounded check cannot decide and says so
    p = torus_monoid(2, 3)
    loc = localization_presentation(p, Character.from_bitstring(p, "11"))
    rep = check_flat(SymbolicMSet(loc, 3), search_len=4)
    assert rep.overall == "unknown"


def test_check_flat_input_validation():
    p = free_monoid(1)
    x = parse_mset("elems: x\nact a: x->x\n", p, "right")
    with pytest.raises(InputError):
        check_flat(x, 2)
    with pytest.raises(InputError):
        check_flat("nope", 2)
