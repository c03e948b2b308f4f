"""Answer-set engine: reducts, enumeration paths, consequences."""

import random

import pytest

from brute import brute_answer_sets, brute_consequences
from corpus import random_ground_rules
from epiworld.grounder import GroundProgram, ground_program
from epiworld.stable import (
    EXHAUSTIVE_LIMIT,
    answer_sets,
    consequences,
    expand_choice,
    gl_reduct,
    project,
    projected_answer_sets,
)
from epiworld.syntax import Atom, ObjLiteral, Rule, parse_text, print_atom


def ground(source):
    return ground_program(parse_text(source, allow_reserved=True))


def names(models):
    return [sorted(map(print_atom, m)) for m in models]


# ---------------------------------------------------------------------------
# Choice expansion and reducts


def test_expand_choice_emits_complementary_pair():
    (choice,) = ground("{aux_p}.").rules
    low, high = expand_choice(choice)
    aux, naux = Atom("aux_p"), Atom("naux_p")
    assert low == Rule((aux,), (ObjLiteral(naux, 1),))
    assert high == Rule((naux,), (ObjLiteral(aux, 1),))


def test_expand_choice_keeps_arguments():
    (choice,) = ground("{aux_p(a,1)}.").rules
    low, _ = expand_choice(choice)
    assert print_atom(low.head[0]) == "aux_p(a,1)"
    assert print_atom(low.body[0].atom) == "naux_p(a,1)"


def test_expand_choice_rejects_ordinary_rules():
    with pytest.raises(ValueError, match="not a choice rule"):
        expand_choice(Rule((Atom("p"),), ()))


def test_choice_program_has_both_answers():
    assert names(answer_sets(ground("{aux_p}."))) == [[], ["aux_p"]]


def test_two_choices_give_four_answers():
    got = names(answer_sets(ground("{aux_p}. {aux_q}.")))
    assert got == [[], ["aux_p"], ["aux_q"], ["aux_p", "aux_q"]]


def test_gl_reduct_keeps_positive_bodies():
    p, q = Atom("p"), Atom("q")
    red = gl_reduct(ground("p :- not q."), frozenset({p}))
    assert red.rules == (Rule((p,), ()),)
    assert gl_reduct(ground("p :- not q."), frozenset({q})).rules == ()
    red = gl_reduct(ground("p :- not not p."), frozenset({p}))
    assert red.rules == (Rule((p,), ()),)
    red = gl_reduct(ground("p :- q, not r."), frozenset({q}))
    assert red.rules == (Rule((p,), (ObjLiteral(q, 0),)),)


def test_gl_reduct_rejects_unexpanded_choice():
    with pytest.raises(ValueError, match="expand choice rules"):
        gl_reduct(ground("{aux_p}."), frozenset())


def test_gl_reduct_rejects_subjective_literals():
    with pytest.raises(ValueError, match="subjective-free"):
        gl_reduct(ground("p :- &k{q}."), frozenset())


# ---------------------------------------------------------------------------
# Enumeration basics


def test_empty_program_has_the_empty_answer_set():
    assert answer_sets(GroundProgram(())) == [frozenset()]


def test_negation_cycle():
    assert names(answer_sets(ground("p :- not q. q :- not p."))) == [["p"], ["q"]]


def test_positive_loops_stay_false():
    assert answer_sets(ground("p :- p.")) == [frozenset()]
    assert answer_sets(ground("p :- q. q :- p.")) == [frozenset()]


def test_odd_loop_kills_the_program():
    assert answer_sets(ground("p :- not p.")) == []


def test_double_negation_supports_itself():
    got = names(answer_sets(ground("p :- not not p.")))
    assert got == [[], ["p"]]


def test_disjunctive_fact_is_minimal():
    assert names(answer_sets(ground("p, q."))) == [["p"], ["q"]]


def test_disjunction_with_shared_support():
    got = names(answer_sets(ground("p, q. p :- q.")))
    assert got == [["p"]]


def test_constraints_filter_models():
    assert names(answer_sets(ground("p, q. :- p."))) == [["q"]]
    assert answer_sets(ground("p. :- p.")) == []
    assert answer_sets(ground(":- .")) == []


def test_strong_negation_consistency_filter():
    assert answer_sets(ground("a. -a.")) == []
    assert names(answer_sets(ground("a, -a."))) == [["-a"], ["a"]]
    assert names(answer_sets(ground("-a. b :- -a."))) == [["-a", "b"]]


def test_answer_sets_are_ordered_by_universe_bitmask():
    got = names(answer_sets(ground("a, b, c.")))
    assert got == [["a"], ["b"], ["c"]]


def test_exhaustive_path_rejects_oversized_universes():
    src = " ".join("{aux_p%d}." % i for i in range(13))
    with pytest.raises(ValueError, match=f"limited to {EXHAUSTIVE_LIMIT}"):
        answer_sets(ground(src), method="exhaustive")
    with pytest.raises(ValueError, match="unknown method"):
        answer_sets(ground("p."), method="guess")


def test_complement_atom_name_collision_is_an_error():
    with pytest.raises(ValueError, match="collides"):
        answer_sets(ground("{aux_p}. naux_p."))


# ---------------------------------------------------------------------------
# Consequences and projection


def test_consequences_of_single_answer_set():
    c = consequences(ground("p. q :- p."))
    assert c.cautious == c.brave == {Atom("p"), Atom("q")}
    assert c.has_answer_set


def test_consequences_meet_and_join():
    c = consequences(ground("p, q. r."))
    assert c.cautious == {Atom("r")}
    assert c.brave == {Atom("p"), Atom("q"), Atom("r")}


def test_consequences_without_answer_sets():
    c = consequences(ground("p :- not p."))
    assert not c.has_answer_set
    assert c.cautious == c.brave == frozenset()


def test_consequences_exclude_choice_complements():
    c = consequences(ground("{aux_p}."))
    assert c.cautious == frozenset()
    assert c.brave == {Atom("aux_p")}


def test_project_deduplicates_in_first_seen_order():
    x, y, p = Atom("x"), Atom("y"), Atom("aux_p")
    models = [frozenset({p, x}), frozenset({p, y}), frozenset({y})]
    assert project(models, {p}) == [frozenset({p}), frozenset()]
    assert project([], {p}) == []
    q = Atom("aux_q")
    assert project([frozenset({p}), frozenset({q})], {p, q}) == \
        [frozenset({p}), frozenset({q})]


def test_projected_answer_sets_cover_all_combinations():
    got = sorted(names(projected_answer_sets(ground("{aux_p}. {aux_q}. x :- not y."),
                                             {Atom("aux_p"), Atom("aux_q")})))
    assert got == [[], ["aux_p"], ["aux_p", "aux_q"], ["aux_q"]]


def test_projected_answer_sets_on_empty_program():
    assert list(projected_answer_sets(GroundProgram(()), {Atom("aux_p")})) == [frozenset()]
    assert list(projected_answer_sets(ground(":- ."), {Atom("aux_p")})) == []


# ---------------------------------------------------------------------------
# Differential checks


def test_both_paths_agree_on_a_large_random_corpus():
    rng = random.Random(2024)
    for _ in range(1000):
        g = GroundProgram(tuple(random_ground_rules(rng)))
        exhaustive = answer_sets(g, method="exhaustive")
        search = answer_sets(g, method="search")
        assert exhaustive == search


def test_search_path_handles_one_large_component():
    lines = ["p0, p1."]
    lines += [f"p{i} :- p{i - 2}, not p{i - 1}." for i in range(2, 14)]
    g = ground(" ".join(lines))
    assert len(g.atoms) == 14
    exhaustive = answer_sets(g, method="exhaustive")
    assert exhaustive == answer_sets(g, method="search")
    assert exhaustive == answer_sets(g, method="auto")
    assert len(exhaustive) >= 1


def test_engine_matches_brute_force_and_definitional_properties():
    rng = random.Random(77)
    for _ in range(300):
        rules = random_ground_rules(rng, max_atoms=4, max_rules=5)
        g = GroundProgram(tuple(rules))
        got = answer_sets(g)
        assert sorted(map(sorted, (map(print_atom, m) for m in got))) == \
            sorted(map(sorted, (map(print_atom, m) for m in brute_answer_sets(rules))))
        want = brute_consequences(rules)
        c = consequences(g)
        if want is None:
            assert not c.has_answer_set
        else:
            assert (c.cautious, c.brave) == want
            for m in got:
                assert want[0] <= m <= want[1]
        for m in got:
            assert not any(a.strong_neg and Atom(a.name, a.args, False) in m for a in m)
