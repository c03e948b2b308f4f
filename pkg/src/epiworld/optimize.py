"""Optimisation passes over the guess program.

Both passes tighten the guess program before its answer sets are
enumerated, without changing the world views that come out of the
check phase.

Consistency constraints rule out guesses that contradict the candidate
answer set they appear in, such as believing `~p` in a world where p
holds.  The propagation pass closes the guess program under the
simplification fixpoint: whenever simplification proves an atom of some
`&k{p}` to be a fact (so p is a cautious consequence) or drops an atom
of some `&k{~p}` from the heads (so p is false everywhere), the matching
auxiliary atom is fixed true and simplification runs again.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grounder import GroundProgram, simplify
from .syntax import Atom, KAtom, ObjLiteral, Rule, SubjLiteral, print_atom


@dataclass(frozen=True)
class KSets:
    """Atoms appearing inside subjective atoms, split by inner negation.

    `kplus` holds the atoms p of `&k{p}` and `&k{-p}` forms; `kminus`
    holds the atoms of `&k{~p}` and `&k{~-p}` forms.  Strong negation
    rides along inside the Atom values.
    """
    kplus: frozenset[Atom]
    kminus: frozenset[Atom]


def collect_ksets(program) -> KSets:
    """Collect the inner atoms of every subjective literal, keyed on
    whether the inner literal is default-negated."""
    kplus: set[Atom] = set()
    kminus: set[Atom] = set()
    for r in program.rules:
        for lit in r.body:
            if isinstance(lit, SubjLiteral):
                inner = lit.katom.inner
                (kminus if inner.negs else kplus).add(inner.atom)
    return KSets(frozenset(kplus), frozenset(kminus))


def add_consistency_constraints(guess: GroundProgram,
                                mapping: dict[KAtom, Atom]) -> GroundProgram:
    """Forbid answer sets whose guessed beliefs contradict themselves.

    For each auxiliary atom the complement of its inner literal is
    constrained away: `:- aux_p, not p.`, `:- aux_not_p, p.`,
    `:- aux_sn_p, not -p.`, `:- aux_not_sn_p, -p.`.
    """
    constraints = []
    for katom in sorted(mapping, key=lambda k: print_atom(mapping[k])):
        aux = mapping[katom]
        inner = katom.inner
        complement = ObjLiteral(inner.atom, 1 if inner.negs == 0 else 0)
        constraints.append(Rule((), (ObjLiteral(aux, 0), complement)))
    return GroundProgram(guess.rules + tuple(constraints))


def wfm_propagate(guess: GroundProgram, ksets: KSets,
                  mapping: dict[KAtom, Atom]) -> GroundProgram:
    """Fix auxiliary atoms decided by the simplification fixpoint.

    Runs simplify, then repeatedly: every new fact p with `&k{p}` in the
    program yields the fact `aux_p.`, every atom p of some `&k{~p}` that
    no longer heads any rule yields `aux_not_p.`, and the program is
    simplified again.  Stops when a round contributes nothing.  The
    facts and heads trackers start from the untouched guess program plus
    the subjective inner atoms, which may occur nowhere else.
    """
    aux_for: dict[tuple[Atom, int], Atom] = {}
    for katom, aux in mapping.items():
        aux_for[(katom.inner.atom, katom.inner.negs)] = aux

    facts_seen: set[Atom] = set()
    heads_seen: set[Atom] = set(guess.atoms) | set(ksets.kplus) | set(ksets.kminus)
    program = simplify(guess)
    while True:
        new_facts = (program.facts - facts_seen) & ksets.kplus
        dropped = (heads_seen - program.heads) & ksets.kminus
        additions = [aux_for[(p, 0)] for p in sorted(new_facts, key=print_atom)
                     if (p, 0) in aux_for]
        additions += [aux_for[(p, 1)] for p in sorted(dropped, key=print_atom)
                      if (p, 1) in aux_for]
        if not new_facts and not dropped:
            return program
        fact_rules = tuple(Rule((a,), ()) for a in additions)
        program = GroundProgram(program.rules + fact_rules)
        facts_seen = set(program.facts)
        heads_seen = set(program.heads)
        program = simplify(program)
