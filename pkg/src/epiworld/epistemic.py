"""World-view solving over ground programs.

A world view of a program is a non-empty collection W of interpretations
such that W equals the answer sets of the program's subjective reduct by
W: every subjective literal is evaluated against W (`&k{l}` holds when l
holds in each member) and replaced by true or false accordingly, and the
remaining objective program must reproduce exactly the interpretations
of W.

Two paths compute the same thing.  `oracle_world_views` follows the
definition directly: try all 2^k valuations of the k subjective atoms,
reduce, and keep the fixpoints.  `solve` is the production path: it
translates subjective literals to auxiliary atoms with choice rules,
reads candidate valuations off the answer sets of that guess program,
and confirms each candidate with one cautious/brave consequence check.

The `k15` mode reduces the alternative semantics to the default one by
strengthening each `&k{l}` with l itself: positive occurrences gain l as
an extra body literal, and `not &k{l}` becomes a fresh atom standing for
the weakened complement (not known, or not derivable).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .grounder import GroundProgram, ground_program, program_safety_check
from .stable import answer_sets, consequences, projected_answer_sets
from .syntax import (Atom, KAtom, ObjLiteral, Program, Rule, SubjLiteral,
                     print_subjective)

K15_PREFIX = "k15aux_"


class TranslationError(Exception):
    pass


@dataclass
class WorldView:
    valuation: dict[KAtom, bool]
    answer_sets: tuple[frozenset[Atom], ...]

    def valuation_key(self) -> frozenset:
        return frozenset(self.valuation.items())

    def known(self) -> list[KAtom]:
        """Subjective atoms the view makes true, in display order."""
        true = [k for k, v in self.valuation.items() if v]
        return sorted(true, key=print_subjective)


@dataclass
class SolveStats:
    candidates: int = 0
    accepted: int = 0
    rejected: int = 0


def aux_atom(katom: KAtom) -> Atom:
    """Auxiliary atom standing for a subjective atom in the guess program.

    `&k{p}` maps to aux_p, `&k{~p}` to aux_not_p, `&k{-p}` to aux_sn_p
    and `&k{~-p}` to aux_not_sn_p, keeping the argument list.
    """
    inner = katom.inner
    name = "aux_"
    if inner.negs:
        name += "not_"
    if inner.atom.strong_neg:
        name += "sn_"
    name += inner.atom.name
    return Atom(name, inner.atom.args, False)


def subjective_atoms(program) -> list[KAtom]:
    """Distinct subjective atoms of a program, sorted by printed form."""
    found: set[KAtom] = set()
    for r in program.rules:
        for lit in r.body:
            if isinstance(lit, SubjLiteral):
                found.add(lit.katom)
    return sorted(found, key=print_subjective)


def satisfies(world, literal) -> bool:
    """Evaluate a subjective atom or literal against a non-empty
    collection of interpretations."""
    if isinstance(literal, SubjLiteral):
        value = satisfies(world, literal.katom)
        return not value if literal.negated else value
    inner = literal.inner
    if inner.negs == 0:
        return all(inner.atom in i for i in world)
    return all(inner.atom not in i for i in world)


def apply_valuation(program: GroundProgram, valuation: dict[KAtom, bool]) -> GroundProgram:
    """Objective program left after fixing every subjective literal.

    Literals that come out true are dropped from their bodies; rules
    with a false literal are dropped entirely.
    """
    out: list[Rule] = []
    for r in program.rules:
        body: list = []
        dead = False
        for lit in r.body:
            if isinstance(lit, SubjLiteral):
                value = valuation[lit.katom]
                if lit.negated:
                    value = not value
                if not value:
                    dead = True
                    break
            else:
                body.append(lit)
        if not dead:
            out.append(Rule(r.head, tuple(body), r.is_choice))
    return GroundProgram(tuple(out))


def subjective_reduct(program: GroundProgram, world) -> GroundProgram:
    world = tuple(world)
    valuation = {k: satisfies(world, k) for k in subjective_atoms(program)}
    return apply_valuation(program, valuation)


def expand_world_view(wv: WorldView) -> list[frozenset[Atom]]:
    """Answer sets of the view with machinery atoms projected away."""
    internal = ("aux_", "naux_", K15_PREFIX)
    out: list[frozenset[Atom]] = []
    seen: set[frozenset[Atom]] = set()
    for m in wv.answer_sets:
        kept = frozenset(a for a in m if not a.name.startswith(internal))
        if kept not in seen:
            seen.add(kept)
            out.append(kept)
    return out


# ---------------------------------------------------------------------------
# Oracle path


def oracle_world_views(program, semantics: str = "g91",
                       max_subjective: int = 16) -> list[WorldView]:
    """World views by direct application of the definition.

    Enumerates every valuation of the subjective atoms, computes the
    answer sets of the valuation's objective program, and keeps the
    valuations that are reproduced by their own answer sets.
    """
    if isinstance(program, GroundProgram):
        program = Program(program.rules)
    if semantics == "k15":
        program = k15_transform(program)
    elif semantics != "g91":
        raise ValueError(f"unknown semantics {semantics!r}")
    program_safety_check(program)
    ground = ground_program(program)
    katoms = subjective_atoms(ground)
    if len(katoms) > max_subjective:
        raise ValueError(f"oracle limited to {max_subjective} subjective atoms, "
                         f"got {len(katoms)}")
    views: list[WorldView] = []
    seen: set[tuple] = set()
    # Ascending bitmask order over the sorted subjective alphabet, first
    # atom least significant, so small valuations come out first.
    for mask in range(1 << len(katoms)):
        valuation = {k: bool(mask >> i & 1) for i, k in enumerate(katoms)}
        reduced = apply_valuation(ground, valuation)
        models = answer_sets(reduced)
        if not models:
            continue
        if all(satisfies(models, k) == v for k, v in valuation.items()):
            key = tuple(models)
            if key not in seen:
                seen.add(key)
                views.append(WorldView(valuation, tuple(models)))
    return views


# ---------------------------------------------------------------------------
# Guess-and-check path


def translate_guess(ground: GroundProgram) -> tuple[GroundProgram, dict[KAtom, Atom]]:
    """Replace subjective literals by auxiliary atoms under choice.

    `&k{l}` becomes `not not aux`, `not &k{l}` becomes `not aux`, and
    each distinct auxiliary atom gets one choice rule `{aux}.` so the
    answer sets of the result enumerate the candidate valuations.
    """
    katoms = subjective_atoms(ground)
    mapping = {k: aux_atom(k) for k in katoms}
    by_name: dict[Atom, KAtom] = {}
    for k, a in mapping.items():
        if a in by_name:
            raise TranslationError(
                f"{print_subjective(k)} and "
                f"{print_subjective(by_name[a])} map to the same "
                f"auxiliary atom")
        by_name[a] = k
    clash = set(mapping.values()) & ground.atoms
    if clash:
        raise TranslationError("auxiliary atom already used by the program")

    rules: list[Rule] = []
    for r in ground.rules:
        body: list = []
        for lit in r.body:
            if isinstance(lit, SubjLiteral):
                negs = 1 if lit.negated else 2
                body.append(ObjLiteral(mapping[lit.katom], negs))
            else:
                body.append(lit)
        rules.append(Rule(r.head, tuple(body), r.is_choice))
    for k in katoms:
        rules.append(Rule((mapping[k],), (), is_choice=True))
    return GroundProgram(tuple(rules)), mapping


def check_candidate(ground: GroundProgram, valuation: dict[KAtom, bool]) -> WorldView | None:
    """Confirm or reject one guessed valuation.

    The valuation's objective program must have answer sets, every atom
    guessed known must be a cautious consequence (and only those), and
    every `&k{~l}` guessed true must keep l out of the brave
    consequences (and only those).
    """
    reduced = apply_valuation(ground, valuation)
    cons = consequences(reduced)
    if not cons.has_answer_set:
        return None
    for katom, value in valuation.items():
        inner = katom.inner
        if inner.negs == 0:
            if (inner.atom in cons.cautious) != value:
                return None
        else:
            if (inner.atom not in cons.brave) != value:
                return None
    return WorldView(dict(valuation), tuple(answer_sets(reduced)))


def k15_transform(program: Program) -> Program:
    """Reduce the alternative semantics to the default one.

    Every subjective atom is strengthened with its own inner literal:
    `&k{l}` occurrences gain l as an objective conjunct, and `not &k{l}`
    occurrences are replaced by a fresh atom defined to hold when the
    literal is not known or does not hold:

        host :- ..., k15aux_i, ...
        k15aux_i :- not &k{l}, D.
        k15aux_i :- not l, D.

    where D is the positive objective part of the host body (it scopes
    the fresh atom's variables) and `not l` doubles up to `not not p`
    when l is `~p`.
    """
    counter = 0
    out: list[Rule] = []
    for r in program.rules:
        domain = tuple(lit for lit in r.body
                       if isinstance(lit, ObjLiteral) and lit.negs == 0)
        body: list = []
        extra: list[Rule] = []
        for lit in r.body:
            if not isinstance(lit, SubjLiteral):
                body.append(lit)
                continue
            inner = lit.katom.inner
            if not lit.negated:
                body.append(lit)
                body.append(inner)
            else:
                counter += 1
                aux = Atom(f"{K15_PREFIX}{counter}", inner.atom.args, False)
                body.append(ObjLiteral(aux, 0))
                extra.append(Rule((aux,), (SubjLiteral(lit.katom, True),) + domain))
                extra.append(Rule((aux,), (ObjLiteral(inner.atom, inner.negs + 1),) + domain))
        out.append(Rule(r.head, tuple(body), r.is_choice))
        out.extend(extra)
    return Program(tuple(out), program.shows, program.consts)


def solve(program: Program, semantics: str = "g91", max_models: int = 0,
          use_constraints: bool = True, use_wfm: bool = True,
          stats: SolveStats | None = None):
    """Yield the world views of a program, production path.

    Grounds the program, builds the guess translation (tightened by the
    optional optimisation passes), walks its projected answer sets as
    candidate valuations, and yields the ones the consequence check
    confirms.  `max_models` of 0 means all.
    """
    from .optimize import add_consistency_constraints, collect_ksets, wfm_propagate

    if semantics == "k15":
        program = k15_transform(program)
    elif semantics != "g91":
        raise ValueError(f"unknown semantics {semantics!r}")
    program_safety_check(program)
    ground = ground_program(program)
    guess, mapping = translate_guess(ground)
    if use_constraints:
        guess = add_consistency_constraints(guess, mapping)
    if use_wfm:
        guess = wfm_propagate(guess, collect_ksets(ground), mapping)
    onto = frozenset(mapping.values())
    emitted = 0
    for projection in projected_answer_sets(guess, onto):
        if stats is not None:
            stats.candidates += 1
        valuation = {k: mapping[k] in projection for k in mapping}
        view = check_candidate(ground, valuation)
        if view is None:
            if stats is not None:
                stats.rejected += 1
            continue
        if stats is not None:
            stats.accepted += 1
        yield view
        emitted += 1
        if max_models and emitted >= max_models:
            return
