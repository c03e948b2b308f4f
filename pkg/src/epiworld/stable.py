"""Ground answer-set engine.

Interpretations are bitmasks over the program's atom universe sorted by
printed form, and results come back in ascending bitmask order.  Two
enumeration paths exist: the exhaustive one walks every interpretation
and checks minimality against every proper subset (the definitional
reading, kept as the reference), and the search path splits the atom
graph into connected components and runs a small branch-and-propagate
enumeration inside each.  Both return the same list.

Choice rules are expanded on entry: `{a}` becomes `a :- not a'.` and
`a' :- not a.` where a' prefixes the atom name with `n`.  The generated
complements never show up in returned interpretations, consequence
sets, or projections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .grounder import GroundProgram
from .syntax import Atom, ObjLiteral, Rule, SubjLiteral, print_atom

# Universe bound for the exhaustive path; the automatic dispatch switches
# to the search path well before that for speed.
EXHAUSTIVE_LIMIT = 24
_AUTO_EXHAUSTIVE = 12


@dataclass(frozen=True)
class ConsequenceSets:
    cautious: frozenset[Atom]
    brave: frozenset[Atom]
    has_answer_set: bool


def expand_choice(rule: Rule) -> tuple[Rule, Rule]:
    """Split `{a}` into the complementary pair of normal rules."""
    if not rule.is_choice:
        raise ValueError("not a choice rule")
    a = rule.head[0]
    comp = Atom("n" + a.name, a.args, a.strong_neg)
    return (Rule((a,), (ObjLiteral(comp, 1),)),
            Rule((comp,), (ObjLiteral(a, 1),)))


def gl_reduct(program: GroundProgram, candidate: frozenset[Atom]) -> GroundProgram:
    """Positive program obtained by evaluating default negation.

    Rules with `not a` and a in the candidate (or `not not a` with a
    outside it) disappear; the others keep only their positive body.
    """
    out: list[Rule] = []
    for r in program.rules:
        if r.is_choice:
            raise ValueError("expand choice rules before taking a reduct")
        body: list[ObjLiteral] = []
        dead = False
        for lit in r.body:
            if isinstance(lit, SubjLiteral):
                raise ValueError("reduct expects a subjective-free program")
            if lit.negs == 0:
                body.append(lit)
            elif lit.negs == 1:
                if lit.atom in candidate:
                    dead = True
                    break
            else:
                if lit.atom not in candidate:
                    dead = True
                    break
        if not dead:
            out.append(Rule(r.head, tuple(body)))
    return GroundProgram(tuple(out))


# ---------------------------------------------------------------------------
# Indexed engine


class _Engine:
    def __init__(self, program: GroundProgram):
        base: set[Atom] = set()
        rules: list[Rule] = []
        comps: list[Atom] = []
        for r in program.rules:
            for lit in r.body:
                if isinstance(lit, SubjLiteral):
                    raise ValueError("the engine expects a subjective-free program")
            base.update(r.head)
            base.update(lit.atom for lit in r.body)
            if r.is_choice:
                lo, hi = expand_choice(r)
                rules += [lo, hi]
                comps.append(lo.body[0].atom)
            else:
                rules.append(r)
        overlap = base & set(comps)
        if overlap:
            raise ValueError(f"complement atom collides with {print_atom(next(iter(overlap)))}")

        atoms = sorted(base | set(comps), key=print_atom)
        self.atoms = atoms
        self.n = len(atoms)
        self.bit = {a: 1 << i for i, a in enumerate(atoms)}
        self.full = (1 << self.n) - 1
        self.base_mask = 0
        for a in base:
            self.base_mask |= self.bit[a]

        self.rules: list[tuple[int, int, int, int]] = []
        for r in rules:
            head = pos = neg = negneg = 0
            for a in r.head:
                head |= self.bit[a]
            for lit in r.body:
                b = self.bit[lit.atom]
                if lit.negs == 0:
                    pos |= b
                elif lit.negs == 1:
                    neg |= b
                else:
                    negneg |= b
            self.rules.append((head, pos, neg, negneg))

        # Consistency applies to program atoms only; the generated
        # complements are plain encoding devices even when the choice
        # atom carries explicit negation.
        self.pairs: list[int] = []
        for a in atoms:
            if a.strong_neg and a in base:
                twin = Atom(a.name, a.args, False)
                if twin in base:
                    self.pairs.append(self.bit[a] | self.bit[twin])

        # `:- .` mentions no atom, so the component machinery never sees
        # it; flag it here and let the search entry points bail out.
        self.falsum = any(head | pos | neg | negneg == 0
                          for head, pos, neg, negneg in self.rules)

    # -- basic checks on full interpretations

    def is_model(self, m: int) -> bool:
        for head, pos, neg, negneg in self.rules:
            if pos & m == pos and neg & m == 0 and negneg & m == negneg and not head & m:
                return False
        return True

    def consistent(self, m: int) -> bool:
        return all(pair & m != pair for pair in self.pairs)

    def reduct_masks(self, m: int) -> list[tuple[int, int]]:
        return [(head, pos) for head, pos, neg, negneg in self.rules
                if neg & m == 0 and negneg & m == negneg]

    # -- exhaustive path: subset-enumeration minimality

    @staticmethod
    def _models_positive(s: int, red: list[tuple[int, int]]) -> bool:
        for head, pos in red:
            if pos & s == pos and not head & s:
                return False
        return True

    def stable_brute(self, m: int) -> bool:
        if not self.is_model(m):
            return False
        if m == 0:
            return True
        red = self.reduct_masks(m)
        s = (m - 1) & m
        while True:
            if self._models_positive(s, red):
                return False
            if s == 0:
                return True
            s = (s - 1) & m

    def exhaustive_masks(self) -> list[int]:
        return [m for m in range(1 << self.n)
                if self.consistent(m) and self.stable_brute(m)]

    # -- search path: component split, branch and propagate

    def stable_search(self, m: int, rules: list[tuple[int, int, int, int]] | None = None) -> bool:
        rules = self.rules if rules is None else rules
        red = []
        for head, pos, neg, negneg in rules:
            if pos & m == pos and neg & m == 0 and negneg & m == negneg and not head & m:
                return False
            if neg & m == 0 and negneg & m == negneg:
                red.append((head, pos))
        live = [(head & m, pos) for head, pos in red if pos & m == pos]
        if all((h & (h - 1)) == 0 for h, _ in live):
            # definite once restricted to m: minimal iff m is the least fixpoint
            least = 0
            changed = True
            while changed:
                changed = False
                for h, pos in live:
                    if pos & ~least == 0 and h & ~least:
                        least |= h
                        changed = True
            return least == m
        clauses = live + [(0, m)]  # the last clause rules out m itself
        return not _sat(clauses, m)

    def component_split(self) -> list[tuple[int, list[tuple[int, int, int, int]]]]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        def union_mask(mask: int) -> None:
            first = -1
            while mask:
                b = mask & -mask
                i = b.bit_length() - 1
                if first < 0:
                    first = i
                else:
                    union(first, i)
                mask &= mask - 1

        for head, pos, neg, negneg in self.rules:
            union_mask(head | pos | neg | negneg)
        for pair in self.pairs:
            union_mask(pair)

        groups: dict[int, int] = {}
        for i in range(self.n):
            r = find(i)
            groups[r] = groups.get(r, 0) | (1 << i)
        comps = sorted(groups.values(), key=lambda mask: mask & -mask)
        out = []
        for mask in comps:
            local = [rm for rm in self.rules if (rm[0] | rm[1] | rm[2] | rm[3]) & mask]
            out.append((mask, local))
        return out

    def component_masks(self, mask: int, local_rules: list[tuple[int, int, int, int]]) -> list[int]:
        bits = []
        rest = mask
        while rest:
            b = rest & -rest
            bits.append(b)
            rest &= rest - 1
        pairs = [p for p in self.pairs if p & mask]
        if len(bits) <= _AUTO_EXHAUSTIVE:
            found = []
            for combo in range(1 << len(bits)):
                m = 0
                for i, b in enumerate(bits):
                    if combo >> i & 1:
                        m |= b
                if all(p & m != p for p in pairs) and self.stable_search(m, local_rules):
                    found.append(m)
            return sorted(found)
        return self._component_search(bits, local_rules, pairs)

    def _component_search(self, bits: list[int],
                          local_rules: list[tuple[int, int, int, int]],
                          pairs: list[int]) -> list[int]:
        full = 0
        for b in bits:
            full |= b
        clauses = [(head | neg, pos | negneg) for head, pos, neg, negneg in local_rules]
        supports: dict[int, list[int]] = {b: [] for b in bits}
        for i, (head, pos, neg, negneg) in enumerate(local_rules):
            rest = head & full
            while rest:
                b = rest & -rest
                supports[b].append(i)
                rest &= rest - 1
        found: list[int] = []

        def propagate(true_m: int, false_m: int) -> tuple[int, int] | None:
            while True:
                changed = False
                und = full & ~(true_m | false_m)
                for p_mask, n_mask in clauses:
                    if p_mask & true_m or n_mask & false_m:
                        continue
                    up = p_mask & und
                    un = n_mask & und
                    total = up | un
                    if total == 0:
                        return None
                    if (total & (total - 1)) == 0 and (up == 0 or un == 0):
                        if up:
                            true_m |= up
                        else:
                            false_m |= un
                        und = full & ~(true_m | false_m)
                        changed = True
                for b in bits:
                    if b & false_m:
                        continue
                    alive = False
                    for i in supports[b]:
                        head, pos, neg, negneg = local_rules[i]
                        if (pos | negneg) & false_m or neg & true_m:
                            continue
                        alive = True
                        break
                    if not alive:
                        if b & true_m:
                            return None
                        false_m |= b
                        und = full & ~(true_m | false_m)
                        changed = True
                for p in pairs:
                    if p & true_m == p:
                        return None
                if not changed:
                    return true_m, false_m

        def walk(true_m: int, false_m: int) -> None:
            state = propagate(true_m, false_m)
            if state is None:
                return
            true_m, false_m = state
            und = full & ~(true_m | false_m)
            if und == 0:
                if self.stable_search(true_m, local_rules):
                    found.append(true_m)
                return
            b = und & -und
            walk(true_m, false_m | b)
            walk(true_m | b, false_m)

        walk(0, 0)
        return sorted(found)

    def search_masks(self) -> list[int]:
        if self.falsum:
            return []
        partial = [0]
        for mask, local in self.component_split():
            comp_masks = self.component_masks(mask, local)
            if not comp_masks:
                return []
            partial = [p | c for p in partial for c in comp_masks]
        return partial

    def to_interpretation(self, m: int) -> frozenset[Atom]:
        m &= self.base_mask
        return frozenset(a for a in self.atoms if self.bit[a] & m)


def _sat(clauses: list[tuple[int, int]], variables: int) -> bool:
    """Satisfiability of (positives, negated) mask clauses over `variables`."""

    def walk(true_m: int, false_m: int) -> bool:
        while True:
            changed = False
            und = variables & ~(true_m | false_m)
            for p_mask, n_mask in clauses:
                if p_mask & true_m or n_mask & false_m:
                    continue
                up = p_mask & und
                un = n_mask & und
                total = up | un
                if total == 0:
                    return False
                if (total & (total - 1)) == 0 and (up == 0 or un == 0):
                    if up:
                        true_m |= up
                    else:
                        false_m |= un
                    und = variables & ~(true_m | false_m)
                    changed = True
            if not changed:
                break
        und = variables & ~(true_m | false_m)
        if und == 0:
            return True
        b = und & -und
        return walk(true_m, false_m | b) or walk(true_m | b, false_m)

    return walk(0, 0)


# ---------------------------------------------------------------------------
# Public operations


def answer_sets(program: GroundProgram, method: str = "auto") -> list[frozenset[Atom]]:
    """All answer sets, in ascending order of the universe bitmask.

    Interpretations containing a complementary pair a / -a are
    discarded after the stability check.
    """
    eng = _Engine(program)
    if method == "auto":
        method = "exhaustive" if eng.n <= _AUTO_EXHAUSTIVE else "search"
    if method == "exhaustive":
        if eng.n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive path limited to {EXHAUSTIVE_LIMIT} atoms, got {eng.n}")
        masks = eng.exhaustive_masks()
    elif method == "search":
        masks = eng.search_masks()
    else:
        raise ValueError(f"unknown method {method!r}")
    masks.sort(key=lambda m: m & eng.base_mask)
    return [eng.to_interpretation(m) for m in masks]


def projected_answer_sets(program: GroundProgram, onto):
    """Distinct projections of the answer sets onto the given atoms.

    Projections are deduplicated per connected component and combined
    across components, which keeps the enumeration linear in the number
    of distinct projections instead of the number of answer sets.
    """
    onto = frozenset(onto)
    eng = _Engine(program)
    if eng.falsum:
        return iter(())
    per_component: list[list[frozenset[Atom]]] = []
    for mask, local in eng.component_split():
        comp_masks = eng.component_masks(mask, local)
        if not comp_masks:
            return iter(())
        seen: set[frozenset[Atom]] = set()
        projected: list[frozenset[Atom]] = []
        for m in comp_masks:
            p = frozenset(a for a in eng.to_interpretation(m) if a in onto)
            if p not in seen:
                seen.add(p)
                projected.append(p)
        per_component.append(projected)
    if not per_component:
        return iter((frozenset(),))

    def assemble():
        for combo in itertools.product(*per_component):
            merged: frozenset[Atom] = frozenset()
            for part in combo:
                merged |= part
            yield merged

    return assemble()


def consequences(program: GroundProgram) -> ConsequenceSets:
    """Cautious and brave consequences (intersection and union of the
    answer sets).

    Folded component by component: an answer set is a union of one
    answer set per component, so intersections and unions distribute.
    """
    eng = _Engine(program)
    if eng.falsum:
        return ConsequenceSets(frozenset(), frozenset(), False)
    cautious_mask = 0
    brave_mask = 0
    for mask, local in eng.component_split():
        comp_masks = eng.component_masks(mask, local)
        if not comp_masks:
            return ConsequenceSets(frozenset(), frozenset(), False)
        meet = comp_masks[0]
        join = 0
        for m in comp_masks:
            meet &= m
            join |= m
        cautious_mask |= meet
        brave_mask |= join
    return ConsequenceSets(eng.to_interpretation(cautious_mask),
                           eng.to_interpretation(brave_mask), True)


def project(models, onto) -> list[frozenset[Atom]]:
    """Restrict each interpretation to `onto`, dropping duplicates while
    keeping first-occurrence order."""
    onto = frozenset(onto)
    seen: set[frozenset[Atom]] = set()
    out: list[frozenset[Atom]] = []
    for m in models:
        r = m & onto
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out
