"""Word-problem machinery for finitely presented groups.

Three tools, all sound and clearly scoped:

* ``RewritingSystem`` -- a user-supplied set of length-lex-reducing string
  rules, machine-checked for termination (every rule decreases the shortlex
  order), local confluence (all critical pairs join) and compatibility with
  the presentation (rules are consequences of the relators, relators rewrite
  to the empty word).  A verified system decides equality exactly via normal
  forms.  No completion is attempted: a system that fails verification is
  rejected.

* ``relator_insertion_search`` -- bounded BFS over relator insertions; finds
  positive proofs that a word represents the identity.

* abelianization helpers -- exact refutations through the integer lattice of
  relator exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import GroupValidationError
from .words import Word, concat, invert_word, letter_key, reduce_word


def shortlex_key(word: Word) -> tuple:
    return (len(word), tuple(letter_key(l) for l in word))


def _free_rules(num_gens: int) -> list[tuple[Word, Word]]:
    rules = []
    for g in range(num_gens):
        rules.append((((g, 1), (g, -1)), ()))
        rules.append((((g, -1), (g, 1)), ()))
    return rules


@dataclass
class RewritingSystem:
    """Convergent rewriting system over ``num_gens`` generators.

    ``rules`` map left-hand words to strictly shortlex-smaller right-hand
    words.  Free cancellation rules are always included.  Use ``verify``
    before trusting ``normal_form`` for equality decisions.
    """

    num_gens: int
    rules: list  # list of (lhs, rhs) word pairs, custom rules only
    verified: bool = field(default=False, init=False)

    def all_rules(self) -> list[tuple[Word, Word]]:
        return list(self.rules) + _free_rules(self.num_gens)

    def normal_form(self, word: Word) -> Word:
        """Rewrite to an irreducible word.

        Stack strategy: push letters left to right and rewrite whenever a
        left-hand side appears as a suffix of the stack.  Every factor of a
        word is a suffix of one of its prefixes, so the result contains no
        left-hand side at all; termination follows from the shortlex descent
        of each rule.
        """
        rules = self.all_rules()
        stack: list = []
        pending = list(reversed(word))
        while pending:
            stack.append(pending.pop())
            for lhs, rhs in rules:
                k = len(lhs)
                if len(stack) >= k and tuple(stack[-k:]) == lhs:
                    del stack[-k:]
                    pending.extend(reversed(rhs))
                    break
        return tuple(stack)

    # -- verification ------------------------------------------------------

    def verify(self, relators: Sequence[Word], search_budget: int = 20000) -> None:
        """Check termination, local confluence and presentation compatibility.

        Raises GroupValidationError with the offending rule or pair.
        """
        for lhs, rhs in self.rules:
            if tuple(lhs) != reduce_word(lhs) or tuple(rhs) != reduce_word(rhs):
                raise GroupValidationError(f"rule sides must be freely reduced: {lhs} -> {rhs}")
            if not shortlex_key(rhs) < shortlex_key(lhs):
                raise GroupValidationError(f"rule does not decrease shortlex order: {lhs} -> {rhs}")
        self._check_local_confluence()
        for lhs, rhs in self.rules:
            probe = concat(lhs, invert_word(rhs))
            if not relator_insertion_search(probe, relators, node_budget=search_budget):
                raise GroupValidationError(
                    f"rule is not a visible consequence of the relators: {lhs} -> {rhs}"
                )
        for rel in relators:
            if self.normal_form(reduce_word(rel)) != ():
                raise GroupValidationError(f"relator does not rewrite to the identity: {rel}")
        self.verified = True

    def _check_local_confluence(self) -> None:
        rules = self.all_rules()
        for l1, r1 in rules:
            for l2, r2 in rules:
                # proper containment: l2 inside l1
                for i in range(len(l1) - len(l2) + 1):
                    if l1[i : i + len(l2)] == l2 and (i > 0 or len(l2) < len(l1)):
                        left = r1
                        right = l1[:i] + r2 + l1[i + len(l2) :]
                        self._join_or_raise(left, right, l1)
                # overlap: proper suffix of l1 equals proper prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - k :] == l2[:k]:
                        word = l1 + l2[k:]
                        left = r1 + l2[k:]
                        right = l1[: len(l1) - k] + r2
                        self._join_or_raise(left, right, word)

    def _join_or_raise(self, left: Word, right: Word, source: Word) -> None:
        if self.normal_form(left) != self.normal_form(right):
            raise GroupValidationError(f"critical pair from {source} does not join")


# -- bounded identity search -------------------------------------------------


def _relator_variants(relators: Sequence[Word]) -> list[Word]:
    variants = set()
    for rel in relators:
        rel = reduce_word(rel)
        for base in (rel, invert_word(rel)):
            for i in range(len(base)):
                variants.add(reduce_word(base[i:] + base[:i]))
    variants.discard(())
    return sorted(variants, key=shortlex_key)


def relator_insertion_search(
    word: Word,
    relators: Sequence[Word],
    node_budget: int = 20000,
    length_slack: int = 6,
) -> bool:
    """Semi-decide whether ``word`` is a relator consequence (the identity).

    BFS over relator insertions at every position, pruned by a length cap and
    a node budget.  True is a proof; False only means "not found".
    """
    start = reduce_word(word)
    if start == ():
        return True
    variants = _relator_variants(relators)
    if not variants:
        return False
    max_len = len(start) + max(len(v) for v in variants) + length_slack
    seen = {start}
    frontier = [start]
    spent = 1
    while frontier and spent < node_budget:
        nxt = []
        for current in frontier:
            for var in variants:
                for i in range(len(current) + 1):
                    cand = concat(current[:i], var, current[i:])
                    if cand == ():
                        return True
                    if len(cand) > max_len or cand in seen:
                        continue
                    seen.add(cand)
                    nxt.append(cand)
                    spent += 1
                    if spent >= node_budget:
                        break
                if spent >= node_budget:
                    break
            if spent >= node_budget:
                break
        frontier = nxt
    return False


# -- abelianization ----------------------------------------------------------


def abelianized(word: Word, num_gens: int) -> tuple[int, ...]:
    vec = [0] * num_gens
    for gen, exp in word:
        vec[gen] += exp
    return tuple(vec)


def lattice_member(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Exact membership of an integer vector in the lattice the columns span."""
    cols = [list(g) for g in generators]
    t = list(target)
    dim = len(t)
    if any(len(c) != dim for c in cols):
        raise ValueError("lattice generators and target must share a dimension")
    pivots: list[tuple[int, list[int]]] = []
    active = [c for c in cols if any(c)]
    for row in range(dim):
        carriers = [c for c in active if c[row] != 0]
        if not carriers:
            continue
        # gcd sweep: column operations until one carrier remains at this row
        while len(carriers) > 1:
            carriers.sort(key=lambda c: abs(c[row]))
            small, big = carriers[0], carriers[1]
            q = big[row] // small[row]
            for r in range(dim):
                big[r] -= q * small[r]
            carriers = [c for c in carriers if c[row] != 0]
        # the sweep zeroed this row in every other active column
        pivot = carriers[0]
        if pivot[row] < 0:
            for r in range(dim):
                pivot[r] = -pivot[r]
        active.remove(pivot)
        active = [c for c in active if any(c)]
        pivots.append((row, pivot))
    for row, pivot in pivots:
        if t[row] % pivot[row] != 0:
            return False
        q = t[row] // pivot[row]
        for r in range(dim):
            t[r] -= q * pivot[r]
    return not any(t)
