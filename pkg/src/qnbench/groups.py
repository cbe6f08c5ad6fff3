"""Uniform arithmetic over the supported discrete group families.

Every element carries a canonical normal form:

* finite table groups -- an index into the multiplication table;
* free groups -- a freely reduced word (generator ids may be any integers,
  so free groups of infinite rank cost nothing until elements appear);
* finitely presented groups -- a freely reduced word, upgraded to a true
  normal form when the descriptor carries a verified rewriting system;
* shift extensions -- a pair ``(word, n)`` for ``word * t^n`` where ``t``
  conjugates the free base by shifting every generator index up by one;
* direct products -- a pair of component elements.

Equality of normal forms decides equality of elements exactly in every
family except plain finitely presented groups, where it is only semi-decided
and ``elements_equal`` returns a three-valued answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from . import words as W
from .errors import DescriptorMismatchError, GroupValidationError, ResourceLimitError
from .rewriting import (
    RewritingSystem,
    abelianized,
    lattice_member,
    relator_insertion_search,
)


class Trit(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @staticmethod
    def from_bool(value: bool) -> "Trit":
        return Trit.YES if value else Trit.NO

    def negate(self) -> "Trit":
        if self is Trit.YES:
            return Trit.NO
        if self is Trit.NO:
            return Trit.YES
        return Trit.UNKNOWN


@dataclass
class SearchBudgets:
    """Caps for the semi-decidable searches."""

    word_search_length: int = 8
    word_search_nodes: int = 2000
    equality_nodes: int = 4000
    coset_enumeration_max: int = 4096
    ball_cap: int = 200000


@dataclass(frozen=True)
class GroupElement:
    group: "GroupDescriptor"
    payload: object

    def __eq__(self, other) -> bool:
        # normal-form equality; exact in every family except plain FpGroup
        return (
            isinstance(other, GroupElement)
            and self.group is other.group
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.payload))

    def __repr__(self) -> str:
        return f"<{self.group.format_element(self)}>"


class GroupDescriptor:
    """Shared interface of the family descriptors."""

    family = "abstract"

    def identity(self) -> GroupElement:
        raise NotImplementedError

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        raise NotImplementedError

    def invert(self, a: GroupElement) -> GroupElement:
        raise NotImplementedError

    def normalize_payload(self, payload):
        raise NotImplementedError

    def generators(self) -> list[GroupElement]:
        raise NotImplementedError

    def sort_key(self, e: GroupElement):
        raise NotImplementedError

    def format_element(self, e: GroupElement) -> str:
        raise NotImplementedError

    def element(self, payload) -> GroupElement:
        return GroupElement(self, self.normalize_payload(payload))

    def check_same(self, *elements: GroupElement) -> None:
        for e in elements:
            if e.group is not self:
                raise DescriptorMismatchError(
                    f"element of {e.group.family} used with {self.family} descriptor"
                )

    def equality_is_exact(self) -> bool:
        return True

    def elements_equal(self, a: GroupElement, b: GroupElement) -> Trit:
        self.check_same(a, b)
        return Trit.from_bool(a.payload == b.payload)


# -- finite multiplication tables -------------------------------------------


class FiniteTableGroup(GroupDescriptor):
    family = "finite_table"

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                 generator_indices: Optional[Sequence[int]] = None):
        n = len(table)
        self.order = n
        self.table = tuple(tuple(row) for row in table)
        if any(len(row) != n for row in self.table):
            raise GroupValidationError("multiplication table must be square")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise GroupValidationError("table entries must be element indices")
        self.names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(n))
        if len(self.names) != n:
            raise GroupValidationError("need one name per element")
        self.identity_index = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_associativity()
        if generator_indices is None:
            generator_indices = [i for i in range(n) if i != self.identity_index]
        self.generator_indices = tuple(generator_indices)

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][j] == j and self.table[j][e] == j for j in range(self.order)):
                return e
        raise GroupValidationError("table has no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = []
        e = self.identity_index
        for i in range(self.order):
            js = [j for j in range(self.order) if self.table[i][j] == e and self.table[j][i] == e]
            if not js:
                raise GroupValidationError(f"element {self.names[i]} has no inverse")
            inv.append(js[0])
        return tuple(inv)

    def _check_associativity(self) -> None:
        t = self.table
        for i in range(self.order):
            for j in range(self.order):
                tij = t[i][j]
                row_j = t[j]
                for k in range(self.order):
                    if t[tij][k] != t[i][row_j[k]]:
                        raise GroupValidationError(
                            f"table is not associative at ({i},{j},{k})"
                        )

    @staticmethod
    def cyclic(n: int) -> "FiniteTableGroup":
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        names = ["e"] + [f"c{i}" for i in range(1, n)]
        return FiniteTableGroup(table, names, generator_indices=[1] if n > 1 else [])

    @staticmethod
    def from_permutations(perms: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None
                          ) -> "FiniteTableGroup":
        """Closure of the given permutations (tuples acting on 0..d-1)."""
        degree = len(perms[0])
        ident = tuple(range(degree))
        elements = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            current = frontier.pop(0)
            for p in perms:
                nxt = tuple(current[p[i]] for i in range(degree))
                if nxt not in seen:
                    seen.add(nxt)
                    elements.append(nxt)
                    frontier.append(nxt)
        elements.sort()
        index = {p: i for i, p in enumerate(elements)}
        table = [
            [index[tuple(p[q[i]] for i in range(degree))] for q in elements]
            for p in elements
        ]
        gen_idx = [index[tuple(p)] for p in perms]
        return FiniteTableGroup(table, names, generator_indices=gen_idx)

    def identity(self) -> GroupElement:
        return GroupElement(self, self.identity_index)

    def normalize_payload(self, payload):
        if not isinstance(payload, int) or not (0 <= payload < self.order):
            raise DescriptorMismatchError(f"bad table index {payload!r}")
        return payload

    def multiply(self, a, b):
        self.check_same(a, b)
        return GroupElement(self, self.table[a.payload][b.payload])

    def invert(self, a):
        self.check_same(a)
        return GroupElement(self, self.inverse[a.payload])

    def generators(self):
        return [GroupElement(self, i) for i in self.generator_indices]

    def all_elements(self):
        return [GroupElement(self, i) for i in range(self.order)]

    def sort_key(self, e):
        return (e.payload,)

    def format_element(self, e):
        return self.names[e.payload]


# -- free groups -------------------------------------------------------------


class FreeGroupDescriptor(GroupDescriptor):
    family = "free"

    def __init__(self, gens: Optional[Sequence[int]] = None, names: Optional[dict] = None):
        # gens None means generators indexed by every integer (used as the
        # base of shift extensions); balls then need an explicit window
        self.gens = tuple(gens) if gens is not None else None
        self.names = dict(names) if names else {}

    @staticmethod
    def of_rank(rank: int, names: Optional[Sequence[str]] = None) -> "FreeGroupDescriptor":
        gens = range(rank)
        if names is None:
            names = [W._default_name(i) for i in gens]
        return FreeGroupDescriptor(gens, dict(zip(gens, names)))

    def _name(self, gen: int) -> str:
        return self.names.get(gen) or W._default_name(gen)

    def identity(self):
        return GroupElement(self, W.EMPTY)

    def normalize_payload(self, payload):
        word = W.reduce_word(payload)
        if self.gens is not None:
            allowed = set(self.gens)
            for gen, _ in word:
                if gen not in allowed:
                    raise DescriptorMismatchError(f"generator id {gen} not in this free group")
        return word

    def multiply(self, a, b):
        self.check_same(a, b)
        return GroupElement(self, W.concat(a.payload, b.payload))

    def invert(self, a):
        self.check_same(a)
        return GroupElement(self, W.invert_word(a.payload))

    def generators(self):
        if self.gens is None:
            raise ResourceLimitError("free group of infinite rank needs a generator window")
        return [GroupElement(self, W.generator(g)) for g in self.gens]

    def word(self, *powers: tuple[int, int]) -> GroupElement:
        """Element from (generator, exponent) pairs."""
        return self.element(W.concat(*(W.generator(g, e) for g, e in powers)))

    def sort_key(self, e):
        return W.word_key(e.payload)

    def format_element(self, e):
        return W.format_word(e.payload, self._name)


# -- finitely presented groups ------------------------------------------------


class FpGroupDescriptor(GroupDescriptor):
    family = "fp"

    def __init__(
        self,
        num_gens: int,
        relators: Sequence[W.Word],
        names: Optional[Sequence[str]] = None,
        rewriting_rules: Optional[Sequence[tuple[W.Word, W.Word]]] = None,
        budgets: Optional[SearchBudgets] = None,
    ):
        self.num_gens = num_gens
        self.relators = tuple(W.reduce_word(r) for r in relators)
        self.names = tuple(names) if names else tuple(W._default_name(i) for i in range(num_gens))
        self.budgets = budgets or SearchBudgets()
        self.rewriting: Optional[RewritingSystem] = None
        if rewriting_rules is not None:
            system = RewritingSystem(num_gens=num_gens, rules=[(tuple(l), tuple(r)) for l, r in rewriting_rules])
            system.verify(self.relators)
            self.rewriting = system
        self._relator_lattice = [abelianized(r, num_gens) for r in self.relators]

    def identity(self):
        return GroupElement(self, W.EMPTY)

    def normalize_payload(self, payload):
        word = W.reduce_word(payload)
        for gen, _ in word:
            if not (0 <= gen < self.num_gens):
                raise DescriptorMismatchError(f"generator id {gen} out of range")
        if self.rewriting is not None:
            word = self.rewriting.normal_form(word)
        return word

    def multiply(self, a, b):
        self.check_same(a, b)
        return GroupElement(self, self.normalize_payload(W.concat(a.payload, b.payload)))

    def invert(self, a):
        self.check_same(a)
        return GroupElement(self, self.normalize_payload(W.invert_word(a.payload)))

    def generators(self):
        return [GroupElement(self, self.normalize_payload(W.generator(i))) for i in range(self.num_gens)]

    def word(self, *powers: tuple[int, int]) -> GroupElement:
        return self.element(W.concat(*(W.generator(g, e) for g, e in powers)))

    def equality_is_exact(self) -> bool:
        return self.rewriting is not None

    def elements_equal(self, a, b) -> Trit:
        self.check_same(a, b)
        if a.payload == b.payload:
            return Trit.YES
        if self.rewriting is not None:
            return Trit.NO  # distinct verified normal forms
        probe = W.concat(a.payload, W.invert_word(b.payload))
        if not lattice_member(self._relator_lattice, abelianized(probe, self.num_gens)):
            return Trit.NO
        if relator_insertion_search(probe, self.relators, node_budget=self.budgets.equality_nodes):
            return Trit.YES
        return Trit.UNKNOWN

    def abelian_refutes_membership(self, gen_words: Sequence[W.Word], word: W.Word) -> bool:
        """True when the abelianization already rules out membership."""
        lattice = list(self._relator_lattice) + [abelianized(g, self.num_gens) for g in gen_words]
        return not lattice_member(lattice, abelianized(word, self.num_gens))

    def sort_key(self, e):
        return W.word_key(e.payload)

    def format_element(self, e):
        return W.format_word(e.payload, lambda g: self.names[g])


def infinite_dihedral(budgets: Optional[SearchBudgets] = None) -> FpGroupDescriptor:
    """Presentation <a, r | r^2, (ra)^2> with a verified normal-form system.

    Normal forms are ``a^k`` and ``a^k r``; the reflection conjugates ``a``
    to its inverse, so the cyclic subgroup generated by ``a`` is normal of
    index two.
    """
    a, ai, r, ri = (0, 1), (0, -1), (1, 1), (1, -1)
    relators = [(r, r), (r, a, r, a)]
    rules = [
        ((ri,), (r,)),
        ((r, r), ()),
        ((r, a), (ai, r)),
        ((r, ai), (a, r)),
    ]
    return FpGroupDescriptor(2, relators, names=("a", "r"), rewriting_rules=rules, budgets=budgets)


def free_abelian_of_rank_two(budgets: Optional[SearchBudgets] = None) -> FpGroupDescriptor:
    a, ai, b, bi = (0, 1), (0, -1), (1, 1), (1, -1)
    relators = [(a, b, ai, bi)]
    rules = [
        ((b, a), (a, b)),
        ((b, ai), (ai, b)),
        ((bi, a), (a, bi)),
        ((bi, ai), (ai, bi)),
    ]
    return FpGroupDescriptor(2, relators, names=("a", "b"), rewriting_rules=rules, budgets=budgets)


# -- shift extensions ----------------------------------------------------------


class ShiftExtensionDescriptor(GroupDescriptor):
    """Free base with integer-indexed generators, extended by a stable letter.

    The stable letter ``t`` acts on the base by shifting generator indices up
    by one, so multiplication is ``(w, n)(v, m) = (w * shift(v, n), n + m)``.
    ``window`` bounds the generator indices exposed for enumeration; the
    arithmetic itself is exact for arbitrary indices.
    """

    family = "shift_extension"

    def __init__(self, window: int = 2):
        if window < 0:
            raise GroupValidationError("window must be nonnegative")
        self.window = window
        self.base = FreeGroupDescriptor(None, None)

    def identity(self):
        return GroupElement(self, (W.EMPTY, 0))

    def normalize_payload(self, payload):
        word, shift = payload
        if not isinstance(shift, int):
            raise DescriptorMismatchError("shift exponent must be an integer")
        return (W.reduce_word(word), shift)

    def from_word(self, word: W.Word, shift: int = 0) -> GroupElement:
        return self.element((word, shift))

    def base_generator(self, index: int, exp: int = 1) -> GroupElement:
        return self.element((W.generator(index, exp), 0))

    def stable_letter(self, exp: int = 1) -> GroupElement:
        return self.element((W.EMPTY, exp))

    def multiply(self, a, b):
        self.check_same(a, b)
        wa, na = a.payload
        wb, nb = b.payload
        return GroupElement(self, (W.concat(wa, W.shift_word(wb, na)), na + nb))

    def invert(self, a):
        self.check_same(a)
        wa, na = a.payload
        return GroupElement(self, (W.shift_word(W.invert_word(wa), -na), -na))

    def apply_shift(self, e: GroupElement, power: int = 1) -> GroupElement:
        """The defining automorphism (conjugation by the stable letter)."""
        self.check_same(e)
        word, shift = e.payload
        return GroupElement(self, (W.shift_word(word, power), shift))

    def generators(self):
        gens = [self.base_generator(i) for i in range(-self.window, self.window + 1)]
        gens.append(self.stable_letter())
        return gens

    def sort_key(self, e):
        word, shift = e.payload
        return (len(word) + abs(shift), W.word_key(word), shift)

    def format_element(self, e):
        word, shift = e.payload
        if shift == 0:
            return W.format_word(word, lambda g: f"g{g}")
        t = "t" if shift == 1 else f"t^{shift}"
        if not word:
            return t
        return f"{W.format_word(word, lambda g: f'g{g}')} {t}"


# -- direct products -----------------------------------------------------------


class DirectProductDescriptor(GroupDescriptor):
    family = "direct_product"

    def __init__(self, left: GroupDescriptor, right: GroupDescriptor):
        self.left = left
        self.right = right

    def identity(self):
        return GroupElement(self, (self.left.identity(), self.right.identity()))

    def normalize_payload(self, payload):
        a, b = payload
        if a.group is not self.left or b.group is not self.right:
            raise DescriptorMismatchError("component elements from the wrong factors")
        return (a, b)

    def pair(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.element((a, b))

    def multiply(self, x, y):
        self.check_same(x, y)
        return GroupElement(
            self,
            (
                self.left.multiply(x.payload[0], y.payload[0]),
                self.right.multiply(x.payload[1], y.payload[1]),
            ),
        )

    def invert(self, x):
        self.check_same(x)
        return GroupElement(self, (self.left.invert(x.payload[0]), self.right.invert(x.payload[1])))

    def generators(self):
        el, er = self.left.identity(), self.right.identity()
        out = [GroupElement(self, (g, er)) for g in self.left.generators()]
        out += [GroupElement(self, (el, g)) for g in self.right.generators()]
        return out

    def equality_is_exact(self) -> bool:
        return self.left.equality_is_exact() and self.right.equality_is_exact()

    def elements_equal(self, x, y) -> Trit:
        self.check_same(x, y)
        l = self.left.elements_equal(x.payload[0], y.payload[0])
        r = self.right.elements_equal(x.payload[1], y.payload[1])
        if l is Trit.NO or r is Trit.NO:
            return Trit.NO
        if l is Trit.YES and r is Trit.YES:
            return Trit.YES
        return Trit.UNKNOWN

    def sort_key(self, e):
        return (self.left.sort_key(e.payload[0]), self.right.sort_key(e.payload[1]))

    def format_element(self, e):
        return f"({self.left.format_element(e.payload[0])}, {self.right.format_element(e.payload[1])})"


# -- module-level operations ----------------------------------------------------


def normalize(e: GroupElement) -> GroupElement:
    """Canonical form; a no-op because elements are stored normalized."""
    return e.group.element(e.payload)


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.group is not b.group:
        raise DescriptorMismatchError("cannot multiply across descriptors")
    return a.group.multiply(a, b)


def invert(a: GroupElement) -> GroupElement:
    return a.group.invert(a)


def identity(group: GroupDescriptor) -> GroupElement:
    return group.identity()


def elements_equal(a: GroupElement, b: GroupElement) -> Trit:
    if a.group is not b.group:
        raise DescriptorMismatchError("cannot compare across descriptors")
    return a.group.elements_equal(a, b)


def enumerate_ball(group: GroupDescriptor, radius: int, cap: Optional[int] = None) -> list[GroupElement]:
    """All normal forms of products of at most ``radius`` generator letters.

    Deterministic: output is sorted by the family's canonical order.  For a
    plain finitely presented group the returned elements are distinct normal
    forms, which may still repeat group elements when the word problem is
    undecided.
    """
    if radius < 0:
        raise GroupValidationError("radius must be nonnegative")
    cap = cap if cap is not None else SearchBudgets().ball_cap
    gens = group.generators()
    moves = []
    for g in gens:
        moves.append(g)
        gi = group.invert(g)
        if gi not in moves:
            moves.append(gi)
    seen = {group.identity()}
    frontier = [group.identity()]
    for _ in range(radius):
        nxt = []
        for e in frontier:
            for m in moves:
                prod = group.multiply(e, m)
                if prod not in seen:
                    if len(seen) >= cap:
                        raise ResourceLimitError(f"ball exceeds the cap of {cap} elements")
                    seen.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return sorted(seen, key=group.sort_key)
