"""Folded subgroup graphs for finitely generated subgroups of free groups.

A subgroup graph is a based, edge-labelled digraph.  Edges carry generator
ids and may be traversed forwards (exponent +1) or backwards (exponent -1).
After folding, every vertex has at most one outgoing and at most one incoming
edge per label, so tracing a reduced word is deterministic and a word lies in
the subgroup exactly when its trace is a closed loop at the basepoint.

Vertex ids are canonicalized by BFS order from the basepoint so that equal
subgroups produce identical structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import GroupValidationError
from .words import Word, concat, invert_word, reduce_word


@dataclass(frozen=True)
class SubgroupGraph:
    """Folded core graph of a finitely generated free-group subgroup."""

    num_vertices: int
    out: dict  # (vertex, gen) -> vertex, edge traversed forwards
    inn: dict  # (vertex, gen) -> vertex, same edge set indexed by target
    basepoint: int = 0

    # -- queries ---------------------------------------------------------

    def step(self, vertex: int, gen: int, exp: int) -> Optional[int]:
        if exp > 0:
            return self.out.get((vertex, gen))
        return self.inn.get((vertex, gen))

    def trace(self, word: Word, start: Optional[int] = None) -> Optional[int]:
        """Endpoint of the path reading ``word``, or None if it leaves the graph."""
        v = self.basepoint if start is None else start
        for gen, exp in word:
            v = self.step(v, gen, exp)
            if v is None:
                return None
        return v

    def trace_partial(self, word: Word) -> tuple[int, Word]:
        """Read as far as possible from the basepoint.

        Returns ``(vertex, remainder)`` where ``remainder`` is the unread
        suffix; it is empty exactly when the whole word traces.
        """
        v = self.basepoint
        for i, (gen, exp) in enumerate(word):
            nxt = self.step(v, gen, exp)
            if nxt is None:
                return v, word[i:]
            v = nxt
        return v, ()

    def contains(self, word: Word) -> bool:
        return self.trace(reduce_word(word)) == self.basepoint

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((u, gen, v) for (u, gen), v in self.out.items())

    def labels(self) -> set[int]:
        return {gen for (_, gen) in self.out}

    def degree(self, vertex: int) -> int:
        d = 0
        for (u, _), v in self.out.items():
            if u == vertex:
                d += 1
            if v == vertex:
                d += 1
        return d

    # -- structure -------------------------------------------------------

    def spanning_tree(self) -> tuple[dict, list[tuple[int, int, int]]]:
        """BFS spanning tree from the basepoint.

        Returns ``(parent, loose)`` where ``parent[v] = (u, gen, exp)`` walks
        one step towards the basepoint and ``loose`` lists non-tree edges in
        canonical order.  Non-tree edges are a free basis of the subgroup.
        """
        parent: dict[int, tuple[int, int, int]] = {}
        seen = {self.basepoint}
        order = [self.basepoint]
        queue = [self.basepoint]
        tree_edges: set[tuple[int, int, int]] = set()
        while queue:
            v = queue.pop(0)
            for gen, exp, w in self._moves(v):
                if w not in seen:
                    seen.add(w)
                    parent[w] = (v, gen, -exp)
                    edge = (v, gen, w) if exp > 0 else (w, gen, v)
                    tree_edges.add(edge)
                    order.append(w)
                    queue.append(w)
        loose = [e for e in self.edges() if e not in tree_edges]
        return parent, loose

    def _moves(self, v: int):
        moves = []
        for (u, gen), w in self.out.items():
            if u == v:
                moves.append((gen, 1, w))
            if w == v:
                moves.append((gen, -1, u))
        moves.sort(key=lambda m: (m[0], 0 if m[1] > 0 else 1, m[2]))
        return moves

    def path_to_basepoint(self, v: int, parent: dict) -> Word:
        letters = []
        while v != self.basepoint:
            u, gen, exp = parent[v]
            letters.append((gen, exp))
            v = u
        return tuple(letters)

    def basis(self) -> list[Word]:
        """Free basis: one word per non-tree edge."""
        parent, loose = self.spanning_tree()
        paths = {v: invert_word(self.path_to_basepoint(v, parent)) for v in range(self.num_vertices)}
        out = []
        for u, gen, v in loose:
            out.append(concat(paths[u], ((gen, 1),), invert_word(paths[v])))
        return out

    def rewrite_in_basis(self, word: Word) -> Optional[Word]:
        """Express a subgroup member in the non-tree-edge basis.

        Letters of the result index ``self.basis()``.  Returns None when the
        word is not a member.
        """
        word = reduce_word(word)
        if self.trace(word) != self.basepoint:
            return None
        parent, loose = self.spanning_tree()
        index = {edge: i for i, edge in enumerate(loose)}
        v = self.basepoint
        letters = []
        for gen, exp in word:
            w = self.step(v, gen, exp)
            edge = (v, gen, w) if exp > 0 else (w, gen, v)
            if edge in index:
                letters.append((index[edge], exp))
            v = w
        return reduce_word(letters)

    def to_dot(self, name=None) -> str:
        """Graph in DOT format for external viewers."""
        if name is None:
            name = str
        lines = ["digraph subgroup {", '  rankdir=LR;', f'  {self.basepoint} [shape=doublecircle];']
        for u, gen, v in self.edges():
            lines.append(f'  {u} -> {v} [label="{name(gen)}"];')
        lines.append("}")
        return "\n".join(lines)


# -- construction ----------------------------------------------------------


def build_subgroup_graph(generators: Sequence[Word]) -> SubgroupGraph:
    """Folded core graph of the subgroup generated by the given words.

    An empty generator list yields the one-vertex graph of the trivial
    subgroup.
    """
    edges: list[list[int]] = []  # mutable [u, gen, v]
    fresh = 1
    for raw in generators:
        word = reduce_word(raw)
        if not word:
            continue
        v = 0
        for i, (gen, exp) in enumerate(word):
            target = 0 if i == len(word) - 1 else fresh
            if i != len(word) - 1:
                fresh += 1
            if exp > 0:
                edges.append([v, gen, target])
            else:
                edges.append([target, gen, v])
            v = target
    return _finish(fresh, edges, 0)


def _finish(num_vertices: int, edges: list[list[int]], basepoint: int) -> SubgroupGraph:
    edges = _fold(num_vertices, edges)
    return _trim_and_canonicalize(edges, basepoint)


def _fold(num_vertices: int, edges: list[list[int]]) -> list[tuple[int, int, int]]:
    parent = list(range(num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    changed = True
    while changed:
        changed = False
        by_out: dict[tuple[int, int], int] = {}
        by_in: dict[tuple[int, int], int] = {}
        for u, gen, v in edges:
            ru, rv = find(u), find(v)
            if (ru, gen) in by_out and by_out[(ru, gen)] != rv:
                union(by_out[(ru, gen)], rv)
                changed = True
            else:
                by_out[(ru, gen)] = rv
            if (rv, gen) in by_in and by_in[(rv, gen)] != ru:
                union(by_in[(rv, gen)], ru)
                changed = True
            else:
                by_in[(rv, gen)] = ru
    return sorted({(find(u), gen, find(v)) for u, gen, v in edges})


def _trim_and_canonicalize(edges: Iterable[tuple[int, int, int]], basepoint: int) -> SubgroupGraph:
    edges = set(edges)
    # core: iteratively drop non-basepoint leaves (one incident edge endpoint)
    while True:
        degree: dict[int, int] = {}
        for u, _, v in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = {v for v, d in degree.items() if d == 1 and v != basepoint}
        if not leaves:
            break
        edges = {(u, g, v) for u, g, v in edges if u not in leaves and v not in leaves}

    out: dict[tuple[int, int], int] = {}
    inn: dict[tuple[int, int], int] = {}
    for u, gen, v in edges:
        if (u, gen) in out or (v, gen) in inn:
            raise GroupValidationError("folding left a duplicate edge")
        out[(u, gen)] = v
        inn[(v, gen)] = u

    # canonical relabel: BFS from basepoint, moves in (label, direction) order
    label_order = sorted({gen for (_, gen) in out})
    relabel = {basepoint: 0}
    queue = [basepoint]
    while queue:
        v = queue.pop(0)
        for gen in label_order:
            for nxt in (out.get((v, gen)), inn.get((v, gen))):
                if nxt is not None and nxt not in relabel:
                    relabel[nxt] = len(relabel)
                    queue.append(nxt)
    new_out = {(relabel[u], gen): relabel[v] for (u, gen), v in out.items()}
    new_inn = {(relabel[v], gen): relabel[u] for (v, gen), u in inn.items()}
    return SubgroupGraph(num_vertices=len(relabel) or 1, out=new_out, inn=new_inn, basepoint=0)


# -- operations ------------------------------------------------------------


def graph_membership(graph: SubgroupGraph, word: Word) -> bool:
    return graph.contains(word)


def graph_index(graph: SubgroupGraph, alphabet: Sequence[int]):
    """``("finite", n)`` when the graph is a full cover of rank ``len(alphabet)``.

    A folded core graph covers the rose exactly when every vertex carries an
    outgoing and an incoming edge for every generator; the subgroup index then
    equals the vertex count.  Otherwise the index is infinite.
    """
    for v in range(graph.num_vertices):
        for gen in alphabet:
            if (v, gen) not in graph.out or (v, gen) not in graph.inn:
                return ("infinite", None)
    return ("finite", graph.num_vertices)


def graph_intersect(g1: SubgroupGraph, g2: SubgroupGraph) -> SubgroupGraph:
    """Based pullback: graph of the intersection of the two subgroups."""
    start = (g1.basepoint, g2.basepoint)
    seen = {start: 0}
    queue = [start]
    labels = sorted(g1.labels() | g2.labels())
    edges: list[list[int]] = []
    while queue:
        v1, v2 = pair = queue.pop(0)
        vid = seen[pair]
        for gen in labels:
            w1, w2 = g1.out.get((v1, gen)), g2.out.get((v2, gen))
            if w1 is not None and w2 is not None:
                wp = (w1, w2)
                if wp not in seen:
                    seen[wp] = len(seen)
                    queue.append(wp)
                edges.append([vid, gen, seen[wp]])
            u1, u2 = g1.inn.get((v1, gen)), g2.inn.get((v2, gen))
            if u1 is not None and u2 is not None:
                up = (u1, u2)
                if up not in seen:
                    seen[up] = len(seen)
                    queue.append(up)
                # forward edge from the backward move; dedup happens in _fold
                edges.append([seen[up], gen, vid])
    return _finish(len(seen), edges, 0)


def conjugate_graph(graph: SubgroupGraph, by: Word) -> SubgroupGraph:
    """Graph of ``w H w^-1`` for ``w = by``."""
    word = reduce_word(by)
    if not word:
        return graph
    # re-root: new basepoint, path spelling `word` into the old basepoint
    offset = len(word)  # vertices 0..len-1 form the path, old ids shift up
    edges: list[list[int]] = [[u + offset, gen, v + offset] for (u, gen), v in graph.out.items()]
    old_bp = graph.basepoint + offset
    v = 0
    for i, (gen, exp) in enumerate(word):
        target = old_bp if i == len(word) - 1 else i + 1
        if exp > 0:
            edges.append([v, gen, target])
        else:
            edges.append([target, gen, v])
        v = target
    return _finish(offset + graph.num_vertices, edges, 0)


def graphs_equal(g1: SubgroupGraph, g2: SubgroupGraph) -> bool:
    """Equality of subgroups via canonical forms."""
    return (
        g1.num_vertices == g2.num_vertices
        and g1.basepoint == g2.basepoint
        and g1.out == g2.out
    )


def free_qn1_decide(graph: SubgroupGraph, word: Word):
    """Decide one-sided quasi-normalization of a word over a f.g. subgroup.

    Returns ``("in", k)`` when the intersection ``H and wHw^-1`` has finite
    index ``k`` in ``H`` (equivalently, the left cosets meeting ``Hw`` number
    ``k``, the minimal cover size), else ``("out", None)``.

    The index is computed exactly: the intersection is rewritten in a free
    basis of ``H`` and the covering-completeness test is run there.
    """
    word = reduce_word(word)
    if graph.contains(word):
        return ("in", 1)
    meet = graph_intersect(graph, conjugate_graph(graph, word))
    basis = graph.basis()
    rank = len(basis)
    if rank == 0:
        # trivial subgroup: H w is the singleton {w}, covered by w H
        return ("in", 1)
    rewritten = []
    for member in meet.basis():
        expr = graph.rewrite_in_basis(member)
        if expr is None:
            raise GroupValidationError("pullback produced a non-member word")
        rewritten.append(expr)
    inner = build_subgroup_graph(rewritten)
    kind, count = graph_index(inner, range(rank))
    if kind == "finite":
        return ("in", count)
    return ("out", None)
