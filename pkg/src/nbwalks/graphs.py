"""Finite loop-free digraphs with positive rational edge weights.

A Graph is immutable: vertex indices follow first appearance in the input,
edges are stored sorted by (source, destination) index so every derived
edge-space object is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicateEdgeError,
    LoopEdgeError,
    NonPositiveWeightError,
    NotUndirectedError,
    WeightedUnsupportedError,
)
from .exact import Matrix

_ONE = Fraction(1)


@dataclass(frozen=True)
class Graph:
    """Weighted digraph; unweighted graphs carry weight 1 on every edge."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]
    labels: tuple[str, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    def weight_map(self) -> dict[tuple[int, int], Fraction]:
        return {(u, v): w for u, v, w in self.edges}

    def adjacency(self) -> Matrix:
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for u, v, w in self.edges:
            rows[u][v] = w
        return Matrix(rows)

    def out_neighbors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            out[u].append(v)
        return out

    def in_neighbors(self) -> list[list[int]]:
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            inn[v].append(u)
        return inn

    def reciprocal_pairs(self) -> list[tuple[int, int]]:
        """Reciprocated edges as (u, v) with u < v, sorted."""
        es = self.edge_set()
        return sorted((u, v) for u, v in es if u < v and (v, u) in es)

    def arc_count(self) -> int:
        """Total number of directed edges."""
        return len(self.edges)

    def reciprocated_arc_count(self) -> int:
        """Number of directed edges whose reverse is also present."""
        es = self.edge_set()
        return sum(1 for u, v in es if (v, u) in es)

    def require_unweighted(self, operation: str) -> None:
        if not self.is_unweighted():
            raise WeightedUnsupportedError(f"{operation} needs an unweighted graph")

    def is_symmetric(self) -> bool:
        wm = self.weight_map()
        return all(wm.get((v, u)) == w for (u, v), w in wm.items())


def build_graph(edge_triples, vertices=()) -> Graph:
    """Construct a Graph from (label, label, weight) triples.

    Vertices are indexed by first appearance: declared isolated vertices
    first, then edge endpoints in input order.  Loops, repeated (src, dst)
    pairs and non-positive weights are rejected.
    """
    labels: list[str] = []
    index: dict = {}

    def vertex(label) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for label in vertices:
        vertex(label)

    seen: set[tuple[int, int]] = set()
    edges = []
    for src, dst, weight in edge_triples:
        u = vertex(src)
        v = vertex(dst)
        if u == v:
            raise LoopEdgeError(f"loop at vertex {src!r}")
        if (u, v) in seen:
            raise DuplicateEdgeError(f"edge {src!r} -> {dst!r} listed twice")
        w = Fraction(weight)
        if w <= 0:
            raise NonPositiveWeightError(f"edge {src!r} -> {dst!r} has weight {weight}")
        seen.add((u, v))
        edges.append((u, v, w))
    edges.sort(key=lambda e: (e[0], e[1]))
    return Graph(len(labels), tuple(edges), tuple(labels))


def build_unweighted(pairs, vertices=()) -> Graph:
    """Convenience wrapper: unit weight on every (src, dst) pair."""
    return build_graph([(u, v, 1) for u, v in pairs], vertices=vertices)


def undirected_part(g: Graph) -> Graph:
    """Subgraph keeping only reciprocated edges.

    For weighted graphs each surviving edge keeps its forward weight (the
    entrywise product with the transposed support); structural consumers
    only look at the support.
    """
    es = g.edge_set()
    kept = [(g.labels[u], g.labels[v], w) for u, v, w in g.edges if (v, u) in es]
    return build_graph(kept, vertices=g.labels)


def undirectization(g: Graph) -> Graph:
    """Unweighted graph with every edge made reciprocal."""
    sym = set()
    for u, v, _ in g.edges:
        sym.add((u, v))
        sym.add((v, u))
    pairs = sorted(sym)
    return build_unweighted(
        [(g.labels[u], g.labels[v]) for u, v in pairs], vertices=g.labels
    )


@dataclass(frozen=True)
class Component:
    """One strongly connected component or single node of a digraph."""

    vertices: tuple[int, ...]
    kind: str  # "scc" | "single"
    n: int
    arc_count: int
    reciprocated_count: int
    cycle_class: str  # "tree" | "one_cycle" | "multi_cycle"


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    def cycle_classes(self) -> tuple[str, ...]:
        return tuple(c.cycle_class for c in self.components)


def _tarjan_sccs(n: int, out: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan."""
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while pi < len(out[v]):
                w = out[v][pi]
                pi += 1
                if index_of[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return sccs


def cycle_class_of(n: int, arc_count: int, reciprocated: int) -> str:
    """Trichotomy of 2d - d_U against 2n.

    For a strongly connected component this counts the independent cycles of
    its undirectization: below means tree, equal means exactly one cycle,
    above means at least two.
    """
    value = 2 * arc_count - reciprocated
    if value < 2 * n:
        return "tree"
    if value == 2 * n:
        return "one_cycle"
    return "multi_cycle"


def scc_decompose(g: Graph) -> ComponentReport:
    """Strongly connected components with per-component cycle classification.

    Singleton components without internal edges are single nodes.  Components
    are reported sorted by their smallest vertex index.
    """
    out = g.out_neighbors()
    es = g.edge_set()
    comps = []
    for verts in sorted(_tarjan_sccs(g.n, out), key=lambda c: c[0]):
        vset = set(verts)
        internal = [(u, v) for (u, v) in es if u in vset and v in vset]
        d = len(internal)
        d_u = sum(1 for (u, v) in internal if (v, u) in es)
        kind = "single" if len(verts) == 1 else "scc"
        comps.append(
            Component(
                vertices=tuple(verts),
                kind=kind,
                n=len(verts),
                arc_count=d,
                reciprocated_count=d_u,
                cycle_class=cycle_class_of(len(verts), d, d_u),
            )
        )
    return ComponentReport(tuple(comps))


def prune_reciprocal_leaves(g: Graph) -> Graph:
    """Remove reciprocal leaves one at a time until none remain.

    A reciprocal leaf is a vertex adjacent to exactly one other vertex,
    through a single reciprocal edge and nothing else.
    """
    g.require_unweighted("prune_reciprocal_leaves")
    labels = list(g.labels)
    edges = {(u, v) for u, v, _ in g.edges}
    alive = list(range(g.n))

    def leaf_of(vset, eset):
        touch = {v: set() for v in vset}
        for u, v in eset:
            touch[u].add(v)
            touch[v].add(u)
        for v in vset:
            others = touch[v]
            if len(others) == 1:
                (u,) = others
                if (v, u) in eset and (u, v) in eset:
                    deg = sum(1 for e in eset if v in e)
                    if deg == 2:
                        return v
        return None

    while True:
        leaf = leaf_of(alive, edges)
        if leaf is None:
            break
        alive.remove(leaf)
        edges = {(u, v) for u, v in edges if leaf not in (u, v)}
    keep = sorted(alive)
    relabel = {old: labels[old] for old in keep}
    return build_unweighted(
        sorted((relabel[u], relabel[v]) for u, v in edges),
        vertices=[relabel[v] for v in keep],
    )


def connected_components_undirected(g: Graph) -> list[list[int]]:
    """Connected components ignoring edge direction."""
    adj = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = [start]
        seen[start] = True
        while queue:
            v = queue.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def bipartite_component_count(g: Graph) -> int:
    """Number of connected components of an undirected graph that admit a
    proper 2-coloring.  Isolated vertices count as bipartite components.
    """
    if not g.is_symmetric():
        raise NotUndirectedError("bipartite test needs a symmetric graph")
    adj = [set() for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    color = [-1] * g.n
    count = 0
    for comp in connected_components_undirected(g):
        ok = True
        color[comp[0]] = 0
        queue = [comp[0]]
        while queue and ok:
            v = queue.pop()
            for w in adj[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    ok = False
                    break
        if ok:
            count += 1
    return count


def is_undirected_tree(g: Graph) -> bool:
    """True when the graph equals its undirected part and that part is a
    connected acyclic graph."""
    if g.edge_set() != undirected_part(g).edge_set():
        return False
    comps = connected_components_undirected(g)
    if len(comps) != 1:
        return False
    pairs = g.m // 2
    return pairs == g.n - 1
