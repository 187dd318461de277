"""Shared fixtures, graph families and independent brute-force oracles."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from nbwalks import (
    Graph,
    PolyMatrix,
    build_graph,
    build_unweighted,
    polymat_det,
    reversal,
    smith_form,
)


def mirror(pairs):
    """Each undirected pair as two arcs."""
    out = []
    for u, v in pairs:
        out.append((u, v))
        out.append((v, u))
    return out


# ---- named fixtures ---------------------------------------------------------


def example1() -> Graph:
    return build_unweighted([(1, 2), (2, 1), (2, 3), (3, 4), (4, 2)])


def directed_cycle(length: int, weights=None) -> Graph:
    pairs = [(i, i % length + 1) for i in range(1, length + 1)]
    if weights is None:
        return build_unweighted(pairs)
    return build_graph([(u, v, w) for (u, v), w in zip(pairs, weights)])


def undirected_cycle(length: int) -> Graph:
    return build_unweighted(mirror([(i, i % length + 1) for i in range(1, length + 1)]))


def undirected_path(n: int) -> Graph:
    return build_unweighted(mirror([(i, i + 1) for i in range(1, n)]))


def complete_undirected(n: int) -> Graph:
    return build_unweighted(
        [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    )


def bowtie() -> Graph:
    """Two triangles sharing vertex 1, all edges reciprocal."""
    return build_unweighted(
        mirror([(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])
    )


def two_squares() -> Graph:
    """Two 4-cycles sharing vertex 1, all edges reciprocal."""
    return build_unweighted(
        mirror([(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (5, 6), (6, 7), (7, 1)])
    )


def sec4_graph() -> Graph:
    """Reciprocal leaf attached to a directed 3-cycle."""
    return build_unweighted([(1, 2), (2, 1), (2, 3), (3, 4), (4, 2)])


def single_recip_edge(w1=1, w2=1) -> Graph:
    return build_graph([(1, 2, w1), (2, 1, w2)])


def six_vertex_two_component() -> Graph:
    """Two complete triangles, one-way bridges 1->4, 2->5, 3->6."""
    tri1 = mirror([(1, 2), (2, 3), (3, 1)])
    tri2 = mirror([(4, 5), (5, 6), (6, 4)])
    return build_unweighted(tri1 + tri2 + [(1, 4), (2, 5), (3, 6)])


def weighted_3cycle() -> Graph:
    return build_graph([(1, 2, 2), (2, 3, 3), (3, 1, 5)])


# ---- exhaustive families ----------------------------------------------------


def all_digraphs(n: int):
    """Every loop-free digraph on n labeled vertices."""
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(arcs)):
        pairs = [arcs[k] for k in range(len(arcs)) if mask >> k & 1]
        yield build_unweighted(pairs, vertices=range(n))


def connected_undirected_graphs(n: int):
    """Every connected undirected graph on n labeled vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if not _connected(n, chosen):
            continue
        yield build_unweighted(mirror(chosen), vertices=range(n))


def nonisomorphic_connected_undirected(n: int):
    """Connected undirected graphs on n vertices up to isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    seen = set()
    for mask in range(1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if not _connected(n, chosen):
            continue
        canon = min(
            _permuted_mask(chosen, perm, index) for perm in itertools.permutations(range(n))
        )
        if canon in seen:
            continue
        seen.add(canon)
        yield build_unweighted(mirror(chosen), vertices=range(n))


def _permuted_mask(chosen, perm, index):
    mask = 0
    for u, v in chosen:
        a, b = perm[u], perm[v]
        if a > b:
            a, b = b, a
        mask |= 1 << index[(a, b)]
    return mask


def _connected(n, chosen) -> bool:
    if n == 1:
        return True
    adj = {v: set() for v in range(n)}
    for u, v in chosen:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    queue = [0]
    while queue:
        v = queue.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == n


def is_strongly_connected(g: Graph) -> bool:
    """Brute-force reachability oracle, independent of the Tarjan code."""
    reach = [[False] * g.n for _ in range(g.n)]
    for v in range(g.n):
        reach[v][v] = True
    for u, v, _ in g.edges:
        reach[u][v] = True
    for k in range(g.n):
        for i in range(g.n):
            if reach[i][k]:
                row_i, row_k = reach[i], reach[k]
                for j in range(g.n):
                    if row_k[j]:
                        row_i[j] = True
    return all(all(row) for row in reach)


def brute_scc_partition(g: Graph):
    """Mutual-reachability partition from the closure oracle."""
    reach = [[False] * g.n for _ in range(g.n)]
    for v in range(g.n):
        reach[v][v] = True
    for u, v, _ in g.edges:
        reach[u][v] = True
    for k in range(g.n):
        for i in range(g.n):
            if reach[i][k]:
                for j in range(g.n):
                    if reach[k][j]:
                        reach[i][j] = True
    groups = {}
    for v in range(g.n):
        key = tuple(sorted(w for w in range(g.n) if reach[v][w] and reach[w][v]))
        groups[key] = key
    return sorted(groups.values())


def directed_cycles(g: Graph):
    """All directed cycles as canonical vertex tuples (smallest vertex first)."""
    es = g.edge_set()
    out = g.out_neighbors()
    found = set()

    def walk(path):
        last = path[-1]
        for w in out[last]:
            if w == path[0] and len(path) >= 3:
                found.add(_canonical_cycle(path))
            elif w not in path and w > path[0]:
                walk(path + (w,))

    for start in range(g.n):
        walk((start,))
    return sorted(found)


def _canonical_cycle(path):
    k = path.index(min(path))
    return path[k:] + path[:k]


def random_digraph(rng: random.Random, n: int, density: float, weighted=False) -> Graph:
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j]
    chosen = [a for a in arcs if rng.random() < density]
    if not chosen:
        chosen = [rng.choice(arcs)]
    if not weighted:
        return build_unweighted(chosen, vertices=range(n))
    pool = [
        Fraction(1),
        Fraction(2),
        Fraction(3),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(3, 2),
        Fraction(5, 4),
        Fraction(2, 5),
    ]
    return build_graph(
        [(u, v, rng.choice(pool)) for u, v in chosen], vertices=range(n)
    )


def with_random_reciprocal_leaf(rng: random.Random, g: Graph) -> Graph:
    """Attach a fresh vertex by one reciprocal edge to a random vertex."""
    anchor = g.labels[rng.randrange(g.n)]
    new = max(int(x) for x in g.labels) + 1 if all(
        isinstance(x, int) for x in g.labels
    ) else g.n
    triples = [(g.labels[u], g.labels[v], w) for u, v, w in g.edges]
    triples += [(anchor, new, Fraction(1)), (new, anchor, Fraction(1))]
    return build_graph(triples, vertices=list(g.labels) + [new])


def unit_weight_version(g: Graph) -> Graph:
    return build_unweighted(
        [(g.labels[u], g.labels[v]) for u, v, _ in g.edges], vertices=g.labels
    )


def assert_index_sum(m: PolyMatrix):
    """Finite partial multiplicities plus those of zero in the reversal must
    add up to grade times size."""
    det = polymat_det(m)
    assert not det.is_zero(), "index sum needs a regular matrix"
    finite = det.degree
    at_infinity = sum(smith_form(reversal(m)).partial_multiplicities(0))
    assert finite + at_infinity == m.grade * m.nrows, (
        finite,
        at_infinity,
        m.grade,
        m.nrows,
    )
