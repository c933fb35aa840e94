"""Stable graphs: construction, validation, canonical form, enumeration.

A stable graph of type ``(g, n)`` records the combinatorics of a nodal
curve: vertices carry genera, edges are unordered pairs of half-edges glued
at nodes, and ``n`` numbered legs mark the vertices.  The class below keeps
a normalized presentation:

* ``genera[v]`` is the genus of vertex ``v``;
* ``edges`` is a sorted tuple of vertex pairs ``(u, v)`` with ``u <= v``,
  one entry per edge (loops as ``(v, v)``, parallel edges repeated);
* ``legs[i]`` is the vertex carrying marking ``i + 1``.

Half-edges are indexed deterministically from this data: edge ``t`` owns
half-edges ``2t`` (at ``edges[t][0]``) and ``2t + 1`` (at ``edges[t][1]``),
and marking ``i + 1`` is half-edge ``2 * n_edges + i``.  All decorated
bookkeeping elsewhere in the package refers to these indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

__all__ = [
    "StableGraph",
    "validate",
    "canonical_key",
    "canonical_form_decorated",
    "automorphism_order",
    "first_betti",
    "enumerate_stable_graphs",
    "graph_to_json",
    "graph_from_json",
]


@dataclass(frozen=True)
class StableGraph:
    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    legs: tuple[int, ...]

    def __init__(self, genera: Sequence[int], edges: Sequence[Sequence[int]], legs: Sequence[int] = ()):
        norm_edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        object.__setattr__(self, "genera", tuple(int(x) for x in genera))
        object.__setattr__(self, "edges", norm_edges)
        object.__setattr__(self, "legs", tuple(int(v) for v in legs))

    # -- basic counts -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_legs(self) -> int:
        return len(self.legs)

    @property
    def n_half_edges(self) -> int:
        """Total half-edge count, legs included."""
        return 2 * self.n_edges + self.n_legs

    # -- half-edge layout ---------------------------------------------

    def half_edge_vertex(self, h: int) -> int:
        """Vertex carrying half-edge ``h``."""
        if h < 2 * self.n_edges:
            return self.edges[h // 2][h % 2]
        return self.legs[h - 2 * self.n_edges]

    def involution(self, h: int) -> int:
        """The partner half-edge at the same node; legs are fixed points."""
        if h < 2 * self.n_edges:
            return h ^ 1
        return h

    def is_leg(self, h: int) -> bool:
        return h >= 2 * self.n_edges

    def marking_of(self, h: int) -> int:
        """Marking number (1-based) of a leg half-edge."""
        if not self.is_leg(h):
            raise ValueError(f"half-edge {h} is not a leg")
        return h - 2 * self.n_edges + 1

    def leg_half_edge(self, marking: int) -> int:
        return 2 * self.n_edges + marking - 1

    def edge_half_edges(self, t: int) -> tuple[int, int]:
        return 2 * t, 2 * t + 1

    def vertex_half_edges(self, v: int) -> tuple[int, ...]:
        return tuple(h for h in range(self.n_half_edges) if self.half_edge_vertex(h) == v)

    def vertex_markings(self, v: int) -> tuple[int, ...]:
        return tuple(i + 1 for i, w in enumerate(self.legs) if w == v)

    def vertex_degree(self, v: int) -> int:
        """Number of half-edges (legs included) at vertex ``v``."""
        deg = sum(1 for u, w in self.edges for x in (u, w) if x == v)
        return deg + sum(1 for w in self.legs if w == v)

    # -- topology -----------------------------------------------------

    @property
    def total_genus(self) -> int:
        return sum(self.genera) + first_betti(self)

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n_vertices)}) == 1

    def bridges(self) -> set[int]:
        """Indices of edges whose removal disconnects the graph.

        Loops and parallel edges are never bridges.
        """
        mult: dict[tuple[int, int], int] = {}
        for u, v in self.edges:
            mult[(u, v)] = mult.get((u, v), 0) + 1
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(self.n_vertices)}
        for t, (u, v) in enumerate(self.edges):
            if u != v:
                adj[u].append((v, t))
                adj[v].append((u, t))
        disc = [-1] * self.n_vertices
        low = [0] * self.n_vertices
        out: set[int] = set()
        counter = itertools.count()

        def dfs(root: int) -> None:
            stack = [(root, -1, iter(adj[root]))]
            disc[root] = low[root] = next(counter)
            while stack:
                v, in_edge, it = stack[-1]
                advanced = False
                for w, t in it:
                    if t == in_edge:
                        continue
                    if disc[w] == -1:
                        disc[w] = low[w] = next(counter)
                        stack.append((w, t, iter(adj[w])))
                        advanced = True
                        break
                    low[v] = min(low[v], disc[w])
                if not advanced:
                    stack.pop()
                    if stack:
                        p, _, _ = stack[-1]
                        low[p] = min(low[p], low[v])
                        if low[v] > disc[p]:
                            u, w = self.edges[in_edge]
                            if mult[(u, w)] == 1:
                                out.add(in_edge)

        for v in range(self.n_vertices):
            if disc[v] == -1:
                dfs(v)
        return out

    def edge_side_markings(self, t: int) -> tuple[int, ...] | None:
        """Markings on the ``edges[t][0]`` side of a bridge, else ``None``."""
        if t not in self.bridges():
            return None
        u0 = self.edges[t][0]
        seen = {u0}
        stack = [u0]
        while stack:
            v = stack.pop()
            for s, (a, b) in enumerate(self.edges):
                if s == t:
                    continue
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return tuple(i + 1 for i, w in enumerate(self.legs) if w in seen)

    # -- canonical form -----------------------------------------------

    def canonical_key(self) -> bytes:
        return canonical_key(self)

    def __lt__(self, other: "StableGraph") -> bool:
        return self.canonical_key() < other.canonical_key()


def first_betti(graph: StableGraph) -> int:
    """First Betti number ``#edges - #vertices + 1`` of a connected graph."""
    return graph.n_edges - graph.n_vertices + 1


def validate(graph: StableGraph, g: int, n: int) -> str | None:
    """Check a graph against ambient ``(g, n)``.

    Returns ``None`` when everything holds, otherwise the name of the first
    violated condition followed by a short reason.  Conditions, in order:
    ``structure`` (indices in range), ``legs`` (marking count), ``connected``,
    ``stability`` (every vertex has ``2g_v - 2 + deg_v > 0``), ``genus``
    (vertex genera plus loop count add to ``g``).
    """
    V = graph.n_vertices
    if V == 0:
        return "structure: graph has no vertices"
    for u, v in graph.edges:
        if not (0 <= u < V and 0 <= v < V):
            return f"structure: edge endpoint ({u}, {v}) out of range"
    for i, v in enumerate(graph.legs):
        if not (0 <= v < V):
            return f"structure: leg {i + 1} attached to missing vertex {v}"
    if any(gv < 0 for gv in graph.genera):
        return "structure: negative vertex genus"
    if graph.n_legs != n:
        return f"legs: expected {n} markings, found {graph.n_legs}"
    if not graph.is_connected():
        return "connected: graph is not connected"
    for v in range(V):
        if 2 * graph.genera[v] - 2 + graph.vertex_degree(v) <= 0:
            return f"stability: vertex {v} has 2g - 2 + deg <= 0"
    if graph.total_genus != g:
        return f"genus: vertex genera and loops add to {graph.total_genus}, expected {g}"
    return None


# -- canonical relabeling ---------------------------------------------
#
# The canonical form minimizes the edge encoding over all vertex orders
# compatible with the vertex invariants.  Decorations ride along: a vertex
# color bundles genus, markings with their psi exponents, and the kappa
# multiset; every edge record carries the psi exponents of its two halves.


def _canonical_data(
    genera: tuple[int, ...],
    edges: tuple[tuple[int, int], ...],
    legs: tuple[int, ...],
    leg_psi: tuple[int, ...],
    edge_psi: tuple[tuple[int, int], ...],
    kappa: tuple[tuple[int, ...], ...],
):
    V = len(genera)
    colors = []
    for v in range(V):
        marks = tuple(
            (i + 1, leg_psi[i]) for i, w in enumerate(legs) if w == v
        )
        colors.append((genera[v], marks, kappa[v]))

    order = sorted(range(V), key=lambda v: colors[v])
    blocks: list[list[int]] = []
    for v in order:
        if blocks and colors[blocks[-1][0]] == colors[v]:
            blocks[-1].append(v)
        else:
            blocks.append([v])

    best = None
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        pos = [0] * V
        slot = 0
        for block in perms:
            for v in block:
                pos[v] = slot
                slot += 1
        records = []
        for t, (u, v) in enumerate(edges):
            pu, pv = edge_psi[t]
            nu, nv = pos[u], pos[v]
            if nu < nv:
                rec = (nu, nv, pu, pv)
            elif nu > nv:
                rec = (nv, nu, pv, pu)
            else:
                lo, hi = sorted((pu, pv))
                rec = (nu, nv, lo, hi)
            records.append(rec)
        cand = tuple(sorted(records))
        if best is None or cand < best[0]:
            best = (cand, tuple(pos))

    records, pos = best
    inv = [0] * V
    for old, new in enumerate(pos):
        inv[new] = old
    new_genera = tuple(genera[inv[p]] for p in range(V))
    new_kappa = tuple(kappa[inv[p]] for p in range(V))
    new_legs = tuple(pos[v] for v in legs)
    return new_genera, records, new_legs, leg_psi, new_kappa


def canonical_key(graph: StableGraph) -> bytes:
    """Deterministic byte string identifying the isomorphism class."""
    zero_pairs = tuple((0, 0) for _ in graph.edges)
    zero_legs = tuple(0 for _ in graph.legs)
    kappa = tuple(() for _ in graph.genera)
    data = _canonical_data(graph.genera, graph.edges, graph.legs, zero_legs, zero_pairs, kappa)
    g2, records, legs2, _, _ = data
    plain = tuple((a, b) for a, b, _, _ in records)
    return repr((g2, plain, legs2)).encode()


def canonical_form_decorated(
    graph: StableGraph,
    leg_psi: tuple[int, ...],
    edge_psi: tuple[tuple[int, int], ...],
    kappa: tuple[tuple[int, ...], ...],
):
    """Relabel a decorated graph into canonical form.

    ``leg_psi[i]`` is the psi exponent on marking ``i + 1``; ``edge_psi[t]``
    the exponents on the two halves of edge ``t`` in layout order; ``kappa[v]``
    a sorted tuple of kappa indices at vertex ``v``.  Returns the relabeled
    ``(graph, leg_psi, edge_psi, kappa, key)`` with decorations re-expressed
    in the new graph's layout.
    """
    kappa = tuple(tuple(sorted(k)) for k in kappa)
    new_genera, records, new_legs, new_leg_psi, new_kappa = _canonical_data(
        graph.genera, graph.edges, graph.legs, leg_psi, edge_psi, kappa
    )
    pairs = [(a, b) for a, b, _, _ in records]
    new_graph = StableGraph(new_genera, pairs, new_legs)
    # StableGraph sorts its edge list; records are already sorted with the
    # same comparison on the leading pair, and equal pairs stay grouped, so
    # psi pairs can be read off in order.  Within a group of parallel edges
    # the records themselves are sorted, fixing the order of psi pairs.
    new_edge_psi = tuple((pu, pv) for _, _, pu, pv in records)
    key = repr((new_genera, records, new_legs, new_leg_psi, new_kappa)).encode()
    return new_graph, new_leg_psi, new_edge_psi, new_kappa, key


def automorphism_order(graph: StableGraph) -> int:
    """Order of the automorphism group of the stable graph.

    Counts pairs of compatible vertex and half-edge permutations fixing the
    genera and every leg: each adjacency-preserving vertex symmetry lifts in
    ``prod_e m_e!`` ways over parallel classes, times ``2`` per loop.
    """
    V = graph.n_vertices
    mult: dict[tuple[int, int], int] = {}
    for u, v in graph.edges:
        mult[(u, v)] = mult.get((u, v), 0) + 1

    colors = [
        (graph.genera[v], graph.vertex_markings(v)) for v in range(V)
    ]
    blocks: dict[tuple, list[int]] = {}
    for v in range(V):
        blocks.setdefault(colors[v], []).append(v)

    def adjacency_ok(pos: dict[int, int]) -> bool:
        for (u, v), m in mult.items():
            nu, nv = pos[u], pos[v]
            if nu > nv:
                nu, nv = nv, nu
            if mult.get((nu, nv), 0) != m:
                return False
        return True

    n_perm = 0
    items = sorted(blocks.values())
    for perms in itertools.product(*(itertools.permutations(b) for b in items)):
        pos: dict[int, int] = {}
        for block, image in zip(items, perms):
            for v, w in zip(block, image):
                pos[v] = w
        if adjacency_ok(pos):
            n_perm += 1

    lifts = 1
    for (u, v), m in mult.items():
        lifts *= factorial(m)
        if u == v:
            lifts *= 2 ** m
    return n_perm * lifts


# -- enumeration ------------------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _connected_shape(V: int, shape: tuple[tuple[int, int], ...]) -> bool:
    if V == 1:
        return True
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in shape:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(V)}) == 1


@lru_cache(maxsize=None)
def enumerate_stable_graphs(g: int, n: int, max_edges: int | None = None) -> tuple[StableGraph, ...]:
    """All isomorphism classes of stable graphs of type ``(g, n)``.

    ``max_edges`` caps the edge count; by default all graphs appear, up to
    the dimension bound ``3g - 3 + n`` edges.  The result is deterministic,
    sorted by canonical key.  Examples: ``(0, 4)`` has 4 graphs with at most
    one edge, ``(1, 1)`` has 2, ``(2, 0)`` has 7.
    """
    if g < 0 or n < 0 or 3 * g - 3 + n < 0:
        raise ValueError(f"no stable curves of type (g, n) = ({g}, {n})")
    cap = 3 * g - 3 + n
    if max_edges is not None:
        cap = min(cap, max_edges)
    found: dict[bytes, StableGraph] = {}
    for E in range(cap + 1):
        for V in range(1, E + 2):
            b = E - V + 1
            if b < 0 or b > g:
                continue
            gsum = g - b
            pairs = [(u, v) for u in range(V) for v in range(u, V)]
            for shape in itertools.combinations_with_replacement(pairs, E):
                if not _connected_shape(V, shape):
                    continue
                degrees = [0] * V
                for u, v in shape:
                    degrees[u] += 1
                    degrees[v] += 1
                for genera in _compositions(gsum, V):
                    for legs in itertools.product(range(V), repeat=n):
                        stable = True
                        for v in range(V):
                            deg = degrees[v] + sum(1 for w in legs if w == v)
                            if 2 * genera[v] - 2 + deg <= 0:
                                stable = False
                                break
                        if not stable:
                            continue
                        graph = StableGraph(genera, shape, legs)
                        key = graph.canonical_key()
                        if key not in found:
                            found[key] = graph
    return tuple(found[k] for k in sorted(found))


# -- serialization ----------------------------------------------------

SCHEMA_GRAPH = "stablegraph/1"


def graph_to_json(graph: StableGraph) -> dict:
    """Plain-dict form of a graph, stable under round-trip."""
    return {
        "version": SCHEMA_GRAPH,
        "vertices": [
            {"genus": graph.genera[v], "half_edges": list(graph.vertex_half_edges(v))}
            for v in range(graph.n_vertices)
        ],
        "edges": [list(graph.edge_half_edges(t)) for t in range(graph.n_edges)],
        "legs": [
            {"half_edge": graph.leg_half_edge(i + 1), "marking": i + 1}
            for i in range(graph.n_legs)
        ],
    }


def graph_from_json(data: dict) -> StableGraph:
    """Rebuild a graph from its dict form (any consistent half-edge ids)."""
    if data.get("version") != SCHEMA_GRAPH:
        raise ValueError(f"unsupported graph schema: {data.get('version')!r}")
    owner: dict[int, int] = {}
    for v, rec in enumerate(data["vertices"]):
        for h in rec["half_edges"]:
            if h in owner:
                raise ValueError(f"half-edge {h} listed twice")
            owner[h] = v
    genera = [rec["genus"] for rec in data["vertices"]]
    edges = []
    for h1, h2 in data["edges"]:
        edges.append((owner[h1], owner[h2]))
    legs_by_marking: dict[int, int] = {}
    for rec in data["legs"]:
        legs_by_marking[rec["marking"]] = owner[rec["half_edge"]]
    n = len(legs_by_marking)
    if sorted(legs_by_marking) != list(range(1, n + 1)):
        raise ValueError("markings must be 1..n")
    legs = [legs_by_marking[i + 1] for i in range(n)]
    return StableGraph(genera, edges, legs)
