"""Overlap graphs of texts and their recognition.

The overlap graph of a text has one vertex per state and an edge for every
*non-orthogonal* pair, so classical texts are edgeless and texts without
orthogonal pairs are complete.  Translatability only depends on whether
that graph is split with pendants: the vertex set divides into an
independent part V1 and a maximal complete part V2, and in every such
division each V1 vertex has at most one neighbour.  Equivalently, the
graph avoids four induced subgraphs: two disjoint edges, the 4-cycle, the
diamond (K4 minus an edge), and the 5-cycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .texts import Text, ZERO_TOL


class GraphError(ValueError):
    pass


class NotConnected(GraphError):
    pass


class NotWellSplit(GraphError):
    pass


class InvalidShape(GraphError):
    pass


class TooLarge(GraphError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1 with edges as (i, j), i < j."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for (i, j) in self.edges:
            if not (0 <= i < j < self.n):
                raise GraphError(f"bad edge ({i}, {j}) for n = {self.n}")

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        return (min(i, j), max(i, j)) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for (i, j) in self.edges if v in (i, j))

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(j if i == v else i for (i, j) in self.edges if v in (i, j))


def make_graph(n: int, edges) -> SimpleGraph:
    """Normalize an edge list into a SimpleGraph."""
    if n < 1:
        raise GraphError("graph needs at least one vertex")
    norm = set()
    for (i, j) in edges:
        if i == j:
            raise GraphError(f"self-loop at {i}")
        norm.add((min(i, j), max(i, j)))
    return SimpleGraph(n=n, edges=frozenset(norm))


def graph_of_text(t: Text) -> SimpleGraph:
    """Overlap graph: edge (i, j) iff |z_ij| > 1e-9."""
    edges = [(i, j) for i in range(t.n) for j in range(i + 1, t.n)
             if abs(t.gram[i, j]) > ZERO_TOL]
    return SimpleGraph(n=t.n, edges=frozenset(edges))


def connected_components(g: SimpleGraph) -> list[frozenset[int]]:
    """Components as vertex sets, ordered by smallest contained vertex."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        stack = [root]
        seen[root] = True
        comp = {root}
        while stack:
            v = stack.pop()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def induced_subgraph(g: SimpleGraph, vertices) -> tuple[SimpleGraph, list[int]]:
    """Induced subgraph on `vertices` (relabeled 0..k-1) plus the vertex map."""
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[i], pos[j]) for (i, j) in g.edges if i in pos and j in pos]
    return SimpleGraph(n=len(vs), edges=frozenset(edges)), vs


# --- forbidden induced subgraphs ------------------------------------------

# Edge slot order for 4-vertex masks: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
_PAIRS4 = list(itertools.combinations(range(4), 2))
_PAIRS5 = list(itertools.combinations(range(5), 2))


def _mask_of(edges, pairs) -> int:
    slot = {p: k for k, p in enumerate(pairs)}
    m = 0
    for (i, j) in edges:
        m |= 1 << slot[(min(i, j), max(i, j))]
    return m


def _orbit(edges, nverts, pairs) -> set[int]:
    out = set()
    for perm in itertools.permutations(range(nverts)):
        out.add(_mask_of([(perm[i], perm[j]) for (i, j) in edges], pairs))
    return out


def _build_tables():
    kinds4 = {}
    for m in _orbit([(0, 1), (2, 3)], 4, _PAIRS4):
        kinds4[m] = "TwoK2"
    for m in _orbit([(0, 1), (1, 2), (2, 3), (0, 3)], 4, _PAIRS4):
        kinds4[m] = "C4"
    diamond = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    for m in _orbit(diamond, 4, _PAIRS4):
        kinds4[m] = "Diamond"
    c5 = {(m) for m in _orbit([(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], 5, _PAIRS5)}
    return kinds4, c5


_KINDS4, _C5_MASKS = _build_tables()


@dataclass(frozen=True)
class ForbiddenWitness:
    """An induced subgraph certifying non-well-splitness.

    kind is one of 'TwoK2', 'C4', 'Diamond', 'C5'; vertices are the
    (sorted) vertex indices inducing it.
    """

    kind: str
    vertices: tuple[int, ...]


class GraphClass(Enum):
    INDEPENDENT = "Independent"
    WELL_SPLIT = "WellSplit"
    SPLIT_NOT_WELL_SPLIT = "SplitNotWellSplit"
    NOT_SPLIT = "NotSplit"


@dataclass(frozen=True)
class Splitting:
    """Partition into an independent set v1 and a maximal complete set v2."""

    v1: frozenset[int]
    v2: frozenset[int]


def _scan_forbidden(g: SimpleGraph):
    """First induced 2K2/C4, first diamond, first C5, in subset order."""
    first_split = None
    first_diamond = None
    adj = [g.neighbors(v) for v in range(g.n)]
    for quad in itertools.combinations(range(g.n), 4):
        mask = 0
        for k, (a, b) in enumerate(_PAIRS4):
            if quad[b] in adj[quad[a]]:
                mask |= 1 << k
        kind = _KINDS4.get(mask)
        if kind in ("TwoK2", "C4") and first_split is None:
            first_split = ForbiddenWitness(kind=kind, vertices=quad)
        elif kind == "Diamond" and first_diamond is None:
            first_diamond = ForbiddenWitness(kind=kind, vertices=quad)
        if first_split is not None and first_diamond is not None:
            break
    first_c5 = None
    if first_split is None:
        for quint in itertools.combinations(range(g.n), 5):
            mask = 0
            for k, (a, b) in enumerate(_PAIRS5):
                if quint[b] in adj[quint[a]]:
                    mask |= 1 << k
            if mask in _C5_MASKS:
                first_c5 = ForbiddenWitness(kind="C5", vertices=quint)
                break
    return first_split, first_diamond, first_c5


def maximal_cliques(g: SimpleGraph) -> list[frozenset[int]]:
    """All maximal cliques (Bron-Kerbosch), in a deterministic order."""
    adj = [g.neighbors(v) for v in range(g.n)]
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(frozenset(), frozenset(range(g.n)), frozenset())
    return sorted(out, key=lambda c: sorted(c))


def all_splittings(g: SimpleGraph) -> list[Splitting]:
    """Every partition (v1, v2) with v2 a maximal clique and v1 independent."""
    out = []
    for clique in maximal_cliques(g):
        rest = frozenset(range(g.n)) - clique
        if all(not g.has_edge(i, j) for i, j in itertools.combinations(sorted(rest), 2)):
            out.append(Splitting(v1=rest, v2=clique))
    return out


def _deterministic_splitting(g: SimpleGraph) -> Splitting | None:
    """Splitting whose v2 contains the highest-degree vertex, ties by index,
    then by lexicographically smallest v2."""
    cands = all_splittings(g)
    if not cands:
        return None
    hub = min(range(g.n), key=lambda v: (-g.degree(v), v))
    cands.sort(key=lambda s: (hub not in s.v2, sorted(s.v2)))
    return cands[0]


def split_by_definition(g: SimpleGraph) -> tuple[bool, bool]:
    """(is_split, is_well_split) straight from the definitions.

    Split: some maximal clique has an independent complement.  Well-split:
    split, and in *every* splitting each v1 vertex has degree at most one.
    Independent of the forbidden-subgraph scan; used as its cross-check.
    """
    splittings = all_splittings(g)
    if not splittings:
        return False, False
    well = all(g.degree(v) <= 1 for s in splittings for v in s.v1)
    return True, well


@dataclass(frozen=True)
class RecognitionResult:
    klass: GraphClass
    splitting: Splitting | None
    witness: ForbiddenWitness | None


def recognize(g: SimpleGraph) -> RecognitionResult:
    """Classify a graph by induced-forbidden-subgraph scan.

    Independent (no edges), WellSplit, SplitNotWellSplit (an induced
    diamond but none of 2K2/C4/C5), or NotSplit.  When split, a
    deterministic Splitting is attached; when not well-split, a
    ForbiddenWitness is attached.
    """
    first_split, first_diamond, first_c5 = _scan_forbidden(g)
    not_split_witness = first_split if first_split is not None else first_c5
    if not_split_witness is not None:
        return RecognitionResult(GraphClass.NOT_SPLIT, None, not_split_witness)
    splitting = _deterministic_splitting(g)
    if splitting is None:
        raise GraphError("internal: scan says split but no splitting exists")
    if first_diamond is not None:
        return RecognitionResult(GraphClass.SPLIT_NOT_WELL_SPLIT, splitting, first_diamond)
    if not g.edges:
        return RecognitionResult(GraphClass.INDEPENDENT, splitting, None)
    # Cross-check the scan against the chosen splitting.
    if any(g.degree(v) > 1 for v in splitting.v1):
        raise GraphError("internal: forbidden scan and splitting check disagree")
    return RecognitionResult(GraphClass.WELL_SPLIT, splitting, None)


@dataclass(frozen=True)
class WellSplitShape:
    """Parameter triple of a connected well-split graph.

    n2 clique vertices w_1..w_{n2}; the first `ell` of them carry
    m_1 >= ... >= m_ell pendant vertices.  `labels` maps each original
    vertex to its role label ('w3' or 'v2,1').
    """

    n2: int
    ell: int
    m: tuple[int, ...]
    labels: dict[int, str] = field(compare=False, default_factory=dict)


def parameterize(g: SimpleGraph) -> WellSplitShape:
    """Extract (n2, ell, m) from a connected well-split graph with n >= 2."""
    if g.n < 2:
        raise InvalidShape("parameterization needs at least two vertices")
    if len(connected_components(g)) != 1:
        raise NotConnected("parameterization needs a connected graph")
    rec = recognize(g)
    if rec.klass not in (GraphClass.WELL_SPLIT, GraphClass.INDEPENDENT):
        raise NotWellSplit(f"graph is {rec.klass.value}")
    split = rec.splitting
    pend_of = {}
    for v in sorted(split.v1):
        nb = g.neighbors(v)
        if len(nb) != 1:
            raise NotWellSplit(f"vertex {v} outside the clique has degree {len(nb)}")
        pend_of.setdefault(next(iter(nb)), []).append(v)
    clique = sorted(split.v2)
    order = sorted(clique, key=lambda w: (-len(pend_of.get(w, [])), w))
    m = tuple(len(pend_of[w]) for w in order if w in pend_of)
    labels = {}
    for i, w in enumerate(order, start=1):
        labels[w] = f"w{i}"
        for j, v in enumerate(sorted(pend_of.get(w, [])), start=1):
            labels[v] = f"v{i},{j}"
    return WellSplitShape(n2=len(clique), ell=len(m), m=m, labels=labels)


def shape_to_graph(shape: WellSplitShape) -> SimpleGraph:
    """Build the canonical graph of a shape: clique 0..n2-1, then pendants.

    Pendants of w_i occupy consecutive indices after the clique, grouped by
    i.  Raises InvalidShape for ell > n2, non-positive m, non-increasing
    violations are tolerated, and for n2 = 1 with pendants (that graph is a
    star whose canonical shape has n2 = 2).
    """
    if shape.n2 < 1:
        raise InvalidShape("n2 must be at least 1")
    if shape.ell > shape.n2 or shape.ell < 0:
        raise InvalidShape(f"ell = {shape.ell} exceeds n2 = {shape.n2}")
    if len(shape.m) != shape.ell:
        raise InvalidShape("len(m) must equal ell")
    if any(mj <= 0 for mj in shape.m):
        raise InvalidShape("pendant counts must be positive")
    if shape.n2 == 1 and shape.ell >= 1:
        raise InvalidShape("a lone clique vertex cannot carry pendants")
    edges = [(i, j) for i in range(shape.n2) for j in range(i + 1, shape.n2)]
    nxt = shape.n2
    for i in range(shape.ell):
        for _ in range(shape.m[i]):
            edges.append((i, nxt))
            nxt += 1
    return SimpleGraph(n=nxt, edges=frozenset(edges))


def graphs_isomorphic(a: SimpleGraph, b: SimpleGraph) -> bool:
    """Backtracking isomorphism test for graphs with at most 10 vertices."""
    if a.n > 10 or b.n > 10:
        raise TooLarge("isomorphism test limited to 10 vertices")
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    da = sorted(a.degree(v) for v in range(a.n))
    db = sorted(b.degree(v) for v in range(b.n))
    if da != db:
        return False
    adj_a = [a.neighbors(v) for v in range(a.n)]
    adj_b = [b.neighbors(v) for v in range(b.n)]
    order = sorted(range(a.n), key=lambda v: -len(adj_a[v]))
    mapping = {}
    used = set()

    def extend(k: int) -> bool:
        if k == a.n:
            return True
        v = order[k]
        for w in range(b.n):
            if w in used or len(adj_b[w]) != len(adj_a[v]):
                continue
            ok = True
            for u in mapping:
                if (u in adj_a[v]) != (mapping[u] in adj_b[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)
