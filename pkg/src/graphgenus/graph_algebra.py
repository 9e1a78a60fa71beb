"""Rational linear combinations of oriented graphs modulo AS and IHX.

Vectors are stored on canonical basis graphs; inserting a presentation
runs it through canonical_form, which applies the antisymmetry law and
drops classes with an orientation-reversing automorphism.  The grading
of a purely trivalent graph is half its vertex count; the product is
disjoint union and the coproduct sums over ordered two-block splits of
the connected components.

IHX relations are generated by contracting every edge of every
trivalent graph of a degree to a four-valent corner and expanding it in
the three pair-splittings of the four gathered flags, each taken in an
even ordering of the contraction's flag sequence.  That convention
makes the three-term sum vanish under every metric Lie algebra weight
system (the Jacobi identity), which the oracle tests pin down.
"""
from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Iterable, Optional

from .graph_core import (
    Graph, OrientedGraph, canonical_form, concat, from_cyclic, graph_sort_key,
    theta, to_cyclic,
)


class AlgebraError(Exception):
    pass


class BoundExceeded(AlgebraError):
    pass


class DegreeMismatch(AlgebraError):
    pass


DEFAULT_MAX_K = 3


def degree_bound() -> int:
    """Configured half-vertex-count bound for exhaustive enumeration."""
    raw = os.environ.get("GRAPHGENUS_MAX_K")
    if raw is None:
        return DEFAULT_MAX_K
    try:
        return int(raw)
    except ValueError:
        raise BoundExceeded(f"GRAPHGENUS_MAX_K={raw!r} is not an integer") from None


def check_bound(k: int):
    bound = degree_bound()
    if k < 0:
        raise BoundExceeded(f"degree {k} is negative")
    if k > bound:
        raise BoundExceeded(f"degree {k} exceeds the configured bound {bound}")


class GraphVector:
    """Finite rational combination of canonical oriented graphs."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict[Graph, Fraction]] = None):
        self._terms: dict[Graph, Fraction] = {}
        if terms:
            for g, c in terms.items():
                if c:
                    self._terms[g] = Fraction(c)

    @staticmethod
    def zero() -> "GraphVector":
        return GraphVector()

    @staticmethod
    def unit() -> "GraphVector":
        """The empty graph with coefficient one."""
        return GraphVector.from_graph(Graph((), ()))

    @staticmethod
    def from_graph(g: Graph, coeff=1) -> "GraphVector":
        v = GraphVector()
        v.add_presentation(g, Fraction(coeff))
        return v

    def add_presentation(self, g: Graph, coeff: Fraction):
        """Insert a presentation; canonical_form supplies the sign."""
        if not coeff:
            return
        og = canonical_form(g)
        if og.sign_state == 0:
            return
        key = og.graph
        new = self._terms.get(key, Fraction(0)) + coeff * og.sign_state
        if new:
            self._terms[key] = new
        else:
            self._terms.pop(key, None)

    def items(self) -> list[tuple[Graph, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: graph_sort_key(kv[0]))

    def coefficient(self, g: Graph) -> Fraction:
        og = canonical_form(g)
        if og.sign_state == 0:
            return Fraction(0)
        return og.sign_state * self._terms.get(og.graph, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, GraphVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "GraphVector") -> "GraphVector":
        out = GraphVector(dict(self._terms))
        for g, c in other._terms.items():
            new = out._terms.get(g, Fraction(0)) + c
            if new:
                out._terms[g] = new
            else:
                out._terms.pop(g, None)
        return out

    def __neg__(self) -> "GraphVector":
        return GraphVector({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "GraphVector") -> "GraphVector":
        return self + (-other)

    def __mul__(self, scalar) -> "GraphVector":
        scalar = Fraction(scalar)
        if not scalar:
            return GraphVector()
        return GraphVector({g: c * scalar for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return "GraphVector(0)"
        bits = [f"{c}*[{g.valences}|{g.edges}]" for g, c in self.items()]
        return "GraphVector(" + " + ".join(bits) + ")"


def add(v1: GraphVector, v2: GraphVector) -> GraphVector:
    return v1 + v2


def scale(q, v: GraphVector) -> GraphVector:
    return v * Fraction(q)


def product(v1: GraphVector, v2: GraphVector) -> GraphVector:
    """Bilinear disjoint union."""
    out = GraphVector()
    for g1, c1 in v1._terms.items():
        for g2, c2 in v2._terms.items():
            out.add_presentation(concat(g1, g2), c1 * c2)
    return out


def power(v: GraphVector, m: int) -> GraphVector:
    out = GraphVector.unit()
    for _ in range(m):
        out = product(out, v)
    return out


def _component_subgraph(g: Graph, vertices: tuple[int, ...]) -> Graph:
    vset = set(vertices)
    relabel = {v: i for i, v in enumerate(vertices)}
    valences = tuple(g.valences[v] for v in vertices)
    edges = tuple((relabel[a], relabel[b]) for a, b in g.edges if a in vset)
    return Graph(valences, edges)


def _split(g: Graph, comps, chosen: set[int]) -> Graph:
    verts: list[int] = []
    for i, comp in enumerate(comps):
        if i in chosen:
            verts.extend(comp)
    verts.sort()
    return _component_subgraph(g, tuple(verts))


def _shuffle_sign(g: Graph, chosen_verts: set[int]) -> int:
    """Parity of moving the chosen vertices in front of the rest,
    keeping relative order on both sides."""
    inversions = 0
    unchosen_seen = 0
    for v in range(g.n):
        if v in chosen_verts:
            inversions += unchosen_seen
        else:
            unchosen_seen += 1
    return -1 if inversions % 2 else 1


def coproduct(v: GraphVector) -> dict[tuple[Graph, Graph], Fraction]:
    """Sum over ordered splits of the labeled components.

    Each side inherits the relative vertex order and edge directions;
    the term's sign is the parity of the shuffle that brings the chosen
    components' vertices in front of the rest.  Keys are pairs of
    canonical graphs.
    """
    out: dict[tuple[Graph, Graph], Fraction] = {}
    for g, c in v._terms.items():
        comps = g.components()
        r = len(comps)
        for bits in range(1 << r):
            chosen = {i for i in range(r) if bits >> i & 1}
            chosen_verts = {v for i in chosen for v in comps[i]}
            left = canonical_form(_split(g, comps, chosen))
            right = canonical_form(_split(g, comps, set(range(r)) - chosen))
            if left.sign_state == 0 or right.sign_state == 0:
                continue
            sign = _shuffle_sign(g, chosen_verts)
            key = (left.graph, right.graph)
            val = out.get(key, Fraction(0)) \
                + c * sign * left.sign_state * right.sign_state
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def trivalent_part(v: GraphVector) -> GraphVector:
    return GraphVector({g: c for g, c in v._terms.items() if g.is_trivalent})


# ---------------------------------------------------------------------------
# enumeration


def enumerate_trivalent(k: int) -> list[OrientedGraph]:
    """All loop-free trivalent multigraphs on 2k vertices up to
    isomorphism, canonical presentations, AS-zero ones flagged by
    sign_state 0 (others +1), sorted by graph key."""
    check_bound(k)
    n = 2 * k
    if n == 0:
        return [OrientedGraph(Graph((), ()), 1)]
    found: dict[Graph, OrientedGraph] = {}
    remaining = [3] * n

    def place(v: int, start: int, edges: list[tuple[int, int]]):
        if remaining[v] == 0:
            if v == n - 1:
                g = Graph((3,) * n, tuple(edges))
                og = canonical_form(g)
                if og.graph not in found:
                    found[og.graph] = OrientedGraph(
                        og.graph, 0 if og.sign_state == 0 else 1)
            else:
                place(v + 1, v + 2, edges)
            return
        if start >= n:
            return
        # multiplicity of edge (v, start): 0..min(remaining)
        top = min(remaining[v], remaining[start])
        for mult in range(top, -1, -1):
            remaining[v] -= mult
            remaining[start] -= mult
            edges.extend([(v, start)] * mult)
            place(v, start + 1, edges)
            for _ in range(mult):
                edges.pop()
            remaining[v] += mult
            remaining[start] += mult

    place(0, 1, [])
    return sorted(found.values(), key=lambda og: graph_sort_key(og.graph))


# ---------------------------------------------------------------------------
# IHX relations


def _ihx_terms_for_edge(g: Graph, t: int) -> list[GraphVector]:
    """Three expansion terms from contracting edge t of trivalent g."""
    cyclic, _ = to_cyclic(g)
    x, y = g.edges[t]
    cx = list(cyclic[x])
    cy = list(cyclic[y])
    while cx[-1] != (t, 0):
        cx.append(cx.pop(0))
    while cy[-1] != (t, 1):
        cy.append(cy.pop(0))
    f1, f2 = cx[0], cx[1]
    f3, f4 = cy[0], cy[1]
    # even reorderings of (f1 f2 f3 f4); each pair becomes the flags at
    # one end of the re-inserted edge
    splittings = [((f1, f2), (f3, f4)),
                  ((f1, f3), (f4, f2)),
                  ((f1, f4), (f2, f3))]
    terms = []
    for (a1, a2), (b1, b2) in splittings:
        ends = [list(e) for e in g.edges]
        for e, end in (a1, a2):
            ends[e][end] = x
        for e, end in (b1, b2):
            ends[e][end] = y
        ends[t] = [x, y]
        if any(p == q for p, q in ends):
            terms.append(GraphVector.zero())  # expansion makes a self-loop
            continue
        new_edges = tuple((p, q) for p, q in ends)
        g2 = Graph(g.valences, new_edges)
        new_cyclic = dict(cyclic)
        new_cyclic[x] = (a1, a2, (t, 0))
        new_cyclic[y] = (b1, b2, (t, 1))
        s = from_cyclic(g2, new_cyclic)
        terms.append(GraphVector.from_graph(g2, s))
    return terms


def _raw_ihx_relations(k: int) -> list[GraphVector]:
    """Every relation from contracting an edge of a 2k-vertex trivalent
    graph: the three expansions of the four-valent corner sum to zero.
    Zero and duplicate relations are dropped."""
    check_bound(k)
    seen: set = set()
    out: list[GraphVector] = []
    for og in enumerate_trivalent(k):
        g = og.graph
        for t in range(len(g.edges)):
            total = GraphVector.zero()
            for term in _ihx_terms_for_edge(g, t):
                total = total + term
            if not total:
                continue
            items = total.items()
            lead = items[0][1]
            normal = tuple((gg, c / lead) for gg, c in items)
            if normal in seen:
                continue
            seen.add(normal)
            out.append(total)
    return out


class RelationSet:
    """IHX relations of one degree plus a row-reduced basis of their span."""

    def __init__(self, k: int, relations: Iterable[GraphVector], columns: list[Graph]):
        self.k = k
        self.relations = list(relations)
        relations = self.relations
        self.columns = list(columns)
        self.col_index = {g: i for i, g in enumerate(self.columns)}
        rows: list[dict[int, Fraction]] = []
        for rel in relations:
            row = {self.col_index[g]: c for g, c in rel.items()}
            rows.append(row)
        self.rows: list[dict[int, Fraction]] = []
        self.pivots: list[int] = []
        for row in rows:
            row = self._eliminate(row)
            if not row:
                continue
            pivot = min(row)
            inv = 1 / row[pivot]
            row = {j: c * inv for j, c in row.items()}
            # keep the basis fully reduced
            for i, existing in enumerate(self.rows):
                if pivot in existing:
                    factor = existing[pivot]
                    self.rows[i] = _row_sub(existing, row, factor)
            self.rows.append(row)
            self.pivots.append(pivot)
        order = sorted(range(len(self.rows)), key=lambda i: self.pivots[i])
        self.rows = [self.rows[i] for i in order]
        self.pivots = [self.pivots[i] for i in order]

    def _eliminate(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        for pivot, basis_row in zip(self.pivots, self.rows):
            if pivot in row:
                row = _row_sub(row, basis_row, row[pivot])
        return row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce_vector(self, v: GraphVector) -> GraphVector:
        row: dict[int, Fraction] = {}
        for g, c in v.items():
            j = self.col_index.get(g)
            if j is None:
                raise DegreeMismatch(
                    "vector contains a graph outside the degree's trivalent basis")
            row[j] = c
        row = self._eliminate(row)
        return GraphVector({self.columns[j]: c for j, c in row.items()})


def _row_sub(row: dict[int, Fraction], other: dict[int, Fraction],
             factor: Fraction) -> dict[int, Fraction]:
    out = dict(row)
    for j, c in other.items():
        new = out.get(j, Fraction(0)) - factor * c
        if new:
            out[j] = new
        else:
            out.pop(j, None)
    return out


_RELATION_CACHE: dict[int, RelationSet] = {}


def ihx_relations(k: int) -> RelationSet:
    """Relations of degree k, cached, with a deterministic reduced basis."""
    check_bound(k)  # enforced even on cache hits so the knob stays predictable
    if k not in _RELATION_CACHE:
        columns = [og.graph for og in enumerate_trivalent(k) if og.sign_state != 0]
        _RELATION_CACHE[k] = RelationSet(k, _raw_ihx_relations(k), columns)
    return _RELATION_CACHE[k]


def reduce(v: GraphVector, relations: RelationSet | None = None) -> GraphVector:
    """Normal form of a purely trivalent homogeneous vector modulo IHX."""
    if relations is None:
        sizes = {g.n for g, _ in v.items()}
        if not sizes:
            return v
        if len(sizes) != 1:
            raise DegreeMismatch("vector is not homogeneous in vertex count")
        (n,) = sizes
        if n % 2:
            raise DegreeMismatch("odd vertex count")
        relations = ihx_relations(n // 2)
    k = relations.k
    for g, _ in v.items():
        if not g.is_trivalent:
            raise DegreeMismatch("vector has univalent vertices")
        if g.n != 2 * k:
            raise DegreeMismatch(f"graph on {g.n} vertices in degree {k}")
    return relations.reduce_vector(v)


def dimension(k: int) -> int:
    """dim of degree-k trivalent graphs modulo AS and IHX."""
    rs = ihx_relations(k)
    return len(rs.columns) - rs.rank


def theta_vector() -> GraphVector:
    return GraphVector.from_graph(theta())


# ---------------------------------------------------------------------------
# vector text format

from .graph_core import GraphParseError, _TokenStream, _tokenize, format_graph, parse_graph_block  # noqa: E402


def format_vector(v: GraphVector) -> str:
    lines = [f"coeff {c} {format_graph(g)}" for g, c in v.items()]
    if not lines:
        return "coeff 0 graph { vertices 0 ; }"
    return "\n".join(lines)


def parse_vector(text: str) -> GraphVector:
    """Read a vector as written by format_vector.

    Also accepts bare graph blocks (coefficient one) and the
    normalize output (a leading 'sign' line before a block).
    """
    stream = _TokenStream(_tokenize(text))
    out = GraphVector.zero()
    while stream.peek() is not None:
        tok = stream.peek()
        coeff = Fraction(1)
        if tok == "coeff":
            stream.next()
            lineno = stream.line()
            raw = stream.next()
            try:
                coeff = Fraction(raw)
            except ValueError:
                raise GraphParseError(f"bad rational {raw!r}", lineno) from None
        elif tok == "sign":
            stream.next()
            lineno = stream.line()
            raw = stream.next()
            if raw not in ("+1", "-1", "0", "1"):
                raise GraphParseError(f"bad sign {raw!r}", lineno)
            coeff = Fraction(raw.lstrip("+"))
        g = parse_graph_block(stream)
        if g.n == 0 and coeff == 0:
            continue
        out.add_presentation(g, coeff)
    return out
