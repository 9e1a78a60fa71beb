"""Oriented unitrivalent multigraphs with exact sign bookkeeping.

A graph is stored as a *presentation*: vertex labels 0..n-1 double as
the vertex ordering, and every edge is a directed pair (tail, head).
That data is one of the two equivalent orientation encodings (vertex
order + edge directions); the other encoding is a cyclic order of the
three flags at every trivalent vertex.  A flag is (edge index, end)
with end 0 = tail, 1 = head.

Conversion between the encodings is a permutation-parity computation
between two orderings of the full flag set:

* edge expansion: flags listed edge by edge, tail before head;
* vertex expansion: flags grouped by vertex in label order, each
  trivalent block in its cyclic order (univalent blocks are single
  flags and carry no local data).

Blocks at a vertex have odd size (1 or 3), so permuting vertices moves
the parity by the sign of the permutation, and reversing one edge
flips it; that is exactly the sign law of the homology of oriented
graphs.  Reorderings of the edge list move flags in blocks of two and
never change the parity, which is why the edge list order is not part
of the orientation data.

Self-loops are rejected at construction; operations that would create
one report it so callers can drop the term as zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

Flag = tuple[int, int]


class GraphError(Exception):
    """Base class for graph construction and orientation errors."""


class SelfLoop(GraphError):
    pass


class ValenceMismatch(GraphError):
    pass


class BadIndex(GraphError):
    pass


class OddWheel(GraphError):
    pass


class InvalidOrientation(GraphError):
    pass


def perm_sign(perm: list[int]) -> int:
    """Sign of a permutation given as the list of images of 0..n-1."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Graph:
    """Unitrivalent multigraph presentation (labels = vertex order)."""

    valences: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.valences)

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def legs(self) -> tuple[int, ...]:
        """Univalent vertices, ascending."""
        return tuple(v for v, k in enumerate(self.valences) if k == 1)

    @property
    def is_trivalent(self) -> bool:
        return all(k == 3 for k in self.valences)

    def flags_at(self, v: int) -> list[Flag]:
        out = []
        for e, (a, b) in enumerate(self.edges):
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, by least vertex."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda t: t[0])


def make_graph(vertex_count: int,
               valences: Iterable[int],
               edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Validated constructor for a unitrivalent presentation."""
    valences = tuple(valences)
    edges = tuple((int(a), int(b)) for a, b in edge_list)
    if vertex_count != len(valences):
        raise ValenceMismatch(
            f"vertex count {vertex_count} != {len(valences)} valence entries")
    for v, k in enumerate(valences):
        if k not in (1, 3):
            raise ValenceMismatch(f"vertex {v} has valence {k}, expected 1 or 3")
    counts = [0] * vertex_count
    for a, b in edges:
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise BadIndex(f"edge ({a}, {b}) references a missing vertex")
        if a == b:
            raise SelfLoop(f"edge ({a}, {b}) is a self-loop")
        counts[a] += 1
        counts[b] += 1
    for v, k in enumerate(valences):
        if counts[v] != k:
            raise ValenceMismatch(
                f"vertex {v} declared valence {k} but has {counts[v]} incidences")
    return Graph(valences, edges)


def empty_graph() -> Graph:
    return Graph((), ())


def line() -> Graph:
    """Single edge with two univalent ends."""
    return Graph((1, 1), ((0, 1),))


def theta() -> Graph:
    """Two trivalent vertices joined by a triple edge."""
    return Graph((3, 3), ((0, 1), (0, 1), (0, 1)))


# ---------------------------------------------------------------------------
# orientation encodings


def _flag_sequences(g: Graph, cyclic: dict[int, tuple[Flag, ...]] | None = None
                    ) -> tuple[list[Flag], list[Flag]]:
    edge_seq: list[Flag] = []
    for e in range(len(g.edges)):
        edge_seq.append((e, 0))
        edge_seq.append((e, 1))
    at: dict[int, list[Flag]] = {v: [] for v in range(g.n)}
    for e, (a, b) in enumerate(g.edges):
        at[a].append((e, 0))
        at[b].append((e, 1))
    vertex_seq: list[Flag] = []
    for v in range(g.n):
        if cyclic is not None and v in cyclic:
            vertex_seq.extend(cyclic[v])
        else:
            vertex_seq.extend(sorted(at[v]))
    return edge_seq, vertex_seq


def to_cyclic(g: Graph) -> tuple[dict[int, tuple[Flag, ...]], int]:
    """Cyclic data of the stored presentation.

    Returns (cyclic orders at trivalent vertices, sign) such that the
    presentation's orientation equals sign times the orientation the
    cyclic data describes.
    """
    edge_seq, vertex_seq = _flag_sequences(g)
    pos = {f: i for i, f in enumerate(edge_seq)}
    sign = perm_sign([pos[f] for f in vertex_seq])
    cyclic: dict[int, tuple[Flag, ...]] = {}
    at: dict[int, list[Flag]] = {v: [] for v in range(g.n)}
    for e, (a, b) in enumerate(g.edges):
        at[a].append((e, 0))
        at[b].append((e, 1))
    for v in range(g.n):
        if g.valences[v] == 3:
            cyclic[v] = tuple(sorted(at[v]))
    return cyclic, sign


def from_cyclic(g: Graph, cyclic: dict[int, tuple[Flag, ...]]) -> int:
    """Sign s with: orientation(cyclic data) = s * orientation(g as stored).

    ``g`` supplies the structure (and stored directions); ``cyclic``
    supplies a flag triple for every trivalent vertex.  Any rotation of
    a triple describes the same orientation.
    """
    edge_seq, vertex_seq = _flag_sequences(g, cyclic)
    pos = {f: i for i, f in enumerate(edge_seq)}
    if sorted(vertex_seq) != sorted(edge_seq):
        raise InvalidOrientation("cyclic data does not list each flag exactly once")
    return perm_sign([pos[f] for f in vertex_seq])


@dataclass(frozen=True)
class EdgeOrderOrientation:
    """Vertex ordering plus a direction (+1 stored / -1 reversed) per edge."""

    vertex_order: tuple[int, ...]
    edge_directions: tuple[int, ...]


@dataclass(frozen=True)
class CyclicOrientation:
    """Cyclic flag orders at trivalent vertices plus a univalent ordering.

    The univalent ordering is carried for round trips only; univalent
    flags span one-dimensional local factors, so it never affects signs.
    """

    cyclic: tuple[tuple[int, tuple[Flag, Flag, Flag]], ...]
    univalent_order: tuple[int, ...]


def _reference_cyclic(g: Graph) -> CyclicOrientation:
    cyc, _ = to_cyclic(g)
    return CyclicOrientation(tuple(sorted((v, t) for v, t in cyc.items())),
                             g.legs())


def _raw_sign_of_edge_order(g: Graph, o: EdgeOrderOrientation) -> int:
    if sorted(o.vertex_order) != list(range(g.n)):
        raise InvalidOrientation("vertex_order is not a permutation of the labels")
    if len(o.edge_directions) != len(g.edges) or \
            any(d not in (1, -1) for d in o.edge_directions):
        raise InvalidOrientation("edge_directions must be +-1 per edge")
    edge_seq: list[Flag] = []
    for e, d in enumerate(o.edge_directions):
        pair = [(e, 0), (e, 1)]
        if d == -1:
            pair.reverse()
        edge_seq.extend(pair)
    at: dict[int, list[Flag]] = {v: [] for v in range(g.n)}
    for e, (a, b) in enumerate(g.edges):
        at[a].append((e, 0))
        at[b].append((e, 1))
    vertex_seq: list[Flag] = []
    for v in o.vertex_order:
        vertex_seq.extend(sorted(at[v]))
    pos = {f: i for i, f in enumerate(edge_seq)}
    return perm_sign([pos[f] for f in vertex_seq])


def convert_orientation(g: Graph, orientation) -> tuple[object, int]:
    """Convert between the two orientation encodings.

    Returns (other encoding's base representative, sign) where the sign
    relates the input to the returned representative.  The identity
    vertex order with stored directions and the sorted-flag cyclic data
    are declared a matching pair of sign +1, so converting either base
    representative yields +1 and round trips compose to +1.
    """
    if isinstance(orientation, EdgeOrderOrientation):
        identity = EdgeOrderOrientation(tuple(range(g.n)), (1,) * len(g.edges))
        rel = _raw_sign_of_edge_order(g, orientation) * _raw_sign_of_edge_order(g, identity)
        return _reference_cyclic(g), rel
    if isinstance(orientation, CyclicOrientation):
        ref = _reference_cyclic(g)
        given = dict(orientation.cyclic)
        flips = 1
        for v, ref_triple in ref.cyclic:
            if v not in given:
                raise InvalidOrientation(f"missing cyclic order at vertex {v}")
            triple = given.pop(v)
            if sorted(triple) != sorted(ref_triple):
                raise InvalidOrientation(f"wrong flag set at vertex {v}")
            pos = {f: i for i, f in enumerate(ref_triple)}
            flips *= perm_sign([pos[f] for f in triple])
        if given:
            raise InvalidOrientation("cyclic data at non-trivalent vertices")
        if sorted(orientation.univalent_order) != list(g.legs()):
            raise InvalidOrientation("univalent_order must list the legs")
        identity = EdgeOrderOrientation(tuple(range(g.n)), (1,) * len(g.edges))
        return identity, flips
    raise InvalidOrientation(f"unknown orientation encoding {type(orientation)!r}")


# ---------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True)
class OrientedGraph:
    """Canonical presentation plus the sign relating the input to it.

    sign_state 0 marks a graph with an orientation-reversing
    automorphism: its class is zero in the homology.
    """

    graph: Graph
    sign_state: int


_CANON_CACHE: dict[Graph, OrientedGraph] = {}


def canonical_form(g: Graph) -> OrientedGraph:
    """Least relabeled presentation, with the relating sign.

    The canonical presentation sorts valences ascending (so univalent
    vertices take the low labels), directs every edge low -> high and
    lists edges sorted.  The search walks all label assignments, pruned
    level by level on the partial adjacency key; every assignment that
    attains the least key contributes its sign, and seeing both signs
    means the class is zero.
    """
    cached = _CANON_CACHE.get(g)
    if cached is not None:
        return cached

    n = g.n
    base_sign = 1
    norm_edges = []
    for a, b in g.edges:
        if a > b:
            a, b = b, a
            base_sign = -base_sign
        norm_edges.append((a, b))

    if n == 0:
        result = OrientedGraph(Graph((), ()), base_sign)
        _CANON_CACHE[g] = result
        return result

    neighbors: list[list[int]] = [[] for _ in range(n)]
    for a, b in norm_edges:
        neighbors[a].append(b)
        neighbors[b].append(a)

    univalent = [v for v in range(n) if g.valences[v] == 1]
    trivalent = [v for v in range(n) if g.valences[v] == 3]
    slots = [1] * len(univalent) + [3] * len(trivalent)

    best_key: list[tuple[int, ...]] | None = None
    best_signs: set[int] = set()
    assigned_pos: dict[int, int] = {}
    prefix: list[tuple[int, ...]] = []

    def level_key(v: int) -> tuple[int, ...]:
        return tuple(sorted(assigned_pos[u] for u in neighbors[v] if u in assigned_pos))

    def complete_sign() -> int:
        perm = [assigned_pos[v] for v in range(n)]
        sgn = perm_sign(perm)
        reversals = sum(1 for a, b in norm_edges if assigned_pos[a] > assigned_pos[b])
        return sgn * (-1 if reversals % 2 else 1)

    def prefix_state() -> int:
        """-1 prefix beats best, 0 equal so far, +1 prefix already loses.

        Recomputed at every node because the best key can move while a
        subtree is being explored.
        """
        if best_key is None:
            return -1
        for i, kv in enumerate(prefix):
            if kv < best_key[i]:
                return -1
            if kv > best_key[i]:
                return 1
        return 0

    def descend(depth: int):
        nonlocal best_key, best_signs
        if depth == n:
            key = list(prefix)
            if best_key is None or key < best_key:
                best_key = key
                best_signs = {complete_sign()}
            elif key == best_key:
                best_signs.add(complete_sign())
            return
        state = prefix_state()
        if state == 1:
            return
        want = slots[depth]
        candidates = [v for v in range(n)
                      if v not in assigned_pos and g.valences[v] == want]
        scored = sorted(((level_key(v), v) for v in candidates))
        for key_v, v in scored:
            # pruning against the best key is only sound while the
            # prefix matches it exactly
            if state == 0 and best_key is not None and key_v > best_key[depth]:
                break
            assigned_pos[v] = depth
            prefix.append(key_v)
            descend(depth + 1)
            prefix.pop()
            del assigned_pos[v]
            state = prefix_state()
            if state == 1:
                return

    descend(0)
    assert best_key is not None

    # rebuild the canonical presentation from any optimal assignment;
    # the level key determines the sorted edge list uniquely
    canon_edges: list[tuple[int, int]] = []
    for pos_hi, lows in enumerate(best_key):
        for pos_lo in lows:
            canon_edges.append((pos_lo, pos_hi))
    canon_edges.sort()
    canon = Graph(tuple(sorted(g.valences)), tuple(canon_edges))

    if len(best_signs) == 2:
        sign_state = 0
    else:
        sign_state = base_sign * best_signs.pop()
    result = OrientedGraph(canon, sign_state)
    _CANON_CACHE[g] = result
    return result


def is_isomorphic(g1: Graph, g2: Graph) -> Optional[int]:
    """Sign relating the two orientations, 0 for a zero class, None if
    the underlying graphs are not isomorphic."""
    c1 = canonical_form(g1)
    c2 = canonical_form(g2)
    if c1.graph != c2.graph:
        return None
    if c1.sign_state == 0 or c2.sign_state == 0:
        return 0
    return c1.sign_state * c2.sign_state


def concat(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union presentation: g2 shifted after g1.

    Unitrivalent components have an even number of vertices, so the
    concatenation order never contributes a sign.
    """
    shift = g1.n
    edges = tuple(g1.edges) + tuple((a + shift, b + shift) for a, b in g2.edges)
    return Graph(tuple(g1.valences) + tuple(g2.valences), edges)


def disjoint_union(g1: Graph, g2: Graph) -> OrientedGraph:
    return canonical_form(concat(g1, g2))


def graph_sort_key(g: Graph):
    return (g.n, g.valences, g.edges)


# ---------------------------------------------------------------------------
# wheels


def wheel(n: int) -> Graph:
    """2n-vertex wheel: an n-cycle hub with one pendant spoke per hub
    vertex, presented in its planar orientation (anticlockwise cyclic
    order previous hub edge, next hub edge, spoke at every hub vertex).

    Odd wheels carry an orientation-reversing symmetry and are zero;
    they are rejected.
    """
    if n % 2 != 0 or n < 2:
        raise OddWheel(f"wheel size must be even and >= 2, got {n}")
    hub_edges = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, n + i) for i in range(n)]
    g = Graph((3,) * n + (1,) * n, tuple(hub_edges + spokes))
    cyclic: dict[int, tuple[Flag, ...]] = {}
    for i in range(n):
        prev = (i - 1) % n
        cyclic[i] = ((prev, 1), (i, 0), (n + i, 0))
    s = from_cyclic(g, cyclic)
    if s == -1:
        # re-present with one reversed spoke so the stored presentation
        # carries the planar orientation itself
        edges = list(g.edges)
        a, b = edges[n]
        edges[n] = (b, a)
        g = Graph(g.valences, tuple(edges))
    return g


# ---------------------------------------------------------------------------
# welding (leg joining) via cyclic data

def weld_all(g: Graph, pairs: list[tuple[int, int]]) -> Optional[tuple[Graph, int]]:
    """Join legs pairwise, merging the two pendant edges of each pair.

    Welding keeps the cyclic order at every surviving trivalent vertex,
    which is the presentation-independent way to transport the
    orientation.  Returns (graph, sign) against the new stored
    presentation, or None when a pair closes into a vertex-free circle
    or produces a self-loop (those terms are zero).
    """
    cyclic, s0 = to_cyclic(g)
    ends = [list(e) for e in g.edges]
    edge_alive = [True] * len(ends)
    vertex_alive = [True] * g.n
    leg_flag: dict[int, Flag] = {}
    for v in g.legs():
        (flag,) = g.flags_at(v)
        leg_flag[v] = flag

    cyc_work: dict[int, list[Flag]] = {v: list(t) for v, t in cyclic.items()}

    for u, w in pairs:
        if u == w or not vertex_alive[u] or not vertex_alive[w]:
            raise BadIndex(f"bad weld pair ({u}, {w})")
        if u not in leg_flag or w not in leg_flag:
            raise BadIndex(f"weld pair ({u}, {w}) must name univalent vertices")
        e, ue = leg_flag.pop(u)
        f, wf = leg_flag.pop(w)
        if e == f:
            return None  # the pair closes a circle with no vertices
        a = ends[e][1 - ue]
        b = ends[f][1 - wf]
        if a == b:
            return None  # would be a self-loop
        # merge: edge e survives with endpoint slot ue re-pointed at b
        ends[e][ue] = b
        edge_alive[f] = False
        vertex_alive[u] = False
        vertex_alive[w] = False
        old_flag = (f, 1 - wf)
        new_flag = (e, ue)
        if b in cyc_work:
            spot = cyc_work[b].index(old_flag)
            cyc_work[b][spot] = new_flag
        else:
            leg_flag[b] = new_flag

    vmap = {}
    new_valences = []
    for v in range(g.n):
        if vertex_alive[v]:
            vmap[v] = len(new_valences)
            new_valences.append(g.valences[v])
    emap = {}
    new_edges = []
    for e in range(len(ends)):
        if edge_alive[e]:
            emap[e] = len(new_edges)
            new_edges.append((vmap[ends[e][0]], vmap[ends[e][1]]))
    g2 = Graph(tuple(new_valences), tuple(new_edges))
    cyclic2 = {
        vmap[v]: tuple((emap[e], end) for e, end in triple)
        for v, triple in cyc_work.items() if vertex_alive[v]
    }
    s1 = from_cyclic(g2, cyclic2)
    return g2, s0 * s1


# ---------------------------------------------------------------------------
# text format


class GraphParseError(GraphError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"{message} at line {lineno}")
        self.message = message
        self.lineno = lineno


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    for lineno, linetext in enumerate(text.splitlines(), start=1):
        for tok in linetext.split():
            out.append((tok, lineno))
    return out


class _TokenStream:
    def __init__(self, tokens: list[tuple[str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def line(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][1]
        return self.tokens[-1][1] if self.tokens else 1

    def next(self, expect: str | None = None) -> str:
        if self.i >= len(self.tokens):
            raise GraphParseError("unexpected end of input", self.line())
        tok, lineno = self.tokens[self.i]
        self.i += 1
        if expect is not None and tok != expect:
            raise GraphParseError(f"expected {expect!r}, found {tok!r}", lineno)
        return tok

    def next_int(self) -> int:
        lineno = self.line()
        tok = self.next()
        try:
            return int(tok)
        except ValueError:
            raise GraphParseError(f"expected an integer, found {tok!r}", lineno) from None


def parse_graph_block(stream: _TokenStream) -> Graph:
    start_line = stream.line()
    stream.next("graph")
    stream.next("{")
    vertex_count: int | None = None
    declared: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    while True:
        tok = stream.peek()
        if tok is None:
            raise GraphParseError("unterminated graph block", stream.line())
        if tok == "}":
            stream.next()
            break
        lineno = stream.line()
        word = stream.next()
        if word == "vertices":
            vertex_count = stream.next_int()
        elif word == "valence":
            v = stream.next_int()
            k = stream.next_int()
            declared[v] = k
        elif word == "edge":
            a = stream.next_int()
            b = stream.next_int()
            edges.append((a, b))
            edge_lines.append(lineno)
        else:
            raise GraphParseError(f"unknown statement {word!r}", lineno)
        stream.next(";")
    if vertex_count is None:
        raise GraphParseError("graph block must declare vertices", start_line)
    counts = [0] * vertex_count
    for (a, b), lineno in zip(edges, edge_lines):
        if not (0 <= a < vertex_count and 0 <= b < vertex_count):
            raise GraphParseError("BadIndex", lineno)
        if a == b:
            raise GraphParseError("SelfLoop", lineno)
        counts[a] += 1
        counts[b] += 1
    valences = []
    for v in range(vertex_count):
        if v in declared:
            if declared[v] not in (1, 3) or counts[v] != declared[v]:
                raise GraphParseError(f"ValenceMismatch for vertex {v}", start_line)
            valences.append(declared[v])
        elif counts[v] == 3:
            valences.append(3)
        else:
            raise GraphParseError(
                f"vertex {v} has {counts[v]} incidences; valence 1 must be declared",
                start_line)
    return Graph(tuple(valences), tuple(edges))


def parse_graph(text: str) -> Graph:
    stream = _TokenStream(_tokenize(text))
    g = parse_graph_block(stream)
    if stream.peek() is not None:
        raise GraphParseError(f"trailing input {stream.peek()!r}", stream.line())
    return g


def format_graph(g: Graph) -> str:
    parts = ["graph", "{", "vertices", str(g.n), ";"]
    for v, k in enumerate(g.valences):
        if k == 1:
            parts += ["valence", str(v), "1", ";"]
    for a, b in g.edges:
        parts += ["edge", str(a), str(b), ";"]
    parts.append("}")
    return " ".join(parts)


def format_oriented(og: OrientedGraph) -> str:
    sign = {1: "+1", -1: "-1", 0: "0"}[og.sign_state]
    return f"sign {sign}\n{format_graph(og.graph)}"
