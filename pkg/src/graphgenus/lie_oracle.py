"""Weight systems from metric Lie algebras, the independent referee.

A finite-dimensional Lie algebra with an invariant nondegenerate
symmetric form evaluates a trivalent graph: put the fully lowered
structure tensor at each vertex in its cyclic order, the inverse form
on each edge, and contract everything.  Bracket antisymmetry plus
invariance make the vertex tensor totally antisymmetric, so the value
respects the AS law, and the Jacobi identity makes it vanish on every
IHX relation.  Agreement of these functionals with the graph algebra
is the strongest internal consistency check the package has.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

from .graph_core import Graph, OrientedGraph, to_cyclic
from .graph_algebra import GraphVector


class OracleError(Exception):
    pass


class UnknownName(OracleError):
    pass


class NotTrivalent(OracleError):
    pass


class InvalidAlgebra(OracleError):
    pass


Matrix = tuple[tuple[Fraction, ...], ...]


def _to_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _invert(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse; InvalidAlgebra when singular."""
    d = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(m)]
    for col in range(d):
        pivot = next((r for r in range(col, d) if aug[r][col]), None)
        if pivot is None:
            raise InvalidAlgebra("form is degenerate")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


class MetricLieAlgebra:
    """Structure constants plus an invariant form, validated on build."""

    def __init__(self, name: str, brackets, form, validate: bool = True):
        self.name = name
        self.brackets = tuple(
            tuple(tuple(Fraction(x) for x in vec) for vec in row)
            for row in brackets)
        self.form = _to_matrix(form)
        self.d = len(self.form)
        if validate:
            self._validate()
        self.form_inv = _invert(self.form)
        self.lowered = self._lower()

    def bracket(self, a: int, b: int) -> tuple[Fraction, ...]:
        return self.brackets[a][b]

    def _validate(self):
        d = self.d
        if len(self.brackets) != d or any(
                len(row) != d or any(len(vec) != d for vec in row)
                for row in self.brackets):
            raise InvalidAlgebra("bracket table shape does not match the form")
        for i in range(d):
            for j in range(d):
                if self.form[i][j] != self.form[j][i]:
                    raise InvalidAlgebra("form is not symmetric")
                for x, y in zip(self.brackets[i][j], self.brackets[j][i]):
                    if x != -y:
                        raise InvalidAlgebra("brackets are not antisymmetric")
        # Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(b, d):
                    total = [Fraction(0)] * d
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        inner = self.brackets[x][y]
                        for m, coeff in enumerate(inner):
                            if coeff:
                                for t, cv in enumerate(self.brackets[m][z]):
                                    total[t] += coeff * cv
                    if any(total):
                        raise InvalidAlgebra(f"Jacobi fails at basis ({a},{b},{c})")
        # invariance: B([a,b],c) = B(a,[b,c])
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    left = sum(self.brackets[a][b][m] * self.form[m][c]
                               for m in range(d))
                    right = sum(self.form[a][m] * self.brackets[b][c][m]
                                for m in range(d))
                    if left != right:
                        raise InvalidAlgebra(f"form not invariant at ({a},{b},{c})")

    def _lower(self) -> dict[tuple[int, int, int], Fraction]:
        """c_{abc} = B([e_a, e_b], e_c); totally antisymmetric."""
        out: dict[tuple[int, int, int], Fraction] = {}
        d = self.d
        for a in range(d):
            for b in range(d):
                vec = self.brackets[a][b]
                for c in range(d):
                    val = sum(vec[m] * self.form[m][c] for m in range(d))
                    if val:
                        out[(a, b, c)] = val
        return out

    def with_form_scaled(self, factor) -> "MetricLieAlgebra":
        q = Fraction(factor)
        scaled = [[x * q for x in row] for row in self.form]
        return MetricLieAlgebra(f"{self.name}*{q}", self.brackets, scaled)

    def __repr__(self):
        return f"MetricLieAlgebra({self.name}, d={self.d})"


def abelian(d: int) -> MetricLieAlgebra:
    zero = [[[0] * d for _ in range(d)] for _ in range(d)]
    form = [[int(i == j) for j in range(d)] for i in range(d)]
    return MetricLieAlgebra(f"abelian({d})", zero, form)


def sl2() -> MetricLieAlgebra:
    # basis h, e, f; trace form of the defining representation
    d = 3
    table = [[[0] * d for _ in range(d)] for _ in range(d)]

    def put(a, b, vec):
        table[a][b] = list(vec)
        table[b][a] = [-x for x in vec]

    put(0, 1, (0, 2, 0))   # [h,e] = 2e
    put(0, 2, (0, 0, -2))  # [h,f] = -2f
    put(1, 2, (1, 0, 0))   # [e,f] = h
    form = [[2, 0, 0], [0, 0, 1], [0, 1, 0]]
    return MetricLieAlgebra("sl2", table, form)


def gl(N: int) -> MetricLieAlgebra:
    """gl(N) on the matrix units E_(a,b) with the trace form."""
    d = N * N

    def idx(a, b):
        return a * N + b

    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for e in range(N):
                    vec = table[idx(a, b)][idx(c, e)]
                    if b == c:
                        vec[idx(a, e)] += 1
                    if e == a:
                        vec[idx(c, b)] -= 1
    form = [[0] * d for _ in range(d)]
    for a in range(N):
        for b in range(N):
            # tr(E_(a,b) E_(c,e)) = [b==c][e==a]
            form[idx(a, b)][idx(b, a)] = 1
    return MetricLieAlgebra(f"gl({N})", table, form)


@lru_cache(maxsize=None)
def builtin(name: str) -> MetricLieAlgebra:
    """abelian(d), sl2, gl(N); accepts gl2 / gl(2) spellings."""
    flat = name.strip().lower().replace(" ", "")
    if flat in ("sl2", "sl(2)"):
        return sl2()
    for prefix, builder in (("abelian", abelian), ("gl", gl)):
        if flat.startswith(prefix):
            tail = flat[len(prefix):]
            if tail.startswith("(") and tail.endswith(")"):
                tail = tail[1:-1]
            if tail.isdigit() and int(tail) >= 1:
                return builder(int(tail))
    raise UnknownName(f"no built-in algebra named {name!r}")


# ---------------------------------------------------------------------------
# graph evaluation


def weight(L: MetricLieAlgebra, g: Union[Graph, OrientedGraph]) -> Fraction:
    """Contract the graph's tensor network; sign from the orientation."""
    if isinstance(g, OrientedGraph):
        if g.sign_state == 0:
            return Fraction(0)
        return g.sign_state * weight(L, g.graph)
    if any(v != 3 for v in g.valences):
        raise NotTrivalent("weights are defined for purely trivalent graphs")
    if g.n == 0:
        return Fraction(1)
    cyclic, sign = to_cyclic(g)
    return sign * _contract(L, g, cyclic)


def _contract(L: MetricLieAlgebra, g: Graph,
              cyclic: dict[int, tuple]) -> Fraction:
    placed: set[int] = set()
    # state: sorted tuple of (flag, index) for flags whose edge partner
    # is not placed yet
    states: dict[tuple, Fraction] = {(): Fraction(1)}
    entries = list(L.lowered.items())
    inv = L.form_inv
    for v in range(g.n):
        flags = cyclic[v]
        closing = []
        opening = []
        for (e, end) in flags:
            a, b = g.edges[e]
            partner = b if end == 0 else a
            if partner in placed:
                closing.append((e, end))
            else:
                opening.append((e, end))
        new_states: dict[tuple, Fraction] = {}
        for key, amp in states.items():
            open_idx = dict(key)
            for (triple, val) in entries:
                idx_at = dict(zip(flags, triple))
                factor = amp * val
                for (e, end) in closing:
                    j = open_idx[(e, 1 - end)]
                    m = inv[j][idx_at[(e, end)]]
                    if not m:
                        factor = Fraction(0)
                        break
                    factor *= m
                if not factor:
                    continue
                nxt = {f: i for f, i in open_idx.items()
                       if (f[0], 1 - f[1]) not in closing}
                for f in opening:
                    nxt[f] = idx_at[f]
                nk = tuple(sorted(nxt.items()))
                acc = new_states.get(nk, Fraction(0)) + factor
                if acc:
                    new_states[nk] = acc
                else:
                    new_states.pop(nk, None)
        states = new_states
        placed.add(v)
        if not states:
            return Fraction(0)
    return states.get((), Fraction(0))


def weight_vector(L: MetricLieAlgebra, v: GraphVector) -> Fraction:
    total = Fraction(0)
    for g, coeff in v.items():
        total += coeff * weight(L, g)
    return total
