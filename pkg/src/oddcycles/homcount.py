"""Exact homomorphism counts of paths and cycles.

Walk tables are built by iterated multiplication with the adjacency matrix.
Entries are Python integers; numpy int64 is used for a product only when the
result is provably below 2**63, otherwise the product runs on object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph

_INT64_SAFE = 2**62

DEFAULT_BRUTE_FORCE_BUDGET = 10**8


class ResourceLimitError(RuntimeError):
    """A computation was refused because its declared cost exceeds a configured budget."""


@dataclass(frozen=True)
class WalkTable:
    """``q[x, y]`` = number of walks with exactly ``m_edges`` edges from ``x`` to ``y``."""

    m_edges: int
    q: np.ndarray  # object dtype, Python ints

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def __getitem__(self, xy: tuple[int, int]) -> int:
        return int(self.q[xy])

    def row_sums(self) -> list[int]:
        return [int(sum(row)) for row in self.q]

    def total(self) -> int:
        return int(sum(self.row_sums()))

    def trace(self) -> int:
        return int(sum(self.q[x, x] for x in range(self.n)))

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.q]


def _as_object(a: np.ndarray) -> np.ndarray:
    # int64 -> object yields Python ints
    return a.astype(object)


def exact_matmul(a: np.ndarray, b: np.ndarray, bound: int | None = None) -> np.ndarray:
    """Exact product of nonnegative integer matrices.

    ``bound`` is an upper bound on every entry of the result; when it is known
    to fit in int64 the product is done in machine integers.
    """
    if a.shape[0] == 0:
        return np.empty((0, b.shape[1]), dtype=object)
    if bound is None:
        bound = int(a.max(initial=0)) * int(b.max(initial=0)) * a.shape[1]
    if bound < _INT64_SAFE:
        return _as_object(a.astype(np.int64) @ b.astype(np.int64))
    return _as_object(a.astype(object) @ b.astype(object))


def times_adjacency(q: np.ndarray, g: Graph, bound: int | None = None) -> np.ndarray:
    """Exact ``q @ A`` for the adjacency matrix ``A`` of ``g``.

    Big-integer path uses column additions only: ``(qA)[:, y]`` is the sum of
    the columns ``q[:, z]`` over neighbours ``z`` of ``y``.
    """
    if bound is not None and bound < _INT64_SAFE:
        return _as_object(q.astype(np.int64) @ g.adjacency_matrix())
    out = np.zeros(q.shape, dtype=object)
    for y in range(g.n):
        nbrs = g.neighbors(y)
        if nbrs:
            out[:, y] = q[:, nbrs].sum(axis=1)
    return out


def identity_table(n: int) -> WalkTable:
    q = np.zeros((n, n), dtype=object)
    for x in range(n):
        q[x, x] = 1
    return WalkTable(0, q)


def walk_tables(g: Graph, k: int) -> list[WalkTable]:
    """All tables with 0, 1, ..., k edges (each built from the previous one)."""
    if k < 0:
        raise ValueError("walk length must be nonnegative")
    delta = g.max_degree()
    tables = [identity_table(g.n)]
    for j in range(1, k + 1):
        q = times_adjacency(tables[-1].q, g, bound=delta**j)
        tables.append(WalkTable(j, q))
    return tables


def walk_table(g: Graph, k: int) -> WalkTable:
    return walk_tables(g, k)[-1]


def compose(first: WalkTable, second: WalkTable) -> WalkTable:
    """Table for walks of ``first.m_edges + second.m_edges`` edges."""
    return WalkTable(first.m_edges + second.m_edges, exact_matmul(first.q, second.q))


def count_cycle_homs(g: Graph, r: int) -> int:
    """C_r(G): closed walks of length r, i.e. homomorphisms of the r-cycle into G."""
    if r < 2:
        raise ValueError("cycle length must be at least 2")
    return walk_table(g, r).trace()


def decomposition_sum(g: Graph, table: WalkTable, xs=None) -> int:
    """Sum over ``x`` in ``xs`` (default: all) and ordered adjacent ``(y, z)`` of q(x,y) q(x,z)."""
    q = table.q
    bound = int(q.max(initial=0)) * max(g.max_degree(), 1)
    qa = times_adjacency(q, g, bound=bound)  # qa[x, y] = sum_{z ~ y} q(x, z)
    rows = range(g.n) if xs is None else xs
    return int(sum(int(v) for x in rows for v in q[x] * qa[x]))


def cycle_homs_via_decomposition(g: Graph, r: int) -> int:
    """C_r(G) for odd r = 2m+1, split at the middle edge of the cycle."""
    if r < 3 or r % 2 == 0:
        raise ValueError(f"decomposition needs an odd cycle length >= 3, got {r}")
    m = (r - 1) // 2
    return decomposition_sum(g, walk_table(g, m))


def count_path_homs(g: Graph, k: int) -> int:
    """Homomorphisms of the path with k edges; k = 0 gives n."""
    return walk_table(g, k).total()


@dataclass(frozen=True)
class HomCountReport:
    count: int
    bound: Fraction
    holds: bool


def edge_density(g: Graph) -> Fraction:
    """2m / n^2, the largest d with |E| >= (d/2) n^2."""
    if g.n == 0:
        raise ValueError("edge density of the null graph is undefined")
    return Fraction(2 * g.m, g.n * g.n)


def blakley_roy_check(g: Graph, k: int) -> HomCountReport:
    """Compare path homomorphisms against d^k n^(k+1) with d = 2m/n^2."""
    if k < 1:
        raise ValueError("path length must be positive")
    d = edge_density(g)
    bound = d**k * g.n ** (k + 1)
    count = count_path_homs(g, k)
    return HomCountReport(count, bound, count >= bound)


def brute_force_cycle_homs(g: Graph, r: int, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> int:
    """Count closed r-walks by backtracking over vertex sequences.

    Independent of the matrix code. The last vertex closes two constraints at
    once (adjacent to both ``x_{r-1}`` and ``x_1``), so it is counted by a bit
    intersection instead of a loop.
    """
    if r < 2:
        raise ValueError("cycle length must be at least 2")
    if g.n**r > budget:
        raise ResourceLimitError(f"n^r = {g.n}^{r} exceeds the brute-force budget {budget}")
    rows = g.rows
    nbrs = [g.neighbors(v) for v in range(g.n)]
    total = 0

    def extend(first: int, last: int, depth: int) -> int:
        # depth = number of vertices already placed
        if depth == r - 1:
            return (rows[last] & rows[first]).bit_count()
        return sum(extend(first, nxt, depth + 1) for nxt in nbrs[last])

    for x1 in range(g.n):
        total += extend(x1, x1, 1)
    return total
