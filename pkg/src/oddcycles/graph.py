"""Simple undirected graphs stored as adjacency bit-rows, plus generators and I/O."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Malformed edge-list input. ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or an integer. Decimal notation is rejected on purpose."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not an exact rational (expected 'p/q' or integer): {text!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``rows[v]`` has bit ``u`` set iff ``uv`` is an edge."""

    n: int
    rows: tuple[int, ...]
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        degree_sum = 0
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            degree_sum += row.bit_count()
        for v, row in enumerate(self.rows):
            rest = row
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
                rest ^= low
        object.__setattr__(self, "m", degree_sum // 2)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return members(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.rows), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self.rows):
            for v in members(row >> (u + 1) << (u + 1)):
                yield u, v

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def add_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        stack.append(u)
                    elif color[u] == color[v]:
                        return False
        return True

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def members(mask: int) -> list[int]:
    """Sorted list of the set bits of ``mask``."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def vertex_set(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def induced_edge_count(g: Graph, x: int | Iterable[int]) -> int:
    """Number of edges of ``g`` with both endpoints in ``x`` (a bitmask or iterable)."""
    mask = x if isinstance(x, int) else vertex_set(x)
    if mask >> g.n:
        raise ValueError("vertex set is not contained in V(G)")
    twice = 0
    for v in members(mask):
        twice += (g.rows[v] & mask).bit_count()
    return twice // 2


# --- edge-list I/O ---------------------------------------------------------


def from_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty input, expected header 'n m'", 1)
    header = lines[0].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise GraphFormatError(f"bad header {lines[0]!r}, expected 'n m'", 1)
    n, m = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != m:
        first_bad = m + 2 if len(body) > m else len(lines) + 1
        raise GraphFormatError(f"header declares {m} edges but {len(body)} edge lines follow",
                               first_bad)
    rows = [0] * n
    for offset, line in enumerate(body):
        lineno = offset + 2
        toks = line.split()
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise GraphFormatError(f"malformed edge line {line!r}", lineno)
        u, v = int(toks[0]), int(toks[1])
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex out of range (n={n}) in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"duplicate edge {min(u, v)} {max(u, v)}", lineno)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def to_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return from_edge_list(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(to_edge_list(g))


# --- generators ------------------------------------------------------------


def gen_random(n: int, p: Fraction | str, seed: int) -> Graph:
    """G(n, p) with exact rational ``p``: pair ``uv`` is kept iff ``randrange(q) < num``."""
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.randrange(p.denominator) < p.numerator]
    return Graph.from_edges(n, edges)


def gen_random_bipartite(n_left: int, n_right: int, p: Fraction | str, seed: int) -> Graph:
    p = parse_rational(p)
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    n = n_left + n_right
    edges = [(u, v) for u in range(n_left) for v in range(n_left, n)
             if rng.randrange(p.denominator) < p.numerator]
    return Graph.from_edges(n, edges)


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete_multipartite(parts: Sequence[int]) -> Graph:
    if not parts or any(s < 1 for s in parts):
        raise ValueError("part sizes must be positive")
    n = sum(parts)
    full = (1 << n) - 1
    rows = []
    start = 0
    for s in parts:
        block = ((1 << s) - 1) << start
        rows.extend([full ^ block] * s)
        start += s
    return Graph(n, tuple(rows))


def clique_union(k: int, s: int) -> Graph:
    """Disjoint union of ``k`` cliques of size ``s``: locally dense, not quasirandom."""
    if k < 1 or s < 1:
        raise ValueError("clique-union needs k >= 1 and s >= 1")
    rows = []
    for i in range(k):
        block = ((1 << s) - 1) << (i * s)
        rows.extend(block ^ (1 << (i * s + j)) for j in range(s))
    return Graph(k * s, tuple(rows))


def blow_up(g: Graph, t: int) -> Graph:
    """Replace each vertex ``v`` by the independent block ``v*t .. v*t+t-1``."""
    if t < 1:
        raise ValueError("blow-up factor must be positive")
    block = (1 << t) - 1
    rows = []
    for v in range(g.n):
        row = 0
        for u in g.neighbors(v):
            row |= block << (u * t)
        rows.extend([row] * t)
    return Graph(g.n * t, tuple(rows))


@dataclass(frozen=True)
class FamilySpec:
    """Named graph family.

    ``kind`` is one of ``complete`` (uses ``n``), ``multipartite`` (``parts``),
    ``clique-union`` (``k``, ``s``), ``blow-up`` (``base``, ``t``) and
    ``random`` (``n``, ``p``, ``seed``).
    """

    kind: str
    n: int | None = None
    parts: tuple[int, ...] | None = None
    k: int | None = None
    s: int | None = None
    t: int | None = None
    base: Graph | None = None
    p: Fraction | None = None
    seed: int = 0

    def label(self) -> str:
        if self.kind == "complete":
            return f"n={self.n}"
        if self.kind == "multipartite":
            return "parts=" + "-".join(map(str, self.parts or ()))
        if self.kind == "clique-union":
            return f"k={self.k};s={self.s}"
        if self.kind == "blow-up":
            base = "none" if self.base is None else f"{self.base.n}v{self.base.m}e"
            return f"base={base};t={self.t}"
        if self.kind == "random":
            return f"n={self.n};p={format_rational(self.p or 0)};seed={self.seed}"
        return self.kind


FAMILIES = ("complete", "multipartite", "clique-union", "blow-up", "random")


def gen_family(spec: FamilySpec) -> Graph:
    def need(value, name):
        if value is None:
            raise ValueError(f"family {spec.kind!r} requires parameter {name!r}")
        return value

    if spec.kind == "complete":
        return complete(need(spec.n, "n"))
    if spec.kind == "multipartite":
        return complete_multipartite(need(spec.parts, "parts"))
    if spec.kind == "clique-union":
        return clique_union(need(spec.k, "k"), need(spec.s, "s"))
    if spec.kind == "blow-up":
        return blow_up(need(spec.base, "base"), need(spec.t, "t"))
    if spec.kind == "random":
        return gen_random(need(spec.n, "n"), need(spec.p, "p"), spec.seed)
    raise ValueError(f"unknown family {spec.kind!r}; expected one of {', '.join(FAMILIES)}")
