"""(eps, d)-density: exhaustive certification, heuristic refutation, and the
exact minimum of the weighted density objective.

Subsets are bitmasks over ``0..n-1``. Exhaustive routines tabulate ``e(X)`` and
``|X|`` for all ``2**n`` masks at once with numpy, then do every comparison
against ``d`` in Python integers.

Tie-breaking for reported sets is: smallest size first, then lexicographically
smallest sorted member tuple (so ``{0, 3}`` precedes ``{1, 2}``).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import Graph, induced_edge_count, members, parse_rational
from .homcount import ResourceLimitError

DEFAULT_EXHAUSTIVE_LIMIT = 24
DEFAULT_MINIMIZER_LIMIT = 20
DEFAULT_GRID_LIMIT = 8
DEFAULT_GRID_BUDGET = 2_000_000

_INT64_SAFE = 2**62


class SizeLimitError(ResourceLimitError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class DensityParams:
    eps: Fraction
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", parse_rational(self.eps))
        object.__setattr__(self, "d", parse_rational(self.d))
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 <= self.d <= 1:
            raise ValueError(f"d must lie in [0, 1], got {self.d}")

    def min_size(self, n: int) -> int:
        """Smallest integer size satisfying |X| >= eps*n."""
        return math.ceil(self.eps * n)

    def with_d(self, d: Fraction) -> "DensityParams":
        return DensityParams(self.eps, d)


class DensityStatus(str, Enum):
    CERTIFIED = "certified-exhaustive"
    REFUTED = "refuted"
    UNVERIFIED = "unverified-heuristic"


@dataclass(frozen=True)
class DensityCertificate:
    status: DensityStatus
    witness: int | None  # bitmask
    checked_subsets: int
    eps: Fraction
    d: Fraction
    n: int

    @property
    def witness_members(self) -> list[int] | None:
        return None if self.witness is None else members(self.witness)


def violates(e: int, size: int, d: Fraction) -> bool:
    """True iff e < (d/2) size^2, decided in integers."""
    return 2 * d.denominator * e < d.numerator * size * size


# --- subset tables -----------------------------------------------------------


@lru_cache(maxsize=4)
def subset_tables(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """``(edges, sizes)`` indexed by bitmask: e(X) and |X| for every X subset of V."""
    n = g.n
    total = 1 << n
    edges = np.zeros(total, dtype=np.uint16 if g.m < 2**16 else np.uint32)
    sizes = np.zeros(total, dtype=np.uint8)
    for i in range(n):
        lo = 1 << i
        below = np.arange(lo, dtype=np.uint32)
        back = np.uint32(g.rows[i] & (lo - 1))
        edges[lo:2 * lo] = edges[:lo] + np.bitwise_count(below & back)
        sizes[lo:2 * lo] = sizes[:lo] + 1
    edges.flags.writeable = False
    sizes.flags.writeable = False
    return edges, sizes


def _reverse_bits(masks: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(masks.shape, dtype=np.uint32)
    for i in range(n):
        out |= ((masks >> np.uint32(i)) & np.uint32(1)) << np.uint32(n - 1 - i)
    return out


def lex_first(masks: np.ndarray, n: int) -> int:
    """Equal-size masks: the one whose sorted member tuple is lexicographically smallest."""
    masks = np.asarray(masks, dtype=np.uint32)
    return int(masks[np.argmax(_reverse_bits(masks, n))])


def _guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeLimitError(f"{what}: n={n} exceeds the configured limit {limit}")


def min_edges_by_size(g: Graph, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> list[int]:
    """``out[k]`` = min e(X) over |X| = k, for k = 0..n."""
    _guard(g.n, limit, "exhaustive subset enumeration")
    edges, sizes = subset_tables(g)
    return [int(edges[sizes == k].min()) for k in range(g.n + 1)]


# --- (eps, d)-density ----------------------------------------------------------


def check_density_exact(g: Graph, p: DensityParams,
                        limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> DensityCertificate:
    """Enumerate every X with |X| >= ceil(eps*n) and compare e(X) against (d/2)|X|^2."""
    _guard(g.n, limit, "check_density_exact")
    edges, sizes = subset_tables(g)
    k0 = p.min_size(g.n)
    checked = 0
    for k in range(k0, g.n + 1):
        sel = sizes == k
        checked += math.comb(g.n, k)
        if not violates(int(edges[sel].min()), k, p.d):
            continue
        # e < d k^2 / (2 q) <=> e <= ceil(p k^2 / 2q) - 1
        threshold = min(-(-p.d.numerator * k * k // (2 * p.d.denominator)) - 1, 2**31)
        cand = np.nonzero(sel & (edges <= threshold))[0]
        witness = lex_first(cand, g.n)
        return DensityCertificate(DensityStatus.REFUTED, witness, checked, p.eps, p.d, g.n)
    return DensityCertificate(DensityStatus.CERTIFIED, None, checked, p.eps, p.d, g.n)


def min_density_ratio(g: Graph, eps: Fraction, limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> Fraction:
    """Largest d for which ``g`` is (eps, d)-dense: min 2e(X)/|X|^2 over admissible X."""
    eps = parse_rational(eps)
    if g.n == 0:
        return Fraction(1)
    k0 = max(1, math.ceil(eps * g.n))
    best = min_edges_by_size(g, limit)
    return min(Fraction(2 * best[k], k * k) for k in range(k0, g.n + 1))


def check_density_heuristic(g: Graph, p: DensityParams, iters: int, seed: int,
                            start: int | Sequence[int] | None = None) -> DensityCertificate:
    """Annealed local search for a violating X; never certifies.

    Moves are add / remove / swap over sets with |X| >= ceil(eps*n), scored by
    2q e(X) - p |X|^2 where d = p/q. A negative score is a witness; it is
    rechecked exactly before being reported.
    """
    if iters < 1:
        raise ValueError("iters must be positive")
    n, k0 = g.n, p.min_size(g.n)
    num, den = p.d.numerator, p.d.denominator
    rows = g.rows
    rng = random.Random(seed)

    def score(e: int, size: int) -> int:
        return 2 * den * e - num * size * size

    def done(mask: int, checked: int) -> DensityCertificate:
        e, size = induced_edge_count(g, mask), mask.bit_count()
        assert size >= k0 and violates(e, size, p.d)
        return DensityCertificate(DensityStatus.REFUTED, mask, checked, p.eps, p.d, n)

    if start is None:
        x = 0
        for v in rng.sample(range(n), k0):
            x |= 1 << v
    else:
        x = start if isinstance(start, int) else sum(1 << v for v in set(start))
        if x >> n or x.bit_count() < k0:
            raise ValueError("start set must be an admissible subset of V(G)")
    e, size = induced_edge_count(g, x), x.bit_count()
    if score(e, size) < 0:
        return done(x, 1)
    if n == 0:
        return DensityCertificate(DensityStatus.UNVERIFIED, None, 1, p.eps, p.d, n)

    temp0 = max(1.0, 2.0 * den * max(1, g.max_degree()))
    for it in range(iters):
        temp = temp0 * (1.0 - it / iters) + 1e-9
        inside, outside = members(x), members(((1 << n) - 1) & ~x)
        moves = []
        if outside:
            moves.append("add")
        if size > k0:
            moves.append("remove")
        if inside and outside:
            moves.append("swap")
        if not moves:  # X = V at the minimum size: nothing left to try
            break
        move = rng.choice(moves)
        if move == "add":
            v = rng.choice(outside)
            new_x, new_e = x | 1 << v, e + (rows[v] & x).bit_count()
        elif move == "remove":
            v = rng.choice(inside)
            new_x = x & ~(1 << v)
            new_e = e - (rows[v] & new_x).bit_count()
        else:
            v, u = rng.choice(inside), rng.choice(outside)
            mid = x & ~(1 << v)
            new_x = mid | 1 << u
            new_e = e - (rows[v] & mid).bit_count() + (rows[u] & mid).bit_count()
        new_size = new_x.bit_count()
        change = score(new_e, new_size) - score(e, size)
        if change <= 0 or rng.random() < math.exp(-change / temp):
            x, e, size = new_x, new_e, new_size
            if score(e, size) < 0:
                return done(x, it + 2)
    return DensityCertificate(DensityStatus.UNVERIFIED, None, iters + 1, p.eps, p.d, n)


# --- weighted objective ----------------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(not 0 <= v <= 1 for v in vals):
            raise ValueError("weights must lie in [0, 1]")
        object.__setattr__(self, "values", vals)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def fractional(self) -> list[int]:
        return [x for x, v in enumerate(self.values) if v.denominator != 1]


def edge_weight_sum(g: Graph, f: WeightFunction) -> Fraction:
    vals = f.values
    return sum((vals[u] * vals[v] for u, v in g.edges()), Fraction(0))


def weighted_objective(g: Graph, f: WeightFunction, d: Fraction) -> Fraction:
    """sum over edges of f(x)f(y), minus (d/2)(sum f)^2."""
    return edge_weight_sum(g, f) - d / 2 * f.total() ** 2


@dataclass(frozen=True)
class MinimizerResult:
    omega: Fraction
    minimizer: WeightFunction
    ones: int  # bitmask of vertices with f = 1
    z: int | None
    delta: Fraction


def _indicator(n: int, ones: int, z: int | None = None, delta: Fraction = Fraction(0)):
    vals = [Fraction(1) if ones >> v & 1 else Fraction(0) for v in range(n)]
    if z is not None:
        vals[z] = delta
    return WeightFunction(tuple(vals))


def _support_key(mask: int, fractional: int) -> tuple:
    return (mask.bit_count(), fractional, members(mask))


def weighted_min_exact(g: Graph, p: DensityParams,
                       limit: int = DEFAULT_MINIMIZER_LIMIT) -> MinimizerResult:
    """Exact minimum of the weighted objective over f in [0,1]^V with sum f >= eps*n.

    Some minimizer is {0,1}-valued except at one vertex z. With S the 1-set,
    the objective is concave in delta = f(z), so only the two ends of the
    feasible interval [max(0, eps*n - |S|), 1] need evaluating. An end at 0 or 1
    is an indicator of an admissible set; the only genuinely fractional end is
    delta = eps*n - |S| with |S| = floor(eps*n), which exists iff eps*n is not
    an integer. Both families are enumerated exhaustively.

    Ties: smallest support, then integral before fractional, then the
    lexicographically first support, then the smallest z.
    """
    _guard(g.n, limit, "weighted_min_exact")
    n, d = g.n, p.d
    target = p.eps * n
    k0 = math.ceil(target)
    edges, sizes = subset_tables(g)
    best_e = min_edges_by_size(g, limit)

    candidates = []  # (omega, key, ones, z, delta)
    for k in range(k0, n + 1):
        omega = best_e[k] - d / 2 * k * k
        candidates.append((omega, k, None))
    if target.denominator != 1:
        s = math.floor(target)
        delta = target - s
        masks = np.nonzero(sizes == s)[0].astype(np.uint32)
        e_s = edges[masks].astype(np.int64)
        big = np.int64(n + 1)
        min_n = np.full(masks.shape, big, dtype=np.int64)
        for z in range(n):
            cnt = np.bitwise_count(masks & np.uint32(g.rows[z])).astype(np.int64)
            cnt[(masks >> np.uint32(z)) & np.uint32(1) == 1] = big
            np.minimum(min_n, cnt, out=min_n)
        # minimise e(S) + delta * N_S(z) as q*e + p*N
        score = delta.denominator * e_s + delta.numerator * min_n
        best = int(score.min())
        omega = Fraction(best, delta.denominator) - d / 2 * target * target
        candidates.append((omega, s + 1, (masks, score == best, min_n, delta)))

    omega = min(c[0] for c in candidates)
    chosen = None
    for value, support_size, frac in candidates:
        if value != omega:
            continue
        if frac is None:
            sel = np.nonzero((sizes == support_size) & (edges == best_e[support_size]))[0]
            ones = lex_first(sel, n)
            option = (_support_key(ones, 0), ones, None, Fraction(0))
        else:
            masks, hit, min_n, delta = frac
            s_masks, s_min = masks[hit], min_n[hit]
            supports, zs = [], []
            for z in range(n):
                cnt = np.bitwise_count(s_masks & np.uint32(g.rows[z])).astype(np.int64)
                ok = (cnt == s_min) & ((s_masks >> np.uint32(z)) & np.uint32(1) == 0)
                supports.append(s_masks[ok] | np.uint32(1 << z))
                zs.append(np.full(int(ok.sum()), z))
            supports_all = np.concatenate(supports)
            z_all = np.concatenate(zs)
            support = lex_first(supports_all, n)
            z = int(z_all[supports_all == support].min())
            option = (_support_key(support, 1), support & ~(1 << z), z, delta)
        if chosen is None or option[0] < chosen[0]:
            chosen = option
    _, ones, z, delta = chosen
    f = _indicator(n, ones, z, delta)
    result = MinimizerResult(omega, f, ones, z, delta if z is not None else Fraction(0))
    assert len(f.fractional()) <= 1
    assert f.total() >= target
    assert weighted_objective(g, f, d) == omega
    return result


def weighted_min_grid_oracle(g: Graph, p: DensityParams, step: Fraction | str = Fraction(1, 4),
                             limit: int = DEFAULT_GRID_LIMIT,
                             budget: int = DEFAULT_GRID_BUDGET) -> Fraction:
    """Brute-force minimum of the weighted objective over f in {0, step, ..., 1}^V."""
    step = parse_rational(step)
    if step <= 0 or step.numerator != 1:
        raise ValueError("step must be 1/s for a positive integer s")
    s = step.denominator
    n = g.n
    _guard(n, limit, "weighted_min_grid_oracle")
    if n == 0:
        return Fraction(0)
    if (s + 1) ** n > budget:
        raise ResourceLimitError(f"grid has {(s + 1) ** n} points, budget is {budget}")
    # f = grid / s; 2 q_d s^2 * objective = 2 q_d sum_E g g - p_d (sum g)^2
    grid = np.indices((s + 1,) * n).reshape(n, -1).T.astype(np.int64)
    tot = grid.sum(axis=1)
    feasible = tot * p.eps.denominator >= p.eps.numerator * n * s
    grid, tot = grid[feasible], tot[feasible]
    pair = np.zeros(len(tot), dtype=np.int64)
    for u, v in g.edges():
        pair += grid[:, u] * grid[:, v]
    pn, qd = p.d.numerator, p.d.denominator
    if 2 * qd * g.m * s * s + pn * (n * s) ** 2 < _INT64_SAFE:
        scaled = 2 * qd * pair - pn * tot * tot
    else:
        scaled = 2 * qd * pair.astype(object) - pn * (tot.astype(object) ** 2)
    return Fraction(int(scaled.min()), 2 * qd * s * s)


# --- weighted inequality audit ----------------------------------------------------


@dataclass
class LemmaFReport:
    n: int
    eps: Fraction
    d: Fraction
    trials: int
    violations: list[tuple[WeightFunction, Fraction, Fraction]]
    min_gap: Fraction | None  # min of lhs - rhs over trials
    omega: Fraction | None
    omega_ok: bool | None

    @property
    def holds(self) -> bool:
        return not self.violations and self.omega_ok is not False


GRID_DENOMINATOR = 16


def sample_weight_function(n: int, target: Fraction, rng: random.Random,
                           attempts: int = 64) -> WeightFunction:
    """Uniform on the 1/16 grid conditioned on sum >= target (rejection).

    If rejection keeps failing (target close to n), the last draw is repaired by
    raising random non-saturated coordinates one grid step at a time.
    """
    for _ in range(attempts):
        ticks = [rng.randint(0, GRID_DENOMINATOR) for _ in range(n)]
        if Fraction(sum(ticks), GRID_DENOMINATOR) >= target:
            break
    else:
        while Fraction(sum(ticks), GRID_DENOMINATOR) < target:
            open_ = [x for x in range(n) if ticks[x] < GRID_DENOMINATOR]
            ticks[rng.choice(open_)] += 1
    return WeightFunction(tuple(Fraction(t, GRID_DENOMINATOR) for t in ticks))


def lemma_f_verify(g: Graph, p: DensityParams, certificate: DensityCertificate | None,
                   trials: int, seed: int,
                   minimizer_limit: int = DEFAULT_MINIMIZER_LIMIT) -> LemmaFReport:
    """Check sum_E f(x)f(y) >= (d/2)(sum f)^2 - n on random admissible f.

    Requires an exhaustive density certificate for exactly these parameters.
    Also checks that the exact minimum of the objective is at least -n when the
    minimizer is within its size limit.
    """
    if certificate is None or certificate.status is not DensityStatus.CERTIFIED:
        raise PreconditionError("lemma_f_verify needs a certified-exhaustive density certificate")
    if (certificate.eps, certificate.d, certificate.n) != (p.eps, p.d, g.n):
        raise PreconditionError("certificate was issued for different parameters")
    n, target = g.n, p.eps * g.n
    rng = random.Random(seed)
    violations = []
    min_gap = None
    for _ in range(trials):
        f = sample_weight_function(n, target, rng)
        lhs = edge_weight_sum(g, f)
        rhs = p.d / 2 * f.total() ** 2 - n
        gap = lhs - rhs
        min_gap = gap if min_gap is None else min(min_gap, gap)
        if gap < 0:
            violations.append((f, lhs, rhs))
    omega = omega_ok = None
    if n <= minimizer_limit:
        omega = weighted_min_exact(g, p, minimizer_limit).omega
        omega_ok = omega >= -n
    return LemmaFReport(n, p.eps, p.d, trials, violations, min_gap, omega, omega_ok)
