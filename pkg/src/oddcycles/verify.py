"""Odd-cycle counts against (d^r - eps) n^r, a step-by-step audit of the
counting argument behind that bound, and batch scans over graph families."""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .density import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    DensityParams,
    DensityStatus,
    SizeLimitError,
    check_density_exact,
    min_density_ratio,
)
from .graph import FamilySpec, Graph, format_rational, gen_family, members, parse_rational
from .homcount import (
    count_cycle_homs,
    cycle_homs_via_decomposition,
    decomposition_sum,
    walk_table,
)


class CountMismatchError(RuntimeError):
    """The two independent C_r computations disagree."""


def _check_odd(r: int) -> int:
    if r < 3 or r % 2 == 0:
        raise ValueError(f"r must be an odd integer >= 3, got {r}")
    return (r - 1) // 2


def size_precondition(n: int, eps: Fraction) -> bool:
    """n >= 2 / (eps - eps^2), exactly."""
    return n * (eps - eps * eps) >= 2


def _density_status(g: Graph, p: DensityParams, supplied, limit: int) -> DensityStatus:
    if g.n <= limit:
        return check_density_exact(g, p, limit).status
    return DensityStatus(supplied) if supplied is not None else DensityStatus.UNVERIFIED


@dataclass(frozen=True)
class VerificationReport:
    n: int
    m: int
    r: int
    eps: Fraction
    d: Fraction
    precondition_n_ok: bool
    density_status: DensityStatus
    c_r: int
    bound: Fraction
    holds: bool
    slack: Fraction

    @property
    def conditional(self) -> bool:
        """True when the hypotheses of the bound are not both established."""
        return not (self.precondition_n_ok and self.density_status is DensityStatus.CERTIFIED)


def verify_main_theorem(g: Graph, p: DensityParams, r: int, density_status=None,
                        limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> VerificationReport:
    """Compare C_r(G) with (d^r - eps) n^r.

    Density is certified exhaustively when ``n <= limit``; beyond that the
    caller's ``density_status`` is recorded as-is (default: unverified).
    """
    _check_odd(r)
    status = _density_status(g, p, density_status, limit)
    c_r = count_cycle_homs(g, r)
    other = cycle_homs_via_decomposition(g, r)
    if c_r != other:
        raise CountMismatchError(f"C_{r}: trace gives {c_r}, decomposition gives {other}")
    bound = (p.d**r - p.eps) * g.n**r
    return VerificationReport(
        n=g.n, m=g.m, r=r, eps=p.eps, d=p.d,
        precondition_n_ok=size_precondition(g.n, p.eps),
        density_status=status, c_r=c_r, bound=bound,
        holds=c_r >= bound, slack=c_r - bound,
    )


# --- proof-chain audit ------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    name: str
    relation: str
    lhs: Fraction
    rhs: Fraction
    requires: tuple[str, ...] = ()  # hypotheses the step depends on

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


@dataclass
class ChainReport:
    n: int
    r: int
    eps: Fraction
    d: Fraction
    z_set: int  # bitmask
    precondition_n_ok: bool
    density_status: DensityStatus
    decomposition_ok: bool
    steps: list[ChainStep] = field(default_factory=list)

    @property
    def z_members(self) -> list[int]:
        return members(self.z_set)

    def hypotheses(self) -> set[str]:
        met = set()
        if self.density_status is DensityStatus.CERTIFIED:
            met.add("density")
        if self.precondition_n_ok:
            met.add("size")
        return met

    def step(self, name: str) -> ChainStep:
        return next(s for s in self.steps if s.name == name)

    @property
    def all_hold(self) -> bool:
        return self.decomposition_ok and all(s.holds for s in self.steps)

    @property
    def sound(self) -> bool:
        """Every step whose hypotheses are met holds."""
        met = self.hypotheses()
        return self.decomposition_ok and all(
            s.holds for s in self.steps if set(s.requires) <= met)


def audit_proof_chain(g: Graph, p: DensityParams, r: int,
                      limit: int = DEFAULT_EXHAUSTIVE_LIMIT) -> ChainReport:
    """Evaluate each inequality of the odd-cycle counting argument exactly.

    With r = 2m+1, q the m-edge walk table and R(x) = sum_y q(x, y):

    * ``q.bound`` every q(x, y) <= n^(m-1), so q/n^(m-1) is a valid weight
    * ``i``      C_r >= 2n^(2m-2) sum_{x in Z} sum_{yz in E} (q(x,y)/n^(m-1)) (q(x,z)/n^(m-1))
    * ``ii``     that sum >= sum_{x in Z} (d R(x)^2 - 2n^(2m-1))   [weighted density, per x]
    * ``ii.x``   the same, vertex by vertex: min over x in Z of the slack, against 0
    * ``ii.b``   >= d sum_x R(x)^2 - d eps^2 n^(2m+1) - 2n^(2m)   [x outside Z have R(x) < eps n^m]
    * ``iii``    eps n >= d eps^2 n + 2   [size hypothesis]
    * ``iii.b``  C_r >= (d/n)(sum q)^2 - eps n^(2m+1)   [Cauchy-Schwarz with iii]
    * ``iv.a``   sum q >= (2|E|/n^2)^m n^(m+1)   [path homomorphisms]
    * ``iv``     (d/n)(sum q)^2 >= d^(2m+1) n^(2m+1)
    * ``final``  C_r >= (d^r - eps) n^r

    Z is the set of x with R(x) >= eps n^m. The per-step ``requires`` tuple
    names the hypotheses ("density", "size") a step relies on.
    """
    m = _check_odd(r)
    n = g.n
    if n > limit:
        raise SizeLimitError(f"audit_proof_chain: n={n} exceeds the configured limit {limit}")
    if n == 0:
        raise ValueError("audit needs at least one vertex")
    eps, d = p.eps, p.d
    status = check_density_exact(g, p, limit).status
    table = walk_table(g, m)
    q = table.tolist()
    row = table.row_sums()
    c_r = count_cycle_homs(g, r)
    decomposition_ok = c_r == decomposition_sum(g, table)

    zs = [x for x in range(n) if row[x] >= eps * n**m]
    z_set = sum(1 << x for x in zs)
    scale = n ** (m - 1)
    edges = list(g.edges())
    per_x = {}
    for x in zs:
        inner = sum((Fraction(q[x][y], scale) * Fraction(q[x][z], scale) for y, z in edges),
                    Fraction(0))
        per_x[x] = 2 * n ** (2 * m - 2) * inner
    lhs_i = sum(per_x.values(), Fraction(0))
    lemma_terms = {x: d * row[x] ** 2 - 2 * n ** (2 * m - 1) for x in zs}
    rhs_ii = sum(lemma_terms.values(), Fraction(0))
    total = sum(row)
    square_sum = sum(v * v for v in row)

    steps = [
        ChainStep("q.bound", "n^(m-1) >= max q(x, y)", Fraction(scale),
                  Fraction(max(max(r_) for r_ in q))),
        ChainStep("i", "C_r >= 2n^(2m-2) sum_Z sum_E (q/n^(m-1))(q/n^(m-1))",
                  Fraction(c_r), lhs_i),
        ChainStep("ii", "sum_Z [...] >= sum_Z (d R(x)^2 - 2n^(2m-1))", lhs_i, rhs_ii,
                  ("density",)),
        ChainStep("ii.x", "min_{x in Z} ([...]_x - d R(x)^2 + 2n^(2m-1)) >= 0",
                  min((per_x[x] - lemma_terms[x] for x in zs), default=Fraction(0)),
                  Fraction(0), ("density",)),
        ChainStep("ii.b", "sum_Z (d R^2 - 2n^(2m-1)) >= d sum_V R^2 - d eps^2 n^(2m+1) - 2n^(2m)",
                  rhs_ii, d * square_sum - d * eps**2 * n ** (2 * m + 1) - 2 * n ** (2 * m)),
        ChainStep("iii", "eps n >= d eps^2 n + 2", eps * n, d * eps**2 * n + 2, ("size",)),
        ChainStep("iii.b", "C_r >= (d/n)(sum q)^2 - eps n^(2m+1)", Fraction(c_r),
                  d / n * total**2 - eps * n ** (2 * m + 1), ("density", "size")),
        ChainStep("iv.a", "sum q >= (2|E|/n^2)^m n^(m+1)", Fraction(total),
                  Fraction(2 * g.m, n * n) ** m * n ** (m + 1)),
        ChainStep("iv", "(d/n)(sum q)^2 >= d^(2m+1) n^(2m+1)", d / n * total**2,
                  d ** (2 * m + 1) * n ** (2 * m + 1), ("density",)),
        ChainStep("final", "C_r >= (d^r - eps) n^r", Fraction(c_r), (d**r - eps) * n**r,
                  ("density", "size")),
    ]
    return ChainReport(n, r, eps, d, z_set, size_precondition(n, eps), status,
                       decomposition_ok, steps)


# --- scans ------------------------------------------------------------------------

CSV_HEADER = ("family,params,n,m,eps,d,r,c_r,bound_num,bound_den,holds,"
              "slack_num,slack_den,density_status,precond_ok").split(",")


@dataclass(frozen=True)
class ScanSpec:
    """Family name, a parameter grid (cartesian product in key order), eps,
    d (a rational or ``"auto"``) and the cycle lengths to check."""

    family: str
    grid: Mapping[str, Sequence[Any]]
    eps: Fraction
    d: Fraction | str = "auto"
    rs: tuple[int, ...] = (3,)
    limit: int = DEFAULT_EXHAUSTIVE_LIMIT

    def instances(self) -> list[FamilySpec]:
        keys = list(self.grid)
        out = []
        for combo in itertools.product(*(self.grid[k] for k in keys)):
            kw = dict(zip(keys, combo))
            if "parts" in kw:
                kw["parts"] = tuple(kw["parts"])
            if "p" in kw:
                kw["p"] = parse_rational(kw["p"])
            out.append(FamilySpec(self.family, **kw))
        return out


@dataclass
class ScanResult:
    rows: list[dict[str, str]]

    @property
    def holds(self) -> int:
        return sum(row["holds"] == "true" for row in self.rows)

    @property
    def violations(self) -> int:
        return sum(row["holds"] == "false" for row in self.rows)

    @property
    def errors(self) -> int:
        return sum(row["holds"] == "error" for row in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def report_row(family: str, params: str, rep: VerificationReport) -> dict[str, str]:
    return {
        "family": family, "params": params, "n": str(rep.n), "m": str(rep.m),
        "eps": format_rational(rep.eps), "d": format_rational(rep.d), "r": str(rep.r),
        "c_r": str(rep.c_r),
        "bound_num": str(rep.bound.numerator), "bound_den": str(rep.bound.denominator),
        "holds": "true" if rep.holds else "false",
        "slack_num": str(rep.slack.numerator), "slack_den": str(rep.slack.denominator),
        "density_status": rep.density_status.value,
        "precond_ok": "true" if rep.precondition_n_ok else "false",
    }


def _error_row(family: str, params: str, r: int | str, exc: Exception) -> dict[str, str]:
    row = dict.fromkeys(CSV_HEADER, "")
    message = f"{type(exc).__name__}: {exc}".replace(",", ";").replace("\n", " ")
    row.update(family=family, params=params, r=str(r), holds="error",
               density_status=f"error: {message}")
    return row


def _scan_instance(args) -> list[dict[str, str]]:
    spec, fam, eps, d_spec, rs, limit = args
    params = fam.label()
    try:
        g = gen_family(fam)
        d = min_density_ratio(g, eps, limit) if d_spec == "auto" else parse_rational(d_spec)
        p = DensityParams(eps, d)
    except Exception as exc:  # row-level marker, scan continues
        return [_error_row(spec, params, r, exc) for r in rs]
    rows = []
    for r in rs:
        try:
            rows.append(report_row(spec, params, verify_main_theorem(g, p, r, limit=limit)))
        except Exception as exc:
            rows.append(_error_row(spec, params, r, exc))
    return rows


def scan_family(spec: ScanSpec, workers: int = 1) -> ScanResult:
    """One row per (instance, r) in grid order; ``workers > 1`` fans out over processes."""
    eps = parse_rational(spec.eps)
    jobs = [(spec.family, fam, eps, spec.d, tuple(spec.rs), spec.limit)
            for fam in spec.instances()]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_instance, jobs))
    else:
        chunks = [_scan_instance(job) for job in jobs]
    return ScanResult([row for chunk in chunks for row in chunk])
