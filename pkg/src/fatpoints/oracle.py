"""Interpolation oracle over a prime field.

Plane curves of degree ``d`` are written in the affine chart ``z = 1`` as
polynomials of degree ``<= d`` in ``x, y``; monomial ``x^i y^j`` is column
``monomial_index(i, j)``.  A point of multiplicity ``m`` contributes one row
per Hasse derivative of order ``< m``.

Rank observed at one configuration never exceeds the rank at general
points (a nonzero minor mod p lifts to a nonzero minor over the integers),
so full rank certifies non-speciality and rank equal to the column count
certifies emptiness.  Anything short of that is only evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from .core import MultiplicitySequence, edim

DEFAULT_PRIME = 65537
MAX_PRIME = 2**31
MAX_CONTAINMENT_DEGREE = 30


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int, degree: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= MAX_PRIME:
        raise ValueError(f"prime must be below 2^31 for int64 elimination, got {p}")
    if p <= degree:
        raise ValueError(f"prime {p} must exceed the degree {degree}")


def monomials(d: int) -> list[tuple[int, int]]:
    """Exponents ``(i, j)`` with ``i + j <= d``, ordered by total degree then ``j``."""
    return [(e - j, j) for e in range(d + 1) for j in range(e + 1)]


def monomial_index(i: int, j: int) -> int:
    e = i + j
    return e * (e + 1) // 2 + j


@dataclass(frozen=True)
class PointConfig:
    p: int
    points: tuple[tuple[int, int], ...]
    seed: int
    trial: int = 0

    def to_dict(self) -> dict:
        return {"p": self.p, "seed": self.seed, "trial": self.trial, "points": [list(pt) for pt in self.points]}


def random_config(s: int, p: int = DEFAULT_PRIME, seed: int = 0, trial: int = 0) -> PointConfig:
    """``s`` distinct affine points of ``F_p^2`` from a Philox stream keyed by ``(seed, trial)``."""
    if seed < 0 or trial < 0:
        raise ValueError("seed and trial must be non-negative")
    if s > p * p:
        raise ValueError("not enough points in the plane")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))
    seen: set[tuple[int, int]] = set()
    points: list[tuple[int, int]] = []
    while len(points) < s:
        x, y = (int(v) for v in rng.integers(0, p, size=2))
        if (x, y) not in seen:
            seen.add((x, y))
            points.append((x, y))
    return PointConfig(p, tuple(points), seed, trial)


def conditions_matrix(d: int, mults: Sequence[int], config: PointConfig) -> np.ndarray:
    """Rows: Hasse derivatives of order ``< m_i`` at point ``i``; columns: monomials of degree ``<= d``."""
    p = config.p
    if len(mults) > len(config.points):
        raise ValueError("more multiplicities than points")
    mons = monomials(d)
    ii = np.array([i for i, _ in mons], dtype=np.int64)
    jj = np.array([j for _, j in mons], dtype=np.int64)
    binom = np.zeros((d + 1, d + 1), dtype=np.int64)
    for n in range(d + 1):
        for k in range(n + 1):
            binom[n, k] = comb(n, k) % p
    rows: list[np.ndarray] = []
    for m, (a, b) in zip(mults, config.points):
        pow_a = np.array([pow(a, e, p) for e in range(d + 1)], dtype=np.int64)
        pow_b = np.array([pow(b, e, p) for e in range(d + 1)], dtype=np.int64)
        for order in range(m):
            for beta in range(order + 1):
                alpha = order - beta
                ok = (ii >= alpha) & (jj >= beta)
                ia = np.where(ok, ii - alpha, 0)
                jb = np.where(ok, jj - beta, 0)
                coef = binom[ii, np.minimum(alpha, ii)] * binom[jj, np.minimum(beta, jj)] % p
                val = coef * pow_a[ia] % p * pow_b[jb] % p
                rows.append(np.where(ok, val, 0))
    if not rows:
        return np.zeros((0, len(mons)), dtype=np.int64)
    return np.vstack(rows)


def rref_mod_p(matrix, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over ``F_p``; returns the nonzero rows and pivot columns."""
    A = np.array(matrix, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    n_rows, n_cols = A.shape
    pivots: list[int] = []
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        nz = np.flatnonzero(A[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, c]), p - 2, p)
        A[rank] = A[rank] * inv % p
        col = A[:, c].copy()
        col[rank] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[rank]) % p) % p
        pivots.append(c)
        rank += 1
    return A[:rank], pivots


def rank_mod_p(matrix, p: int = DEFAULT_PRIME) -> int:
    A = np.asarray(matrix)
    if A.size == 0:
        return 0
    return len(rref_mod_p(A, p)[1])


def kernel_mod_p(matrix, p: int, n_cols: int | None = None) -> np.ndarray:
    """Basis of the right kernel, one vector per row."""
    A = np.asarray(matrix, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 and A.size else int(n_cols or 0)
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = (-R[i, f]) % p
    return basis


@dataclass(frozen=True)
class DimReport:
    d: int
    mults: tuple[int, ...]
    p: int
    seed: int
    rows: int
    cols: int
    ranks: tuple[int, ...]
    edim: int

    @property
    def max_rank(self) -> int:
        return max(self.ranks) if self.ranks else 0

    @property
    def dim_observed(self) -> int:
        return self.cols - 1 - self.max_rank

    @property
    def empty(self) -> bool:
        return self.max_rank == self.cols

    @property
    def nonspecial(self) -> bool:
        return self.max_rank == min(self.rows, self.cols)

    @property
    def certificate(self) -> str:
        if self.empty:
            return "empty"
        if self.nonspecial:
            return "nonspecial"
        return "none"

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "mults": list(self.mults),
            "prime": self.p,
            "seed": self.seed,
            "rows": self.rows,
            "cols": self.cols,
            "ranks": list(self.ranks),
            "dim_observed": self.dim_observed,
            "edim": self.edim,
            "certificate": self.certificate,
            "nonspecial": self.nonspecial,
            "empty": self.empty,
        }


def dim_system(
    d: int, mults: Sequence[int], p: int = DEFAULT_PRIME, trials: int = 3, seed: int = 0
) -> DimReport:
    """Observed dimension of L(d; mults) over ``trials`` random configurations.

    Sampling stops early once the rank is as large as it can be.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if trials < 1:
        raise ValueError("need at least one trial")
    _check_prime(p, d)
    ms = tuple(MultiplicitySequence(mults).values)
    rows = sum(comb(m + 1, 2) for m in ms)
    cols = comb(d + 2, 2)
    ceiling = min(rows, cols)
    ranks: list[int] = []
    for trial in range(trials):
        config = random_config(len(ms), p, seed, trial)
        ranks.append(rank_mod_p(conditions_matrix(d, ms, config), p))
        if ranks[-1] == ceiling:
            break
    return DimReport(d, ms, p, seed, rows, cols, tuple(ranks), edim(2, d, ms))


@dataclass(frozen=True)
class AlphaReport:
    mults: tuple[int, ...]
    scale: int
    alpha_lb: int
    alpha_observed: int
    exact: bool
    reports: tuple[DimReport, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "mults": list(self.mults),
            "scale": self.scale,
            "alpha_lb": self.alpha_lb,
            "alpha_observed": self.alpha_observed,
            "exact": self.exact,
            "scan": [{"d": r.d, "dim_observed": r.dim_observed, "certificate": r.certificate} for r in self.reports],
        }


def alpha_scan(
    mults: Sequence[int], scale: int = 1, p: int = DEFAULT_PRIME, trials: int = 3, seed: int = 0
) -> AlphaReport:
    """Scan degrees upward on ``scale * m_i`` until a curve is observed.

    ``alpha_lb`` is certified; ``alpha_observed`` is the least degree with a
    curve at the sampled points and equals the true initial degree when
    ``exact`` (observed dimension matched the expected one there).
    """
    if scale < 1:
        raise ValueError("scale must be positive")
    scaled = [scale * m for m in MultiplicitySequence(mults)]
    reports: list[DimReport] = []
    d = 0
    while True:
        rep = dim_system(d, scaled, p, trials, seed)
        reports.append(rep)
        if not rep.empty:
            break
        d += 1
    exact = rep.dim_observed == rep.edim >= 0
    return AlphaReport(tuple(scaled), scale, d, d, exact, tuple(reports))


def _products(F: np.ndarray, a: int, G: np.ndarray, b: int, p: int) -> np.ndarray:
    """All pairwise products of the rows of ``F`` (degree a) and ``G`` (degree b)."""
    size = comb(a + b + 2, 2)
    if len(F) == 0 or len(G) == 0:
        return np.zeros((0, size), dtype=np.int64)
    mons_a, mons_b = monomials(a), monomials(b)
    target = np.array(
        [[monomial_index(i1 + i2, j1 + j2) for (i2, j2) in mons_b] for (i1, j1) in mons_a], dtype=np.int64
    ).ravel()
    out = np.zeros((len(F) * len(G), size), dtype=np.int64)
    row = 0
    for f in F:
        outer = (f[:, None, None] * G.T[None, :, :]) % p  # (len_a, len_b, n_G)
        outer = outer.reshape(len(mons_a) * len(mons_b), len(G))
        block = np.zeros((size, len(G)), dtype=np.int64)
        np.add.at(block, target, outer)
        out[row : row + len(G)] = (block % p).T
        row += len(G)
    return out


def _span(vectors: np.ndarray, p: int, size: int) -> np.ndarray:
    if len(vectors) == 0:
        return np.zeros((0, size), dtype=np.int64)
    return rref_mod_p(vectors, p)[0]


def default_t_max(mults: Sequence[int], r: int) -> int:
    """``r * (reg bound + 1)``; a heuristic cut-off, not a proven one."""
    from .speciality import reg_upper_bound

    ms = MultiplicitySequence(mults)
    reg = reg_upper_bound(ms) if ms.s >= 4 else ms.total
    return r * (reg + 1)


@dataclass(frozen=True)
class ContainmentReport:
    mults: tuple[int, ...]
    r: int
    t_max: int
    config: PointConfig
    degrees: tuple[dict, ...]

    @property
    def holds(self) -> bool:
        return all(row["contained"] for row in self.degrees)

    def to_dict(self) -> dict:
        return {
            "mults": list(self.mults),
            "r": self.r,
            "t_max": self.t_max,
            "prime": self.config.p,
            "seed": self.config.seed,
            "holds": self.holds,
            "degrees": list(self.degrees),
        }


def truncated_containment_check(
    mults: Sequence[int], r: int, p: int = DEFAULT_PRIME, t_max: int = 8, seed: int = 0
) -> ContainmentReport:
    """Compare ``(I^(2r))_t`` with ``(M^r I^r)_t`` for ``t <= t_max`` at one random configuration.

    Uses ``(M^r I^r)_t = (I^r)_{t-r} * S_r``.  Agreement is evidence, a
    mismatch is a red flag for that configuration only.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if t_max < 0 or t_max > MAX_CONTAINMENT_DEGREE:
        raise ValueError(f"t_max must lie in [0, {MAX_CONTAINMENT_DEGREE}] (instance-size guard)")
    _check_prime(p, t_max)
    ms = tuple(MultiplicitySequence(mults).values)
    config = random_config(len(ms), p, seed)

    ideal = [kernel_mod_p(conditions_matrix(a, ms, config), p) for a in range(t_max + 1)]
    power = list(ideal)  # graded pieces of I^k, k = 1 for now
    for _ in range(r - 1):
        nxt = []
        for u in range(t_max + 1):
            size = comb(u + 2, 2)
            chunks = [_products(power[a], a, ideal[u - a], u - a, p) for a in range(u + 1)]
            nxt.append(_span(np.vstack(chunks) if chunks else np.zeros((0, size), np.int64), p, size))
        power = nxt

    monos_r = np.eye(comb(r + 2, 2), dtype=np.int64)
    symbolic = [2 * r * m for m in ms]
    rows = []
    for t in range(t_max + 1):
        size = comb(t + 2, 2)
        sym = kernel_mod_p(conditions_matrix(t, symbolic, config), p)
        if t >= r:
            target = _span(_products(power[t - r], t - r, monos_r, r, p), p, size)
        else:
            target = np.zeros((0, size), dtype=np.int64)
        dim_target = len(target)
        joint = rank_mod_p(np.vstack([target, sym]), p) if len(sym) else dim_target
        rows.append(
            {"t": t, "dim_symbolic": len(sym), "dim_target": dim_target, "contained": joint == dim_target}
        )
    return ContainmentReport(ms, r, t_max, config, tuple(rows))
