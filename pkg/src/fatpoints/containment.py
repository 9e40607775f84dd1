"""Numerical criteria for ``I^(2r) ⊆ M^r I^r`` with I a fat points ideal.

The verdicts are symbolic: a proven verdict holds for every ``r >= 1`` and
general points.  The workhorse is a degree ``d`` such that

* ``d(d+3) >= sum m_i(m_i+1) + rho(m_4)`` (regularity of I is at most d+1),
* ``d >= m_1 + m_2``,
* ``d + 2 <= max(2*Sigma/sqrt(s+1), m_1+m_2+m_3+m_4, 2*m_1)`` (initial degree
  of ``I^(2r)`` is at least ``r(d+2)``, by the Seshadri bound, a Cremona
  transformation, or the biggest point respectively).

Each satisfied inequality is recorded as a :class:`Fact` whose two sides
are integers, so a transcript can be re-checked without this module.
Comparisons against ``A/sqrt(k)`` appear squared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Sequence

from .core import HypothesisNotMet, MultiplicitySequence, QuadraticBound, le_quadratic

ROUTE_ALL_ONES = "all-ones"
ROUTE_ALMOST_SIMPLE = "almost-simple"
ROUTE_ALMOST_HOMOGENEOUS = "almost-homogeneous"
ROUTE_UNIFORMLY_FAT = "uniformly-fat"
ROUTE_DIRECT = "direct-criterion"
ROUTE_UNKNOWN = "unknown"

NAGATA = "nagata"
CREMONA = "cremona"
BIG_POINT = "big-point"

_OPS = {
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


@dataclass(frozen=True)
class Fact:
    """An integer inequality ``lhs op rhs`` with a readable form."""

    name: str
    form: str
    lhs: int
    op: str
    rhs: int

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {"name": self.name, "form": self.form, "lhs": self.lhs, "op": self.op, "rhs": self.rhs, "holds": self.holds}

    def __str__(self) -> str:
        mark = "ok" if self.holds else "FAILS"
        return f"{self.name}: {self.form}: {self.lhs} {self.op} {self.rhs} [{mark}]"


@dataclass(frozen=True)
class ContainmentVerdict:
    mults: MultiplicitySequence
    proven: bool
    route: str
    witness_d: int | None = None
    branch: str | None = None
    branches: tuple[str, ...] = ()
    facts: tuple[Fact, ...] = ()
    diagnostics: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.proven and self.route == ROUTE_DIRECT:
            if self.witness_d is None or not self.branches:
                raise AssertionError("direct-criterion proof without witness")
        if self.proven and any(not f.holds for f in self.facts if f.name.startswith("witness:")):
            raise AssertionError("proven verdict with a failing witness inequality")

    def to_dict(self) -> dict:
        return {
            "mults": self.mults.compressed(),
            "points": self.mults.s,
            "proven": self.proven,
            "route": self.route,
            "witness_d": self.witness_d,
            "branch": self.branch,
            "branches": list(self.branches),
            "facts": [f.to_dict() for f in self.facts],
            "diagnostics": list(self.diagnostics),
        }


def rho(m: int) -> int:
    if m < 1:
        raise ValueError(f"rho is defined for m >= 1, got {m}")
    return 0 if m == 1 else (3 * m - 1) * (m - 2)


def min_degree_for(D: int) -> int:
    """Least ``d >= 0`` with ``d(d+3) >= D``."""
    if D <= 0:
        return 0
    d = max((isqrt(9 + 4 * D) - 3) // 2, 0)
    while d * (d + 3) < D:
        d += 1
    while d > 0 and (d - 1) * (d + 2) >= D:
        d -= 1
    return d


@dataclass(frozen=True)
class _Aggregate:
    """Just the numbers the criteria read off a multiplicity sequence."""

    s: int
    sigma: int
    q: int
    top: tuple[int, int, int, int]

    @classmethod
    def of(cls, ms: MultiplicitySequence) -> "_Aggregate":
        top = tuple(ms.values[:4]) + (0,) * max(0, 4 - ms.s)
        return cls(ms.s, ms.total, ms.sum_squares, top)  # type: ignore[arg-type]

    @classmethod
    def from_counts(cls, pairs: Sequence[tuple[int, int]]) -> "_Aggregate":
        pairs = sorted(pairs, reverse=True)
        top: list[int] = []
        for v, c in pairs:
            top.extend([v] * min(c, 4 - len(top)))
            if len(top) == 4:
                break
        top += [0] * (4 - len(top))
        return cls(
            sum(c for _, c in pairs),
            sum(v * c for v, c in pairs),
            sum(v * v * c for v, c in pairs),
            tuple(top),  # type: ignore[arg-type]
        )

    @property
    def reg_target(self) -> int:
        return self.q + self.sigma + rho(self.top[3])

    @property
    def nagata(self) -> QuadraticBound:
        return QuadraticBound(2 * self.sigma, self.s + 1)


def _witness_facts(agg: _Aggregate, d: int, prefix: str = "witness") -> tuple[list[Fact], list[str]]:
    m1, m2, m3, m4 = agg.top
    nag = agg.nagata
    facts = [
        Fact(f"{prefix}:reg", "d(d+3) >= sum m(m+1) + rho(m4)", d * (d + 3), ">=", agg.reg_target),
        Fact(f"{prefix}:m12", "d >= m1+m2", d, ">=", m1 + m2),
    ]
    alpha = [
        (NAGATA, Fact(f"{prefix}:alpha:{NAGATA}", "(d+2)^2*(s+1) <= (2*Sigma)^2", (d + 2) ** 2 * nag.k, "<=", nag.A**2)),
        (CREMONA, Fact(f"{prefix}:alpha:{CREMONA}", "d+2 <= m1+m2+m3+m4", d + 2, "<=", m1 + m2 + m3 + m4)),
        (BIG_POINT, Fact(f"{prefix}:alpha:{BIG_POINT}", "d+2 <= 2*m1", d + 2, "<=", 2 * m1)),
    ]
    branches = [name for name, f in alpha if f.holds]
    if branches:
        facts += [f for _, f in alpha if f.holds]
    else:
        facts += [f for _, f in alpha]
    return facts, branches


def _window(agg: _Aggregate) -> tuple[int, int]:
    m1, m2, m3, m4 = agg.top
    d_lo = max(min_degree_for(agg.reg_target), m1 + m2)
    upper = max(agg.nagata.floor(), m1 + m2 + m3 + m4, 2 * m1)
    return d_lo, upper - 2


def _minimal_witness(agg: _Aggregate) -> int | None:
    lo, hi = _window(agg)
    return lo if lo <= hi else None


def _zastosowanie(agg: _Aggregate):
    """Minimal witness degree (or None), window, and facts at the critical degree."""
    d_lo, d_hi = _window(agg)
    facts, branches = _witness_facts(agg, d_lo)
    witness = d_lo if d_lo <= d_hi else None
    if witness is not None and not branches:
        raise AssertionError("window and branch comparison disagree")
    return witness, (d_lo, d_hi), facts, branches


def zastosowanie_witness(pairs: Sequence[tuple[int, int]]) -> int | None:
    """Fast path for scans: minimal witness degree from ``(value, count)`` pairs."""
    agg = _Aggregate.from_counts(pairs)
    if agg.s < 9:
        raise HypothesisNotMet("the degree criterion needs at least 9 points")
    return _minimal_witness(agg)


def check_zastosowanie(mults: Sequence[int]) -> ContainmentVerdict:
    """Search for the least degree ``d`` meeting all three inequalities.

    The admissible degrees form the interval from the least ``d`` passing the
    first two inequalities up to ``floor(max(...)) - 2``, so the search is
    a single comparison at the lower end.
    """
    ms = mults if isinstance(mults, MultiplicitySequence) else MultiplicitySequence(mults)
    if ms.s < 9:
        raise HypothesisNotMet("the degree criterion needs at least 9 points")
    agg = _Aggregate.of(ms)
    witness, (lo, hi), facts, branches = _zastosowanie(agg)
    diag = [
        f"search window d in [{lo}, {hi}]",
        f"Sigma={agg.sigma} Q={agg.q} s={agg.s} rho(m4)={rho(agg.top[3])}",
    ]
    if witness is None:
        diag.append(f"no witness: d={lo} is forced by the first two inequalities and fails all three alpha branches")
        facts = [Fact(f.name.replace("witness", "critical", 1), f.form, f.lhs, f.op, f.rhs) for f in facts]
        return ContainmentVerdict(ms, False, ROUTE_UNKNOWN, facts=tuple(facts), diagnostics=tuple(diag))
    diag.append(f"reg(I) <= {witness + 1}; alpha(I^(2r)) >= r*{witness + 2} via {', '.join(branches)}")
    return ContainmentVerdict(
        ms, True, ROUTE_DIRECT, witness, branches[0], tuple(branches), tuple(facts), tuple(diag)
    )


def cremona_transform(t: int, mults: Sequence[int]) -> tuple[int, list[int]]:
    """Standard quadratic transformation based at the first three points."""
    if len(mults) < 3:
        raise ValueError("the Cremona transformation needs three base points")
    a, b, c = mults[0], mults[1], mults[2]
    return 2 * t - a - b - c, [t - b - c, t - a - c, t - a - b, *mults[3:]]


def empty_by_degree(t: int, mults: Sequence[int]) -> bool:
    """A plane system is obviously empty if its degree is negative or below a multiplicity."""
    return t < 0 or any(m > t for m in mults)


def gwiazdka_hypothesis(D: int, R: QuadraticBound) -> bool:
    """Exact test of ``R^2 - 3R >= D`` for ``R = A/sqrt(k)``."""
    A, k = R.A, R.k
    gap = A * A - D * k  # k(R^2 - D), must dominate 3A*sqrt(k)
    return gap >= 0 and gap * gap >= 9 * A * A * k


def _gwiazdka_facts(D: int, R: QuadraticBound) -> tuple[Fact, Fact]:
    gap = R.A * R.A - D * R.k
    return (
        Fact("gwiazdka:gap", "A^2 - D*k >= 0", gap, ">=", 0),
        Fact("gwiazdka:square", "(A^2 - D*k)^2 >= 9*A^2*k", gap * gap, ">=", 9 * R.A * R.A * R.k),
    )


def find_d_gwiazdka(D: int, R: QuadraticBound) -> int | None:
    """Least ``d`` with ``d(d+3) >= D`` and ``d + 2 <= R``, if one exists."""
    d = min_degree_for(D)
    return d if le_quadratic(d + 2, R) else None


def _drugie(m0: int, s: int) -> tuple[int, Fact, Fact]:
    if m0 < 2 or s + 1 < 9:
        raise HypothesisNotMet(f"needs m0 >= 2 and at least 9 points, got m0={m0}, s={s}")
    bound = s + m0 * (m0 + 1) // 2
    t = max((1 + isqrt(1 + 8 * bound)) // 2, 1)
    while t * (t - 1) // 2 >= bound:
        t -= 1
    while (t + 1) * t // 2 < bound:
        t += 1
    nag = Fact("drugie:nagata", "4*(m0+s)^2 >= (t+1)^2*(s+2)", 4 * (m0 + s) ** 2, ">=", (t + 1) ** 2 * (s + 2))
    big = Fact("drugie:big-point", "2*m0 >= t+1", 2 * m0, ">=", t + 1)
    return t, nag, big


def drugie_tmax(m0: int, s: int) -> int:
    """Largest ``t`` with ``t(t-1)/2 < s + m0(m0+1)/2``."""
    return _drugie(m0, s)[0]


def check_drugie(m0: int, s: int) -> bool:
    """One point of multiplicity ``m0`` plus ``s`` simple points."""
    _, nag, big = _drugie(m0, s)
    return nag.holds or big.holds


def _hopefullylast(m0: int, m: int, s: int, part: str) -> tuple[Fact, Fact]:
    if m0 < 1 or m < 2 or s < 8:
        raise HypothesisNotMet(f"needs m0 >= 1, m >= 2, s >= 8; got {m0}, {m}, {s}")
    sigma = s * m + m0
    q = s * m * m + m0 * m0
    if part == "a":
        hyp = Fact("hopefullylast:a:hyp", "m0^2*(s+2) >= Sigma^2", m0 * m0 * (s + 2), ">=", sigma * sigma)
        concl = Fact("hopefullylast:a", "4*m0^2 >= Q+Sigma+3m^2+6m0", 4 * m0 * m0, ">=", q + sigma + 3 * m * m + 6 * m0)
    elif part == "b":
        hyp = Fact("hopefullylast:b:hyp", "m0^2*(s+2) <= Sigma^2", m0 * m0 * (s + 2), "<=", sigma * sigma)
        concl = Fact(
            "hopefullylast:b",
            "4*Sigma^2 >= (s+2)*(m0^2+(s+3)m^2+3*Sigma)",
            4 * sigma * sigma,
            ">=",
            (s + 2) * (m0 * m0 + (s + 3) * m * m + 3 * sigma),
        )
    else:
        raise ValueError(f"part must be 'a' or 'b', got {part!r}")
    return hyp, concl


def check_hopefullylast(m0: int, m: int, s: int, part: str) -> bool:
    """Does hypothesis imply conclusion for this instance (vacuous if not applicable)."""
    hyp, concl = _hopefullylast(m0, m, s, part)
    return (not hyp.holds) or concl.holds


def _comb1_fact(agg: _Aggregate) -> tuple[int, Fact, Fact]:
    t = 4 * agg.sigma**2 - (agg.s + 1) * (agg.q + agg.sigma + rho(agg.top[3]))
    sign = Fact("comb1:T>=0", "T = 4*Sigma^2-(s+1)(Q+Sigma+rho(m4)) >= 0", t, ">=", 0)
    square = Fact("comb1:T^2", "T^2 >= 36*Sigma^2*(s+1)", t * t, ">=", 36 * agg.sigma**2 * (agg.s + 1))
    return t, sign, square


def check_comb1(mults: Sequence[int]) -> bool:
    ms = mults if isinstance(mults, MultiplicitySequence) else MultiplicitySequence(mults)
    if ms.s < 9:
        raise HypothesisNotMet("needs at least 9 points")
    if 2 * ms.m(ms.s) < ms.m(1):
        raise HypothesisNotMet("needs m_s >= m_1/2")
    _, sign, square = _comb1_fact(_Aggregate.of(ms))
    return sign.holds and square.holds


_NOWA2_CONSTRAINTS = "x >= y, 2y >= x, s >= 9, t >= 4, s >= t"


def nowa2_value(x: int, y: int, s: int, t: int) -> int:
    if not (x >= y and 2 * y >= x and s >= 9 and t >= 4 and s >= t):
        raise HypothesisNotMet(f"({x}, {y}, {s}, {t}) violates {_NOWA2_CONSTRAINTS}")
    return (
        (3 * x * x - 6 * x) * s * s
        + (16 * x * y - 7 * x * x - 4 * y * y + 6 * x - 12 * y) * s * t
        + 4 * (x * x + 4 * y * y - 4 * x * y) * t * t
        + 4 * (x * x - y * y - 4 * x * y - 9 * x + 6 * y) * s
        + 3 * (16 * x * y - 5 * x * x - 12 * y * y + 2 * x - 4 * y) * t
        + 5 * x * x + 12 * y * y - 32 * x * y + 24 * y - 30 * x
    )


def check_nowa2(x: int, y: int, s: int, t: int) -> bool:
    return nowa2_value(x, y, s, t) >= 0


def is_almost_homogeneous(ms: MultiplicitySequence) -> bool:
    v = ms.values
    return len(set(v[1:])) <= 1 or len(set(v[:-1])) <= 1


def is_uniformly_fat(ms: MultiplicitySequence) -> bool:
    return 2 * ms.m(ms.s) >= ms.m(1)


def _split_almost_homogeneous(ms: MultiplicitySequence) -> tuple[int, int, int]:
    """``(m0, m, s)``: distinguished multiplicity, common one, and how many share it."""
    v = ms.values
    if len(set(v[1:])) <= 1:
        return v[0], v[-1], len(v) - 1
    return v[-1], v[0], len(v) - 1


def _finish_with_degree(ms, agg, d, route, facts, diag) -> ContainmentVerdict | None:
    m1, m2 = agg.top[0], agg.top[1]
    if d < m1 + m2:
        diag.append(f"d={d} < m1+m2; switching to d'={m1 + m2}")
        d = m1 + m2
    wfacts, branches = _witness_facts(agg, d)
    facts = facts + wfacts
    if not all(f.holds for f in wfacts):
        diag.append(f"{route} route: degree {d} does not verify")
        return None
    diag.append(f"reg(I) <= {d + 1}; alpha(I^(2r)) >= r*{d + 2} via {', '.join(branches)}")
    return ContainmentVerdict(ms, True, route, d, branches[0], tuple(branches), tuple(facts), tuple(diag))


def theorem_b_dispatch(mults: Sequence[int]) -> ContainmentVerdict:
    """Route a multiplicity sequence to the first criterion that settles it."""
    ms = mults if isinstance(mults, MultiplicitySequence) else MultiplicitySequence(mults)
    n = ms.s
    diag: list[str] = []
    if ms.m(1) == 1:
        fact = Fact("all-ones", "m1 == 1", ms.m(1), "==", 1)
        return ContainmentVerdict(ms, True, ROUTE_ALL_ONES, facts=(fact,), diagnostics=("simple points",))
    if n < 9:
        diag.append(f"only {n} points; the numerical criteria need at least 9")
        return ContainmentVerdict(ms, False, ROUTE_UNKNOWN, diagnostics=tuple(diag))
    agg = _Aggregate.of(ms)

    if ms.m(2) == 1:
        m0, s = ms.m(1), n - 1
        t, nag, big = _drugie(m0, s)
        facts = (Fact("drugie:tmax", "t_max(t_max-1)/2 < s+m0(m0+1)/2", t * (t - 1) // 2, "<", s + m0 * (m0 + 1) // 2), nag, big)
        if nag.holds or big.holds:
            return ContainmentVerdict(
                ms, True, ROUTE_ALMOST_SIMPLE, facts=facts, diagnostics=(f"m0={m0}, s={s}, regularity at most {t}",)
            )
        diag.append(f"almost-simple check failed for m0={m0}, s={s}")

    split = _split_almost_homogeneous(ms) if is_almost_homogeneous(ms) else None
    if split is not None and split[1] >= 2:
        m0, m, s = split
        sigma = s * m + m0
        D = m0 * (m0 + 1) + s * m * (m + 1) + rho(m)
        if m0 * m0 * (s + 2) >= sigma * sigma:
            R, part = QuadraticBound(2 * m0, 1), "a"
        else:
            R, part = QuadraticBound(2 * sigma, s + 2), "b"
        hyp, concl = _hopefullylast(m0, m, s, part)
        facts = [hyp, concl, *_gwiazdka_facts(D, R)]
        diag.append(f"m0={m0}, m={m}, s={s}, D={D}, R={R} (part {part})")
        d = find_d_gwiazdka(D, R)
        if d is not None:
            done = _finish_with_degree(ms, agg, d, ROUTE_ALMOST_HOMOGENEOUS, facts, diag)
            if done is not None:
                return done
        else:
            diag.append("no degree found from the almost-homogeneous bound")

    if is_uniformly_fat(ms):
        t, sign, square = _comb1_fact(agg)
        D = agg.reg_target
        R = agg.nagata
        facts = [sign, square, *_gwiazdka_facts(D, R)]
        diag.append(f"uniformly fat: T={t}, D={D}, R={R}")
        if sign.holds and square.holds:
            d = find_d_gwiazdka(D, R)
            if d is not None:
                done = _finish_with_degree(ms, agg, d, ROUTE_UNIFORMLY_FAT, facts, diag)
                if done is not None:
                    return done
        else:
            diag.append("comb1 inequality fails for this sequence")

    direct = check_zastosowanie(ms)
    if direct.proven:
        return ContainmentVerdict(
            ms, True, ROUTE_DIRECT, direct.witness_d, direct.branch, direct.branches, direct.facts,
            tuple(diag) + direct.diagnostics,
        )
    return ContainmentVerdict(ms, False, ROUTE_UNKNOWN, facts=direct.facts, diagnostics=tuple(diag) + direct.diagnostics)
