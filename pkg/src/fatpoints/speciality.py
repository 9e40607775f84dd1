"""Non-speciality and h^1-regularity of plane systems L(d; m_1, ..., m_s).

Two one-sided provers live here.  The chain prover reduces the staircase
``(1, 2, ..., d+1)`` once per multiplicity; if every reduction succeeds the
system is non-special, and effective when something is left over.  The
closed-form criterion needs ``d >= m_1 + m_2`` and enough virtual dimension
compared with a quadratic in ``m_4``.  Neither ever claims speciality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Sequence, Union

from .core import HypothesisNotMet, IntSequence, MultiplicitySequence, vdim
from .reduction import ChainFailure, ReductionCertificate, ReductionStep, reduce_chain, reduce_once


class Status(str, Enum):
    PROVEN = "proven"
    UNKNOWN = "unknown"
    REFUTED_BY_VDIM = "refuted-by-vdim"


ROUTE_CHAIN = "reduction-chain"
ROUTE_CRITERION = "criterion"


@dataclass(frozen=True)
class SpecialityVerdict:
    d: int
    mults: IntSequence
    nonspecial: Status
    effective: Status
    h1_regular: Status
    route: str
    certificate: ReductionCertificate | None = None
    failure: ChainFailure | None = None
    order: IntSequence = ()
    details: dict | None = None

    def __post_init__(self):
        if self.h1_regular is Status.PROVEN and not (
            self.nonspecial is Status.PROVEN and self.effective is Status.PROVEN
        ):
            raise AssertionError("h1-regular requires non-special and effective")
        if self.route == ROUTE_CHAIN and self.nonspecial is Status.PROVEN and self.certificate is None:
            raise AssertionError("chain verdict without certificate")

    @property
    def vdim(self) -> int:
        return vdim(2, self.d, self.mults)

    @property
    def proven_anything(self) -> bool:
        return self.nonspecial is Status.PROVEN

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "mults": list(self.mults),
            "order": list(self.order),
            "vdim": self.vdim,
            "nonspecial": self.nonspecial.value,
            "effective": self.effective.value,
            "h1_regular": self.h1_regular.value,
            "route": self.route,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "failure": self.failure.to_dict() if self.failure else None,
            "details": self.details,
        }


def staircase(d: int) -> IntSequence:
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return tuple(range(1, d + 2))


@dataclass(frozen=True)
class OrderStrategy:
    """How multiplicities are ordered before reducing.

    ``backtrack`` explores orders depth first, largest multiplicity first,
    and gives up after ``budget`` dead ends.  A budget of 1 is the
    descending order.
    """

    kind: str = "as-given"
    budget: int = 1

    KINDS = ("as-given", "descending", "kryterium", "backtrack")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown order strategy {self.kind!r}")
        if self.budget < 1:
            raise ValueError("backtracking budget must be at least 1")

    @classmethod
    def parse(cls, text: Union[str, "OrderStrategy"]) -> "OrderStrategy":
        if isinstance(text, OrderStrategy):
            return text
        if text.startswith("backtrack"):
            _, _, n = text.partition("=")
            return cls("backtrack", int(n) if n else 1)
        return cls(text)

    def __str__(self) -> str:
        return f"backtrack={self.budget}" if self.kind == "backtrack" else self.kind


def order_kryterium(mults: Sequence[int]) -> IntSequence:
    """Descending order with ``m_4`` moved to the end."""
    ms = MultiplicitySequence(mults).values
    if len(ms) < 4:
        raise HypothesisNotMet("the criterion order needs at least 4 multiplicities")
    return ms[:3] + ms[4:] + (ms[3],)


def _verdict_from_chain(d: int, mults: Sequence[int], result) -> SpecialityVerdict:
    order = tuple(mults)
    if isinstance(result, ChainFailure):
        u = Status.UNKNOWN
        return SpecialityVerdict(d, tuple(sorted(order, reverse=True)), u, u, u, ROUTE_CHAIN, failure=result, order=order)
    if result.final_size > 0:
        p = Status.PROVEN
        return SpecialityVerdict(d, tuple(sorted(order, reverse=True)), p, p, p, ROUTE_CHAIN, certificate=result, order=order)
    return SpecialityVerdict(
        d,
        tuple(sorted(order, reverse=True)),
        Status.PROVEN,
        Status.REFUTED_BY_VDIM,
        Status.UNKNOWN,
        ROUTE_CHAIN,
        certificate=result,
        order=order,
    )


class _Exhausted(Exception):
    pass


def _backtrack_chain(d: int, mults: Sequence[int], budget: int):
    start = staircase(d)
    remaining = Counter(mults)
    steps: list[ReductionStep] = []
    first_failure: list[ChainFailure] = []
    dead_ends = 0

    def dfs(state: IntSequence) -> bool:
        nonlocal dead_ends
        if not remaining:
            return True
        for m in sorted(remaining, reverse=True):
            result = reduce_once(state, m)
            if not result.reducible:
                if not first_failure:
                    first_failure.append(ChainFailure(result, len(steps) + 1, tuple(steps)))
                dead_ends += 1
                if dead_ends >= budget:
                    raise _Exhausted
                continue
            steps.append(result)
            remaining[m] -= 1
            if not remaining[m]:
                del remaining[m]
            nxt = result.output
            while nxt and nxt[-1] == 0:
                nxt = nxt[:-1]
            if dfs(nxt):
                return True
            steps.pop()
            remaining[m] += 1
        return False

    try:
        found = dfs(start)
    except _Exhausted:
        found = False
    if found:
        final = steps[-1].output if steps else start
        while final and final[-1] == 0:
            final = final[:-1]
        return tuple(s.m for s in steps), ReductionCertificate(start, tuple(steps), final)
    # a dead search always recorded at least one failure
    return tuple(sorted(mults, reverse=True)), first_failure[0]


def prove_h1_regular(
    d: int, mults: Sequence[int], order: Union[str, OrderStrategy] = "as-given"
) -> SpecialityVerdict:
    """Chain prover on ``staircase(d)``.

    ``mults`` is taken in the given order for ``as-given``; pass a plain
    list to control the order (a :class:`MultiplicitySequence` is already
    sorted).
    """
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    strategy = OrderStrategy.parse(order)
    raw = [int(m) for m in mults]
    MultiplicitySequence(raw)  # validates positivity
    if strategy.kind == "as-given":
        ordered = tuple(raw)
    elif strategy.kind == "descending":
        ordered = tuple(sorted(raw, reverse=True))
    elif strategy.kind == "kryterium":
        ordered = order_kryterium(raw)
    else:
        ordered, result = _backtrack_chain(d, raw, strategy.budget)
        return _verdict_from_chain(d, ordered, result)
    return _verdict_from_chain(d, ordered, reduce_chain(staircase(d), ordered))


def kryterium_threshold(m4: int) -> int:
    """Right-hand side ``(2m-1)(m-1) + 1 - m(m+1)/2`` for ``m = m_4``; always an integer."""
    return (m4 - 1) * (3 * m4 - 4) // 2


def criterion_kryterium(d: int, mults: Sequence[int]) -> SpecialityVerdict:
    ms = MultiplicitySequence(mults)
    if ms.s < 4:
        raise HypothesisNotMet("the closed-form criterion needs at least 4 points")
    lhs = comb(d + 2, 2) - sum(comb(m + 1, 2) for m in ms)
    rhs = kryterium_threshold(ms.m(4))
    degree_ok = d >= ms.m(1) + ms.m(2)
    details = {"L": lhs, "R": rhs, "d_min": ms.m(1) + ms.m(2), "degree_ok": degree_ok}
    order = order_kryterium(ms)
    u = Status.UNKNOWN
    if not (degree_ok and lhs >= rhs):
        return SpecialityVerdict(d, ms.values, u, u, u, ROUTE_CRITERION, order=order, details=details)
    if lhs >= 1:
        p = Status.PROVEN
        return SpecialityVerdict(d, ms.values, p, p, p, ROUTE_CRITERION, order=order, details=details)
    return SpecialityVerdict(
        d, ms.values, Status.PROVEN, Status.REFUTED_BY_VDIM, u, ROUTE_CRITERION, order=order, details=details
    )


def reg_upper_bound(mults: Sequence[int]) -> int:
    """``d + 1`` for the least ``d`` at which the criterion proves h^1-regularity."""
    ms = MultiplicitySequence(mults)
    if ms.s < 4:
        raise HypothesisNotMet("the regularity bound needs at least 4 points")
    d = ms.m(1) + ms.m(2)
    # L grows like d^2/2 while R is fixed, so the scan ends
    while criterion_kryterium(d, ms).h1_regular is not Status.PROVEN:
        d += 1
    return d + 1


def decide(d: int, mults: Sequence[int], order: Union[str, OrderStrategy] = "descending") -> SpecialityVerdict:
    """Best available verdict: the criterion when it applies, else the chain prover."""
    chain = prove_h1_regular(d, mults, order)
    if chain.h1_regular is Status.PROVEN or len(mults) < 4:
        return chain
    crit = criterion_kryterium(d, mults)
    if crit.h1_regular is Status.PROVEN or not chain.proven_anything and crit.proven_anything:
        return crit
    return chain
