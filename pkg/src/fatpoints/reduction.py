"""The m-reduction of integer sequences and chains of such reductions.

A reduction with parameter ``m`` acts on the last ``m`` entries
``a_1, ..., a_m`` of a positive sequence.  Walking from ``a_m`` down to
``a_1`` it subtracts a reducer ``r_k`` taken from the pool ``{1, ..., m}``,
preferring the largest available reducer unless the entry itself is small
enough to be wiped out.  Reusing an already spent reducer aborts the
reduction.  A successful reduction lowers the size by ``m(m+1)/2``.

Positions inside the reduced block are 1-based (``k = 1..m``); witness
positions of a failure are 1-based positions in the whole sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .core import ContractViolation, IntSequence, MalformedSequenceError, size, strip_trailing_zeros

TOO_SHORT = "too-short"
FLAT_TAIL = "flat-tail"


@dataclass(frozen=True)
class ReductionStep:
    m: int
    input: IntSequence
    reducers: IntSequence  # reducers[k-1] is r_k
    output: IntSequence

    reducible = True

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(k, r) for k, r in enumerate(self.reducers, start=1)]

    @property
    def size_drop(self) -> int:
        return size(self.input) - size(self.output)

    def to_dict(self) -> dict:
        return {"m": self.m, "reducers": list(self.reducers), "output": list(self.output)}


@dataclass(frozen=True)
class ReductionFailure:
    """Why a sequence is not m-reducible.

    For a flat tail, ``stop_index`` is the block index ``k'`` at which the
    algorithm stopped, ``blocked_by`` the block index ``l' > k'`` where the
    offending reducer was spent, and ``witness`` the pair ``(k, l)`` of
    whole-sequence positions with ``b_k <= b_l`` and ``b_k < m``.
    """

    reason: str
    m: int
    input: IntSequence
    stop_index: int | None = None
    blocked_by: int | None = None
    witness: tuple[int, int] | None = None
    partial_reducers: tuple[tuple[int, int], ...] = ()

    reducible = False

    def to_dict(self) -> dict:
        return {
            "reason": self.reason,
            "m": self.m,
            "input": list(self.input),
            "stop_index": self.stop_index,
            "blocked_by": self.blocked_by,
            "witness": list(self.witness) if self.witness else None,
            "partial_reducers": [list(p) for p in self.partial_reducers],
        }


def _check_positive(seq: Sequence[int]) -> None:
    for i, v in enumerate(seq):
        if v < 0:
            raise MalformedSequenceError(f"negative entry at position {i + 1} of {tuple(seq)}")
        if v == 0:
            where = "trailing" if not any(seq[i:]) else "interior"
            raise MalformedSequenceError(f"{where} zero at position {i + 1} of {tuple(seq)}")


def reduce_once(seq: Sequence[int], m: int) -> Union[ReductionStep, ReductionFailure]:
    """Apply one reduction with parameter ``m`` to a sequence of positive integers."""
    if m < 1:
        raise ValueError(f"reduction parameter must be positive, got {m}")
    seq = tuple(int(v) for v in seq)
    _check_positive(seq)
    n = len(seq)
    if n < m:
        return ReductionFailure(TOO_SHORT, m, seq)

    offset = n - m
    block = seq[offset:]
    pool = set(range(1, m + 1))
    spent_at: dict[int, int] = {}
    reducers = [0] * m
    out = list(seq)
    trace: list[tuple[int, int]] = []
    for k in range(m, 0, -1):
        a = block[k - 1]
        z = max(pool)
        r = a if (a < m and a <= z) else z
        trace.append((k, r))
        if r not in pool:
            earlier = spent_at[r]
            return ReductionFailure(
                FLAT_TAIL,
                m,
                seq,
                stop_index=k,
                blocked_by=earlier,
                witness=(offset + k, offset + earlier),
                partial_reducers=tuple(trace),
            )
        pool.discard(r)
        spent_at[r] = k
        reducers[k - 1] = r
        out[offset + k - 1] = a - r
    return ReductionStep(m, seq, tuple(reducers), tuple(out))


def classify_failure(seq: Sequence[int], m: int) -> ReductionFailure:
    result = reduce_once(seq, m)
    if result.reducible:
        raise ContractViolation(f"{tuple(seq)} is {m}-reducible")
    return result


@dataclass(frozen=True)
class ReductionCertificate:
    initial: IntSequence
    steps: tuple[ReductionStep, ...]
    final: IntSequence

    reducible = True

    @property
    def final_size(self) -> int:
        return size(self.final)

    @property
    def ms(self) -> IntSequence:
        return tuple(step.m for step in self.steps)

    def to_dict(self) -> dict:
        return {
            "initial": list(self.initial),
            "steps": [step.to_dict() for step in self.steps],
            "final": list(self.final),
            "final_size": self.final_size,
        }


@dataclass(frozen=True)
class ChainFailure:
    """A chain that broke at ``step_index`` (1-based) after ``steps`` succeeded."""

    failure: ReductionFailure
    step_index: int
    steps: tuple[ReductionStep, ...] = field(default=())

    reducible = False

    def to_dict(self) -> dict:
        return {
            "step_index": self.step_index,
            "failure": self.failure.to_dict(),
            "steps": [step.to_dict() for step in self.steps],
        }


def reduce_chain(initial: Sequence[int], ms: Sequence[int]) -> Union[ReductionCertificate, ChainFailure]:
    """Feed each reduction's output, trailing zeros removed, into the next one."""
    state = strip_trailing_zeros(tuple(int(v) for v in initial))
    start = state
    steps: list[ReductionStep] = []
    for j, m in enumerate(ms, start=1):
        result = reduce_once(state, m)
        if not result.reducible:
            return ChainFailure(result, j, tuple(steps))
        steps.append(result)
        state = strip_trailing_zeros(result.output)
    return ReductionCertificate(start, tuple(steps), state)


def format_trace(cert: ReductionCertificate) -> str:
    """Render a chain as rows of states separated by per-position deltas."""
    width = len(cert.initial)
    cells: list[list[str]] = []
    labels: list[str] = []

    def pad(values: list[str]) -> list[str]:
        return values + [""] * (width - len(values))

    cells.append(pad([str(v) for v in cert.initial]))
    labels.append("")
    for step in cert.steps:
        n = len(step.input)
        delta = [""] * (n - step.m) + [f"-{r}" for r in step.reducers]
        cells.append(pad(delta))
        labels.append(str(step.m))
        cells.append(pad([str(v) for v in step.output]))
        labels.append("")
    col = max([len(c) for row in cells for c in row] + [3])
    header = [f"a{i}" for i in range(1, width + 1)]
    lines = [" ".join(h.rjust(col) for h in header) + " | m"]
    for row, label in zip(cells, labels):
        lines.append(" ".join(c.rjust(col) for c in row) + (f" | {label}" if label else " |"))
    lines.append(f"final {cert.final}  size {cert.final_size}")
    return "\n".join(lines)
