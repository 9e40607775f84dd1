"""Scans over sequence families and the finite grids left over by the proofs."""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable

from .containment import (
    _Aggregate,
    _minimal_witness,
    check_comb1,
    check_drugie,
    check_hopefullylast,
    nowa2_value,
)
from .core import MultiplicitySequence
from .oracle import DEFAULT_PRIME, dim_system
from .speciality import Status, criterion_kryterium, prove_h1_regular

DEFAULT_FAMILY = "a=2..130,p=9..12,b=1..12,q=80..224"
DEFAULT_SCAN_CAP = 2_000_000

_RANGE = re.compile(r"^\s*(\w+)\s*=\s*(\d+)(?:\s*\.\.\s*(\d+))?\s*$")


def parse_grid(text: str) -> dict[str, range]:
    """``"a=2..130,p=9"`` -> ``{"a": range(2, 131), "p": range(9, 10)}``."""
    grid: dict[str, range] = {}
    for part in text.split(","):
        if not part.strip():
            continue
        match = _RANGE.match(part)
        if match is None:
            raise ValueError(f"cannot parse range {part!r}")
        lo = int(match.group(2))
        hi = int(match.group(3)) if match.group(3) else lo
        if hi < lo:
            raise ValueError(f"empty range {part!r}")
        grid[match.group(1)] = range(lo, hi + 1)
    return grid


def _family_cell_count(family: dict[str, range]) -> int:
    n = 1
    for key in "apbq":
        n *= len(family[key])
    return n


def _scan_chunk(args) -> list[tuple[int, int, int, int]]:
    a_values, p_range, b_range, q_range = args
    hits = []
    for a in a_values:
        for b in b_range:
            if b >= a:
                continue
            for p in p_range:
                for q in q_range:
                    if p + q < 9 or p < 1 or q < 1:
                        continue
                    if _minimal_witness(_Aggregate.from_counts(((a, p), (b, q)))) is None:
                        hits.append((a, p, b, q))
    return hits


def scan_zastosowanie_failures(
    family: str | dict[str, range] = DEFAULT_FAMILY, cap: int = DEFAULT_SCAN_CAP, threads: int = 1
) -> list[MultiplicitySequence]:
    """Sequences ``(a^p, b^q)`` with ``a > b`` and at least 9 points that admit no witness degree."""
    grid = parse_grid(family) if isinstance(family, str) else family
    missing = set("apbq") - set(grid)
    if missing:
        raise ValueError(f"family needs ranges for a, p, b, q; missing {sorted(missing)}")
    cells = _family_cell_count(grid)
    if cells > cap:
        raise ValueError(f"family has {cells} cells, above the cap of {cap}; raise the cap explicitly")
    a_values = list(grid["a"])
    threads = max(1, threads)
    chunks = [(a_values[i::threads], grid["p"], grid["b"], grid["q"]) for i in range(threads)]
    if threads == 1:
        hits = _scan_chunk(chunks[0])
    else:
        with ProcessPoolExecutor(threads) as pool:
            hits = [h for part in pool.map(_scan_chunk, chunks) for h in part]
    return [MultiplicitySequence.from_counts([(a, p), (b, q)]) for a, p, b, q in sorted(hits)]


@dataclass
class GridReport:
    name: str
    cells: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.cells if not c["pass"]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"name": self.name, "cells": len(self.cells), "failures": self.failures, "pass": self.passed}


def drugie_cells() -> list[tuple[int, int]]:
    """``(m0, s)`` with ``m0^2 <= s <= 33`` or ``s <= m0^2 <= 36``, ``m0 >= 2``, ``s >= 8``."""
    cells = set()
    for m0 in range(2, 7):
        for s in range(8, 37):
            if m0 * m0 <= s <= 33 or s <= m0 * m0 <= 36:
                cells.add((m0, s))
    return sorted(cells)


def verify_drugie(cells: Iterable[tuple[int, int]] | None = None) -> GridReport:
    report = GridReport("drugie")
    for m0, s in cells if cells is not None else drugie_cells():
        report.cells.append({"m0": m0, "s": s, "pass": check_drugie(m0, s)})
    return report


def hopefullylast_b_cells(ms: Iterable[int] = (2, 3), ss: Iterable[int] = range(8, 22)) -> list[tuple[int, int, int]]:
    """Cells ``(m0, m, s)`` where the part b) hypothesis can hold.

    ``m0^2 (s+2) <= (sm + m0)^2`` is a convex condition in ``m0`` that holds
    at 0, so the admissible ``m0`` form an initial segment.
    """
    cells = []
    for m in ms:
        for s in ss:
            m0 = 1
            while m0 * m0 * (s + 2) <= (s * m + m0) ** 2:
                cells.append((m0, m, s))
                m0 += 1
    return cells


def verify_hopefullylast(cells: Iterable[tuple[int, int, int]] | None = None, part: str = "b") -> GridReport:
    report = GridReport(f"hopefullylast-{part}")
    for m0, m, s in cells if cells is not None else hopefullylast_b_cells():
        report.cells.append({"m0": m0, "m": m, "s": s, "part": part, "pass": check_hopefullylast(m0, m, s, part)})
    return report


def nowa2_cells(xs: Iterable[int] = range(4, 34), ss: Iterable[int] = range(9, 17)) -> list[tuple[int, int, int, int]]:
    return [
        (x, y, s, t)
        for s in ss
        for x in xs
        for y in range((x + 1) // 2, x + 1)
        for t in range(4, s + 1)
    ]


def verify_nowa2(cells: Iterable[tuple[int, int, int, int]] | None = None) -> GridReport:
    report = GridReport("nowa2")
    for x, y, s, t in cells if cells is not None else nowa2_cells():
        value = nowa2_value(x, y, s, t)
        report.cells.append({"x": x, "y": y, "s": s, "t": t, "value": value, "pass": value >= 0})
    return report


def uniformly_fat_sequences(m1_values: Iterable[int], s_values: Iterable[int]) -> Iterable[MultiplicitySequence]:
    for m1 in m1_values:
        low = (m1 + 1) // 2
        for s in s_values:
            for rest in combinations_with_replacement(range(m1, low - 1, -1), s - 1):
                yield MultiplicitySequence((m1, *rest))


def verify_comb1(m1_values: Iterable[int] = range(4, 13), s_values: Iterable[int] = range(9, 15)) -> GridReport:
    report = GridReport("comb1")
    for ms in uniformly_fat_sequences(m1_values, s_values):
        report.cells.append({"mults": ms.compressed(), "pass": check_comb1(ms)})
    return report


def verify_finite_cases() -> dict[str, GridReport]:
    return {
        "drugie": verify_drugie(),
        "hopefullylast-b": verify_hopefullylast(),
        "nowa2": verify_nowa2(),
    }


def sorted_sequences(s_max: int, m_max: int) -> Iterable[tuple[int, ...]]:
    for s in range(1, s_max + 1):
        for combo in combinations_with_replacement(range(m_max, 0, -1), s):
            yield combo


def _audit_one(args) -> dict:
    d, mults, p, trials, seed = args
    claims = {}
    claims["chain-descending"] = prove_h1_regular(d, mults, "descending")
    if len(mults) >= 4:
        claims["chain-kryterium"] = prove_h1_regular(d, mults, "kryterium")
        claims["criterion"] = criterion_kryterium(d, mults)
    proven = {k: v for k, v in claims.items() if v.nonspecial is Status.PROVEN}
    row = {"d": d, "mults": list(mults), "proven_by": sorted(proven), "violations": []}
    if not proven:
        return row
    rep = dim_system(d, mults, p, trials, seed)
    row["oracle"] = {"dim_observed": rep.dim_observed, "edim": rep.edim, "certificate": rep.certificate}
    for name, verdict in proven.items():
        bad = not rep.nonspecial or rep.dim_observed != rep.edim
        if verdict.h1_regular is Status.PROVEN and rep.edim < 0:
            bad = True
        if verdict.effective is Status.REFUTED_BY_VDIM and not rep.empty:
            bad = True
        if bad:
            row["violations"].append(name)
    return row


@dataclass
class CrosscheckReport:
    limits: dict
    cases: int = 0
    proven: int = 0
    violations: list[dict] = field(default_factory=list)
    by_prover: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "limits": self.limits,
            "cases": self.cases,
            "proven": self.proven,
            "by_prover": dict(sorted(self.by_prover.items())),
            "violations": self.violations,
        }


def crosscheck_reduction_vs_oracle(
    d_max: int = 12,
    s_max: int = 8,
    m_max: int = 4,
    p: int = DEFAULT_PRIME,
    trials: int = 3,
    seed: int = 0,
    threads: int = 1,
) -> CrosscheckReport:
    """Every chain or criterion proof in range must be confirmed by a full-rank oracle certificate."""
    jobs = [(d, ms, p, trials, seed) for ms in sorted_sequences(s_max, m_max) for d in range(d_max + 1)]
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            rows = list(pool.map(_audit_one, jobs, chunksize=64))
    else:
        rows = [_audit_one(job) for job in jobs]
    report = CrosscheckReport({"d_max": d_max, "s_max": s_max, "m_max": m_max, "prime": p, "trials": trials, "seed": seed})
    for row in rows:
        report.cases += 1
        if row["proven_by"]:
            report.proven += 1
        for name in row["proven_by"]:
            report.by_prover[name] = report.by_prover.get(name, 0) + 1
        if row["violations"]:
            report.violations.append(row)
    return report
