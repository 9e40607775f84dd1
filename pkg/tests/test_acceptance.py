"""The nine acceptance criteria, each at its stated tolerance.

Run under pytest (a summary line per criterion is printed at the end) or
directly with ``python tests/test_acceptance.py``.
"""

import os
import random
import sys
import time
import timeit

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from acceptance_report import record  # noqa: E402
from fatpoints.containment import (  # noqa: E402
    ROUTE_ALL_ONES,
    ROUTE_ALMOST_HOMOGENEOUS,
    ROUTE_ALMOST_SIMPLE,
    ROUTE_DIRECT,
    ROUTE_UNIFORMLY_FAT,
    check_zastosowanie,
    is_almost_homogeneous,
    is_uniformly_fat,
    theorem_b_dispatch,
)
from fatpoints.core import MultiplicitySequence, size  # noqa: E402
from fatpoints.oracle import dim_system  # noqa: E402
from fatpoints.reduction import FLAT_TAIL, TOO_SHORT, reduce_chain, reduce_once  # noqa: E402
from fatpoints.search import crosscheck_reduction_vs_oracle, verify_finite_cases  # noqa: E402
from fatpoints.speciality import Status, criterion_kryterium, prove_h1_regular, staircase  # noqa: E402


def best_ms(fn, repeat=200):
    return min(timeit.repeat(fn, number=1, repeat=repeat)) * 1e3


def criterion_1():
    table = [
        ((5, 5, 5), 3, (1, 2, 3), (4, 3, 2)),
        ((5, 5, 3, 1), 4, (2, 4, 3, 1), (3, 1, 0, 0)),
        ((4, 1, 3), 3, (2, 1, 3), (2, 0, 0)),
    ]
    ok = True
    for seq, m, reducers, out in table:
        step = reduce_once(seq, m)
        ok &= step.reducible and step.input == seq and step.reducers == reducers and step.output == out
    d = reduce_once((4, 2, 2), 3)
    # row D: r_3 = 2, then r_2 = 2 is not available, so Z_1 = Z_2 and the run stops at k = 2
    ok &= (not d.reducible) and d.reason == FLAT_TAIL and d.partial_reducers == ((3, 2), (2, 2)) and d.stop_index == 2
    t = best_ms(lambda: [reduce_once(s, m) for s, m, _, _ in table] + [reduce_once((4, 2, 2), 3)])
    return ok and t < 1.0, f"rows A-D exact={ok}, best {t:.3f} ms (< 1 ms)"


CHAIN_ROWS = [
    ((1, 2, 3, 4, 5, 6, 7, 8, 9, 10), 4, (1, 2, 3, 4), (1, 2, 3, 4, 5, 6, 6, 6, 6, 6)),
    ((1, 2, 3, 4, 5, 6, 6, 6, 6, 6), 4, (1, 2, 3, 4), (1, 2, 3, 4, 5, 6, 5, 4, 3, 2)),
    ((1, 2, 3, 4, 5, 6, 5, 4, 3, 2), 4, (1, 4, 3, 2), (1, 2, 3, 4, 5, 6, 4, 0, 0, 0)),
    ((1, 2, 3, 4, 5, 6, 4), 3, (1, 2, 3), (1, 2, 3, 4, 4, 4, 1)),
    ((1, 2, 3, 4, 4, 4, 1), 3, (2, 3, 1), (1, 2, 3, 4, 2, 1, 0)),
    ((1, 2, 3, 4, 2, 1), 3, (3, 2, 1), (1, 2, 3, 1, 0, 0)),
    ((1, 2, 3, 1), 3, (2, 3, 1), (1, 0, 0, 0)),
]


def criterion_2():
    cert = reduce_chain(range(1, 11), (4, 4, 4, 3, 3, 3, 3))
    got = [(s.input, s.m, s.reducers, s.output) for s in cert.steps]
    ok = cert.reducible and got == CHAIN_ROWS and cert.final == (1,) and cert.final_size == 1
    t = best_ms(lambda: reduce_chain(range(1, 11), (4, 4, 4, 3, 3, 3, 3)))
    return ok and t < 1.0, f"7 rows exact={ok}, final {cert.final} size {cert.final_size}, best {t:.3f} ms (< 1 ms)"


def criterion_3():
    def run():
        return (
            prove_h1_regular(9, (4, 4, 4, 3, 3, 3, 3)),
            criterion_kryterium(9, (4, 4, 4, 3, 3)),
            criterion_kryterium(9, (4, 4, 4, 3, 3, 3, 3)),
        )

    chain, short, full = run()
    ok = (
        chain.h1_regular is Status.PROVEN
        and short.h1_regular is Status.PROVEN
        and full.nonspecial is full.effective is full.h1_regular is Status.UNKNOWN
    )
    t = best_ms(run)
    return ok and t < 1.0, f"chain proves 7-point system, criterion proves 5-point only={ok}, best {t:.3f} ms (< 1 ms)"


EXCEPTIONAL = {
    # critical degree, its regularity comparison, and the three failing alpha comparisons
    "8^9,1^103": (31, (1054, 992), (123057, 122500), (33, 32), (33, 16)),
    "9^11,1^80": None,
    "20^12,2^90": None,
    "30^11,3^130": None,
    "60^11,5^224": None,
    "130^12,12^101": None,
}


def criterion_4():
    start = time.perf_counter()
    ok = True
    notes = []
    for text, frozen in EXCEPTIONAL.items():
        ms = MultiplicitySequence.parse(text)
        v = check_zastosowanie(ms)
        facts = {f.name: f for f in v.facts}
        alpha = [facts[f"critical:alpha:{b}"] for b in ("nagata", "cremona", "big-point")]
        reg, m12 = facts["critical:reg"], facts["critical:m12"]
        complete = reg.holds and m12.holds and not any(f.holds for f in alpha)
        # the transcript must be exact integers that re-check by hand
        d = alpha[1].lhs - 2
        m = list(ms.values)
        rechecked = (
            reg.lhs == d * (d + 3)
            and reg.rhs == ms.sum_squares + ms.total + (0 if m[3] == 1 else (3 * m[3] - 1) * (m[3] - 2))
            and alpha[0].lhs == (d + 2) ** 2 * (ms.s + 1)
            and alpha[0].rhs == (2 * ms.total) ** 2
            and alpha[1].rhs == sum(m[:4])
            and alpha[2].rhs == 2 * m[0]
        )
        if frozen is not None:
            rechecked &= (d, (reg.lhs, reg.rhs), (alpha[0].lhs, alpha[0].rhs), (alpha[1].lhs, alpha[1].rhs), (alpha[2].lhs, alpha[2].rhs)) == frozen
        ok &= (not v.proven) and v.witness_d is None and complete and rechecked
        notes.append(f"{text}@d={d}")
    elapsed = time.perf_counter() - start
    return ok and elapsed < 1.0, f"no witness for all six ({', '.join(notes)}), {elapsed * 1e3:.1f} ms (< 1 s)"


def criterion_5():
    start = time.perf_counter()
    reports = verify_finite_cases()
    elapsed = time.perf_counter() - start
    failures = sum(len(r.failures) for r in reports.values())
    cells = ", ".join(f"{k} {len(r.cells)}" for k, r in reports.items())
    return failures == 0 and elapsed < 10.0, f"{cells} cells, {failures} failures, {elapsed:.2f} s (< 10 s)"


def criterion_6():
    start = time.perf_counter()
    threads = min(8, os.cpu_count() or 1)
    rep = crosscheck_reduction_vs_oracle(12, 8, 4, p=65537, trials=3, seed=0, threads=threads)
    elapsed = time.perf_counter() - start
    ok = not rep.violations and elapsed < 300
    return ok, (
        f"{rep.cases} systems, {rep.proven} proven ({', '.join(f'{k} {v}' for k, v in sorted(rep.by_prover.items()))}), "
        f"{len(rep.violations)} violations, {elapsed:.1f} s (< 300 s)"
    )


def criterion_7():
    start = time.perf_counter()
    rep = dim_system(4, [2] * 5, p=65537, trials=3, seed=0)
    verdicts = [prove_h1_regular(4, [2] * 5, o) for o in ("as-given", "descending", "kryterium", "backtrack=1000")]
    verdicts.append(criterion_kryterium(4, [2] * 5))
    unknown = all(v.nonspecial is v.effective is v.h1_regular is Status.UNKNOWN for v in verdicts)
    elapsed = time.perf_counter() - start
    ok = rep.dim_observed == 0 and rep.edim == -1 and rep.certificate == "none" and unknown and elapsed < 1.0
    return ok, f"oracle dim {rep.dim_observed} > edim {rep.edim}, provers unknown={unknown}, {elapsed * 1e3:.0f} ms (< 1 s)"


def _dispatch_sample(rng):
    """Half almost homogeneous (one free multiplicity), half uniformly fat."""
    s = rng.randint(9, 60)
    if rng.random() < 0.5:
        return MultiplicitySequence([rng.randint(1, 30)] + [rng.randint(1, 30)] * (s - 1))
    m1 = rng.randint(1, 30)
    return MultiplicitySequence([m1] + [rng.randint((m1 + 1) // 2, m1) for _ in range(s - 1)])


_ROUTE_FACTS = {
    ROUTE_ALL_ONES: {"all-ones"},
    ROUTE_ALMOST_SIMPLE: {"drugie:tmax", "drugie:nagata", "drugie:big-point"},
    ROUTE_ALMOST_HOMOGENEOUS: {"gwiazdka:gap", "gwiazdka:square", "witness:reg", "witness:m12"},
    ROUTE_UNIFORMLY_FAT: {"comb1:T>=0", "comb1:T^2", "gwiazdka:gap", "witness:reg", "witness:m12"},
    ROUTE_DIRECT: {"witness:reg", "witness:m12"},
}


def _transcript_complete(v):
    names = {f.name for f in v.facts}
    if not _ROUTE_FACTS[v.route] <= names:
        return False
    if v.route == ROUTE_ALMOST_SIMPLE:
        f = {x.name: x for x in v.facts}
        return f["drugie:tmax"].holds and (f["drugie:nagata"].holds or f["drugie:big-point"].holds)
    if v.route == ROUTE_ALL_ONES:
        return all(f.holds for f in v.facts)
    witness = [f for f in v.facts if f.name.startswith("witness:")]
    return v.witness_d is not None and any(f.name.startswith("witness:alpha:") for f in witness) and all(
        f.holds for f in witness
    )


def criterion_8():
    rng = random.Random(20240101)
    start = time.perf_counter()
    unknown, incomplete = [], []
    for _ in range(1000):
        ms = _dispatch_sample(rng)
        assert ms.s >= 9 and ms.m(1) <= 30 and (is_almost_homogeneous(ms) or is_uniformly_fat(ms))
        v = theorem_b_dispatch(ms)
        if not v.proven:
            unknown.append(ms.compressed())
        elif not _transcript_complete(v):
            incomplete.append(ms.compressed())
    elapsed = time.perf_counter() - start
    ok = not unknown and not incomplete and elapsed < 30
    return ok, f"1000 sequences, {len(unknown)} unknown, {len(incomplete)} incomplete transcripts, {elapsed:.2f} s (< 30 s)"


def criterion_9(n=100_000):
    rng = np.random.default_rng(12345)
    bad = {"size": 0, "adjacent": 0, "suffix": 0, "witness": 0}
    checked = {"steps": 0, "failures": 0, "chain states": 0}
    for _ in range(n):
        length = int(rng.integers(1, 13))
        seq = tuple(int(v) for v in rng.integers(1, 13, size=length))
        m = int(rng.integers(1, 13))
        res = reduce_once(seq, m)
        if res.reducible:
            checked["steps"] += 1
            if size(res.input) - size(res.output) != m * (m + 1) // 2:
                bad["size"] += 1
            b, a = res.input, res.output
            for pos in range(length - m + 1, length):
                if not (a[pos] == 0 or b[pos - 1] - b[pos] < a[pos - 1] - a[pos]):
                    bad["adjacent"] += 1
        else:
            checked["failures"] += 1
            if res.reason == TOO_SHORT:
                bad["witness"] += length >= m
            else:
                k, l = res.witness
                if not (length - m + 1 <= k < l <= length and seq[k - 1] <= seq[l - 1] and seq[k - 1] < m):
                    bad["witness"] += 1
    for _ in range(n):
        d = int(rng.integers(0, 25))
        ms = [int(v) for v in rng.integers(1, 9, size=int(rng.integers(1, 11)))]
        state = staircase(d)
        for m in ms:
            step = reduce_once(state, m)
            if not step.reducible:
                break
            out = step.output
            checked["chain states"] += 1
            if size(state) - size(out) != m * (m + 1) // 2:
                bad["size"] += 1
            r = len(out)
            for k in range(1, r + 1):
                if out[k - 1] != k and any(out[i] < out[i + 1] for i in range(k - 1, r - 1)):
                    bad["suffix"] += 1
                    break
            if any(out[i] == 0 and out[i + 1] != 0 for i in range(r - 1)):
                bad["suffix"] += 1
            state = out
            while state and state[-1] == 0:
                state = state[:-1]
            if not state:
                break
    ok = not any(bad.values())
    counts = ", ".join(f"{v} {k}" for k, v in checked.items())
    return ok, f"{2 * n} random sequences ({counts}), violations {bad}"


CRITERIA = [
    (1, "reduction fidelity", criterion_1),
    (2, "chain trace", criterion_2),
    (3, "chain vs criterion example", criterion_3),
    (4, "exceptional sequences", criterion_4),
    (5, "finite-case grids", criterion_5),
    (6, "prover/oracle soundness audit", criterion_6),
    (7, "known special system", criterion_7),
    (8, "dispatcher coverage", criterion_8),
    (9, "invariant suite", criterion_9),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_acceptance(number, title, fn):
    ok, detail = fn()
    record(number, title, ok, detail)
    print(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}", flush=True)
    sys.exit(1 if failed else 0)
