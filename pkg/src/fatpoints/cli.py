"""Command line entry point.

Exit status: 0 when a result was computed (whatever the verdict), 1 on
usage or input errors, 2 when an internal invariant breaks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import containment, oracle, search
from .core import ContractViolation, MultiplicitySequence, parse_int_list
from .reduction import format_trace, reduce_chain
from .schema import SCHEMA_VERSION
from .speciality import Status, criterion_kryterium, prove_h1_regular


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from exc


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False)
    parser.add_argument("--seed", type=int, default=default, help="RNG seed (env FATPOINTS_SEED)")
    parser.add_argument("--prime", type=int, default=default, help="field size (env FATPOINTS_PRIME)")
    parser.add_argument("--threads", type=int, default=argparse.SUPPRESS if suppress else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fatpoints", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", parents=[common], help="run a chain of reductions")
    p.add_argument("--seq", required=True, help="starting sequence, e.g. 1..10")
    p.add_argument("--ms", required=True, help="reduction parameters in order, e.g. 4^3,3^4")

    p = sub.add_parser("prove", parents=[common], help="chain prover for L(d; mults)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mults", required=True)
    p.add_argument("--order", default="as-given", help="as-given | descending | kryterium | backtrack=<n>")

    p = sub.add_parser("criterion", parents=[common], help="closed-form criterion for L(d; mults)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mults", required=True)

    p = sub.add_parser("containment", parents=[common], help="decide I^(2r) in M^r I^r for all r")
    p.add_argument("--mults", required=True)
    p.add_argument("--explain", action="store_true")

    p = sub.add_parser("oracle", parents=[common], help="finite field interpolation oracle")
    osub = p.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    q = osub.add_parser("dim", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--mults", required=True)
    q.add_argument("--trials", type=int, default=3)
    q = osub.add_parser("alpha", parents=[common])
    q.add_argument("--mults", required=True)
    q.add_argument("--scale", type=int, default=1)
    q.add_argument("--trials", type=int, default=3)
    q = osub.add_parser("containment", parents=[common])
    q.add_argument("--mults", required=True)
    q.add_argument("--r", type=int, default=1)
    q.add_argument("--tmax", type=int, default=None, help="default r*(reg bound + 1)")

    p = sub.add_parser("scan", parents=[common], help="list (a^p, b^q) with no witness degree")
    p.add_argument("--family", default=search.DEFAULT_FAMILY)
    p.add_argument("--cap", type=int, default=search.DEFAULT_SCAN_CAP, help="maximum number of cells")
    p.add_argument("--tsv", action="store_true")

    p = sub.add_parser("verify-lemma", parents=[common], help="check a numerical lemma on a grid")
    p.add_argument("--name", required=True, choices=["drugie", "hopefullylast", "comb1", "nowa2"])
    p.add_argument("--grid", default="", help="ranges such as m0=2..6,s=8..36")
    p.add_argument("--part", default="b", choices=["a", "b"], help="hopefullylast part")

    p = sub.add_parser("selftest", parents=[common], help="re-run the finite case grids")
    p.add_argument("--finite-cases", action="store_true", default=True)

    p = sub.add_parser("crosscheck", parents=[common], help="audit provers against the oracle")
    p.add_argument("--dmax", type=int, default=12)
    p.add_argument("--smax", type=int, default=8)
    p.add_argument("--mmax", type=int, default=4)
    p.add_argument("--trials", type=int, default=3)
    return parser


def _mults(text: str) -> MultiplicitySequence:
    return MultiplicitySequence(parse_int_list(text))


def _speciality_text(v) -> str:
    lines = [
        f"L({v.d}; {','.join(map(str, v.mults))})  vdim={v.vdim}  route={v.route}",
        f"non-special: {v.nonspecial.value}  effective: {v.effective.value}  h1-regular: {v.h1_regular.value}",
    ]
    if v.order:
        lines.append(f"order: {','.join(map(str, v.order))}")
    if v.details:
        lines.append("  ".join(f"{k}={val}" for k, val in v.details.items()))
    if v.certificate is not None:
        lines.append(format_trace(v.certificate))
    if v.failure is not None:
        f = v.failure.failure
        lines.append(f"chain stopped at step {v.failure.step_index} (m={f.m}): {f.reason} on {f.input}")
    return "\n".join(lines)


def _cmd_reduce(args):
    seq = parse_int_list(args.seq)
    ms = parse_int_list(args.ms)
    result = reduce_chain(seq, ms)
    if result.reducible:
        return {"ok": True, "certificate": result.to_dict()}, format_trace(result)
    f = result.failure
    text = f"not reducible at step {result.step_index} (m={f.m}) on {f.input}: {f.reason}"
    if f.witness:
        text += f", stopped at k'={f.stop_index}, reducer reused from k={f.blocked_by}, witness {f.witness}"
    return {"ok": False, "failure": result.to_dict()}, text


def _cmd_prove(args):
    raw = parse_int_list(args.mults)
    verdict = prove_h1_regular(args.d, raw, args.order)
    return verdict.to_dict(), _speciality_text(verdict)


def _cmd_criterion(args):
    verdict = criterion_kryterium(args.d, parse_int_list(args.mults))
    return verdict.to_dict(), _speciality_text(verdict)


def _cmd_containment(args):
    verdict = containment.theorem_b_dispatch(_mults(args.mults))
    head = f"{verdict.mults.compressed()}: {'proven' if verdict.proven else 'unknown'} (route {verdict.route})"
    if verdict.witness_d is not None:
        head += f", witness d={verdict.witness_d} via {', '.join(verdict.branches)}"
    lines = [head]
    if args.explain:
        lines += [f"  {f}" for f in verdict.facts]
        lines += [f"  # {d}" for d in verdict.diagnostics]
    return verdict.to_dict(), "\n".join(lines)


def _cmd_oracle(args):
    ms = _mults(args.mults)
    if args.oracle_command == "dim":
        rep = oracle.dim_system(args.d, ms, args.prime, args.trials, args.seed)
        text = (
            f"L({args.d}; {ms.compressed()}) over F_{args.prime}: dim_observed={rep.dim_observed} "
            f"edim={rep.edim} ranks={list(rep.ranks)} certificate={rep.certificate}"
        )
        return rep.to_dict(), text
    if args.oracle_command == "alpha":
        rep = oracle.alpha_scan(ms, args.scale, args.prime, args.trials, args.seed)
        text = f"alpha >= {rep.alpha_lb} (certified); observed {rep.alpha_observed}; exact={rep.exact}"
        return rep.to_dict(), text
    t_max = args.tmax if args.tmax is not None else oracle.default_t_max(ms, args.r)
    rep = oracle.truncated_containment_check(ms, args.r, args.prime, t_max, args.seed)
    lines = [f"r={args.r} t<= {t_max}: {'holds' if rep.holds else 'FAILS'} at seed {args.seed}"]
    lines += [
        f"  t={row['t']}: dim I^(2r)={row['dim_symbolic']} dim M^r I^r={row['dim_target']} "
        f"{'ok' if row['contained'] else 'NOT CONTAINED'}"
        for row in rep.degrees
    ]
    return rep.to_dict(), "\n".join(lines)


def _cmd_scan(args):
    found = search.scan_zastosowanie_failures(args.family, args.cap, args.threads)
    result = {"family": args.family, "count": len(found), "sequences": [ms.compressed() for ms in found]}
    if args.tsv:
        rows = ["a\tp\tb\tq\tmults"]
        for ms in found:
            (a, p), (b, q) = ms.counts()
            rows.append(f"{a}\t{p}\t{b}\t{q}\t{ms.compressed()}")
        return result, "\n".join(rows)
    return result, "\n".join([f"{len(found)} sequences without a witness degree"] + result["sequences"])


def _grid_table(report: search.GridReport) -> str:
    lines = [f"{report.name}: {len(report.cells)} cells, {len(report.failures)} failures -> {'PASS' if report.passed else 'FAIL'}"]
    for cell in report.failures[:50]:
        lines.append("  FAIL " + " ".join(f"{k}={v}" for k, v in cell.items() if k != "pass"))
    return "\n".join(lines)


def _cmd_verify_lemma(args):
    grid = search.parse_grid(args.grid) if args.grid else {}
    if args.name == "drugie":
        cells = None
        if grid:
            cells = [(m0, s) for m0 in grid.get("m0", range(2, 7)) for s in grid.get("s", range(8, 37))]
        report = search.verify_drugie(cells)
    elif args.name == "hopefullylast":
        ms_range = grid.get("m", range(2, 4))
        s_range = grid.get("s", range(8, 22))
        if "m0" in grid:
            cells = [(m0, m, s) for m0 in grid["m0"] for m in ms_range for s in s_range]
        elif args.part == "b":
            cells = search.hopefullylast_b_cells(ms_range, s_range)
        else:
            cells = [(m0, m, s) for m0 in range(1, 101) for m in ms_range for s in s_range]
        report = search.verify_hopefullylast(cells, args.part)
    elif args.name == "comb1":
        report = search.verify_comb1(grid.get("m1", range(4, 13)), grid.get("s", range(9, 15)))
    else:
        xs, ss = grid.get("x", range(4, 34)), grid.get("s", range(9, 17))
        cells = [
            c
            for c in search.nowa2_cells(xs, ss)
            if ("y" not in grid or c[1] in grid["y"]) and ("t" not in grid or c[3] in grid["t"])
        ]
        report = search.verify_nowa2(cells)
    return report.to_dict(), _grid_table(report)


def _cmd_selftest(args):
    grids = search.verify_finite_cases()
    result = {"pass": all(g.passed for g in grids.values()), "grids": {k: g.to_dict() for k, g in grids.items()}}
    return result, "\n".join(_grid_table(g) for g in grids.values())


def _cmd_crosscheck(args):
    rep = search.crosscheck_reduction_vs_oracle(
        args.dmax, args.smax, args.mmax, args.prime, args.trials, args.seed, args.threads
    )
    text = (
        f"{rep.cases} cases, {rep.proven} proven by some prover, {len(rep.violations)} violations\n"
        + "\n".join(f"  {k}: {v}" for k, v in sorted(rep.by_prover.items()))
    )
    return rep.to_dict(), text


_COMMANDS = {
    "reduce": _cmd_reduce,
    "prove": _cmd_prove,
    "criterion": _cmd_criterion,
    "containment": _cmd_containment,
    "oracle": _cmd_oracle,
    "scan": _cmd_scan,
    "verify-lemma": _cmd_verify_lemma,
    "selftest": _cmd_selftest,
    "crosscheck": _cmd_crosscheck,
}


def _json_default(obj):
    if isinstance(obj, Status):
        return obj.value
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _env_int("FATPOINTS_SEED", 0)
        if args.prime is None:
            args.prime = _env_int("FATPOINTS_PRIME", oracle.DEFAULT_PRIME)
        result, text = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except (ContractViolation, AssertionError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        command = args.command if args.command != "oracle" else f"oracle {args.oracle_command}"
        doc = {"schema": SCHEMA_VERSION, "command": command, "result": result}
        print(json.dumps(doc, sort_keys=True, default=_json_default))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
