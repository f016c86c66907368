"""Command-line front end.

Exit codes: 0 success (or EFX found), 1 negative answer, 2 malformed input,
3 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .circuit import CircuitError, parse_circuit
from .core import Instance
from .fairness import envy_report
from .generate import GenerationError, gen_random_instance
from .io import FormatError, dumps_instance, dumps_orientation, read_instance, read_orientation
from .oracle import (DEFAULT_BUDGET, OracleBudgetExceeded, all_efx_orientations,
                     count_efx_orientations, exists_efx_orientation)
from .reduction import build_instance, verify_reduction_properties
from .solver import solve
from .structure import ComponentKind, analysis_report, analyze

log = logging.getLogger("efxorient")

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def to_dot(inst: Instance) -> str:
    """Graphviz rendering: heavy edges bold, light dashed, forbidden components shaded."""
    bad = {v for c in analyze(inst) if c.kind is ComponentKind.FORBIDDEN for v in c.vertices}
    lines = ["graph instance {", f'  label="alpha={inst.alpha} beta={inst.beta}";']
    for v in range(inst.n):
        style = ' style=filled fillcolor="#f4b4b4"' if v in bad else ""
        lines.append(f"  {v} [label=\"{v}\"{style}];")
    for e in inst.edges:
        style = "bold" if e.is_heavy else "dashed"
        lines.append(f'  {e.u} -- {e.v} [style={style} label="e{e.id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_fix(items: Sequence[str]) -> dict[int, int]:
    fixed = {}
    for item in items:
        try:
            e, v = item.split("=")
            fixed[int(e)] = int(v)
        except ValueError:
            raise FormatError(f"--fix expects EDGE=VERTEX, got {item!r}") from None
    return fixed


def cmd_analyze(args) -> int:
    inst = read_instance(args.instance)
    _emit(to_dot(inst) if args.dot else _json(analysis_report(inst)), args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    outcome = solve(inst)
    if outcome.oriented:
        _emit(dumps_orientation(outcome.orientation), args.output)
        return EXIT_OK
    log.info("forbidden heavy component %s", list(outcome.forbidden_component))
    if args.oracle_fallback:
        pi = exists_efx_orientation(inst, budget=args.budget)
        if pi is not None:
            _emit(dumps_orientation(pi), args.output)
            return EXIT_OK
        _emit(_json({"reason": "NoEFXOrientation",
                     "component": list(outcome.forbidden_component)}), args.output)
        return EXIT_NO
    _emit(_json({"reason": outcome.reason, "component": list(outcome.forbidden_component)}),
          args.output)
    return EXIT_NO


def cmd_check(args) -> int:
    inst = read_instance(args.instance)
    pi = read_orientation(args.orientation, inst)
    if not pi.is_complete:
        raise FormatError("orientation leaves some edges unassigned")
    report = envy_report(inst, pi)
    _emit(_json(report.to_dict()), args.output)
    return EXIT_OK if report.is_efx else EXIT_NO


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    fixed = _parse_fix(args.fix)
    try:
        if args.mode == "count":
            k = count_efx_orientations(inst, fixed, args.budget)
            _emit(_json({"count": k}), args.output)
            return EXIT_OK if k else EXIT_NO
        if args.mode == "all":
            sols = all_efx_orientations(inst, fixed, args.budget)
            _emit(_json({"orientations": [list(p.owners) for p in sols]}), args.output)
            return EXIT_OK if sols else EXIT_NO
        pi = exists_efx_orientation(inst, fixed, args.budget)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    _emit(_json({"exists": pi is not None, "owners": None if pi is None else list(pi.owners)}),
          args.output)
    return EXIT_OK if pi is not None else EXIT_NO


def cmd_reduce(args) -> int:
    circuit = parse_circuit(Path(args.circuit).read_text())
    try:
        inst, rmap = build_instance(circuit, args.q, args.alpha, args.beta)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    _emit(dumps_instance(inst), args.output)
    if args.map:
        Path(args.map).write_text(_json(rmap.to_dict()))
    if args.verify:
        report = verify_reduction_properties(inst, rmap)
        sys.stderr.write(_json(report.to_dict()))
        return EXIT_OK if report.passed else EXIT_NO
    return EXIT_OK


def cmd_gen(args) -> int:
    if (args.alpha is None) != (args.beta is None):
        raise FormatError("--alpha and --beta must be given together")
    inst = gen_random_instance(args.vertices, args.multiplicity, args.heavy_density, args.seed,
                               m=args.edges, alpha=args.alpha, beta=args.beta,
                               loop_prob=args.loop_prob, avoid_forbidden=args.avoid_forbidden)
    _emit(dumps_instance(inst), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="efxorient", description="EFX orientations of bi-valued multigraphs")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_output(sp):
        sp.add_argument("-o", "--output", help="write result here instead of stdout")
        return sp

    sp = with_output(sub.add_parser("analyze", help="classify heavy components"))
    sp.add_argument("instance")
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")
    sp.set_defaults(func=cmd_analyze)

    sp = with_output(sub.add_parser("solve", help="polynomial EFX orientation"))
    sp.add_argument("instance")
    sp.add_argument("--oracle-fallback", action="store_true",
                    help="run exhaustive search when a forbidden component is present")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_solve)

    sp = with_output(sub.add_parser("check", help="envy report of an orientation"))
    sp.add_argument("instance")
    sp.add_argument("orientation")
    sp.set_defaults(func=cmd_check)

    sp = with_output(sub.add_parser("oracle", help="exhaustive EFX search"))
    sp.add_argument("instance")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exists", dest="mode", action="store_const", const="exists")
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--count", dest="mode", action="store_const", const="count")
    sp.add_argument("--fix", action="append", default=[], metavar="EDGE=VERTEX")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_oracle, mode="exists")

    sp = with_output(sub.add_parser("reduce", help="compile a NOT/OR circuit to an instance"))
    sp.add_argument("circuit")
    sp.add_argument("-q", type=int, default=2, help="multiplicity (>= 2)")
    sp.add_argument("--alpha", help="heavy weight (default q+1)")
    sp.add_argument("--beta", help="light weight (default 1)")
    sp.add_argument("--verify", action="store_true", help="check the structural properties")
    sp.add_argument("--map", help="write the wire/gadget map as JSON")
    sp.set_defaults(func=cmd_reduce)

    sp = with_output(sub.add_parser("gen", help="seeded random instance"))
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--multiplicity", type=int, required=True)
    sp.add_argument("--heavy-density", type=float, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--edges", type=int, help="edge count (default random)")
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--loop-prob", type=float, default=0.1)
    sp.add_argument("--avoid-forbidden", action="store_true")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except OracleBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except (FormatError, CircuitError, GenerationError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
