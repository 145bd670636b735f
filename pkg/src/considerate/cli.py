"""Command line front end.

Exit codes: 0 success, 2 usage or parse error, 3 contract violation,
4 budget exceeded. Failures print one ``error <category>: <message>`` line
to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from considerate import __version__
from considerate.cyclegen import BLOCKS, build_cycle_instance
from considerate.dynamics import ExhaustiveScheduler, RandomCliqueScheduler, ScriptedScheduler, run_dynamics
from considerate.errors import ConsiderateError
from considerate.formats import (
    format_deviation,
    format_instance,
    format_schedule,
    format_state,
    parse_instance,
    parse_schedule,
    parse_state,
)
from considerate.generate import DEFAULT_SEED, gen_random
from considerate.oracle import NOTIONS, Budget, classify_state
from considerate.solver import SolverConfig, solve_ce


def _u64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not a 64-bit unsigned integer")
    return value


def _load(path: str):
    return parse_instance(Path(path).read_text())


def _budget(args) -> Budget:
    return Budget(args.budget_cliques, args.budget_devs)


def _yes(v: bool | None) -> str:
    return "unknown" if v is None else ("yes" if v else "no")


def cmd_solve(args) -> int:
    instance, graph = _load(args.instance)
    result = solve_ce(instance, graph, SolverConfig.for_instance(instance), seed=args.seed)
    if args.trace:
        lines = [f"start {format_state(result.initial)} phi {result.phi_start}"]
        for k, step in enumerate(result.steps, start=1):
            mv = step.move
            lines.append(f"iter {k} {mv.kind} player {mv.player} {mv.source}->{mv.target} phi {step.phi}")
        Path(args.trace).write_text("\n".join(lines) + "\n")
    report = classify_state(instance, graph, result.state, _budget(args), notions=("NE", "CE"))
    print(format_state(result.state))
    print(
        f"result NE={_yes(report['NE'])} CE={_yes(report['CE'])} iterations={result.iterations} "
        f"phi_start={result.phi_start} phi_end={result.phi_end}"
    )
    return 0


def cmd_verify(args) -> int:
    instance, graph = _load(args.instance)
    state = parse_state(Path(args.state).read_text(), instance)
    wanted = NOTIONS if args.full else tuple(x for x in NOTIONS if x not in ("SE", "SSE"))
    report = classify_state(instance, graph, state, _budget(args), notions=wanted)
    for notion in NOTIONS:
        v = report.verdicts.get(notion)
        if v is None:
            print(f"{notion} unknown  # not requested; use --full")
            continue
        line = f"{notion} {_yes(v.holds)}"
        if v.witness is not None:
            line += f" witness: {format_deviation(v.witness)}"
        elif v.holds is None and v.reason:
            line += f"  # {v.reason}"
        print(line)
    return 0


def cmd_dynamics(args) -> int:
    instance, graph = _load(args.instance)
    state = parse_state(Path(args.state).read_text(), instance)
    kind, _, arg = args.scheduler.partition(":")
    budget = _budget(args)
    if kind == "scripted" and arg:
        scheduler = ScriptedScheduler(parse_schedule(Path(arg).read_text()), loop=args.loop)
    elif kind == "random":
        scheduler = RandomCliqueScheduler(_u64(arg) if arg else DEFAULT_SEED, budget=budget)
    elif kind == "exhaustive" and not arg:
        scheduler = ExhaustiveScheduler(budget)
    else:
        raise argparse.ArgumentTypeError(f"bad scheduler {args.scheduler!r}")
    trace = run_dynamics(instance, graph, state, scheduler, args.max_steps, budget)
    text = "\n".join(trace.lines()) + "\n"
    if args.trace_out:
        Path(args.trace_out).write_text(text)
        print(trace.lines()[-1])
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen_cycle(args) -> int:
    c = build_cycle_instance()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "instance.txt").write_text(format_instance(c.instance, c.graph))
    (out / "state.txt").write_text(format_state(c.state) + "\n")
    (out / "schedule.txt").write_text(format_schedule(c.schedule))
    manifest = [f"blocks {BLOCKS}"]
    manifest += [f"player {p} = {name}" for p, name in enumerate(c.names)]
    manifest += [f"resource {r} = r_{r % 5 + 1}^{r // 5 + 1}" for r in range(c.instance.m)]
    (out / "manifest.txt").write_text("\n".join(manifest) + "\n")
    print(f"wrote {out}/instance.txt state.txt schedule.txt manifest.txt ({len(c.schedule)} moves)")
    return 0


def cmd_gen_random(args) -> int:
    instance, graph = gen_random(args.players, args.resources, args.delay_max, args.graph, args.seed)
    text = format_instance(instance, graph)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="considerate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"considerate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def budgets(p):
        p.add_argument("--budget-cliques", type=int, default=Budget.max_cliques)
        p.add_argument("--budget-devs", type=int, default=Budget.max_deviations)

    p = sub.add_parser("solve", help="compute a state that is both NE and CE")
    p.add_argument("instance")
    p.add_argument("--trace")
    p.add_argument("--seed", type=_u64, help="shuffle the greedy insertion order")
    budgets(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="classify a state against every equilibrium notion")
    p.add_argument("instance")
    p.add_argument("state")
    p.add_argument("--full", action="store_true", help="also decide SE and SSE over all coalitions")
    budgets(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dynamics", help="run weak considerate improving dynamics")
    p.add_argument("instance")
    p.add_argument("state")
    p.add_argument("--scheduler", required=True, help="scripted:<file> | random:<seed> | exhaustive")
    p.add_argument("--max-steps", type=int, required=True)
    p.add_argument("--loop", action="store_true", help="repeat a scripted schedule")
    p.add_argument("--trace-out")
    budgets(p)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("gen-cycle", help="write the cycling 19-block construction")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_cycle)

    p = sub.add_parser("gen-random", help="write a seeded random instance")
    p.add_argument("--players", "-n", type=int, required=True)
    p.add_argument("--resources", "-m", type=int, required=True)
    p.add_argument("--delay-max", type=int, default=100)
    p.add_argument("--graph", default="empty", help="empty | gnp:<p> | cliques:<k>")
    p.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_random)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsiderateError as exc:
        print(f"error {exc.category}: {exc}", file=sys.stderr)
        return exc.exit_code
    except argparse.ArgumentTypeError as exc:
        print(f"error usage: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error io: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
