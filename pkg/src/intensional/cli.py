"""Command-line front end.

Subcommands ``solve``, ``eval``, ``parse`` and ``archive``.  Exit codes:
0 success, 1 internal error, 2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from dataclasses import dataclass, field

from .errors import CapacityError, InputError
from .harness import archive_study, parse_generator, sample_efficiency_curve, write_csv
from .induction import (
    OneClassConfig,
    SolverConfig,
    extensional_solution,
    intensional_solutions,
    make_report,
    one_class_learn,
    problem_from_task,
)
from .statement import parse_statement, print_statement
from .task import dump_task, load_task

log = logging.getLogger("intensional")

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    task: str | None = None
    gen: str | None = None
    mode: str = "intensional"
    max_terms: int = 4
    max_literals: int = 3
    max_primes: int = 64
    max_results: int = 8
    fractions: list[float] = field(default_factory=lambda: [0.5])
    seeds: list[int] = field(default_factory=lambda: [0])
    agents: list[str] = field(default_factory=lambda: ["intentional", "mimic", "hybrid"])
    output: str | None = None
    greedy: bool = False
    workers: int = 1
    timing: bool = False
    json: bool = False
    dump_task: bool = False
    n: int | None = None
    text: str | None = None

    def dump(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def load(cls, text: str) -> RunConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad config dump: {exc}") from None
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    def solver(self) -> SolverConfig:
        return SolverConfig(max_primes=self.max_primes, max_results=self.max_results, greedy=self.greedy)


def parse_seeds(text: str) -> list[int]:
    """``0..19`` (inclusive range) or a comma list, or a mix: ``0..3,7``."""
    seeds = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        elif part:
            seeds.append(int(part))
    return seeds


def _csv_list(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--task", help="task file")
    src.add_argument("--gen", help="generator spec, e.g. and:2, add:2, uniform:4:0.5:7")
    common.add_argument("--max-terms", type=int, default=4)
    common.add_argument("--max-literals", type=int, default=3)
    common.add_argument("--max-primes", type=int, default=64)
    common.add_argument("--max-results", type=int, default=8)
    common.add_argument("--greedy", action="store_true", help="weakness-greedy cover (not exact)")
    common.add_argument("-o", "--output", help="write output here instead of stdout")
    common.add_argument("--json", action="store_true", help="machine-readable records only")
    common.add_argument("--dump-task", action="store_true", help="print the task file and exit")
    common.add_argument("--print-config", action="store_true", help="print the canonical config and exit")

    parser = argparse.ArgumentParser(prog="intensional", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="re-run a config dump produced by --print-config")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("solve", parents=[common], help="induce solutions for a task")
    p.add_argument("--mode", choices=["intensional", "extensional", "one-class"], default="intensional")

    p = sub.add_parser("eval", parents=[common], help="generalisation experiment, CSV output")
    p.add_argument("--fractions", type=lambda s: [float(x) for x in _csv_list(s)], default=[0.5])
    p.add_argument("--seeds", type=parse_seeds, default=[0])
    p.add_argument("--agents", type=_csv_list, default=["intentional", "mimic", "hybrid"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record wall-clock elapsed_ms")

    p = sub.add_parser("parse", parents=[common], help="canonicalise a DSL statement")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("text")

    sub.add_parser("archive", parents=[common], help="shortest vs weakest solution archives")
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    for f in dataclasses.fields(RunConfig):
        if f.name != "subcommand" and hasattr(args, f.name):
            setattr(cfg, f.name, getattr(args, f.name))
    return cfg


def _load(cfg):
    if cfg.task:
        return cfg.task, load_task(cfg.task)
    if cfg.gen:
        return cfg.gen, parse_generator(cfg.gen)
    raise InputError("one of --task or --gen is required")


def cmd_solve(cfg: RunConfig, out):
    _, task = _load(cfg)
    p = problem_from_task(task)
    if cfg.mode == "extensional":
        reports = [make_report(extensional_solution(task.goals, task.n), p)]
    elif cfg.mode == "one-class":
        reports = [one_class_learn(task.goals, OneClassConfig())]
    else:
        reports = intensional_solutions(p, cfg.solver())
    for r in reports:
        if cfg.json:
            out.write(json.dumps(r.to_record(), sort_keys=True) + "\n")
            continue
        out.write(f"{r.statement}\n")
        for line in r.to_text().splitlines()[1:]:
            out.write(f"  {line}\n")


def cmd_eval(cfg: RunConfig, out):
    name, task = _load(cfg)
    records = sample_efficiency_curve(
        task, cfg.fractions, cfg.seeds, cfg.agents, cfg.solver(), name=name, workers=cfg.workers
    )
    write_csv(records, out, timing=cfg.timing)


def cmd_parse(cfg: RunConfig, out):
    out.write(print_statement(parse_statement(cfg.text, cfg.n)) + "\n")


def cmd_archive(cfg: RunConfig, out):
    _, task = _load(cfg)
    report = archive_study(task, cfg.max_terms, cfg.max_literals)
    if not cfg.json:
        out.write(report.to_text() + "\n")
    out.write(json.dumps(report.to_record(), sort_keys=True) + "\n")


COMMANDS = {"solve": cmd_solve, "eval": cmd_eval, "parse": cmd_parse, "archive": cmd_archive}


def run(cfg: RunConfig, out):
    if cfg.dump_task:
        out.write(dump_task(_load(cfg)[1]))
        return
    COMMANDS[cfg.subcommand](cfg, out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                cfg = RunConfig.load(fh.read())
        elif args.subcommand is None:
            parser.print_usage(sys.stderr)
            return EXIT_INPUT
        else:
            cfg = config_from_args(args)
            if args.print_config:
                sys.stdout.write(cfg.dump())
                return EXIT_OK
        if cfg.subcommand not in COMMANDS:
            raise InputError(f"unknown subcommand {cfg.subcommand!r}")
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
                run(cfg, fh)
        else:
            run(cfg, sys.stdout)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
