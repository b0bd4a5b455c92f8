"""Command-line entry point for the scheduling toolkit."""

from __future__ import annotations

import argparse
from contextlib import contextmanager
from dataclasses import replace
import io
import json
import logging
from pathlib import Path
import sys
from typing import Iterator, Optional, Sequence, TextIO

from pydantic import BaseModel

from chain_of_scheduling.bench.generator import GenConfig, generate_instances, load_gen_config
from chain_of_scheduling.bench.reduction import load_digraph, random_digraph, reduce_dhp
from chain_of_scheduling.bench.report import ReportFormat, write_report
from chain_of_scheduling.bench.runner import CosVariant, Method, run_bench
from chain_of_scheduling.cli.config import CliConfig, LOG_LEVELS, load_runtime_config
from chain_of_scheduling.cli.responses import (
    GradeResponse,
    VerifyResponse,
    WrittenResponse,
    bench_response,
    repair_response,
    schedule_response,
    topk_response,
    violation_responses,
)
from chain_of_scheduling.core.codec import dump_instance, load_instance, save_instance
from chain_of_scheduling.core.errors import ConfigError, InputError
from chain_of_scheduling.core.feasibility import check_feasible, schedule_utility
from chain_of_scheduling.core.model import Instance, Schedule
from chain_of_scheduling.costrace.dataset import emit_sft_dataset
from chain_of_scheduling.costrace.parse import load_model_output, parse_trace
from chain_of_scheduling.costrace.render import TraceStyle, render_trace
from chain_of_scheduling.costrace.trace import build_trace
from chain_of_scheduling.repair.repair import (
    RepairStrategy,
    conflict_rate,
    post_process,
    schedule_conflicted,
)
from chain_of_scheduling.solvers import (
    GaConfig,
    TopKResult,
    solve_dp_topk,
    solve_exhaustive,
    solve_genetic,
    solve_greedy,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1 instead of argparse's 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# =============================================================================
# Output helpers
# =============================================================================

@contextmanager
def _sink(args: argparse.Namespace) -> Iterator[TextIO]:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            yield handle
    else:
        yield sys.stdout


def _dump_json(payload: BaseModel) -> str:
    return json.dumps(payload.model_dump(mode="json"), indent=2, sort_keys=True)


def _print_json(args: argparse.Namespace, payload: BaseModel) -> None:
    with _sink(args) as sink:
        sink.write(_dump_json(payload))
        sink.write("\n")


def _print_text(args: argparse.Namespace, text: str) -> None:
    with _sink(args) as sink:
        sink.write(text)
        if not text.endswith("\n"):
            sink.write("\n")


def _schedule_table(rows: Sequence[tuple[str, Schedule]]) -> str:
    lines = [f"{'rank':<6}{'utility':>10}  {'feasible':<9}sequence"]
    for label, schedule in rows:
        sequence = " -> ".join(schedule.event_ids) or "(none)"
        lines.append(
            f"{label:<6}{schedule.total_utility:>10.4f}  "
            f"{str(schedule.feasible).lower():<9}{sequence}"
        )
    return "\n".join(lines)


def _print_topk(args: argparse.Namespace, result: TopKResult) -> None:
    if args.pretty:
        _print_text(
            args,
            _schedule_table(
                [(str(candidate.rank), candidate.schedule) for candidate in result.candidates]
            ),
        )
    else:
        _print_json(args, topk_response(result, args.k))


def _print_schedule(args: argparse.Namespace, schedule: Schedule) -> None:
    if args.pretty:
        _print_text(args, _schedule_table([("1", schedule)]))
    else:
        _print_json(args, schedule_response(schedule))


# =============================================================================
# Input helpers
# =============================================================================

def _parse_sequence(raw: str) -> list[str]:
    try:
        value = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"--sequence must be a JSON list of event ids: {exc}") from exc
    if not isinstance(value, list) or not all(isinstance(item, str) for item in value):
        raise InputError("--sequence must be a JSON list of event ids")
    return value


def _seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else 0


def _ga_config(args: argparse.Namespace) -> GaConfig:
    return GaConfig(
        population_size=args.population,
        generations=args.generations,
        mutation_rate=args.mutation_rate,
        crossover_rate=args.crossover_rate,
        seed=_seed(args),
    )


def _gen_config(args: argparse.Namespace) -> GenConfig:
    if args.config:
        config = load_gen_config(args.config)
    elif args.n_events is not None:
        config = GenConfig(n_events=args.n_events)
    else:
        raise InputError("Provide --config or --n-events")
    overrides = {}
    if args.n_events is not None:
        overrides["n_events"] = args.n_events
    if args.seed is not None:
        overrides["seed"] = args.seed
    return replace(config, **overrides)


def _load_instances(args: argparse.Namespace) -> list[Instance]:
    if args.instances:
        return [load_instance(path) for path in args.instances]
    return generate_instances(_gen_config(args), args.count)


def _load_model_outputs(directory: Optional[str]) -> dict[str, str]:
    if not directory:
        return {}
    root = Path(directory)
    if not root.is_dir():
        raise InputError(f"{directory} is not a directory")
    return {
        path.stem: load_model_output(path)
        for path in sorted(root.iterdir())
        if path.is_file()
    }


def _parse_methods(raw: str) -> list[Method]:
    try:
        return [Method(name.strip()) for name in raw.split(",") if name.strip()]
    except ValueError as exc:
        choices = ", ".join(method.value for method in Method)
        raise ConfigError(f"Unknown method in {raw!r} (choose from {choices})") from exc


# =============================================================================
# Subcommands
# =============================================================================

def _cmd_solve(args: argparse.Namespace) -> int:
    _print_topk(args, solve_dp_topk(load_instance(args.instance), args.k))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    _print_topk(args, solve_exhaustive(instance, args.k, allow_large=args.allow_large))
    return 0


def _cmd_greedy(args: argparse.Namespace) -> int:
    _print_schedule(args, solve_greedy(load_instance(args.instance)))
    return 0


def _cmd_ga(args: argparse.Namespace) -> int:
    _print_schedule(args, solve_genetic(load_instance(args.instance), _ga_config(args)))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    sequence = _parse_sequence(args.sequence)
    violations = check_feasible(instance, sequence)
    if args.pretty:
        lines = [f"{v.kind.value} [{v.first}, {v.second}]: {v.detail}" for v in violations]
        _print_text(args, "\n".join(lines) or "feasible")
        return 0
    _print_json(
        args,
        VerifyResponse(
            feasible=not violations,
            total_utility=schedule_utility(instance, sequence),
            violations=violation_responses(violations),
        ),
    )
    return 0


def _cmd_repair(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    outcome = post_process(
        instance, _parse_sequence(args.sequence), RepairStrategy(args.strategy)
    )
    _print_json(args, repair_response(outcome, args.strategy))
    return 0


def _cmd_trace(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    trace = build_trace(instance, args.k)
    _print_text(args, render_trace(trace, instance, TraceStyle(args.style), _seed(args)))
    return 0


def _cmd_emit_sft(args: argparse.Namespace) -> int:
    instances = _load_instances(args)
    style = TraceStyle(args.style)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            count = emit_sft_dataset(instances, args.k, handle, style, _seed(args))
        print(_dump_json(WrittenResponse(paths=[args.output], records=count)))
    else:
        emit_sft_dataset(instances, args.k, sys.stdout, style, _seed(args))
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    instances = generate_instances(_gen_config(args), args.count)
    if args.out_dir:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        for instance in instances:
            path = out_dir / f"{instance.label}.json"
            save_instance(instance, path)
            paths.append(str(path))
        logger.info("Wrote %d instances to %s", len(paths), out_dir)
        _print_json(args, WrittenResponse(paths=paths, records=len(paths)))
        return 0
    if len(instances) != 1:
        raise ConfigError("Use --out-dir to write more than one instance")
    _print_text(args, dump_instance(instances[0]))
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    if args.graph:
        graph = load_digraph(args.graph)
    elif args.random is not None:
        graph = random_digraph(args.random, args.p, args.seed if args.seed is not None else 0)
    else:
        raise InputError("Provide --graph or --random")
    order = None
    if args.order:
        labels = {str(vertex): vertex for vertex in graph.nodes}
        try:
            order = [labels[label] for label in _parse_sequence(args.order)]
        except KeyError as exc:
            raise InputError(f"--order names unknown vertex {exc.args[0]!r}") from exc
    _print_text(args, dump_instance(reduce_dhp(graph, order)))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    instances = _load_instances(args)
    methods = _parse_methods(args.methods)
    model_outputs = _load_model_outputs(args.outputs)

    run_log: Optional[TextIO] = None
    try:
        if args.log:
            run_log = open(args.log, "w", encoding="utf-8")
        report = run_bench(
            instances,
            methods,
            k=args.k,
            repeats=args.repeats,
            ga_config=_ga_config(args),
            model_outputs=model_outputs,
            jobs=args.jobs,
            run_log=run_log,
            variant=CosVariant(
                TraceStyle(args.style), RepairStrategy(args.strategy), _seed(args)
            ),
        )
    finally:
        if run_log is not None:
            run_log.close()

    if args.format == "json":
        _print_json(args, bench_response(report))
        return 0
    buffer = io.StringIO()
    write_report(report, ReportFormat(args.format), buffer)
    _print_text(args, buffer.getvalue())
    return 0


def _cmd_grade(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    parsed = parse_trace(load_model_output(args.model_output), instance)
    outcome = post_process(instance, parsed.sequence, RepairStrategy(args.strategy))
    _print_json(
        args,
        GradeResponse(
            sequence=list(parsed.sequence),
            source=parsed.source,
            issues=list(parsed.issues),
            conflict_rate=conflict_rate(instance, parsed.sequence),
            conflicted=schedule_conflicted(instance, parsed.sequence),
            repair=repair_response(outcome, args.strategy),
        ),
    )
    return 0


COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "greedy": _cmd_greedy,
    "ga": _cmd_ga,
    "verify": _cmd_verify,
    "repair": _cmd_repair,
    "trace": _cmd_trace,
    "emit-sft": _cmd_emit_sft,
    "gen": _cmd_gen,
    "reduce": _cmd_reduce,
    "bench": _cmd_bench,
    "grade": _cmd_grade,
}


# =============================================================================
# Parser
# =============================================================================

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", help="Write the result here instead of stdout")
    parser.add_argument(
        "--pretty", action="store_true", help="Human-readable table instead of JSON"
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, help="Overrides COS_LOG_LEVEL")


def _add_instance(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--instance", required=True, help="Instance JSON file")


def _add_k(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=3, help="Candidates to keep (default: 3)")


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Random seed (default: 0)")


def _add_ga(parser: argparse.ArgumentParser) -> None:
    defaults = GaConfig()
    parser.add_argument("--population", type=int, default=defaults.population_size)
    parser.add_argument("--generations", type=int, default=defaults.generations)
    parser.add_argument("--mutation-rate", type=float, default=defaults.mutation_rate)
    parser.add_argument("--crossover-rate", type=float, default=defaults.crossover_rate)


def _add_instance_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--instances", nargs="+", help="Instance JSON files")
    parser.add_argument("--config", help="GenConfig JSON file")
    parser.add_argument("--n-events", type=int, help="Generate instances of this size")
    parser.add_argument("--count", type=int, default=1, help="Instances to generate")


def _add_style(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--style",
        choices=[style.value for style in TraceStyle],
        default=TraceStyle.FULL.value,
        help="Trace sections to render; no-integration answers with a seeded pick",
    )


def _add_strategy(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--strategy",
        choices=[strategy.value for strategy in RepairStrategy],
        default=RepairStrategy.LOCAL_SEARCH.value,
        help="local-search substitutes, drop only deletes (default: local-search)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="chain_of_scheduling",
        description="Event scheduling solvers, repair and CoS traces",
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, parser_class=_ArgumentParser
    )

    solve_parser = subparsers.add_parser("solve", help="Exact top-k dynamic programming")
    _add_instance(solve_parser)
    _add_k(solve_parser)

    oracle_parser = subparsers.add_parser("oracle", help="Exhaustive top-k search")
    _add_instance(oracle_parser)
    _add_k(oracle_parser)
    oracle_parser.add_argument(
        "--allow-large", action="store_true", help="Lift the instance size guard"
    )

    greedy_parser = subparsers.add_parser("greedy", help="Utility-greedy baseline")
    _add_instance(greedy_parser)

    ga_parser = subparsers.add_parser("ga", help="Genetic algorithm baseline")
    _add_instance(ga_parser)
    _add_seed(ga_parser)
    _add_ga(ga_parser)

    verify_parser = subparsers.add_parser("verify", help="List feasibility violations")
    _add_instance(verify_parser)
    verify_parser.add_argument("--sequence", required=True, help='JSON list, e.g. \'["A","B"]\'')

    repair_parser = subparsers.add_parser("repair", help="Repair an event sequence")
    _add_instance(repair_parser)
    repair_parser.add_argument("--sequence", required=True, help="JSON list of event ids")
    _add_strategy(repair_parser)

    trace_parser = subparsers.add_parser("trace", help="Render a CoS trace")
    _add_instance(trace_parser)
    _add_k(trace_parser)
    _add_seed(trace_parser)
    _add_style(trace_parser)

    sft_parser = subparsers.add_parser("emit-sft", help="Write an SFT dataset as JSON lines")
    _add_instance_source(sft_parser)
    _add_k(sft_parser)
    _add_seed(sft_parser)
    _add_style(sft_parser)

    gen_parser = subparsers.add_parser("gen", help="Generate synthetic instances")
    gen_parser.add_argument("--config", help="GenConfig JSON file")
    gen_parser.add_argument("--n-events", type=int, help="Events per instance")
    gen_parser.add_argument("--count", type=int, default=1)
    gen_parser.add_argument("--out-dir", help="Write one <instance_id>.json per instance")
    _add_seed(gen_parser)

    reduce_parser = subparsers.add_parser("reduce", help="Digraph to scheduling instance")
    reduce_parser.add_argument("--graph", help="Digraph JSON file")
    reduce_parser.add_argument("--random", type=int, help="Sample a random digraph of this size")
    reduce_parser.add_argument("--p", type=float, default=0.3, help="Edge probability")
    reduce_parser.add_argument("--order", help="JSON list of vertex labels")
    _add_seed(reduce_parser)

    bench_parser = subparsers.add_parser("bench", help="Benchmark methods on instances")
    _add_instance_source(bench_parser)
    _add_k(bench_parser)
    _add_seed(bench_parser)
    _add_ga(bench_parser)
    bench_parser.add_argument("--methods", default="dp,greedy,ga", help="Comma-separated")
    bench_parser.add_argument("--repeats", type=int, default=1)
    bench_parser.add_argument("--jobs", type=int, default=1, help="Worker processes")
    bench_parser.add_argument(
        "--format", choices=["json", *(fmt.value for fmt in ReportFormat)], default="json"
    )
    bench_parser.add_argument("--log", help="Per-run JSON lines log")
    bench_parser.add_argument(
        "--outputs", help="Directory of model outputs named <instance_id>.txt|.json"
    )
    _add_style(bench_parser)
    _add_strategy(bench_parser)

    grade_parser = subparsers.add_parser("grade", help="Parse, score and repair a model output")
    _add_instance(grade_parser)
    grade_parser.add_argument("--model-output", required=True, help="Trace text or JSON file")
    _add_strategy(grade_parser)

    for sub in subparsers.choices.values():
        _add_common(sub)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1

    try:
        runtime = load_runtime_config(override=args.log_level)
        logging.basicConfig(level=runtime.level, format=LOG_FORMAT, stream=sys.stderr)

        CliConfig(
            subcommand=args.command,
            k=getattr(args, "k", 3),
            seed=getattr(args, "seed", None),
            output=args.output,
            pretty=args.pretty,
        ).validate()
        return COMMANDS[args.command](args)
    except (ValueError, LookupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        logger.exception("Unexpected failure in %s", args.command)
        return 2
