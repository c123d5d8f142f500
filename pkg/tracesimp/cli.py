import argparse
import json
import logging
import os
import sys
from multiprocessing import Pool
from typing import Optional, Sequence

from tracesimp.benchmark_suite import SUITE_VERSION, benchmark_suite
from tracesimp.checkers.derivation_checker import DerivationChecker
from tracesimp.connectivity_analyzer import annotate, segments_of
from tracesimp.document_codec import read_document, serialize, write_document
from tracesimp.models.gen_spec import GenSpec
from tracesimp.models.trace_document import TraceDocument
from tracesimp.models.trace_state import SemanticsMode, render_key
from tracesimp.optimum_oracle import DEFAULT_LIMIT
from tracesimp.report_writer import FORMATS, format_reports
from tracesimp.trace_interpreter import dump, execute
from tracesimp.trace_reducer import S_CONDITIONS
from tracesimp.trace_simplifier import ORACLE_AUTO, ORACLE_OFF, ORACLE_ON, TraceSimplifier
from tracesimp.trace_utils.context_switches import context_switch_count
from tracesimp.workload_generator import gen_program, gen_trace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

class UsageError(ValueError):
    pass

def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)

def _simplifier_options(args) -> dict:
    return {
        "mode": SemanticsMode(args.mode),
        "strict_vars": args.strict_vars,
        "strict_locks": args.strict_locklist,
        "fixpoint": args.fixpoint,
        "s_condition": args.s_condition,
        "debug_checks": args.debug_checks,
        "runs": args.runs,
    }

def reduced_path(path: str) -> str:
    """fig0.trc -> fig0.reduced.trc"""
    stem, extension = os.path.splitext(path)
    return f"{stem}.reduced{extension or '.trc'}"

def _simplify_file(task):
    """Pool worker: (path, out, options) -> (path, report, passed, problems, error)."""
    path, out, options = task
    try:
        document = read_document(path)
        simplifier = TraceSimplifier()
        simplifier.initiate(**options)
        name = os.path.splitext(os.path.basename(path))[0]
        outcome = simplifier.run(name, document.program, document.trace)
        result = outcome.result
        write_document(out, TraceDocument(document.program, result.after.trace, annotations=result.after,
                                          origin=document.trace, derivation=result.derivation))
        return path, outcome.report, outcome.passed, outcome.problems, None
    except (ValueError, OSError) as error:
        return path, None, False, [], f"{path}: {error}"

def cmd_simplify(args) -> int:
    if args.out and len(args.inputs) > 1:
        raise UsageError("--out takes a single input file.")
    options = _simplifier_options(args)
    options["oracle"] = ORACLE_ON if args.oracle else ORACLE_OFF
    options["oracle_limit"] = args.oracle_limit
    tasks = [(path, args.out or reduced_path(path), options) for path in args.inputs]
    if args.jobs > 1 and len(tasks) > 1:
        with Pool(processes=args.jobs) as pool:
            outcomes = pool.map(_simplify_file, tasks)
    else:
        outcomes = [_simplify_file(task) for task in tasks]

    code = EXIT_OK
    reports = []
    for path, report, passed, problems, error in outcomes:
        if error:
            print(f"error: {error}", file=sys.stderr)
            code = EXIT_INPUT_ERROR
            continue
        reports.append(report)
        for problem in problems:
            print(f"FAIL {path}: {problem}", file=sys.stderr)
        if not passed and code == EXIT_OK:
            code = EXIT_CHECK_FAILED
    if reports:
        sys.stdout.write(format_reports(reports, args.format))
        if args.format == "text":
            print("Checks: " + ("PASS" if code == EXIT_OK else "FAIL"))
    return code

def cmd_analyze(args) -> int:
    document = read_document(args.input)
    annotated = annotate(document.program, document.trace)
    segments = segments_of(annotated)
    cs = context_switch_count(document.trace)
    if args.format == "json":
        payload = {
            "threads": document.program.thread_count,
            "statements": document.program.statement_count,
            "context_switches": cs,
            "segments": [s.as_tuple() for s in segments],
            "annotations": [j.as_tuple() for j in annotated.joins],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [f"threads: {document.program.thread_count}",
             f"statements: {document.program.statement_count}",
             f"context switches: {cs}",
             f"segments: {len(segments)}"]
    lines += [f"  {s.start}..{s.end} t{s.start_thread}->t{s.end_thread}" for s in segments]
    lines.append("annotations:")
    lines += [f"  {u}: {j.s1} {j.s2} {j.t1} {j.t2}" for u, j in enumerate(annotated.joins)]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK

def cmd_run(args) -> int:
    document = read_document(args.input)
    mode = SemanticsMode(args.mode)
    if args.dump:
        execution, lines = dump(document.program, document.trace, mode=mode, strict=args.strict_vars)
    else:
        execution, lines = execute(document.program, document.trace, mode=mode, strict=args.strict_vars), []
    state = execution.state
    if args.format == "json":
        payload = {
            "gamma": {render_key(k): v for k, v in sorted(state.gamma.items(), key=lambda kv: render_key(kv[0]))},
            "L": list(state.locks),
            "W": sorted(state.watched),
            "steps": lines,
            "threads": execution.program.thread_count,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
        return EXIT_OK
    spawned = execution.program.thread_count - document.program.thread_count
    tail = [f"final {state.render()}"]
    if spawned:
        tail.append(f"spawned threads: {spawned}")
    _emit("\n".join(lines + tail) + "\n", args.out)
    return EXIT_OK

def cmd_check(args) -> int:
    document = read_document(args.input)
    if document.origin is None or document.derivation is None:
        raise UsageError(f"{args.input} has no origin and derivation sections to check.")
    checker = DerivationChecker()
    checker.initiate(args.s_condition)
    passed, problem = checker.run(document.program, document.origin, document.derivation, document.trace)
    if not passed:
        print(f"FAIL certificate: {problem}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"PASS certificate: {len(document.derivation.rounds)} round(s), "
          f"{document.derivation.swap_count()} swap(s), CS {context_switch_count(document.origin)} -> "
          f"{context_switch_count(document.trace)}")
    return EXIT_OK

def _parse_length(text: str):
    low, _, high = text.partition("..")
    try:
        return int(low), int(high or low)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got '{text}'") from None

def cmd_gen(args) -> int:
    if args.benchmark:
        instances = {name: (program, trace) for name, program, trace in benchmark_suite()}
        if args.benchmark not in instances:
            raise UsageError(f"Unknown benchmark '{args.benchmark}', expected one of {sorted(instances)}.")
        program, trace = instances[args.benchmark]
    else:
        spec = GenSpec(thread_count=args.threads, statements_per_thread=args.length,
                       global_pool=args.globals, local_pool=args.locals,
                       switch_bias=args.bias, seed=args.seed, allow_duplicate=args.allow_duplicate,
                       hot_global_bias=args.hot_global)
        program = gen_program(spec)
        trace = gen_trace(program, spec.switch_bias, spec.seed)
    _emit(serialize(TraceDocument(program, trace)), args.out)
    return EXIT_OK

def cmd_report(args) -> int:
    options = _simplifier_options(args)
    simplifier = TraceSimplifier()
    simplifier.initiate(oracle=ORACLE_AUTO, oracle_limit=args.oracle_limit, **options)
    reports, code = [], EXIT_OK
    for name, program, trace in benchmark_suite():
        outcome = simplifier.run(name, program, trace)
        reports.append(outcome.report)
        if not outcome.passed:
            code = EXIT_CHECK_FAILED
            for problem in outcome.problems:
                print(f"FAIL {name}: {problem}", file=sys.stderr)
    title = f"Benchmark analogues (suite v{SUITE_VERSION}, fixpoint {args.fixpoint})"
    _emit(format_reports(reports, args.format, title), args.out)
    return code

def _add_semantics_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--mode', choices=[m.value for m in SemanticsMode], default=SemanticsMode.REPLAY.value,
                        help='Semantics mode (default: replay)')
    parser.add_argument('--strict-vars', default=False, action='store_true',
                        help='Reading an unbound variable is an error instead of 0')

def _add_reduction_flags(parser: argparse.ArgumentParser) -> None:
    _add_semantics_flags(parser)
    parser.add_argument('--strict-locklist', default=False, action='store_true',
                        help='Compare lock lists in order instead of as multisets')
    parser.add_argument('--fixpoint', default=1, type=int, metavar='N',
                        help='Maximum reduction rounds (default: 1)')
    parser.add_argument('--s-condition', choices=S_CONDITIONS, default=S_CONDITIONS[0],
                        help='Start thread compared by the half-swap rule')
    parser.add_argument('--debug-checks', default=False, action='store_true',
                        help='Assert merged-segment annotations after each swap')
    parser.add_argument('--oracle-limit', default=DEFAULT_LIMIT, type=int, metavar='N',
                        help='Largest statement count searched by the oracle')
    parser.add_argument('--runs', default=1, type=int, metavar='N',
                        help='Repetitions averaged into each timing')
    parser.add_argument('--format', choices=FORMATS, default='text')
    parser.add_argument('--out', metavar='FILE')

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', default=0, action='count', help='More logging (repeatable)')
    common.add_argument('-q', '--quiet', default=False, action='store_true', help='Errors only')

    ap = argparse.ArgumentParser(prog='tracesimp', description='Context-switch reduction for concurrent traces')
    commands = ap.add_subparsers(dest='command', required=True)

    simplify = commands.add_parser('simplify', parents=[common], help='Reduce context switches of trace files')
    simplify.add_argument('inputs', nargs='+', metavar='FILE')
    _add_reduction_flags(simplify)
    simplify.add_argument('--oracle', default=False, action='store_true',
                          help='Also report the exhaustive minimum (small traces only)')
    simplify.add_argument('--jobs', default=1, type=int, metavar='N', help='Parallel processes')
    simplify.set_defaults(handler=cmd_simplify)

    analyze = commands.add_parser('analyze', parents=[common], help='Show segments and annotations')
    analyze.add_argument('input', metavar='FILE')
    analyze.add_argument('--format', choices=('text', 'json'), default='text')
    analyze.add_argument('--out', metavar='FILE')
    analyze.set_defaults(handler=cmd_analyze)

    run = commands.add_parser('run', parents=[common], help='Execute a trace with the operational semantics')
    run.add_argument('input', metavar='FILE')
    _add_semantics_flags(run)
    run.add_argument('--dump', default=False, action='store_true', help='Print the state after every step')
    run.add_argument('--format', choices=('text', 'json'), default='text')
    run.add_argument('--out', metavar='FILE')
    run.set_defaults(handler=cmd_run)

    check = commands.add_parser('check', parents=[common], help='Validate the derivation of a reduced trace file')
    check.add_argument('input', metavar='FILE')
    check.add_argument('--s-condition', choices=S_CONDITIONS, default=None,
                       help='Replay under this condition instead of the one the file records')
    check.set_defaults(handler=cmd_check)

    gen = commands.add_parser('gen', parents=[common], help='Generate a random or benchmark trace file')
    gen.add_argument('--threads', default=2, type=int)
    gen.add_argument('--length', default=(4, 4), type=_parse_length, metavar='LO..HI',
                     help='Statements per thread')
    gen.add_argument('--globals', default=2, type=int)
    gen.add_argument('--locals', default=2, type=int)
    gen.add_argument('--bias', default=0.5, type=float, help='Switch probability per scheduling step')
    gen.add_argument('--hot-global', default=GenSpec.hot_global_bias, type=float, metavar='P',
                     help='Probability that a localize/share operand is the shared global g0')
    gen.add_argument('--seed', default=0, type=int)
    gen.add_argument('--allow-duplicate', default=False, action='store_true')
    gen.add_argument('--benchmark', metavar='NAME', help='Emit a fixed benchmark instance instead')
    gen.add_argument('--out', metavar='FILE')
    gen.set_defaults(handler=cmd_gen)

    report = commands.add_parser('report', parents=[common], help='Simplification table over the benchmark suite')
    _add_reduction_flags(report)
    report.set_defaults(handler=cmd_report)
    return ap

def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_INPUT_ERROR
    _configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except (ValueError, OSError) as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_INPUT_ERROR

if __name__ == "__main__":
    sys.exit(main())
