"""Command-line driver and benchmark harness.

Output mimics the classic ASP solver convention: a version banner,
`Solving...`, one `Answer: i` block per world view listing the
subjective atoms that hold in it, then a SATISFIABLE or UNSATISFIABLE
verdict.  Exit status is 10 when at least one world view exists, 20
when none does, and 65 on bad input.

The `bench` subcommand times the solver on two generated families, the
scholarship-eligibility programs and the ground Yale-shooting planning
instances shipped with the package, writing one CSV row per instance.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from dataclasses import dataclass
from importlib import resources
from multiprocessing import Pipe, Process

from .epistemic import (TranslationError, WorldView, oracle_world_views, solve)
from .grounder import GroundingError, SafetyError
from .syntax import (KAtom, ObjLiteral, Program, SourceError, parse_text,
                     print_atom, print_subjective)

VERSION = "0.1.0"
BANNER = f"epiworld version {VERSION}"

SATISFIABLE = 10
UNSATISFIABLE = 20
INPUT_ERROR = 65


@dataclass
class RunConfig:
    files: tuple[str, ...]
    n_models: int = 0
    semantics: str = "g91"
    constraints: bool = True
    wfm: bool = True
    mode: str = "solve"
    seed: int = 0


def load_program(paths) -> Program:
    rules: list = []
    shows: list = []
    consts: list = []
    for path in paths:
        with open(path, encoding="utf-8") as handle:
            part = parse_text(handle.read())
        rules.extend(part.rules)
        shows.extend(part.shows)
        consts.extend(part.consts)
    return Program(tuple(rules), tuple(shows), tuple(consts))


def apply_show(wv: WorldView, shows) -> list[str]:
    """Displayed subjective atoms of one world view.

    Without directives the view's true subjective atoms are shown as
    given.  With directives, any ground atom of a shown predicate that
    holds in every answer set is displayed in `&k{ a }` form, whether or
    not the program ever mentioned it subjectively.
    """
    if not shows:
        return [print_subjective(k) for k in wv.known()]
    cautious = frozenset.intersection(*wv.answer_sets)
    wanted = {(d.name, d.arity, d.strong_neg) for d in shows}
    atoms = [a for a in cautious if (a.name, len(a.args), a.strong_neg) in wanted]
    return [print_subjective(KAtom(ObjLiteral(a, 0)))
            for a in sorted(atoms, key=print_atom)]


def run(config: RunConfig, out=None) -> int:
    out = sys.stdout if out is None else out
    out.write(BANNER + "\n")
    try:
        program = load_program(config.files)
    except (OSError, UnicodeDecodeError, SourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    out.write("Solving...\n")
    count = 0
    try:
        if config.mode == "oracle":
            views = oracle_world_views(program, config.semantics)
            if config.n_models:
                views = views[:config.n_models]
        else:
            views = solve(program, semantics=config.semantics,
                          max_models=config.n_models,
                          use_constraints=config.constraints,
                          use_wfm=config.wfm)
        for view in views:
            count += 1
            out.write(f"Answer: {count}\n")
            out.write(" ".join(apply_show(view, program.shows)) + "\n")
    except (SafetyError, GroundingError, TranslationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    out.write("SATISFIABLE\n" if count else "UNSATISFIABLE\n")
    return SATISFIABLE if count else UNSATISFIABLE


# ---------------------------------------------------------------------------
# Instance generation


ELIGIBILITY_RULES = """\
eligible(X) :- high(X).
eligible(X) :- minority(X), fair(X).
-eligible(X) :- -fair(X), -high(X).
interview(X) :- not &k{ eligible(X) }, not &k{ -eligible(X) }, student(X).
"""

_PROFILES = ("high", "fair", "minority", "disjunction", "negative")


def gen_eligibility(n_students: int, seed: int = 0) -> Program:
    """Scholarship-eligibility instance with one random profile per
    student: known-high, known-fair, fair minority, a fair-or-high
    disjunction, or known-bad grades."""
    if n_students < 1:
        raise ValueError("need at least one student")
    rng = random.Random(seed)
    lines = [ELIGIBILITY_RULES]
    for i in range(1, n_students + 1):
        lines.append(f"student(s{i}).")
    for i in range(1, n_students + 1):
        profile = rng.choice(_PROFILES)
        if profile == "high":
            lines.append(f"high(s{i}).")
        elif profile == "fair":
            lines.append(f"fair(s{i}).")
        elif profile == "minority":
            lines.append(f"minority(s{i}).")
            lines.append(f"fair(s{i}).")
        elif profile == "disjunction":
            lines.append(f"fair(s{i}),high(s{i}).")
        else:
            lines.append(f"-fair(s{i}).")
            lines.append(f"-high(s{i}).")
    return parse_text("\n".join(lines))


YALE_INSTANCES = ("yale01", "yale02", "yale03", "yale04", "yale05", "yale_unsat")


def yale_source(name: str) -> str:
    if name not in YALE_INSTANCES:
        raise ValueError(f"unknown instance {name!r}")
    return resources.files("epiworld").joinpath(f"data/yale/{name}.lp").read_text("utf-8")


# ---------------------------------------------------------------------------
# Benchmark harness


def _bench_worker(text: str, semantics: str, conn) -> None:
    started = time.perf_counter()
    program = parse_text(text)
    count = sum(1 for _ in solve(program, semantics=semantics))
    conn.send((count, time.perf_counter() - started))
    conn.close()


def _time_instance(text: str, semantics: str, timeout: float, reps: int):
    """Average solving time over `reps` fresh processes.

    Returns (world_views, avg_seconds, timed_out); counts are None when
    any repetition hit the timeout or died.
    """
    count = None
    seconds = []
    for _ in range(reps):
        parent, child = Pipe(duplex=False)
        proc = Process(target=_bench_worker, args=(text, semantics, child))
        proc.start()
        child.close()
        proc.join(timeout)
        if proc.is_alive():
            proc.terminate()
            proc.join()
            return None, None, True
        if not parent.poll():
            return None, None, True
        count, elapsed = parent.recv()
        seconds.append(elapsed)
    return count, sum(seconds) / len(seconds), False


def bench_instances(domain: str, max_n: int, seed: int):
    if domain == "eligibility":
        from .syntax import print_program
        return [(f"eligible{n:02d}", print_program(gen_eligibility(n, seed)))
                for n in range(1, max_n + 1)]
    names = [f"yale{n:02d}" for n in range(1, min(max_n, 5) + 1)] + ["yale_unsat"]
    return [(name, yale_source(name)) for name in names]


def bench(domain: str, max_n: int, seed: int, timeout: float, reps: int,
          semantics: str, out_path: str | None, jobs: int = 1) -> list[dict]:
    instances = bench_instances(domain, max_n, seed)

    def record(item):
        name, text = item
        count, avg, timed_out = _time_instance(text, semantics, timeout, reps)
        return {
            "instance": name,
            "semantics": semantics,
            "world_views": "" if timed_out else count,
            "avg_seconds": "" if timed_out else f"{avg:.6f}",
            "timed_out": "true" if timed_out else "false",
        }

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(record, instances))
    else:
        rows = [record(item) for item in instances]

    fields = ["instance", "semantics", "world_views", "avg_seconds", "timed_out"]
    if out_path is None or out_path == "-":
        writer = csv.DictWriter(sys.stdout, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    else:
        with open(out_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
    return rows


# ---------------------------------------------------------------------------
# Entry points


def _solve_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiworld", description="world-view solver for epistemic logic programs")
    parser.add_argument("-n", dest="n_models", type=int, default=0, metavar="N",
                        help="stop after N world views (0 = all)")
    parser.add_argument("--semantics", choices=("g91", "k15"), default="g91")
    parser.add_argument("--no-constraints", action="store_true",
                        help="disable guess consistency constraints")
    parser.add_argument("--no-wfm", action="store_true",
                        help="disable well-founded propagation on the guess program")
    parser.add_argument("--mode", choices=("solve", "oracle"), default="solve",
                        help="oracle checks all valuations by definition (slow)")
    parser.add_argument("files", nargs="+", metavar="FILE")
    return parser


def _bench_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epiworld bench", description="time the solver on generated instances")
    parser.add_argument("--domain", choices=("eligibility", "yale"), required=True)
    parser.add_argument("--max-n", type=int, default=5, metavar="N")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--timeout", type=float, default=120.0, metavar="SECONDS")
    parser.add_argument("--reps", type=int, default=10)
    parser.add_argument("--out", default=None, metavar="CSV")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--semantics", choices=("g91", "k15"), default="g91")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["bench"]:
        args = _bench_parser().parse_args(argv[1:])
        if args.max_n < 1:
            print("error: --max-n must be positive", file=sys.stderr)
            return INPUT_ERROR
        bench(args.domain, args.max_n, args.seed, args.timeout, args.reps,
              args.semantics, args.out, args.jobs)
        return 0
    if argv[:1] == ["solve"]:
        argv = argv[1:]
    args = _solve_parser().parse_args(argv)
    if args.n_models < 0:
        print("error: -n must be non-negative", file=sys.stderr)
        return INPUT_ERROR
    config = RunConfig(files=tuple(args.files), n_models=args.n_models,
                       semantics=args.semantics,
                       constraints=not args.no_constraints,
                       wfm=not args.no_wfm, mode=args.mode)
    return run(config)


def script() -> None:
    sys.exit(main())
