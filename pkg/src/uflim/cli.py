"""``uflim`` command-line interface.

Exit codes: 0 success, 1 law/axiom violation, 2 malformed input, 3 size guard.
"""

from __future__ import annotations

import argparse
import sys

from . import dot, jsonio
from .config import FORMATS, RunConfig
from .dynamics import corollary_limit, report as dynamics_report
from .errors import DiagramError, InputError, ResourceError, UflimError
from .limits import enumerate_threads, full_diagram, is_thread, validate_diagram
from .partitions import GroundSet, check_guard, enumerate_partitions, format_block, format_partition
from .ultrafilters import (
    AXIOM_NAMES,
    check_axioms,
    enumerate_ultrafilters_bruteforce,
    phi,
    phi_inverse,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

DEFAULT_FORMAT = {"dynamics": "json", "export-dot": "dot"}


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _config(args) -> RunConfig:
    fmt = args.format or DEFAULT_FORMAT.get(args.command, "text")
    return RunConfig(size_guard=args.guard, force=args.force, seed=args.seed, output_format=fmt)


def cmd_partitions(args, cfg: RunConfig) -> int:
    ground = jsonio.parse_ground(jsonio.load(args.input))
    check_guard(len(ground), cfg.size_guard, cfg.force)
    parts = list(enumerate_partitions(ground, guard=cfg.size_guard, force=cfg.force))
    if args.count:
        _emit(str(len(parts)))
    elif cfg.output_format == "json":
        _emit(jsonio.dumps({"ground": list(ground.elements), "count": len(parts),
                            "partitions": [jsonio.partition_to_json(p)["blocks"] for p in parts]}))
    elif cfg.output_format == "dot":
        _emit(dot.poset_dot({format_partition(p): p for p in parts}))
    else:
        _emit("\n".join(format_partition(p) for p in parts) if parts else "")
    return EXIT_OK


def cmd_limit(args, cfg: RunConfig) -> int:
    d, named = jsonio.parse_diagram(jsonio.load(args.input), guard=cfg.size_guard, force=cfg.force)
    issues = validate_diagram(d)
    if issues:
        raise DiagramError(issues)
    threads = enumerate_threads(d, validate=False)
    ground = next(iter(named.values())).ground
    if cfg.output_format == "json":
        _emit(jsonio.dumps({"count": len(threads),
                            "threads": [jsonio.thread_to_json(t, ground) for t in threads]}))
    elif cfg.output_format == "dot":
        _emit(dot.diagram_dot(d, named))
    else:
        for i, t in enumerate(threads, 1):
            _emit(f"thread {i}: " + "  ".join(f"{n}={format_block(ground, b)}" for n, b in t.items()))
        _emit(f"{len(threads)} thread{'s' if len(threads) != 1 else ''}")
    return EXIT_OK


def _fmt_witness(w, ground: GroundSet) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(format_block(ground, x) for x in w) + ")"
    return format_block(ground, w)


def cmd_check_ultrafilter(args, cfg: RunConfig) -> int:
    u = jsonio.parse_family(jsonio.load(args.input))
    rep = check_axioms(u, guard=5, force=cfg.force)
    if cfg.output_format == "json":
        axioms = {str(k): {"name": AXIOM_NAMES[k], "pass": rep.passed(k),
                           "witnesses": [_witness_json(w, u.ground) for w in rep.failures[k]]}
                  for k in AXIOM_NAMES}
        _emit(jsonio.dumps({"ok": rep.ok, "axioms": axioms}))
    else:
        for k, name in AXIOM_NAMES.items():
            if rep.passed(k):
                _emit(f"axiom {k} ({name}): pass")
            else:
                ws = rep.failures[k]
                _emit(f"axiom {k} ({name}): FAIL, {len(ws)} witness{'es' if len(ws) != 1 else ''}, "
                      f"first {_fmt_witness(ws[0], u.ground)}")
        _emit("ULTRAFILTER" if rep.ok else "NOT AN ULTRAFILTER")
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def _witness_json(w, ground):
    if isinstance(w, tuple):
        return [jsonio.block_to_json(x, ground) for x in w]
    return jsonio.block_to_json(w, ground)


def cmd_dynamics(args, cfg: RunConfig) -> int:
    sys_ = jsonio.parse_system(jsonio.load(args.input))
    check_guard(len(sys_.states), cfg.size_guard, cfg.force)
    try:
        rep = dynamics_report(sys_, guard=cfg.size_guard, force=cfg.force)
    except AssertionError as e:
        print(f"uflim: internal error: nonempty-limit check failed: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    if rep["thread_count"] == 0:
        print("uflim: internal error: empty limit for a finite orbit", file=sys.stderr)
        return EXIT_VIOLATION
    if cfg.output_format == "json":
        _emit(jsonio.dumps(rep))
    else:
        _emit(f"tail: {rep['tail']}")
        _emit(f"cycle: {rep['cycle']}")
        _emit(f"threads: {rep['thread_count']}")
        _emit("witness:")
        ground = sys_.states
        for name, block in rep["witness"].items():
            _emit(f"  {name} -> {format_block(ground, block)}")
    return EXIT_OK


def _plural(n, word):
    return f"{n} {word}" + ("" if n == 1 else "s")


def cmd_bijection(args, cfg: RunConfig) -> int:
    if args.size < 0:
        raise InputError("size must be >= 0")
    check_guard(args.size, 4, cfg.force, what="bijection check")
    ground = GroundSet(tuple(str(i) for i in range(args.size)))
    ufs = enumerate_ultrafilters_bruteforce(ground, guard=4, force=cfg.force)
    guard = max(cfg.size_guard, args.size)
    d = full_diagram(ground, guard=guard, force=cfg.force)
    threads = enumerate_threads(d)
    problems = []
    images = []
    for u in ufs:
        t = phi(u, guard=guard, force=cfg.force)
        images.append(t)
        if not is_thread(t, d):
            problems.append(f"phi of {sorted(map(sorted, u.members))} is not a thread")
        elif phi_inverse(t, ground, guard=guard, force=cfg.force) != u:
            problems.append(f"phi_inverse(phi(u)) != u for u = {sorted(map(sorted, u.members))}")
    if len(set(images)) != len(images):
        problems.append("phi is not injective")
    if set(images) != set(threads):
        problems.append("phi is not onto the thread set")
    for t in threads:
        if phi(phi_inverse(t, ground, guard=guard, force=cfg.force), guard=guard, force=cfg.force) != t:
            problems.append("phi(phi_inverse(t)) != t")
    verdict = "BIJECTION OK" if not problems and len(ufs) == len(threads) else "BIJECTION FAILED"
    summary = f"{_plural(len(ufs), 'ultrafilter')}, {_plural(len(threads), 'thread')}, {verdict}"
    if cfg.output_format == "json":
        _emit(jsonio.dumps({"size": args.size, "ultrafilters": len(ufs), "threads": len(threads),
                            "ok": verdict == "BIJECTION OK", "problems": problems}))
    else:
        _emit(summary)
        for p in problems:
            _emit(f"counterexample: {p}")
    return EXIT_OK if verdict == "BIJECTION OK" else EXIT_VIOLATION


def cmd_export_dot(args, cfg: RunConfig) -> int:
    obj = jsonio.load(args.input)
    if isinstance(obj, dict) and ("objects" in obj or "generate" in obj):
        d, named = jsonio.parse_diagram(obj, guard=cfg.size_guard, force=cfg.force)
        issues = validate_diagram(d)
        if issues:
            raise DiagramError(issues)
        _emit(dot.diagram_dot(d, named))
    elif isinstance(obj, dict) and "blocks" in obj:
        p = jsonio.parse_partition(obj)
        _emit(dot.poset_dot({format_partition(p): p}))
    else:
        ground = jsonio.parse_ground(obj)
        check_guard(len(ground), cfg.size_guard, cfg.force)
        parts = enumerate_partitions(ground, guard=cfg.size_guard, force=cfg.force)
        _emit(dot.poset_dot({format_partition(p): p for p in parts}))
    return EXIT_OK


COMMANDS = {
    "partitions": (cmd_partitions, "enumerate the full partitions of a ground set"),
    "limit": (cmd_limit, "enumerate the threads (inverse limit) of a partition diagram"),
    "check-ultrafilter": (cmd_check_ultrafilter, "check a family of subsets against the ultrafilter axioms"),
    "dynamics": (cmd_dynamics, "tail/cycle and infinitely-visited blocks of a finite self-map"),
    "bijection": (cmd_bijection, "verify ultrafilters <-> threads of FP(S) for |S| = size"),
    "export-dot": (cmd_export_dot, "DOT graph of a refinement poset, partition or diagram"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--force", action="store_true", help="ignore the size guard")
    common.add_argument("--guard", type=int, default=RunConfig.size_guard, metavar="N",
                        help="max ground-set size (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, metavar="N", help="seed for randomized sweeps")
    common.add_argument("--format", choices=FORMATS, default=None)

    parser = argparse.ArgumentParser(prog="uflim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "bijection":
            p.add_argument("size", type=int, help="ground-set size (<= 4)")
        else:
            p.add_argument("input", nargs="?", default="-", help="JSON file, or - for standard input")
        if name == "partitions":
            p.add_argument("--count", action="store_true", help="print only the number of partitions")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        cfg = _config(args)
        return COMMANDS[args.command][0](args, cfg)
    except DiagramError as e:
        print(f"uflim: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except ResourceError as e:
        print(f"uflim: {e}", file=sys.stderr)
        return EXIT_GUARD
    except InputError as e:
        print(f"uflim: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except UflimError as e:
        print(f"uflim: error: {e}", file=sys.stderr)
        return EXIT_VIOLATION


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
