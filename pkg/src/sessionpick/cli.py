"""Command-line interface.

JSON on stdout is the machine contract; anything meant for humans (tables,
warnings, errors) goes to stderr. Exit codes: 0 success, 1 data problems
(validation errors, unparseable input), 2 usage problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .intervals import compute_stats, enumerate_maximal_cliques
from .oracle import InstanceTooLarge, brute_force_mwkc, verify_solution
from .schedule import (IntervalInstance, ScheduleError, ScheduleSet, TimePoint,
                       parse_schedule, to_intervals, validate_schedule)
from .solver import (EmptyInstance, KcolourSolution, build_network, compute_pi,
                     solve_mwkc, transform_weights)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fail(message: str, code: int) -> _CliError:
    return _CliError(message, code)


def _read_input(args: argparse.Namespace) -> tuple[ScheduleSet, str]:
    path = Path(args.input)
    fmt = args.format or ("json" if path.suffix.lower() == ".json" else "csv")
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc}", EXIT_USAGE) from None
    try:
        return parse_schedule(data, fmt), fmt
    except ScheduleError as exc:
        raise _fail(f"{path}: {exc}", EXIT_DATA) from None


def _excluded(args: argparse.Namespace) -> frozenset[str]:
    if not getattr(args, "exclude", None):
        return frozenset()
    return frozenset(part.strip() for part in args.exclude.split(",") if part.strip())


def _checked_instance(args: argparse.Namespace) -> tuple[ScheduleSet, IntervalInstance]:
    schedule, _ = _read_input(args)
    report = validate_schedule(schedule)
    for issue in report:
        print(f"{issue.severity}: {issue.message}", file=sys.stderr)
    if any(issue.severity == "ERROR" for issue in report):
        raise _fail("schedule has validation errors", EXIT_DATA)
    try:
        inst = to_intervals(schedule, _excluded(args))
    except ValueError as exc:
        raise _fail(str(exc), EXIT_USAGE) from None
    return schedule, inst


def _emit(payload: dict, args: argparse.Namespace) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args: argparse.Namespace) -> int:
    schedule, _ = _read_input(args)
    report = validate_schedule(schedule)
    payload = {"issues": [
        {"severity": i.severity, "slot_ids": list(i.slot_ids), "message": i.message}
        for i in report
    ]}
    _emit(payload, args)
    for issue in report:
        print(f"{issue.severity}: {issue.message}", file=sys.stderr)
    if any(i.severity == "ERROR" for i in report):
        return EXIT_DATA
    print(f"{len(schedule)} slots, {len(report)} issue(s)", file=sys.stderr)
    return EXIT_OK


def _cmd_cliques(args: argparse.Namespace) -> int:
    _, inst = _checked_instance(args)
    cs = enumerate_maximal_cliques(inst)
    payload = {
        "cliques": [
            {"index": i, "members": list(members), "leading_point": lp}
            for i, (members, lp) in enumerate(zip(cs.cliques, cs.leading_points), start=1)
        ],
        "spans": {str(vid): list(span) for vid, span in sorted(cs.spans.items())},
    }
    _emit(payload, args)
    return EXIT_OK


def _cmd_network(args: argparse.Namespace) -> int:
    _, inst = _checked_instance(args)
    if inst.n == 0:
        raise _fail("empty instance, no network to dump", EXIT_DATA)
    cs = enumerate_maximal_cliques(inst)
    net = build_network(cs, inst, args.k)
    pi = compute_pi(net)
    tn = transform_weights(net, pi)
    if args.dump == "dot":
        lines = ["digraph network {", "  rankdir=LR;"]
        for node in range(net.node_count):
            lines.append(f"  C{node};")
        for arc, wu in zip(net.arcs, tn.weight_U):
            style = ", style=dashed" if arc.kind == "c_arc" else ""
            lines.append(
                f'  C{arc.tail} -> C{arc.head} '
                f'[label="w={arc.weight_N}/wU={wu}/cap={arc.capacity}"{style}];')
        lines.append("}")
        text = "\n".join(lines) + "\n"
        if getattr(args, "output", None):
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        payload = {
            "node_count": net.node_count,
            "k": args.k,
            "pi": list(pi),
            "arcs": [
                {"arc_id": a.arc_id, "tail": a.tail, "head": a.head, "kind": a.kind,
                 "vertex": a.vertex, "weight_N": a.weight_N, "weight_U": wu,
                 "capacity": a.capacity}
                for a, wu in zip(net.arcs, tn.weight_U)
            ],
        }
        _emit(payload, args)
    return EXIT_OK


def _solution_payload(sol: KcolourSolution, schedule: ScheduleSet,
                      inst: IntervalInstance) -> dict:
    slot_by_id = {slot.slot_id: slot for slot in schedule.slots}
    assert inst.provenance is not None
    sessions = []
    for members in sol.classes:
        slots = []
        weight = 0
        for vid in members:
            slot = slot_by_id[inst.provenance[vid]]
            weight += slot.viewers
            slots.append({
                "slot_id": slot.slot_id, "channel": slot.channel, "title": slot.title,
                "start": str(slot.start), "end": str(slot.end), "viewers": slot.viewers,
            })
        sessions.append({"weight": weight, "slots": slots})
    return {"k": sol.k, "total_weight": sol.total_weight, "sessions": sessions}


def _print_session_table(payload: dict) -> None:
    print(f"k={payload['k']} total_weight={payload['total_weight']}", file=sys.stderr)
    for i, session in enumerate(payload["sessions"], start=1):
        print(f"session {i} (weight {session['weight']}):", file=sys.stderr)
        for slot in session["slots"]:
            print(f"  {slot['start']}-{slot['end']}  {slot['channel']:<12} "
                  f"{slot['title']}  ({slot['viewers']})", file=sys.stderr)


def _cmd_solve(args: argparse.Namespace) -> int:
    schedule, inst = _checked_instance(args)
    try:
        sol = solve_mwkc(inst, args.k)
    except EmptyInstance as exc:
        raise _fail(str(exc), EXIT_DATA) from None
    payload = _solution_payload(sol, schedule, inst)
    _emit(payload, args)
    _print_session_table(payload)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    schedule, inst = _checked_instance(args)
    try:
        result = brute_force_mwkc(inst, args.k)
    except InstanceTooLarge as exc:
        raise _fail(str(exc), EXIT_DATA) from None
    assert inst.provenance is not None
    payload = {
        "k": args.k,
        "best_weight": result.best_weight,
        "best_subset": sorted(inst.provenance[vid] for vid in result.best_subset),
        "nodes_explored": result.nodes_explored,
    }
    _emit(payload, args)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    schedule, inst = _checked_instance(args)
    try:
        data = json.loads(Path(args.solution).read_text())
    except OSError as exc:
        raise _fail(f"cannot read {args.solution}: {exc}", EXIT_USAGE) from None
    except json.JSONDecodeError as exc:
        raise _fail(f"{args.solution}: invalid JSON: {exc}", EXIT_DATA) from None
    if not isinstance(data, dict) or "sessions" not in data:
        raise _fail(f"{args.solution}: not a solution file", EXIT_DATA)
    k = args.k if args.k is not None else int(data.get("k", len(data["sessions"])))

    assert inst.provenance is not None
    vid_by_slot = {slot_id: vid for vid, slot_id in inst.provenance.items()}
    extra: list[str] = []
    classes: list[tuple[int, ...]] = []
    for si, session in enumerate(data["sessions"], start=1):
        members = []
        claimed = session.get("weight")
        actual = 0
        for slot in session.get("slots", []):
            slot_id = slot.get("slot_id")
            if slot_id not in vid_by_slot:
                extra.append(f"session {si}: unknown slot id {slot_id!r}")
                continue
            members.append(vid_by_slot[slot_id])
            actual += inst.vertices[vid_by_slot[slot_id]].w
        if claimed is not None and claimed != actual:
            extra.append(f"session {si}: claimed weight {claimed}, slots sum to {actual}")
        classes.append(tuple(members))
    sol = KcolourSolution(
        k=k,
        Q=frozenset(v for members in classes for v in members),
        classes=tuple(classes),
        total_weight=int(data.get("total_weight", 0)),
    )
    report = verify_solution(sol, inst, k)
    violations = extra + list(report.violations)
    payload = {
        "ok": not violations,
        "violations": violations,
        "class_weights": list(report.class_weights),
        "total_weight": report.total_weight,
    }
    _emit(payload, args)
    for v in violations:
        print(f"FAIL: {v}", file=sys.stderr)
    if violations:
        return EXIT_DATA
    print(f"PASS: {len(classes)} sessions, total weight {report.total_weight}",
          file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sessionpick",
        description="Select k parallel, non-overlapping sessions of programme "
                    "slots with maximum total viewers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, exclude: bool = True) -> None:
        p.add_argument("--input", required=True, help="schedule file (CSV or JSON)")
        p.add_argument("--format", choices=["csv", "json"],
                       help="input format; default inferred from the file suffix")
        p.add_argument("--output", help="write the JSON result here instead of stdout")
        if exclude:
            p.add_argument("--exclude", metavar="SLOT_ID,...",
                           help="drop these slots before solving")

    p = sub.add_parser("validate", help="report schedule problems")
    add_common(p, exclude=False)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cliques", help="dump the ordered maximal cliques")
    add_common(p)
    p.set_defaults(func=_cmd_cliques)

    p = sub.add_parser("network", help="dump the flow network")
    add_common(p)
    p.add_argument("--k", type=int, default=1, help="session count (sets arc capacities)")
    p.add_argument("--dump", choices=["dot", "json"], default="json")
    p.set_defaults(func=_cmd_network)

    p = sub.add_parser("solve", help="compute the optimal k sessions")
    add_common(p)
    p.add_argument("--k", type=int, required=True, help="number of parallel sessions")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive-search optimum (small instances)")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("check", help="verify a solution file against a schedule")
    add_common(p)
    p.add_argument("--k", type=int, help="session budget; default taken from the file")
    p.add_argument("solution", help="solution JSON produced by solve")
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    for name in ("k",):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name} must be >= 1")
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
