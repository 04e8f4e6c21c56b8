"""Command-line surface.

Every subcommand takes the instance literal "T<n><s1,..;t1,..>" (for
example "T8<1,4;2,5>") and exposes one operation for scripting.  Exit
codes: 0 ok, 1 computation failed (e.g. impossible walk, golden
mismatch), 2 usage error, 3 malformed instance literal, 4 format not
applicable to the subcommand, 5 verification violations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd

from . import goldens
from .compgraph import digraph_dot, graph_dot, m_step_graph
from .spectra import (
    competition_tail,
    power_tail,
    residue_block_matrix,
    residue_classes,
)
from .toeplitz import (
    ToeplitzSpec,
    bezout_certificate,
    build_matrix,
    pair_sum_gcd,
    parse_literal,
    predicted_period,
)
from .verify import sweep
from .walks import (
    EndpointOutOfRange,
    InsufficientArcCount,
    SchedulingFailure,
    WalkConstructionError,
    bound_hypothesis_holds,
    build_walk_with_counts,
    competition_index_bound,
    extend_walk_exact,
    step_set_stabilization,
    step_sets,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BAD_SPEC = 3
EXIT_BAD_FORMAT = 4
EXIT_VIOLATIONS = 5


_ALL_FORMATS = ("text", "json", "dot", "jsonl")


def _spec_arg(parser):
    parser.add_argument("spec", help='instance literal, e.g. "T8<1,4;2,5>"')


def _format_arg(parser, allowed):
    # Parse any known format; applicability is the command's concern so an
    # inapplicable choice gets its own exit code instead of a usage error.
    parser.add_argument("--format", choices=_ALL_FORMATS, default="text", help="output format")
    parser.set_defaults(allowed_formats=allowed)


def _parse_spec(text: str) -> ToeplitzSpec:
    try:
        return parse_literal(text)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_SPEC)


def _emit(payload: dict, fmt: str, text_lines):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_build(args) -> int:
    spec = _parse_spec(args.spec)
    mat = build_matrix(spec)
    if args.format == "dot":
        print(digraph_dot(spec))
    elif args.format == "json":
        print(json.dumps({"spec": spec.to_json_dict(), "matrix": mat.to_json_dict()}))
    else:
        print(mat.to_text())
    return EXIT_OK


def _cmd_power(args) -> int:
    spec = _parse_spec(args.spec)
    if args.m < 0:
        print("error: --m must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    mat = build_matrix(spec).power(args.m)
    _emit(
        {"spec": spec.literal, "m": args.m, "matrix": mat.to_json_dict()},
        args.format,
        [mat.to_text()],
    )
    return EXIT_OK


def _cmd_period(args) -> int:
    spec = _parse_spec(args.spec)
    tail = power_tail(build_matrix(spec))
    d = pair_sum_gcd(spec)
    d_prime = gcd(d, spec.min_forward)
    predicted = predicted_period(spec)
    _emit(
        {
            "spec": spec.literal,
            "period": tail.period,
            "index": tail.index,
            "predicted": predicted,
            "d": d,
            "d_prime": d_prime,
            "conditions_hold": spec.conditions_hold,
        },
        args.format,
        [f"period={tail.period} predicted={predicted} (d={d}, d'={d_prime})"],
    )
    return EXIT_OK


def _cmd_competition(args) -> int:
    spec = _parse_spec(args.spec)
    A = build_matrix(spec)
    tail = competition_tail(A)
    d = pair_sum_gcd(spec)
    payload = {
        "spec": spec.literal,
        "index": tail.index,
        "period": tail.period,
        "d": d,
    }
    lines = [f"competition index={tail.index} period={tail.period} (d={d})"]
    if tail.period == 1:
        limit = tail.cycle[0]
        _, expected = residue_block_matrix(spec.n, d)
        classes = residue_classes(spec.n, d)
        block_match = limit == expected
        payload.update(
            {
                "limit": limit.to_json_dict(),
                "block_match": block_match,
                "classes": [list(c) for c in classes],
            }
        )
        lines.append(f"block structure by residue mod {d}: {'match' if block_match else 'MISMATCH'}")
        lines.append("classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in classes))
        lines.append("limit matrix (all-ones blocks after sorting by class; off-diagonal")
        lines.append("part is the eventual competition graph, a union of cliques):")
        lines.append(limit.to_text())
    else:
        payload["limit"] = None
        lines.append("no limit: the competition sequence cycles")
    _emit(payload, args.format, lines)
    return EXIT_OK


def _cmd_graph(args) -> int:
    spec = _parse_spec(args.spec)
    if args.m < 1:
        print("error: --m must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    g = m_step_graph(build_matrix(spec), args.m)
    if args.format == "dot":
        print(graph_dot(g, name=f"{spec.literal} m={args.m}"))
    elif args.format == "json":
        print(json.dumps({"spec": spec.literal, "m": args.m, "graph": g.to_json_dict()}))
    else:
        print(f"vertices={g.n} edges={len(g.edges)}")
        for u, v in g.sorted_edges():
            print(f"{u} -- {v}")
    return EXIT_OK


def _fmt_offsets(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _cmd_psets(args) -> int:
    spec = _parse_spec(args.spec)
    if args.stabilize:
        result = step_set_stabilization(spec, horizon=args.horizon)
        payload = {
            "spec": spec.literal,
            "m_emp": result.m_emp,
            "certified": result.certified,
            "horizon": result.horizon,
        }
        if result.m_emp is not None:
            verdict = "certified" if result.certified else "uncertified beyond the horizon"
            line = f"stabilization m_emp={result.m_emp} ({verdict}, horizon={result.horizon})"
        elif result.certified:
            line = f"never stabilizes (certified by periodicity, horizon={result.horizon})"
        else:
            line = f"no agreement point up to horizon={result.horizon} (uncertified)"
        _emit(payload, args.format, [line])
        return EXIT_OK
    if args.i is None:
        print("error: provide --i or --stabilize", file=sys.stderr)
        return EXIT_USAGE
    if args.i < 1:
        print("error: --i must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    ss = step_sets(spec, args.i)
    payload = {"spec": spec.literal, **ss.to_json_dict()}
    _emit(
        payload,
        args.format,
        [
            f"P={_fmt_offsets(ss.congruent)}",
            f"Q={_fmt_offsets(ss.combination)}",
            f"R={_fmt_offsets(ss.realized)}",
        ],
    )
    return EXIT_OK


def _parse_counts(text: str, spec: ToeplitzSpec):
    """Parse "s2=5,t2=6" into per-index count vectors for steps 2 and up."""
    s_counts = [0] * max(0, len(spec.forward_steps) - 1)
    t_counts = [0] * max(0, len(spec.backward_steps) - 1)
    if not text:
        return tuple(s_counts), tuple(t_counts)
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            key, value = part.split("=")
            kind, index, count = key[0], int(key[1:]), int(value)
        except (ValueError, IndexError):
            raise ValueError(f"malformed count {part!r}; expected e.g. s2=5")
        if kind == "s":
            if not 2 <= index <= len(spec.forward_steps):
                raise ValueError(f"no forward step with index {index}")
            s_counts[index - 2] = count
        elif kind == "t":
            if not 2 <= index <= len(spec.backward_steps):
                raise ValueError(f"no backward step with index {index}")
            t_counts[index - 2] = count
        else:
            raise ValueError(f"count kind must be s or t, got {kind!r}")
    return tuple(s_counts), tuple(t_counts)


def _cmd_walk(args) -> int:
    spec = _parse_spec(args.spec)
    try:
        s_counts, t_counts = _parse_counts(args.counts, spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.exact:
            walk = extend_walk_exact(spec, args.start, args.s1, args.t1, s_counts, t_counts)
        else:
            walk = build_walk_with_counts(spec, args.start, s_counts, t_counts)
    except (
        WalkConstructionError,
        SchedulingFailure,
        InsufficientArcCount,
        EndpointOutOfRange,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    a, b = walk.arc_counts()
    payload = {"spec": spec.literal, "walk": walk.to_json_dict()}
    _emit(
        payload,
        args.format,
        [
            str(walk),
            f"length={walk.length} offset={walk.end - walk.start:+d}",
            "forward arc counts: "
            + " ".join(f"s{i + 1}({s})={c}" for i, (s, c) in enumerate(zip(spec.forward_steps, a))),
            "backward arc counts: "
            + " ".join(f"t{i + 1}({t})={c}" for i, (t, c) in enumerate(zip(spec.backward_steps, b))),
        ],
    )
    return EXIT_OK


def _cmd_bound(args) -> int:
    spec = _parse_spec(args.spec)
    value = competition_index_bound(spec)
    hypothesis = bound_hypothesis_holds(spec)
    _emit(
        {
            "spec": spec.literal,
            "bound": value,
            "irreducibility_hypothesis": hypothesis,
            "conditions_hold": spec.conditions_hold,
        },
        args.format,
        [
            f"bound={value} irreducibility_hypothesis={hypothesis} "
            f"conditions_hold={spec.conditions_hold}"
        ],
    )
    return EXIT_OK


def _cmd_certificate(args) -> int:
    spec = _parse_spec(args.spec)
    cert = bezout_certificate(spec)
    _emit(
        {
            "spec": spec.literal,
            "forward_coeffs": list(cert.forward_coeffs),
            "backward_coeffs": list(cert.backward_coeffs),
            "gcd": pair_sum_gcd(spec),
        },
        args.format,
        [
            f"gcd={pair_sum_gcd(spec)} a={list(cert.forward_coeffs)} "
            f"b={list(cert.backward_coeffs)}"
        ],
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("TOEPLAB_JOBS", "1"))
    stream = sys.stdout if args.format == "jsonl" else None
    agg = sweep(
        args.nmax,
        require_conditions=not args.all,
        jobs=jobs,
        report_stream=stream,
        progress=args.progress,
    )
    if args.format == "json":
        print(json.dumps(agg.to_json_dict()))
    elif args.format == "text":
        print(agg.summary_table())
    return EXIT_VIOLATIONS if agg.violation_count else EXIT_OK


def _cmd_examples(args) -> int:
    failures = 0
    for name, ok, detail in goldens.run_all():
        if ok:
            print(f"ok       {name}")
        else:
            failures += 1
            print(f"MISMATCH {name}: {detail}")
    print(f"{len(goldens.GOLDENS) - failures}/{len(goldens.GOLDENS)} goldens match")
    return EXIT_OK if failures == 0 else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeplab",
        description="Boolean Toeplitz matrices: periods, competition graphs, walks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="matrix of an instance (text/json/dot)")
    _spec_arg(p)
    _format_arg(p, ("text", "json", "dot"))
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("power", help="m-th Boolean power of the matrix")
    _spec_arg(p)
    p.add_argument("--m", type=int, required=True)
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_power)

    p = sub.add_parser("period", help="exact matrix period vs predicted value")
    _spec_arg(p)
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_period)

    p = sub.add_parser("competition", help="competition index, period, and limit")
    _spec_arg(p)
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_competition)

    p = sub.add_parser("graph", help="m-step competition graph")
    _spec_arg(p)
    p.add_argument("--m", type=int, required=True)
    _format_arg(p, ("text", "json", "dot"))
    p.set_defaults(fn=_cmd_graph)

    p = sub.add_parser("psets", help="offset step sets at one step count")
    _spec_arg(p)
    p.add_argument("--i", type=int, default=None, help="step count")
    p.add_argument("--stabilize", action="store_true", help="scan for the agreement point")
    p.add_argument("--horizon", type=int, default=None, help="scan horizon for --stabilize")
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_psets)

    p = sub.add_parser("walk", help="build a walk with prescribed arc counts")
    _spec_arg(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--counts", default="", help='higher-index arc counts, e.g. "s2=5,t2=6"')
    p.add_argument("--exact", action="store_true", help="prescribe the shortest-step counts too")
    p.add_argument("--s1", type=int, default=0, help="total shortest forward arcs (with --exact)")
    p.add_argument("--t1", type=int, default=0, help="total shortest backward arcs (with --exact)")
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_walk)

    p = sub.add_parser("bound", help="competition-index bound and its hypothesis")
    _spec_arg(p)
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_bound)

    p = sub.add_parser("certificate", help="zero-sum gcd certificate")
    _spec_arg(p)
    _format_arg(p, ("text", "json"))
    p.set_defaults(fn=_cmd_certificate)

    p = sub.add_parser("verify", help="exhaustive sweep up to --nmax")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--all", action="store_true", help="include condition-violating instances")
    p.add_argument(
        "--jobs", type=int, default=None, help="worker processes (default $TOEPLAB_JOBS or 1)"
    )
    p.add_argument("--progress", type=int, default=None, help="print a line every N instances")
    _format_arg(p, ("text", "json", "jsonl"))
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("examples", help="re-run the embedded worked-example goldens")
    p.set_defaults(fn=_cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    allowed = getattr(args, "allowed_formats", None)
    if allowed is not None and args.format not in allowed:
        print(
            f"error: format {args.format!r} does not apply to {args.command!r}",
            file=sys.stderr,
        )
        return EXIT_BAD_FORMAT
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
