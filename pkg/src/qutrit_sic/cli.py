"""``qutrit-sic`` command-line tool.

Exit status is 0 on success, 1 when a module rejects its input (the
diagnostic names the failed precondition) and 2 on bad flags.
"""

import argparse
import json
import os
import sys
from pathlib import Path

from . import boundary as bd
from . import invariants as iv
from . import io
from . import rotations as rot
from .errors import DomainError, UsageError
from .representation import probs_from_state, state_from_probs
from .sic import build_sic, parse_selector, t_grid

PROG = "qutrit-sic"


def _spec(selector, t=None):
    return parse_selector(selector, t)


def _emit(text, out):
    if out is None:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # Reader closed early (e.g. piped into head); silence the flush at exit.
            sys.stdout = open(os.devnull, "w")
    else:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")


def cmd_gen(args):
    sic = build_sic(_spec(args.sic, args.t))
    if args.format == "json":
        return io.dumps(io.sic_to_dict(sic))
    rows = []
    for i, proj in enumerate(sic.projectors, start=1):
        for a in range(3):
            for b in range(3):
                rows.append((i, a + 1, b + 1, proj[a, b].real, proj[a, b].imag))
    return io.csv_text(["i", "row", "col", "re", "im"], rows)


def cmd_probs(args):
    if args.state is None:
        raise UsageError("probs needs --state FILE")
    target = build_sic(_spec(args.sic, args.t))
    kind, data = io.read_state_file(args.state)
    if kind == "probs":
        # A probability vector is re-expressed in the target representation.
        source = build_sic(_spec(args.from_sic))
        data = state_from_probs(source, data)
    p = probs_from_state(target, data)
    if args.format == "json":
        return io.dumps({"spec": target.spec.to_dict(), "p": p.tolist()})
    return io.probs_csv(p)


def cmd_invariants(args):
    if args.tensors:
        spec = _spec(args.sic, args.t)
        return io.dumps(io.tensors_to_dict(iv.invariant_tensors(build_sic(spec)), spec))
    ts = [args.t] if args.t is not None else list(t_grid(args.samples or 25))
    rows = iv.invariant_table(ts)
    if args.format == "json":
        return io.dumps([dict(zip("txyz", r)) for r in rows])
    return io.csv_text(["t", "x", "y", "z"], rows)


def cmd_rotation(args):
    source = build_sic(_spec(args.from_sic))
    target = build_sic(_spec(args.sic, args.t))
    r = rot.rotation_between(source, target)
    if args.format == "json":
        return io.dumps(io.rotation_to_dict(r))
    return io.rotation_csv(r)


def render_boundary(samples, seed, fmt="csv"):
    """File name to contents for the boundary sweep; a pure function of its arguments."""
    sweep = bd.sweep_boundary(samples, seed)
    headers = {
        "fig2": ["alpha", "F"],
        "fig3": ["F", "r"],
        "samples": [f"n{i}" for i in range(1, 10)] + ["F", "r", "class"],
    }
    tables = {"fig2": sweep.fig2, "fig3": sweep.fig3, "samples": sweep.samples}
    if fmt == "json":
        return {
            f"{name}.json": io.dumps({"columns": headers[name], "rows": [list(map(_plain, r)) for r in rows]})
            for name, rows in tables.items()
        }
    return {f"{name}.csv": io.csv_text(headers[name], rows) for name, rows in tables.items()}


def _plain(v):
    if isinstance(v, (str, bool)):
        return v
    return float(v)


def cmd_boundary(args):
    files = render_boundary(args.samples or 1000, args.seed, args.format)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8", newline="\n")
    return f"wrote {', '.join(str(out / n) for n in files)}\n"


def cmd_faces(args):
    rows = bd.face_report_rows(args.samples or 10, args.seed)
    header = ["state", "s", "s2_minus_1_24", "pure_residual", "on_face_state"]
    if args.format == "json":
        return io.dumps([dict(zip(header, map(_plain, r))) for r in rows])
    return io.csv_text(header, rows)


def cmd_verify(args):
    from .verify import run_suites

    results = run_suites()
    lines = []
    for suite in results:
        lines.append(f"[{'PASS' if suite.passed else 'FAIL'}] {suite.name}")
        for c in suite.checks:
            lines.append(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}: worst {c.worst:.3e} (tol {c.tol:.1e})")
    checks = [c for s in results for c in s.checks]
    failed = sum(not c.passed for c in checks)
    lines.append(
        f"{len(results) - sum(not s.passed for s in results)}/{len(results)} suites passed, "
        f"{len(checks) - failed}/{len(checks)} checks passed"
    )
    args.verify_failed = failed > 0
    return "\n".join(lines) + "\n"


COMMANDS = {
    "gen": (cmd_gen, "build a SIC and print its projectors"),
    "probs": (cmd_probs, "SIC probabilities of a state read from --state"),
    "invariants": (cmd_invariants, "(t, x, y, z) table, or full T/S tensors with --tensors"),
    "rotation": (cmd_rotation, "9x9 rotation between two SIC representations"),
    "boundary": (cmd_boundary, "write fig2/fig3/samples tables into --out"),
    "faces": (cmd_faces, "face analysis of random pure states with p(9) = 0"),
    "verify": (cmd_verify, "run every self-check suite; exit 0 iff all pass"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sic", default="hesse", help="selector: hesse, pi6:K, gen:<eta><sign>@<t> (default hesse)")
    common.add_argument("--t", type=float, default=None, help="family parameter t")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=_positive_int, default=None)
    common.add_argument("--out", default=None, help="output file (directory for boundary)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog=PROG, description="Qutrit SIC toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "probs":
            p.add_argument("--state", default=None, help="JSON file: 3x3 matrix or 9 probabilities")
            p.add_argument("--from-sic", default="hesse", help="representation of a probability-vector input")
        elif name == "invariants":
            p.add_argument("--tensors", action="store_true", help="dump T and S for --sic as JSON")
        elif name == "rotation":
            p.add_argument("--from", dest="from_sic", default="hesse", help="source selector (default hesse)")
    return parser


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        text = func(args)
    except UsageError as exc:
        parser.exit(2, f"{PROG} {args.command}: usage error: {exc}\n")
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"{PROG} {args.command}: error: {exc}\n")
        return 1
    _emit(text, None if args.command == "boundary" else args.out)
    if getattr(args, "verify_failed", False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
