"""Command-line entry point.

Exit codes: 0 on success, 1 on usage, parse or I/O errors, 2 when a
verification or fuzz run records a failing trial.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decompositions import (
    corner_characterize,
    cor23_scaler,
    euw_decompose,
    invariant_splitting,
    quasipolar,
    two_units,
)
from .drazin import drazin_inverse
from .errors import DrazinError
from .harness import THEOREM_IDS, run_fuzz, run_suite
from .matrix import Matrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

FORMS = ("quasipolar", "euw", "two-units", "corner", "splitting", "scaler")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for failed trials here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_matrix(path: str) -> Matrix:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return Matrix.loads(text)


def to_text(obj, indent: int = 0) -> str:
    """Indented JSON with flat lists (matrix rows, size lists) kept on one line."""
    pad = "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {to_text(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        items = [pad + to_text(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def _write_json(path: str | None, obj) -> None:
    text = to_text(obj) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _encode(value):
    """JSON form of certificate fields: matrices, lists of them, dicts, scalars."""
    if isinstance(value, Matrix):
        return value.to_json_obj()
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _record(obj, fields) -> dict:
    return {name: _encode(getattr(obj, name)) for name in fields}


def decompose(form: str, a: Matrix) -> dict:
    """Certificate record for ``form`` as a JSON-ready dict."""
    if form == "quasipolar":
        return _record(quasipolar(a), ("p", "b", "checks"))
    if form == "euw":
        return _record(euw_decompose(a), ("e", "u", "w", "checks"))
    if form == "two-units":
        return _record(two_units(a), ("u1", "u2", "checks"))
    if form == "corner":
        return _record(corner_characterize(a), ("e", "corner_inverse", "a_d", "checks"))
    if form == "splitting":
        return _record(invariant_splitting(a), ("basis_P", "basis_Q", "restriction_P", "restriction_Q", "checks"))
    if form == "scaler":
        return _record(cor23_scaler(a), ("u", "checks"))
    raise UsageError(f"unknown form {form!r}; expected one of {', '.join(FORMS)}")


def cmd_compute(args) -> int:
    a = _read_matrix(args.input)
    res = drazin_inverse(a)
    _write_json(args.output, {"a_d": res.a_d.to_json_obj(), "index": res.index, "a_pi": res.a_pi.to_json_obj()})
    return EXIT_OK


def cmd_decompose(args) -> int:
    a = _read_matrix(args.input)
    _write_json(args.output, {"form": args.form, **decompose(args.form, a)})
    return EXIT_OK


def _check_run_flags(trials: int, sizes, seed: int):
    if trials < 1:
        raise UsageError(f"--trials must be at least 1, got {trials}")
    if not sizes or any(s < 1 for s in sizes):
        raise UsageError(f"sizes must be positive, got {sizes}")
    if not 0 <= seed < 2 ** 64:
        raise UsageError(f"--seed must fit in 64 unsigned bits, got {seed}")


def cmd_verify(args) -> int:
    if args.theorem not in THEOREM_IDS:
        raise UsageError(f"unknown theorem {args.theorem!r}; valid identifiers: {', '.join(THEOREM_IDS)}")
    _check_run_flags(args.trials, [args.size], args.seed)
    if args.entry_bound < 1:
        raise UsageError(f"--entry-bound must be positive, got {args.entry_bound}")
    report = run_suite(args.theorem, args.trials, args.seed, [args.size], args.entry_bound)
    _write_json(args.report, report.to_json_obj())
    return EXIT_OK if report.ok else EXIT_FAILURE


def _parse_sizes(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_fuzz(args) -> int:
    _check_run_flags(args.trials, args.sizes, args.seed)
    if args.entry_bound < 1:
        raise UsageError(f"--entry-bound must be positive, got {args.entry_bound}")
    if args.report not in (None, "-"):
        # fail on an unwritable path before spending time on the suites
        open(args.report, "a", encoding="utf-8").close()
    reports = run_fuzz(args.trials, args.seed, args.sizes, args.entry_bound)
    _write_json(args.report, {
        "seed": args.seed,
        "trials": args.trials,
        "sizes": args.sizes,
        "entry_bound": args.entry_bound,
        "reports": [r.to_json_obj() for r in reports],
    })
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gdrazin", description="Exact Drazin inverses and certified decompositions over Q(i).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="Drazin inverse, index and spectral idempotent of a matrix file")
    c.add_argument("--input", required=True, help="matrix JSON file, or - for stdin")
    c.add_argument("--output", help="output file (default stdout)")
    c.set_defaults(func=cmd_compute)

    d = sub.add_parser("decompose", help="certified decomposition of a matrix file")
    d.add_argument("--form", required=True, choices=FORMS)
    d.add_argument("--input", required=True, help="matrix JSON file, or - for stdin")
    d.add_argument("--output", help="output file (default stdout)")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="run one theorem suite on generated instances")
    v.add_argument("--theorem", required=True, help="one of: " + ", ".join(THEOREM_IDS))
    v.add_argument("--size", type=int, default=3)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--entry-bound", type=int, default=3)
    v.add_argument("--report", help="report file (default stdout)")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fuzz", help="run every theorem suite")
    f.add_argument("--trials", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--sizes", type=_parse_sizes, default=[2, 4, 6])
    f.add_argument("--entry-bound", type=int, default=3)
    f.add_argument("--report", help="report file (default stdout)")
    f.set_defaults(func=cmd_fuzz)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DrazinError, OSError) as exc:
        print(f"gdrazin {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
