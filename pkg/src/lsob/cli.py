"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 usage or input error, 3 I/O
error. CSV output starts with ``#`` metadata lines (version, replay command,
seed, tolerances) followed by a header row; reals are written with 17
significant digits so they round-trip exactly. JSON output is a flat object
carrying ``schema_version``.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from . import __version__
from .concavity import bound_table, q_grid
from .errors import LsobError
from .logsobolev import alpha1_bruteforce, alpha1_depolarizing
from .matcore import DensityMatrix
from .pinsker import improved_pinsker_constant, tightness_sequence
from .sampler import Stream, draw_state
from .verify import SUITES, run_suite, thread_count

SCHEMA_VERSION = 1
SPECTRUM_SUM_TOL = 1e-8

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt_real(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


def json_real(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def read_spectrum(path: str) -> np.ndarray:
    """One real per line; blank lines and ``#`` comments are skipped. The
    values must sum to 1 within 1e-8 and are then renormalized."""
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read spectrum file {path}: {exc.strerror}") from exc
    vals = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals.append(float(line))
        except ValueError:
            raise UsageError(f"{path}:{n}: not a number: {line!r}") from None
    s = np.array(vals)
    if s.size == 0:
        raise UsageError(f"{path}: empty spectrum")
    if not np.all(np.isfinite(s)) or np.any(s < 0):
        raise UsageError(f"{path}: entries must be finite and nonnegative")
    if abs(s.sum() - 1.0) > SPECTRUM_SUM_TOL:
        raise UsageError(f"{path}: entries sum to {s.sum():.17g}, not 1 within {SPECTRUM_SUM_TOL}")
    return np.sort(s / s.sum())[::-1]


def _replay_command(argv: Sequence[str]) -> str:
    # drop --out so reruns to a different path produce identical files
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a == "--out":
            skip = True
            continue
        if a.startswith("--out="):
            continue
        out.append(a)
    return " ".join(["lsob", *out])


def render_csv(columns: Sequence[str], rows, meta: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# lsob {__version__}\n")
    for k, v in meta.items():
        buf.write(f"# {k}: {v}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        if len(row) != len(columns):
            raise ValueError("row arity does not match the header")
        buf.write(",".join(fmt_real(x) for x in row) + "\n")
    return buf.getvalue()


def render_json(payload: dict, meta: dict) -> str:
    body = {"schema_version": SCHEMA_VERSION, "version": __version__, **meta, **payload}
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def _report(fields: dict, args, meta: dict) -> str:
    if args.format == "csv":
        return render_csv(list(fields), [list(fields.values())], meta)
    return render_json({k: json_real(v) if not isinstance(v, list) else v
                        for k, v in fields.items()}, meta)


def _spectrum_from_args(args, top_name: str) -> np.ndarray:
    # either --spectrum FILE, or one extreme eigenvalue plus --dim with the rest equal
    if args.spectrum is not None:
        return read_spectrum(args.spectrum)
    value = getattr(args, top_name)
    if value is None:
        raise UsageError(f"give --{top_name.replace('_', '-')} or --spectrum")
    d = args.dim
    if d is None or d < 2:
        raise UsageError("--dim >= 2 is required to build a spectrum")
    rest = (1.0 - value) / (d - 1)
    s = np.array([value] + [rest] * (d - 1))
    if np.any(s <= 0):
        raise UsageError("spectrum entries must be positive")
    if top_name == "smin" and rest < value - 1e-15:
        raise UsageError(f"--smin {value} cannot be the smallest eigenvalue in dimension {d}")
    if top_name == "smax" and rest > value + 1e-15:
        raise UsageError(f"--smax {value} cannot be the largest eigenvalue in dimension {d}")
    return np.sort(s)[::-1]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_alpha1(args, meta) -> int:
    if args.spectrum is None and args.smin is None:
        raise UsageError("give --smin or --spectrum")
    if args.spectrum is not None or args.oracle:
        if args.spectrum is None and args.dim is None:
            raise UsageError("--oracle needs --dim or --spectrum")
        spectrum = _spectrum_from_args(args, "smin")
        s_min = float(spectrum[-1])
    else:
        spectrum, s_min = None, args.smin
    if not 0.0 < s_min < 1.0:
        raise UsageError("s_min must lie in (0, 1)")
    res = alpha1_depolarizing(s_min, grid=args.grid)
    fields = {"s_min": s_min, "alpha1": res.alpha1, "argmin_x": res.argmin_x,
              "lower_bound": res.lower_bound}
    code = EXIT_OK
    if args.oracle:
        brute = alpha1_bruteforce(DensityMatrix(np.diag(spectrum)), x_grid=args.grid,
                                  random_samples=args.samples, seed=args.seed)
        agree = abs(brute.alpha1 - res.alpha1) <= args.tol
        fields.update({"oracle_alpha1": brute.alpha1, "oracle_random_min": brute.random_min,
                       "oracle_subset": " ".join(map(str, brute.subset)), "agree": agree})
        meta["tolerance"] = fmt_real(args.tol)
        code = EXIT_OK if agree else EXIT_FAIL
    emit(_report(fields, args, meta), args.out)
    return code


def cmd_sweep_alpha1(args, meta) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    rows = []
    for k in range(1, args.grid + 1):
        s = k / (args.grid + 1)
        res = alpha1_depolarizing(s)
        rows.append((s, res.alpha1, res.argmin_x, res.lower_bound))
    cols = ["s_min", "alpha1", "argmin_x", "lower_bound"]
    if args.format == "json":
        text = render_json({"columns": cols, "rows": [list(map(json_real, r)) for r in rows]}, meta)
    else:
        text = render_csv(cols, rows, meta)
    emit(text, args.out)
    return EXIT_OK


def cmd_concavity_compare(args, meta) -> int:
    if args.dim < 2:
        raise UsageError("--dim must be at least 2")
    if args.samples < 1 or args.grid < 2:
        raise UsageError("--samples must be positive and --grid at least 2")
    qs = q_grid(args.grid)

    def one(i):
        rng = Stream(args.seed, i)
        sigma, rho = draw_state(args.dim, rng), draw_state(args.dim, rng)
        return [(i, r.q, r.gap, r.thm2_sigma_branch, r.thm2_rho_branch, r.thm2_bound,
                 r.kim_trace_bound, r.combined_trace_bound) for r in bound_table(sigma, rho, qs)]

    with ThreadPoolExecutor(max_workers=thread_count(args.samples)) as pool:
        rows = [row for block in pool.map(one, range(args.samples)) for row in block]
    cols = ["sample", "q", "gap", "thm2_sigma", "thm2_rho", "thm2_bound", "kim_trace", "combined_trace"]
    meta["ensemble"] = "hilbert_schmidt; sample i uses stream (seed, i)"
    if args.format == "json":
        text = render_json({"columns": cols, "rows": [list(map(json_real, r)) for r in rows]}, meta)
    else:
        text = render_csv(cols, rows, meta)
    emit(text, args.out)
    return EXIT_OK


def cmd_verify(args, meta) -> int:
    results = run_suite(args.suite, args.seed, args.samples)
    ok = all(r.passed for r in results)
    payload = {"suite": args.suite, "seed": args.seed, "samples": args.samples,
               "passed": ok, "properties": [r.to_json() for r in results]}
    emit(render_json(payload, meta), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_pinsker(args, meta) -> int:
    spectrum = _spectrum_from_args(args, "smax")
    if spectrum[-1] <= 0:
        raise UsageError("the spectrum must be strictly positive")
    rep = improved_pinsker_constant(DensityMatrix(np.diag(spectrum)))
    fields = {"pi": rep.pi_sigma, "phi": rep.phi_value, "constant": rep.constant,
              "witness_subset": " ".join(map(str, rep.witness_subset))}
    if args.tightness:
        pts = tightness_sequence(DensityMatrix(np.diag(spectrum)))
        if args.format == "csv":
            fields.update({f"ratio_{k}": p.ratio for k, p in enumerate(pts, 1)})
        else:
            fields["tightness"] = [{"epsilon": json_real(p.epsilon), "ratio": json_real(p.ratio),
                                    "valid": p.valid} for p in pts]
    emit(_report(fields, args, meta), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lsob",
        description="Log-Sobolev-1 constants of depolarizing channels and related entropy inequalities.",
        epilog="Exit codes: 0 ok, 1 property failure, 2 usage/input error, 3 I/O error. "
               "LSOB_THREADS caps the number of worker threads.",
    )
    p.add_argument("--version", action="version", version=f"lsob {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp, fmt_default):
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default,
                        help=f"output format (default {fmt_default})")

    a = sub.add_parser("alpha1", help="closed-form alpha_1 for one fixed point")
    a.add_argument("--smin", type=float, help="smallest eigenvalue of the fixed point")
    a.add_argument("--spectrum", metavar="FILE", help="spectrum file, one eigenvalue per line")
    a.add_argument("--dim", type=int, help="dimension for --oracle with --smin; the other "
                   "eigenvalues are set equal")
    a.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    a.add_argument("--samples", type=int, default=10_000, help="random states for the oracle")
    a.add_argument("--seed", type=int, default=0, help="seed for the oracle's random states")
    a.add_argument("--grid", type=int, default=4096, help="grid points before golden-section refinement")
    a.add_argument("--tol", type=float, default=1e-3, help="allowed closed form vs oracle difference")
    common(a, "json")

    s = sub.add_parser("sweep-alpha1", help="alpha_1 and its lower bound on a grid of s_min in (0, 1)")
    s.add_argument("--grid", type=int, default=199, help="number of interior grid points k/(grid+1)")
    common(s, "csv")

    c = sub.add_parser("concavity-compare", help="concavity gap against its lower bounds on random pairs")
    c.add_argument("--dim", type=int, default=10)
    c.add_argument("--samples", type=int, default=2, help="number of random (sigma, rho) pairs")
    c.add_argument("--grid", type=int, default=101, help="number of q values on [0, 1]")
    c.add_argument("--seed", type=int, default=0)
    common(c, "csv")

    v = sub.add_parser("verify", help="run property suites, report JSON")
    v.add_argument("--suite", choices=("all", *SUITES), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100, help="base sample count per property")
    v.add_argument("--out", help="write the report to this path instead of stdout")
    v.set_defaults(format="json")

    q = sub.add_parser("pinsker", help="state-dependent Pinsker constant of a spectrum")
    q.add_argument("--spectrum", metavar="FILE", help="spectrum file, one eigenvalue per line")
    q.add_argument("--smax", type=float, help="largest eigenvalue; the rest are equal")
    q.add_argument("--dim", type=int, help="dimension when using --smax")
    q.add_argument("--tightness", action="store_true", help="append the tightness ratio sequence")
    common(q, "json")
    return p


COMMANDS = {
    "alpha1": cmd_alpha1,
    "sweep-alpha1": cmd_sweep_alpha1,
    "concavity-compare": cmd_concavity_compare,
    "verify": cmd_verify,
    "pinsker": cmd_pinsker,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    meta = {"command": _replay_command(argv)}
    if hasattr(args, "seed"):
        meta["seed"] = args.seed
    try:
        return COMMANDS[args.command](args, meta)
    except UsageError as exc:
        print(f"lsob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lsob: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LsobError as exc:
        print(f"lsob: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
