"""Command line surface: prox, verify, bench, and gen subcommands.

Matrices travel as headerless CSV (see the io module). Exit codes are a
stable contract: 0 success, 1 verification failure, 2 usage or input
error. Random instances come from numpy's default_rng (PCG64), so a given
--seed reproduces bit-identical instances on any platform running this
package; other implementations should exchange CSV files instead.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

import numpy as np

from .core import ProxConfig, lambda_max
from .io import format_float, read_matrix_csv, write_matrix_csv
from .oracle import oracle_comparison_suite
from .solver import prox_l11, prox_linfinf

BENCH_DELTA = 1e-8
BENCH_HEADER = "n,m,rep,lambda,delta,wall_time_seconds,iterations,nnz_fraction"


@dataclass(frozen=True)
class BenchRecord:
    """One timed solver run; serializes to a row of the bench CSV."""

    n: int
    m: int
    rep: int
    lam: float
    delta: float
    wall_time_seconds: float
    iterations: int
    nnz_fraction: float

    def to_row(self) -> str:
        return ",".join(
            (
                str(self.n),
                str(self.m),
                str(self.rep),
                format_float(self.lam),
                format_float(self.delta),
                format_float(self.wall_time_seconds),
                str(self.iterations),
                format_float(self.nnz_fraction),
            )
        )


def read_bench_csv(source) -> list[BenchRecord]:
    """Parse a bench CSV (with header) back into records."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != BENCH_HEADER:
        raise ValueError("missing bench CSV header")
    records = []
    for ln in lines[1:]:
        n, m, rep, lam, delta, wt, iters, nnz = ln.split(",")
        records.append(
            BenchRecord(
                n=int(n),
                m=int(m),
                rep=int(rep),
                lam=float(lam),
                delta=float(delta),
                wall_time_seconds=float(wt),
                iterations=int(iters),
                nnz_fraction=float(nnz),
            )
        )
    return records


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """Parse a size list like `1000x50,10000x50` into (n, m) pairs."""
    sizes = []
    for token in text.split(","):
        parts = token.lower().strip().split("x")
        try:
            n, m = (int(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad size token {token!r}, expected NxM")
        if n < 1 or m < 1:
            raise argparse.ArgumentTypeError(f"size {token!r} must be at least 1x1")
        sizes.append((n, m))
    if not sizes:
        raise argparse.ArgumentTypeError("empty size list")
    return sizes


def bench_instances(sizes, reps: int, seed: int):
    """Yield (n, m, rep, X) for every bench cell, in deterministic order.

    One generator drives all draws, so a CSV row can be reproduced by
    replaying the same sizes/reps/seed.
    """
    rng = np.random.default_rng(seed)
    for n, m in sizes:
        for rep in range(reps):
            yield n, m, rep, rng.standard_normal((n, m))


def _open_dest(path):
    return open(path, "w", newline="") if path else sys.stdout


def cmd_prox(args) -> int:
    try:
        X = read_matrix_csv(args.input)
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 2
    try:
        if args.lam is not None:
            lam = args.lam
        else:
            if not 0.0 < args.lam_frac <= 1.0:
                raise ValueError(f"--lambda-frac must be in (0, 1], got {args.lam_frac}")
            base = lambda_max(X) if args.norm == "l11" else lambda_max(X.T)
            lam = args.lam_frac * base
        config = ProxConfig(lam=lam, delta=args.delta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sol = prox_l11(X, config) if args.norm == "l11" else prox_linfinf(X, config)
    dest = _open_dest(args.output)
    try:
        write_matrix_csv(sol.U, dest)
        if args.emit_duals:
            # indices are 0-based; for --norm linfinf they refer to rows of X
            dest.write(f"# t={format_float(sol.t)}\n")
            dest.write("# nu=" + ",".join(format_float(v) for v in sol.nu) + "\n")
            dest.write("# active=" + ",".join(str(int(j)) for j in sol.active_set) + "\n")
            dest.write(f"# certified={'true' if sol.active_set_certified else 'false'}\n")
    finally:
        if dest is not sys.stdout:
            dest.close()
    return 0


def cmd_verify(args) -> int:
    if args.trials < 1:
        print(f"error: --trials must be at least 1, got {args.trials}", file=sys.stderr)
        return 2
    try:
        report = oracle_comparison_suite(
            trials=args.trials,
            max_n=args.max_n,
            max_m=args.max_m,
            seed=args.seed,
            tol=args.tol,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for f in report.failures:
        print(
            f"FAIL trial {f.index}: n={f.n} m={f.m} lambda={format_float(f.lam)} "
            f"max|U - U_ref|={f.error:.3e} (seed {args.seed})"
        )
    print(
        f"trials={report.trials} "
        f"max_elementwise_error={report.max_elementwise_error:.3e} "
        f"max_oracle_kkt_residual={report.max_oracle_residual:.3e}"
    )
    if report.failures:
        print(f"FAIL: {len(report.failures)} trial(s) exceeded tol={format_float(report.tol)}")
        return 1
    print(f"PASS: all trials within tol={format_float(report.tol)}")
    return 0


def cmd_bench(args) -> int:
    if args.reps < 1:
        print(f"error: --reps must be at least 1, got {args.reps}", file=sys.stderr)
        return 2
    records = []
    for n, m, rep, X in bench_instances(args.sizes, args.reps, args.seed):
        lam = 0.5 * lambda_max(X)
        start = time.perf_counter()
        sol = prox_l11(X, ProxConfig(lam=lam, delta=BENCH_DELTA))
        elapsed = time.perf_counter() - start
        records.append(
            BenchRecord(
                n=n,
                m=m,
                rep=rep,
                lam=lam,
                delta=BENCH_DELTA,
                wall_time_seconds=elapsed,
                iterations=sol.iterations,
                nnz_fraction=float(np.count_nonzero(sol.U) / sol.U.size),
            )
        )
    dest = _open_dest(args.output)
    try:
        dest.write(BENCH_HEADER + "\n")
        for rec in records:
            dest.write(rec.to_row() + "\n")
    finally:
        if dest is not sys.stdout:
            dest.close()
    for n, m in args.sizes:
        times = [r.wall_time_seconds for r in records if r.n == n and r.m == m]
        print(f"{n}x{m}: mean wall time {np.mean(times):.6f} s over {len(times)} rep(s)", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    if args.n < 1 or args.m < 1:
        print(f"error: matrix size must be at least 1x1, got {args.n}x{args.m}", file=sys.stderr)
        return 2
    rng = np.random.default_rng(args.seed)
    if args.dist == "gaussian":
        X = rng.standard_normal((args.n, args.m))
    else:
        X = rng.uniform(-1.0, 1.0, size=(args.n, args.m))
    dest = _open_dest(args.output)
    try:
        write_matrix_csv(X, dest)
    finally:
        if dest is not sys.stdout:
            dest.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normprox",
        description="Proximal operators of the l1,1 and linf,inf induced matrix norms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prox", help="shrink a CSV matrix with the induced-norm prox")
    p.add_argument("--input", required=True, help="input matrix CSV")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--lambda", dest="lam", type=float, default=None,
                       help="penalty weight")
    group.add_argument("--lambda-frac", dest="lam_frac", type=float, default=None,
                       help="penalty as a fraction in (0, 1] of the shrink-to-zero threshold")
    p.add_argument("--delta", type=float, default=1e-8, help="bisection tolerance on t")
    p.add_argument("--norm", choices=("l11", "linfinf"), default="l11",
                   help="which induced norm to penalize (columns or rows)")
    p.add_argument("--output", default=None, help="output CSV path (default stdout)")
    p.add_argument("--emit-duals", action="store_true",
                   help="append t, nu, active set (0-based), certified flag as # comments")
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("verify", help="compare the solver against the exhaustive reference")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--max-n", type=int, default=5, help="largest row count per instance")
    p.add_argument("--max-m", type=int, default=4, help="largest column count per instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the solver on random Gaussian matrices")
    p.add_argument("--sizes", type=parse_sizes, default=parse_sizes("1000x50"),
                   help="comma-separated NxM list, e.g. 1000x50,10000x50")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="bench CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate a random matrix CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", choices=("gaussian", "uniform"), default="gaussian")
    p.add_argument("--output", default=None, help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
