"""Command-line interface.

Machine-readable results (CSV/JSON, series files) go to stdout or the
requested output paths; human-readable summaries go to stderr. Exit
codes: 0 success, 1 usage error, 2 data error, 3 enumeration-guard
violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .datasets import (
    Dataset,
    load_delimited,
    load_manifest,
    load_series_file,
    save_delimited,
    save_series_file,
    synth_sines,
    znormalize,
)
from .dtw import dtw
from .errors import DataFormatError, GuardError
from .harness import (
    run_protocol_A,
    run_protocol_B,
    write_records_csv,
    write_summary_json,
    write_trace_csv,
)
from .optimality import certify_local_min, check_necessary, global_mean_oracle
from .solvers import SolverOptions, compute_mean
from .warping import format_path

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_GUARD = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_query_series(path: str, delimiter: str = "auto") -> np.ndarray:
    """Load a single series for distance/verify queries.

    A one-row file is read as a univariate series over its columns (the
    UCR row convention); otherwise rows are time points and columns are
    dimensions.
    """
    x = load_series_file(path, delimiter=delimiter)
    if x.shape[0] == 1 and x.shape[1] > 1:
        return x.reshape(-1, 1)
    return x


def _load_dataset(args) -> Dataset:
    if getattr(args, "manifest", False):
        ds = load_manifest(args.data)
    else:
        ds = load_delimited(args.data, delimiter=args.delimiter, label_column=args.label_column)
    if getattr(args, "znorm", False):
        ds = znormalize(ds)
    return ds


def _add_data_flags(parser) -> None:
    parser.add_argument("--data", required=True, help="dataset file (default: UCR-style rows)")
    parser.add_argument("--delimiter", choices=["tab", "comma", "auto"], default="auto")
    parser.add_argument("--label-column", choices=["first", "none"], default="none")
    parser.add_argument("--manifest", action="store_true",
                        help="treat --data as a manifest of per-series files (multivariate)")
    parser.add_argument("--znorm", action="store_true", help="z-normalize each series")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtwmean", description=__doc__)
    parser.add_argument("--threads", type=int, default=None,
                        help="cap worker threads (results are independent of this)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dtw", parents=[], help="DTW distance and optimal path between two files")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--delimiter", choices=["tab", "comma", "auto"], default="auto")

    p = sub.add_parser("mean", help="compute a sample mean")
    _add_data_flags(p)
    p.add_argument("--algo", choices=["sg", "mm", "ssg"], default="mm")
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--eta0", type=float, default=0.05)
    p.add_argument("--eta1", type=float, default=0.005)
    p.add_argument("--init", default="random-member",
                   choices=["random-member", "random-series", "medoid", "subsample-medoid"])
    p.add_argument("--init-subsample", type=int, default=None,
                   help="subsample size for --init subsample-medoid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--track-every", type=int, default=1)
    p.add_argument("--patience", type=int, default=None,
                   help="terminate after this many epochs without improvement (T2)")
    p.add_argument("--sg-step", choices=["per-coordinate", "scalar"], default="per-coordinate")
    p.add_argument("--ssg-sampling", choices=["permutation", "iid"], default="permutation")
    p.add_argument("--out", default=None,
                   help="output prefix: writes <out>_solution.tsv, <out>_trace.csv, <out>_meta.json")

    p = sub.add_parser("verify", help="check optimality conditions at a candidate")
    _add_data_flags(p)
    p.add_argument("--candidate", required=True, help="candidate series file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--certify", action="store_true",
                   help="also enumerate optimal paths for the local-minimum certificate")

    p = sub.add_parser("oracle", help="exact global mean by configuration enumeration")
    _add_data_flags(p)
    p.add_argument("--length", type=int, required=True, help="solution length n")

    p = sub.add_parser("bench", help="run a benchmark protocol")
    p.add_argument("protocol", choices=["protocol-a", "protocol-b"])
    _add_data_flags(p)
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--sizes", default=None, help="comma-separated subsample sizes (protocol-b)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output directory (default: print summary JSON)")

    p = sub.add_parser("synth", help="generate a synthetic sinusoid dataset")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--phase-sigma", type=float, default=0.25)
    p.add_argument("--warp-amplitude", type=float, default=2.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    return parser


def _cmd_dtw(args) -> int:
    x = _load_query_series(args.file_a, args.delimiter)
    y = _load_query_series(args.file_b, args.delimiter)
    result = dtw(x, y)
    print(repr(result.distance))
    print(format_path(result.path))
    return EXIT_OK


def _cmd_mean(args) -> int:
    ds = _load_dataset(args)
    opts = SolverOptions(
        algorithm=args.algo,
        max_epochs=args.epochs,
        init=args.init,
        init_subsample=args.init_subsample,
        eta0=args.eta0,
        eta1=args.eta1,
        seed=args.seed,
        track_best_every=args.track_every,
        no_improvement_patience=args.patience,
        sg_step=args.sg_step,
        ssg_sampling=args.ssg_sampling,
    )
    result = compute_mean(ds.series, opts)
    meta = {
        "algorithm": args.algo,
        "seed": args.seed,
        "best_variation": result.best_variation,
        "epochs_run": result.epochs_run,
        "terminated_by": result.terminated_by,
        "visited_examples": result.visited_examples,
    }
    raw = dict(result.raw_trace)
    trace_lines = ["epoch,variation,raw_variation,seed"]
    for epoch, variation in result.trace:
        trace_lines.append(f"{epoch},{variation!r},{raw[epoch]!r},{args.seed}")
    if args.out:
        save_series_file(result.best, f"{args.out}_solution.tsv")
        with open(f"{args.out}_trace.csv", "w") as fh:
            fh.write("\n".join(trace_lines) + "\n")
        with open(f"{args.out}_meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        print("\t".join(repr(float(v)) for row in result.best for v in row))
    print(
        f"{args.algo}: variation={result.best_variation:.6g} "
        f"epochs={result.epochs_run} visited={result.visited_examples} "
        f"terminated_by={result.terminated_by}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    ds = _load_dataset(args)
    z = _load_query_series(args.candidate, args.delimiter)
    if args.certify:
        report = certify_local_min(z, ds.series, tol=args.tol)
    else:
        report = check_necessary(z, ds.series, tol=args.tol)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    ds = _load_dataset(args)
    solution, value = global_mean_oracle(ds.series, args.length)
    print(json.dumps(
        {"variation": value, "solution": solution.tolist()}, indent=2, sort_keys=True
    ))
    return EXIT_OK


def _cmd_bench(args) -> int:
    ds = _load_dataset(args)
    if args.protocol == "protocol-a":
        records = run_protocol_A(ds, trials=args.trials, epochs=args.epochs, seed=args.seed)
    else:
        if not args.sizes:
            raise ValueError("--sizes is required for protocol-b")
        sizes = [int(s) for s in args.sizes.split(",")]
        records = run_protocol_B(
            ds, sizes, trials=args.trials, epochs=args.epochs, seed=args.seed
        )
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_records_csv(records, os.path.join(args.out, "records.csv"))
        write_trace_csv(records, os.path.join(args.out, "trace.csv"))
        write_summary_json(records, os.path.join(args.out, "summary.json"))
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    else:
        from .harness import summarize

        print(json.dumps(summarize(records), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_synth(args) -> int:
    rng = np.random.default_rng(args.seed)
    ds = synth_sines(
        args.count,
        args.length,
        args.sigma,
        rng,
        phase_sigma=args.phase_sigma,
        warp_amplitude=args.warp_amplitude,
    )
    save_delimited(ds, args.out)
    print(json.dumps(
        {"seed": args.seed, "count": args.count, "length": args.length,
         "sigma": args.sigma, "out": args.out}, sort_keys=True
    ))
    return EXIT_OK


_COMMANDS = {
    "dtw": _cmd_dtw,
    "mean": _cmd_mean,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads >= 1:
        try:
            import numba

            numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
        except ImportError:
            pass
    try:
        return _COMMANDS[args.command](args)
    except GuardError as exc:
        print(f"dtwmean: guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (DataFormatError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"dtwmean: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"dtwmean: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
