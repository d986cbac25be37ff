"""Command-line front door: entropy, barcode, compare, roc, cv, synth.

All artifacts are written deterministically (17-significant-digit floats,
fixed key order), so identical inputs produce byte-identical outputs.
Batch inputs are processed independently; a failure on one input does not
discard results already written for the others.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys

from . import __version__
from .classify import cross_validate, load_scores, roc_curve
from .classify import LabeledScore
from .entropy import signal_entropy
from .errors import (
    BoundInapplicableError,
    DegenerateLabelsError,
    EmptyBarcodeError,
    IncompatibleSignalsError,
    InvalidSignalError,
    OracleMismatchError,
    OracleTooLargeError,
    ParseError,
    PersentropyError,
    StratificationError,
)
from .filtration import lower_star_filtration
from .jsonio import dump_path, dumps
from .persistence import ORACLE_MAX_SIMPLICES, barcodes_equal, compute_barcode, oracle_barcode
from .signals import load_signal
from .stability import verify_stability
from .synth import CorpusSpec, corpus_digest, generate_corpus, write_corpus

JOBS_ENV = "PERSENTROPY_JOBS"

# one exit code per error category; argparse itself exits 2 on usage errors
EXIT_CODES: list[tuple[type, int]] = [
    (ParseError, 3),
    (OSError, 3),
    (InvalidSignalError, 4),
    (EmptyBarcodeError, 4),
    (IncompatibleSignalsError, 5),
    (OracleTooLargeError, 6),
    (OracleMismatchError, 6),
    (DegenerateLabelsError, 7),
    (StratificationError, 7),
    (BoundInapplicableError, 8),
    (PersentropyError, 9),
    (ValueError, 4),
]

_EPILOG = """\
exit codes:
  0  success
  2  usage error
  3  unreadable or malformed input (parse errors, missing files)
  4  invariant violation (invalid signal, empty barcode, bad value)
  5  signals do not share a time grid
  6  oracle failure (size guard exceeded, or oracle disagrees)
  7  degenerate labels or stratification failure
  8  stability bound inapplicable
  9  other package error

On failure a machine-readable JSON object {"error", "exit_code",
"message"} is written to stderr.

environment:
  PERSENTROPY_JOBS  default for --jobs
"""


def _signal_format(path: str, override: str | None) -> str:
    if override:
        return override
    return "json" if path.endswith(".json") else "csv"


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _oracle_check(K) -> None:
    if K.simplex_count > ORACLE_MAX_SIMPLICES:
        return  # documented: the check only runs under the size guard
    fast = compute_barcode(K)
    slow = oracle_barcode(K)
    if not barcodes_equal(fast, slow):
        raise OracleMismatchError(
            "union-find and boundary-reduction barcodes disagree"
        )


def _entropy_one(task: tuple[str, str | None, bool]) -> tuple[str, str]:
    path, fmt, oracle = task
    sig = load_signal(path, format=_signal_format(path, fmt))
    K = lower_star_filtration(sig)
    if oracle:
        _oracle_check(K)
    result = signal_entropy(sig)
    return path, result.to_json(indent=2)


def _write_or_print(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)


def cmd_entropy(args) -> int:
    tasks = [(p, args.format, args.oracle_check) for p in args.inputs]
    if len(tasks) > 1 and not args.output:
        raise ParseError("multiple inputs need --output DIRECTORY")
    if len(tasks) == 1 and (not args.output or not os.path.isdir(args.output)):
        _, text = _entropy_one(tasks[0])
        _write_or_print(text, args.output)
        return 0
    os.makedirs(args.output, exist_ok=True)
    failures = 0
    for path, payload in _map_tasks(_entropy_one, tasks, args.jobs):
        if isinstance(payload, Exception):
            failures += 1
            _emit_error(payload)
            continue
        stem = os.path.splitext(os.path.basename(path))[0]
        out = os.path.join(args.output, f"{stem}.entropy.json")
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
            fh.write("\n")
    return 0 if failures == 0 else _exit_code_for(ParseError("batch failure"))


def _map_tasks(fn, tasks, jobs):
    """Run fn over tasks, optionally in worker processes; yields (path, result
    or exception) in input order."""
    if jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            try:
                yield fn(task)
            except Exception as exc:  # keep batch going
                yield task[0], exc
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, t) for t in tasks]
        for task, fut in zip(tasks, futures):
            try:
                yield fut.result()
            except Exception as exc:
                yield task[0], exc


def cmd_barcode(args) -> int:
    sig = load_signal(args.input, format=_signal_format(args.input, args.format))
    K = lower_star_filtration(sig)
    if args.oracle_check:
        _oracle_check(K)
    barcode = compute_barcode(K)
    if args.dump_complex:
        dump_path(K.to_debug_dict(), args.dump_complex)
    _write_or_print(barcode.to_json(indent=2), args.output)
    return 0


def cmd_compare(args) -> int:
    f = load_signal(args.f, format=_signal_format(args.f, args.format))
    g = load_signal(args.g, format=_signal_format(args.g, args.format))
    if args.oracle_check:
        _oracle_check(lower_star_filtration(f))
        _oracle_check(lower_star_filtration(g))
    report = verify_stability(f, g)
    _write_or_print(report.to_json(indent=2), args.output)
    return 0


def _score_one(task: tuple[str, str, str, bool]) -> LabeledScore:
    path, sig_id, label, normalized = task
    sig = load_signal(path, format=_signal_format(path, None))
    result = signal_entropy(sig)
    score = result.normalized_entropy if normalized else result.raw_entropy
    return LabeledScore(id=sig_id, score=score, label=label)


def _gather_scores(args) -> list[LabeledScore]:
    src = args.input
    if not os.path.isdir(src):
        return load_scores(src)
    manifest_path = os.path.join(src, "manifest.json")
    if not os.path.exists(manifest_path):
        raise ParseError(f"{src} is a directory but has no manifest.json")
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    tasks = [
        (os.path.join(src, e["file"]), e["id"], e["label"], args.normalized)
        for e in manifest["signals"]
    ]
    return list(_map_scores(tasks, args.jobs))


def _map_scores(tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield _score_one(t)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_score_one, tasks)


def cmd_roc(args) -> int:
    scores = _gather_scores(args)
    curve = roc_curve(scores, positive_label=args.positive_label)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(curve.to_csv())
        print(dumps({"auc": curve.auc}))
    else:
        sys.stdout.write(curve.to_csv())
    return 0


def cmd_cv(args) -> int:
    scores = _gather_scores(args)
    report = cross_validate(scores, k=args.k, seed=args.seed)
    _write_or_print(report.to_json(indent=2), args.output)
    return 0


def cmd_synth(args) -> int:
    spec = CorpusSpec(
        n_good=args.good,
        n_faulty=args.faulty,
        length=args.length,
        base_frequency=args.base_frequency,
        noise_level_good=args.noise_good,
        noise_level_faulty=args.noise_faulty,
        seed=args.seed,
    )
    corpus = generate_corpus(spec)
    write_corpus(corpus, spec, args.out)
    print(dumps({"signals": len(corpus), "digest": corpus_digest(corpus), "dir": args.out}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persentropy",
        description="Persistent entropy of sampled signals: barcodes, "
        "stability reports, and entropy-threshold classification.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, oracle=True):
        p.add_argument("--format", choices=["csv", "json"], default=None,
                       help="input signal format (default: by extension)")
        p.add_argument("--output", "-o", default=None, help="output path")
        if oracle:
            p.add_argument("--oracle-check", action="store_true",
                           help="cross-check persistence against the "
                           "boundary-reduction oracle (skipped above "
                           f"{ORACLE_MAX_SIMPLICES} simplices)")

    p = sub.add_parser("entropy", help="persistent entropy of signal file(s)")
    p.add_argument("inputs", nargs="+", help="signal file(s)")
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="parallel workers for batch inputs")
    add_common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("barcode", help="persistence barcode of one signal")
    p.add_argument("input", help="signal file")
    p.add_argument("--dump-complex", metavar="FILE", default=None,
                   help="also dump the filtered complex as JSON")
    add_common(p)
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("compare", help="stability report for two signals")
    p.add_argument("f", help="first signal file")
    p.add_argument("g", help="second signal file")
    add_common(p)
    p.set_defaults(func=cmd_compare)

    for name, helptext in [("roc", "ROC curve csv"), ("cv", "k-fold cross-validation")]:
        p = sub.add_parser(name, help=f"{helptext} from a scores CSV or corpus directory")
        p.add_argument("input", help="scores CSV (id,score,label) or a "
                       "corpus directory containing manifest.json")
        p.add_argument("--normalized", action=argparse.BooleanOptionalAction,
                       default=True,
                       help="score signals by normalized entropy (default) "
                       "or raw nats (--no-normalized)")
        p.add_argument("--jobs", type=int, default=_default_jobs())
        p.add_argument("--output", "-o", default=None)
        if name == "roc":
            p.add_argument("--positive-label", choices=["good", "faulty"],
                           default="faulty")
            p.set_defaults(func=cmd_roc)
        else:
            p.add_argument("--k", type=int, default=7)
            p.add_argument("--seed", type=int, default=7)
            p.set_defaults(func=cmd_cv)

    p = sub.add_parser("synth", help="write a synthetic two-class corpus")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--good", type=int, default=23)
    p.add_argument("--faulty", type=int, default=23)
    p.add_argument("--length", type=int, default=10_000)
    p.add_argument("--base-frequency", type=float, default=0.002)
    p.add_argument("--noise-good", type=float, default=0.02)
    p.add_argument("--noise-faulty", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=CorpusSpec.seed)
    p.set_defaults(func=cmd_synth)

    return parser


def _exit_code_for(exc: Exception) -> int:
    for etype, code in EXIT_CODES:
        if isinstance(exc, etype):
            return code
    return 1


def _emit_error(exc: Exception) -> int:
    code = _exit_code_for(exc)
    sys.stderr.write(
        dumps({"error": type(exc).__name__, "exit_code": code, "message": str(exc)})
        + "\n"
    )
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - every failure becomes JSON + code
        return _emit_error(exc)


if __name__ == "__main__":
    sys.exit(main())
