"""Command-line interface for the toolkit.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors (unreadable
files, schema violations, unparseable commands).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .corpus import (
    build_splits,
    filter_examples,
    load_examples,
    save_examples,
    save_filter_report,
    utility_histogram,
)
from .errors import NlbashError
from .harness import (
    SubprocessPredictor,
    emit_report,
    evaluate,
    score_prediction_file,
)
from .metric import DEFAULT_TOP_K
from .parser import parse
from .retrieval import (
    CalibrationModel,
    TfIdfIndex,
    TfIdfPredictor,
    make_calibration_data,
    pairs_from_examples,
    train_calibrator,
)
from .template import flatten_utilities, normalize_template
from .vocab import default_vocabulary, load_vocabulary


class UsageError(Exception):
    pass


def _vocab_from_args(args):
    if getattr(args, "vocab", None):
        return load_vocabulary(args.vocab)
    return default_vocabulary()


def _load_filtered(path, vocab, quiet=False):
    examples = load_examples(path)
    report = filter_examples(examples, vocab)
    if report.rejected and not quiet:
        print(f"filtered out {len(report.rejected)} of {len(examples)} examples", file=sys.stderr)
    return report.kept


def _cmd_parse(args):
    vocab = _vocab_from_args(args)
    ast = parse(args.command, vocab)
    template = normalize_template(ast, vocab)
    if args.json:
        payload = {
            "utilities": flatten_utilities(ast),
            "template": [
                {"utility": u.utility, "flags": sorted(u.flags), "erased_args": n}
                for u, n in zip(template.units, template.erased_args)
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print("pipeline:", " | ".join(s.utility for s in ast.stages))
        print("template:")
        for unit, erased in zip(template.units, template.erased_args):
            flags = " ".join(sorted(unit.flags)) or "-"
            suffix = f"  ({erased} arg{'s' if erased != 1 else ''} erased)" if erased else ""
            print(f"  {unit.utility:<12} flags: {flags}{suffix}")
    return 0


def _cmd_filter(args):
    vocab = _vocab_from_args(args)
    examples = load_examples(args.data)
    report = filter_examples(examples, vocab)
    save_filter_report(report, args.out, args.rejected)
    print(f"kept {len(report.kept)}, rejected {len(report.rejected)}")
    return 0


def _cmd_split(args):
    vocab = _vocab_from_args(args)
    examples = _load_filtered(args.data, vocab) if args.filter else load_examples(args.data)
    fractions = tuple(float(f) for f in args.fractions.split(","))
    if len(fractions) != 3:
        raise UsageError("--fractions must be three comma-separated numbers")
    train, val, test = build_splits(examples, seed=args.seed, fractions=fractions)
    for name, part in (("train", train), ("val", val), ("test", test)):
        path = f"{args.out_prefix}.{name}.jsonl"
        save_examples(part, path)
        print(f"{name}: {len(part)} -> {path}")
    return 0


def _cmd_stats(args):
    vocab = _vocab_from_args(args)
    examples = _load_filtered(args.data, vocab)
    histogram = utility_histogram(examples, vocab)
    for utility, count in histogram[: args.top]:
        print(f"{count:>7}  {utility}")
    return 0


def _cmd_score(args):
    vocab = _vocab_from_args(args)
    dataset = _load_filtered(args.refs, vocab)
    report = score_prediction_file(args.pred, dataset, k=args.k, vocab=vocab)
    print(f"mean score: {report.mean_score:.4f}")
    print(f"examples: {len(report.per_example)}  "
          f"unparseable predictions: {report.unparseable_prediction_count}")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(emit_report(report, "json"))
    return 0


def _cmd_index(args):
    vocab = _vocab_from_args(args)
    examples = _load_filtered(args.data, vocab)
    index = TfIdfIndex(pairs_from_examples(examples), vocab=vocab, normalize=args.normalize)
    index.save(args.out)
    print(f"indexed {len(index)} pairs -> {args.out}")
    return 0


def _cmd_calibrate(args):
    vocab = _vocab_from_args(args)
    examples = _load_filtered(args.data, vocab)
    features, labels = make_calibration_data(
        pairs_from_examples(examples),
        vocab=vocab,
        holdout_fraction=args.holdout,
        seed=args.seed,
        k=args.k,
        normalize=args.normalize,
    )
    model = train_calibrator(features, labels)
    model.save(args.out)
    positive = sum(labels)
    print(f"trained on {len(labels)} hits ({positive} positive) -> {args.out}")
    return 0


def _make_baseline(args, pairs, vocab):
    variant = args.variant
    if variant == "raw":
        return TfIdfPredictor(pairs, vocab)
    if variant == "dedup":
        return TfIdfPredictor(pairs, vocab, dedupe=True)
    if variant == "normalize":
        return TfIdfPredictor(pairs, vocab, dedupe=True, normalize=True)
    if variant == "full":
        return TfIdfPredictor.with_calibration(
            pairs, vocab, normalize=True, dedupe=True, seed=args.seed, k=args.k
        )
    raise UsageError(f"unknown baseline variant: {variant!r}")


def _cmd_eval(args):
    vocab = _vocab_from_args(args)
    dataset = _load_filtered(args.data, vocab)
    predictor = None
    closer = None
    if args.baseline:
        if args.baseline != "tfidf":
            raise UsageError(f"unknown baseline: {args.baseline!r}")
        if not args.train:
            raise UsageError("--baseline tfidf requires --train")
        train_examples = _load_filtered(args.train, vocab)
        predictor = _make_baseline(args, pairs_from_examples(train_examples), vocab)
    elif args.predictor_cmd:
        predictor = SubprocessPredictor(args.predictor_cmd)
        closer = predictor
    else:
        raise UsageError("eval needs --baseline or --predictor-cmd")
    try:
        report = evaluate(predictor, dataset, k=args.k, vocab=vocab)
    finally:
        if closer is not None:
            closer.close()
    payload = emit_report(report, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
        print(f"report -> {args.out}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
        if not payload.endswith(b"\n"):
            sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlbash",
        description="Parse Bash commands into templates and score NL-to-Bash translators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("parse", help="print the pipeline and template of one command")
    p.add_argument("command")
    p.add_argument("--vocab")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("filter", help="apply parse/round-trip/whitelist filtering to a dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--rejected")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("split", help="build deterministic train/val/test splits")
    p.add_argument("--data", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fractions", default="0.8,0.1,0.1")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--filter", action="store_true", help="filter before splitting")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("stats", help="utility frequency histogram of a dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--top", type=int, default=15)
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("score", help="score a prediction file against references offline")
    p.add_argument("--pred", required=True)
    p.add_argument("--refs", required=True)
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--out")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("index", help="build and persist a TF-IDF index")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("calibrate", help="train a confidence calibration model")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--holdout", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("eval", help="evaluate a baseline or external predictor")
    p.add_argument("--data", required=True)
    p.add_argument("--baseline", choices=["tfidf"])
    p.add_argument("--variant", choices=["raw", "dedup", "normalize", "full"], default="full")
    p.add_argument("--train", help="training data for --baseline tfidf")
    p.add_argument("--predictor-cmd", help="external predictor command (line-delimited JSON)")
    p.add_argument("--k", type=int, default=DEFAULT_TOP_K)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--out")
    p.add_argument("--vocab")
    p.set_defaults(func=_cmd_eval)

    return parser


def cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (NlbashError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
