"""eef-textcat command line: sweep, verify, synth, and ig subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, corpus, features, kernels, oracle


def _load_pairs(path: Path):
    """A directory is the one-file-per-document layout; a file is tokenized lines.

    Returns (pairs, class_names) with integer labels indexing class_names.
    """
    if path.is_dir():
        return corpus.read_directory_corpus(path)
    return corpus.read_tokenized_lines(path)


def _build_split(args) -> corpus.TrainTestCorpus:
    train_pairs, train_names = _load_pairs(Path(args.train))
    if args.test is not None:
        test_pairs, test_names = _load_pairs(Path(args.test))
        name_to_idx = {name: i for i, name in enumerate(train_names)}
        missing = set(test_names) - set(train_names)
        if missing:
            raise SystemExit(f"test classes not present in training data: {sorted(missing)}")
        remapped = [
            (name_to_idx[test_names[label]], tokens) for label, tokens in test_pairs
        ]
        return corpus.corpus_split(train_pairs, remapped, train_names)
    if args.test_frac is None:
        raise SystemExit("provide either --test or --test-frac")
    train, test = corpus.split_pairs(train_pairs, args.test_frac, args.seed)
    return corpus.corpus_split(train, test, train_names)


def _cmd_sweep(args) -> int:
    split = _build_split(args)
    classifiers = []
    for chunk in args.classifiers.split(",") if args.classifiers else []:
        chunk = chunk.strip()
        if chunk and chunk not in classifiers:
            classifiers.append(chunk)
    for extra in args.classifier or []:
        if extra not in classifiers:
            classifiers.append(extra)
    if not classifiers:
        classifiers = list(bench.KNOWN_CLASSIFIERS)

    config = bench.SweepConfig(
        k_values=tuple(int(k) for k in args.k.split(",")),
        classifiers=tuple(classifiers),
        smoothing_alpha=args.alpha,
        selection_mode=args.mode,
        theta_domain=(args.theta_min, args.theta_max),
        theta_tol=args.theta_tol,
        test_frac=args.test_frac,
        seed=args.seed,
        record_timing=not args.no_timing,
    )
    report = bench.run_sweep(config, split)

    print(
        f"sweep: {split.train.n_classes} classes, D={split.train.n_terms}, "
        f"{len(split.train.documents)} train / {len(split.test.documents)} test docs "
        f"[{kernels.backend()} kernel]"
    )
    for row in report.rows:
        line = (
            f"  {row.classifier:>4} K={row.k:<6} accuracy={row.accuracy:.4f} "
            f"macro_f1={row.macro_f1:.4f}"
        )
        if row.thetas:
            line += "  theta=[" + " ".join(f"{t:.4f}" for t in row.thetas) + "]"
        print(line)
    if args.out:
        Path(args.out).write_text(report.to_csv(), encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def _cmd_verify(args) -> int:
    checks = oracle.run_verification(seed=args.seed, cases=args.cases)
    width = max(len(c.name) for c in checks)
    failed = 0
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        print(f"  {c.name:<{width}}  max|dev| = {c.max_abs_deviation:.3e}  tol = {c.tolerance:.0e}  {status}")
        failed += 0 if c.passed else 1
    print(f"verify: {len(checks) - failed}/{len(checks)} checks passed ({args.cases} cases)")
    return 1 if failed else 0


def _cmd_synth(args) -> int:
    synth = bench.generate_synthetic(
        n_classes=args.classes,
        vocab_size=args.vocab,
        docs_per_class=args.docs_per_class,
        length_range=(args.length_min, args.length_max),
        separation=args.separation,
        seed=args.seed,
    )
    corpus.write_tokenized_lines(args.out, synth.corpus)
    print(
        f"wrote {args.out}: {args.classes} classes x {args.docs_per_class} docs, "
        f"D={args.vocab}, separation={args.separation}"
    )
    if args.cells_out:
        lines = [
            " ".join(f"{v:.17g}" for v in row) for row in synth.true_cells
        ]
        Path(args.cells_out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {args.cells_out}")
    return 0


def _cmd_ig(args) -> int:
    pairs, class_names = _load_pairs(Path(args.train))
    built = corpus.build_corpus(pairs, class_names=class_names)
    table = features.ig_scores(built)
    lines = ["term,class,ig"]
    for k, term in enumerate(built.vocabulary.terms):
        for i, name in enumerate(class_names):
            lines.append(f"{term},{name},{table.scores[i, k]:.12g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out} ({built.n_terms} terms x {built.n_classes} classes)")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eef-textcat",
        description="EEF text categorization benchmark: class-specific features vs PPT and MNB",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run the (classifier, K) sweep and emit CSV")
    sweep.add_argument("--train", required=True, help="training corpus: directory or tokenized-line file")
    sweep.add_argument("--test", help="test corpus; omit to use --test-frac")
    sweep.add_argument("--test-frac", type=float, help="seeded random test fraction of --train")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--k", required=True, help="comma-separated feature counts, e.g. 100,200,500")
    sweep.add_argument("--classifiers", default="eef,ppt,mnb", help="comma-separated subset of eef,ppt,mnb")
    sweep.add_argument("--classifier", action="append", choices=bench.KNOWN_CLASSIFIERS,
                       help="add one classifier (repeatable)")
    sweep.add_argument("--alpha", type=float, default=1.0, help="additive smoothing")
    sweep.add_argument("--mode", choices=[features.CLASS_SPECIFIC, features.COMMON],
                       default=features.CLASS_SPECIFIC, help="selection mode for eef/ppt")
    sweep.add_argument("--theta-min", type=float, default=0.0)
    sweep.add_argument("--theta-max", type=float, default=1.0)
    sweep.add_argument("--theta-tol", type=float, default=1e-10)
    sweep.add_argument("--no-timing", action="store_true", help="write wall_ms as 0 for reproducible CSV")
    sweep.add_argument("--out", help="CSV output path")
    sweep.set_defaults(func=_cmd_sweep)

    verify = sub.add_parser("verify", help="run the oracle-vs-closed-form suite")
    verify.add_argument("--seed", type=int, default=20260809)
    verify.add_argument("--cases", type=int, default=1000)
    verify.set_defaults(func=_cmd_verify)

    synth = sub.add_parser("synth", help="emit a synthetic corpus in tokenized-line format")
    synth.add_argument("--classes", type=int, default=4)
    synth.add_argument("--vocab", type=int, default=200)
    synth.add_argument("--docs-per-class", type=int, default=500)
    synth.add_argument("--separation", type=float, default=0.5)
    synth.add_argument("--length-min", type=int, default=30)
    synth.add_argument("--length-max", type=int, default=120)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", required=True)
    synth.add_argument("--cells-out", help="also write the true cell probabilities")
    synth.set_defaults(func=_cmd_synth)

    ig = sub.add_parser("ig", help="dump the information-gain score table as CSV")
    ig.add_argument("--train", required=True)
    ig.add_argument("--out", help="CSV path; stdout if omitted")
    ig.set_defaults(func=_cmd_ig)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
