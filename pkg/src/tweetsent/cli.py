"""Command-line entry point: train, evaluate, curve, and serve.

One binary drives the whole lifecycle so the seeded sampling and split
logic is shared, which makes `evaluate` regenerate exactly the split a
`train` run used. Reports go to stdout as JSON; logs go to stderr.

Every flag can also be supplied through the environment with the
TWEETSENT_ prefix (--train-frac -> TWEETSENT_TRAIN_FRAC); command-line
values win. Exit codes: 0 success, 1 usage, 2 data problems, 3 training
or artifact problems.
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import (bilstm, corpus, inferd, logreg, metrics, modelstore, textprep,
               tfidf)
from .errors import DataError, StoreError, ToolkitError, TrainingError
from .ndnum import AdamHyper

ENV_PREFIX = "TWEETSENT_"
EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_TRAINING = 0, 1, 2, 3

log = logging.getLogger("tweetsent.cli")


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped onto exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add(parser, flag, **kwargs):
    """add_argument with a TWEETSENT_ environment override."""
    env_key = ENV_PREFIX + flag.lstrip("-").replace("-", "_").upper()
    if env_key in os.environ:
        kwargs["default"] = os.environ[env_key]
        kwargs.pop("required", None)
    parser.add_argument(flag, **kwargs)


def _add_split_args(parser):
    _add(parser, "--data", required=True,
         help="path to the six-column sentiment CSV")
    _add(parser, "--sample", type=int, default=10000,
         help="stratified sample size drawn from the CSV")
    _add(parser, "--train-frac", type=float, default=0.7,
         help="fraction of the sample used for training")
    _add(parser, "--seed", type=int, default=42,
         help="seed for sampling, shuffling, and weight init")


def _add_lr_args(parser):
    _add(parser, "--l2-lambda", type=float, default=1.0,
         help="L2 penalty strength (bias unpenalized)")
    _add(parser, "--learning-rate", type=float, default=1.0,
         help="initial gradient-descent step size")
    _add(parser, "--max-iters", type=int, default=1000,
         help="full-batch gradient descent iteration cap")
    _add(parser, "--tol", type=float, default=1e-4,
         help="gradient infinity-norm stopping threshold")


def _add_bilstm_args(parser):
    _add(parser, "--emb-dim", type=int, default=128,
         help="embedding dimension")
    _add(parser, "--hidden", type=int, default=128,
         help="LSTM hidden units per direction")
    _add(parser, "--layers", type=int, default=2,
         help="stacked bidirectional layers")
    _add(parser, "--dropout", type=float, default=0.3,
         help="dropout rate between layers and before the head")
    _add(parser, "--max-len", type=int, default=50,
         help="sequence length after pad/truncate")
    _add(parser, "--epochs", type=int, default=6,
         help="training epochs")
    _add(parser, "--batch-size", type=int, default=64,
         help="mini-batch size")
    _add(parser, "--adam-lr", type=float, default=1e-3,
         help="Adam learning rate")


def _split_from_args(args) -> corpus.SplitCorpus:
    rows = corpus.load_sentiment140(args.data)
    return corpus.sample_and_split(rows, args.sample,
                                   train_fraction=args.train_frac,
                                   seed=args.seed)


def _tokens(tweets):
    return [textprep.tokenize(textprep.clean(t.text)) for t in tweets]


def _echo_config(args, report) -> dict:
    return {"seed": args.seed, "sample_size": args.sample,
            "train_fraction": args.train_frac,
            "test_accuracy": report["accuracy"]}


def _train_lr(split, args):
    train_docs = _tokens(split.train)
    vectorizer = tfidf.fit(train_docs)
    train_X = [tfidf.transform(d, vectorizer) for d in train_docs]
    config = logreg.LogRegConfig(l2_lambda=args.l2_lambda,
                                 learning_rate=args.learning_rate,
                                 max_iters=args.max_iters, tol=args.tol)
    model = logreg.train(list(zip(train_X, (t.label for t in split.train))),
                         config)
    preds = [logreg.predict(tfidf.transform(d, vectorizer), model)
             for d in _tokens(split.test)]
    report = metrics.report(metrics.confusion(preds,
                                              [t.label for t in split.test]))
    return report, model, vectorizer


def _train_bilstm(split, args):
    train_tokens = _tokens(split.train)
    vocab = textprep.build_vocabulary(train_tokens)
    train_pairs = [(textprep.encode(toks, vocab, args.max_len), t.label)
                   for toks, t in zip(train_tokens, split.train)]
    kept = [(enc, y) for enc, y in train_pairs if enc.true_len > 0]
    if len(kept) < len(train_pairs):
        log.info("dropped %d tweet(s) that clean to nothing from training",
                 len(train_pairs) - len(kept))
    test_pairs = [(textprep.encode(toks, vocab, args.max_len), t.label)
                  for toks, t in zip(_tokens(split.test), split.test)]

    model_cfg = bilstm.BiLstmConfig(vocab_size=vocab.size,
                                    emb_dim=args.emb_dim, hidden=args.hidden,
                                    num_layers=args.layers,
                                    dropout=args.dropout, max_len=args.max_len)
    run_cfg = bilstm.TrainRunConfig(seed=args.seed, epochs=args.epochs,
                                    batch_size=args.batch_size,
                                    adam=AdamHyper(learning_rate=args.adam_lr))
    model = bilstm.init(model_cfg, seed=args.seed)
    model, history = bilstm.train(model, kept, test_pairs, run_cfg)
    for stats in history:
        log.info("epoch %d: loss %.4f, train acc %.4f, val acc %.4f",
                 stats.epoch, stats.train_loss, stats.train_accuracy,
                 stats.val_accuracy)

    indices, lens = bilstm.to_index_arrays((e for e, _ in test_pairs),
                                           args.max_len)
    preds = (bilstm.batched_logits(model, indices, lens) >= 0).astype(int)
    report = metrics.report(metrics.confusion(preds.tolist(),
                                              [y for _, y in test_pairs]))
    return report, model, vocab, history


def _cmd_train(args) -> int:
    split = _split_from_args(args)
    out_dir = Path(args.out)
    if args.model == "lr":
        report, model, vectorizer = _train_lr(split, args)
        modelstore.save_classical(model, vectorizer, out_dir / "lr",
                                  extra_config=_echo_config(args, report))
        log.info("saved artifact %s", out_dir / "lr")
    else:
        report, model, vocab, _ = _train_bilstm(split, args)
        modelstore.save_neural(model, vocab, out_dir / "bilstm",
                               extra_config=_echo_config(args, report))
        log.info("saved artifact %s", out_dir / "bilstm")
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    artifact = modelstore.load(args.artifact)
    split = _split_from_args(args)
    test_tokens = _tokens(split.test)
    truth = [t.label for t in split.test]
    if artifact.kind == "classical":
        preds = [logreg.predict(tfidf.transform(d, artifact.vectorizer),
                                artifact.model)
                 for d in test_tokens]
    else:
        encoded = [textprep.encode(d, artifact.vocab, artifact.max_len)
                   for d in test_tokens]
        indices, lens = bilstm.to_index_arrays(encoded, artifact.max_len)
        preds = (bilstm.batched_logits(artifact.model, indices, lens)
                 >= 0).astype(int).tolist()
    report = metrics.report(metrics.confusion(preds, truth))
    print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_curve(args) -> int:
    split = _split_from_args(args)
    if args.model == "lr":
        curve = metrics.ml_learning_curve(split, seed=args.seed)
    else:
        _, _, _, history = _train_bilstm(split, args)
        curve = metrics.dl_learning_curve(history)
    metrics.write_curve_csv(curve, args.out)
    print(json.dumps({"kind": curve.kind, "points": len(curve.points),
                      "csv": str(args.out)}, indent=2))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    if args.lr_artifact is None and args.bilstm_artifact is None:
        print("tweetsent serve: provide --lr-artifact and/or --bilstm-artifact",
              file=sys.stderr)
        return EXIT_USAGE
    host, _, port_text = args.listen.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"tweetsent serve: --listen must be HOST:PORT, got {args.listen!r}",
              file=sys.stderr)
        return EXIT_USAGE
    app = inferd.create_app(lr_artifact=args.lr_artifact,
                            bilstm_artifact=args.bilstm_artifact)
    log.info("listening on %s", args.listen)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="tweetsent",
        description="Train, evaluate, and serve two tweet sentiment "
                    "classifiers: TF-IDF + logistic regression and a "
                    "bidirectional LSTM.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    fmt = {"formatter_class": argparse.ArgumentDefaultsHelpFormatter}

    p_train = sub.add_parser("train", help="train a model and save its artifact",
                             **fmt)
    _add(p_train, "--model", choices=("lr", "bilstm"), required=True,
         help="which model to train")
    _add_split_args(p_train)
    _add(p_train, "--out", default="artifacts",
         help="directory receiving the artifact files")
    _add_lr_args(p_train)
    _add_bilstm_args(p_train)
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("evaluate",
                            help="re-evaluate a saved artifact on the test split",
                            **fmt)
    _add(p_eval, "--artifact", required=True,
         help="artifact stem or manifest path")
    _add_split_args(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_curve = sub.add_parser("curve", help="emit a learning curve as CSV", **fmt)
    _add(p_curve, "--model", choices=("lr", "bilstm"), required=True,
         help="lr: accuracy vs training size; bilstm: accuracy vs epoch")
    _add_split_args(p_curve)
    _add(p_curve, "--out", default="curve.csv", help="output CSV path")
    _add_bilstm_args(p_curve)
    p_curve.set_defaults(func=_cmd_curve)

    p_serve = sub.add_parser("serve", help="run the HTTP inference service",
                             **fmt)
    _add(p_serve, "--lr-artifact", default=None,
         help="classical artifact stem to load")
    _add(p_serve, "--bilstm-artifact", default=None,
         help="neural artifact stem to load")
    _add(p_serve, "--listen", default="127.0.0.1:8000",
         help="HOST:PORT to bind")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(asctime)s %(name)s %(message)s")
    try:
        return args.func(args)
    except (OSError, DataError) as exc:
        print(f"tweetsent: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (TrainingError, StoreError) as exc:
        print(f"tweetsent: {exc}", file=sys.stderr)
        return EXIT_TRAINING
    except ToolkitError as exc:
        print(f"tweetsent: {exc}", file=sys.stderr)
        return EXIT_TRAINING


if __name__ == "__main__":
    raise SystemExit(main())
