"""Command line interface: train / predict / zero-shot.

Inputs and outputs are exclusively the corpus tooling's CoNLL format.
Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O or model-load
error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .errors import ConllFormatError, ModelUnavailableError
from .inference import DEFAULT_ZERO_SHOT_MODEL, predict, zero_shot_predict
from .training import TrainConfig, train


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> _Parser:
    parser = _Parser(prog="lore-trainer", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(
        dest="command", metavar="command", parser_class=_Parser, required=True
    )

    sub = subparsers.add_parser("train", help="fine-tune a token classifier")
    sub.add_argument("--train", required=True, help="training CoNLL file")
    sub.add_argument("--dev", required=True, help="development CoNLL file")
    sub.add_argument("--encoder", required=True, help="hub name or local model directory")
    sub.add_argument("--out", required=True, help="output model directory")
    sub.add_argument("--epochs", type=int, default=25)
    sub.add_argument("--batch-size", type=int, default=16)
    sub.add_argument("--learning-rate", type=float, default=5e-5)
    sub.add_argument("--max-length", type=int, default=256)
    sub.add_argument("--seed", type=int, default=1234)
    sub.set_defaults(func=_cmd_train)

    sub = subparsers.add_parser("predict", help="tag a CoNLL file with a trained model")
    sub.add_argument("--model", required=True, help="model directory from train")
    sub.add_argument("--input", required=True)
    sub.add_argument("-o", "--output", required=True)
    sub.set_defaults(func=_cmd_predict)

    sub = subparsers.add_parser(
        "zero-shot", help="tag with a pretrained general-domain NER model"
    )
    sub.add_argument("--input", required=True)
    sub.add_argument("-o", "--output", required=True)
    sub.add_argument("--model", default=DEFAULT_ZERO_SHOT_MODEL)
    sub.set_defaults(func=_cmd_zero_shot)

    return parser


def _cmd_train(args) -> int:
    config = TrainConfig(
        encoder=args.encoder,
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        max_length=args.max_length,
        seed=args.seed,
    )
    train(args.train, args.dev, config, args.out)
    return 0


def _cmd_predict(args) -> int:
    predict(args.model, args.input, args.output)
    return 0


def _cmd_zero_shot(args) -> int:
    zero_shot_predict(args.input, args.output, model_name=args.model)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ModelUnavailableError, OSError) as exc:
        print(f"lore-trainer: {exc}", file=sys.stderr)
        return 3
    except (ConllFormatError, ValueError) as exc:
        print(f"lore-trainer: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
