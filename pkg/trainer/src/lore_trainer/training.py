"""Fine-tuning loop around an off-the-shelf transformer token classifier.

This is deliberately a thin adapter: the encoder comes from the
transformers library (a hub name or a local directory), the loop is plain
AdamW over cross-entropy, and the checkpoint kept is the one with the best
dev-set span F1. All hyperparameters in play are recorded verbatim in
``training_log.json`` next to the saved model.
"""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import torch

from .conll import ConllSentence, iter_sentences, read_conll_file
from .errors import ConllFormatError, ModelUnavailableError

logger = logging.getLogger(__name__)

IGNORED_LABEL = -100


@dataclass(frozen=True)
class TrainConfig:
    """Defaults follow the usual transformer fine-tuning recipe: 25 epochs,
    batch size 16, best checkpoint by dev-set span F1."""

    encoder: str
    epochs: int = 25
    batch_size: int = 16
    learning_rate: float = 5e-5
    max_length: int = 256
    seed: int = 1234

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def _quiet_transformers():
    from transformers.utils import logging as hf_logging

    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()


def load_tokenizer_and_model(encoder: str, labels: list[str] | None = None):
    """Load tokenizer and token-classification model from a hub name or a
    local directory. With ``labels`` given, a fresh classification head of
    that size is attached (fine-tuning); without, the saved head is reused
    (inference)."""
    _quiet_transformers()
    from transformers import AutoModelForTokenClassification, AutoTokenizer

    try:
        tokenizer = AutoTokenizer.from_pretrained(encoder)
        if labels is None:
            model = AutoModelForTokenClassification.from_pretrained(encoder)
        else:
            model = AutoModelForTokenClassification.from_pretrained(
                encoder,
                num_labels=len(labels),
                id2label=dict(enumerate(labels)),
                label2id={label: i for i, label in enumerate(labels)},
            )
    except OSError as exc:
        raise ModelUnavailableError(f"cannot load model {encoder!r}: {exc}") from exc
    return tokenizer, model


def collect_labels(sentences: list[ConllSentence]) -> list[str]:
    """Deterministic label vocabulary: O first, the rest sorted."""
    seen = {tag for sentence in sentences for tag in sentence.tags}
    seen.discard("O")
    return ["O"] + sorted(seen)


def _encode(tokenizer, batch: list[ConllSentence], label2id, max_length):
    encoding = tokenizer(
        [sentence.tokens for sentence in batch],
        is_split_into_words=True,
        truncation=True,
        max_length=max_length,
        padding=True,
        return_tensors="pt",
    )
    labels = torch.full(encoding["input_ids"].shape, IGNORED_LABEL, dtype=torch.long)
    for i, sentence in enumerate(batch):
        previous_word = None
        for position, word in enumerate(encoding.word_ids(i)):
            if word is None or word == previous_word:
                continue
            labels[i, position] = label2id[sentence.tags[word]]
            previous_word = word
    return encoding, labels


def predict_tags(
    model, tokenizer, sentences: list[ConllSentence], max_length: int, batch_size: int = 32
) -> list[list[str]]:
    """Model tags for each sentence, one per input token (first-subtoken
    rule; tokens beyond the encoder's max length fall back to "O")."""
    id2label = {int(k): v for k, v in model.config.id2label.items()}
    model.eval()
    out: list[list[str]] = []
    with torch.no_grad():
        for start in range(0, len(sentences), batch_size):
            batch = sentences[start : start + batch_size]
            if not batch:
                continue
            encoding = tokenizer(
                [sentence.tokens for sentence in batch],
                is_split_into_words=True,
                truncation=True,
                max_length=max_length,
                padding=True,
                return_tensors="pt",
            )
            predictions = model(**encoding).logits.argmax(dim=-1)
            for i, sentence in enumerate(batch):
                tags = ["O"] * len(sentence.tokens)
                previous_word = None
                for position, word in enumerate(encoding.word_ids(i)):
                    if word is None or word == previous_word:
                        continue
                    tags[word] = id2label[int(predictions[i, position])]
                    previous_word = word
                out.append(tags)
    return out


def train(
    train_path: str | os.PathLike,
    dev_path: str | os.PathLike,
    config: TrainConfig,
    model_dir: str | os.PathLike,
) -> Path:
    """Fine-tune for config.epochs, evaluating on the dev set after every
    epoch, and persist the checkpoint with the best dev span F1."""
    from .spanf1 import span_f1

    train_sentences = list(iter_sentences(read_conll_file(train_path)))
    dev_sentences = list(iter_sentences(read_conll_file(dev_path)))
    if not train_sentences:
        raise ConllFormatError(f"{train_path}: no training sentences")
    if not dev_sentences:
        raise ConllFormatError(f"{dev_path}: no dev sentences")

    labels = collect_labels(train_sentences + dev_sentences)
    label2id = {label: i for i, label in enumerate(labels)}
    tokenizer, model = load_tokenizer_and_model(config.encoder, labels)

    torch.manual_seed(config.seed)
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)
    shuffler = random.Random(config.seed)
    gold_dev_tags = [sentence.tags for sentence in dev_sentences]

    history: list[dict] = []
    best_f1 = -1.0
    best_epoch = 0
    best_state = None
    for epoch in range(1, config.epochs + 1):
        model.train()
        order = list(range(len(train_sentences)))
        shuffler.shuffle(order)
        epoch_loss = 0.0
        for start in range(0, len(order), config.batch_size):
            batch = [train_sentences[i] for i in order[start : start + config.batch_size]]
            encoding, label_ids = _encode(tokenizer, batch, label2id, config.max_length)
            optimizer.zero_grad()
            output = model(**encoding, labels=label_ids)
            output.loss.backward()
            optimizer.step()
            epoch_loss += float(output.loss.detach())

        dev_tags = predict_tags(model, tokenizer, dev_sentences, config.max_length)
        dev_f1 = span_f1(dev_tags, gold_dev_tags)
        history.append({"epoch": epoch, "loss": round(epoch_loss, 4), "dev_f1": round(dev_f1, 4)})
        logger.info("epoch %d: loss %.4f, dev span F1 %.4f", epoch, epoch_loss, dev_f1)
        if dev_f1 > best_f1:
            best_f1 = dev_f1
            best_epoch = epoch
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}

    model.load_state_dict(best_state)
    model_dir = Path(model_dir)
    model_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(model_dir)
    tokenizer.save_pretrained(model_dir)
    log = {
        **asdict(config),
        "selection_metric": "dev span F1",
        "labels": labels,
        "epoch_log": history,
        "best_epoch": best_epoch,
        "best_dev_f1": round(best_f1, 4),
    }
    (model_dir / "training_log.json").write_text(
        json.dumps(log, indent=2) + "\n", encoding="utf-8"
    )
    logger.info("saved best checkpoint (epoch %d, dev F1 %.4f) to %s", best_epoch, best_f1, model_dir)
    return model_dir
