"""Prediction: tag CoNLL files with a fine-tuned model, or with a
pretrained general-domain NER model for the zero-shot baseline."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Callable, Sequence

from .conll import iter_sentences, read_conll_file, with_tags, write_conll_file
from .training import load_tokenizer_and_model, predict_tags

logger = logging.getLogger(__name__)

# any general-domain NER model with a PER/LOC/ORG/MISC tagset works here
DEFAULT_ZERO_SHOT_MODEL = "dslim/bert-base-NER"

Predictor = Callable[[Sequence[str]], list[str]]


def predict(
    model_dir: str | os.PathLike,
    input_path: str | os.PathLike,
    output_path: str | os.PathLike,
) -> Path:
    """Tag input_path with a trained model. The output carries the input's
    token column and document structure unchanged; input tags are ignored."""
    tokenizer, model = load_tokenizer_and_model(str(model_dir))
    max_length = _trained_max_length(model_dir)
    documents = read_conll_file(input_path)
    sentences = list(iter_sentences(documents))
    tags = predict_tags(model, tokenizer, sentences, max_length)
    write_conll_file(with_tags(documents, tags), output_path)
    logger.info("tagged %d sentences -> %s", len(sentences), output_path)
    return Path(output_path)


def _trained_max_length(model_dir: str | os.PathLike) -> int:
    log_path = Path(model_dir) / "training_log.json"
    if log_path.is_file():
        return int(json.loads(log_path.read_text(encoding="utf-8"))["max_length"])
    return 256


def load_pretrained_predictor(model_name: str = DEFAULT_ZERO_SHOT_MODEL) -> Predictor:
    """Wrap a pretrained token-classification model as tokens -> tags.
    Raises ModelUnavailableError when the model cannot be loaded (offline)."""
    tokenizer, model = load_tokenizer_and_model(model_name)

    def predictor(tokens: Sequence[str]) -> list[str]:
        from .conll import ConllSentence

        sentence = ConllSentence(tokens=list(tokens), tags=["O"] * len(tokens))
        return predict_tags(model, tokenizer, [sentence], max_length=512)[0]

    return predictor


def zero_shot_predict(
    input_path: str | os.PathLike,
    output_path: str | os.PathLike,
    model_name: str = DEFAULT_ZERO_SHOT_MODEL,
    predictor: Predictor | None = None,
) -> Path:
    """Tag input_path with a pretrained general-domain NER model, keeping
    its generic tagset (PER, LOC, ORG, MISC). Scoring those predictions
    against domain gold is then a label-remap away on the corpus side."""
    if predictor is None:
        predictor = load_pretrained_predictor(model_name)
    documents = read_conll_file(input_path)
    sentences = list(iter_sentences(documents))
    tags = [predictor(sentence.tokens) for sentence in sentences]
    write_conll_file(with_tags(documents, tags), output_path)
    logger.info("zero-shot tagged %d sentences -> %s", len(sentences), output_path)
    return Path(output_path)
