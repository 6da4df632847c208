"""lore_trainer: thin adapter that fine-tunes an off-the-shelf transformer
token classifier on CoNLL corpora and writes token-aligned predictions."""

from .conll import (
    ConllDocument,
    ConllSentence,
    iter_sentences,
    read_conll_file,
    with_tags,
    write_conll_file,
)
from .errors import ConllFormatError, ModelUnavailableError, TrainerError
from .inference import (
    DEFAULT_ZERO_SHOT_MODEL,
    load_pretrained_predictor,
    predict,
    zero_shot_predict,
)
from .spanf1 import decode_spans, span_f1
from .training import TrainConfig, collect_labels, load_tokenizer_and_model, train

__version__ = "0.1.0"
