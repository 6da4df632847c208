"""Test helpers: a locally built tiny encoder (the sandbox has no hub
access) and a memorizable synthetic corpus over a small monster roster."""

from __future__ import annotations

import random
from pathlib import Path

import torch

from lore_trainer.conll import ConllDocument, ConllSentence

NAMES = [
    "goblin", "ettin", "owlbear", "harpy", "kobold", "troll", "ogre",
    "zombie", "basilisk", "wyvern", "banshee", "ghoul", "mimic", "unicorn",
    "bandit", "lich", "specter", "imp", "steam mephit", "dust devil",
]

PLACES = ["marsh", "ruins", "caverns", "harbor", "keep", "mines"]

TEMPLATES = [
    ("the", None, "stalks", "the", "PLACE", "."),
    ("a", None, "guards", "the", "PLACE", "."),
    ("travellers", "fear", "the", None, "."),
    ("the", "PLACE", "hides", "a", None, "."),
    ("no", "one", "survives", "the", None, "."),
    ("the", None, "and", "the", None, "met", "."),
]

FILLER_TEMPLATES = [
    ("the", "PLACE", "is", "quiet", "."),
    ("rain", "falls", "on", "the", "PLACE", "."),
]


def build_tiny_encoder(target_dir: Path, texts: list[str]) -> Path:
    """Small BERT with a WordPiece tokenizer trained on the given texts;
    randomly initialized weights, saved as a local from_pretrained source."""
    from tokenizers import Tokenizer, models, pre_tokenizers
    from tokenizers.trainers import WordPieceTrainer
    from transformers import BertConfig, BertModel, PreTrainedTokenizerFast

    tokenizer = Tokenizer(models.WordPiece(unk_token="[UNK]"))
    tokenizer.pre_tokenizer = pre_tokenizers.Whitespace()
    tokenizer.train_from_iterator(
        texts,
        WordPieceTrainer(
            vocab_size=600,
            special_tokens=["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"],
        ),
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )
    config = BertConfig(
        vocab_size=fast.vocab_size + 8,
        hidden_size=64,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=128,
        max_position_embeddings=512,
    )
    torch.manual_seed(7)
    BertModel(config).save_pretrained(target_dir)
    fast.save_pretrained(target_dir)
    return Path(target_dir)


def make_sentence(rng: random.Random, names: list[str]) -> ConllSentence:
    if rng.random() < 0.2:
        template = rng.choice(FILLER_TEMPLATES)
    else:
        template = rng.choice(TEMPLATES)
    tokens: list[str] = []
    tags: list[str] = []
    for slot in template:
        if slot is None:
            name_tokens = rng.choice(names).split()
            tokens.extend(name_tokens)
            tags.append("B-MONS")
            tags.extend("I-MONS" for _ in name_tokens[1:])
        elif slot == "PLACE":
            tokens.append(rng.choice(PLACES))
            tags.append("O")
        else:
            tokens.append(slot)
            tags.append("O")
    return ConllSentence(tokens=tokens, tags=tags)


def make_corpus(rng: random.Random, n_sentences: int, names: list[str] = NAMES,
                sentences_per_doc: int = 8) -> list[ConllDocument]:
    documents: list[ConllDocument] = []
    for index in range(0, n_sentences, sentences_per_doc):
        count = min(sentences_per_doc, n_sentences - index)
        documents.append(
            ConllDocument(
                owner=f"block {index // sentences_per_doc}",
                sentences=[make_sentence(rng, names) for _ in range(count)],
            )
        )
    return documents


def corpus_texts(documents: list[ConllDocument]) -> list[str]:
    return [
        " ".join(sentence.tokens)
        for doc in documents
        for sentence in doc.sentences
    ]


def token_column(conll_text: str) -> list[str]:
    """Marker lines, blank lines and the first field of token lines; the
    part of a CoNLL file a predictor must not touch."""
    column = []
    for line in conll_text.split("\n"):
        if line.startswith("# doc:") or not line.strip():
            column.append(line)
        else:
            column.append(line.split()[0])
    return column
