"""Acceptance: the trainer consumes and produces the corpus tooling's CoNLL
files end to end, and a small encoder fine-tuned per TrainConfig memorizes a
synthetic gazetteer corpus to >= 90 span F1 as measured by the corpus
tooling's own scorer (invoked through its CLI)."""

import json
import random
import re
import subprocess
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from lore_trainer.conll import read_conll_file, write_conll_file
from lore_trainer.errors import ModelUnavailableError
from lore_trainer.inference import predict
from lore_trainer.training import TrainConfig, load_tokenizer_and_model, train

from support import build_tiny_encoder, corpus_texts, make_corpus, token_column

FIXTURES = Path(__file__).resolve().parent.parent.parent / "fixtures"
VALID_TAG = re.compile(r"^(O|[BI]-.+)$")


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}")


def loretag(*argv):
    return subprocess.run(
        ["loretag", *map(str, argv)], capture_output=True, text=True
    )


def test_trainer_contract_on_fixture_corpus(tmp_path):
    with criterion("trainer contract: 1-epoch train on fixture corpus, aligned output"):
        out_dir = tmp_path / "pipeline"
        completed = loretag(
            "pipeline", "--config", FIXTURES / "pipeline.ini", "--out-dir", out_dir
        )
        assert completed.returncode == 0, completed.stderr

        train_file = out_dir / "train.conll"
        dev_file = out_dir / "dev.conll"
        test_file = out_dir / "test.conll"
        texts = [" ".join(s.tokens) for s in
                 (s for d in read_conll_file(train_file) for s in d.sentences)]
        encoder = build_tiny_encoder(tmp_path / "encoder", texts)

        config = TrainConfig(encoder=str(encoder), epochs=1, batch_size=16)
        model_dir = train(train_file, dev_file, config, tmp_path / "model")
        assert (model_dir / "training_log.json").is_file()

        pred_file = predict(model_dir, test_file, tmp_path / "pred.conll")

        # token column and document structure byte-identical to the input
        assert token_column(pred_file.read_text(encoding="utf-8")) == token_column(
            test_file.read_text(encoding="utf-8")
        )
        # every emitted tag is inside the BIO grammar
        for doc in read_conll_file(pred_file):
            for sentence in doc.sentences:
                assert all(VALID_TAG.match(tag) for tag in sentence.tags)
        # the corpus tooling parses and scores the prediction file
        assert loretag("stats", "--input", pred_file).returncode == 0
        scored = loretag("score", "--pred", pred_file, "--gold", test_file)
        assert scored.returncode == 0, scored.stderr
        json.loads(scored.stdout)


def test_memorizable_corpus_reaches_f1_90(tmp_path):
    with criterion("memorization: 20-name corpus, TrainConfig defaults, F1 >= 90 (< 20 min)"):
        started = time.perf_counter()
        rng = random.Random(42)
        write_conll_file(make_corpus(rng, 400), tmp_path / "train.conll")
        write_conll_file(make_corpus(rng, 80), tmp_path / "dev.conll")
        write_conll_file(make_corpus(rng, 80), tmp_path / "test.conll")
        encoder = build_tiny_encoder(
            tmp_path / "encoder", corpus_texts(read_conll_file(tmp_path / "train.conll"))
        )

        config = TrainConfig(encoder=str(encoder))  # defaults: 25 epochs, batch 16
        model_dir = train(
            tmp_path / "train.conll", tmp_path / "dev.conll", config, tmp_path / "model"
        )
        pred_file = predict(model_dir, tmp_path / "test.conll", tmp_path / "pred.conll")

        scored = loretag("score", "--pred", pred_file, "--gold", tmp_path / "test.conll")
        assert scored.returncode == 0, scored.stderr
        report = json.loads(scored.stdout)
        assert report["f1"] >= 90.0, report

        log = json.loads((model_dir / "training_log.json").read_text())
        assert log["epochs"] == 25 and log["batch_size"] == 16

        elapsed = time.perf_counter() - started
        assert elapsed < 20 * 60, f"took {elapsed:.0f} s"


def test_pretrained_hub_encoder_if_reachable(tmp_path):
    """The criterion names a small *pretrained* encoder. The model hub is
    unreachable from this sandbox (verified: DNS resolution fails, no local
    cache), so this attempts the literal path and skips with the reason when
    loading fails; on a hub-enabled machine it runs the same memorization
    check with actually pretrained weights."""
    try:
        load_tokenizer_and_model("prajjwal1/bert-tiny", ["O", "B-MONS", "I-MONS"])
    except ModelUnavailableError as exc:
        pytest.skip(f"pretrained encoder unavailable in this environment: {exc}")

    rng = random.Random(42)
    write_conll_file(make_corpus(rng, 400), tmp_path / "train.conll")
    write_conll_file(make_corpus(rng, 80), tmp_path / "dev.conll")
    write_conll_file(make_corpus(rng, 80), tmp_path / "test.conll")
    config = TrainConfig(encoder="prajjwal1/bert-tiny")
    model_dir = train(
        tmp_path / "train.conll", tmp_path / "dev.conll", config, tmp_path / "model"
    )
    pred_file = predict(model_dir, tmp_path / "test.conll", tmp_path / "pred.conll")
    scored = loretag("score", "--pred", pred_file, "--gold", tmp_path / "test.conll")
    assert json.loads(scored.stdout)["f1"] >= 90.0


def test_remap_then_score_equals_label_equality_rule(tmp_path):
    """Scoring zero-shot output by remapping PER to MONS first is the same
    as scoring with a PER==MONS label-equality rule, checked on a hand-built
    five-sentence file against the corpus tooling's remap+score chain."""
    gold_rows = [
        (["The", "ettin", "waits"], ["O", "B-MONS", "O"]),
        (["A", "goblin", "and", "an", "imp"], ["O", "B-MONS", "O", "O", "B-MONS"]),
        (["Nothing", "here"], ["O", "O"]),
        (["steam", "mephit"], ["B-MONS", "I-MONS"]),
        (["harbor", "town"], ["O", "O"]),
    ]
    pred_rows = [
        (["The", "ettin", "waits"], ["O", "B-PER", "O"]),
        (["A", "goblin", "and", "an", "imp"], ["O", "B-PER", "O", "O", "B-LOC"]),
        (["Nothing", "here"], ["O", "B-PER"]),
        (["steam", "mephit"], ["B-PER", "I-PER"]),
        (["harbor", "town"], ["O", "O"]),
    ]
    from lore_trainer.conll import ConllDocument, ConllSentence
    from lore_trainer.spanf1 import decode_spans

    def write(rows, path):
        doc = ConllDocument(
            owner="Z",
            sentences=[ConllSentence(list(t), list(g)) for t, g in rows],
        )
        write_conll_file([doc], path)

    gold_path = tmp_path / "gold.conll"
    pred_path = tmp_path / "pred.conll"
    write(gold_rows, gold_path)
    write(pred_rows, pred_path)

    # route 1: loretag remap PER=MONS (drop others), then exact-span score
    remapped = tmp_path / "remapped.conll"
    assert loretag(
        "remap", "--input", pred_path, "--map", "PER=MONS", "-o", remapped
    ).returncode == 0
    scored = loretag("score", "--pred", remapped, "--gold", gold_path)
    report = json.loads(scored.stdout)

    # route 2: direct label-equality scoring with PER treated as MONS
    equal = {"PER": "MONS"}
    tp = fp = fn = 0
    for (_, pred_tags), (_, gold_tags) in zip(pred_rows, gold_rows):
        pred_spans = {
            (s, e, equal.get(label, label))
            for s, e, label in decode_spans(pred_tags)
            if label in ("PER", "MONS")
        }
        gold_spans = set(decode_spans(gold_tags))
        tp += len(pred_spans & gold_spans)
        fp += len(pred_spans - gold_spans)
        fn += len(gold_spans - pred_spans)
    assert (report["tp"], report["fp"], report["fn"]) == (tp, fp, fn)
