import json
import random

import pytest

from lore_trainer.cli import main
from lore_trainer.conll import read_conll_file, write_conll_file

from support import build_tiny_encoder, corpus_texts, make_corpus


@pytest.fixture(scope="module")
def cli_setup(tmp_path_factory):
    base = tmp_path_factory.mktemp("cli")
    rng = random.Random(5)
    train_docs = make_corpus(rng, 32)
    write_conll_file(train_docs, base / "train.conll")
    write_conll_file(make_corpus(rng, 8), base / "dev.conll")
    encoder = build_tiny_encoder(base / "encoder", corpus_texts(train_docs))
    return base, encoder


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCli:
    def test_train_then_predict(self, cli_setup, tmp_path, capsys):
        base, encoder = cli_setup
        code, _, _ = run(
            capsys, "train", "--train", base / "train.conll", "--dev", base / "dev.conll",
            "--encoder", encoder, "--out", tmp_path / "model",
            "--epochs", "1", "--batch-size", "8",
        )
        assert code == 0
        assert (tmp_path / "model" / "training_log.json").is_file()

        code, _, _ = run(
            capsys, "predict", "--model", tmp_path / "model",
            "--input", base / "dev.conll", "-o", tmp_path / "pred.conll",
        )
        assert code == 0
        predicted = read_conll_file(tmp_path / "pred.conll")
        original = read_conll_file(base / "dev.conll")
        assert [s.tokens for d in predicted for s in d.sentences] == [
            s.tokens for d in original for s in d.sentences
        ]

    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "train", "--train", "x")
        assert code == 1

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "explode")
        assert code == 1

    def test_bad_conll_is_data_error(self, cli_setup, tmp_path, capsys):
        base, encoder = cli_setup
        bad = tmp_path / "bad.conll"
        bad.write_text("one two three\n", encoding="utf-8")
        code, _, err = run(
            capsys, "train", "--train", bad, "--dev", base / "dev.conll",
            "--encoder", encoder, "--out", tmp_path / "m",
        )
        assert code == 2

    def test_missing_model_is_load_error(self, cli_setup, tmp_path, capsys):
        base, _ = cli_setup
        code, _, err = run(
            capsys, "predict", "--model", tmp_path / "nonexistent",
            "--input", base / "dev.conll", "-o", tmp_path / "p.conll",
        )
        assert code == 3
        assert "cannot load model" in err

    def test_zero_shot_unavailable_offline(self, cli_setup, tmp_path, capsys):
        base, _ = cli_setup
        code, _, err = run(
            capsys, "zero-shot", "--input", base / "dev.conll", "-o", tmp_path / "z.conll"
        )
        assert code == 3
        assert "cannot load model" in err
