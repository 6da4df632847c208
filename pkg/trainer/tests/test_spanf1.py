from lore_trainer.spanf1 import decode_spans, span_f1


class TestDecodeSpans:
    def test_basic(self):
        assert decode_spans(["O", "B-MONS", "I-MONS", "O"]) == {(1, 3, "MONS")}

    def test_orphan_i_opens_span(self):
        assert decode_spans(["I-MONS", "O"]) == {(0, 1, "MONS")}

    def test_label_switch(self):
        assert decode_spans(["B-PER", "I-MONS"]) == {(0, 1, "PER"), (1, 2, "MONS")}

    def test_adjacent_b(self):
        assert decode_spans(["B-X", "B-X"]) == {(0, 1, "X"), (1, 2, "X")}


class TestSpanF1:
    def test_perfect(self):
        tags = [["B-MONS", "I-MONS", "O"]]
        assert span_f1(tags, tags) == 1.0

    def test_no_overlap(self):
        assert span_f1([["B-MONS", "O"]], [["O", "B-MONS"]]) == 0.0

    def test_zero_convention(self):
        assert span_f1([["O"]], [["O"]]) == 0.0

    def test_half(self):
        pred = [["B-MONS", "O", "B-MONS", "O"]]
        gold = [["B-MONS", "O", "O", "B-MONS"]]
        assert span_f1(pred, gold) == 0.5
