import json

import pytest
from hypothesis import given, strategies as st

from tweetsent import textprep
from tweetsent.errors import DataError


class TestClean:
    def test_urls_mentions_punct(self):
        assert textprep.clean("Check http://t.co/xyz NOW @bob!!") == "check now"

    def test_empty(self):
        assert textprep.clean("") == ""

    def test_hashtag_digits_emoticon(self):
        assert textprep.clean("#Happy2023 :)") == "happy"

    def test_url_eats_to_whitespace(self):
        assert textprep.clean("see https://a.b/c?d=1,e here") == "see here"

    def test_whitespace_collapse_and_trim(self):
        assert textprep.clean("  a\t b \n c ") == "a b c"

    def test_non_ascii_removed(self):
        assert textprep.clean("café naïve") == "caf nave"

    @given(st.text(max_size=200))
    def test_idempotent(self, text):
        once = textprep.clean(text)
        assert textprep.clean(once) == once

    @given(st.text(max_size=200))
    def test_output_charset(self, text):
        cleaned = textprep.clean(text)
        assert all(c.islower() or c == " " for c in cleaned) or cleaned == ""
        assert "  " not in cleaned
        assert cleaned == cleaned.strip()


class TestTokenize:
    def test_split(self):
        assert textprep.tokenize("check now") == ["check", "now"]

    def test_empty(self):
        assert textprep.tokenize("") == []

    def test_duplicates_preserved(self):
        assert textprep.tokenize("a a a") == ["a", "a", "a"]

    @given(st.text(max_size=200))
    def test_tokens_are_clean_words(self, text):
        for tok in textprep.tokenize(textprep.clean(text)):
            assert tok
            assert tok.isascii() and tok.isalpha() and tok.islower()


class TestVocabulary:
    def test_first_appearance_order(self):
        vocab = textprep.build_vocabulary([["good", "day"], ["good"]])
        assert vocab.size == 4
        assert vocab.index_of["good"] == 2
        assert vocab.index_of["day"] == 3
        assert vocab.index_of[textprep.PAD_TOKEN] == textprep.PAD_INDEX
        assert vocab.index_of[textprep.UNK_TOKEN] == textprep.UNK_INDEX

    def test_bijection(self):
        vocab = textprep.build_vocabulary([["a", "b", "c"], ["b", "d"]])
        assert sorted(vocab.index_of.values()) == list(range(vocab.size))
        for tok, idx in vocab.index_of.items():
            assert vocab.tokens[idx] == tok

    def test_deterministic(self):
        seqs = [["x", "y"], ["z", "x"]]
        a = textprep.build_vocabulary(seqs)
        b = textprep.build_vocabulary(seqs)
        assert a.index_of == b.index_of

    def test_empty_corpus_rejected(self):
        with pytest.raises(DataError):
            textprep.build_vocabulary([])
        with pytest.raises(DataError):
            textprep.build_vocabulary([[], []])


class TestEncode:
    @pytest.fixture
    def vocab(self):
        return textprep.build_vocabulary([["good", "day"], ["good"]])

    def test_pad(self, vocab):
        enc = textprep.encode(["good", "day"], vocab, 4)
        assert enc.indices == [2, 3, 0, 0]
        assert enc.true_len == 2

    def test_unk(self, vocab):
        enc = textprep.encode(["zzz"], vocab, 2)
        assert enc.indices == [1, 0]
        assert enc.true_len == 1

    def test_truncate_keeps_first(self, vocab):
        seq = ["good", "day"] * 30
        enc = textprep.encode(seq, vocab, 50)
        assert enc.true_len == 50
        assert len(enc.indices) == 50
        assert enc.indices == [vocab.index_of[t] for t in seq[:50]]

    @given(st.lists(st.sampled_from(["good", "day"]), max_size=12),
           st.integers(min_value=1, max_value=15))
    def test_round_trip(self, seq, max_len):
        vocab = textprep.build_vocabulary([["good", "day"]])
        enc = textprep.encode(seq, vocab, max_len)
        assert len(enc.indices) == max_len
        decoded = [vocab.tokens[i] for i in enc.indices[:enc.true_len]]
        assert decoded == seq[:max_len]
        assert all(i == textprep.PAD_INDEX for i in enc.indices[enc.true_len:])

    def test_encoding_test_data_never_mutates_vocab(self, vocab):
        before = dict(vocab.index_of)
        textprep.encode(["brand", "new", "words"], vocab, 5)
        assert vocab.index_of == before


class TestVocabJson:
    def test_round_trip(self, tmp_path):
        vocab = textprep.build_vocabulary([["alpha", "beta"], ["gamma"]])
        path = tmp_path / "vocab.json"
        textprep.write_vocab_json(vocab, 50, path)
        loaded, max_len = textprep.read_vocab_json(path)
        assert max_len == 50
        assert loaded.index_of == vocab.index_of
        assert loaded.tokens == vocab.tokens

    def test_schema(self, tmp_path):
        vocab = textprep.build_vocabulary([["alpha", "beta"]])
        path = tmp_path / "vocab.json"
        textprep.write_vocab_json(vocab, 50, path)
        payload = json.loads(path.read_text())
        assert payload["pad_index"] == 0
        assert payload["unk_index"] == 1
        assert payload["max_len"] == 50
        assert payload["tokens"] == {"alpha": 2, "beta": 3}
        # keys sorted by index for diff stability
        assert list(payload["tokens"].values()) == sorted(payload["tokens"].values())
