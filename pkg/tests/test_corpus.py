import csv

import pytest
from hypothesis import given, settings, strategies as st

from tweetsent import corpus
from tweetsent.errors import DataError, ParseError


def write_rows(path, rows):
    with open(path, "w", encoding="latin-1", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_ALL)
        writer.writerows(rows)


def six(target, text, row_id=1):
    return [target, row_id, "Mon Apr 06 22:19:45 PDT 2009", "NO_QUERY",
            "someone", text]


class TestLoad:
    def test_reads_in_file_order(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(path, [six("0", "so bad"), six("4", "so good")])
        rows = corpus.load_sentiment140(path)
        assert [(t.label, t.text) for t in rows] == [(0, "so bad"),
                                                     (1, "so good")]

    def test_latin1_text_survives(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(path, [six("0", "caf\xe9 time")])
        assert corpus.load_sentiment140(path)[0].text == "caf\xe9 time"

    def test_commas_and_quotes_in_text(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(path, [six("4", 'she said "hi, there"')])
        assert corpus.load_sentiment140(path)[0].text == 'she said "hi, there"'

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(path, [six("0", "fine"), ["4", "only", "three"]])
        with pytest.raises(ParseError, match="row 2"):
            corpus.load_sentiment140(path)

    def test_bad_target(self, tmp_path):
        path = tmp_path / "t.csv"
        write_rows(path, [six("2", "neutral is not allowed")])
        with pytest.raises(DataError, match="row 1"):
            corpus.load_sentiment140(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            corpus.load_sentiment140(tmp_path / "absent.csv")


def make_data(n_neg, n_pos):
    return ([corpus.LabeledTweet(f"neg {i}", 0) for i in range(n_neg)]
            + [corpus.LabeledTweet(f"pos {i}", 1) for i in range(n_pos)])


class TestSampleAndSplit:
    def test_sizes_and_balance(self):
        split = corpus.sample_and_split(make_data(600, 600), 1000,
                                        train_fraction=0.7, seed=0)
        assert len(split.train) == 700
        assert len(split.test) == 300
        assert sum(t.label for t in split.train) == 350
        assert sum(t.label for t in split.test) == 150

    def test_odd_sample_size(self):
        split = corpus.sample_and_split(make_data(600, 600), 1001, seed=0)
        labels = [t.label for t in split.train] + [t.label for t in split.test]
        assert labels.count(0) == 500
        assert labels.count(1) == 501

    def test_no_duplicates(self):
        split = corpus.sample_and_split(make_data(600, 600), 1000, seed=1)
        texts = [t.text for t in split.train] + [t.text for t in split.test]
        assert len(set(texts)) == len(texts)

    def test_deterministic(self):
        data = make_data(500, 500)
        a = corpus.sample_and_split(data, 600, seed=9)
        b = corpus.sample_and_split(data, 600, seed=9)
        assert [t.text for t in a.train] == [t.text for t in b.train]
        assert [t.text for t in a.test] == [t.text for t in b.test]

    def test_seed_changes_sample(self):
        data = make_data(500, 500)
        a = corpus.sample_and_split(data, 600, seed=1)
        b = corpus.sample_and_split(data, 600, seed=2)
        assert [t.text for t in a.train] != [t.text for t in b.train]

    def test_capacity_errors(self):
        with pytest.raises(DataError):
            corpus.sample_and_split(make_data(10, 10), 100, seed=0)
        with pytest.raises(DataError):
            corpus.sample_and_split(make_data(3, 100), 100, seed=0)

    def test_single_class_rejected(self):
        with pytest.raises(DataError):
            corpus.sample_and_split(make_data(0, 100), 10, seed=0)

    def test_degenerate_fraction_rejected(self):
        data = make_data(50, 50)
        with pytest.raises(DataError):
            corpus.sample_and_split(data, 10, train_fraction=0.0, seed=0)
        with pytest.raises(DataError):
            corpus.sample_and_split(data, 10, train_fraction=1.0, seed=0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=4, max_value=60),
           st.integers(min_value=0, max_value=2**31))
    def test_partition_property(self, sample_size, seed):
        data = make_data(80, 80)
        split = corpus.sample_and_split(data, sample_size, seed=seed)
        assert len(split.train) + len(split.test) == sample_size
        labels = [t.label for t in split.train] + [t.label for t in split.test]
        assert labels.count(0) == sample_size // 2


class TestSplitJson:
    def test_round_trip(self, small_split):
        text = small_split.to_json()
        back = corpus.SplitCorpus.from_json(text)
        assert back.seed == small_split.seed
        assert [t.text for t in back.train] == [t.text for t in small_split.train]
        assert [t.label for t in back.test] == [t.label for t in small_split.test]
        assert back.sample_size == small_split.sample_size

    def test_schema_keys(self, small_split):
        import json
        payload = json.loads(small_split.to_json())
        assert set(payload) == {"seed", "train", "test"}
        assert set(payload["train"][0]) == {"text", "label"}
