"""Sentiment140 ingestion, seeded sampling, and train/test splitting.

The published Sentiment140 CSV is headerless, Latin-1 encoded, with six
columns (target, id, date, flag, user, text) and target in {0, 4}.
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, ParseError

NEGATIVE = 0
POSITIVE = 1

_N_COLUMNS = 6
_TARGET_MAP = {"0": NEGATIVE, "4": POSITIVE}


@dataclass(frozen=True, slots=True)
class LabeledTweet:
    text: str
    label: int


@dataclass
class SplitCorpus:
    train: list[LabeledTweet]
    test: list[LabeledTweet]
    seed: int
    sample_size: int

    def to_json(self) -> str:
        payload = {
            "seed": self.seed,
            "train": [{"text": t.text, "label": t.label} for t in self.train],
            "test": [{"text": t.text, "label": t.label} for t in self.test],
        }
        return json.dumps(payload, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "SplitCorpus":
        payload = json.loads(text)
        train = [LabeledTweet(d["text"], d["label"]) for d in payload["train"]]
        test = [LabeledTweet(d["text"], d["label"]) for d in payload["test"]]
        return cls(train=train, test=test, seed=payload["seed"],
                   sample_size=len(train) + len(test))


def load_sentiment140(path) -> list[LabeledTweet]:
    """Read every row of a Sentiment140-format CSV in file order.

    Raises OSError for unreadable files, ParseError for rows with the
    wrong column count, DataError for targets outside {0, 4}.
    """
    tweets = []
    with open(Path(path), newline="", encoding="latin-1") as fh:
        reader = csv.reader(fh)
        for row_no, row in enumerate(reader, start=1):
            if len(row) != _N_COLUMNS:
                raise ParseError(
                    f"row {row_no}: expected {_N_COLUMNS} columns, got {len(row)}")
            target = row[0]
            if target not in _TARGET_MAP:
                raise DataError(f"row {row_no}: target {target!r} not in {{0, 4}}")
            tweets.append(LabeledTweet(text=row[5], label=_TARGET_MAP[target]))
    return tweets


def sample_and_split(data, sample_size, train_fraction=0.7, seed=0) -> SplitCorpus:
    """Draw a stratified sample without replacement and split it.

    Half of the sample comes from each class (negative gets the floor when
    sample_size is odd), and each class is split train/test separately so
    both partitions stay balanced. Deterministic for a fixed seed: class 0
    is drawn first, then class 1, then each partition is shuffled once.
    """
    if not 0 < train_fraction < 1:
        raise DataError(f"train_fraction must be in (0, 1), got {train_fraction}")
    if sample_size > len(data):
        raise DataError(
            f"sample_size {sample_size} exceeds corpus size {len(data)}")

    pools = {NEGATIVE: [], POSITIVE: []}
    for i, tweet in enumerate(data):
        pools[tweet.label].append(i)
    want = {NEGATIVE: sample_size // 2, POSITIVE: sample_size - sample_size // 2}
    for label, pool in pools.items():
        if not pool:
            raise DataError(f"class {label} absent from corpus, cannot stratify")
        if want[label] > len(pool):
            raise DataError(
                f"class {label} has {len(pool)} tweets, need {want[label]}")

    rng = np.random.default_rng(seed)
    train_idx, test_idx = [], []
    for label in (NEGATIVE, POSITIVE):
        pool = np.asarray(pools[label])
        picked = pool[rng.choice(len(pool), size=want[label], replace=False)]
        n_train = int(round(want[label] * train_fraction))
        train_idx.extend(picked[:n_train].tolist())
        test_idx.extend(picked[n_train:].tolist())
    if not train_idx or not test_idx:
        raise DataError("train_fraction leaves a partition empty at this sample size")
    rng.shuffle(train_idx)
    rng.shuffle(test_idx)

    return SplitCorpus(
        train=[data[i] for i in train_idx],
        test=[data[i] for i in test_idx],
        seed=seed,
        sample_size=sample_size,
    )
