"""Synthetic tweet corpus in the classic six-column sentiment CSV layout.

Produces a balanced two-class corpus whose difficulty profile matches the
benchmarks this toolkit reproduces: a lexical (unigram) sentiment signal
diluted by label noise, word-level polarity pollution, a heavy tail of
rare sentiment words, and tweet-style surface noise (mentions, URLs,
hashtags, emoticons, digits, mixed case) that the cleaning pipeline is
expected to strip. A small fraction of rows clean to an empty token list
on purpose.

Rows are written latin-1, fully quoted, with the historical column order
target(0/4), id, date, flag, user, text. The word inventory is driven by
`language_seed` and row sampling by `seed`, so corpora drawn with
different seeds still share one language.

Not a model component: this module only manufactures data with known
statistics so the rest of the toolkit can be exercised end to end when
the real corpus is not on disk.
"""

import argparse
import csv
from dataclasses import dataclass, field

import numpy as np

_VOWELS = list("aeiou")
_CONSONANTS = list("bcdfghjklmnpqrstvwz")
_EMOTICONS_POS = [":)", ":D", ";)", ":-)", "=)", "<3"]
_EMOTICONS_NEG = [":(", ":-(", "D:", ":'(", "=("]
_PUNCT = ["!", ".", ",", "?", "!!", "..."]
_DATES = ["Mon Apr 06 22:19:45 PDT 2009", "Sun May 31 08:12:03 PDT 2009",
          "Sat Jun 06 13:40:21 PDT 2009", "Tue Apr 21 02:55:10 PDT 2009"]


@dataclass
class SynthConfig:
    # language inventory
    language_seed: int = 20090406
    neutral_types: int = 5000
    neutral_zipf: float = 1.22
    common_sentiment_types: int = 1100
    rare_sentiment_types: int = 400
    common_sentiment_mass: float = 0.70
    sentiment_zipf: float = 0.80
    # per-tweet statistics
    mean_extra_words: float = 9.0
    min_words: int = 3
    long_tail_prob: float = 0.004
    sentiment_prob: float = 0.35
    hapax_prob: float = 0.0
    word_pollution: float = 0.10
    label_flip: float = 0.26
    flip_signal_scale: float = 0.5
    # surface noise (removed by cleaning)
    mention_prob: float = 0.18
    url_prob: float = 0.08
    hashtag_prob: float = 0.10
    emoticon_prob: float = 0.15
    digit_prob: float = 0.04
    punct_prob: float = 0.12
    case_prob: float = 0.06
    empty_prob: float = 0.003


def _word(rng, min_syl=2, max_syl=4) -> str:
    n = int(rng.integers(min_syl, max_syl + 1))
    parts = []
    for _ in range(n):
        parts.append(rng.choice(_CONSONANTS) + rng.choice(_VOWELS))
    if rng.random() < 0.3:
        parts.append(rng.choice(_CONSONANTS))
    return "".join(parts)


def _word_pool(rng, count, taken) -> list:
    pool = []
    while len(pool) < count:
        w = _word(rng)
        if w not in taken:
            taken.add(w)
            pool.append(w)
    return pool


def _zipf_probs(count, exponent) -> np.ndarray:
    ranks = np.arange(1, count + 1, dtype=np.float64)
    p = ranks ** -exponent
    return p / p.sum()


@dataclass
class _Language:
    neutral: list
    neutral_p: np.ndarray
    pos_words: list
    neg_words: list
    sentiment_p: np.ndarray
    handles: list
    noise_words: list


def _build_language(cfg: SynthConfig) -> _Language:
    rng = np.random.default_rng(cfg.language_seed)
    taken = set()
    neutral = _word_pool(rng, cfg.neutral_types, taken)
    n_sent = cfg.common_sentiment_types + cfg.rare_sentiment_types
    pos_words = _word_pool(rng, n_sent, taken)
    neg_words = _word_pool(rng, n_sent, taken)

    # split the sentiment mass between a learnable head of common words
    # and a long tail of rare ones
    common_p = _zipf_probs(cfg.common_sentiment_types, cfg.sentiment_zipf)
    rare_p = _zipf_probs(cfg.rare_sentiment_types, cfg.sentiment_zipf)
    sentiment_p = np.concatenate([
        common_p * cfg.common_sentiment_mass,
        rare_p * (1.0 - cfg.common_sentiment_mass)])

    handles = [_word(rng) + str(int(rng.integers(1, 999)))
               for _ in range(200)]
    noise_words = _word_pool(rng, 300, taken)
    return _Language(neutral=neutral,
                     neutral_p=_zipf_probs(cfg.neutral_types, cfg.neutral_zipf),
                     pos_words=pos_words, neg_words=neg_words,
                     sentiment_p=sentiment_p, handles=handles,
                     noise_words=noise_words)


def _surface(word, rng, cfg: SynthConfig) -> str:
    roll = rng.random()
    if roll < cfg.case_prob / 2:
        word = word.upper()
    elif roll < cfg.case_prob:
        word = word.capitalize()
    if rng.random() < cfg.punct_prob:
        word = word + rng.choice(_PUNCT)
    return word


def _noise_token(kind, rng, lang: _Language) -> str:
    if kind == "mention":
        return "@" + rng.choice(lang.handles)
    if kind == "url":
        tail = "".join(rng.choice(list("abcdefghij0123456789"), size=7))
        return "http://t.co/" + tail
    if kind == "digit":
        return str(int(rng.integers(0, 9999)))
    raise ValueError(kind)


def _one_tweet(label, rng, cfg: SynthConfig, lang: _Language):
    """Text for one tweet with the given recorded label (0 or 1)."""
    if rng.random() < cfg.empty_prob:
        pieces = [_noise_token("mention", rng, lang),
                  _noise_token("digit", rng, lang),
                  _noise_token("url", rng, lang),
                  rng.choice(_EMOTICONS_POS if label == 1 else _EMOTICONS_NEG)]
        return " ".join(pieces)

    # a flipped tweet reads like the opposite class; its label stays put
    flipped_tweet = rng.random() < cfg.label_flip
    base = 1 - label if flipped_tweet else label
    n_words = cfg.min_words + int(rng.poisson(cfg.mean_extra_words))
    if rng.random() < cfg.long_tail_prob:
        n_words += int(rng.integers(40, 65))

    # flipped tweets can carry a diluted version of the opposite-class
    # signal, which keeps them mislabeled but lowers their pull on the
    # shared sentiment statistics
    p_sent = cfg.sentiment_prob * (cfg.flip_signal_scale if flipped_tweet
                                   else 1.0)
    is_sent = rng.random(n_words) < p_sent
    flip_word = rng.random(n_words) < cfg.word_pollution
    n_neutral = int(n_words - is_sent.sum())
    neutral_draw = iter(rng.choice(len(lang.neutral), size=max(n_neutral, 1),
                                   p=lang.neutral_p))
    words = []
    for sent, flipped in zip(is_sent, flip_word):
        if sent:
            polarity = base if not flipped else 1 - base
            pool = lang.pos_words if polarity == 1 else lang.neg_words
            idx = int(rng.choice(len(pool), p=lang.sentiment_p))
            words.append(pool[idx])
        elif rng.random() < cfg.hapax_prob:
            # effectively one-off coinage; almost never recurs in the corpus
            words.append(_word(rng, 3, 5))
        else:
            words.append(lang.neutral[int(next(neutral_draw))])

    pieces = [_surface(w, rng, cfg) for w in words]
    if rng.random() < cfg.hashtag_prob:
        tag = (rng.choice(words) if rng.random() < 0.5
               else rng.choice(lang.noise_words))
        pieces.append("#" + tag)
    if rng.random() < cfg.mention_prob:
        pieces.insert(0, _noise_token("mention", rng, lang))
    if rng.random() < cfg.url_prob:
        pieces.append(_noise_token("url", rng, lang))
    if rng.random() < cfg.digit_prob:
        pieces.insert(int(rng.integers(0, len(pieces) + 1)),
                      _noise_token("digit", rng, lang))
    if rng.random() < cfg.emoticon_prob:
        table = _EMOTICONS_POS if base == 1 else _EMOTICONS_NEG
        pieces.append(rng.choice(table))
    return " ".join(pieces)


def generate_rows(n_rows, seed, cfg: SynthConfig | None = None):
    """Balanced (target04, text) pairs in shuffled order."""
    cfg = cfg or SynthConfig()
    lang = _build_language(cfg)
    rng = np.random.default_rng(seed)
    half = n_rows // 2
    labels = np.array([0] * half + [1] * (n_rows - half))
    rng.shuffle(labels)
    rows = []
    for label in labels:
        text = _one_tweet(int(label), rng, cfg, lang)
        rows.append((4 if label == 1 else 0, text))
    return rows


def write_csv(path, n_rows=40000, seed=7, cfg: SynthConfig | None = None):
    """Write the six-column CSV; returns the row count."""
    cfg = cfg or SynthConfig()
    rows = generate_rows(n_rows, seed, cfg)
    rng = np.random.default_rng(seed + 1)
    lang = _build_language(cfg)
    with open(path, "w", encoding="latin-1", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_ALL)
        for row_id, (target, text) in enumerate(rows, start=1467810000):
            writer.writerow([target, row_id, rng.choice(_DATES), "NO_QUERY",
                             rng.choice(lang.handles), text])
    return len(rows)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Generate a synthetic sentiment CSV in the six-column "
                    "tweet corpus layout.")
    parser.add_argument("out", help="output CSV path")
    parser.add_argument("--rows", type=int, default=40000)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args(argv)
    n = write_csv(args.out, n_rows=args.rows, seed=args.seed)
    print(f"wrote {n} rows to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
