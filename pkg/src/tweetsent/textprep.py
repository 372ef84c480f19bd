"""Tweet text normalization, tokenization, vocabulary, and index encoding.

Cleaning lowercases, strips URLs, @mentions, hashtag markers, digits,
punctuation, and non-ASCII characters, in that order, then collapses
whitespace. Tokens are therefore lowercase ASCII words. The neural path
encodes tokens to fixed-length index sequences against a vocabulary built
from training data only, with PAD=0 and UNK=1 reserved.
"""

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError

PAD_INDEX = 0
UNK_INDEX = 1
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
DEFAULT_MAX_LEN = 50

TokenSeq = list[str]

_URL_RE = re.compile(r"http\S+")
_MENTION_RE = re.compile(r"@\w+")
_NON_ALPHA_RE = re.compile(r"[^a-z\s]")
_WS_RE = re.compile(r"\s+")


def clean(text: str) -> str:
    """Normalize raw tweet text to lowercase space-separated ASCII words."""
    text = text.lower()
    text = _URL_RE.sub("", text)
    text = _MENTION_RE.sub("", text)
    text = text.replace("#", "")
    text = _NON_ALPHA_RE.sub("", text)
    return _WS_RE.sub(" ", text).strip()


def tokenize(cleaned: str) -> TokenSeq:
    """Split cleaned text on spaces; empty input yields an empty list."""
    return cleaned.split()


@dataclass
class Vocabulary:
    """Bijective token-to-index mapping with PAD and UNK reserved at 0 and 1."""

    index_of: dict[str, int]
    tokens: list[str]
    pad_index: int = PAD_INDEX
    unk_index: int = UNK_INDEX

    @property
    def size(self) -> int:
        return len(self.tokens)

    def lookup(self, token: str) -> int:
        return self.index_of.get(token, self.unk_index)


@dataclass
class EncodedSeq:
    indices: list[int]
    true_len: int


def build_vocabulary(train_seqs) -> Vocabulary:
    """Assign indices 2.. to distinct training tokens in first-appearance order."""
    index_of = {PAD_TOKEN: PAD_INDEX, UNK_TOKEN: UNK_INDEX}
    tokens = [PAD_TOKEN, UNK_TOKEN]
    for seq in train_seqs:
        for token in seq:
            if token not in index_of:
                index_of[token] = len(tokens)
                tokens.append(token)
    if len(tokens) == 2:
        raise DataError("cannot build a vocabulary from an empty corpus")
    return Vocabulary(index_of=index_of, tokens=tokens)


def encode(seq: TokenSeq, vocab: Vocabulary, max_len: int = DEFAULT_MAX_LEN) -> EncodedSeq:
    """Map tokens to indices, truncating to the first max_len and right-padding."""
    if max_len < 1:
        raise DataError(f"max_len must be >= 1, got {max_len}")
    kept = seq[:max_len]
    indices = [vocab.lookup(tok) for tok in kept]
    indices.extend([vocab.pad_index] * (max_len - len(kept)))
    return EncodedSeq(indices=indices, true_len=len(kept))


def write_vocab_json(vocab: Vocabulary, max_len: int, path) -> None:
    """Persist the vocabulary with corpus tokens listed in index order."""
    payload = {
        "pad_index": vocab.pad_index,
        "unk_index": vocab.unk_index,
        "tokens": {tok: i for i, tok in enumerate(vocab.tokens) if i >= 2},
        "max_len": max_len,
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")


def read_vocab_json(path) -> tuple[Vocabulary, int]:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    items = sorted(payload["tokens"].items(), key=lambda kv: kv[1])
    tokens = [PAD_TOKEN, UNK_TOKEN] + [tok for tok, _ in items]
    index_of = {tok: i for i, tok in enumerate(tokens)}
    vocab = Vocabulary(index_of=index_of, tokens=tokens,
                       pad_index=payload["pad_index"], unk_index=payload["unk_index"])
    return vocab, payload["max_len"]
