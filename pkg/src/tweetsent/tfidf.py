"""TF-IDF vectorization over tokenized documents.

Term frequency is the raw count divided by the document's total token
count (including tokens outside the feature space). IDF is ln(N / df)
with no smoothing. Terms present in every training document get IDF 0 and
are simply absent from the resulting sparse vectors.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ShapeError


@dataclass
class SparseVec:
    """Sparse feature vector; zeros are absent, never stored."""

    entries: dict[int, float]
    dim: int


@dataclass
class TfidfModel:
    feature_of: dict[str, int]
    idf: np.ndarray
    n_docs: int
    l2_normalize: bool = False

    @property
    def dim(self) -> int:
        return len(self.feature_of)


def fit(train_docs, l2_normalize: bool = False) -> TfidfModel:
    """Build the feature space and IDF weights from training documents.

    Features are distinct training tokens in first-appearance order;
    idf[t] = ln(n_docs / df_t) where df_t counts documents containing t.
    """
    train_docs = list(train_docs)
    feature_of: dict[str, int] = {}
    df: list[int] = []
    n_docs = len(train_docs)
    any_token = False
    for doc in train_docs:
        for token in doc:
            if token not in feature_of:
                feature_of[token] = len(df)
                df.append(0)
        for token in set(doc):
            df[feature_of[token]] += 1
        any_token = any_token or bool(doc)
    if not any_token:
        raise DataError("cannot fit TF-IDF on a corpus with no tokens")
    idf = np.log(n_docs / np.asarray(df, dtype=np.float64))
    return TfidfModel(feature_of=feature_of, idf=idf, n_docs=n_docs,
                      l2_normalize=l2_normalize)


def transform(doc, model: TfidfModel) -> SparseVec:
    """Weight each in-feature-space token by TF x IDF; ignore the rest."""
    total = len(doc)
    counts: dict[int, int] = {}
    for token in doc:
        j = model.feature_of.get(token)
        if j is not None:
            counts[j] = counts.get(j, 0) + 1
    entries = {}
    for j, c in counts.items():
        w = (c / total) * model.idf[j]
        if w != 0.0:
            entries[j] = float(w)
    if model.l2_normalize and entries:
        norm = float(np.sqrt(sum(w * w for w in entries.values())))
        entries = {j: w / norm for j, w in entries.items()}
    return SparseVec(entries=entries, dim=model.dim)


def stack(vecs):
    """Stack SparseVecs into one scipy CSR matrix for batch linear algebra."""
    from scipy import sparse

    vecs = list(vecs)
    if not vecs:
        raise DataError("cannot stack zero vectors")
    dim = vecs[0].dim
    data, indices, indptr = [], [], [0]
    for v in vecs:
        if v.dim != dim:
            raise ShapeError(f"mixed dimensionalities {v.dim} and {dim}")
        for j in sorted(v.entries):
            indices.append(j)
            data.append(v.entries[j])
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.asarray(data, dtype=np.float64),
         np.asarray(indices, dtype=np.int64),
         np.asarray(indptr, dtype=np.int64)),
        shape=(len(vecs), dim))
