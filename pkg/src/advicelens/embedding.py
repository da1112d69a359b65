"""Document vectors, autoencoder compression, and uniqueness scoring.

Per-document vectors are trained with the distributed bag-of-words scheme:
the document vector predicts each of its member words against negative
samples drawn from a unigram^0.75 noise distribution. A small autoencoder
(single tanh hidden layer of half the input width, linear output) is then
fit to the vectors; documents whose vectors reconstruct poorly are the
atypical ones, scored by cosine between input and reconstruction.

Training is single-threaded on purpose: for a fixed seed the whole pipeline
is bit-reproducible, which the artifact determinism guarantees rely on.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .corpus import Document
from .errors import EmbeddingError, NumericalError
from .textprep import remove_stopwords, tokenize

__all__ = [
    "EmbeddingConfig",
    "DocVectors",
    "DocEmbedding",
    "Autoencoder",
    "cosine",
    "train_doc_vectors",
    "train_autoencoder",
    "reconstruction_similarity",
    "mean_reconstruction_cosine",
    "rank_unique",
    "compute_doc_embeddings",
    "save_model",
    "load_model",
    "ae_loss_and_grads",
]

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 50
    epochs: int = 40
    initial_rate: float = 0.025
    final_rate: float = 0.0001
    negative_samples: int = 5
    min_word_count: int = 2
    seed: int = 1

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise EmbeddingError("dim must be >= 2")
        if self.epochs < 1:
            raise EmbeddingError("epochs must be >= 1")
        if not 0 < self.final_rate <= self.initial_rate:
            raise EmbeddingError("need 0 < final_rate <= initial_rate")
        if self.negative_samples < 1:
            raise EmbeddingError("negative_samples must be >= 1")
        if self.min_word_count < 1:
            raise EmbeddingError("min_word_count must be >= 1")


@dataclass(frozen=True)
class DocVectors:
    post_ids: tuple[str, ...]
    vectors: np.ndarray  # (docs, dim) float64

    def vector_for(self, post_id: str) -> np.ndarray:
        return self.vectors[self.post_ids.index(post_id)]


@dataclass(frozen=True)
class DocEmbedding:
    post_id: str
    vector: np.ndarray
    reconstruction_similarity: float


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity; either vector zero (or below tiny norm) gives 0."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    value = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, value))


def _training_words(documents: Sequence[Document], stopwords: frozenset[str]) -> list[list[str]]:
    return [
        [t.normalized for t in remove_stopwords(tokenize(doc.text), stopwords)]
        for doc in documents
    ]


def train_doc_vectors(
    documents: Sequence[Document],
    cfg: EmbeddingConfig,
    stopwords: frozenset[str] = frozenset(),
) -> DocVectors:
    """Distributed bag-of-words training of one vector per document."""
    if len(documents) < 2:
        raise EmbeddingError("corpus too small: need at least 2 documents")
    ids = tuple(doc.post_id for doc in documents)
    if len(set(ids)) != len(ids):
        raise EmbeddingError("duplicate post ids in corpus")

    docs_words = _training_words(documents, stopwords)
    counts: dict[str, int] = {}
    for words in docs_words:
        for w in words:
            counts[w] = counts.get(w, 0) + 1
    # frequency-sorted vocabulary, ties broken lexicographically for
    # reproducible indices
    vocab = sorted(
        (w for w, c in counts.items() if c >= cfg.min_word_count),
        key=lambda w: (-counts[w], w),
    )
    if not vocab:
        raise EmbeddingError("empty vocabulary after min_word_count filtering")
    index = {w: i for i, w in enumerate(vocab)}

    doc_idx = [
        np.array([index[w] for w in words if w in index], dtype=np.int64)
        for words in docs_words
    ]
    total_words = int(sum(len(idx) for idx in doc_idx))
    if total_words == 0:
        raise EmbeddingError("no in-vocabulary words to train on")

    # noise distribution over the vocabulary: unigram counts ^ 0.75
    weights = np.array([counts[w] for w in vocab], dtype=np.float64) ** 0.75
    cum_table = np.cumsum(weights)
    cum_table /= cum_table[-1]

    rng = np.random.default_rng(cfg.seed)
    dim = cfg.dim
    doc_vecs = (rng.random((len(documents), dim)) - 0.5) / dim
    ctx = np.zeros((len(vocab), dim), dtype=np.float64)

    k = cfg.negative_samples
    total_examples = cfg.epochs * total_words
    rate_span = cfg.initial_rate - cfg.final_rate
    processed = 0
    targets = np.empty(k + 1, dtype=np.int64)
    labels = np.zeros(k + 1, dtype=np.float64)
    labels[0] = 1.0

    for _epoch in range(cfg.epochs):
        for d, idx in enumerate(doc_idx):
            l1 = doc_vecs[d]
            for word in idx:
                alpha = cfg.initial_rate - rate_span * (processed / total_examples)
                processed += 1
                targets[0] = word
                filled = 1
                while filled < k + 1:
                    draws = np.searchsorted(cum_table, rng.random(k + 1 - filled))
                    draws = draws[draws != word]
                    take = min(len(draws), k + 1 - filled)
                    targets[filled : filled + take] = draws[:take]
                    filled += take
                l2 = ctx[targets]  # copy via fancy indexing
                f = 1.0 / (1.0 + np.exp(-(l2 @ l1)))
                g = (labels - f) * alpha
                ctx[targets] += np.outer(g, l1)
                l1 += g @ l2  # uses the pre-update copy

    return DocVectors(post_ids=ids, vectors=doc_vecs)


@dataclass(frozen=True)
class Autoencoder:
    """tanh hidden layer, linear output, trained on standardized inputs."""

    w1: np.ndarray  # (dim, hidden)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden, dim)
    b2: np.ndarray  # (dim,)
    mean: np.ndarray  # (dim,)
    scale: np.ndarray  # (dim,)

    @property
    def input_dim(self) -> int:
        return self.w1.shape[0]

    def reconstruct(self, v: np.ndarray) -> np.ndarray:
        """Map input-space vectors through the network, back in input space."""
        v = np.asarray(v, dtype=np.float64)
        if v.shape[-1] != self.input_dim:
            raise EmbeddingError(
                f"dimension mismatch: model expects {self.input_dim}, got {v.shape[-1]}"
            )
        z = (v - self.mean) / self.scale
        y = np.tanh(z @ self.w1 + self.b1) @ self.w2 + self.b2
        return y * self.scale + self.mean


def ae_loss_and_grads(
    w1: np.ndarray,
    b1: np.ndarray,
    w2: np.ndarray,
    b2: np.ndarray,
    z: np.ndarray,
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean-squared reconstruction loss and analytic gradients on a batch."""
    h = np.tanh(z @ w1 + b1)
    y = h @ w2 + b2
    r = y - z
    loss = float(np.mean(r * r))
    dy = 2.0 * r / r.size
    gw2 = h.T @ dy
    gb2 = dy.sum(axis=0)
    dh = (dy @ w2.T) * (1.0 - h * h)
    gw1 = z.T @ dh
    gb1 = dh.sum(axis=0)
    return loss, {"w1": gw1, "b1": gb1, "w2": gw2, "b2": gb2}


def train_autoencoder(
    vectors: np.ndarray,
    seed: int,
    hidden: int | None = None,
    epochs: int = 3000,
    batch_size: int = 16,
    learning_rate: float = 0.05,
    tol: float = 1e-6,
) -> Autoencoder:
    """Fit the compression autoencoder with mini-batch gradient descent.

    Stops at the epoch budget or when full-data loss improves by less
    than tol between epochs.
    """
    x = np.asarray(vectors, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2:
        raise EmbeddingError("need at least 2 vectors to train the autoencoder")
    n, dim = x.shape
    if hidden is None:
        hidden = max(1, dim // 2)

    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    scale = np.where(scale < 1e-12, 1.0, scale)
    z = (x - mean) / scale

    rng = np.random.default_rng(seed)
    w1 = rng.standard_normal((dim, hidden)) / np.sqrt(dim)
    b1 = np.zeros(hidden)
    w2 = rng.standard_normal((hidden, dim)) / np.sqrt(hidden)
    b2 = np.zeros(dim)

    prev_loss = float("inf")
    for epoch in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            batch = z[order[start : start + batch_size]]
            _, grads = ae_loss_and_grads(w1, b1, w2, b2, batch)
            w1 -= learning_rate * grads["w1"]
            b1 -= learning_rate * grads["b1"]
            w2 -= learning_rate * grads["w2"]
            b2 -= learning_rate * grads["b2"]
        loss, _ = ae_loss_and_grads(w1, b1, w2, b2, z)
        if not np.isfinite(loss):
            raise NumericalError(f"non-finite autoencoder loss at epoch {epoch}")
        if prev_loss - loss < tol:
            break
        prev_loss = loss

    return Autoencoder(w1=w1, b1=b1, w2=w2, b2=b2, mean=mean, scale=scale)


def reconstruction_similarity(model: Autoencoder, v: np.ndarray) -> float:
    """Cosine between a vector and its reconstruction; zero vector gives 0."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != model.input_dim:
        raise EmbeddingError(
            f"dimension mismatch: model expects {model.input_dim}, got {v.shape}"
        )
    return cosine(v, model.reconstruct(v))


def mean_reconstruction_cosine(model: Autoencoder, vectors: np.ndarray) -> float:
    """Training-quality summary: mean reconstruction cosine over a matrix."""
    x = np.asarray(vectors, dtype=np.float64)
    return float(np.mean([reconstruction_similarity(model, row) for row in x]))


def rank_unique(embeddings: Sequence[DocEmbedding], k: int) -> list[DocEmbedding]:
    """k lowest-similarity documents, ascending; ties broken by post id."""
    if k > len(embeddings):
        raise EmbeddingError(f"k={k} exceeds corpus size {len(embeddings)}")
    ordered = sorted(embeddings, key=lambda e: (e.reconstruction_similarity, e.post_id))
    return ordered[:k]


def compute_doc_embeddings(
    documents: Sequence[Document],
    cfg: EmbeddingConfig,
    stopwords: frozenset[str] = frozenset(),
) -> tuple[list[DocEmbedding], DocVectors, Autoencoder]:
    """Full pipeline: train vectors, fit the autoencoder, score every doc."""
    doc_vectors = train_doc_vectors(documents, cfg, stopwords)
    model = train_autoencoder(doc_vectors.vectors, seed=cfg.seed)
    embeddings = [
        DocEmbedding(
            post_id=post_id,
            vector=vector,
            reconstruction_similarity=reconstruction_similarity(model, vector),
        )
        for post_id, vector in zip(doc_vectors.post_ids, doc_vectors.vectors)
    ]
    return embeddings, doc_vectors, model


def save_model(
    path: Path | str,
    doc_vectors: DocVectors,
    model: Autoencoder,
    cfg: EmbeddingConfig,
) -> None:
    """Persist everything needed to re-score documents, with a format tag."""
    np.savez(
        Path(path),
        format_version=np.array([MODEL_FORMAT_VERSION]),
        post_ids=np.array(doc_vectors.post_ids, dtype=np.str_),
        vectors=doc_vectors.vectors,
        w1=model.w1,
        b1=model.b1,
        w2=model.w2,
        b2=model.b2,
        mean=model.mean,
        scale=model.scale,
        config=np.array(
            [
                cfg.dim,
                cfg.epochs,
                cfg.initial_rate,
                cfg.final_rate,
                cfg.negative_samples,
                cfg.min_word_count,
                cfg.seed,
            ],
            dtype=np.float64,
        ),
    )


def load_model(path: Path | str) -> tuple[DocVectors, Autoencoder, EmbeddingConfig]:
    with np.load(Path(path), allow_pickle=False) as data:
        version = int(data["format_version"][0])
        if version != MODEL_FORMAT_VERSION:
            raise EmbeddingError(f"unsupported model format version {version}")
        raw_cfg = data["config"]
        cfg = EmbeddingConfig(
            dim=int(raw_cfg[0]),
            epochs=int(raw_cfg[1]),
            initial_rate=float(raw_cfg[2]),
            final_rate=float(raw_cfg[3]),
            negative_samples=int(raw_cfg[4]),
            min_word_count=int(raw_cfg[5]),
            seed=int(raw_cfg[6]),
        )
        doc_vectors = DocVectors(
            post_ids=tuple(str(s) for s in data["post_ids"]),
            vectors=data["vectors"],
        )
        model = Autoencoder(
            w1=data["w1"],
            b1=data["b1"],
            w2=data["w2"],
            b2=data["b2"],
            mean=data["mean"],
            scale=data["scale"],
        )
    return doc_vectors, model, cfg
