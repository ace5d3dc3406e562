"""Per-class multinomial estimation and the union-of-classes reference.

Each class i has cell probabilities p[i, k] over the training vocabulary,
estimated with additive smoothing. The reference distribution is the
prior-weighted mixture of the class cells:

    ref[k] = sum_i p[i, k] * prior[i]

which is itself a multinomial over the same cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import gammaln

from .corpus import LabeledCorpus, SparseDocument
from .errors import DegenerateClass, ZeroProbabilityCell


@dataclass(frozen=True)
class MultinomialModel:
    """Fitted class multinomials, priors, and the mixture reference."""

    cell_probs: np.ndarray  # (N, D), rows sum to 1
    priors: np.ndarray  # (N,), sums to 1
    ref_probs: np.ndarray  # (D,), prior-weighted mixture of the rows
    smoothing_alpha: float

    @property
    def n_classes(self) -> int:
        return self.cell_probs.shape[0]

    @property
    def n_terms(self) -> int:
        return self.cell_probs.shape[1]


def fit(corpus: LabeledCorpus, smoothing_alpha: float = 1.0) -> MultinomialModel:
    """Estimate cell probabilities with additive smoothing and document-frequency priors.

    p[i, k] = (count of term k in class i + alpha) / (tokens in class i + alpha * D)
    """
    if smoothing_alpha < 0:
        raise ValueError(f"smoothing_alpha must be >= 0, got {smoothing_alpha}")
    n, d = corpus.n_classes, corpus.n_terms

    labels, idxs, cnts = [], [], []
    for doc in corpus.documents:
        for k, c in doc.counts.items():
            labels.append(doc.label)
            idxs.append(k)
            cnts.append(c)
    flat = np.asarray(labels, dtype=np.int64) * d + np.asarray(idxs, dtype=np.int64)
    counts = np.bincount(flat, weights=np.asarray(cnts, dtype=np.float64), minlength=n * d)
    counts = counts.reshape(n, d)

    totals = counts.sum(axis=1)
    if smoothing_alpha == 0.0 and np.any(totals == 0):
        bad = int(np.flatnonzero(totals == 0)[0])
        raise DegenerateClass(f"class {bad} has zero total tokens and alpha=0")
    cell_probs = (counts + smoothing_alpha) / (totals + smoothing_alpha * d)[:, None]

    m = np.asarray(corpus.class_doc_counts, dtype=np.float64)
    priors = m / m.sum()
    ref_probs = priors @ cell_probs
    return MultinomialModel(
        cell_probs=cell_probs,
        priors=priors,
        ref_probs=ref_probs,
        smoothing_alpha=float(smoothing_alpha),
    )


def log_likelihood(
    model: MultinomialModel,
    class_index: int,
    doc: SparseDocument,
    include_coefficient: bool = True,
) -> float:
    """ln p(x | c_i, l) for a document already projected into the model vocabulary.

    With the coefficient, this is ln(l!/prod x_k!) + sum_k x_k ln p[i, k].
    The coefficient cancels in same-length comparisons and can be omitted.
    """
    if not doc.counts:
        return 0.0
    idx = np.fromiter(doc.counts.keys(), dtype=np.int64, count=len(doc.counts))
    cnt = np.fromiter(doc.counts.values(), dtype=np.float64, count=len(doc.counts))
    p = model.cell_probs[class_index, idx]
    if np.any(p == 0.0):
        k = int(idx[np.flatnonzero(p == 0.0)[0]])
        raise ZeroProbabilityCell(
            f"term {k} has count > 0 but p[{class_index}, {k}] = 0"
        )
    ll = float(cnt @ np.log(p))
    if include_coefficient:
        ll += float(gammaln(doc.length + 1) - gammaln(cnt + 1).sum())
    return ll


_FORMAT_TAG = "eef-model"
_FORMAT_VERSION = "v1"


def save_model(model: MultinomialModel, path: str | Path) -> None:
    """Write the versioned plain-text format (17 significant digits per value)."""
    lines = [
        f"{_FORMAT_TAG} {_FORMAT_VERSION} {model.n_classes} {model.n_terms} "
        f"{model.smoothing_alpha:.17g}"
    ]
    lines.append(" ".join(f"{p:.17g}" for p in model.priors))
    for row in model.cell_probs:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> MultinomialModel:
    """Read the plain-text format written by save_model; ref_probs are recomputed."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0].split()
    if len(header) != 5 or header[0] != _FORMAT_TAG:
        raise ValueError(f"{path}: not an {_FORMAT_TAG} file")
    if header[1] != _FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported version {header[1]}")
    n, d = int(header[2]), int(header[3])
    alpha = float(header[4])
    priors = np.array([float(v) for v in lines[1].split()], dtype=np.float64)
    if priors.shape != (n,):
        raise ValueError(f"{path}: expected {n} priors, got {priors.shape[0]}")
    rows = []
    for i in range(n):
        row = np.array([float(v) for v in lines[2 + i].split()], dtype=np.float64)
        if row.shape != (d,):
            raise ValueError(f"{path}: row {i} has {row.shape[0]} cells, expected {d}")
        rows.append(row)
    cell_probs = np.vstack(rows)
    return MultinomialModel(
        cell_probs=cell_probs,
        priors=priors,
        ref_probs=priors @ cell_probs,
        smoothing_alpha=alpha,
    )
