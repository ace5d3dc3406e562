"""Batch scoring backend: compiled Cython kernel with a scipy.sparse fallback.

All three classifiers (EEF, PPT, MNB) reduce to the same linear form

    score[doc, i] = sum_k x_k * weights[i, k] + length * length_coef[i] + offsets[i]

so the sweep harness evaluates them through one kernel over a CSR document
batch. The compiled extension is preferred when built; set
EEF_TEXTCAT_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:
    _kernels_cy = None

if os.environ.get("EEF_TEXTCAT_PURE_PYTHON"):
    _default = _kernels_py
elif _kernels_cy is not None:
    _default = _kernels_cy
else:
    _default = _kernels_py


def backend() -> str:
    """Name of the backend selected at import: 'cython' or 'python'."""
    return "cython" if _default is _kernels_cy else "python"


def available_backends() -> tuple[str, ...]:
    return ("cython", "python") if _kernels_cy is not None else ("python",)


@dataclass(frozen=True)
class CsrDocs:
    """A document batch in CSR layout plus per-document lengths."""

    indptr: np.ndarray  # (n_docs + 1,) int64
    indices: np.ndarray  # (nnz,) int64
    data: np.ndarray  # (nnz,) float64
    lengths: np.ndarray  # (n_docs,) float64
    n_terms: int

    @property
    def n_docs(self) -> int:
        return self.indptr.shape[0] - 1


@dataclass(frozen=True)
class LinearScorer:
    """Per-class linear decision rule coefficients over the vocabulary."""

    weights: np.ndarray  # (n_classes, n_terms)
    length_coef: np.ndarray  # (n_classes,)
    offsets: np.ndarray  # (n_classes,)

    @property
    def n_classes(self) -> int:
        return self.weights.shape[0]


def csr_from_documents(docs: Sequence, n_terms: int) -> CsrDocs:
    """Pack SparseDocuments (already in one vocabulary) into CSR arrays."""
    indptr = np.zeros(len(docs) + 1, dtype=np.int64)
    idx_parts = []
    cnt_parts = []
    lengths = np.zeros(len(docs), dtype=np.float64)
    for row, doc in enumerate(docs):
        items = sorted(doc.counts.items())
        indptr[row + 1] = indptr[row] + len(items)
        idx_parts.extend(k for k, _ in items)
        cnt_parts.extend(c for _, c in items)
        lengths[row] = doc.length
    return CsrDocs(
        indptr=indptr,
        indices=np.asarray(idx_parts, dtype=np.int64),
        data=np.asarray(cnt_parts, dtype=np.float64),
        lengths=lengths,
        n_terms=n_terms,
    )


def _module(impl: str | None):
    if impl is None:
        return _default
    if impl == "python":
        return _kernels_py
    if impl == "cython":
        if _kernels_cy is None:
            raise RuntimeError("compiled kernel not available; rebuild the extension")
        return _kernels_cy
    raise ValueError(f"unknown backend {impl!r}")


def scores(scorer: LinearScorer, docs: CsrDocs, impl: str | None = None) -> np.ndarray:
    """(n_docs, n_classes) score matrix for the given linear rule."""
    weights_t = np.ascontiguousarray(scorer.weights.T)
    return _module(impl).linear_scores(
        docs.indptr,
        docs.indices,
        docs.data,
        docs.lengths,
        weights_t,
        scorer.length_coef,
        scorer.offsets,
    )


def decide(scorer: LinearScorer, docs: CsrDocs, impl: str | None = None) -> np.ndarray:
    """Argmax class per document; exact ties resolve to the lower class index."""
    return np.argmax(scores(scorer, docs, impl=impl), axis=1)
