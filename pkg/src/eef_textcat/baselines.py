"""Baseline classifiers: the PPT class-specific rule and common-feature MNB.

PPT scores a document by the reduced log-likelihood ratio against the
reference plus the log prior,

    sum_{k=1}^{K+1} z_k ln(p'_{i,k} / p'_{0,k}) + ln p(c_i),

which coincides with the EEF rule at theta = 1. MNB is the conventional MAP
rule on a common feature subset; the multinomial coefficient is identical
across classes for a fixed z and is omitted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import SparseDocument
from .errors import NonpositiveCell
from .features import COMMON, FeatureSelection, reduced_counts
from .kernels import LinearScorer
from .model import MultinomialModel


@dataclass(frozen=True)
class PptModel:
    """Per-class reduced cells, matching reduced references, and log priors."""

    class_cells: np.ndarray  # (N, K+1)
    ref_cells: np.ndarray  # (N, K+1)
    log_priors: np.ndarray  # (N,)
    selection: FeatureSelection

    @property
    def n_classes(self) -> int:
        return self.class_cells.shape[0]


def build_ppt(model: MultinomialModel, selection: FeatureSelection) -> PptModel:
    if np.any(selection.class_cells <= 0.0) or np.any(selection.ref_cells <= 0.0):
        raise NonpositiveCell("PPT needs strictly positive reduced cells; fit with alpha > 0")
    return PptModel(
        class_cells=selection.class_cells,
        ref_cells=selection.ref_cells,
        log_priors=np.log(model.priors),
        selection=selection,
    )


def ppt_score(model: PptModel, class_index: int, z: np.ndarray) -> float:
    """Reduced log-likelihood ratio plus log prior; z includes the remainder cell."""
    z = np.asarray(z, dtype=np.float64)
    log_ratio = np.log(model.class_cells[class_index]) - np.log(model.ref_cells[class_index])
    return float(z @ log_ratio) + float(model.log_priors[class_index])


def ppt_classify(model: PptModel, doc: SparseDocument) -> int:
    """Argmax of ppt_score over classes; ties go to the lower class index."""
    best_index = 0
    best_score = -np.inf
    for i in range(model.n_classes):
        z = reduced_counts(doc.counts, model.selection.indices[i], doc.length)
        score = ppt_score(model, i, z)
        if score > best_score:
            best_index = i
            best_score = score
    return best_index


def mnb_classify(
    model: MultinomialModel, selection: FeatureSelection, doc: SparseDocument
) -> int:
    """MAP rule on the common reduced features: argmax_i sum_k z_k ln p'_{i,k} + ln p(c_i)."""
    if selection.mode != COMMON:
        raise ValueError("MNB runs on a common feature selection")
    log_priors = np.log(model.priors)
    log_cells = np.log(selection.class_cells)
    z = reduced_counts(doc.counts, selection.indices[0], doc.length)
    scores = log_cells @ z + log_priors
    return int(np.argmax(scores))


def ppt_linear_scorer(model: PptModel, n_terms: int) -> LinearScorer:
    """Batch form: weights are beta-style log-ratio contrasts, the remainder
    ratio enters through the length coefficient."""
    n = model.n_classes
    weights = np.zeros((n, n_terms), dtype=np.float64)
    length_coef = np.empty(n, dtype=np.float64)
    offsets = np.empty(n, dtype=np.float64)
    for i in range(n):
        log_ratio = np.log(model.class_cells[i]) - np.log(model.ref_cells[i])
        weights[i, model.selection.indices[i]] = log_ratio[:-1] - log_ratio[-1]
        length_coef[i] = log_ratio[-1]
        offsets[i] = model.log_priors[i]
    return LinearScorer(weights=weights, length_coef=length_coef, offsets=offsets)


def mnb_linear_scorer(
    model: MultinomialModel, selection: FeatureSelection, n_terms: int
) -> LinearScorer:
    """Batch form of the MNB rule over the shared selection."""
    if selection.mode != COMMON:
        raise ValueError("MNB runs on a common feature selection")
    n = selection.n_classes
    weights = np.zeros((n, n_terms), dtype=np.float64)
    length_coef = np.empty(n, dtype=np.float64)
    offsets = np.log(model.priors)
    for i in range(n):
        log_cells = np.log(selection.class_cells[i])
        weights[i, selection.indices[i]] = log_cells[:-1] - log_cells[-1]
        length_coef[i] = log_cells[-1]
    return LinearScorer(weights=weights, length_coef=length_coef, offsets=np.asarray(offsets))
