"""Information-gain feature scoring and top-K selection.

IG is computed per (term, class) from document-presence frequencies:

    IG(t, c) = p(t, c) ln[p(t, c) / (p(t) p(c))]
             + p(!t, c) ln[p(!t, c) / (p(!t) p(c))]

with the 0 * ln(0) = 0 convention. The two-term sum equals
p(c) * KL(presence | class vs presence marginally), so it is nonnegative and
is exactly zero when term presence is independent of the class.

Selection reduces each class's D-cell multinomial to K+1 cells: the K
selected cells plus one remainder cell aggregating everything else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import rel_entr

from .corpus import LabeledCorpus
from .errors import DegenerateReduction, InvalidK
from .model import MultinomialModel

CLASS_SPECIFIC = "class-specific"
COMMON = "common"


@dataclass(frozen=True)
class IgScoreTable:
    """IG(t_k, c_i) in nats; shape (n_classes, n_terms)."""

    scores: np.ndarray


@dataclass(frozen=True)
class FeatureSelection:
    """Per-class selected term indices and the implied (K+1)-cell marginals.

    ``indices[i]`` lists class i's selected term indices in descending score
    order (identical rows in common mode). ``class_cells[i]`` holds
    [p'_{i,1}, ..., p'_{i,K}, remainder]; ``ref_cells[i]`` is the reference
    distribution reduced with the same index list.
    """

    mode: str
    indices: np.ndarray  # (N, K) int
    k: int
    class_cells: np.ndarray  # (N, K+1)
    ref_cells: np.ndarray  # (N, K+1)

    @property
    def n_classes(self) -> int:
        return self.indices.shape[0]

    @property
    def shared_indices(self) -> np.ndarray:
        if self.mode != COMMON:
            raise ValueError("shared_indices is only defined for common mode")
        return self.indices[0]


def ig_scores(corpus: LabeledCorpus, presence_smoothing: float = 0.0) -> IgScoreTable:
    """Score every (term, class) pair by information gain over document presence.

    Presence probabilities come from raw document frequencies by default;
    ``presence_smoothing`` adds that count to each cell of the per-term 2x2
    (presence x class) table for strictly positive estimates.
    """
    if presence_smoothing < 0:
        raise ValueError("presence_smoothing must be >= 0")
    n, d = corpus.n_classes, corpus.n_terms
    present = np.zeros((n, d), dtype=np.float64)
    for doc in corpus.documents:
        if doc.counts:
            present[doc.label, list(doc.counts.keys())] += 1.0

    m_class = np.asarray(corpus.class_doc_counts, dtype=np.float64)[:, None]
    m = float(len(corpus.documents))
    s = presence_smoothing
    total = m + 4.0 * s

    p_tc = (present + s) / total
    p_tbar_c = (m_class - present + s) / total
    p_t = (present.sum(axis=0, keepdims=True) + 2.0 * s) / total
    p_c = (m_class + 2.0 * s) / total

    scores = rel_entr(p_tc, p_t * p_c) + rel_entr(p_tbar_c, (1.0 - p_t) * p_c)
    return IgScoreTable(scores=scores)


def _top_k(row_scores: np.ndarray, k: int) -> np.ndarray:
    # stable sort on negated scores: ties resolve to the lower term index
    return np.argsort(-row_scores, kind="stable")[:k]


def _reduce(cells: np.ndarray, idx: np.ndarray) -> np.ndarray:
    selected = cells[idx]
    remainder = 1.0 - selected.sum()
    if remainder < -1e-12:
        raise DegenerateReduction(
            f"remainder cell {remainder} < 0; input cells do not sum to 1"
        )
    return np.concatenate([selected, [remainder]])


def select(
    table: IgScoreTable,
    model: MultinomialModel,
    k: int,
    mode: str = CLASS_SPECIFIC,
) -> FeatureSelection:
    """Take the top-K features per class (class-specific) or overall (common).

    Common mode ranks terms by the unweighted sum of per-class scores. Ties
    break toward the lower term index in both modes.
    """
    n, d = model.n_classes, model.n_terms
    if not 1 <= k < d:
        raise InvalidK(f"K must satisfy 1 <= K <= D-1 = {d - 1}, got {k}")
    if mode not in (CLASS_SPECIFIC, COMMON):
        raise ValueError(f"unknown mode {mode!r}")

    if mode == COMMON:
        shared = _top_k(table.scores.sum(axis=0), k)
        indices = np.tile(shared, (n, 1))
    else:
        indices = np.vstack([_top_k(table.scores[i], k) for i in range(n)])

    class_cells = np.vstack(
        [_reduce(model.cell_probs[i], indices[i]) for i in range(n)]
    )
    ref_cells = np.vstack([_reduce(model.ref_probs, indices[i]) for i in range(n)])
    return FeatureSelection(
        mode=mode,
        indices=indices.astype(np.int64),
        k=int(k),
        class_cells=class_cells,
        ref_cells=ref_cells,
    )


def reduced_counts(doc_counts: dict[int, int], idx: np.ndarray, length: int) -> np.ndarray:
    """Gather a document's counts at the selected indices plus the remainder cell.

    z_k = x_{idx[k]} for k < K, z_K = l - sum of the gathered counts.
    """
    z = np.empty(len(idx) + 1, dtype=np.float64)
    total = 0
    for j, term in enumerate(idx):
        c = doc_counts.get(int(term), 0)
        z[j] = c
        total += c
    z[-1] = length - total
    return z
