"""Exponentially embedded family classifier over reduced multinomial features.

For class i with selected cells p' and reference cells q', the embedded
density at parameter theta is

    p(z | theta) = exp(theta * sum_k z_k beta_k - K1(theta, l)) * p(z | ref)

where beta_k = ln(p'_k / q'_k) - ln(p'_{K+1} / q'_{K+1}) and the cumulant
generating function has the closed form

    K1(theta, l) = l * ln( sum_{k<=K} q'_k e^{theta beta_k} + (1 - sum_{k<=K} q'_k) ).

theta = 0 gives the reference back; theta = 1 gives the PDF projection
(PPT) construction. Each class's theta is fitted by maximizing the concave
objective theta * sum_k zbar_k beta_k - K1(theta, lbar) over a configured
domain, via bisection on the monotone derivative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .corpus import LabeledCorpus, SparseDocument
from .errors import DegenerateClass, NonpositiveCell
from .features import FeatureSelection
from .kernels import LinearScorer
from .model import MultinomialModel

DEFAULT_THETA_DOMAIN = (0.0, 1.0)
DEFAULT_THETA_TOL = 1e-10


@dataclass(frozen=True)
class EefClassParams:
    """One class's embedding: beta vector, fitted theta, reduced reference, log prior."""

    beta: np.ndarray  # (K,)
    theta: float
    reduced_ref: np.ndarray  # (K+1,)
    log_prior: float


@dataclass(frozen=True)
class EefModel:
    """Fitted per-class embeddings plus the feature selection that produced them."""

    classes: tuple[EefClassParams, ...]
    selection: FeatureSelection
    z_bar: np.ndarray  # (N, K) mean selected counts per class
    l_bar: np.ndarray  # (N,) mean document length per class

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([c.theta for c in self.classes])


def beta_vector(reduced_class: np.ndarray, reduced_ref: np.ndarray) -> np.ndarray:
    """beta_k = ln(p'_k / q'_k) - ln(p'_{K+1} / q'_{K+1}) for the K selected cells."""
    p = np.asarray(reduced_class, dtype=np.float64)
    q = np.asarray(reduced_ref, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1 or p.size < 2:
        raise ValueError("reduced vectors must share a length K+1 >= 2")
    if np.any(p <= 0.0) or np.any(q <= 0.0):
        raise NonpositiveCell("reduced cells must be strictly positive")
    log_ratio = np.log(p) - np.log(q)
    return log_ratio[:-1] - log_ratio[-1]


def _weights(reduced_ref: np.ndarray) -> np.ndarray:
    # remainder recomputed as 1 - sum of the selected reference cells
    head = np.asarray(reduced_ref, dtype=np.float64)[:-1]
    return np.concatenate([head, [max(0.0, 1.0 - head.sum())]])


def cumulant_k1(theta: float, l: float, beta: np.ndarray, reduced_ref: np.ndarray) -> float:
    """Closed-form cumulant generating function, log-sum-exp guarded.

    K1(theta, l) = l * ln sum_k w_k e^{theta b_k} with w the reference cells
    and b the beta vector extended by 0 for the remainder cell.
    """
    b_ext = np.concatenate([np.asarray(beta, dtype=np.float64), [0.0]])
    return float(l) * float(logsumexp(theta * b_ext, b=_weights(reduced_ref)))


def cumulant_k1_derivative(
    theta: float, l: float, beta: np.ndarray, reduced_ref: np.ndarray
) -> float:
    """dK1/dtheta = l * sum_k w_k b_k e^{theta b_k} / sum_k w_k e^{theta b_k}."""
    b_ext = np.concatenate([np.asarray(beta, dtype=np.float64), [0.0]])
    w = _weights(reduced_ref)
    with np.errstate(divide="ignore"):
        a = theta * b_ext + np.log(w)
    a_max = a.max()
    e = np.exp(a - a_max)
    return float(l) * float((b_ext @ e) / e.sum())


def fit_theta(
    beta: np.ndarray,
    reduced_ref: np.ndarray,
    z_bar: np.ndarray,
    l_bar: float,
    domain: tuple[float, float] = DEFAULT_THETA_DOMAIN,
    tol: float = DEFAULT_THETA_TOL,
) -> float:
    """Maximize theta * sum_k zbar_k beta_k - K1(theta, lbar) over the domain.

    The objective is concave, so its derivative is monotone decreasing and
    bisection is unconditionally robust. Returns a boundary point when the
    derivative does not change sign inside the domain; an all-zero beta gives
    a flat objective and returns the lower bound by convention.
    """
    lo, hi = float(domain[0]), float(domain[1])
    if not 0.0 <= lo <= hi:
        raise ValueError(f"domain must satisfy 0 <= min <= max, got {domain}")
    if l_bar <= 0.0:
        raise ValueError(f"l_bar must be positive, got {l_bar}")
    target = float(np.asarray(z_bar, dtype=np.float64) @ np.asarray(beta, dtype=np.float64))

    def j_prime(t: float) -> float:
        return target - cumulant_k1_derivative(t, l_bar, beta, reduced_ref)

    if j_prime(lo) <= 0.0:
        return lo
    if j_prime(hi) >= 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if j_prime(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def eef_score(params: EefClassParams, z: np.ndarray, l: float) -> float:
    """theta * sum_k z_k beta_k - K1(theta, l) + ln prior.

    ``z`` holds the K selected counts (no remainder cell). The raw-data
    reference likelihood is omitted: under a common reference it is identical
    across classes and cancels in the argmax.
    """
    z = np.asarray(z, dtype=np.float64)
    tilt = params.theta * float(z @ params.beta)
    return tilt - cumulant_k1(params.theta, l, params.beta, params.reduced_ref) + params.log_prior


def classify(model: EefModel, doc: SparseDocument) -> int:
    """MAP decision over the per-class embedded densities; ties go to the lower index.

    The document must already be projected into the training vocabulary. An
    empty document scores ln prior for every class, so the decision falls
    back to the prior argmax.
    """
    best_index = 0
    best_score = -np.inf
    for i, params in enumerate(model.classes):
        idx = model.selection.indices[i]
        z = np.array([doc.counts.get(int(t), 0) for t in idx], dtype=np.float64)
        score = eef_score(params, z, doc.length)
        if score > best_score:
            best_index = i
            best_score = score
    return best_index


def fit(
    model: MultinomialModel,
    selection: FeatureSelection,
    corpus: LabeledCorpus,
    domain: tuple[float, float] = DEFAULT_THETA_DOMAIN,
    tol: float = DEFAULT_THETA_TOL,
) -> EefModel:
    """Fit one theta per class from the training averages.

    zbar[i, k] is the mean count of class i's k-th selected term over class-i
    documents and lbar[i] the mean document length; both feed the per-class
    1-D concave maximization.
    """
    n, k = selection.indices.shape
    d = model.n_terms

    class_counts = np.zeros((n, d), dtype=np.float64)
    doc_counts = np.zeros(n, dtype=np.float64)
    for doc in corpus.documents:
        doc_counts[doc.label] += 1.0
        for t, c in doc.counts.items():
            class_counts[doc.label, t] += c

    totals = class_counts.sum(axis=1)
    if np.any(totals == 0.0):
        bad = int(np.flatnonzero(totals == 0.0)[0])
        raise DegenerateClass(f"class {bad} has zero total training length")

    z_bar = np.vstack(
        [class_counts[i, selection.indices[i]] / doc_counts[i] for i in range(n)]
    )
    l_bar = totals / doc_counts

    log_priors = np.log(model.priors)
    classes = []
    for i in range(n):
        beta = beta_vector(selection.class_cells[i], selection.ref_cells[i])
        theta = fit_theta(
            beta, selection.ref_cells[i], z_bar[i], float(l_bar[i]), domain, tol
        )
        classes.append(
            EefClassParams(
                beta=beta,
                theta=float(theta),
                reduced_ref=selection.ref_cells[i].copy(),
                log_prior=float(log_priors[i]),
            )
        )
    return EefModel(
        classes=tuple(classes), selection=selection, z_bar=z_bar, l_bar=l_bar
    )


def linear_scorer(model: EefModel, n_terms: int) -> LinearScorer:
    """Batch form of the decision rule: score = x . w_i + l * b_i + a_i.

    K1 is linear in l, so the cumulant enters through a per-class length
    coefficient; per-term weights scatter theta_i * beta_i over the vocabulary.
    """
    n = model.n_classes
    weights = np.zeros((n, n_terms), dtype=np.float64)
    length_coef = np.empty(n, dtype=np.float64)
    offsets = np.empty(n, dtype=np.float64)
    for i, params in enumerate(model.classes):
        weights[i, model.selection.indices[i]] = params.theta * params.beta
        length_coef[i] = -cumulant_k1(params.theta, 1.0, params.beta, params.reduced_ref)
        offsets[i] = params.log_prior
    return LinearScorer(weights=weights, length_coef=length_coef, offsets=offsets)
