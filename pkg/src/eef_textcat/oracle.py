"""Brute-force multinomial enumeration for verifying the closed forms.

Everything here is exhaustive and log-space exact: enumerate all count
vectors of a given length, attach exact multinomial probabilities, and
compute cumulants and embedded-density moments by direct summation. The
closed-form cumulant, its derivative, the embedded-density normalization,
and the theta=1 PPT identity are all checked against these sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import TooLarge

DEFAULT_OUTCOME_CAP = 2_000_000


@dataclass(frozen=True)
class OutcomeTable:
    """All length-l outcomes over K+1 cells with exact multinomial probabilities."""

    outcomes: np.ndarray  # (n_outcomes, K+1) int64, lexicographically ordered
    probs: np.ndarray  # (n_outcomes,)


def _compositions(total: int, cells: int) -> np.ndarray:
    if cells == 1:
        return np.array([[total]], dtype=np.int64)
    rows = []
    for first in range(total + 1):
        rest = _compositions(total - first, cells - 1)
        block = np.empty((rest.shape[0], cells), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        rows.append(block)
    return np.vstack(rows)


def log_multinomial_pmf(counts: np.ndarray, cells: np.ndarray) -> np.ndarray:
    """Row-wise ln multinomial pmf; zero-count cells contribute nothing even
    at zero probability, and positive counts on zero cells give -inf."""
    counts = np.atleast_2d(np.asarray(counts, dtype=np.int64))
    cells = np.asarray(cells, dtype=np.float64)
    l = counts.sum(axis=1)
    coeff = gammaln(l + 1) - gammaln(counts + 1).sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(counts > 0, counts * np.log(cells), 0.0)
    return coeff + terms.sum(axis=1)


def enumerate_outcomes(
    cells: np.ndarray, l: int, cap: int = DEFAULT_OUTCOME_CAP
) -> OutcomeTable:
    """Exhaustive lexicographic outcome table for a (K+1)-cell multinomial of length l."""
    cells = np.asarray(cells, dtype=np.float64)
    k_plus_1 = cells.shape[0]
    n_outcomes = comb(l + k_plus_1 - 1, k_plus_1 - 1)
    if n_outcomes > cap:
        raise TooLarge(
            f"C({l + k_plus_1 - 1}, {k_plus_1 - 1}) = {n_outcomes} outcomes exceeds cap {cap}"
        )
    outcomes = _compositions(l, k_plus_1)
    probs = np.exp(log_multinomial_pmf(outcomes, cells))
    return OutcomeTable(outcomes=outcomes, probs=probs)


def _tilt_logterms(
    cells_ref: np.ndarray, beta: np.ndarray, theta: float, l: int, cap: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-outcome (ln p(z|ref) + theta*T(z), T(z)) with T(z) = sum_k z_k beta_k."""
    cells_ref = np.asarray(cells_ref, dtype=np.float64)
    beta = np.asarray(beta, dtype=np.float64)
    table = enumerate_outcomes(cells_ref, l, cap=cap)
    stat = table.outcomes[:, : beta.shape[0]].astype(np.float64) @ beta
    logp = log_multinomial_pmf(table.outcomes, cells_ref)
    return logp + theta * stat, stat


def exact_cumulant(
    cells_ref: np.ndarray,
    beta: np.ndarray,
    theta: float,
    l: int,
    cap: int = DEFAULT_OUTCOME_CAP,
) -> float:
    """ln E_ref[exp(theta * sum_k z_k beta_k)] by full enumeration."""
    tilted, _ = _tilt_logterms(cells_ref, beta, theta, l, cap)
    return float(logsumexp(tilted))


def exact_embedded_moment(
    cells_ref: np.ndarray,
    beta: np.ndarray,
    theta: float,
    l: int,
    cap: int = DEFAULT_OUTCOME_CAP,
) -> float:
    """E[sum_k z_k beta_k] under the embedded density exp(theta*T - K1) p(z|ref)."""
    tilted, stat = _tilt_logterms(cells_ref, beta, theta, l, cap)
    weights = np.exp(tilted - logsumexp(tilted))
    return float(weights @ stat)


def embedded_total_mass(
    cells_ref: np.ndarray,
    beta: np.ndarray,
    theta: float,
    l: int,
    k1_value: float,
    cap: int = DEFAULT_OUTCOME_CAP,
) -> float:
    """sum_z exp(theta*T(z) - K1) p(z|ref) given a closed-form K1; should be 1."""
    tilted, _ = _tilt_logterms(cells_ref, beta, theta, l, cap)
    return float(np.exp(logsumexp(tilted) - k1_value))


@dataclass(frozen=True)
class VerificationCheck:
    name: str
    max_abs_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_deviation <= self.tolerance


def _random_reduced_pair(rng: np.random.Generator, k: int) -> tuple[np.ndarray, np.ndarray]:
    """A strictly positive (class, reference) reduced-cell pair of length K+1."""
    cls = rng.dirichlet(np.full(k + 1, 2.0))
    ref = rng.dirichlet(np.full(k + 1, 2.0))
    floor = 1e-4
    cls = (cls + floor) / (1.0 + floor * (k + 1))
    ref = (ref + floor) / (1.0 + floor * (k + 1))
    return cls, ref


def run_verification(seed: int = 20260809, cases: int = 1000) -> list[VerificationCheck]:
    """Randomized oracle-vs-closed-form suite; returns max absolute deviations.

    Covers the cumulant equality, the analytic derivative against both the
    embedded moment and a central difference of the enumerated cumulant, the
    embedded-density normalization, and the theta=1 PPT score identity.
    """
    from . import eef
    from .baselines import PptModel, ppt_score
    from .features import CLASS_SPECIFIC, FeatureSelection

    rng = np.random.default_rng(seed)
    dev_cumulant = 0.0
    dev_derivative = 0.0
    dev_fd = 0.0
    dev_mass = 0.0
    dev_ppt = 0.0
    h = 1e-5
    for _ in range(cases):
        k = int(rng.integers(1, 5))
        l = int(rng.integers(0, 7))
        theta = float(rng.uniform(0.0, 2.0))
        cls, ref = _random_reduced_pair(rng, k)
        beta = eef.beta_vector(cls, ref)

        closed = eef.cumulant_k1(theta, l, beta, ref)
        exact = exact_cumulant(ref, beta, theta, l)
        dev_cumulant = max(dev_cumulant, abs(closed - exact))

        mass = embedded_total_mass(ref, beta, theta, l, closed)
        dev_mass = max(dev_mass, abs(mass - 1.0))

        if l > 0:
            deriv = eef.cumulant_k1_derivative(theta, l, beta, ref)
            moment = exact_embedded_moment(ref, beta, theta, l)
            dev_derivative = max(dev_derivative, abs(deriv - moment))
            fd = (
                exact_cumulant(ref, beta, theta + h, l)
                - exact_cumulant(ref, beta, theta - h, l)
            ) / (2.0 * h)
            dev_fd = max(dev_fd, abs(fd - moment))

            z = rng.multinomial(l, ref).astype(np.float64)
            params = eef.EefClassParams(
                beta=beta, theta=1.0, reduced_ref=ref, log_prior=float(np.log(0.5))
            )
            indices = np.arange(k, dtype=np.int64)[None, :]
            selection = FeatureSelection(
                mode=CLASS_SPECIFIC,
                indices=indices,
                k=k,
                class_cells=cls[None, :],
                ref_cells=ref[None, :],
            )
            ppt = PptModel(
                class_cells=cls[None, :],
                ref_cells=ref[None, :],
                log_priors=np.array([np.log(0.5)]),
                selection=selection,
            )
            dev_ppt = max(
                dev_ppt,
                abs(eef.eef_score(params, z[:-1], l) - ppt_score(ppt, 0, z)),
            )

    return [
        VerificationCheck("cumulant_k1 vs enumerated cumulant", dev_cumulant, 1e-9),
        VerificationCheck("K1' vs enumerated embedded moment", dev_derivative, 1e-9),
        VerificationCheck("central-difference cumulant vs moment", dev_fd, 1e-5),
        VerificationCheck("embedded density total mass vs 1", dev_mass, 1e-9),
        VerificationCheck("eef_score(theta=1) vs ppt_score", dev_ppt, 1e-9),
    ]
