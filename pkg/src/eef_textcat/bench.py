"""Experiment harness: feature-size sweeps over the three classifiers.

A sweep fits the multinomial model and IG table once on the training split,
then for each (classifier, K) cell selects features, fits the classifier,
and scores the test split through the batch kernel. Synthetic corpora with
known true cells are the primary evaluation vehicle; the retained cells
support an exact Bayes reference classifier.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import eef as eef_mod
from . import model as model_mod
from .baselines import build_ppt, mnb_linear_scorer, ppt_linear_scorer
from .corpus import LabeledCorpus, SparseDocument, TrainTestCorpus, Vocabulary
from .errors import EmptyClass, EmptyTestSplit
from .features import CLASS_SPECIFIC, COMMON, ig_scores, select
from .kernels import LinearScorer, csr_from_documents, decide

KNOWN_CLASSIFIERS = ("eef", "ppt", "mnb")


@dataclass(frozen=True)
class SweepConfig:
    """Grid and fitting settings for one sweep run."""

    k_values: tuple[int, ...]
    classifiers: tuple[str, ...] = KNOWN_CLASSIFIERS
    smoothing_alpha: float = 1.0
    selection_mode: str = CLASS_SPECIFIC  # used by eef/ppt; mnb is always common
    theta_domain: tuple[float, float] = eef_mod.DEFAULT_THETA_DOMAIN
    theta_tol: float = eef_mod.DEFAULT_THETA_TOL
    test_frac: float | None = None
    seed: int = 0
    record_timing: bool = True

    def validate(self, n_terms: int) -> None:
        if not self.k_values:
            raise ValueError("k_values is empty")
        if any(b <= a for a, b in zip(self.k_values, self.k_values[1:])):
            raise ValueError(f"k_values must be strictly increasing: {self.k_values}")
        if self.k_values[-1] >= n_terms:
            raise ValueError(
                f"largest K {self.k_values[-1]} must be < vocabulary size {n_terms}"
            )
        unknown = set(self.classifiers) - set(KNOWN_CLASSIFIERS)
        if unknown or not self.classifiers:
            raise ValueError(f"classifiers must be a nonempty subset of {KNOWN_CLASSIFIERS}")


@dataclass(frozen=True)
class SweepRow:
    classifier: str
    k: int
    accuracy: float
    macro_f1: float
    thetas: tuple[float, ...]  # fitted embedding parameters; empty for ppt/mnb
    wall_ms: float


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]

    def to_csv(self) -> str:
        lines = ["classifier,k,accuracy,macro_f1,wall_ms"]
        for r in self.rows:
            lines.append(
                f"{r.classifier},{r.k},{r.accuracy:.6f},{r.macro_f1:.6f},{r.wall_ms:.3f}"
            )
        return "\n".join(lines) + "\n"


def accuracy_and_macro_f1(
    y_true: np.ndarray, y_pred: np.ndarray, n_classes: int
) -> tuple[float, float]:
    """Exact-match accuracy and unweighted mean per-class F1 (0/0 := 0)."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    accuracy = float(np.mean(y_true == y_pred))
    f1s = []
    for i in range(n_classes):
        tp = int(np.sum((y_pred == i) & (y_true == i)))
        fp = int(np.sum((y_pred == i) & (y_true != i)))
        fn = int(np.sum((y_pred != i) & (y_true == i)))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        denom = precision + recall
        f1s.append(2.0 * precision * recall / denom if denom else 0.0)
    return accuracy, float(np.mean(f1s))


def _fit_cell(config, clf, k, model, table, train):
    """Selection + classifier fit for one sweep cell; returns (scorer, thetas)."""
    d = model.n_terms
    if clf == "mnb":
        sel = select(table, model, k, COMMON)
        return mnb_linear_scorer(model, sel, d), ()
    if clf == "ppt":
        sel = select(table, model, k, config.selection_mode)
        return ppt_linear_scorer(build_ppt(model, sel), d), ()
    sel = select(table, model, k, config.selection_mode)
    fitted = eef_mod.fit(model, sel, train, config.theta_domain, config.theta_tol)
    return eef_mod.linear_scorer(fitted, d), tuple(float(t) for t in fitted.thetas)


def run_sweep(config: SweepConfig, split: TrainTestCorpus) -> SweepReport:
    """Evaluate every (classifier, K) cell on the test split.

    Deterministic given the corpus and config; wall_ms is the only
    nondeterministic column and is written as 0 when record_timing is off.
    """
    train, test = split.train, split.test
    config.validate(train.n_terms)
    if not test.documents:
        raise EmptyTestSplit("the test split contains no documents")

    fitted_model = model_mod.fit(train, config.smoothing_alpha)
    table = ig_scores(train)
    test_csr = csr_from_documents(test.documents, train.n_terms)
    y_true = np.array([doc.label for doc in test.documents], dtype=np.int64)

    rows = []
    for k in config.k_values:
        for clf in config.classifiers:
            t0 = time.perf_counter()
            try:
                scorer, thetas = _fit_cell(config, clf, k, fitted_model, table, train)
                y_pred = decide(scorer, test_csr)
            except Exception as exc:
                raise RuntimeError(f"sweep cell failed: classifier={clf} K={k}") from exc
            wall_ms = (time.perf_counter() - t0) * 1000.0 if config.record_timing else 0.0
            accuracy, macro_f1 = accuracy_and_macro_f1(y_true, y_pred, train.n_classes)
            rows.append(
                SweepRow(
                    classifier=clf,
                    k=k,
                    accuracy=accuracy,
                    macro_f1=macro_f1,
                    thetas=thetas,
                    wall_ms=wall_ms,
                )
            )
    return SweepReport(rows=tuple(rows))


@dataclass(frozen=True)
class SyntheticCorpus:
    """A generated corpus plus the true cells it was sampled from."""

    corpus: LabeledCorpus
    true_cells: np.ndarray  # (N, D)
    separation: float
    seed: int


def generate_synthetic(
    n_classes: int,
    vocab_size: int,
    docs_per_class: int,
    length_range: tuple[int, int] = (30, 120),
    separation: float = 0.5,
    seed: int = 0,
) -> SyntheticCorpus:
    """Sample class multinomials by perturbing a shared base distribution.

    Term j is assigned to the block of class j mod N. Class i's cells are
    (1 - s) * base + s * (base restricted to block i, renormalized), so
    s = 0 makes all classes identical and s = 1 gives disjoint supports.
    """
    if not 0.0 <= separation <= 1.0:
        raise ValueError(f"separation must be in [0, 1], got {separation}")
    if length_range[0] < 1 or length_range[1] < length_range[0]:
        raise ValueError(f"bad length_range {length_range}")
    if vocab_size < 2 * n_classes:
        raise ValueError("need at least two vocabulary terms per class block")

    rng = np.random.default_rng(seed)
    base = rng.dirichlet(np.full(vocab_size, 5.0))
    blocks = np.arange(vocab_size) % n_classes
    cells = np.empty((n_classes, vocab_size), dtype=np.float64)
    for i in range(n_classes):
        own = np.where(blocks == i, base, 0.0)
        own /= own.sum()
        cells[i] = (1.0 - separation) * base + separation * own

    width = len(str(vocab_size - 1))
    vocab = Vocabulary([f"t{j:0{width}d}" for j in range(vocab_size)])
    documents = []
    for i in range(n_classes):
        lengths = rng.integers(length_range[0], length_range[1] + 1, size=docs_per_class)
        draws = rng.multinomial(lengths, cells[i])
        for row in draws:
            nz = np.flatnonzero(row)
            documents.append(
                SparseDocument(
                    counts={int(t): int(row[t]) for t in nz},
                    length=int(row.sum()),
                    label=i,
                )
            )
    corpus = LabeledCorpus(
        vocabulary=vocab,
        documents=tuple(documents),
        class_names=tuple(f"c{i:02d}" for i in range(n_classes)),
        class_doc_counts=tuple([docs_per_class] * n_classes),
    )
    return SyntheticCorpus(
        corpus=corpus, true_cells=cells, separation=separation, seed=seed
    )


def true_cell_bayes_decisions(
    true_cells: np.ndarray,
    documents,
    priors: np.ndarray | None = None,
) -> np.ndarray:
    """MAP decisions under the exact generating cells; the sampled-data optimum.

    Used to validate that a synthetic corpus's separation makes an accuracy
    threshold attainable; any trained classifier's expected accuracy is
    bounded by this rule's.
    """
    n, d = true_cells.shape
    with np.errstate(divide="ignore"):
        log_cells = np.log(true_cells)
    offsets = (
        np.zeros(n) if priors is None else np.log(np.asarray(priors, dtype=np.float64))
    )
    scorer = LinearScorer(
        weights=log_cells, length_coef=np.zeros(n), offsets=offsets
    )
    csr = csr_from_documents(documents, d)
    # -inf cell weights never multiply a stored zero count, so scores stay well formed
    return decide(scorer, csr, impl="python")


def split_corpus_documents(
    corpus: LabeledCorpus, test_frac: float, seed: int
) -> TrainTestCorpus:
    """Seeded random document split of an already-built corpus.

    The vocabulary is kept as is (it was built before the split), so this is
    only appropriate for synthetic corpora whose vocabulary is fixed by
    construction rather than learned from text.
    """
    if not 0.0 < test_frac < 1.0:
        raise ValueError(f"test_frac must be in (0, 1), got {test_frac}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(corpus.documents))
    n_test = int(round(test_frac * len(corpus.documents)))
    if n_test == 0:
        raise EmptyTestSplit(f"test_frac={test_frac} selects no documents")
    test_ids = set(order[:n_test].tolist())
    train_docs, test_docs = [], []
    for i, doc in enumerate(corpus.documents):
        (test_docs if i in test_ids else train_docs).append(doc)

    def make(docs):
        c = [0] * corpus.n_classes
        for doc in docs:
            c[doc.label] += 1
        return LabeledCorpus(
            vocabulary=corpus.vocabulary,
            documents=tuple(docs),
            class_names=corpus.class_names,
            class_doc_counts=tuple(c),
        )

    train = make(train_docs)
    if any(m == 0 for m in train.class_doc_counts):
        bad = train.class_doc_counts.index(0)
        raise EmptyClass(f"class {bad} has no training documents after the split")
    return TrainTestCorpus(train=train, test=make(test_docs))
