"""Corpus ingestion: tokenization, vocabulary-indexed sparse documents, splits.

Documents are bags of term counts. The vocabulary is always built from the
training documents only; test documents are projected into it with
out-of-vocabulary counts dropped and the length recomputed.
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyClass, EmptyTestSplit, VocabularyTooSmall

_TOKEN_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


@dataclass(frozen=True)
class TokenizerConfig:
    """Lowercase letter-run tokenizer settings; deliberately simple and deterministic."""

    min_len: int = 2
    stop_words: frozenset[str] = frozenset()


DEFAULT_TOKENIZER = TokenizerConfig()


def tokenize(text: str, config: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    """Split text into lowercased alphabetic runs.

    Runs shorter than ``config.min_len`` and stop words are dropped; digits,
    punctuation and underscores act as boundaries.
    """
    tokens = _TOKEN_RE.findall(text.lower())
    return [
        t for t in tokens if len(t) >= config.min_len and t not in config.stop_words
    ]


class Vocabulary:
    """Ordered list of distinct terms plus the inverse term -> position map."""

    __slots__ = ("terms", "index")

    def __init__(self, terms: Sequence[str]):
        terms = tuple(terms)
        if len(terms) < 2:
            raise VocabularyTooSmall(f"need at least 2 distinct terms, got {len(terms)}")
        index = {t: i for i, t in enumerate(terms)}
        if len(index) != len(terms):
            raise ValueError("vocabulary terms must be unique")
        self.terms = terms
        self.index = index

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"Vocabulary({len(self.terms)} terms)"


@dataclass(frozen=True)
class SparseDocument:
    """One document as sparse term-index counts.

    ``counts`` holds only nonzero entries; ``length`` is their sum. ``label``
    is a class index or None for unlabeled documents.
    """

    counts: dict[int, int]
    length: int
    label: int | None = None

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], label: int | None = None) -> "SparseDocument":
        kept = {}
        for idx, cnt in counts.items():
            if cnt < 0:
                raise ValueError(f"negative count {cnt} for term index {idx}")
            if cnt > 0:
                kept[int(idx)] = int(cnt)
        return cls(counts=kept, length=sum(kept.values()), label=label)


@dataclass(frozen=True)
class LabeledCorpus:
    """Immutable labeled document collection over a fixed vocabulary."""

    vocabulary: Vocabulary
    documents: tuple[SparseDocument, ...]
    class_names: tuple[str, ...]
    class_doc_counts: tuple[int, ...]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def n_terms(self) -> int:
        return len(self.vocabulary)

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class TrainTestCorpus:
    """A train corpus plus a test corpus projected into the train vocabulary."""

    train: LabeledCorpus
    test: LabeledCorpus


def _as_counter(tokens) -> Counter:
    if isinstance(tokens, Mapping):
        return Counter({t: int(c) for t, c in tokens.items() if int(c) > 0})
    return Counter(tokens)


def build_corpus(
    docs: Sequence[tuple[int, object]],
    class_names: Sequence[str] | None = None,
) -> LabeledCorpus:
    """Build a LabeledCorpus from (label, tokens) pairs.

    ``tokens`` may be a token sequence or a term -> count mapping. The
    vocabulary is the sorted set of all terms seen here, so call this on the
    training split only. Every declared class must have at least one document.
    """
    counted = [(int(label), _as_counter(tokens)) for label, tokens in docs]
    if class_names is None:
        n_classes = max((label for label, _ in counted), default=-1) + 1
        class_names = tuple(f"class_{i}" for i in range(n_classes))
    else:
        class_names = tuple(class_names)
        n_classes = len(class_names)

    doc_counts = [0] * n_classes
    for label, _ in counted:
        if not 0 <= label < n_classes:
            raise ValueError(f"label {label} outside [0, {n_classes})")
        doc_counts[label] += 1
    for i, m in enumerate(doc_counts):
        if m == 0:
            raise EmptyClass(f"class {i} ({class_names[i]!r}) has no documents")

    terms = sorted({t for _, counter in counted for t in counter})
    if len(terms) < 2:
        raise VocabularyTooSmall(f"need at least 2 distinct terms, got {len(terms)}")
    vocab = Vocabulary(terms)

    documents = tuple(
        SparseDocument.from_counts(
            {vocab.index[t]: c for t, c in counter.items()}, label=label
        )
        for label, counter in counted
    )
    return LabeledCorpus(
        vocabulary=vocab,
        documents=documents,
        class_names=class_names,
        class_doc_counts=tuple(doc_counts),
    )


def project(
    doc,
    vocab: Vocabulary,
    source_vocab: Vocabulary | None = None,
) -> SparseDocument:
    """Re-express a document in ``vocab``, dropping out-of-vocabulary counts.

    ``doc`` is either a term -> count mapping (strings), or a SparseDocument
    whose indices refer to ``source_vocab``. The returned length is recomputed
    from the surviving counts, since the multinomial cells are defined only
    over the training dictionary.
    """
    if isinstance(doc, SparseDocument):
        if source_vocab is None:
            raise ValueError("source_vocab is required to project a SparseDocument")
        term_counts = {source_vocab.terms[i]: c for i, c in doc.counts.items()}
        label = doc.label
    else:
        term_counts = doc
        label = None
    kept = {
        vocab.index[t]: int(c)
        for t, c in term_counts.items()
        if t in vocab.index and int(c) > 0
    }
    return SparseDocument(counts=kept, length=sum(kept.values()), label=label)


def corpus_split(
    train_docs: Sequence[tuple[int, object]],
    test_docs: Sequence[tuple[int, object]],
    class_names: Sequence[str] | None = None,
) -> TrainTestCorpus:
    """Build the train corpus, then project the test documents into its vocabulary."""
    train = build_corpus(train_docs, class_names=class_names)
    test_counts = [0] * train.n_classes
    projected = []
    for label, tokens in test_docs:
        label = int(label)
        if not 0 <= label < train.n_classes:
            raise ValueError(f"test label {label} outside [0, {train.n_classes})")
        counter = _as_counter(tokens)
        doc = project(dict(counter), train.vocabulary)
        projected.append(SparseDocument(doc.counts, doc.length, label=label))
        test_counts[label] += 1
    return TrainTestCorpus(
        train=train,
        test=LabeledCorpus(
            vocabulary=train.vocabulary,
            documents=tuple(projected),
            class_names=train.class_names,
            class_doc_counts=tuple(test_counts),
        ),
    )


def split_pairs(
    pairs: Sequence[tuple[int, object]],
    test_frac: float,
    seed: int,
) -> tuple[list, list]:
    """Seeded random split of (label, tokens) pairs into train/test lists."""
    if not 0.0 < test_frac < 1.0:
        raise ValueError(f"test_frac must be in (0, 1), got {test_frac}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(pairs))
    n_test = int(round(test_frac * len(pairs)))
    if n_test == 0:
        raise EmptyTestSplit(f"test_frac={test_frac} selects no documents")
    test_idx = set(order[:n_test].tolist())
    train = [pairs[i] for i in range(len(pairs)) if i not in test_idx]
    test = [pairs[i] for i in range(len(pairs)) if i in test_idx]
    return train, test


def read_directory_corpus(
    root: str | Path,
    config: TokenizerConfig = DEFAULT_TOKENIZER,
) -> tuple[list[tuple[int, list[str]]], tuple[str, ...]]:
    """Read ``<root>/<class_name>/<doc>.txt`` into (label, tokens) pairs.

    Class names are the sorted subdirectory names; files are read in sorted
    order for determinism.
    """
    root = Path(root)
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not class_dirs:
        raise EmptyClass(f"no class subdirectories under {root}")
    class_names = tuple(p.name for p in class_dirs)
    pairs = []
    for label, class_dir in enumerate(class_dirs):
        for doc_path in sorted(class_dir.glob("*.txt")):
            text = doc_path.read_text(encoding="utf-8")
            pairs.append((label, tokenize(text, config)))
    return pairs, class_names


def read_tokenized_lines(
    path: str | Path,
) -> tuple[list[tuple[int, dict[str, int]]], tuple[str, ...]]:
    """Read the pre-tokenized line format: ``label<TAB>term:count term:count ...``.

    Labels are arbitrary strings; class indices follow their sorted order.
    """
    raw = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                label, _, rest = line.partition("\t")
                counts: dict[str, int] = {}
                for item in rest.split():
                    term, _, cnt = item.rpartition(":")
                    counts[term] = counts.get(term, 0) + int(cnt)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed line") from exc
            if any(c < 0 for c in counts.values()):
                raise ValueError(f"{path}:{lineno}: negative count")
            raw.append((label, counts))
    class_names = tuple(sorted({label for label, _ in raw}))
    name_to_idx = {name: i for i, name in enumerate(class_names)}
    return [(name_to_idx[label], counts) for label, counts in raw], class_names


def write_tokenized_lines(path: str | Path, corpus: LabeledCorpus) -> None:
    """Write a corpus in the pre-tokenized line format (UTF-8, one doc per line)."""
    terms = corpus.vocabulary.terms
    with open(path, "w", encoding="utf-8") as fh:
        for doc in corpus.documents:
            if doc.label is None:
                raise ValueError("cannot serialize an unlabeled document")
            name = corpus.class_names[doc.label]
            items = " ".join(
                f"{terms[i]}:{doc.counts[i]}" for i in sorted(doc.counts)
            )
            fh.write(f"{name}\t{items}\n")
