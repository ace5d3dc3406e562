"""Tokenizer, corpus builder, projection, and the on-disk formats."""

import numpy as np
import pytest

from eef_textcat.bench import generate_synthetic
from eef_textcat.corpus import (
    SparseDocument,
    TokenizerConfig,
    Vocabulary,
    build_corpus,
    corpus_split,
    project,
    read_directory_corpus,
    read_tokenized_lines,
    split_pairs,
    tokenize,
    write_tokenized_lines,
)
from eef_textcat.errors import EmptyClass, EmptyTestSplit, VocabularyTooSmall


class TestTokenize:
    def test_case_fold_and_punctuation(self):
        assert tokenize("The cat, the CAT.") == ["the", "cat", "the", "cat"]

    def test_empty_input(self):
        assert tokenize("") == []

    def test_digit_splitting_drops_short_fragments(self):
        # "b3c" splits into "b" and "c", both under min_len=2
        assert tokenize("a b3c xyz") == ["xyz"]

    def test_min_len_config(self):
        assert tokenize("a b3c xyz", TokenizerConfig(min_len=1)) == ["a", "b", "c", "xyz"]

    def test_stop_words(self):
        config = TokenizerConfig(stop_words=frozenset({"the"}))
        assert tokenize("The cat the cat", config) == ["cat", "cat"]


class TestBuildCorpus:
    def test_counts_lengths_and_doc_counts(self):
        corpus = build_corpus([(0, ["a", "b", "a"]), (1, ["b"])])
        assert corpus.vocabulary.terms == ("a", "b")
        assert corpus.documents[0].counts == {0: 2, 1: 1}
        assert corpus.documents[0].length == 3
        assert corpus.documents[1].counts == {1: 1}
        assert corpus.documents[1].length == 1
        assert corpus.class_doc_counts == (1, 1)

    def test_empty_class_with_declared_names(self):
        with pytest.raises(EmptyClass):
            build_corpus([(0, ["a", "a"])], class_names=["zero", "one"])

    def test_vocabulary_too_small(self):
        with pytest.raises(VocabularyTooSmall):
            build_corpus([(0, ["x"]), (1, ["x"])])

    def test_accepts_count_mappings(self):
        corpus = build_corpus([(0, {"a": 2, "b": 1}), (1, {"b": 3})])
        assert corpus.documents[0].counts == {0: 2, 1: 1}
        assert corpus.documents[1].counts == {1: 3}

    def test_length_matches_count_sum(self):
        corpus = build_corpus([(0, ["a", "b", "a", "c"]), (1, ["c", "b"])])
        for doc in corpus.documents:
            assert doc.length == sum(doc.counts.values())


class TestProject:
    def test_oov_dropped_and_length_recomputed(self):
        vocab = Vocabulary(["a", "b"])
        doc = project({"a": 2, "z": 1}, vocab)
        assert doc.counts == {0: 2}
        assert doc.length == 2

    def test_identity_when_all_in_vocab(self):
        vocab = Vocabulary(["a", "b"])
        doc = project({"a": 1, "b": 1}, vocab)
        assert doc.counts == {0: 1, 1: 1}
        assert doc.length == 2

    def test_all_oov_gives_empty_document(self):
        vocab = Vocabulary(["a", "b"])
        doc = project({"z": 3}, vocab)
        assert doc.counts == {}
        assert doc.length == 0

    def test_training_round_trip_is_identity(self):
        corpus = build_corpus([(0, ["a", "b", "a"]), (1, ["b", "c", "c"])])
        for doc in corpus.documents:
            back = project(doc, corpus.vocabulary, source_vocab=corpus.vocabulary)
            assert back.counts == doc.counts
            assert back.length == doc.length

    def test_sparse_document_requires_source_vocab(self):
        vocab = Vocabulary(["a", "b"])
        with pytest.raises(ValueError):
            project(SparseDocument({0: 1}, 1), vocab)


def test_per_class_length_totals_match_token_counts():
    synth = generate_synthetic(3, 30, 20, length_range=(5, 15), seed=3)
    corpus = synth.corpus
    for i in range(corpus.n_classes):
        docs = [d for d in corpus.documents if d.label == i]
        total_tokens = sum(c for d in docs for c in d.counts.values())
        assert sum(d.length for d in docs) == total_tokens


class TestCorpusSplit:
    def test_vocabulary_from_train_only(self):
        split = corpus_split(
            [(0, ["aa", "bb"]), (1, ["cc"])],
            [(0, ["aa", "zz"])],
        )
        assert "zz" not in split.train.vocabulary
        # the test doc lost its OOV token
        assert split.test.documents[0].length == 1
        assert split.test.documents[0].label == 0

    def test_test_label_out_of_range(self):
        with pytest.raises(ValueError):
            corpus_split([(0, ["aa", "bb"]), (1, ["cc"])], [(2, ["aa"])])


class TestSplitPairs:
    def test_deterministic_and_disjoint(self):
        pairs = [(i % 2, [f"w{i}", "shared"]) for i in range(20)]
        train1, test1 = split_pairs(pairs, 0.25, seed=9)
        train2, test2 = split_pairs(pairs, 0.25, seed=9)
        assert train1 == train2 and test1 == test2
        assert len(test1) == 5
        assert len(train1) + len(test1) == len(pairs)

    def test_different_seeds_differ(self):
        pairs = [(0, [f"w{i}"]) for i in range(30)]
        _, test_a = split_pairs(pairs, 0.5, seed=1)
        _, test_b = split_pairs(pairs, 0.5, seed=2)
        assert test_a != test_b

    def test_empty_test_split(self):
        pairs = [(0, ["a"]) for _ in range(10)]
        with pytest.raises(EmptyTestSplit):
            split_pairs(pairs, 0.01, seed=0)

    def test_bad_fraction(self):
        with pytest.raises(ValueError):
            split_pairs([(0, ["a"])], 1.5, seed=0)


class TestDirectoryFormat:
    def test_reads_sorted_classes_and_files(self, tmp_path):
        for name, texts in [("alpha", ["aa bb", "bb cc"]), ("beta", ["dd aa"])]:
            d = tmp_path / name
            d.mkdir()
            for i, text in enumerate(texts):
                (d / f"doc{i}.txt").write_text(text, encoding="utf-8")
        pairs, class_names = read_directory_corpus(tmp_path)
        assert class_names == ("alpha", "beta")
        assert pairs == [(0, ["aa", "bb"]), (0, ["bb", "cc"]), (1, ["dd", "aa"])]

    def test_empty_root(self, tmp_path):
        with pytest.raises(EmptyClass):
            read_directory_corpus(tmp_path)


class TestTokenizedLineFormat:
    def test_round_trip(self, tmp_path):
        corpus = build_corpus(
            [(0, {"aa": 2, "bb": 1}), (1, {"bb": 4})], class_names=["neg", "pos"]
        )
        path = tmp_path / "corpus.txt"
        write_tokenized_lines(path, corpus)
        pairs, class_names = read_tokenized_lines(path)
        assert class_names == ("neg", "pos")
        rebuilt = build_corpus(pairs, class_names=class_names)
        assert rebuilt.vocabulary.terms == corpus.vocabulary.terms
        assert [d.counts for d in rebuilt.documents] == [d.counts for d in corpus.documents]

    def test_parses_counts(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("pos\taa:2 bb:1\nneg\tbb:3\n", encoding="utf-8")
        pairs, class_names = read_tokenized_lines(path)
        assert class_names == ("neg", "pos")
        assert pairs == [(1, {"aa": 2, "bb": 1}), (0, {"bb": 3})]

    def test_malformed_count(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("pos\taa:x\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_tokenized_lines(path)
