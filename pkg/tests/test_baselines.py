"""PPT class-specific rule and common-feature multinomial naive Bayes."""

import numpy as np
import pytest
from scipy.special import gammaln

from eef_textcat import eef
from eef_textcat.baselines import (
    PptModel,
    build_ppt,
    mnb_classify,
    ppt_classify,
    ppt_score,
)
from eef_textcat.bench import generate_synthetic, split_corpus_documents
from eef_textcat.corpus import SparseDocument
from eef_textcat.errors import NonpositiveCell
from eef_textcat.features import (
    CLASS_SPECIFIC,
    COMMON,
    FeatureSelection,
    ig_scores,
    select,
)
from eef_textcat.model import MultinomialModel, fit as fit_model


def simple_two_class(cells, priors=(0.5, 0.5), indices=None, mode=COMMON):
    cells = np.asarray(cells, dtype=np.float64)
    priors = np.asarray(priors, dtype=np.float64)
    model = MultinomialModel(
        cell_probs=cells, priors=priors,
        ref_probs=priors @ cells, smoothing_alpha=0.0,
    )
    k = cells.shape[1] - 1
    if indices is None:
        indices = np.tile(np.arange(k, dtype=np.int64), (2, 1))
    sel = FeatureSelection(
        mode=mode,
        indices=indices,
        k=k,
        class_cells=np.vstack(
            [np.append(cells[i, indices[i]], 1 - cells[i, indices[i]].sum())
             for i in range(2)]
        ),
        ref_cells=np.vstack(
            [np.append(model.ref_probs[indices[i]], 1 - model.ref_probs[indices[i]].sum())
             for i in range(2)]
        ),
    )
    return model, sel


class TestMnb:
    def test_empty_doc_takes_prior_argmax(self):
        model, sel = simple_two_class([[0.5, 0.5], [0.5, 0.5]], priors=(0.3, 0.7))
        assert mnb_classify(model, sel, SparseDocument({}, 0)) == 1

    def test_identical_class_models_tie_to_lowest(self):
        model, sel = simple_two_class([[0.4, 0.6], [0.4, 0.6]])
        for counts, l in ({}, 0), ({0: 3}, 3), ({0: 1, 1: 2}, 3):
            assert mnb_classify(model, sel, SparseDocument(counts, l)) == 0

    def test_mass_on_favored_cell(self):
        model, sel = simple_two_class([[0.9, 0.1], [0.1, 0.9]])
        assert mnb_classify(model, sel, SparseDocument({0: 5}, 5)) == 0
        assert mnb_classify(model, sel, SparseDocument({1: 5}, 5)) == 1

    def test_requires_common_selection(self):
        model, sel = simple_two_class([[0.9, 0.1], [0.1, 0.9]], mode=CLASS_SPECIFIC)
        with pytest.raises(ValueError):
            mnb_classify(model, sel, SparseDocument({0: 1}, 1))

    def test_decision_invariant_to_multinomial_coefficient(self):
        # adding ln(l!/prod z_k!) to every class score never moves the argmax
        rng = np.random.default_rng(3)
        synth = generate_synthetic(3, 20, 30, length_range=(3, 15), seed=14)
        model = fit_model(synth.corpus)
        table = ig_scores(synth.corpus)
        sel = select(table, model, 5, COMMON)
        log_cells = np.log(sel.class_cells)
        log_priors = np.log(model.priors)
        from eef_textcat.features import reduced_counts

        for doc in synth.corpus.documents[:60]:
            z = reduced_counts(doc.counts, sel.indices[0], doc.length)
            plain = log_cells @ z + log_priors
            coeff = float(gammaln(doc.length + 1) - gammaln(z + 1).sum())
            assert int(np.argmax(plain)) == int(np.argmax(plain + coeff))
            assert int(np.argmax(plain)) == mnb_classify(model, sel, doc)


class TestPptScore:
    def test_class_equals_reference_gives_prior(self):
        cells = np.array([0.25, 0.75])
        model = PptModel(
            class_cells=cells[None, :], ref_cells=cells[None, :],
            log_priors=np.array([np.log(0.4)]),
            selection=None,
        )
        np.testing.assert_allclose(
            ppt_score(model, 0, np.array([3.0, 2.0])), np.log(0.4), atol=1e-12
        )

    def test_hand_case_matches_eef_theta_one(self):
        model = PptModel(
            class_cells=np.array([[0.5, 0.5]]),
            ref_cells=np.array([[0.25, 0.75]]),
            log_priors=np.array([np.log(0.5)]),
            selection=None,
        )
        expected = np.log(2) + np.log(2.0 / 3.0) + np.log(0.5)
        np.testing.assert_allclose(
            ppt_score(model, 0, np.array([1.0, 1.0])), expected, atol=1e-12
        )

    def test_linear_in_counts(self):
        model = PptModel(
            class_cells=np.array([[0.5, 0.2, 0.3]]),
            ref_cells=np.array([[0.3, 0.3, 0.4]]),
            log_priors=np.array([np.log(0.5)]),
            selection=None,
        )
        z = np.array([2.0, 1.0, 3.0])
        base = ppt_score(model, 0, z) - np.log(0.5)
        for m in (2, 3, 5):
            scaled = ppt_score(model, 0, m * z) - np.log(0.5)
            np.testing.assert_allclose(scaled, m * base, rtol=1e-12)


class TestPptClassify:
    def test_mirror_symmetric_classes(self):
        cells = np.array([[0.4, 0.3, 0.2, 0.1], [0.1, 0.2, 0.3, 0.4]])
        model_m, sel = simple_two_class(
            cells, indices=np.array([[0, 1], [3, 2]], dtype=np.int64),
            mode=CLASS_SPECIFIC,
        )
        ppt = build_ppt(model_m, sel)
        assert ppt_classify(ppt, SparseDocument({0: 5, 1: 2}, 7)) == 0
        assert ppt_classify(ppt, SparseDocument({3: 5, 2: 2}, 7)) == 1

    def test_empty_doc_prior_argmax(self):
        model_m, sel = simple_two_class(
            [[0.4, 0.6], [0.6, 0.4]], priors=(0.2, 0.8), mode=CLASS_SPECIFIC
        )
        ppt = build_ppt(model_m, sel)
        assert ppt_classify(ppt, SparseDocument({}, 0)) == 1

    def test_agrees_with_eef_pinned_at_one(self):
        synth = generate_synthetic(3, 40, 50, length_range=(5, 30), seed=9)
        split = split_corpus_documents(synth.corpus, 0.4, seed=10)
        model = fit_model(split.train)
        table = ig_scores(split.train)
        sel = select(table, model, 8, CLASS_SPECIFIC)
        ppt = build_ppt(model, sel)
        pinned = eef.fit(model, sel, split.train, domain=(1.0, 1.0))
        assert all(t == 1.0 for t in pinned.thetas)
        for doc in split.test.documents:
            assert ppt_classify(ppt, doc) == eef.classify(pinned, doc)

    def test_build_ppt_rejects_zero_cells(self):
        cells = np.array([[0.5, 0.5, 0.0], [0.2, 0.3, 0.5]])
        priors = np.array([0.5, 0.5])
        model = MultinomialModel(
            cell_probs=cells, priors=priors,
            ref_probs=priors @ cells, smoothing_alpha=0.0,
        )
        indices = np.tile(np.array([2, 1], dtype=np.int64), (2, 1))
        sel = FeatureSelection(
            mode=CLASS_SPECIFIC, indices=indices, k=2,
            class_cells=np.vstack(
                [np.append(cells[i, indices[i]], 1 - cells[i, indices[i]].sum())
                 for i in range(2)]
            ),
            ref_cells=np.vstack(
                [np.append(model.ref_probs[indices[i]],
                           1 - model.ref_probs[indices[i]].sum()) for i in range(2)]
            ),
        )
        with pytest.raises(NonpositiveCell):
            build_ppt(model, sel)
