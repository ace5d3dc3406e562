"""Text categorization with exponentially embedded families and class-specific features."""

from . import baselines, bench, corpus, eef, features, kernels, model, oracle
from .corpus import (
    LabeledCorpus,
    SparseDocument,
    TokenizerConfig,
    TrainTestCorpus,
    Vocabulary,
    build_corpus,
    project,
    tokenize,
)
from .eef import EefClassParams, EefModel, beta_vector, cumulant_k1, fit_theta
from .features import FeatureSelection, IgScoreTable, ig_scores, select
from .kernels import backend
from .model import MultinomialModel

__version__ = "0.1.0"

__all__ = [
    "LabeledCorpus",
    "SparseDocument",
    "TokenizerConfig",
    "TrainTestCorpus",
    "Vocabulary",
    "build_corpus",
    "project",
    "tokenize",
    "EefClassParams",
    "EefModel",
    "beta_vector",
    "cumulant_k1",
    "fit_theta",
    "FeatureSelection",
    "IgScoreTable",
    "ig_scores",
    "select",
    "backend",
    "MultinomialModel",
    "baselines",
    "bench",
    "corpus",
    "eef",
    "features",
    "kernels",
    "model",
    "oracle",
    "__version__",
]
