"""Engagement-weighted IDF-LDA keyword detection.

Pipeline: ingest posts -> IDF-filter the vocabulary -> keep the most
popular posts -> replicate each by its engagement weight -> fit LDA by
collapsed Gibbs sampling -> read top words per topic as keywords ->
score them against labeled keyword sets.
"""

from .corpus import (
    EmptyVocabularyError,
    EncodedDoc,
    IngestError,
    Post,
    Vocabulary,
    build_vocabulary,
    ingest,
    term_frequency,
)
from .filtering import (
    EmptyCorpusError,
    IdfTable,
    WeightedCorpus,
    WeightedDoc,
    build_weighted_corpus,
    compute_idf,
    compute_weight,
    default_idf_thresholds,
    filter_vocabulary,
    popularity,
    select_top_popular,
)
from .lda import (
    GibbsSampler,
    LdaConfig,
    LdaModel,
    SamplerState,
    fit,
    load_model,
    log_joint,
    save_model,
    top_words,
    topic_rank,
)
from .evaluation import (
    ComparisonTable,
    EvalReport,
    LabelSet,
    SyntheticSpec,
    compare_models,
    detected_keywords,
    generate_synthetic,
    load_labels,
    score,
)

__version__ = "0.1.0"

__all__ = [
    "Post",
    "Vocabulary",
    "EncodedDoc",
    "IngestError",
    "EmptyVocabularyError",
    "EmptyCorpusError",
    "ingest",
    "term_frequency",
    "build_vocabulary",
    "IdfTable",
    "WeightedDoc",
    "WeightedCorpus",
    "compute_idf",
    "default_idf_thresholds",
    "filter_vocabulary",
    "popularity",
    "select_top_popular",
    "compute_weight",
    "build_weighted_corpus",
    "LdaConfig",
    "LdaModel",
    "SamplerState",
    "GibbsSampler",
    "fit",
    "log_joint",
    "top_words",
    "topic_rank",
    "save_model",
    "load_model",
    "LabelSet",
    "EvalReport",
    "SyntheticSpec",
    "ComparisonTable",
    "detected_keywords",
    "score",
    "compare_models",
    "generate_synthetic",
    "load_labels",
]
