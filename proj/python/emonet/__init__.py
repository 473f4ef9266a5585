"""Emotion co-occurrence networks from text corpora.

Thin bindings over the C++ core: lexicon matching, the degree-preserving null
model, link significance and the comparison statistics. ``run_cli`` runs any
``emonet`` subcommand in process.
"""

from ._emonet import (
    DIMENSIONS,
    EMOTION_LINKS,
    ConfigError,
    DataError,
    DegenerateError,
    Lexicon,
    fdr_adjust,
    jaccard,
    link_stability,
    null_moments,
    pair_weights,
    rescale,
    run_cli,
    spearman,
    synthesize,
    ttest,
    weight_cutoff,
)

__all__ = [
    "DIMENSIONS",
    "EMOTION_LINKS",
    "ConfigError",
    "DataError",
    "DegenerateError",
    "Lexicon",
    "fdr_adjust",
    "jaccard",
    "link_stability",
    "null_moments",
    "pair_weights",
    "rescale",
    "run_cli",
    "spearman",
    "synthesize",
    "ttest",
    "weight_cutoff",
]
