"""Composite taste modelling: mixture bounds, hybrid correction and inverse design."""

import json

from ._core import (
    Corpus,
    Model,
    UserError,
    hs_bounds,
    load_corpus,
    load_corpus_dir,
    parse_corpus,
    planted_salt_corpus,
    repair,
    reuss,
    synthetic_corpus,
    train,
    voigt,
)
from . import _core

__all__ = [
    "Corpus",
    "Model",
    "UserError",
    "design",
    "evaluate",
    "hs_bounds",
    "load_corpus",
    "load_corpus_dir",
    "parse_corpus",
    "planted_salt_corpus",
    "predict",
    "repair",
    "reuss",
    "synthetic_corpus",
    "train",
    "voigt",
]


def predict(model, components):
    """Forward prediction for [(ingredient_id, fraction), ...] or a dict."""
    if isinstance(components, dict):
        components = list(components.items())
    return json.loads(model.predict_json(list(components)))


def design(model, scenario):
    return json.loads(model.design_json(json.dumps(scenario)))


def evaluate(corpus, models=(), kfold=False, seed=42):
    return json.loads(_core.evaluate_json(corpus, list(models), kfold, seed))
