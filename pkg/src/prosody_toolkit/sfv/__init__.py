"""Source feature vectors, model input layouts and the addition transform."""

from .addition import apply_addition, apply_word_offset
from .builder import (
    SourceFeatureVector,
    WordValues,
    build_sfv,
    load_sfv,
    save_sfv,
    word_averages,
    zero_sfv,
)
from .model_inputs import (
    InjectionSite,
    InputMode,
    ModelInputs,
    PhonemeVocabulary,
    build_model_inputs,
    save_model_inputs,
)

__all__ = [
    "apply_addition",
    "apply_word_offset",
    "SourceFeatureVector",
    "WordValues",
    "build_sfv",
    "load_sfv",
    "save_sfv",
    "word_averages",
    "zero_sfv",
    "InjectionSite",
    "InputMode",
    "ModelInputs",
    "PhonemeVocabulary",
    "build_model_inputs",
    "save_model_inputs",
]
