"""
SFV Tests
---------

Word averaging, SFV construction against a brute-force enumeration of
(target word, linked source words) pairs, model input layouts and the
addition transform.
"""

import json
import os
import sys

import allure
import numpy as np
import pytest

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.prosody_toolkit.alignment import WordAlignment, parse_utterance_record  # noqa: E402
from src.prosody_toolkit.errors import (  # noqa: E402
    IndexOutOfRange,
    LengthMismatch,
    MissingInput,
    SchemaError,
    VocabMiss,
)
from src.prosody_toolkit.features import FeatureKind, PhonemeValues  # noqa: E402
from src.prosody_toolkit.sfv import (  # noqa: E402
    InjectionSite,
    InputMode,
    PhonemeVocabulary,
    SourceFeatureVector,
    WordValues,
    apply_addition,
    apply_word_offset,
    build_model_inputs,
    build_sfv,
    load_sfv,
    save_model_inputs,
    save_sfv,
    word_averages,
    zero_sfv,
)
from src.prosody_toolkit.utils.jsonio import write_json  # noqa: E402


def make_utterance(uid: str, language: str, word_sizes: list[int], silence_between: bool = False, rng=None):
    """Utterance with words of the given phoneme counts, optionally separated by silences."""
    phonemes, durations, words = [], [], []
    for w, size in enumerate(int(s) for s in word_sizes):
        if silence_between and w > 0:
            phonemes.append("sil")
            durations.append(2)
        start = len(phonemes)
        for p in range(size):
            phonemes.append(f"P{(w + p) % 7}")
            durations.append(int(rng.integers(1, 6)) if rng is not None else 1)
        words.append({"text": f"w{w}", "span": [start, start + size]})
    return parse_utterance_record(
        {"id": uid, "language": language, "phonemes": phonemes, "durations": durations, "words": words}
    )


def oracle_sfv(src_pitch, src_energy, links, tgt):
    pitch = [0.0] * tgt.num_phonemes
    energy = [0.0] * tgt.num_phonemes
    mask = [False] * tgt.num_phonemes
    for j, word in enumerate(tgt.words):
        linked = [i for i in range(len(src_pitch)) if (i, j) in links]
        if not linked:
            continue
        p = float(np.mean(np.array([src_pitch[i] for i in linked])))
        e = float(np.mean(np.array([src_energy[i] for i in linked])))
        for k in range(word.start, word.end):
            pitch[k], energy[k], mask[k] = p, e, True
    return pitch, energy, mask


def test_word_averages_examples() -> None:
    utt = parse_utterance_record(
        {
            "id": "u",
            "language": "en",
            "phonemes": ["a", "b", "c"],
            "durations": [1, 1, 1],
            "words": [{"text": "ab", "span": [0, 2]}, {"text": "c", "span": [2, 3]}],
        }
    )
    values = word_averages(PhonemeValues([0.5, 0.5, -1.0], FeatureKind.PITCH, True), utt)
    np.testing.assert_allclose(values.values, [0.5, -1.0])

    weighted = parse_utterance_record(
        {
            "id": "v",
            "language": "en",
            "phonemes": ["a", "b"],
            "durations": [1, 3],
            "words": [{"text": "x", "span": [0, 2]}],
        }
    )
    assert word_averages(PhonemeValues([1.0, 3.0], FeatureKind.ENERGY, True), weighted).values[0] == 2.5


def test_word_averages_weight_by_voiced_support() -> None:
    utt = make_utterance("u", "en", [2, 2])
    values = PhonemeValues([1.0, 4.0, 0.0, 0.0], FeatureKind.PITCH, True, support=[1, 3, 0, 0])
    averages = word_averages(values, utt)
    np.testing.assert_allclose(averages.values, [3.25, 0.0])
    with pytest.raises(LengthMismatch):
        word_averages(PhonemeValues([1.0], FeatureKind.PITCH, True), utt)


def test_build_sfv_many_to_one_mean() -> None:
    tgt = make_utterance("t", "de", [3])
    src_pitch = WordValues([0.5, -1.0], FeatureKind.PITCH)
    src_energy = WordValues([0.2, 0.4], FeatureKind.ENERGY)
    sfv = build_sfv(src_pitch, src_energy, WordAlignment.from_pairs([(0, 0), (1, 0)]), tgt)
    np.testing.assert_array_equal(sfv.pitch, [-0.25, -0.25, -0.25])
    np.testing.assert_allclose(sfv.energy, [0.3, 0.3, 0.3])
    assert sfv.aligned_mask.all()


def test_build_sfv_unaligned_words_are_zero() -> None:
    tgt = make_utterance("t", "de", [2, 2], silence_between=True)
    src_pitch = WordValues([1.5], FeatureKind.PITCH)
    src_energy = WordValues([-0.5], FeatureKind.ENERGY)
    sfv = build_sfv(src_pitch, src_energy, WordAlignment.from_pairs([(0, 1)]), tgt)
    np.testing.assert_array_equal(sfv.pitch, [0.0, 0.0, 0.0, 1.5, 1.5])
    np.testing.assert_array_equal(sfv.aligned_mask, [False, False, False, True, True])

    empty = build_sfv(src_pitch, src_energy, WordAlignment(frozenset()), tgt)
    assert not empty.aligned_mask.any()
    np.testing.assert_array_equal(empty.pitch, zero_sfv(tgt).pitch)
    np.testing.assert_array_equal(empty.energy, zero_sfv(tgt).energy)


def test_build_sfv_rejects_out_of_range_links() -> None:
    tgt = make_utterance("t", "de", [1, 1])
    src = WordValues([0.0], FeatureKind.PITCH)
    with pytest.raises(IndexOutOfRange):
        build_sfv(src, src, WordAlignment.from_pairs([(1, 0)]), tgt)
    with pytest.raises(IndexOutOfRange):
        build_sfv(src, src, WordAlignment.from_pairs([(0, 2)]), tgt)


def test_build_sfv_matches_enumeration_oracle() -> None:
    rng = np.random.default_rng(2024)
    for trial in range(200):
        n_src = int(rng.integers(0, 11))
        n_tgt = int(rng.integers(1, 11))
        tgt = make_utterance("t", "de", list(rng.integers(1, 4, n_tgt)), silence_between=bool(rng.integers(0, 2)))
        src_pitch = rng.normal(size=n_src)
        src_energy = rng.normal(size=n_src)
        links = {(i, j) for i in range(n_src) for j in range(n_tgt) if rng.random() < 0.2}

        sfv = build_sfv(
            WordValues(src_pitch, FeatureKind.PITCH),
            WordValues(src_energy, FeatureKind.ENERGY),
            WordAlignment.from_pairs(links),
            tgt,
        )
        pitch, energy, mask = oracle_sfv(list(src_pitch), list(src_energy), links, tgt)
        assert sfv.pitch.tolist() == pitch, f"trial {trial}"
        assert sfv.energy.tolist() == energy, f"trial {trial}"
        assert sfv.aligned_mask.tolist() == mask, f"trial {trial}"
        assert np.all(sfv.pitch[~sfv.aligned_mask] == 0) and np.all(sfv.energy[~sfv.aligned_mask] == 0)
        for word in tgt.words:
            assert len(set(sfv.pitch[word.start : word.end].tolist())) == 1


def test_zero_sfv_shape() -> None:
    tgt = make_utterance("t", "de", [3, 4])
    sfv = zero_sfv(tgt)
    assert len(sfv) == 7
    assert not sfv.pitch.any() and not sfv.energy.any() and not sfv.aligned_mask.any()


def test_sfv_rejects_values_at_unaligned_positions() -> None:
    with pytest.raises(ValueError):
        SourceFeatureVector([0.5], [0.0], [False])
    with pytest.raises(LengthMismatch):
        SourceFeatureVector([0.0, 0.0], [0.0], [False, False])


def test_sfv_file_round_trip(tmp_path) -> None:
    sfv = SourceFeatureVector([0.0, -0.25], [0.0, 0.1], [False, True])
    save_sfv(tmp_path / "t.json", "t", sfv)
    uid, loaded = load_sfv(tmp_path / "t.json")
    assert uid == "t"
    np.testing.assert_array_equal(loaded.pitch, sfv.pitch)
    np.testing.assert_array_equal(loaded.aligned_mask, sfv.aligned_mask)
    write_json(tmp_path / "bad.json", {"utterance_id": "t", "pitch": [1.0], "energy": [0.0], "aligned_mask": [False]})
    with pytest.raises(SchemaError):
        load_sfv(tmp_path / "bad.json")


@pytest.fixture(scope="module")
def pair():
    src = make_utterance("s", "en", [2, 3])
    tgt = make_utterance("t", "de", [3, 1, 4])
    return src, tgt, PhonemeVocabulary.from_utterances([src, tgt])


def test_vocabulary_namespaces_and_padding(pair, tmp_path) -> None:
    src, tgt, vocab = pair
    assert vocab.tokens[0] == "<pad>"
    assert "P0@en" in vocab and "P0@de" in vocab
    assert vocab.id_of("P0", "en") != vocab.id_of("P0", "de")
    assert 0 not in vocab.encode(src) + vocab.encode(tgt)
    vocab.save(tmp_path / "vocab.json")
    assert PhonemeVocabulary.load(tmp_path / "vocab.json").tokens == vocab.tokens
    with pytest.raises(VocabMiss):
        vocab.id_of("P0", "fr")


def test_pho_concatenates_source_then_target(pair) -> None:
    src, tgt, vocab = pair
    inputs = build_model_inputs("pho", src, tgt, None, vocab)
    assert len(inputs.phoneme_ids) == 5 + 8
    assert inputs.sfv_channels is None
    assert inputs.injection_site is InjectionSite.NONE
    tokens = vocab.tokens
    assert all(tokens[i].endswith("@en") for i in inputs.phoneme_ids[:5])
    assert all(tokens[i].endswith("@de") for i in inputs.phoneme_ids[5:])
    with pytest.raises(MissingInput):
        build_model_inputs("pho", None, tgt, None, vocab)


def test_pho_length_on_random_pairs() -> None:
    rng = np.random.default_rng(5)
    for _ in range(100):
        src = make_utterance("s", "en", list(rng.integers(1, 4, int(rng.integers(1, 8)))))
        tgt = make_utterance("t", "de", list(rng.integers(1, 4, int(rng.integers(1, 8)))), silence_between=True)
        vocab = PhonemeVocabulary.from_utterances([src, tgt])
        inputs = build_model_inputs(InputMode.PHO, src, tgt, None, vocab)
        assert len(inputs.phoneme_ids) == src.num_phonemes + tgt.num_phonemes


def test_emb_and_epi_emit_sfv_block(pair) -> None:
    _, _, vocab = pair
    tgt = make_utterance("t2", "de", [1, 1])
    sfv = SourceFeatureVector([0.0, -0.25], [0.1, 0.0], [True, True])
    emb = build_model_inputs("emb", None, tgt, sfv, vocab)
    assert emb.sfv_channels.tolist() == [[0.0, -0.25], [0.1, 0.0]]
    assert emb.injection_site is InjectionSite.EMBEDDING_TAIL
    assert len(emb.phoneme_ids) == 2
    epi = build_model_inputs("epi", None, tgt, sfv, vocab)
    assert epi.sfv_channels.shape == (2, tgt.num_phonemes)
    assert epi.injection_site is InjectionSite.EMBEDDING_TAIL_AND_PREDICTOR_INPUT


def test_model_input_errors(pair) -> None:
    _, tgt, vocab = pair
    empty = parse_utterance_record({"id": "e", "language": "de", "phonemes": [], "durations": [], "words": []})
    with pytest.raises(LengthMismatch):
        build_model_inputs("epi", None, empty, zero_sfv(empty), vocab)
    with pytest.raises(LengthMismatch):
        build_model_inputs("emb", None, tgt, zero_sfv(make_utterance("x", "de", [2])), vocab)
    with pytest.raises(MissingInput):
        build_model_inputs("emb", None, tgt, None, vocab)
    with pytest.raises(VocabMiss):
        french = make_utterance("fr", "fr", [2])
        build_model_inputs("emb", None, french, zero_sfv(french), vocab)


def test_save_model_inputs(pair, tmp_path) -> None:
    _, tgt, vocab = pair
    with allure.step("Write emb inputs"):
        save_model_inputs(tmp_path / "t.json", "t", build_model_inputs("emb", None, tgt, zero_sfv(tgt), vocab))
    document = json.loads((tmp_path / "t.json").read_text(encoding="utf-8"))
    assert document["mode"] == "emb"
    assert document["injection_site"] == "embedding-tail"
    assert len(document["sfv_channels"]) == 2
    assert len(document["sfv_channels"][0]) == len(document["phoneme_ids"]) == 8


def test_apply_addition() -> None:
    np.testing.assert_allclose(apply_addition([0.1, 0.2], [0.0, -0.5]), [0.1, -0.3])
    with pytest.raises(LengthMismatch):
        apply_addition([0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0])


def test_apply_addition_zero_is_identity_and_sum_holds() -> None:
    rng = np.random.default_rng(99)
    for _ in range(50):
        n = int(rng.integers(1, 30))
        predicted = rng.normal(size=n)
        channel = rng.normal(size=n)
        assert apply_addition(predicted, np.zeros(n)).tolist() == predicted.tolist()
        assert apply_addition(predicted, channel).tolist() == (predicted + channel).tolist()
        assert apply_addition(predicted, channel).tolist() == apply_addition(channel, predicted).tolist()


def test_apply_word_offset() -> None:
    utt = make_utterance("u", "de", [2, 1, 2])
    out = apply_word_offset(np.zeros(5), utt, [0, 2], 0.5)
    np.testing.assert_array_equal(out, [0.5, 0.5, 0.0, 0.5, 0.5])
    with pytest.raises(IndexOutOfRange):
        apply_word_offset(np.zeros(5), utt, [3], 0.5)
    with pytest.raises(LengthMismatch):
        apply_word_offset(np.zeros(4), utt, [0], 0.5)
