"""
Self-Test Script
----------------

Runs the whole prosody pipeline on synthetic data: tones stand in for
recordings, utterance records and word alignments are written by hand.
Features are extracted, normalized and averaged, SFVs are built and
turned into model inputs, and the ground truth is evaluated against a
slightly detuned copy.  Run it after installing dependencies to verify
that the toolkit works end to end.
"""

import tempfile
from pathlib import Path
from typing import Optional

import numpy as np

from src.prosody_toolkit.alignment import WordAlignment, parse_utterance_record, save_utterance
from src.prosody_toolkit.audio import AudioBuffer, read_wav, write_wav
from src.prosody_toolkit.config import ToolConfig
from src.prosody_toolkit.evaluation import EvalReport, evaluate_corpus
from src.prosody_toolkit.features import FeatureKind, extract_features, fit_norm_stats, phoneme_average, z_normalize
from src.prosody_toolkit.reporting import Reporter
from src.prosody_toolkit.sfv import PhonemeVocabulary, build_model_inputs, build_sfv, save_sfv, word_averages
from src.prosody_toolkit.utils.logger import get_logger

logger = get_logger("self_test")


def synth_tone(start_hz: float, end_hz: float, seconds: float, sr: int) -> AudioBuffer:
    t = np.arange(int(seconds * sr)) / sr
    freq = np.linspace(start_hz, end_hz, t.size)
    return AudioBuffer(0.5 * np.sin(2 * np.pi * np.cumsum(freq) / sr), sr)


def utterance_for(uid: str, language: str, num_frames: int):
    quarter = num_frames // 4
    durations = [quarter, quarter, quarter, num_frames - 3 * quarter]
    return parse_utterance_record(
        {
            "id": uid,
            "language": language,
            "phonemes": ["HH", "AH0", "L", "OW1"] if language == "en" else ["h", "a", "l", "o"],
            "durations": durations,
            "words": [{"text": "hel", "span": [0, 2]}, {"text": "lo", "span": [2, 4]}],
        }
    )


def run_self_test(work_dir: Optional[Path] = None) -> EvalReport:
    config = ToolConfig.load()
    cfg = config.analysis
    with tempfile.TemporaryDirectory() as tmp:
        work = Path(work_dir or tmp)
        tones = {"s1": (120.0, 220.0), "s2": (200.0, 140.0), "t1": (150.0, 180.0), "t2": (170.0, 130.0)}
        gt, detuned = {}, {}
        for uid, (lo, hi) in tones.items():
            write_wav(work / "wavs" / f"{uid}.wav", synth_tone(lo, hi, 0.6, cfg.sample_rate))
            gt[uid] = extract_features(read_wav(work / "wavs" / f"{uid}.wav"), cfg, uid)
            detuned[uid] = extract_features(synth_tone(lo * 1.05, hi * 1.05, 0.6, cfg.sample_rate), cfg, uid)

        pitch_stats = fit_norm_stats((gt[u].pitch for u in sorted(gt)), FeatureKind.PITCH)
        energy_stats = fit_norm_stats((gt[u].energy for u in sorted(gt)), FeatureKind.ENERGY)
        utterances = {
            uid: utterance_for(uid, "en" if uid.startswith("s") else "de", len(gt[uid].pitch)) for uid in gt
        }
        for uid, utt in utterances.items():
            save_utterance(work / "utterances" / f"{uid}.json", utt)

        vocab = PhonemeVocabulary.from_utterances(utterances.values())
        for src_id, tgt_id in (("s1", "t1"), ("s2", "t2")):
            src, tgt = utterances[src_id], utterances[tgt_id]
            pitch = phoneme_average(z_normalize(gt[src_id].pitch, pitch_stats), src.durations)
            energy = phoneme_average(z_normalize(gt[src_id].energy, energy_stats), src.durations)
            sfv = build_sfv(
                word_averages(pitch, src), word_averages(energy, src), WordAlignment.from_pairs([(0, 0), (1, 1)]), tgt
            )
            save_sfv(work / "sfv" / f"{tgt_id}.json", tgt_id, sfv)
            inputs = build_model_inputs("epi", src, tgt, sfv, vocab)
            logger.info("%s -> %s: SFV pitch %s", src_id, tgt_id, np.round(inputs.sfv_channels[0], 3).tolist())

        report = evaluate_corpus(gt, {"detuned": detuned}, normalized=config.eval.dtw_normalized)
    print(Reporter().render(report, "markdown"))
    return report


if __name__ == "__main__":
    run_self_test()
