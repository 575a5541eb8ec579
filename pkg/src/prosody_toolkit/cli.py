"""
Command Line Interface
----------------------

One executable, one subcommand per pipeline step::

    prosody-toolkit extract        WAV -> feature records
    prosody-toolkit textgrid       aligner TextGrids -> utterance records
    prosody-toolkit stats-fit      feature records -> normalization statistics
    prosody-toolkit aggregate      feature + utterance records -> phoneme values
    prosody-toolkit build-sfv      source values + word alignments -> SFV files
    prosody-toolkit model-inputs   utterances + SFVs -> model input files
    prosody-toolkit apply-addition predictor outputs + SFVs -> adjusted outputs
    prosody-toolkit evaluate       GT vs generated features -> report
    prosody-toolkit corpus segment|filter|stats|split

Settings come from ``settings.yaml`` (or ``--config`` /
``PROSODY_TOOLKIT_CONFIG``); flags override them.  Exit codes: 0 when every
record succeeded, 1 when any record failed (failures are listed on
stderr), 2 for usage or configuration errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import click
import pandas as pd
from rich.console import Console
from rich.markup import escape

from .alignment import (
    load_utterance,
    parse_sync_map,
    parse_utterance_record,
    read_word_alignments,
    textgrid_to_record,
)
from .audio import read_wav, write_wav
from .config import ToolConfig
from .corpus import (
    Manifest,
    ManifestRecord,
    SplitSpec,
    corpus_stats_by_language,
    duration_filter,
    read_manifest,
    render_stats_table,
    segment_audio,
    split_manifest,
    write_manifest,
    write_split,
)
from .errors import ConfigError, ProsodyToolkitError, SchemaError, UtteranceFailures
from .evaluation import evaluate_corpus, load_mos_scores
from .executor import BatchExecutor, BatchResult
from .features import (
    FeatureKind,
    extract_features,
    fit_norm_stats,
    load_feature_record,
    load_norm_stats,
    load_phoneme_values,
    phoneme_average,
    save_feature_record,
    save_norm_stats,
    save_phoneme_values,
    z_normalize,
)
from .features.normalize import PhonemeValues
from .reporting import Reporter
from .sfv import (
    PhonemeVocabulary,
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
from .utils.jsonio import read_json, write_json
from .utils.logger import get_logger, set_level

logger = get_logger(__name__)

PROG_NAME = "prosody-toolkit"


@dataclass
class Session:
    """State shared by the group and its subcommands for one invocation."""

    config_path: Optional[Path] = None
    jobs: Optional[int] = None
    failures: list[tuple[str, Exception]] = field(default_factory=list)
    _config: Optional[ToolConfig] = None

    @property
    def config(self) -> ToolConfig:
        if self._config is None:
            self._config = ToolConfig.load(self.config_path, jobs=self.jobs)
        return self._config

    def executor(self, jobs: Optional[int]) -> BatchExecutor:
        return BatchExecutor(max_workers=jobs or self.config.jobs)

    def run_batch(
        self,
        func: Callable[[Any], Any],
        items: Sequence[Any],
        jobs: Optional[int],
        key: Callable[[Any], Any] = str,
        desc: str = "records",
    ) -> BatchResult:
        with self.executor(jobs) as executor:
            batch = executor.map(func, items, key=key, desc=desc)
        self.failures.extend(batch.failures)
        return batch


pass_session = click.make_pass_decorator(Session, ensure=True)

jobs_option = click.option(
    "--jobs", "-j", type=click.IntRange(min=1), default=None, help="Worker threads (default: config 'jobs')."
)
pairs_option = click.option(
    "--pairs", required=True, type=click.Path(dir_okay=False, path_type=Path), help="source_id/target_id TSV."
)


def _json_files(directory: Path) -> list[Path]:
    return sorted(Path(directory).glob("*.json"))


def _read_pairs(path: Path) -> list[tuple[str, str]]:
    """Sentence pairs from a TSV with ``source_id`` and ``target_id`` columns."""
    try:
        frame = pd.read_csv(path, sep="\t", dtype=str, keep_default_na=False)
        return list(zip(frame["source_id"], frame["target_id"]))
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"{path}: expected 'source_id' and 'target_id' columns ({exc})") from exc


def _load_feature_records(session: Session, directory: Path, jobs: Optional[int]) -> dict:
    batch = session.run_batch(load_feature_record, _json_files(directory), jobs, desc="feature files")
    return {record.utterance_id: record for record in batch.results}


@click.group(name=PROG_NAME, context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Settings YAML (default: $PROSODY_TOOLKIT_CONFIG or settings.yaml).",
)
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=None, help="Default worker threads for batch steps.")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Override LOG_LEVEL for this run.",
)
@pass_session
def cli(session: Session, config_path: Optional[Path], jobs: Optional[int], log_level: Optional[str]) -> None:
    """Prosody feature pipeline for cross-lingual speech synthesis."""
    session.config_path = config_path
    session.jobs = jobs
    if log_level:
        set_level(log_level)


@cli.command()
@click.option("--wav", "wavs", multiple=True, type=click.Path(path_type=Path), help="WAV file; the stem is the id.")
@click.option("--manifest", type=click.Path(dir_okay=False, path_type=Path), help="Manifest TSV listing WAV files.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Feature directory.")
@jobs_option
@pass_session
def extract(session: Session, wavs: tuple[Path, ...], manifest: Optional[Path], out: Optional[Path], jobs) -> None:
    """Extract pitch and energy contours from WAV files."""
    cfg = session.config
    out = out or cfg.paths.features_dir
    items = [(path.stem, path) for path in wavs]
    if manifest is not None:
        items += [(r.id, Path(r.path)) for r in read_manifest(manifest)]
    if not items:
        raise click.UsageError("give at least one --wav or a --manifest")

    def run_one(item: tuple[str, Path]) -> Path:
        utterance_id, wav_path = item
        record = extract_features(read_wav(wav_path), cfg.analysis, utterance_id)
        target = out / f"{utterance_id}.json"
        save_feature_record(target, record)
        return target

    session.run_batch(run_one, items, jobs, key=lambda item: item[1], desc="utterances")


@cli.command()
@click.option("--textgrid", "textgrids", multiple=True, required=True, type=click.Path(path_type=Path))
@click.option("--language", required=True, help="Language tag of the utterances, e.g. 'de'.")
@click.option(
    "--features",
    type=click.Path(file_okay=False, path_type=Path),
    help="Feature directory; when given, durations are fitted to each contour length.",
)
@click.option("--phone-tier", default="phones", show_default=True)
@click.option("--word-tier", default="words", show_default=True)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Utterance record directory.")
@jobs_option
@pass_session
def textgrid(session: Session, textgrids, language, features, phone_tier, word_tier, out, jobs) -> None:
    """Convert aligner TextGrids into utterance records."""
    cfg = session.config
    out = out or cfg.paths.utterances_dir

    def run_one(path: Path) -> Path:
        num_frames = None
        if features is not None:
            num_frames = len(load_feature_record(features / f"{path.stem}.json").pitch)
        document = textgrid_to_record(
            path, path.stem, language, cfg.analysis, num_frames, phone_tier=phone_tier, word_tier=word_tier
        )
        parse_utterance_record(document)
        target = out / f"{path.stem}.json"
        write_json(target, document)
        return target

    session.run_batch(run_one, list(textgrids), jobs, desc="TextGrids")


@cli.command("stats-fit")
@click.option("--features", type=click.Path(file_okay=False, path_type=Path), help="Feature directory.")
@click.option(
    "--manifest",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Only pool the utterances listed here (the training split).",
)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Directory for the statistics.")
@jobs_option
@pass_session
def stats_fit(session: Session, features, manifest, out, jobs) -> None:
    """Fit pitch and energy normalization statistics."""
    cfg = session.config
    records = _load_feature_records(session, features or cfg.paths.features_dir, jobs)
    if manifest is not None:
        wanted = set(read_manifest(manifest).ids)
        records = {uid: r for uid, r in records.items() if uid in wanted}
    ordered = [records[uid] for uid in sorted(records)]
    out = out or cfg.paths.output_dir / "stats"
    save_norm_stats(out / "pitch_stats.json", fit_norm_stats((r.pitch for r in ordered), FeatureKind.PITCH))
    save_norm_stats(out / "energy_stats.json", fit_norm_stats((r.energy for r in ordered), FeatureKind.ENERGY))
    logger.info("Fitted normalization statistics on %d utterances", len(ordered))


@cli.command()
@click.option("--features", type=click.Path(file_okay=False, path_type=Path), help="Feature directory.")
@click.option("--utterances", type=click.Path(file_okay=False, path_type=Path), help="Utterance record directory.")
@click.option("--stats", "stats_dir", type=click.Path(file_okay=False, path_type=Path), help="Statistics directory.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Phoneme value directory.")
@jobs_option
@pass_session
def aggregate(session: Session, features, utterances, stats_dir, out, jobs) -> None:
    """Z-normalize contours and average them per phoneme."""
    cfg = session.config
    utterances = utterances or cfg.paths.utterances_dir
    stats_dir = stats_dir or cfg.paths.output_dir / "stats"
    out = out or cfg.paths.output_dir / "phonemes"
    pitch_stats = load_norm_stats(stats_dir / "pitch_stats.json")
    energy_stats = load_norm_stats(stats_dir / "energy_stats.json")

    def run_one(path: Path) -> Path:
        record = load_feature_record(path)
        utt = load_utterance(utterances / f"{record.utterance_id}.json")
        pitch = phoneme_average(z_normalize(record.pitch, pitch_stats), utt.durations)
        energy = phoneme_average(z_normalize(record.energy, energy_stats), utt.durations)
        target = out / f"{record.utterance_id}.json"
        save_phoneme_values(target, record.utterance_id, pitch, energy)
        return target

    session.run_batch(run_one, _json_files(features or cfg.paths.features_dir), jobs, desc="utterances")


@cli.command("build-sfv")
@pairs_option
@click.option("--alignment", type=click.Path(dir_okay=False, path_type=Path), help="Pharaoh file, one line per pair.")
@click.option("--src-utterances", type=click.Path(file_okay=False, path_type=Path))
@click.option("--src-values", type=click.Path(file_okay=False, path_type=Path), help="Source phoneme values.")
@click.option("--tgt-utterances", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--zero/--no-zero", default=None, help="Write all-zero SFVs (default: config sfv.zero_sfv).")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="SFV directory.")
@jobs_option
@pass_session
def build_sfv_command(session: Session, pairs, alignment, src_utterances, src_values, tgt_utterances, zero, out, jobs):
    """Map source word prosody onto target phonemes."""
    cfg = session.config
    zero = cfg.sfv.zero_sfv if zero is None else zero
    out = out or cfg.paths.output_dir / "sfv"
    pair_list = _read_pairs(pairs)
    alignments: list = [None] * len(pair_list)
    if not zero:
        if alignment is None or src_utterances is None or src_values is None:
            raise click.UsageError("--alignment, --src-utterances and --src-values are required unless --zero")
        alignments = read_word_alignments(alignment)
        if len(alignments) != len(pair_list):
            raise click.UsageError(f"{alignment} has {len(alignments)} lines for {len(pair_list)} pairs")

    def run_one(index: int) -> Path:
        src_id, tgt_id = pair_list[index]
        tgt = load_utterance(tgt_utterances / f"{tgt_id}.json")
        if zero:
            sfv = zero_sfv(tgt)
        else:
            src = load_utterance(src_utterances / f"{src_id}.json")
            _, pitch, energy = load_phoneme_values(src_values / f"{src_id}.json")
            sfv = build_sfv(word_averages(pitch, src), word_averages(energy, src), alignments[index], tgt)
        target = out / f"{tgt_id}.json"
        save_sfv(target, tgt_id, sfv)
        return target

    session.run_batch(
        run_one, range(len(pair_list)), jobs, key=lambda i: "{}->{}".format(*pair_list[i]), desc="sentence pairs"
    )


@cli.command("model-inputs")
@click.option("--mode", required=True, type=click.Choice(["pho", "emb", "epi"]))
@pairs_option
@click.option("--src-utterances", type=click.Path(file_okay=False, path_type=Path))
@click.option("--tgt-utterances", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--sfv", "sfv_dir", type=click.Path(file_okay=False, path_type=Path), help="SFV directory (emb/epi).")
@click.option(
    "--vocab",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Phoneme vocabulary JSON; built from the utterances and written to OUT/vocab.json when absent.",
)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Model input directory.")
@jobs_option
@pass_session
def model_inputs(session: Session, mode, pairs, src_utterances, tgt_utterances, sfv_dir, vocab, out, jobs) -> None:
    """Write model input files for one conditioning mode."""
    cfg = session.config
    out = out or cfg.paths.output_dir / f"inputs_{mode}"
    if mode == "pho" and src_utterances is None:
        raise click.UsageError("--src-utterances is required for mode 'pho'")
    if mode != "pho" and sfv_dir is None:
        raise click.UsageError(f"--sfv is required for mode '{mode}'")
    pair_list = _read_pairs(pairs)

    def load_pair(index: int):
        src_id, tgt_id = pair_list[index]
        src = load_utterance(src_utterances / f"{src_id}.json") if src_utterances else None
        return src, load_utterance(tgt_utterances / f"{tgt_id}.json")

    label = lambda i: "{}->{}".format(*pair_list[i])  # noqa: E731
    loaded = session.run_batch(load_pair, range(len(pair_list)), jobs, key=label, desc="sentence pairs")
    if vocab is not None and vocab.exists():
        vocabulary = PhonemeVocabulary.load(vocab)
    else:
        vocabulary = PhonemeVocabulary.from_utterances(u for pair in loaded.results for u in pair if u is not None)
        vocabulary.save(vocab or out / "vocab.json")

    def run_one(entry) -> Path:
        _, (src, tgt) = entry
        sfv = None
        if sfv_dir is not None and mode != "pho":
            _, sfv = load_sfv(sfv_dir / f"{tgt.id}.json")
        inputs = build_model_inputs(mode, src, tgt, sfv, vocabulary)
        target = out / f"{tgt.id}.json"
        save_model_inputs(target, tgt.id, inputs)
        return target

    session.run_batch(run_one, loaded.done, jobs, key=lambda entry: entry[0], desc="sentence pairs")


@cli.command("apply-addition")
@click.option(
    "--predicted",
    required=True,
    type=click.Path(file_okay=False, path_type=Path),
    help="Predictor outputs, one {utterance_id, pitch[], energy[]} JSON per utterance.",
)
@click.option("--sfv", "sfv_dir", required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option("--emphasize", type=int, multiple=True, help="Target word index to offset after the addition.")
@click.option("--delta", type=float, default=0.0, show_default=True, help="Offset added over emphasized words.")
@click.option("--kind", type=click.Choice(["pitch", "energy"]), default="pitch", show_default=True)
@click.option("--utterances", type=click.Path(file_okay=False, path_type=Path), help="Needed with --emphasize.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path))
@jobs_option
@pass_session
def apply_addition_command(session: Session, predicted, sfv_dir, emphasize, delta, kind, utterances, out, jobs):
    """Add SFV channels to pitch and energy predictor outputs."""
    cfg = session.config
    out = out or cfg.paths.output_dir / "adjusted"
    if emphasize:
        utterances = utterances or cfg.paths.utterances_dir

    def run_one(path: Path) -> Path:
        utterance_id, pitch, energy = load_phoneme_values(path)
        _, sfv = load_sfv(sfv_dir / f"{utterance_id}.json")
        adjusted = {
            FeatureKind.PITCH: apply_addition(pitch.values, sfv.pitch),
            FeatureKind.ENERGY: apply_addition(energy.values, sfv.energy),
        }
        if emphasize:
            utt = load_utterance(utterances / f"{utterance_id}.json")
            chosen = FeatureKind(kind)
            adjusted[chosen] = apply_word_offset(adjusted[chosen], utt, emphasize, delta)
        target = out / f"{utterance_id}.json"
        save_phoneme_values(
            target,
            utterance_id,
            PhonemeValues(adjusted[FeatureKind.PITCH], FeatureKind.PITCH, True),
            PhonemeValues(adjusted[FeatureKind.ENERGY], FeatureKind.ENERGY, True),
        )
        return target

    session.run_batch(run_one, _json_files(predicted), jobs, desc="utterances")


def _parse_system(value: str) -> tuple[str, Path]:
    name, sep, directory = value.partition("=")
    if not sep:
        path = Path(value)
        return path.name, path
    if not name or not directory:
        raise click.BadParameter(f"expected NAME=DIR or DIR, got {value!r}", param_hint="--gen")
    return name, Path(directory)


@cli.command()
@click.option("--gt", required=True, type=click.Path(file_okay=False, path_type=Path), help="Ground-truth features.")
@click.option("--gen", "gens", required=True, multiple=True, help="Generated features as NAME=DIR (repeatable).")
@click.option("--format", "fmt", type=click.Choice(["tsv", "markdown"]), default=None, help="Report format.")
@click.option("--dtw-mode", type=click.Choice(["normalized", "unnormalized"]), default=None)
@click.option("--mos", type=click.Path(dir_okay=False, path_type=Path), help="TSV of pre-computed MOS per system.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Report file (default: stdout).")
@jobs_option
@pass_session
def evaluate(session: Session, gt, gens, fmt, dtw_mode, mos, out, jobs) -> None:
    """Compare generated systems against ground truth."""
    cfg = session.config
    fmt = fmt or cfg.eval.report_format
    normalized = cfg.eval.dtw_normalized if dtw_mode is None else dtw_mode == "normalized"
    systems = dict(_parse_system(value) for value in gens)

    failures_before = len(session.failures)
    gt_set = _load_feature_records(session, gt, jobs)
    gen_sets = {name: _load_feature_records(session, directory, jobs) for name, directory in systems.items()}
    if len(session.failures) > failures_before:
        return
    scores = load_mos_scores(mos) if mos is not None else None

    try:
        with session.executor(jobs) as executor:
            report = evaluate_corpus(gt_set, gen_sets, normalized=normalized, mos=scores, executor=executor)
    except UtteranceFailures as exc:
        session.failures.extend(exc.failures)
        return
    reporter = Reporter()
    if out is not None:
        reporter.write(out, report, fmt)
    else:
        click.echo(reporter.render(report, fmt), nl=False)


@cli.group()
def corpus() -> None:
    """Dataset tooling: segmentation, filtering, statistics, splits."""


@corpus.command("segment")
@click.option("--chapter", "chapters", required=True, multiple=True, type=click.Path(path_type=Path))
@click.option("--sync-map", "sync_maps", required=True, multiple=True, type=click.Path(path_type=Path))
@click.option("--language", required=True)
@click.option("--speaker", required=True)
@click.option("--book", default=None)
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path), help="Utterance WAV directory.")
@click.option("--manifest", type=click.Path(dir_okay=False, path_type=Path), help="Default: OUT/manifest.tsv.")
@jobs_option
@pass_session
def corpus_segment(session: Session, chapters, sync_maps, language, speaker, book, out, manifest, jobs) -> None:
    """Cut chapter WAVs into sentence WAVs along sync maps."""
    if len(chapters) != len(sync_maps):
        raise click.UsageError("give one --sync-map per --chapter")

    def run_one(item: tuple[Path, Path]) -> list[ManifestRecord]:
        chapter_path, map_path = item
        segments = parse_sync_map(read_json(map_path))
        pieces = segment_audio(read_wav(chapter_path), segments)
        records = []
        for fragment, piece in zip(segments, pieces):
            utterance_id = f"{chapter_path.stem}_{fragment.id}"
            wav_path = out / f"{utterance_id}.wav"
            write_wav(wav_path, piece)
            records.append(
                ManifestRecord(utterance_id, str(wav_path), language, speaker, piece.duration, fragment.text, book)
            )
        return records

    batch = session.run_batch(run_one, list(zip(chapters, sync_maps)), jobs, key=lambda item: item[0], desc="chapters")
    write_manifest(manifest or out / "manifest.tsv", Manifest(tuple(r for part in batch.results for r in part)))


@corpus.command("filter")
@click.option("--manifest", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--min", "min_s", type=float, default=None, help="Minimum duration in seconds (inclusive).")
@click.option("--max", "max_s", type=float, default=None, help="Maximum duration in seconds (inclusive).")
@click.option("--out", required=True, type=click.Path(dir_okay=False, path_type=Path))
@pass_session
def corpus_filter(session: Session, manifest, min_s, max_s, out) -> None:
    """Keep utterances whose duration lies in [MIN, MAX]."""
    cfg = session.config.corpus
    min_s = cfg.min_duration if min_s is None else min_s
    max_s = cfg.max_duration if max_s is None else max_s
    write_manifest(out, duration_filter(read_manifest(manifest), min_s, max_s))


@corpus.command("stats")
@click.option("--manifest", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["tsv", "markdown"]), default="tsv", show_default=True)
def corpus_stats_command(manifest, fmt) -> None:
    """Print per-language corpus statistics."""
    click.echo(render_stats_table(corpus_stats_by_language(read_manifest(manifest)), fmt), nl=False)


@corpus.command("split")
@click.option("--manifest", required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--counts", type=int, nargs=3, default=None, help="TRAIN VAL TEST record counts.")
@click.option("--ratios", type=float, nargs=3, default=None, help="TRAIN VAL TEST fractions summing to 1.")
@click.option("--seed", type=int, default=None)
@click.option("--out", required=True, type=click.Path(file_okay=False, path_type=Path))
@pass_session
def corpus_split(session: Session, manifest, counts, ratios, seed, out) -> None:
    """Deterministic train/val/test split."""
    cfg = session.config.corpus
    seed = cfg.seed if seed is None else seed
    if counts is None and ratios is None:
        counts = cfg.split_counts
    if counts is None and ratios is None:
        raise click.UsageError("give --counts or --ratios (or set corpus.split_counts)")
    spec = SplitSpec(counts=counts, ratios=None if counts is not None else ratios, seed=seed)
    man = read_manifest(manifest)
    write_split(out, split_manifest(man, spec), spec)


def _report_failures(failures: list[tuple[str, Exception]]) -> None:
    console = Console(stderr=True, highlight=False, soft_wrap=True)
    console.print(f"[bold red]{len(failures)} record(s) failed[/bold red]")
    for key, exc in failures:
        console.print(f"  [red]FAILED[/red] {escape(key)}: {type(exc).__name__}: {escape(str(exc))}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    session = Session()
    try:
        args = list(argv) if argv is not None else None
        code = cli.main(args=args, prog_name=PROG_NAME, standalone_mode=False, obj=session)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except ConfigError as exc:
        console = Console(stderr=True, highlight=False, soft_wrap=True)
        console.print(f"[bold red]configuration error[/bold red] {escape(str(exc))}")
        return 2
    except (ProsodyToolkitError, OSError) as exc:
        session.failures.append((getattr(exc, "filename", None) or type(exc).__name__, exc))
        code = None

    if session.failures:
        _report_failures(session.failures)
        return 1
    return code if isinstance(code, int) else 0


__all__ = ["cli", "run", "Session"]
