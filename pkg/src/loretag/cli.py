"""Command line interface.

Every subcommand is a thin wrapper over one library operation; ``pipeline``
chains gazetteer -> ignore -> tag -> split -> stats from a single config
file, so a full corpus build is reproducible from one command. Flags win
over config values. Logs go to stderr, data to files or stdout, and output
files are written atomically.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .assoc import (
    build_association_map,
    diff_maps,
    export_dot,
    read_association_json,
    write_association_json,
)
from .corpus import (
    SplitSpec,
    corpus_stats,
    read_conll,
    split_corpus,
    write_conll,
)
from .errors import DataFormatError, LoreTagError
from .fileio import atomic_write_text
from .gazetteer import (
    GazetteerConfig,
    build_gazetteer,
    compute_ignore_list,
    merge_name_lists,
    normalize_name,
    write_gazetteer,
    write_ignore_list,
)
from .ingest import (
    filter_infobox_entities,
    load_infobox_records,
    load_lore_corpus,
    load_name_list,
)
from .scoring import LabelMap, UnmappedPolicy, remap_labels, score
from .tagger import MatchMode, tag_corpus

logger = logging.getLogger("loretag")

OUTPUT_DIR_ENV = "LORETAG_OUTPUT_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _parse_ratios(text: str) -> tuple[float, float, float]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"expected three ratios, got {text!r}")
    try:
        return tuple(float(Fraction(part)) for part in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad ratio in {text!r}: {exc}") from exc


def _parse_mode(text: str) -> MatchMode:
    try:
        return MatchMode(text)
    except ValueError:
        raise ValueError(
            f"mode must be one of {[m.value for m in MatchMode]}, got {text!r}"
        ) from None


@dataclass
class PipelineConfig:
    lore: Path
    names: list[Path]
    output_dir: Path
    infobox: Path | None = None
    infobox_type_key: str = "type5e"
    infobox_exclude: tuple[str, ...] = ()
    gazetteer: GazetteerConfig = GazetteerConfig()
    mode: MatchMode = MatchMode.WORD_BOUNDARY
    label: str = "MONS"
    split: SplitSpec = SplitSpec()


def _split_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def load_pipeline_config(path: str | os.PathLike, args) -> PipelineConfig:
    """Read an INI-style config; command line flags override its values.
    Paths from the config resolve against the config file's directory,
    paths from flags against the working directory."""
    config_path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    if not parser.read(config_path, encoding="utf-8"):
        raise FileNotFoundError(f"config file not found: {config_path}")
    base = config_path.parent

    def cfg_path(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base / p

    if args.lore:
        lore = Path(args.lore)
    else:
        raw = parser.get("paths", "lore", fallback=None)
        if not raw:
            raise _UsageError(
                "pipeline: no lore file given (flag --lore or [paths] lore)"
            )
        lore = cfg_path(raw)

    if args.names:
        names = [Path(n) for n in args.names]
    else:
        raw_names = _split_list(parser.get("paths", "names", fallback=""))
        if not raw_names:
            raise _UsageError(
                "pipeline: no name lists given (flag --names or [paths] names)"
            )
        names = [cfg_path(n) for n in raw_names]

    if args.infobox:
        infobox = Path(args.infobox)
    else:
        raw = parser.get("paths", "infobox", fallback=None)
        infobox = cfg_path(raw) if raw else None

    if args.out_dir:
        output_dir = Path(args.out_dir)
    else:
        raw = parser.get("paths", "output_dir", fallback=None)
        if raw:
            output_dir = cfg_path(raw)
        elif os.environ.get(OUTPUT_DIR_ENV):
            output_dir = Path(os.environ[OUTPUT_DIR_ENV])
        else:
            raise _UsageError(
                "pipeline: no output directory (flag --out-dir, [paths] output_dir "
                f"or ${OUTPUT_DIR_ENV})"
            )

    threshold = (
        args.threshold
        if args.threshold is not None
        else parser.getint("gazetteer", "ignore_threshold", fallback=30)
    )
    case_insensitive = parser.getboolean(
        "gazetteer", "case_insensitive", fallback=True
    )
    mode = _parse_mode(
        args.mode
        or parser.get("tagger", "mode", fallback=MatchMode.WORD_BOUNDARY.value)
    )
    label = args.label or parser.get("tagger", "label", fallback="MONS")
    ratios = _parse_ratios(
        args.ratios or parser.get("split", "ratios", fallback="2/3, 1/6, 1/6")
    )
    if args.seed is not None:
        seed = args.seed
    else:
        raw = parser.get("split", "seed", fallback=None)
        seed = int(raw) if raw not in (None, "") else None

    return PipelineConfig(
        lore=lore,
        names=names,
        output_dir=output_dir,
        infobox=infobox,
        infobox_type_key=parser.get("infobox", "type_key", fallback="type5e"),
        infobox_exclude=tuple(
            _split_list(parser.get("infobox", "exclude", fallback=""))
        ),
        gazetteer=GazetteerConfig(
            ignore_threshold=threshold, case_insensitive=case_insensitive
        ),
        mode=mode,
        label=label,
        split=SplitSpec(ratios=ratios, shuffle_seed=seed),
    )


def _collect_names(args, case_insensitive: bool) -> list[str]:
    """Merge all configured name sources into one deduplicated list."""
    merged: list[str] = []
    for path in args.names:
        merged = merge_name_lists(
            merged, load_name_list(path), case_insensitive=case_insensitive
        )
    if getattr(args, "infobox", None):
        records = load_infobox_records(args.infobox)
        extra = filter_infobox_entities(
            records, args.type_key, set(args.exclude or ())
        )
        merged = merge_name_lists(merged, extra, case_insensitive=case_insensitive)
    return merged


def _load_gazetteer_file(path, case_insensitive: bool):
    names = load_name_list(path)
    return build_gazetteer(
        names, config=GazetteerConfig(case_insensitive=case_insensitive)
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        atomic_write_text(output, text)
    else:
        sys.stdout.write(text)


# --- subcommand bodies -----------------------------------------------------


def _cmd_gazetteer(args) -> int:
    config = GazetteerConfig(case_insensitive=not args.case_sensitive)
    names = _collect_names(args, config.case_insensitive)
    ignore = set()
    if args.ignore_file:
        ignore = {
            normalize_name(n, case_insensitive=config.case_insensitive)
            for n in load_name_list(args.ignore_file)
        }
    gaz = build_gazetteer(names, ignore, config)
    write_gazetteer(gaz, args.output)
    logger.info("gazetteer: %d entries -> %s", len(gaz), args.output)
    return EXIT_OK


def _cmd_ignore(args) -> int:
    config = GazetteerConfig(
        ignore_threshold=args.threshold, case_insensitive=not args.case_sensitive
    )
    names = _collect_names(args, config.case_insensitive)
    corpus = load_lore_corpus(args.lore)
    ignore = compute_ignore_list(corpus, names, config)
    write_ignore_list(ignore, args.output)
    logger.info(
        "ignore: %d of %d names above threshold %d -> %s",
        len(ignore),
        len(names),
        config.ignore_threshold,
        args.output,
    )
    return EXIT_OK


def _cmd_tag(args) -> int:
    corpus = load_lore_corpus(args.lore)
    gaz = _load_gazetteer_file(args.gazetteer, not args.case_sensitive)
    bio = tag_corpus(corpus, gaz, mode=_parse_mode(args.mode), label=args.label)
    write_conll(bio, args.output)
    stats = corpus_stats(bio)
    logger.info(
        "tag: %d documents, %d sentences, %d spans -> %s",
        stats.n_documents,
        stats.n_sentences,
        stats.n_spans,
        args.output,
    )
    return EXIT_OK


def _cmd_split(args) -> int:
    bio = read_conll(args.input)
    spec = SplitSpec(ratios=_parse_ratios(args.ratios), shuffle_seed=args.seed)
    train, dev, test = split_corpus(bio, spec)
    out_dir = Path(args.out_dir)
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        target = out_dir / f"{name}.conll"
        write_conll(part, target)
        logger.info(
            "split: %s <- %d documents, %d sentences",
            target,
            len(part.documents),
            sum(1 for _ in part.iter_sentences()),
        )
    return EXIT_OK


def _cmd_stats(args) -> int:
    stats = corpus_stats(read_conll(args.input))
    _emit(json.dumps(stats.to_flat_dict(), indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_score(args) -> int:
    pred = read_conll(args.pred)
    gold = read_conll(args.gold)
    labels = set(args.labels) if args.labels else None
    report = score(pred, gold, target_labels=labels)
    _emit(json.dumps(report.to_json_dict(), indent=2) + "\n", args.output)
    logger.info("score: %s", report.summary())
    return EXIT_OK


def _cmd_remap(args) -> int:
    mapping: dict[str, str] = {}
    for item in args.map:
        source, sep, target = item.partition("=")
        if not sep or not source or not target:
            raise _UsageError(f"remap: bad --map {item!r}, expected SRC=DST")
        mapping[source] = target
    policy = UnmappedPolicy.KEEP if args.keep_unmapped else UnmappedPolicy.DROP_TO_O
    remapped = remap_labels(
        read_conll(args.input), LabelMap(mapping=mapping, unmapped_policy=policy)
    )
    write_conll(remapped, args.output)
    logger.info("remap: %s -> %s", dict(mapping), args.output)
    return EXIT_OK


def _cmd_assoc(args) -> int:
    amap = build_association_map(
        read_conll(args.input), include_self=args.include_self
    )
    if args.output:
        write_association_json(amap, args.output)
    else:
        payload = {amap.display_name(k): v for k, v in amap.entries.items()}
        sys.stdout.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    logger.info("assoc: %d entities, %d pairs", len(amap.entries), len(amap.pairs()))
    return EXIT_OK


def _cmd_diff(args) -> int:
    diff = diff_maps(read_association_json(args.a), read_association_json(args.b))
    payload = {
        "only_in_a": diff.only_in_a,
        "only_in_b": diff.only_in_b,
        "common": diff.common,
    }
    _emit(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_graph(args) -> int:
    _emit(export_dot(read_association_json(args.input)), args.output)
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    cfg = load_pipeline_config(args.config, args)
    for required in [cfg.lore, *cfg.names, *([cfg.infobox] if cfg.infobox else [])]:
        if not Path(required).is_file():
            raise FileNotFoundError(f"input file not found: {required}")

    merged: list[str] = []
    for path in cfg.names:
        merged = merge_name_lists(
            merged, load_name_list(path), case_insensitive=cfg.gazetteer.case_insensitive
        )
    if cfg.infobox:
        extra = filter_infobox_entities(
            load_infobox_records(cfg.infobox),
            cfg.infobox_type_key,
            set(cfg.infobox_exclude),
        )
        merged = merge_name_lists(
            merged, extra, case_insensitive=cfg.gazetteer.case_insensitive
        )
    logger.info("pipeline: %d names merged", len(merged))

    corpus = load_lore_corpus(cfg.lore)
    ignore = compute_ignore_list(corpus, merged, cfg.gazetteer)
    gaz = build_gazetteer(merged, ignore, cfg.gazetteer)
    out = cfg.output_dir
    write_ignore_list(ignore, out / "ignore.txt")
    write_gazetteer(gaz, out / "gazetteer.txt")
    logger.info("pipeline: %d gazetteer entries, %d ignored", len(gaz), len(ignore))

    bio = tag_corpus(corpus, gaz, mode=cfg.mode, label=cfg.label)
    write_conll(bio, out / "tagged.conll")

    train, dev, test = split_corpus(bio, cfg.split)
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        write_conll(part, out / f"{name}.conll")
    stats = corpus_stats(bio)
    atomic_write_text(
        out / "stats.json", json.dumps(stats.to_flat_dict(), indent=2) + "\n"
    )
    logger.info(
        "pipeline: %d sentences tagged (%d/%d/%d train/dev/test), %d spans -> %s",
        stats.n_sentences,
        sum(1 for _ in train.iter_sentences()),
        sum(1 for _ in dev.iter_sentences()),
        sum(1 for _ in test.iter_sentences()),
        stats.n_spans,
        out,
    )
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="loretag", description=__doc__.splitlines()[0])
    subparsers = parser.add_subparsers(
        dest="command", metavar="command", parser_class=_Parser, required=True
    )

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.set_defaults(func=func)
        return sub

    def add_name_sources(sub):
        sub.add_argument(
            "--names", action="append", required=True, help="name list file (repeatable)"
        )
        sub.add_argument("--infobox", help="infobox JSON file of extra names")
        sub.add_argument("--type-key", default="type5e", help="infobox attribute to filter on")
        sub.add_argument(
            "--exclude", action="append", default=[], help="excluded attribute value (repeatable)"
        )
        sub.add_argument("--case-sensitive", action="store_true")

    sub = add("gazetteer", _cmd_gazetteer, "build the matching dictionary file")
    add_name_sources(sub)
    sub.add_argument("--ignore-file", help="name-per-line file of keys to exclude")
    sub.add_argument("-o", "--output", required=True)

    sub = add("ignore", _cmd_ignore, "compute the frequency-threshold ignore list")
    add_name_sources(sub)
    sub.add_argument("--lore", required=True, help="lore JSON file")
    sub.add_argument("--threshold", type=int, default=30)
    sub.add_argument("-o", "--output", required=True)

    sub = add("tag", _cmd_tag, "tag a lore corpus into a CoNLL file")
    sub.add_argument("--lore", required=True)
    sub.add_argument("--gazetteer", required=True, help="gazetteer file (name per line)")
    sub.add_argument(
        "--mode",
        default=MatchMode.WORD_BOUNDARY.value,
        choices=[m.value for m in MatchMode],
    )
    sub.add_argument("--label", default="MONS")
    sub.add_argument("--case-sensitive", action="store_true")
    sub.add_argument("-o", "--output", required=True)

    sub = add("split", _cmd_split, "split a CoNLL corpus into train/dev/test")
    sub.add_argument("--input", required=True)
    sub.add_argument("--ratios", default="2/3, 1/6, 1/6")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out-dir", required=True)

    sub = add("stats", _cmd_stats, "corpus statistics as JSON")
    sub.add_argument("--input", required=True)
    sub.add_argument("-o", "--output")

    sub = add("score", _cmd_score, "span-level precision/recall/F1")
    sub.add_argument("--pred", required=True)
    sub.add_argument("--gold", required=True)
    sub.add_argument(
        "--labels", action="append", help="restrict scoring to these labels (repeatable)"
    )
    sub.add_argument("-o", "--output")

    sub = add("remap", _cmd_remap, "remap tag labels (e.g. PER=MONS)")
    sub.add_argument("--input", required=True)
    sub.add_argument("--map", action="append", required=True, help="SRC=DST (repeatable)")
    sub.add_argument(
        "--keep-unmapped",
        action="store_true",
        help="pass unmapped labels through instead of dropping to O",
    )
    sub.add_argument("-o", "--output", required=True)

    sub = add("assoc", _cmd_assoc, "build the entity association map")
    sub.add_argument("--input", required=True, help="tagged CoNLL file")
    sub.add_argument("--include-self", action="store_true")
    sub.add_argument("-o", "--output")

    sub = add("diff", _cmd_diff, "diff two association map files")
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)
    sub.add_argument("-o", "--output")

    sub = add("graph", _cmd_graph, "export an association map as Graphviz DOT")
    sub.add_argument("--input", required=True, help="association map JSON file")
    sub.add_argument("-o", "--output")

    sub = add("pipeline", _cmd_pipeline, "run gazetteer -> ignore -> tag -> split -> stats")
    sub.add_argument("--config", required=True, help="INI-style pipeline config")
    sub.add_argument("--lore")
    sub.add_argument("--names", action="append")
    sub.add_argument("--infobox")
    sub.add_argument("--out-dir")
    sub.add_argument("--threshold", type=int)
    sub.add_argument("--mode", choices=[m.value for m in MatchMode])
    sub.add_argument("--label")
    sub.add_argument("--ratios")
    sub.add_argument("--seed", type=int)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"loretag: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (LoreTagError, ValueError) as exc:
        print(f"loretag: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
