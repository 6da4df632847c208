"""loretag: gazetteer-driven NER corpus builder, scorer and association-graph
extractor for game lore text.

The pipeline: build a matching dictionary from entity name lists, auto-tag
lore documents into BIO corpora by longest-match lookup, split and serialize
them CoNLL-style, score span-level predictions, and extract directed
entity-association graphs.
"""

from .assoc import (
    AssociationMap,
    MapDiff,
    build_association_map,
    diff_maps,
    export_dot,
    read_association_json,
    write_association_json,
)
from .biotags import decode_bio, extract_spans_from_bio, repair_bio
from .corpus import (
    BioCorpus,
    BioDocument,
    ConllReadReport,
    CorpusStats,
    SplitSpec,
    TaggedSentence,
    corpus_stats,
    parse_conll,
    read_conll,
    read_conll_with_report,
    render_conll,
    split_corpus,
    write_conll,
)
from .errors import DataFormatError, LoreTagError, TokenMismatchError
from .gazetteer import (
    Gazetteer,
    GazetteerConfig,
    GazetteerEntry,
    build_gazetteer,
    compute_ignore_list,
    fold_case,
    merge_name_lists,
    normalize_name,
    write_gazetteer,
    write_ignore_list,
)
from .ingest import (
    InfoboxRecord,
    LoreCorpus,
    LoreDocument,
    filter_infobox_entities,
    load_infobox_records,
    load_lore_corpus,
    load_name_list,
    write_name_list,
)
from .scoring import (
    EvalReport,
    LabelMap,
    SpanKey,
    UnmappedPolicy,
    corpus_spans,
    harmonic_f1,
    remap_labels,
    score,
)
from .tagger import (
    EntitySpan,
    GazetteerMatcher,
    MatchMode,
    find_spans,
    spans_to_bio,
    tag_corpus,
)
from .textspan import (
    DEFAULT_ABBREVIATIONS,
    Sentence,
    SentenceSpan,
    Token,
    is_word_char,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"
