"""botdna: behavioral bot detection from digital DNA timelines.

Timelines are encoded as character strings (one symbol per action), a
generalized suffix structure answers longest-common-substring queries for
every group size, curve drops carve the accounts into behavioral species,
and species are labeled bot or genuine by genetic-similarity affinity to
two seed groups.
"""

__version__ = "0.1.0"

from .classify import (
    AffinityParams,
    AlignmentResult,
    GroupAssignment,
    ScoringScheme,
    align_global,
    classify_species,
    merge_retention,
    similarity,
    species_affinity,
)
from .clustering import (
    ClusteringParams,
    ClusteringResult,
    ClusterRound,
    DropPoint,
    Species,
    cluster_into_species,
    cluster_with_rounds,
    detect_first_drop,
)
from .codec import (
    LABEL_BOT,
    LABEL_GENUINE,
    AccountTimeline,
    ActionKind,
    DnaAlphabet,
    DnaSequence,
    ParseError,
    encode_timeline,
    load_labels,
    parse_timelines,
    read_dna_file,
    split_quarantine,
    write_dna_file,
    write_labels_csv,
    write_timelines_jsonl,
)
from .lcs import (
    CorpusIndex,
    LcsCurve,
    LcsCurvePoint,
    build_index,
    lcs_curve,
    lcs_of_set,
    witness_docs,
)
from .pipeline import (
    ConfigError,
    InputError,
    PipelineResult,
    RunConfig,
    run_pipeline,
)
from .seeding import (
    BOT_GROUP,
    GENUINE_GROUP,
    InitialGroups,
    SeedGroup,
    SeedParams,
    SeedSelectionError,
    form_initial_groups,
    impact,
)
from .synth import Metrics, SynthSpec, evaluate_metrics, generate_synthetic

__all__ = [
    "__version__",
    "AccountTimeline",
    "ActionKind",
    "AffinityParams",
    "AlignmentResult",
    "BOT_GROUP",
    "ClusterRound",
    "ClusteringParams",
    "ClusteringResult",
    "ConfigError",
    "CorpusIndex",
    "DnaAlphabet",
    "DnaSequence",
    "DropPoint",
    "GENUINE_GROUP",
    "GroupAssignment",
    "InitialGroups",
    "InputError",
    "LABEL_BOT",
    "LABEL_GENUINE",
    "LcsCurve",
    "LcsCurvePoint",
    "Metrics",
    "ParseError",
    "PipelineResult",
    "RunConfig",
    "ScoringScheme",
    "SeedGroup",
    "SeedParams",
    "SeedSelectionError",
    "Species",
    "SynthSpec",
    "align_global",
    "build_index",
    "classify_species",
    "cluster_into_species",
    "cluster_with_rounds",
    "detect_first_drop",
    "encode_timeline",
    "evaluate_metrics",
    "form_initial_groups",
    "generate_synthetic",
    "impact",
    "lcs_curve",
    "lcs_of_set",
    "load_labels",
    "merge_retention",
    "parse_timelines",
    "read_dna_file",
    "run_pipeline",
    "similarity",
    "species_affinity",
    "split_quarantine",
    "witness_docs",
    "write_dna_file",
    "write_labels_csv",
    "write_timelines_jsonl",
]
