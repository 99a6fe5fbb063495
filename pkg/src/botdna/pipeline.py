"""End-to-end pipeline: encode -> cluster -> seed -> classify -> evaluate.

Every stage writes its artifact atomically under the run directory, in a
format a standalone subcommand can also produce or consume, so a full run
and a chain of stage invocations yield byte-identical files. A manifest
records the resolved configuration, input digests, and library versions.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import platform
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping

import numba
import numpy

from . import __version__
from .classify import (
    AffinityParams,
    GroupAssignment,
    ScoringScheme,
    classify_species,
)
from .clustering import ClusteringParams, ClusteringResult, Species, cluster_with_rounds
from .codec import (
    LABEL_BOT,
    LABEL_GENUINE,
    DnaAlphabet,
    DnaSequence,
    encode_timeline,
    load_labels,
    parse_timelines,
    read_dna_file,
    split_quarantine,
    write_dna_file,
)
from .lcs import LcsCurve
from .seeding import (
    BOT_GROUP,
    InitialGroups,
    SeedGroup,
    SeedParams,
    form_initial_groups,
)
from .synth import Metrics, evaluate_metrics


class ConfigError(ValueError):
    """Invalid run configuration (unknown key or bad value)."""


class InputError(ValueError):
    """Input data cannot drive the pipeline (empty, too small, inconsistent)."""


@dataclass(frozen=True)
class RunConfig:
    alphabet: DnaAlphabet
    min_dna_length: int = 10
    clustering: ClusteringParams = dataclasses.field(default_factory=ClusteringParams)
    seeding: SeedParams = dataclasses.field(default_factory=SeedParams)
    scoring: ScoringScheme = dataclasses.field(default_factory=ScoringScheme)
    affinity: AffinityParams = dataclasses.field(default_factory=AffinityParams)

    def __post_init__(self):
        if self.min_dna_length < 0:
            raise ConfigError("min_dna_length must be non-negative")

    @classmethod
    def default(cls) -> "RunConfig":
        return cls(alphabet=DnaAlphabet.default())

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "RunConfig":
        """Build a config from a plain dict, rejecting unknown keys."""
        known = {"alphabet", "min_dna_length", "clustering", "seeding", "scoring", "affinity"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(sorted(unknown))}")

        def section(name: str, params_cls):
            data = raw.get(name, {})
            if not isinstance(data, Mapping):
                raise ConfigError(f"config section {name!r} must be an object")
            fields = {f.name for f in dataclasses.fields(params_cls)}
            bad = set(data) - fields
            if bad:
                raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(sorted(bad))}")
            try:
                return params_cls(**data)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"invalid {name!r} config: {exc}") from None

        alphabet_raw = raw.get("alphabet", DnaAlphabet.default().mapping)
        if not isinstance(alphabet_raw, Mapping):
            raise ConfigError("config section 'alphabet' must map action kinds to characters")
        try:
            alphabet = DnaAlphabet(dict(alphabet_raw))
        except ValueError as exc:
            raise ConfigError(f"invalid alphabet: {exc}") from None
        min_dna_length = raw.get("min_dna_length", 10)
        if not isinstance(min_dna_length, int) or isinstance(min_dna_length, bool):
            raise ConfigError("min_dna_length must be an integer")
        return cls(
            alphabet=alphabet,
            min_dna_length=min_dna_length,
            clustering=section("clustering", ClusteringParams),
            seeding=section("seeding", SeedParams),
            scoring=section("scoring", ScoringScheme),
            affinity=section("affinity", AffinityParams),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "alphabet": dict(self.alphabet.mapping),
            "min_dna_length": self.min_dna_length,
            "clustering": dataclasses.asdict(self.clustering),
            "seeding": dataclasses.asdict(self.seeding),
            "scoring": dataclasses.asdict(self.scoring),
            "affinity": dataclasses.asdict(self.affinity),
        }


@dataclass(frozen=True)
class PipelineResult:
    run_dir: Path
    dna: list[DnaSequence]
    quarantined_ids: list[str]
    species: tuple[Species, ...]
    groups: InitialGroups
    assignments: list[GroupAssignment]
    predictions: dict[str, str]
    metrics: Metrics | None


# ---------------------------------------------------------------------------
# atomic artifact IO


def write_text_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.parent / f".{path.name}.tmp"
    tmp.write_text(text, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def curve_csv(curve: LcsCurve) -> str:
    rows = ["k,lcs_length,witness_doc_count"]
    rows += [f"{p.k},{p.length},{len(p.witness_docs)}" for p in curve.points]
    return "\n".join(rows) + "\n"


def curve_json(curve: LcsCurve, account_ids: list[str]) -> str:
    points = [
        {
            "k": p.k,
            "lcs_length": p.length,
            "witness": p.witness,
            "witness_docs": sorted(account_ids[d] for d in p.witness_docs),
        }
        for p in curve.points
    ]
    return _dump_json({"points": points})


def species_json(species: tuple[Species, ...] | list[Species]) -> str:
    return _dump_json(
        [
            {
                "species_id": s.species_id,
                "member_ids": sorted(s.member_ids),
                "species_lcs": s.species_lcs,
                "birth_round": s.birth_round,
            }
            for s in species
        ]
    )


def read_species_json(text: str) -> list[Species]:
    return [
        Species(
            rec["species_id"],
            frozenset(rec["member_ids"]),
            rec["species_lcs"],
            rec["birth_round"],
        )
        for rec in json.loads(text)
    ]


def groups_json(groups: InitialGroups) -> str:
    def block(group: SeedGroup) -> dict[str, Any]:
        return {"species_ids": sorted(group.species_ids), "group_lcs": group.lcs}

    return _dump_json(
        {
            "g_spambot": block(groups.g_spambot),
            "g_genuine": block(groups.g_genuine),
            "unlabeled": list(groups.unlabeled),
        }
    )


def read_groups_json(text: str, species: list[Species]) -> InitialGroups:
    raw = json.loads(text)
    by_id = {s.species_id: s for s in species}

    def block(data: Mapping[str, Any]) -> SeedGroup:
        ids = frozenset(data["species_ids"])
        members = frozenset(m for sid in ids for m in by_id[sid].member_ids)
        return SeedGroup(ids, members, data["group_lcs"])

    return InitialGroups(
        block(raw["g_spambot"]), block(raw["g_genuine"]), tuple(raw["unlabeled"])
    )


def assignments_json(assignments: list[GroupAssignment]) -> str:
    return _dump_json(
        [
            {
                "species_id": a.species_id,
                "assigned": a.assigned,
                "affinity_bot": a.affinity_bot,
                "affinity_genuine": a.affinity_genuine,
                "tie": a.tie,
            }
            for a in assignments
        ]
    )


def predictions_csv(dna: list[DnaSequence], predictions: Mapping[str, str]) -> str:
    rows = ["account_id,predicted_label"]
    rows += [f"{s.account_id},{predictions[s.account_id]}" for s in dna if s.account_id in predictions]
    return "\n".join(rows) + "\n"


def read_predictions_csv(text: str) -> dict[str, str]:
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or lines[0] != "account_id,predicted_label":
        raise InputError("expected header 'account_id,predicted_label'")
    out: dict[str, str] = {}
    for ln in lines[1:]:
        account_id, label = ln.split(",", 1)
        out[account_id] = label
    return out


def metrics_json(metrics: Metrics, n_quarantined: int) -> str:
    payload = dataclasses.asdict(metrics)
    payload["n_scored"] = metrics.tp + metrics.fp + metrics.fn + metrics.tn
    payload["n_quarantined"] = n_quarantined
    return _dump_json(payload)


def quarantine_json(quarantined_ids: list[str], min_dna_length: int) -> str:
    return _dump_json({"min_dna_length": min_dna_length, "account_ids": quarantined_ids})


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# stages


def filter_short_dna(
    dna: list[DnaSequence], min_dna_length: int
) -> tuple[list[DnaSequence], list[str]]:
    """Split encoded accounts into (clusterable, quarantined ids)."""
    kept = [s for s in dna if len(s.sequence) >= min_dna_length]
    quarantined = [s.account_id for s in dna if len(s.sequence) < min_dna_length]
    return kept, quarantined


def label_accounts(
    species: list[Species] | tuple[Species, ...],
    groups: InitialGroups,
    assignments: list[GroupAssignment],
) -> dict[str, str]:
    """Per-account predicted labels from species-level decisions."""
    species_label: dict[int, str] = {}
    for sid in groups.g_spambot.species_ids:
        species_label[sid] = LABEL_BOT
    for sid in groups.g_genuine.species_ids:
        species_label[sid] = LABEL_GENUINE
    for a in assignments:
        species_label[a.species_id] = LABEL_BOT if a.assigned == BOT_GROUP else LABEL_GENUINE
    predictions: dict[str, str] = {}
    for s in species:
        label = species_label[s.species_id]
        for member in s.member_ids:
            predictions[member] = label
    return predictions


def run_pipeline(
    timelines_path: str | Path,
    out_dir: str | Path,
    config: RunConfig | None = None,
    labels_path: str | Path | None = None,
    threads: int = 1,
) -> PipelineResult:
    """Run every stage on a timeline file and write all artifacts.

    ``threads`` is accepted for interface stability; all stages currently
    run single-threaded, so results are identical at any value.
    """
    config = config or RunConfig.default()
    if threads < 1:
        raise ConfigError("threads must be >= 1")
    timelines_path = Path(timelines_path)
    out_dir = Path(out_dir)
    started = datetime.now(timezone.utc).isoformat()

    with open(timelines_path, encoding="utf-8") as fh:
        timelines = parse_timelines(fh, config.alphabet)
    if not timelines:
        raise InputError(f"no timeline records in {timelines_path}")

    # encode + quarantine
    kept_timelines, quarantined = split_quarantine(timelines, config.min_dna_length)
    dna_all = [encode_timeline(t, config.alphabet) for t in timelines]
    dna = [encode_timeline(t, config.alphabet) for t in kept_timelines]
    quarantined_ids = [t.account_id for t in quarantined]
    out_dir.mkdir(parents=True, exist_ok=True)
    write_text_atomic(out_dir / "dna.tsv", write_dna_file(dna_all))
    write_text_atomic(
        out_dir / "quarantine.json", quarantine_json(quarantined_ids, config.min_dna_length)
    )
    if len(dna) < 2:
        raise InputError(
            f"only {len(dna)} account(s) left after quarantine; need at least 2 to cluster"
        )

    # cluster
    result: ClusteringResult = cluster_with_rounds(dna, config.clustering)
    for rnd in result.rounds:
        if rnd.curve is not None:
            write_text_atomic(
                out_dir / "rounds" / f"round_{rnd.round_no:03d}.csv", curve_csv(rnd.curve)
            )
    write_text_atomic(out_dir / "species.json", species_json(result.species))

    # seed groups
    dna_by_id = {s.account_id: s.sequence for s in dna}
    groups = form_initial_groups(
        list(result.species), dna_by_id, total_accounts=len(dna), params=config.seeding
    )
    write_text_atomic(out_dir / "groups.json", groups_json(groups))

    # classify
    by_id = {s.species_id: s for s in result.species}
    unlabeled = [by_id[sid] for sid in groups.unlabeled]
    assignments = classify_species(
        unlabeled, groups, dna_by_id, config.affinity, config.scoring
    )
    write_text_atomic(out_dir / "assignments.json", assignments_json(assignments))
    predictions = label_accounts(result.species, groups, assignments)
    write_text_atomic(out_dir / "predictions.csv", predictions_csv(dna, predictions))

    # evaluate
    metrics = None
    if labels_path is not None:
        with open(labels_path, encoding="utf-8") as fh:
            truth = load_labels(fh, known_ids={t.account_id for t in timelines})
        metrics = evaluate_metrics(predictions, truth)
        write_text_atomic(
            out_dir / "metrics.json", metrics_json(metrics, len(quarantined_ids))
        )

    manifest = {
        "config": config.to_dict(),
        "inputs": {
            "timelines": {"path": str(timelines_path), "sha256": _sha256(timelines_path)},
            "labels": (
                {"path": str(labels_path), "sha256": _sha256(Path(labels_path))}
                if labels_path is not None
                else None
            ),
        },
        "versions": {
            "botdna": __version__,
            "python": platform.python_version(),
            "numpy": numpy.__version__,
            "numba": numba.__version__,
        },
        "threads": threads,
        "started_at": started,
        "finished_at": datetime.now(timezone.utc).isoformat(),
    }
    write_text_atomic(out_dir / "manifest.json", _dump_json(manifest))

    return PipelineResult(
        run_dir=out_dir,
        dna=dna_all,
        quarantined_ids=quarantined_ids,
        species=result.species,
        groups=groups,
        assignments=assignments,
        predictions=predictions,
        metrics=metrics,
    )


def load_dna_for_clustering(
    dna_path: str | Path, config: RunConfig
) -> tuple[list[DnaSequence], list[str]]:
    """Read a DNA TSV and apply the quarantine filter (for stage commands)."""
    with open(dna_path, encoding="utf-8") as fh:
        dna_all = read_dna_file(fh, config.alphabet)
    return filter_short_dna(dna_all, config.min_dna_length)
