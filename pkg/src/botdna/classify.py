"""Species classification by genetic similarity.

Each still-unlabeled species is compared against both seed groups with a
global sequence alignment of LCS strings (identity score) blended with a
population-weighted merge-retention term: how much of the group's common
core would survive admitting the species, weighted by how many accounts
stand behind that core. The species joins the group with the higher
affinity; exact ties resolve to the genuine side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .clustering import Species
from .lcs import lcs_of_set
from .seeding import BOT_GROUP, GENUINE_GROUP, InitialGroups, SeedGroup


@dataclass(frozen=True)
class ScoringScheme:
    match: int = 2
    mismatch: int = -1
    gap: int = -2

    def __post_init__(self):
        if self.match <= 0:
            raise ValueError("match score must be positive")
        if self.mismatch > 0:
            raise ValueError("mismatch score must be <= 0")
        if self.gap >= 0:
            raise ValueError("gap penalty must be negative")


@dataclass(frozen=True)
class AlignmentResult:
    score: int
    aligned_length: int
    matches: int
    aligned_a: str
    aligned_b: str

    @property
    def identity(self) -> float:
        """Fraction of identically matched columns; 0 for an empty alignment."""
        if self.aligned_length == 0:
            return 0.0
        return self.matches / self.aligned_length


@dataclass(frozen=True)
class AffinityParams:
    beta: float = 0.6

    def __post_init__(self):
        if not (0.0 <= self.beta <= 1.0):
            raise ValueError("beta must be in [0, 1]")


@dataclass(frozen=True)
class GroupAssignment:
    species_id: int
    assigned: str
    affinity_bot: float
    affinity_genuine: float

    @property
    def tie(self) -> bool:
        return self.affinity_bot == self.affinity_genuine


def _score_matrix(a: str, b: str, scoring: ScoringScheme) -> np.ndarray:
    """Full DP matrix for a global alignment with a linear gap penalty."""
    na, nb = len(a), len(b)
    gap = scoring.gap
    h = np.empty((na + 1, nb + 1), dtype=np.int64)
    h[0, :] = gap * np.arange(nb + 1, dtype=np.int64)
    h[:, 0] = gap * np.arange(na + 1, dtype=np.int64)
    if na == 0 or nb == 0:
        return h
    b_codes = np.frombuffer(b.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)
    cols = np.arange(1, nb + 1, dtype=np.int64)
    for i in range(1, na + 1):
        sub = np.where(b_codes == ord(a[i - 1]), scoring.match, scoring.mismatch)
        best_no_left = np.maximum(h[i - 1, :-1] + sub, h[i - 1, 1:] + gap)
        # fold in left-gap chains with a running max of (value - gap*column)
        run = np.maximum.accumulate(np.concatenate(([h[i, 0]], best_no_left - gap * cols)))
        h[i, 1:] = run[1:] + gap * cols
    return h


def align_global(a: str, b: str, scoring: ScoringScheme | None = None) -> AlignmentResult:
    """Optimal global alignment (quadratic DP, linear gap penalty).

    Traceback is deterministic: diagonal beats a gap in ``b`` beats a gap
    in ``a`` whenever scores tie.
    """
    scoring = scoring or ScoringScheme()
    h = _score_matrix(a, b, scoring)
    i, j = len(a), len(b)
    out_a: list[str] = []
    out_b: list[str] = []
    matches = 0
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            sub = scoring.match if a[i - 1] == b[j - 1] else scoring.mismatch
            if h[i, j] == h[i - 1, j - 1] + sub:
                out_a.append(a[i - 1])
                out_b.append(b[j - 1])
                if a[i - 1] == b[j - 1]:
                    matches += 1
                i -= 1
                j -= 1
                continue
        if i > 0 and h[i, j] == h[i - 1, j] + scoring.gap:
            out_a.append(a[i - 1])
            out_b.append("-")
            i -= 1
            continue
        out_a.append("-")
        out_b.append(b[j - 1])
        j -= 1
    out_a.reverse()
    out_b.reverse()
    return AlignmentResult(
        score=int(h[len(a), len(b)]),
        aligned_length=len(out_a),
        matches=matches,
        aligned_a="".join(out_a),
        aligned_b="".join(out_b),
    )


def similarity(a: str, b: str, scoring: ScoringScheme | None = None) -> float:
    """Alignment identity in [0, 1]; two empty strings score 0 by convention."""
    return align_global(a, b, scoring).identity


def merge_retention(
    species: Species, group: SeedGroup, dna_by_id: Mapping[str, str]
) -> float:
    """Fraction of the group's LCS that survives admitting the species."""
    if not group.lcs:
        return 0.0
    members = sorted(group.member_ids | species.member_ids)
    merged = lcs_of_set([dna_by_id[m] for m in members])
    return len(merged) / len(group.lcs)


def species_affinity(
    species: Species,
    group: SeedGroup,
    total_grouped: int,
    dna_by_id: Mapping[str, str],
    params: AffinityParams | None = None,
    scoring: ScoringScheme | None = None,
) -> float:
    """Blend of LCS-alignment identity and population-weighted retention.

    ``total_grouped`` is the combined account count of both seed groups;
    an empty group has affinity 0 toward everything.
    """
    params = params or AffinityParams()
    if group.is_empty:
        return 0.0
    weight = len(group.member_ids) / total_grouped
    sim = similarity(species.species_lcs, group.lcs, scoring)
    retention = merge_retention(species, group, dna_by_id)
    return params.beta * sim + (1.0 - params.beta) * retention * weight


def classify_species(
    unlabeled: list[Species],
    groups: InitialGroups,
    dna_by_id: Mapping[str, str],
    params: AffinityParams | None = None,
    scoring: ScoringScheme | None = None,
) -> list[GroupAssignment]:
    """Assign every unlabeled species to a seed group, independently.

    The seed groups stay fixed during the pass, so each decision depends
    only on the species itself and output order matches input order.
    """
    total_grouped = len(groups.g_spambot.member_ids) + len(groups.g_genuine.member_ids)
    assignments: list[GroupAssignment] = []
    for species in unlabeled:
        bot = species_affinity(species, groups.g_spambot, total_grouped, dna_by_id, params, scoring)
        gen = species_affinity(species, groups.g_genuine, total_grouped, dna_by_id, params, scoring)
        assigned = BOT_GROUP if bot > gen else GENUINE_GROUP
        assignments.append(GroupAssignment(species.species_id, assigned, bot, gen))
    return assignments
