"""Iterative species clustering from LCS-curve drops.

Accounts sharing a long common behavioral substring plateau on the LCS
curve; the first significant relative drop marks the boundary of a
behavioral group. That group (everyone containing the witness substring)
is carved off as a *species*, removed, and the curve is recomputed on the
remainder until no significant drop is left.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .codec import DnaSequence
from .lcs import LcsCurve, build_index, lcs_curve, lcs_of_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClusteringParams:
    drop_threshold: float = 0.4
    min_species_size: int = 3
    min_lcs_length: int = 2
    max_rounds: int = 64

    def __post_init__(self):
        if not (0.0 < self.drop_threshold <= 1.0):
            raise ValueError("drop_threshold must be in (0, 1]")
        if self.min_species_size < 1:
            raise ValueError("min_species_size must be positive")
        if self.min_lcs_length < 1:
            raise ValueError("min_lcs_length must be positive")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be positive")


@dataclass(frozen=True)
class DropPoint:
    """First curve position whose relative fall crosses the threshold."""

    k_star: int
    length_before: int
    length_after: int
    magnitude: float


@dataclass(frozen=True)
class Species:
    species_id: int
    member_ids: frozenset[str]
    species_lcs: str
    birth_round: int


@dataclass(frozen=True)
class ClusterRound:
    """What one clustering round saw and decided (for run artifacts)."""

    round_no: int
    curve: LcsCurve | None
    drop: DropPoint | None
    species_id: int | None


@dataclass(frozen=True)
class ClusteringResult:
    species: tuple[Species, ...]
    rounds: tuple[ClusterRound, ...]


def detect_first_drop(curve: LcsCurve, params: ClusteringParams) -> DropPoint | None:
    """Smallest k whose relative drop to k+1 reaches the threshold.

    Only positions with length >= min_lcs_length qualify; flat or all-zero
    curves yield None.
    """
    points = curve.points
    for i in range(len(points) - 1):
        before = points[i].length
        after = points[i + 1].length
        if before < params.min_lcs_length or before == 0:
            continue
        magnitude = (before - after) / before
        if magnitude >= params.drop_threshold:
            return DropPoint(points[i].k, before, after, magnitude)
    return None


def cluster_with_rounds(
    accounts: list[DnaSequence], params: ClusteringParams | None = None
) -> ClusteringResult:
    """Full clustering loop, keeping per-round curves for reporting.

    Termination: no drop, a drop group smaller than min_species_size
    (folded into the terminal species), fewer than 2*min_species_size
    accounts remaining, or max_rounds. Whatever remains becomes one
    terminal species, so the output always partitions the input.
    """
    params = params or ClusteringParams()
    if len(accounts) < 2:
        raise ValueError("clustering requires at least 2 accounts")
    ids = [a.account_id for a in accounts]
    if len(set(ids)) != len(ids):
        raise ValueError("account ids must be unique")

    remaining = list(accounts)
    species: list[Species] = []
    rounds: list[ClusterRound] = []
    round_no = 0
    while True:
        round_no += 1
        if round_no > params.max_rounds:
            logger.warning("max_rounds=%d reached; folding remainder", params.max_rounds)
            break
        if len(remaining) < 2 * params.min_species_size:
            break
        if all(len(a.sequence) == 0 for a in remaining):
            break
        curve = lcs_curve(build_index(remaining))
        drop = detect_first_drop(curve, params)
        if drop is None:
            rounds.append(ClusterRound(round_no, curve, None, None))
            break
        point = curve.point_at(drop.k_star)
        member_ids = frozenset(remaining[i].account_id for i in point.witness_docs)
        if len(member_ids) < params.min_species_size:
            # too small to stand alone; fold into the terminal species
            rounds.append(ClusterRound(round_no, curve, drop, None))
            break
        sp = Species(len(species), member_ids, point.witness, round_no)
        species.append(sp)
        rounds.append(ClusterRound(round_no, curve, drop, sp.species_id))
        remaining = [a for a in remaining if a.account_id not in member_ids]
        if not remaining:
            return ClusteringResult(tuple(species), tuple(rounds))

    terminal = Species(
        len(species),
        frozenset(a.account_id for a in remaining),
        lcs_of_set([a.sequence for a in remaining]),
        round_no,
    )
    species.append(terminal)
    return ClusteringResult(tuple(species), tuple(rounds))


def cluster_into_species(
    accounts: list[DnaSequence], params: ClusteringParams | None = None
) -> list[Species]:
    """Partition accounts into behavioral species (disjoint, covering)."""
    return list(cluster_with_rounds(accounts, params).species)
