"""Initial bot / genuine seed groups from the species list.

A long species LCS means tightly coordinated behavior, so the bot seed is
the species with the greatest impact (population times LCS length) among
long-LCS species, preferring species large enough to matter for the whole
community (a vital-few size floor). Short-LCS species are merged into the
genuine seed; everything else stays unlabeled for the classifier.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from .clustering import Species
from .lcs import lcs_of_set

logger = logging.getLogger(__name__)

BOT_GROUP = "gSpamBot"
GENUINE_GROUP = "gGenuine"


@dataclass(frozen=True)
class SeedParams:
    pareto_fraction: float = 0.2
    bot_min_lcs: int = 20
    genuine_max_lcs: int = 5

    def __post_init__(self):
        if not (0.0 < self.pareto_fraction < 1.0):
            raise ValueError("pareto_fraction must be in (0, 1)")
        if self.bot_min_lcs < 1 or self.genuine_max_lcs < 0:
            raise ValueError("LCS thresholds must be non-negative (bot_min_lcs positive)")
        if self.genuine_max_lcs >= self.bot_min_lcs:
            raise ValueError("genuine_max_lcs must be smaller than bot_min_lcs")


@dataclass(frozen=True)
class SeedGroup:
    species_ids: frozenset[int]
    member_ids: frozenset[str]
    lcs: str

    @property
    def is_empty(self) -> bool:
        return not self.member_ids


@dataclass(frozen=True)
class InitialGroups:
    g_spambot: SeedGroup
    g_genuine: SeedGroup
    unlabeled: tuple[int, ...]


class SeedSelectionError(ValueError):
    """No species qualifies as the bot seed; the pipeline cannot proceed."""


def impact(species: Species) -> int:
    """Population times LCS length: how much coordinated behavior a species carries."""
    return len(species.member_ids) * len(species.species_lcs)


def _group_lcs(species_list: list[Species], dna_by_id: Mapping[str, str]) -> str:
    members = sorted(m for s in species_list for m in s.member_ids)
    if not members:
        return ""
    return lcs_of_set([dna_by_id[m] for m in members])


def form_initial_groups(
    species: list[Species],
    dna_by_id: Mapping[str, str],
    total_accounts: int,
    params: SeedParams | None = None,
) -> InitialGroups:
    """Split species into the bot seed, the genuine seed, and the unlabeled rest.

    The bot seed is the impact-argmax among species with LCS >=
    bot_min_lcs, restricted to species holding at least pareto_fraction of
    all accounts when any such species exists (otherwise the unconstrained
    argmax, with a warning). All species with LCS <= genuine_max_lcs form
    the genuine seed. Group LCS values are recomputed over the member DNAs.
    """
    params = params or SeedParams()
    if not species:
        raise ValueError("species list must be nonempty")

    candidates = [s for s in species if len(s.species_lcs) >= params.bot_min_lcs]
    if not candidates:
        raise SeedSelectionError(
            f"no bot seed: no species has an LCS of at least {params.bot_min_lcs} characters"
        )
    size_floor = params.pareto_fraction * total_accounts
    preferred = [s for s in candidates if len(s.member_ids) >= size_floor]
    if not preferred:
        logger.warning(
            "no bot-seed candidate holds %.0f%% of the %d accounts; "
            "falling back to the unconstrained impact argmax",
            params.pareto_fraction * 100,
            total_accounts,
        )
        preferred = candidates
    seed = max(preferred, key=lambda s: (impact(s), -s.species_id))

    genuine_species = [
        s
        for s in species
        if s.species_id != seed.species_id and len(s.species_lcs) <= params.genuine_max_lcs
    ]
    if not genuine_species:
        logger.warning("genuine seed group is empty; affinities toward it will be 0")

    labeled = {seed.species_id} | {s.species_id for s in genuine_species}
    unlabeled = sorted(
        (s for s in species if s.species_id not in labeled),
        key=lambda s: (-impact(s), s.species_id),
    )

    g_spambot = SeedGroup(
        frozenset({seed.species_id}),
        frozenset(seed.member_ids),
        _group_lcs([seed], dna_by_id),
    )
    g_genuine = SeedGroup(
        frozenset(s.species_id for s in genuine_species),
        frozenset(m for s in genuine_species for m in s.member_ids),
        _group_lcs(genuine_species, dna_by_id),
    )
    return InitialGroups(g_spambot, g_genuine, tuple(s.species_id for s in unlabeled))
