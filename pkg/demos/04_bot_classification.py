"""Seeding and genetic-similarity classification of species.

After clustering, the species with the most impactful long LCS becomes the
bot seed and short-LCS species merge into the genuine seed. Every other
species is aligned against both group LCS strings; alignment identity
blended with population-weighted merge retention decides its side.

    python demos/04_bot_classification.py
"""

import random

from botdna import (
    AffinityParams,
    DnaSequence,
    ScoringScheme,
    SynthSpec,
    align_global,
    classify_species,
    cluster_into_species,
    encode_timeline,
    form_initial_groups,
    generate_synthetic,
    lcs_of_set,
    merge_retention,
    similarity,
    species_affinity,
)

# A global alignment in isolation: identity is the share of matched columns.
result = align_global("ATCATTCAT", "ATCTTCAT")
print("alignment of two LCS strings:")
print(f"  {result.aligned_a}")
print(f"  {result.aligned_b}")
print(f"  score {result.score}, identity {result.identity:.2f}\n")

# Corpus: a tight colony of 14 bots, 26 independent accounts, and a
# "second wave" of 5 accounts running a lightly edited copy of the
# colony's playbook. The edits break literal containment, so the wave
# forms its own species and the classifier has to decide its side.
timelines = generate_synthetic(
    SynthSpec(n_bots=14, n_genuine=26, seq_length=160, template_length=44, noise_rate=0.05, rng_seed=99)
)
accounts = [DnaSequence(t.account_id, encode_timeline(t).sequence) for t in timelines]
truth = {t.account_id: t.label for t in timelines}

playbook = lcs_of_set([a.sequence for a in accounts if a.account_id.startswith("bot")])
edited = list(playbook)
for pos in range(2, len(edited), 5):
    edited[pos] = "ATC"[("ATC".index(edited[pos]) + 1) % 3]
edited_playbook = "".join(edited)
rng = random.Random(4)
for w in range(5):
    filler = lambda n: "".join(rng.choice("ATC") for _ in range(n))
    account_id = f"wave2_{w}"
    accounts.append(
        DnaSequence(account_id, filler(68) + edited_playbook + filler(68))
    )
    truth[account_id] = "bot"

species = cluster_into_species(accounts)
dna_by_id = {a.account_id: a.sequence for a in accounts}
print(f"{len(species)} species:")
for s in species:
    kinds = sorted({m.split("_")[0] for m in s.member_ids})
    print(
        f"  species {s.species_id}: {len(s.member_ids)} accounts ({'/'.join(kinds)}), "
        f"lcs {len(s.species_lcs)} chars"
    )

groups = form_initial_groups(species, dna_by_id, total_accounts=len(accounts))
print(f"\nbot seed species {sorted(groups.g_spambot.species_ids)}, "
      f"lcs {len(groups.g_spambot.lcs)} chars, {len(groups.g_spambot.member_ids)} accounts")
print(f"genuine seed species {sorted(groups.g_genuine.species_ids)}, "
      f"lcs {len(groups.g_genuine.lcs)} chars, {len(groups.g_genuine.member_ids)} accounts")
print(f"unlabeled species: {list(groups.unlabeled)}\n")

by_id = {s.species_id: s for s in species}
unlabeled = [by_id[sid] for sid in groups.unlabeled]
total_grouped = len(groups.g_spambot.member_ids) + len(groups.g_genuine.member_ids)

for s in unlabeled:
    sim_bot = similarity(s.species_lcs, groups.g_spambot.lcs)
    ret_bot = merge_retention(s, groups.g_spambot, dna_by_id)
    aff_bot = species_affinity(s, groups.g_spambot, total_grouped, dna_by_id)
    aff_gen = species_affinity(s, groups.g_genuine, total_grouped, dna_by_id)
    print(
        f"species {s.species_id}: similarity->bot {sim_bot:.2f}, retention->bot {ret_bot:.2f}, "
        f"affinity bot {aff_bot:.3f} vs genuine {aff_gen:.3f}"
    )

assignments = classify_species(unlabeled, groups, dna_by_id, AffinityParams(), ScoringScheme())
for a in assignments:
    print(f"  -> species {a.species_id} assigned {a.assigned}"
          f"{' (tie, conservative default)' if a.tie else ''}")

# How did the species-level decisions land account-wise?
predicted_bots = set(groups.g_spambot.member_ids)
for a in assignments:
    if a.assigned == "gSpamBot":
        predicted_bots |= by_id[a.species_id].member_ids
correct = sum(
    1 for account_id, label in truth.items()
    if (account_id in predicted_bots) == (label == "bot")
)
print(f"\naccounts labeled correctly: {correct}/{len(truth)}")
