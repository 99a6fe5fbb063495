"""Digital DNA encoding: from raw timelines to behavior strings.

Every account action becomes one character, so an account's whole history
compresses into a short string whose *shape* carries the behavioral
signal. Run from the repository root:

    python demos/01_digital_dna_encoding.py
"""

import io

from botdna import (
    DnaAlphabet,
    encode_timeline,
    parse_timelines,
    read_dna_file,
    split_quarantine,
    write_dna_file,
)

RAW = """\
{"account_id": "alice", "actions": [{"type": "tweet"}, {"type": "reply"}, {"type": "tweet"}, {"type": "retweet"}, {"type": "tweet"}, {"type": "reply"}, {"type": "tweet"}, {"type": "tweet"}, {"type": "retweet"}, {"type": "reply"}]}
{"account_id": "amplifier-07", "actions": [{"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}, {"type": "retweet"}]}
{"account_id": "lurker", "actions": [{"type": "reply"}]}
"""

timelines = parse_timelines(io.StringIO(RAW))
print(f"parsed {len(timelines)} timelines\n")

# The default three-character alphabet: A = plain tweet, T = retweet, C = reply.
alphabet = DnaAlphabet.default()
for kind, char in alphabet.mapping.items():
    print(f"  {char} <- {kind}")
print()

for timeline in timelines:
    dna = encode_timeline(timeline, alphabet)
    print(f"  {timeline.account_id:>14}: {dna.sequence or '(empty)'}")

print()
print("A human mixes action types; a repost amplifier is a wall of T's.")
print()

# Too-short timelines carry no usable signal: they are quarantined, not
# force-fit into clusters.
kept, quarantined = split_quarantine(timelines, min_dna_length=10)
print(f"kept {[t.account_id for t in kept]}, quarantined {[t.account_id for t in quarantined]}")

# DNA files round-trip exactly, so every pipeline stage can be re-run
# from its artifact.
dna_records = [encode_timeline(t, alphabet) for t in kept]
text = write_dna_file(dna_records)
assert read_dna_file(io.StringIO(text)) == dna_records
print("\ndna.tsv payload:")
print(text)

# Alphabets are configurable: platforms with more verbs get more letters.
extended = DnaAlphabet(
    {"tweet": "A", "retweet": "T", "reply": "C", "quote": "Q", "like": "L"}
)
print(f"extended alphabet kinds: {', '.join(extended.kinds)}")
