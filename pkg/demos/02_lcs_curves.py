"""LCS curves: how much behavior k accounts share, for every k.

The engine indexes all DNA strings at once, then reads off the longest
substring common to at least k of them for every k in one pass. A flat
stretch means a block of accounts behaving alike; a cliff marks where
that block ends.

    python demos/02_lcs_curves.py
"""

import random

from botdna import build_index, lcs_curve, witness_docs

rng = random.Random(1)

# Six accounts: three share a scripted action burst, three are independent.
script = "ATCATCATCATCATCATC"


def with_script():
    pad = lambda n: "".join(rng.choice("ATC") for _ in range(n))
    return pad(6) + script + pad(6)


def independent():
    return "".join(rng.choice("ATC") for _ in range(30))


accounts = [with_script() for _ in range(3)] + [independent() for _ in range(3)]
names = ["copy1", "copy2", "copy3", "ind1", "ind2", "ind3"]
for name, seq in zip(names, accounts):
    print(f"  {name:>5}: {seq}")
print()

index = build_index(accounts)
curve = lcs_curve(index)

print("LCS curve (group size -> longest substring shared by >= k accounts):")
width = max(p.length for p in curve)
for p in curve:
    bar = "#" * p.length
    print(f"  k={p.k}  len={p.length:2d}  {bar:<{width}}  witness={p.witness!r}")
print()

# The drop after k=3 is the boundary of the scripted block.
point = curve.point_at(3)
docs = sorted(point.witness_docs)
print(f"witness at k=3 occurs in accounts: {[names[d] for d in docs]}")

# Any substring can be located across the corpus directly.
print(f"accounts containing {script[:9]!r}: "
      f"{[names[d] for d in sorted(witness_docs(index, script[:9]))]}")
print(f"accounts containing 'TTTTTT': "
      f"{[names[d] for d in sorted(witness_docs(index, 'TTTTTT'))] or 'none'}")
