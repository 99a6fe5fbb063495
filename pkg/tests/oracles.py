"""Independent brute-force references used to verify the fast paths.

These deliberately avoid the library's suffix-array and DP machinery:
substring enumeration with ``in`` containment, and a memoized recursion
for alignment scores.
"""

from __future__ import annotations

from functools import lru_cache


def substring_doc_counts(seqs: list[str]) -> dict[str, tuple[int, int, int]]:
    """Every substring -> (containing-doc count, first doc, first index in it)."""
    subs: set[str] = set()
    for s in seqs:
        for i in range(len(s)):
            for j in range(i + 1, len(s) + 1):
                subs.add(s[i:j])
    info: dict[str, tuple[int, int, int]] = {}
    for w in subs:
        docs = [d for d, s in enumerate(seqs) if w in s]
        info[w] = (len(docs), docs[0], seqs[docs[0]].index(w))
    return info


def brute_curve(seqs: list[str]) -> dict[int, tuple[int, str]]:
    """For each k in 2..N: (max length, witness) of substrings in >= k docs.

    Witness tie-break: among maximal-length candidates, the one occurring
    earliest in the corpus (smallest first doc, then smallest index).
    """
    n = len(seqs)
    info = substring_doc_counts(seqs)
    out: dict[int, tuple[int, str]] = {}
    for k in range(2, n + 1):
        candidates = [w for w, (count, _, _) in info.items() if count >= k]
        if not candidates:
            out[k] = (0, "")
            continue
        best_len = max(len(w) for w in candidates)
        pool = [w for w in candidates if len(w) == best_len]
        pool.sort(key=lambda w: (info[w][1], info[w][2]))
        out[k] = (best_len, pool[0])
    return out


def brute_lcs_of_set(seqs: list[str]) -> str:
    """Longest substring of seqs[0] contained in every other sequence."""
    if len(seqs) == 1:
        return seqs[0]
    base = min(seqs, key=len)
    others = list(seqs)
    best = ("", (0, 0))
    for length in range(len(base), 0, -1):
        found = None
        for i in range(len(base) - length + 1):
            w = base[i : i + length]
            if all(w in s for s in others):
                first_doc = next(d for d, s in enumerate(others) if w in s)
                key = (first_doc, others[first_doc].index(w))
                if found is None or key < found[1]:
                    found = (w, key)
        if found is not None:
            best = found
            break
    return best[0]


def brute_witness_docs(seqs: list[str], w: str) -> frozenset[int]:
    if w == "":
        return frozenset(range(len(seqs)))
    return frozenset(d for d, s in enumerate(seqs) if w in s)


def align_score_reference(a: str, b: str, match: int, mismatch: int, gap: int) -> int:
    """Optimal global alignment score by memoized recursion."""

    @lru_cache(maxsize=None)
    def rec(i: int, j: int) -> int:
        if i == 0 and j == 0:
            return 0
        best = None
        if i > 0 and j > 0:
            sub = match if a[i - 1] == b[j - 1] else mismatch
            best = rec(i - 1, j - 1) + sub
        if i > 0:
            cand = rec(i - 1, j) + gap
            best = cand if best is None or cand > best else best
        if j > 0:
            cand = rec(i, j - 1) + gap
            best = cand if best is None or cand > best else best
        return best

    result = rec(len(a), len(b))
    rec.cache_clear()
    return result


def enumerate_alignments(a: str, b: str):
    """Yield every global alignment as (aligned_a, aligned_b); tiny inputs only."""
    if not a and not b:
        yield ("", "")
        return
    if a and b:
        for ra, rb in enumerate_alignments(a[:-1], b[:-1]):
            yield (ra + a[-1], rb + b[-1])
    if a:
        for ra, rb in enumerate_alignments(a[:-1], b):
            yield (ra + a[-1], rb + "-")
    if b:
        for ra, rb in enumerate_alignments(a, b[:-1]):
            yield (ra + "-", rb + b[-1])


def score_alignment(aligned_a: str, aligned_b: str, match: int, mismatch: int, gap: int) -> int:
    score = 0
    for x, y in zip(aligned_a, aligned_b):
        if x == "-" or y == "-":
            score += gap
        elif x == y:
            score += match
        else:
            score += mismatch
    return score
