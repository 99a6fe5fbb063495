"""Multi-string longest-common-substring engine.

All DNA strings of a corpus are concatenated with unique per-document
sentinel symbols into one integer array, indexed once by a generalized
suffix array plus LCP array, and then a single linear sweep answers, for
every group size k, the longest substring present in at least k documents
(the *LCS curve*), together with a witness substring and the exact set of
documents containing it.

Complexity: suffix array construction uses prefix doubling over
``np.lexsort`` — O(n log n) per round and at most log n rounds, i.e.
O(n log^2 n) worst case, with early exit once ranks are unique (about
log_sigma(n) rounds on non-degenerate corpora). The LCP array (Kasai) and
the distinct-document sweep are O(n). In practice a 10^6-symbol corpus is
indexed and swept in a few seconds.

Sentinels are distinct integers strictly below every alphabet symbol, so
no common substring can span a document boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from ._kernels import kasai_lcp, node_sweep
from .codec import DnaSequence

_NO_KEY = np.int64((1 << 62) - 1)


def _as_strings(sequences: Iterable[Union[DnaSequence, str]]) -> list[str]:
    return [s.sequence if isinstance(s, DnaSequence) else s for s in sequences]


class CorpusIndex:
    """Immutable suffix structure over a sentinel-joined corpus.

    Attributes
    ----------
    text : int64 array, one symbol per position; document j's characters
        are ``num_docs + ord(char)`` and its terminating sentinel is ``j``.
    suffix_array : permutation of [0, len(text)) in suffix order.
    lcp_array : lcp_array[i] = LCP of suffixes suffix_array[i-1..i].
    doc_array : document id of every text position (sentinel included).
    num_docs : number of input records (duplicates count separately).
    """

    __slots__ = (
        "text",
        "suffix_array",
        "lcp_array",
        "doc_array",
        "num_docs",
        "_doc_sa",
        "_nodes",
    )

    def __init__(self, text, suffix_array, lcp_array, doc_array, num_docs):
        self.text = text
        self.suffix_array = suffix_array
        self.lcp_array = lcp_array
        self.doc_array = doc_array
        self.num_docs = num_docs
        self._doc_sa = doc_array[suffix_array]
        self._nodes = None

    def decode(self, start: int, length: int) -> str:
        """Text slice back to characters; must not cross a sentinel."""
        return "".join(chr(int(c) - self.num_docs) for c in self.text[start : start + length])

    def _repeat_nodes(self):
        if self._nodes is None:
            m = self.suffix_array.size
            order = np.argsort(self._doc_sa, kind="stable")
            prev_same = np.full(m, -1, dtype=np.int64)
            same = self._doc_sa[order[1:]] == self._doc_sa[order[:-1]]
            prev_same[order[1:][same]] = order[:-1][same]
            self._nodes = node_sweep(
                self.lcp_array, self.suffix_array, prev_same, self.num_docs
            )
        return self._nodes


@dataclass(frozen=True)
class LcsCurvePoint:
    """Longest substring common to at least ``k`` documents."""

    k: int
    length: int
    witness: str
    witness_docs: frozenset[int]


@dataclass(frozen=True)
class LcsCurve:
    """Curve points for k = 2..num_docs; lengths are non-increasing."""

    points: tuple[LcsCurvePoint, ...]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def point_at(self, k: int) -> LcsCurvePoint:
        point = self.points[k - 2]
        assert point.k == k
        return point

    def lengths(self) -> list[int]:
        return [p.length for p in self.points]


def _suffix_array(text: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix array (stable two-key sorts, early exit)."""
    m = text.size
    rank = np.unique(text, return_inverse=True)[1].astype(np.int64)
    h = 1
    while True:
        second = np.full(m, -1, dtype=np.int64)
        second[: m - h] = rank[h:]
        order = np.lexsort((second, rank))
        r_ord = rank[order]
        s_ord = second[order]
        new = np.empty(m, dtype=np.int64)
        new[0] = 0
        np.cumsum((r_ord[1:] != r_ord[:-1]) | (s_ord[1:] != s_ord[:-1]), out=new[1:])
        if new[-1] == m - 1:
            return order
        rank = np.empty(m, dtype=np.int64)
        rank[order] = new
        h *= 2


def build_index(sequences: Sequence[Union[DnaSequence, str]]) -> CorpusIndex:
    """Index a corpus of DNA strings (at least one must be nonempty)."""
    seqs = _as_strings(sequences)
    num_docs = len(seqs)
    if num_docs == 0:
        raise ValueError("cannot index an empty corpus")
    total = sum(len(s) for s in seqs)
    if total == 0:
        raise ValueError("cannot index a corpus of only empty sequences")
    parts = []
    doc_parts = []
    for j, s in enumerate(seqs):
        arr = np.empty(len(s) + 1, dtype=np.int64)
        if s:
            arr[:-1] = np.frombuffer(s.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)
            arr[:-1] += num_docs
        arr[-1] = j
        parts.append(arr)
        doc_parts.append(np.full(len(s) + 1, j, dtype=np.int64))
    text = np.concatenate(parts)
    doc_array = np.concatenate(doc_parts)
    suffix_array = _suffix_array(text)
    lcp_array = kasai_lcp(text, suffix_array)
    return CorpusIndex(text, suffix_array, lcp_array, doc_array, num_docs)


def _assemble_curve(index: CorpusIndex) -> LcsCurve:
    n = index.num_docs
    depth, docs, minsa, left, right = index._repeat_nodes()
    root = depth.size - 1

    # best achievable length for each exact document count, then suffix-max
    best_by_docs = np.zeros(n + 1, dtype=np.int64)
    np.maximum.at(best_by_docs, docs, depth)
    f = np.maximum.accumulate(best_by_docs[::-1])[::-1]

    # winner per k: among nodes with docs >= k and depth == f(k), the one
    # whose witness occurs earliest in the text; encode (minsa, node) so a
    # single minimum picks both
    order = np.argsort(-docs, kind="stable")
    docs_desc = -docs[order]
    key = (minsa << np.int64(32)) | np.arange(depth.size, dtype=np.int64)
    max_depth = int(depth.max())
    best_key = np.full(max_depth + 1, _NO_KEY, dtype=np.int64)

    doc_sets: dict[int, frozenset[int]] = {}

    def docs_of(node: int) -> frozenset[int]:
        cached = doc_sets.get(node)
        if cached is None:
            if node == root:
                cached = frozenset(range(n))
            else:
                lo, hi = int(left[node]), int(right[node])
                cached = frozenset(int(d) for d in np.unique(index._doc_sa[lo : hi + 1]))
            doc_sets[node] = cached
        return cached

    points: list[LcsCurvePoint] = []
    ptr = 0
    for k in range(n, 1, -1):
        nxt = int(np.searchsorted(docs_desc, -k, side="right"))
        if nxt > ptr:
            grp = order[ptr:nxt]
            np.minimum.at(best_key, depth[grp], key[grp])
            ptr = nxt
        fk = int(f[k])
        node = int(best_key[fk] & np.int64(0xFFFFFFFF))
        pos = int(best_key[fk] >> np.int64(32))
        witness = index.decode(pos, fk) if fk > 0 else ""
        points.append(LcsCurvePoint(k, fk, witness, docs_of(node)))
    points.reverse()
    return LcsCurve(tuple(points))


def lcs_curve(index: CorpusIndex) -> LcsCurve:
    """LCS length, witness, and witness documents for every k in 2..N."""
    if index.num_docs < 2:
        raise ValueError("LCS curve requires at least 2 documents")
    return _assemble_curve(index)


def lcs_of_set(sequences: Sequence[Union[DnaSequence, str]]) -> str:
    """Longest substring common to every sequence in the set.

    A singleton set returns its only sequence; any empty member forces "".
    """
    seqs = _as_strings(sequences)
    if not seqs:
        raise ValueError("lcs_of_set requires a nonempty set of sequences")
    if len(seqs) == 1:
        return seqs[0]
    if any(len(s) == 0 for s in seqs):
        return ""
    index = build_index(seqs)
    return _assemble_curve(index).point_at(index.num_docs).witness


def _suffix_vs_pattern(text: np.ndarray, start: int, pattern: np.ndarray) -> int:
    """-1 / 0 / +1: suffix at ``start`` sorts before / has prefix / after."""
    m = text.size
    for t in range(pattern.size):
        if start + t >= m:
            return -1
        c = text[start + t]
        if c < pattern[t]:
            return -1
        if c > pattern[t]:
            return 1
    return 0


def witness_docs(index: CorpusIndex, substring: str) -> frozenset[int]:
    """Exact set of documents containing ``substring``.

    The empty substring is in every document; an absent substring yields
    the empty set.
    """
    if substring == "":
        return frozenset(range(index.num_docs))
    pattern = np.array([index.num_docs + ord(c) for c in substring], dtype=np.int64)
    sa = index.suffix_array
    m = sa.size

    lo, hi = 0, m
    while lo < hi:  # first suffix >= pattern
        mid = (lo + hi) // 2
        if _suffix_vs_pattern(index.text, int(sa[mid]), pattern) < 0:
            lo = mid + 1
        else:
            hi = mid
    first = lo
    hi = m
    while lo < hi:  # first suffix with the pattern-prefix removed
        mid = (lo + hi) // 2
        if _suffix_vs_pattern(index.text, int(sa[mid]), pattern) <= 0:
            lo = mid + 1
        else:
            hi = mid
    if first == lo:
        return frozenset()
    return frozenset(int(d) for d in np.unique(index._doc_sa[first:lo]))
