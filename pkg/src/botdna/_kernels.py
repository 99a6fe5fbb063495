"""Compiled inner loops for the suffix-structure engine.

Both kernels are single-threaded and allocation-light so results are
bit-reproducible regardless of how many worker threads the caller owns.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_BIG = np.int64(1 << 62)


@njit(cache=True)
def kasai_lcp(text, sa):
    """LCP array from a suffix array in O(n) (Kasai's rank-walk).

    ``lcp[i]`` is the longest common prefix of the suffixes at
    ``sa[i-1]`` and ``sa[i]``; ``lcp[0]`` is 0.
    """
    m = text.size
    rank = np.empty(m, np.int64)
    for i in range(m):
        rank[sa[i]] = i
    lcp = np.zeros(m, np.int64)
    k = 0
    for pos in range(m):
        r = rank[pos]
        if r == 0:
            k = 0
            continue
        j = sa[r - 1]
        while pos + k < m and j + k < m and text[pos + k] == text[j + k]:
            k += 1
        lcp[r] = k
        if k > 0:
            k -= 1
    return lcp


@njit(cache=True)
def node_sweep(lcp, sa, prev_same, num_docs):
    """Enumerate every branching repeat node with its distinct-document count.

    One left-to-right pass over (suffix array, LCP array) with a monotone
    stack of open nodes. A node is an LCP interval: a maximal run of
    suffixes sharing a prefix of exactly ``depth`` symbols. Distinct counts
    use duplicate-pair discounting: each pair of consecutive same-document
    leaves (``prev_same``) adds one duplicate at the deepest open node
    containing both, and child tallies roll up into parents on close.

    Returns parallel arrays (depth, distinct_docs, min_text_pos, left,
    right); the final entry is the root (depth 0, all documents).
    """
    m = lcp.size
    st_depth = np.empty(m + 2, np.int64)
    st_left = np.empty(m + 2, np.int64)
    st_leaves = np.zeros(m + 2, np.int64)
    st_dups = np.zeros(m + 2, np.int64)
    st_minsa = np.empty(m + 2, np.int64)
    out_depth = np.empty(m + 2, np.int64)
    out_docs = np.empty(m + 2, np.int64)
    out_minsa = np.empty(m + 2, np.int64)
    out_left = np.empty(m + 2, np.int64)
    out_right = np.empty(m + 2, np.int64)

    top = 0
    st_depth[0] = 0
    st_left[0] = 0
    st_minsa[0] = _BIG
    n_out = 0

    for i in range(m + 1):
        v = lcp[i] if 0 < i < m else np.int64(0)
        # close nodes deeper than the incoming link, rolling tallies upward
        c_leaves = np.int64(0)
        c_dups = np.int64(0)
        c_minsa = _BIG
        c_left = np.int64(i)
        while st_depth[top] > v:
            lv = st_leaves[top] + c_leaves
            du = st_dups[top] + c_dups
            ms = st_minsa[top] if st_minsa[top] < c_minsa else c_minsa
            lf = st_left[top]
            out_depth[n_out] = st_depth[top]
            out_docs[n_out] = lv - du
            out_minsa[n_out] = ms
            out_left[n_out] = lf
            out_right[n_out] = i - 1
            n_out += 1
            c_leaves, c_dups, c_minsa, c_left = lv, du, ms, lf
            top -= 1
        if st_depth[top] == v:
            st_leaves[top] += c_leaves
            st_dups[top] += c_dups
            if c_minsa < st_minsa[top]:
                st_minsa[top] = c_minsa
        else:
            if c_left == i:
                # nothing closed: the node being opened adopts the previous
                # leaf, which shares >= v symbols with leaf i by definition
                c_left = np.int64(i - 1)
                c_leaves = np.int64(1)
                c_minsa = sa[i - 1]
                st_leaves[top] -= 1
            top += 1
            st_depth[top] = v
            st_left[top] = c_left
            st_leaves[top] = c_leaves
            st_dups[top] = c_dups
            st_minsa[top] = c_minsa
        if i == m:
            break
        # leaf i joins the deepest open node; ancestors receive it on close
        st_leaves[top] += 1
        if sa[i] < st_minsa[top]:
            st_minsa[top] = sa[i]
        p = prev_same[i]
        if p >= 0:
            # deepest open node whose interval covers p (stack lefts are
            # non-decreasing, so binary search)
            lo = 0
            hi = top
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if st_left[mid] <= p:
                    lo = mid
                else:
                    hi = mid - 1
            st_dups[lo] += 1

    # root: the empty prefix, present in every document by convention
    out_depth[n_out] = 0
    out_docs[n_out] = num_docs
    out_minsa[n_out] = 0
    out_left[n_out] = 0
    out_right[n_out] = m - 1
    n_out += 1
    return (
        out_depth[:n_out].copy(),
        out_docs[:n_out].copy(),
        out_minsa[:n_out].copy(),
        out_left[:n_out].copy(),
        out_right[:n_out].copy(),
    )
