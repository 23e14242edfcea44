"""NumPy fallback for the compiled reachability kernels.

All functions operate on a CSR adjacency in *rank space*: nodes are labelled
0..n-1 such that every edge points from a lower rank to a strictly higher
rank (callers topologically relabel before invoking).  Reachability bitsets
are processed in chunks of `chunk_bits` target ranks per pass, so peak
memory stays at O(n * chunk_bits / 8) bytes regardless of graph size.

Results are bit-identical to the compiled backend; only speed differs.
"""

from __future__ import annotations

import numpy as np

WORD_BITS = 64

_popcount = np.bitwise_count


def _levels(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Longest-path level of each node; targets of a node always have a
    strictly smaller level."""
    n = len(indptr) - 1
    level = np.zeros(n, dtype=np.int32)
    for u in range(n - 1, -1, -1):
        lo, hi = indptr[u], indptr[u + 1]
        if hi > lo:
            level[u] = level[indices[lo:hi]].max() + 1
    return level


def _gather_ranges(indptr: np.ndarray, nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated CSR slice positions for `nodes`, plus per-node group starts."""
    lengths = (indptr[nodes + 1] - indptr[nodes]).astype(np.int64)
    starts = np.zeros(len(nodes) + 1, dtype=np.int64)
    np.cumsum(lengths, out=starts[1:])
    total = int(starts[-1])
    pos = np.arange(total, dtype=np.int64)
    pos -= np.repeat(starts[:-1], lengths)
    pos += np.repeat(indptr[nodes], lengths)
    return pos, starts


class _Sweep:
    """Per-chunk reachability stripes, reused across chunk passes."""

    def __init__(self, indptr, indices, chunk_bits):
        self.indptr = indptr
        self.indices = indices
        self.n = len(indptr) - 1
        self.chunk_bits = int(chunk_bits)
        self.words = (self.chunk_bits + WORD_BITS - 1) // WORD_BITS
        level = _levels(indptr, indices)
        order = np.argsort(level, kind="stable")
        level_starts = np.searchsorted(level[order], np.arange(level.max() + 2 if self.n else 1))
        self.level_nodes = [order[level_starts[i]:level_starts[i + 1]] for i in range(len(level_starts) - 1)]
        self.level_gather = [
            _gather_ranges(indptr, nodes) if i > 0 else (None, None)
            for i, nodes in enumerate(self.level_nodes)
        ]

    def run(self, lo: int, hi: int, self_bit_ranks: np.ndarray) -> np.ndarray:
        """Reachability stripe for bit columns lo..hi-1 (bit j = rank lo+j of
        self_bit_ranks).  Row u holds the set bits of every self_bit rank
        reachable from u, plus u's own bit when u carries one."""
        buf = np.zeros((self.n, self.words), dtype=np.uint64)
        in_chunk = self_bit_ranks[lo:hi]
        cols = np.arange(lo, hi, dtype=np.int64) - lo
        if len(in_chunk):
            buf[in_chunk, cols >> 6] = np.uint64(1) << (cols & 63).astype(np.uint64)
        for lvl in range(1, len(self.level_nodes)):
            nodes = self.level_nodes[lvl]
            pos, starts = self.level_gather[lvl]
            rows = buf[self.indices[pos]]
            merged = np.bitwise_or.reduceat(rows, starts[:-1], axis=0)
            np.bitwise_or(buf[nodes], merged, out=merged)
            buf[nodes] = merged
        return buf


def tr_keep_mask(indptr, indices, chunk_bits=4096, threads=1):
    """Transitive-reduction keep mask, aligned with `indices`.

    mask[e] is 0 iff edge e's target is reachable from another target of the
    same source, i.e. the edge is implied by a longer path.
    """
    n = len(indptr) - 1
    m = len(indices)
    mask = np.ones(m, dtype=np.uint8)
    if m == 0:
        return mask
    sweep = _Sweep(indptr, indices, chunk_bits)
    all_ranks = np.arange(n, dtype=np.int64)
    edge_src = np.repeat(all_ranks, np.diff(indptr))
    dst = indices.astype(np.int64)
    for lo in range(0, n, sweep.chunk_bits):
        hi = min(lo + sweep.chunk_bits, n)
        buf = sweep.run(lo, hi, all_ranks)
        edge_sel = np.nonzero((dst >= lo) & (dst < hi))[0]
        if not len(edge_sel):
            continue
        srcs = np.unique(edge_src[edge_sel])
        pos, starts = _gather_ranges(indptr, srcs)
        targets = indices[pos].astype(np.int64)
        rows = buf[targets]
        tgt_in = np.nonzero((targets >= lo) & (targets < hi))[0]
        # clear each target's own bit so the union is of strict descendants
        tcols = targets[tgt_in] - lo
        rows[tgt_in, tcols >> 6] &= ~(np.uint64(1) << (tcols & 63).astype(np.uint64))
        cover = np.bitwise_or.reduceat(rows, starts[:-1], axis=0)
        group = np.searchsorted(srcs, edge_src[edge_sel])
        vcols = dst[edge_sel] - lo
        hit = (cover[group, vcols >> 6] >> (vcols & 63).astype(np.uint64)) & np.uint64(1)
        mask[edge_sel] = hit == 0
    return mask


def closure_pairs(indptr, indices, chunk_bits=4096, budget=10**9, threads=1):
    """All strictly reachable (src, dst) rank pairs, or None past `budget`."""
    n = len(indptr) - 1
    sweep = _Sweep(indptr, indices, chunk_bits)
    all_ranks = np.arange(n, dtype=np.int64)
    srcs, dsts = [], []
    total = 0
    for lo in range(0, n, sweep.chunk_bits):
        hi = min(lo + sweep.chunk_bits, n)
        buf = sweep.run(lo, hi, all_ranks)
        cols = np.arange(lo, hi, dtype=np.int64) - lo
        buf[all_ranks[lo:hi], cols >> 6] &= ~(np.uint64(1) << (cols & 63).astype(np.uint64))
        total += int(_popcount(buf).sum())
        if total > budget:
            return None
        width = hi - lo
        bits = np.unpackbits(buf.view(np.uint8), axis=1, bitorder="little")[:, :width]
        row, col = np.nonzero(bits)
        srcs.append(row.astype(np.int32))
        dsts.append((col + lo).astype(np.int32))
    if not srcs:
        return np.zeros(0, dtype=np.int32), np.zeros(0, dtype=np.int32)
    return np.concatenate(srcs), np.concatenate(dsts)


def reach_member_counts(indptr, indices, member_ranks, chunk_bits=4096, threads=1):
    """For each member rank, how many *other* members it can reach."""
    k = len(member_ranks)
    counts = np.zeros(k, dtype=np.int64)
    if k == 0:
        return counts
    sweep = _Sweep(indptr, indices, chunk_bits)
    members = np.asarray(member_ranks, dtype=np.int64)
    for clo in range(0, k, sweep.chunk_bits):
        chi = min(clo + sweep.chunk_bits, k)
        buf = sweep.run(clo, chi, members)
        counts += _popcount(buf[members]).sum(axis=1).astype(np.int64)
    return counts - 1  # every member's own bit is set exactly once


def bfs_mask(indptr, indices, times, src, t_lo, t_hi):
    """Nodes reachable from `src` through nodes whose time lies in
    [t_lo, t_hi]; the source itself is always marked."""
    n = len(indptr) - 1
    visited = np.zeros(n, dtype=np.uint8)
    visited[src] = 1
    frontier = np.array([src], dtype=np.int64)
    while len(frontier):
        pos, _ = _gather_ranges(indptr, frontier)
        nxt = np.unique(indices[pos].astype(np.int64))
        nxt = nxt[(visited[nxt] == 0) & (times[nxt] >= t_lo) & (times[nxt] <= t_hi)]
        visited[nxt] = 1
        frontier = nxt
    return visited
