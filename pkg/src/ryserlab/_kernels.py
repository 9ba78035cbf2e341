"""Compiled enumeration kernels."""

import numba
import numpy as np


@numba.njit(cache=True)
def count_reduced_rectangles(r, n):
    """Latin r x n rectangles with first row 0..n-1 and first column 0..r-1.

    Iterative cell-by-cell backtracking with row and column symbol masks.
    """
    if r <= 1:
        return 1
    full = (1 << n) - 1
    rowmask = np.zeros(r, np.int64)
    colmask = np.zeros(n, np.int64)
    for j in range(n):
        rowmask[0] |= 1 << j
        colmask[j] |= 1 << j
    for i in range(1, r):
        rowmask[i] |= 1 << i
        colmask[0] |= 1 << i
    ncells = (r - 1) * (n - 1)
    if ncells == 0:
        return 1
    choice = np.full(ncells, -1, np.int64)
    total = 0
    pos = 0
    while pos >= 0:
        i = pos // (n - 1) + 1
        j = pos % (n - 1) + 1
        prev = choice[pos]
        if prev >= 0:
            rowmask[i] ^= 1 << prev
            colmask[j] ^= 1 << prev
        avail = full & ~(rowmask[i] | colmask[j])
        avail &= ~((1 << (prev + 1)) - 1)
        if avail == 0:
            choice[pos] = -1
            pos -= 1
            continue
        low = avail & -avail
        s = 0
        while (1 << s) != low:
            s += 1
        choice[pos] = s
        rowmask[i] |= low
        colmask[j] |= low
        if pos == ncells - 1:
            total += 1
        else:
            pos += 1
    return total



@numba.njit(cache=True)
def count_transversal_partitions(masks, cells, ncells, limit):
    """Count exact covers of ``ncells`` cells by the given transversals.

    masks: (T, W) uint64 cell bitsets; cells: (T, n) cell indices.  Each level
    keeps the candidates disjoint from everything chosen so far, branches on
    the uncovered cell with the fewest candidates, and stops early once
    ``limit`` (if positive) is reached.  Returns (count, finished).
    """
    T, W = masks.shape
    n = cells.shape[1]
    cand = np.empty((n + 1, T), np.int64)
    ncand = np.zeros(n + 1, np.int64)
    branch = np.empty((n + 1, T), np.int64)
    nbranch = np.zeros(n + 1, np.int64)
    bpos = np.zeros(n + 1, np.int64)
    used = np.zeros((n + 1, W), np.uint64)
    counts = np.zeros(ncells, np.int64)
    for t in range(T):
        cand[0, t] = t
    ncand[0] = T
    total = 0
    depth = 0
    entering = True
    while depth >= 0:
        if entering:
            entering = False
            if depth == n - 1:
                # any remaining candidate covers exactly the remaining cells
                total += ncand[depth]
                depth -= 1
                if limit > 0 and total >= limit:
                    return total, False
                continue
            counts[:] = 0
            for a in range(ncand[depth]):
                t = cand[depth, a]
                for k in range(n):
                    counts[cells[t, k]] += 1
            best = -1
            bestc = T + 1
            for c in range(ncells):
                if (used[depth, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                    continue
                if counts[c] < bestc:
                    bestc = counts[c]
                    best = c
            if bestc == 0:
                depth -= 1
                continue
            nb = 0
            for a in range(ncand[depth]):
                t = cand[depth, a]
                for k in range(n):
                    if cells[t, k] == best:
                        branch[depth, nb] = t
                        nb += 1
                        break
            nbranch[depth] = nb
            bpos[depth] = 0
        if bpos[depth] >= nbranch[depth]:
            depth -= 1
            continue
        t = branch[depth, bpos[depth]]
        bpos[depth] += 1
        m = 0
        for a in range(ncand[depth]):
            u = cand[depth, a]
            ok = True
            for w in range(W):
                if masks[u, w] & masks[t, w]:
                    ok = False
                    break
            if ok:
                cand[depth + 1, m] = u
                m += 1
        ncand[depth + 1] = m
        for w in range(W):
            used[depth + 1, w] = used[depth, w] | masks[t, w]
        depth += 1
        entering = True
    return total, True
