"""Pure-Python kernels.

Reference implementation of every hot loop; the Cython module
``_ckernels`` mirrors these signatures exactly and must return identical
results.  All arguments are index based: ``lt`` is an ``n x n`` uint8 matrix
(``lt[i, j]`` iff i < j, transitively closed), ``order`` lists element
indices sorted by (level, index) and ``starts[l]:starts[l + 1]`` delimits
level ``l`` inside ``order``.
"""
from __future__ import annotations

import numpy as np


def _rows(lt):
    return [bytes(row) for row in np.asarray(lt, dtype=np.uint8)]


def level_sweep(lt):
    """Minimal-element peeling; returns (level, pred) with pred = -1 at level 0.

    Each selected element overwrites the predecessor reference of every
    element above it, so the surviving reference is the last element (in
    processing order) of the previous level.
    """
    rows = _rows(lt)
    n = len(rows)
    below = [0] * n
    for row in rows:
        for j in range(n):
            if row[j]:
                below[j] += 1
    level = [-1] * n
    pred = [-1] * n
    current = [i for i in range(n) if below[i] == 0]
    lvl = 0
    while current:
        nxt = []
        for x in current:
            level[x] = lvl
        for x in current:
            row = rows[x]
            for z in range(n):
                if row[z]:
                    pred[z] = x
                    below[z] -= 1
                    if below[z] == 0:
                        nxt.append(z)
        nxt.sort()
        current = nxt
        lvl += 1
    return np.array(level, dtype=np.int64), np.array(pred, dtype=np.int64)


def slc_sweep(lt, order):
    """Longest chain starting at each element, from the top level down.

    ``succ`` is the lowest-index successor realising the maximum, -1 if none.
    """
    rows = _rows(lt)
    n = len(rows)
    slc = [1] * n
    succ = [-1] * n
    for pos in range(n - 1, -1, -1):
        x = int(order[pos])
        row = rows[x]
        best = 0
        arg = -1
        for y in range(n):
            if row[y] and slc[y] > best:
                best = slc[y]
                arg = y
        slc[x] = best + 1
        succ[x] = arg
    return np.array(slc, dtype=np.int64), np.array(succ, dtype=np.int64)


def scan_chain_antichain(lt, order, starts, s, r):
    """First x (levels s-1 .. h-1) with r elements of level l-s+1 incomparable to it.

    Returns ``(x, [y_1 .. y_r])`` or None.
    """
    rows = _rows(lt)
    h = len(starts) - 1
    for l in range(s - 1, h):
        base = l - s + 1
        for pos in range(starts[l], starts[l + 1]):
            x = int(order[pos])
            ys = []
            if r > 0:
                rx = rows[x]
                for q in range(starts[base], starts[base + 1]):
                    y = int(order[q])
                    if y != x and not rx[y] and not rows[y][x]:
                        ys.append(y)
                        if len(ys) == r:
                            break
            if len(ys) == r:
                return x, ys
    return None


def scan_based11(lt, level, order, starts, slc, k):
    """First x with slc(x) >= k-2 having two elements below it on one lower level.

    Returns ``(x, a, b)`` or None.
    """
    rows = _rows(lt)
    for pos in range(len(order)):
        x = int(order[pos])
        if slc[x] < k - 2:
            continue
        for l in range(int(level[x])):
            first = -1
            for q in range(starts[l], starts[l + 1]):
                a = int(order[q])
                if rows[a][x]:
                    if first >= 0:
                        return x, first, a
                    first = a
    return None


def scan_based21(lt, level, order, starts, slc, k):
    """Search for a chain-of-two-plus-point below x.

    For x with slc(x) >= k-3 and each y < x, the levels under y are swept
    one at a time tracking one element below y and one element below x but
    incomparable to y.  Returns ``(x, y, below_y, beside_y)`` or None.
    """
    rows = _rows(lt)
    for pos in range(len(order)):
        x = int(order[pos])
        if slc[x] < k - 3:
            continue
        for qy in range(starts[level[x]]):
            y = int(order[qy])
            if not rows[y][x]:
                continue
            for l in range(int(level[y])):
                cls1 = -1
                cls2 = -1
                for q in range(starts[l], starts[l + 1]):
                    e = int(order[q])
                    re = rows[e]
                    if re[y]:
                        cls1 = e
                    elif re[x]:
                        cls2 = e
                    if cls1 >= 0 and cls2 >= 0:
                        return x, y, cls1, cls2
    return None


def oracle_search(prel, hrel, plevel, hlevel, kind, pbelow, pabove, hbelow, habove):
    """Lexicographically first injective map passing all pairwise constraints.

    ``prel``/``hrel`` hold order-function codes (0 '=', 1 '<', 2 '>', 3 '~').
    ``kind`` 1 checks the order function only, 2 adds level-equality
    equivalence, 3 adds equality of level differences.  Returns a list of host
    indices (one per pattern index) or None.
    """
    prel = [list(map(int, row)) for row in np.asarray(prel)]
    hrel = [list(map(int, row)) for row in np.asarray(hrel)]
    plevel = [int(v) for v in plevel]
    hlevel = [int(v) for v in hlevel]
    k = len(prel)
    n = len(hrel)
    if k == 0:
        return []
    if k > n:
        return None
    assign = [-1] * k
    nxt = [0] * k
    used = [False] * n
    depth = 0
    while depth >= 0:
        placed = False
        for h in range(nxt[depth], n):
            if used[h] or hbelow[h] < pbelow[depth] or habove[h] < pabove[depth]:
                continue
            ok = True
            for j in range(depth):
                g = assign[j]
                if hrel[g][h] != prel[j][depth]:
                    ok = False
                    break
                if kind >= 2:
                    if (hlevel[g] == hlevel[h]) != (plevel[j] == plevel[depth]):
                        ok = False
                        break
                    if kind >= 3 and abs(hlevel[g] - hlevel[h]) != abs(plevel[j] - plevel[depth]):
                        ok = False
                        break
            if ok:
                assign[depth] = h
                used[h] = True
                nxt[depth] = h + 1
                placed = True
                break
        if placed:
            depth += 1
            if depth == k:
                return assign
            nxt[depth] = 0
        else:
            depth -= 1
            if depth >= 0:
                used[assign[depth]] = False
                assign[depth] = -1
    return None
