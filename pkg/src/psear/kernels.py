"""Hot loops: triangle counting and the pure-multicomplex subset search.

Each kernel is written in the numba-compatible subset of Python. With JIT
enabled they are compiled by ``numba.njit``; with ``PSEAR_NO_JIT=1`` the
triangle count switches to a vectorised numpy formula and the search runs as
ordinary Python.
"""

import numpy as np

from ._jit import JIT_ENABLED, njit

FOUND = 0
REFUTED = 1
BUDGET_EXHAUSTED = 2


@njit(cache=True)
def _triangles_loop(adj):
    n = adj.shape[0]
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            if adj[i, j]:
                for k in range(j + 1, n):
                    if adj[i, k] and adj[j, k]:
                        total += 1
    return total


def _triangles_numpy(adj):
    a = adj.astype(np.int64)
    return int(np.einsum("ij,jk,ki->", a, a, a)) // 6


def count_triangles(adj):
    """Number of 3-cliques of the graph with 0/1 adjacency matrix ``adj``."""
    if adj.shape[0] < 3:
        return 0
    if JIT_ENABLED:
        return int(_triangles_loop(np.ascontiguousarray(adj, dtype=np.uint8)))
    return _triangles_numpy(adj)


@njit(cache=True)
def _apply(top, divisors, lower_deg, cnt, distinct, sign):
    for t in range(divisors.shape[1]):
        m = divisors[top, t]
        if m < 0:
            break
        if sign > 0:
            if cnt[m] == 0:
                distinct[lower_deg[m]] += 1
            cnt[m] += 1
        else:
            cnt[m] -= 1
            if cnt[m] == 0:
                distinct[lower_deg[m]] -= 1


@njit(cache=True)
def search_tops(divisors, lower_deg, targets, k, budget):
    """Depth-first search for ``k`` tops whose divisor closure hits ``targets``.

    ``divisors[t]`` lists (padded with -1) the indices of the lower-degree
    monomials dividing top ``t``; ``lower_deg[m]`` is the degree of lower
    monomial ``m``; ``targets[e]`` is the required count in degree ``e``.
    Subsets are visited in lexicographic order of top indices and a subtree
    is cut only when no completion can succeed, so the first subset found is
    the lexicographically first valid one.

    Returns ``(status, chosen, steps)``.
    """
    n_tops = divisors.shape[0]
    n_lower = lower_deg.shape[0]
    n_deg = targets.shape[0]
    chosen = np.full(k, -1, dtype=np.int64)
    cnt = np.zeros(max(n_lower, 1), dtype=np.int64)
    distinct = np.zeros(n_deg, dtype=np.int64)

    max_new = np.zeros(n_deg, dtype=np.int64)
    for t in range(n_tops):
        per = np.zeros(n_deg, dtype=np.int64)
        for s in range(divisors.shape[1]):
            m = divisors[t, s]
            if m < 0:
                break
            per[lower_deg[m]] += 1
        for e in range(n_deg):
            if per[e] > max_new[e]:
                max_new[e] = per[e]

    if k == 0:
        for e in range(1, n_deg):
            if targets[e] != 0:
                return REFUTED, chosen, 0
        return FOUND, chosen, 0
    if k > n_tops:
        return REFUTED, chosen, 0

    depth = 0
    nxt = 0
    steps = 0
    while True:
        if depth == k:
            ok = True
            for e in range(1, n_deg):
                if distinct[e] != targets[e]:
                    ok = False
                    break
            if ok:
                return FOUND, chosen, steps
            depth -= 1
            top = chosen[depth]
            _apply(top, divisors, lower_deg, cnt, distinct, -1)
            nxt = top + 1
            continue
        if nxt > n_tops - (k - depth):
            if depth == 0:
                return REFUTED, chosen, steps
            depth -= 1
            top = chosen[depth]
            _apply(top, divisors, lower_deg, cnt, distinct, -1)
            nxt = top + 1
            continue
        steps += 1
        if steps > budget:
            return BUDGET_EXHAUSTED, chosen, steps
        _apply(nxt, divisors, lower_deg, cnt, distinct, 1)
        remaining = k - depth - 1
        feasible = True
        for e in range(1, n_deg):
            if distinct[e] > targets[e] or distinct[e] + remaining * max_new[e] < targets[e]:
                feasible = False
                break
        if feasible:
            chosen[depth] = nxt
            depth += 1
            nxt += 1
        else:
            _apply(nxt, divisors, lower_deg, cnt, distinct, -1)
            nxt += 1
