"""Integer-table kernels for the hot loops.

Every kernel exists twice: a numba ``@njit`` version and a plain numpy
version with the same signature. The numba path is used when numba imports
and ``JEPTREES_NO_NUMBA`` is unset or ``0``. Both paths are exported under
explicit names (``*_numba`` / ``*_py``) so tests and the benchmark can
compare them directly.

Automata are passed as ``delta`` (int64, shape ``(n_states, n_symbols)``),
``start`` (int) and ``accept`` (bool, shape ``(n_states,)``).
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("JEPTREES_NO_NUMBA", "0") in ("", "0")


# ---------------------------------------------------------------------------
# pure numpy / python versions
# ---------------------------------------------------------------------------

def triple_product_search_py(d1, s1, a1, d2, s2, a2, d3, s3, a3):
    """BFS over the product of three DFAs.

    Returns ``(hit, parent, symbol)``: ``hit`` is the flat index of the first
    accepting product state in BFS order (-1 if none); ``parent``/``symbol``
    reconstruct the path. Symbols are expanded in increasing order so the
    path to ``hit`` is the shortlex-least accepted string.
    """
    n1, k = d1.shape
    n2 = d2.shape[0]
    n3 = d3.shape[0]
    total = n1 * n2 * n3
    parent = np.full(total, -1, dtype=np.int64)
    symbol = np.full(total, -1, dtype=np.int64)
    seen = np.zeros(total, dtype=np.bool_)
    queue = np.empty(total, dtype=np.int64)
    root = (s1 * n2 + s2) * n3 + s3
    seen[root] = True
    queue[0] = root
    head, tail = 0, 1
    if a1[s1] and a2[s2] and a3[s3]:
        return root, parent, symbol
    while head < tail:
        cur = queue[head]
        head += 1
        p1 = cur // (n2 * n3)
        p2 = (cur // n3) % n2
        p3 = cur % n3
        for c in range(k):
            q1 = d1[p1, c]
            q2 = d2[p2, c]
            q3 = d3[p3, c]
            nxt = (q1 * n2 + q2) * n3 + q3
            if seen[nxt]:
                continue
            seen[nxt] = True
            parent[nxt] = cur
            symbol[nxt] = c
            if a1[q1] and a2[q2] and a3[q3]:
                return nxt, parent, symbol
            queue[tail] = nxt
            tail += 1
    return -1, parent, symbol


def tarjan_scc_py(indptr, indices):
    """Strongly connected components of a CSR digraph (iterative Tarjan).

    Returns ``comp`` with components numbered in reverse topological order
    of the condensation (sinks first), as Tarjan emits them.
    """
    n = indptr.shape[0] - 1
    index = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    onstack = np.zeros(n, dtype=np.bool_)
    comp = np.full(n, -1, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    call_v = np.empty(n, dtype=np.int64)
    call_i = np.empty(n, dtype=np.int64)
    sp = 0
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        depth = 0
        call_v[0] = root
        call_i[0] = indptr[root]
        index[root] = counter
        low[root] = counter
        counter += 1
        stack[sp] = root
        sp += 1
        onstack[root] = True
        while depth >= 0:
            v = call_v[depth]
            i = call_i[depth]
            if i < indptr[v + 1]:
                call_i[depth] = i + 1
                w = indices[i]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = True
                    depth += 1
                    call_v[depth] = w
                    call_i[depth] = indptr[w]
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                depth -= 1
                if depth >= 0:
                    u = call_v[depth]
                    if low[v] < low[u]:
                        low[u] = low[v]
    return comp


def subsequence_matrix_py(xs, xlens, zs, zlens):
    """``out[i, j]`` is True iff string ``i`` of ``xs`` is a subsequence of string ``j`` of ``zs``."""
    out = np.zeros((xs.shape[0], zs.shape[0]), dtype=np.bool_)
    for i in range(xs.shape[0]):
        lx = xlens[i]
        for j in range(zs.shape[0]):
            lz = zlens[j]
            if lx > lz:
                continue
            p = 0
            for q in range(lz):
                if p < lx and xs[i, p] == zs[j, q]:
                    p += 1
            out[i, j] = p == lx
    return out


def dfa_run_batch_py(delta, start, codes, lens):
    """Final state of ``delta`` on each row of ``codes`` (rows padded; ``lens`` gives lengths)."""
    out = np.empty(codes.shape[0], dtype=np.int64)
    for r in range(codes.shape[0]):
        s = start
        for c in range(lens[r]):
            s = delta[s, codes[r, c]]
        out[r] = s
    return out


# ---------------------------------------------------------------------------
# numba versions: same source, compiled
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    triple_product_search_numba = njit(cache=True)(triple_product_search_py)
    tarjan_scc_numba = njit(cache=True)(tarjan_scc_py)
    subsequence_matrix_numba = njit(cache=True)(subsequence_matrix_py)
    dfa_run_batch_numba = njit(cache=True)(dfa_run_batch_py)
else:  # pragma: no cover
    triple_product_search_numba = triple_product_search_py
    tarjan_scc_numba = tarjan_scc_py
    subsequence_matrix_numba = subsequence_matrix_py
    dfa_run_batch_numba = dfa_run_batch_py

if USE_NUMBA:
    triple_product_search = triple_product_search_numba
    tarjan_scc = tarjan_scc_numba
    subsequence_matrix = subsequence_matrix_numba
    dfa_run_batch = dfa_run_batch_numba
else:
    triple_product_search = triple_product_search_py
    tarjan_scc = tarjan_scc_py
    subsequence_matrix = subsequence_matrix_py
    dfa_run_batch = dfa_run_batch_py


def scc(n, edges):
    """SCC ids for a digraph given as an edge list over ``range(n)``."""
    if n == 0:
        return np.empty(0, dtype=np.int64)
    edges = sorted(set(edges))
    indptr = np.zeros(n + 1, dtype=np.int64)
    for u, _ in edges:
        indptr[u + 1] += 1
    np.cumsum(indptr, out=indptr)
    indices = np.array([v for _, v in edges], dtype=np.int64)
    if indices.size == 0:
        indices = np.empty(0, dtype=np.int64)
    return tarjan_scc(indptr, indices)
