"""Compiled inner loops over CSR adjacency (``indptr``, ``indices``)."""
import numpy as np
from numba import njit


@njit(cache=True)
def components_ok(indptr, indices, n, removed):
    """True when the nodes not in ``removed`` induce a connected graph."""
    root = -1
    remaining = 0
    for v in range(n):
        if not removed[v]:
            remaining += 1
            if root < 0:
                root = v
    if remaining <= 1:
        return True
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    stack[0] = root
    seen[root] = True
    sp = 1
    count = 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if not removed[w] and not seen[w]:
                seen[w] = True
                count += 1
                stack[sp] = w
                sp += 1
    return count == remaining


@njit(cache=True)
def articulation(indptr, indices, n, removed):
    """Cut vertex of the graph induced by non-removed nodes.

    Returns -2 if that graph is disconnected, -1 if it is connected with no
    cut vertex, otherwise one cut vertex.
    """
    root = -1
    remaining = 0
    for v in range(n):
        if not removed[v]:
            remaining += 1
            if root < 0:
                root = v
    if remaining <= 1:
        return -1
    disc = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    parent = np.full(n, -1, np.int64)
    it = indptr[:-1].copy()
    stack = np.empty(n, np.int64)
    stack[0] = root
    sp = 1
    disc[root] = 0
    low[root] = 0
    t = 1
    root_children = 0
    while sp > 0:
        v = stack[sp - 1]
        if it[v] < indptr[v + 1]:
            w = indices[it[v]]
            it[v] += 1
            if removed[w]:
                continue
            if disc[w] < 0:
                parent[w] = v
                disc[w] = t
                low[w] = t
                t += 1
                stack[sp] = w
                sp += 1
                if v == root:
                    root_children += 1
            elif w != parent[v] and disc[w] < low[v]:
                low[v] = disc[w]
        else:
            sp -= 1
            p = parent[v]
            if p >= 0:
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != root and low[v] >= disc[p]:
                    return p
    if t < remaining:
        return -2
    if root_children > 1:
        return root
    return -1


@njit(cache=True)
def build_split(indptr, indices, n):
    """Node-split residual network for unit vertex capacities.

    Node ``v`` becomes ``in=2v`` and ``out=2v+1`` joined by a unit arc; each
    adjacency ``u->v`` becomes ``out(u)->in(v)``.  Arc ``a`` and ``a^1`` are
    residual twins.
    """
    m2 = indptr[n]
    A = 2 * n + 2 * m2
    head = np.empty(A, np.int64)
    tail = np.empty(A, np.int64)
    cap0 = np.zeros(A, np.int32)
    for v in range(n):
        a = 2 * v
        tail[a] = 2 * v
        head[a] = 2 * v + 1
        cap0[a] = 1
        tail[a + 1] = 2 * v + 1
        head[a + 1] = 2 * v
    for u in range(n):
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            a = 2 * n + 2 * e
            tail[a] = 2 * u + 1
            head[a] = 2 * v
            cap0[a] = 1
            tail[a + 1] = 2 * v
            head[a + 1] = 2 * u + 1
    N = 2 * n
    sptr = np.zeros(N + 1, np.int64)
    for a in range(A):
        sptr[tail[a] + 1] += 1
    for i in range(N):
        sptr[i + 1] += sptr[i]
    fill = sptr[:-1].copy()
    sarc = np.empty(A, np.int64)
    for a in range(A):
        sarc[fill[tail[a]]] = a
        fill[tail[a]] += 1
    return sptr, sarc, head, cap0


@njit(cache=True)
def local_flow(sptr, sarc, head, cap0, n, s, t, limit, reach):
    """Number of internally disjoint s-t paths, counting at most ``limit``.

    When the result is below ``limit``, ``reach`` holds the residual-reachable
    split nodes of the final (failed) search, from which a minimum vertex
    separator can be read off.
    """
    cap = cap0.copy()
    N = 2 * n
    src = 2 * s + 1
    snk = 2 * t
    pa = np.empty(N, np.int64)
    queue = np.empty(N, np.int64)
    flow = 0
    while flow < limit:
        for i in range(N):
            reach[i] = False
        reach[src] = True
        queue[0] = src
        qh = 0
        qt = 1
        found = False
        while qh < qt and not found:
            x = queue[qh]
            qh += 1
            for j in range(sptr[x], sptr[x + 1]):
                a = sarc[j]
                y = head[a]
                if cap[a] > 0 and not reach[y]:
                    reach[y] = True
                    pa[y] = a
                    if y == snk:
                        found = True
                        break
                    queue[qt] = y
                    qt += 1
        if not found:
            break
        y = snk
        while y != src:
            a = pa[y]
            cap[a] -= 1
            cap[a ^ 1] += 1
            y = head[a ^ 1]
        flow += 1
    return flow


@njit(cache=True)
def kappa_search(indptr, indices, n, v, limit):
    """Minimum local connectivity over the pairs that determine vertex connectivity.

    Uses a fixed node ``v``: pairs ``(v, u)`` for non-neighbours ``u`` and
    non-adjacent pairs inside ``N(v)``.  Each flow stops at the current best,
    so with ``limit = k`` this decides ``kappa >= k``.  Returns
    ``(value, s, t)`` with the minimising pair, or ``(limit, -1, -1)`` if no
    pair falls below ``limit``.
    """
    sptr, sarc, head, cap0 = build_split(indptr, indices, n)
    adj_v = np.zeros(n, np.bool_)
    for e in range(indptr[v], indptr[v + 1]):
        adj_v[indices[e]] = True
    reach = np.zeros(2 * n, np.bool_)
    best = limit
    bs = -1
    bt = -1
    for u in range(n):
        if u == v or adj_v[u]:
            continue
        f = local_flow(sptr, sarc, head, cap0, n, v, u, best, reach)
        if f < best:
            best = f
            bs = v
            bt = u
            if best == 0:
                return best, bs, bt
    mark = np.zeros(n, np.bool_)
    for e1 in range(indptr[v], indptr[v + 1]):
        x = indices[e1]
        for e in range(indptr[x], indptr[x + 1]):
            mark[indices[e]] = True
        for e2 in range(e1 + 1, indptr[v + 1]):
            y = indices[e2]
            if mark[y]:
                continue
            f = local_flow(sptr, sarc, head, cap0, n, x, y, best, reach)
            if f < best:
                best = f
                bs = x
                bt = y
        for e in range(indptr[x], indptr[x + 1]):
            mark[indices[e]] = False
    return best, bs, bt


@njit(cache=True)
def min_cut_nodes(indptr, indices, n, s, t):
    """A minimum s-t vertex separator for non-adjacent ``s``, ``t``."""
    sptr, sarc, head, cap0 = build_split(indptr, indices, n)
    reach = np.zeros(2 * n, np.bool_)
    local_flow(sptr, sarc, head, cap0, n, s, t, n, reach)
    out = np.zeros(n, np.bool_)
    for v in range(n):
        if v != s and v != t and reach[2 * v] and not reach[2 * v + 1]:
            out[v] = True
    return out


@njit(cache=True)
def screen_search(indptr, indices, n, k, budget, max_size, seed, out_a, out_b):
    """Randomised search for two disjoint sets that violate k-robustness.

    A set is *bad* when every member has fewer than ``k`` neighbours outside
    it.  Each run grows a set greedily from a low-degree start, adding the
    frontier node that would keep the fewest outside neighbours.  Every bad
    prefix is paired with previously found bad sets and with its complement.
    On success the two sets are written to ``out_a``/``out_b`` as boolean
    masks and True is returned.
    """
    np.random.seed(seed)
    deg = np.empty(n, np.int64)
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
    w = np.empty(n)
    for v in range(n):
        w[v] = 1.0 / (1.0 + deg[v]) ** 3
    cdf = np.cumsum(w)
    total = cdf[-1]
    member = np.zeros(n, np.int64)
    incount = np.zeros(n, np.int64)
    touched = np.empty(n, np.int64)
    A = np.empty(max_size, np.int64)
    store_cap = 64
    stored = np.empty((store_cap, max_size), np.int64)
    stored_len = np.zeros(store_cap, np.int64)
    n_stored = 0
    for run in range(budget):
        stamp = run + 1
        r = np.random.random() * total
        start = np.searchsorted(cdf, r)
        if start >= n:
            start = n - 1
        size = 0
        n_touched = 0
        target = 1 + np.random.randint(max_size)
        x = start
        while True:
            A[size] = x
            size += 1
            member[x] = stamp
            for e in range(indptr[x], indptr[x + 1]):
                y = indices[e]
                if incount[y] == 0:
                    touched[n_touched] = y
                    n_touched += 1
                incount[y] += 1
            bad = True
            for i in range(size):
                if deg[A[i]] - incount[A[i]] >= k:
                    bad = False
                    break
            if bad:
                # complement as partner
                if size < n:
                    ok = True
                    for i in range(n_touched):
                        y = touched[i]
                        if member[y] != stamp and incount[y] >= k:
                            ok = False
                            break
                    if ok:
                        for v in range(n):
                            out_a[v] = member[v] == stamp
                            out_b[v] = member[v] != stamp
                        for i in range(n_touched):
                            incount[touched[i]] = 0
                        return True
                for j in range(min(n_stored, store_cap)):
                    disjoint = True
                    for i in range(stored_len[j]):
                        if member[stored[j, i]] == stamp:
                            disjoint = False
                            break
                    if disjoint:
                        for v in range(n):
                            out_a[v] = member[v] == stamp
                            out_b[v] = False
                        for i in range(stored_len[j]):
                            out_b[stored[j, i]] = True
                        for i in range(n_touched):
                            incount[touched[i]] = 0
                        return True
                slot = n_stored % store_cap
                for i in range(size):
                    stored[slot, i] = A[i]
                stored_len[slot] = size
                n_stored += 1
            if size >= target or size >= n:
                break
            best = -1
            best_score = 1 << 60
            for i in range(size):
                a = A[i]
                for e in range(indptr[a], indptr[a + 1]):
                    y = indices[e]
                    if member[y] == stamp:
                        continue
                    score = (deg[y] - 2 * incount[y]) * 4 + np.random.randint(4)
                    if score < best_score:
                        best_score = score
                        best = y
            if best < 0:
                break
            x = best
        for i in range(n_touched):
            incount[touched[i]] = 0
    return False


@njit(cache=True)
def sparse_certificate(indptr, indices, n, k):
    """Union of ``k`` successive BFS forests.

    BFS is a scan-first search, so the union preserves k-vertex-connectivity
    while keeping at most ``k(n-1)`` edges.  Returns a new CSR pair.
    """
    used = np.zeros(indptr[n], np.bool_)
    visited = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    for _ in range(k):
        visited[:] = False
        for root in range(n):
            if visited[root]:
                continue
            visited[root] = True
            queue[0] = root
            qh = 0
            qt = 1
            while qh < qt:
                x = queue[qh]
                qh += 1
                for e in range(indptr[x], indptr[x + 1]):
                    y = indices[e]
                    if used[e] or visited[y]:
                        continue
                    visited[y] = True
                    queue[qt] = y
                    qt += 1
                    used[e] = True
                    lo = indptr[y]
                    hi = indptr[y + 1]
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if indices[mid] < x:
                            lo = mid + 1
                        else:
                            hi = mid
                    used[lo] = True
    new_ptr = np.zeros(n + 1, np.int64)
    for x in range(n):
        c = 0
        for e in range(indptr[x], indptr[x + 1]):
            if used[e]:
                c += 1
        new_ptr[x + 1] = new_ptr[x] + c
    new_idx = np.empty(new_ptr[n], np.int64)
    j = 0
    for e in range(indptr[n]):
        if used[e]:
            new_idx[j] = indices[e]
            j += 1
    return new_ptr, new_idx


@njit(cache=True)
def separation_pair(indptr, indices, n):
    """Return ``(w, c)`` with ``{w, c}`` separating the graph, or ``(-1, -1)``.

    Assumes the graph is already 2-connected: for every ``w`` it looks for a
    cut vertex of ``G - w`` with one lowpoint DFS (buffers shared across ``w``).
    """
    ip = indptr.astype(np.int32)
    ix = indices.astype(np.int32)
    disc = np.empty(n, np.int32)
    low = np.empty(n, np.int32)
    parent = np.empty(n, np.int32)
    it = np.empty(n, np.int32)
    stack = np.empty(n, np.int32)
    for w in range(n):
        root = 1 if w == 0 else 0
        for v in range(n):
            disc[v] = -1
            it[v] = ip[v]
        disc[w] = -2
        stack[0] = root
        sp = 1
        disc[root] = 0
        low[root] = 0
        parent[root] = -1
        t = 1
        root_children = 0
        while sp > 0:
            v = stack[sp - 1]
            if it[v] < ip[v + 1]:
                x = ix[it[v]]
                it[v] += 1
                dx = disc[x]
                if dx == -2:
                    continue
                if dx < 0:
                    parent[x] = v
                    disc[x] = t
                    low[x] = t
                    t += 1
                    stack[sp] = x
                    sp += 1
                    if v == root:
                        root_children += 1
                elif x != parent[v] and dx < low[v]:
                    low[v] = dx
            else:
                sp -= 1
                p = parent[v]
                if p >= 0:
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != root and low[v] >= disc[p]:
                        return w, p
        if t < n - 1:
            # G - w disconnected: w alone is a cut vertex
            return w, -1
        if root_children > 1:
            return w, root
    return -1, -1
