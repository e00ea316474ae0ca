"""Pure-Python hot kernels. ``_kernels.pyx`` mirrors these signatures exactly.

Vertices are dense indices ``0..n-1``; edges are parallel endpoint arrays.
"""

from collections import deque
from itertools import combinations


def unit_max_flow(n, us, vs, s, t, limit=-1):
    """Unit-capacity max flow on an undirected multigraph.

    Returns ``(value, flow, reach)``: ``flow[e]`` is +1 when edge ``e`` carries
    flow from ``us[e]`` to ``vs[e]``, -1 for the reverse direction and 0 when
    unused; ``reach[v]`` marks the vertices reachable from ``s`` in the final
    residual graph. With ``limit >= 0`` augmentation stops once the value
    reaches ``limit`` (``reach`` is then not a min-cut side).
    """
    m = len(us)
    adj = [[] for _ in range(n)]
    for e in range(m):
        adj[us[e]].append(e)
        adj[vs[e]].append(e)
    flow = [0] * m
    value = 0
    while limit < 0 or value < limit:
        parent = [-1] * n
        parent[s] = m  # sentinel, never a real edge index
        queue = deque([s])
        found = False
        while queue and not found:
            a = queue.popleft()
            for e in adj[a]:
                if us[e] == a:
                    b, residual = vs[e], 1 - flow[e]
                else:
                    b, residual = us[e], 1 + flow[e]
                if residual > 0 and parent[b] == -1:
                    parent[b] = e
                    if b == t:
                        found = True
                        break
                    queue.append(b)
        if not found:
            break
        b = t
        while b != s:
            e = parent[b]
            if vs[e] == b:
                flow[e] += 1
                b = us[e]
            else:
                flow[e] -= 1
                b = vs[e]
        value += 1
    reach = [False] * n
    reach[s] = True
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for e in adj[a]:
            if us[e] == a:
                b, residual = vs[e], 1 - flow[e]
            else:
                b, residual = us[e], 1 + flow[e]
            if residual > 0 and not reach[b]:
                reach[b] = True
                queue.append(b)
    return value, flow, reach


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def first_multicut(n, us, vs, candidates, pairs, triples, groups, kmin, kmax, limit=-1):
    """Smallest subset of ``candidates`` (sizes ``kmin..kmax``) meeting every constraint.

    ``pairs`` are (a, b) vertex pairs that must end up disconnected,
    ``triples`` are (u, y, v) with u and v not both connected to y, and
    ``groups`` are (edge indices, lo, hi) bounds on how many chosen edges fall
    in each group. Subsets are tried by size, then lexicographically.

    Returns ``(chosen, examined, exhausted)``; ``chosen`` is a tuple of edge
    indices or None, ``exhausted`` is True when ``limit`` subsets were examined
    without an answer.
    """
    m = len(us)
    examined = 0
    removed = [False] * m
    for size in range(kmin, kmax + 1):
        if size > len(candidates):
            break
        for combo in combinations(candidates, size):
            if 0 <= limit <= examined:
                return None, examined, True
            examined += 1
            for e in combo:
                removed[e] = True
            ok = True
            for members, lo, hi in groups:
                c = 0
                for e in members:
                    if removed[e]:
                        c += 1
                if c < lo or c > hi:
                    ok = False
                    break
            if ok:
                parent = list(range(n))
                for e in range(m):
                    if not removed[e]:
                        ra, rb = _find(parent, us[e]), _find(parent, vs[e])
                        if ra != rb:
                            parent[ra] = rb
                for a, b in pairs:
                    if _find(parent, a) == _find(parent, b):
                        ok = False
                        break
                if ok:
                    for u, y, v in triples:
                        ry = _find(parent, y)
                        if _find(parent, u) == ry and _find(parent, v) == ry:
                            ok = False
                            break
            for e in combo:
                removed[e] = False
            if ok:
                return tuple(combo), examined, False
    return None, examined, False
