# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_pykernels``; same signatures and results."""

from libc.stdlib cimport malloc, free


cdef int _find(int* parent, int a) noexcept nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def unit_max_flow(int n, us, vs, int s, int t, int limit=-1):
    cdef int m = len(us)
    cdef int i, e, a, b, head, tail, value = 0, residual
    cdef bint found
    cdef int* eu = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* ev = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* fl = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* deg = <int*> malloc((n + 1) * sizeof(int))
    cdef int* inc = <int*> malloc(max(2 * m, 1) * sizeof(int))
    cdef int* fill = <int*> malloc((n + 1) * sizeof(int))
    cdef int* parent = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* queue = <int*> malloc(max(n, 1) * sizeof(int))
    try:
        for i in range(n + 1):
            deg[i] = 0
        for e in range(m):
            eu[e] = us[e]
            ev[e] = vs[e]
            fl[e] = 0
            deg[eu[e] + 1] += 1
            deg[ev[e] + 1] += 1
        for i in range(n):
            deg[i + 1] += deg[i]
            fill[i] = deg[i]
        for e in range(m):
            inc[fill[eu[e]]] = e
            fill[eu[e]] += 1
            inc[fill[ev[e]]] = e
            fill[ev[e]] += 1
        while limit < 0 or value < limit:
            for i in range(n):
                parent[i] = -1
            parent[s] = m
            head = 0
            tail = 1
            queue[0] = s
            found = False
            while head < tail and not found:
                a = queue[head]
                head += 1
                for i in range(deg[a], deg[a + 1]):
                    e = inc[i]
                    if eu[e] == a:
                        b = ev[e]
                        residual = 1 - fl[e]
                    else:
                        b = eu[e]
                        residual = 1 + fl[e]
                    if residual > 0 and parent[b] == -1:
                        parent[b] = e
                        if b == t:
                            found = True
                            break
                        queue[tail] = b
                        tail += 1
            if not found:
                break
            b = t
            while b != s:
                e = parent[b]
                if ev[e] == b:
                    fl[e] += 1
                    b = eu[e]
                else:
                    fl[e] -= 1
                    b = ev[e]
            value += 1
        reach = [False] * n
        for i in range(n):
            parent[i] = 0
        parent[s] = 1
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            a = queue[head]
            head += 1
            for i in range(deg[a], deg[a + 1]):
                e = inc[i]
                if eu[e] == a:
                    b = ev[e]
                    residual = 1 - fl[e]
                else:
                    b = eu[e]
                    residual = 1 + fl[e]
                if residual > 0 and parent[b] == 0:
                    parent[b] = 1
                    queue[tail] = b
                    tail += 1
        for i in range(n):
            reach[i] = parent[i] == 1
        flow = [fl[e] for e in range(m)]
        return value, flow, reach
    finally:
        free(eu); free(ev); free(fl); free(deg); free(inc); free(fill); free(parent); free(queue)


def first_multicut(int n, us, vs, candidates, pairs, triples, groups, int kmin, int kmax, long long limit=-1):
    cdef int m = len(us)
    cdef int c = len(candidates)
    cdef int npairs = len(pairs)
    cdef int ntrip = len(triples)
    cdef int ngroups = len(groups)
    cdef int total_members = 0
    cdef int i, j, e, size, cnt, ra, rb, ry
    cdef long long examined = 0
    cdef bint ok, more
    for members, lo, hi in groups:
        total_members += len(members)
    cdef int* eu = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* ev = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* cand = <int*> malloc(max(c, 1) * sizeof(int))
    cdef int* pa = <int*> malloc(max(npairs, 1) * sizeof(int))
    cdef int* pb = <int*> malloc(max(npairs, 1) * sizeof(int))
    cdef int* tu = <int*> malloc(max(ntrip, 1) * sizeof(int))
    cdef int* ty = <int*> malloc(max(ntrip, 1) * sizeof(int))
    cdef int* tv = <int*> malloc(max(ntrip, 1) * sizeof(int))
    cdef int* gptr = <int*> malloc((ngroups + 1) * sizeof(int))
    cdef int* gidx = <int*> malloc(max(total_members, 1) * sizeof(int))
    cdef int* glo = <int*> malloc(max(ngroups, 1) * sizeof(int))
    cdef int* ghi = <int*> malloc(max(ngroups, 1) * sizeof(int))
    cdef char* removed = <char*> malloc(max(m, 1) * sizeof(char))
    cdef int* parent = <int*> malloc(max(n, 1) * sizeof(int))
    cdef int* idx = <int*> malloc((kmax + 1) * sizeof(int))
    try:
        for e in range(m):
            eu[e] = us[e]
            ev[e] = vs[e]
            removed[e] = 0
        for i in range(c):
            cand[i] = candidates[i]
        for i in range(npairs):
            pa[i] = pairs[i][0]
            pb[i] = pairs[i][1]
        for i in range(ntrip):
            tu[i] = triples[i][0]
            ty[i] = triples[i][1]
            tv[i] = triples[i][2]
        gptr[0] = 0
        for i in range(ngroups):
            members, lo, hi = groups[i]
            glo[i] = lo
            ghi[i] = hi
            gptr[i + 1] = gptr[i]
            for e in members:
                gidx[gptr[i + 1]] = e
                gptr[i + 1] += 1
        for size in range(kmin, kmax + 1):
            if size > c:
                break
            for i in range(size):
                idx[i] = i
            more = True
            while more:
                if 0 <= limit <= examined:
                    return None, examined, True
                examined += 1
                for i in range(size):
                    removed[cand[idx[i]]] = 1
                ok = True
                for i in range(ngroups):
                    cnt = 0
                    for j in range(gptr[i], gptr[i + 1]):
                        cnt += removed[gidx[j]]
                    if cnt < glo[i] or cnt > ghi[i]:
                        ok = False
                        break
                if ok:
                    for i in range(n):
                        parent[i] = i
                    for e in range(m):
                        if not removed[e]:
                            ra = _find(parent, eu[e])
                            rb = _find(parent, ev[e])
                            if ra != rb:
                                parent[ra] = rb
                    for i in range(npairs):
                        if _find(parent, pa[i]) == _find(parent, pb[i]):
                            ok = False
                            break
                    if ok:
                        for i in range(ntrip):
                            ry = _find(parent, ty[i])
                            if _find(parent, tu[i]) == ry and _find(parent, tv[i]) == ry:
                                ok = False
                                break
                for i in range(size):
                    removed[cand[idx[i]]] = 0
                if ok:
                    return tuple(cand[idx[i]] for i in range(size)), examined, False
                # next combination in lexicographic order
                i = size - 1
                while i >= 0 and idx[i] == c - size + i:
                    i -= 1
                if i < 0:
                    more = False
                else:
                    idx[i] += 1
                    for j in range(i + 1, size):
                        idx[j] = idx[j - 1] + 1
        return None, examined, False
    finally:
        free(eu); free(ev); free(cand); free(pa); free(pb); free(tu); free(ty); free(tv)
        free(gptr); free(gidx); free(glo); free(ghi); free(removed); free(parent); free(idx)
