"""Irrelevant-request machinery: sunflowers, isolation sets, robust vertices,
request-degree and cherry-terminal reductions, active edge sets.

The worst-case thresholds that guarantee an extraction exists are enormous,
so every routine here is opportunistic: it returns a certified answer when
its constructive search succeeds and ``None`` when it does not. A request is
only ever deleted on the strength of a returned answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from multicut.cuts import DEFAULT_MAX_K, enumerate_all_indivisible_left_cuts, enumerate_indivisible_left_cuts
from multicut.graph import GraphError, Instance, MultiGraph, component_of, is_connected_set


def robust_threshold(ell: int) -> int:
    """Size of K that guarantees a robust vertex: ``ell * 2**(ell!) + 1``."""
    return ell * 2 ** math.factorial(ell) + 1


def recursive_isolation_threshold(k: int, kp: int) -> int:
    """Size of K that guarantees the single-exponential extraction: ``kp ** (C(k+2, 2) - 1)``."""
    return kp ** (math.comb(k + 2, 2) - 1)


# --- sunflowers ------------------------------------------------------------------


@dataclass(frozen=True)
class Sunflower:
    core: frozenset
    petals: tuple

    def is_valid(self) -> bool:
        ps = self.petals
        return all(ps[i] & ps[j] == self.core for i in range(len(ps)) for j in range(i + 1, len(ps)))


def _set_order(s):
    return (len(s), sorted(s, key=repr))


def find_sunflower(family, r: int) -> Sunflower | None:
    """Greedy sunflower search with ``r`` petals.

    Take a maximal pairwise-disjoint subfamily; if it is too small, its union
    meets every set, so recurse on the sets through the most frequent element
    of that union. A ``None`` answer does not prove that no sunflower exists.
    """
    if r < 1:
        raise ValueError("r must be positive")
    sets = sorted({frozenset(s) for s in family}, key=_set_order)
    found = _sunflower(sets, r)
    if found is None:
        return None
    core, petals = found
    return Sunflower(core, tuple(petals))


def _sunflower(sets, r):
    if len(sets) < r:
        return None
    disjoint = []
    used = set()
    for s in sets:
        if not (s & used):
            disjoint.append(s)
            used |= s
            if len(disjoint) == r:
                return frozenset(), disjoint
    counts = {}
    for s in sets:
        for a in s & used:
            counts[a] = counts.get(a, 0) + 1
    if not counts:
        return None
    best = max(counts.values())
    for a in sorted((a for a, c in counts.items() if c == best), key=repr):
        sub = sorted((s - {a} for s in sets if a in s), key=_set_order)
        found = _sunflower(sub, r)
        if found is not None:
            core, petals = found
            return core | {a}, [p | {a} for p in petals]
    return None


# --- isolation sets ------------------------------------------------------------------


def _isolated(cut, members):
    """Elements of ``members`` outside the cut."""
    return members - cut.members


def extract_isolation_set(
    g: MultiGraph, x: int, K, k: int, kp: int, method: str = "recursive", max_k: int = DEFAULT_MAX_K
):
    """Subset ``K'`` of ``K`` with ``|K'| = kp`` that every left cut of border at
    most ``k`` either fully avoids or isolates in at most ``k`` elements.

    ``method`` is ``"recursive"`` (induction on ``k``) or ``"sunflower"``
    (a sunflower over the per-vertex cut families). Returns a frozenset or
    ``None`` when the search is unavailable.
    """
    K = frozenset(K) - {x}
    if kp < 0:
        raise ValueError("kp must be non-negative")
    if len(K) < kp:
        return None
    if kp <= k:
        return frozenset(sorted(K)[:kp])
    # left cuts stay inside the root's component and isolate everything else
    side = component_of(g, x)
    far = sorted(K - side)
    if len(far) >= kp:
        return frozenset(far[:kp])
    K = K & side
    if len(K) < kp:
        return None
    g = g.subgraph(side)
    if method == "recursive":
        found = _recursive_isolation(g, x, K, k, kp, max_k)
    elif method == "sunflower":
        found = _sunflower_isolation(g, x, K, k, kp, max_k)
    else:
        raise ValueError(f"unknown extraction method {method!r}")
    return found


def _recursive_isolation(g, x, K, k, kp, max_k):
    if len(K) < kp:
        return None
    if kp <= k:
        return frozenset(sorted(K)[:kp])
    if k == 0:
        # only the component of x has border 0
        side = component_of(g, x)
        inside = sorted(K & side)
        out = sorted(K - side)
        pick = inside if len(inside) >= kp else out
        return frozenset(pick[:kp]) if len(pick) >= kp else None
    cuts = list(enumerate_all_indivisible_left_cuts(g, x, K, k, max_k).values())
    if k == 1:
        # complements of left cuts with border 1 are pairwise disjoint
        classes = []
        covered = set()
        for c in cuts:
            cls = sorted(_isolated(c, K))
            if cls:
                classes.append(cls)
                covered.update(cls)
        never = sorted(K - covered)
        if never:
            classes.append(never)
        classes.sort(key=lambda c: (-len(c), c))
        if classes and len(classes[0]) >= kp:
            return frozenset(classes[0][:kp])
        if len(classes) >= kp:
            return frozenset(c[0] for c in classes[:kp])
        return None
    threshold = recursive_isolation_threshold(k - 1, kp)
    ranked = sorted(cuts, key=lambda c: (-len(_isolated(c, K)), c.size, c.key()))
    # first case: a cut leaves a large part of K outside; recurse there with k - 1
    for c in ranked:
        rest = _isolated(c, K)
        if len(rest) < kp:
            break
        if len(rest) >= threshold or c is ranked[0]:
            found = _recursive_isolation(g, x, frozenset(rest), k - 1, kp, max_k)
            if found is not None:
                return found
    # second case: a stable set in the "separated together" graph
    return _stable_isolation(K, cuts, kp)


def _stable_isolation(K, cuts, kp):
    conflict = {v: set() for v in K}
    for c in cuts:
        out = sorted(_isolated(c, K))
        for i, a in enumerate(out):
            for b in out[i + 1:]:
                conflict[a].add(b)
                conflict[b].add(a)
    chosen = []
    blocked = set()
    for v in sorted(K, key=lambda v: (len(conflict[v]), v)):
        if v not in blocked:
            chosen.append(v)
            blocked |= conflict[v] | {v}
            if len(chosen) == kp:
                return frozenset(chosen)
    return None


def _sunflower_isolation(g, x, K, k, kp, max_k):
    families = {}
    for y in sorted(K):
        fam = enumerate_indivisible_left_cuts(g, x, y, k, max_k)
        families.setdefault(frozenset(fam.keys()), []).append(y)
    for fam, ys in sorted(families.items(), key=lambda kv: (-len(kv[1]), kv[1])):
        if len(ys) >= kp:
            return frozenset(ys[:kp])
    flower = find_sunflower(list(families), kp)
    if flower is None:
        return None
    return frozenset(families[p][0] for p in flower.petals)


# --- robust vertices ------------------------------------------------------------------


def extract_robust_vertex(g: MultiGraph, x: int, K, ell: int, max_k: int = DEFAULT_MAX_K):
    """A vertex ``y`` of ``K`` that stays cut from ``x`` whenever at most ``ell``
    is spent on deleted edges plus elements of ``K`` left with ``x``.

    A fresh vertex ``z`` is joined to every element of ``K``; the indivisible
    left z-x cuts of border at most ``ell`` split ``K`` into signature classes,
    and any class of size ``ell + 1`` is homogeneous for all those cuts.
    Returns ``None`` when no class is large enough.
    """
    K = sorted(set(K) - {x})
    if not K:
        raise GraphError("extract_robust_vertex needs a nonempty K")
    # vertices outside x's component can be absorbed into a cut for free
    side = component_of(g, x)
    K = [v for v in K if v in side]
    if len(K) < ell + 1:
        return None
    z = g.fresh_vertex()
    h, _ = g.with_vertex(z).with_edges((z, v) for v in K)
    fam = enumerate_indivisible_left_cuts(h, z, x, ell, max_k)
    classes = {}
    for v in K:
        sig = tuple(v in c.members for c in fam.cuts)
        classes.setdefault(sig, []).append(v)
    best = max(classes.values(), key=lambda vs: (len(vs), [-v for v in vs]))
    if len(best) < ell + 1:
        return None
    return best[0]


# --- request-degree reduction ------------------------------------------------------------


def reduce_request_degree(inst: Instance, threshold: int | None = None, max_k: int = DEFAULT_MAX_K):
    """Delete requests certified irrelevant at terminals of high request degree.

    A request ``xy`` goes when ``y`` is robust for ``x``'s partner set with
    ``ell = k + 1``: then any multicut of the remaining requests already
    separates ``x`` from ``y``. Returns the reduced instance.
    """
    k = inst.budget
    if threshold is None:
        threshold = 4 * k
    if k + 1 > max_k:
        return inst
    stalled = set()
    while True:
        over = sorted(
            (t for t in inst.terminals() if inst.request_degree(t) > threshold and t not in stalled),
            key=lambda t: (-inst.request_degree(t), t),
        )
        if not over:
            return inst
        x = over[0]
        y = extract_robust_vertex(inst.graph, x, inst.partners(x), k + 1, max_k)
        if y is None:
            stalled.add(x)
            continue
        inst = inst.replace(requests=inst.requests - {(min(x, y), max(x, y))})
        stalled.clear()


# --- cherries ------------------------------------------------------------------------------


@dataclass(frozen=True)
class Cherry:
    attachment: int
    body: frozenset

    @property
    def inner(self) -> frozenset:
        return self.body - {self.attachment}


def is_cherry(inst: Instance, c: Cherry) -> bool:
    g = inst.graph
    x = c.attachment
    if x not in c.body or not c.body <= g.vertices or not is_connected_set(g, c.body):
        return False
    inner = c.inner
    for a, b in g.edges.values():
        if (a in inner and b not in c.body) or (b in inner and a not in c.body):
            return False
    return not any(u in inner and v in inner for u, v in inst.requests)


def cherry_graph(g: MultiGraph, c: Cherry) -> MultiGraph:
    return g.subgraph(c.body)


def cherry_terminals(inst: Instance, c: Cherry) -> frozenset:
    inner = c.inner
    return frozenset(v for v in inst.terminals() if v in inner)


class CherryReduction(NamedTuple):
    instance: Instance
    terminals: frozenset
    removed: tuple


def _greedy_matching(inst, inner, x):
    matched_in, matched_out, pairs = set(), set(), []
    for u, v in sorted(inst.requests):
        a, b = (u, v) if u in inner else (v, u)
        if a not in inner or b in inner or b == x:
            continue
        if a not in matched_in and b not in matched_out:
            matched_in.add(a)
            matched_out.add(b)
            pairs.append((a, b))
    return pairs


def reduce_cherry_terminals(
    inst: Instance, c: Cherry, method: str = "recursive", max_k: int = DEFAULT_MAX_K
) -> CherryReduction:
    """Delete requests of the cherry's terminals that are irrelevant for solutions
    whose restriction to the cherry is the border of a left cut.

    Each round matches inner terminals to distinct outside partners, extracts
    an isolation set among the matched inner terminals, then a vertex robust
    for ``ell = 2k + 1`` among their partners outside the cherry. The matched
    request of that vertex is irrelevant. Stops when extraction is unavailable.
    """
    if not is_cherry(inst, c):
        raise GraphError("not a cherry of the instance")
    k = inst.budget
    x = c.attachment
    inner = c.inner
    removed = []
    ell = 2 * k + 1
    if ell > max_k:
        return CherryReduction(inst, cherry_terminals(inst, c), ())
    cg = cherry_graph(inst.graph, c)
    outside = inst.graph.remove_vertices(inner)
    while True:
        matching = _greedy_matching(inst, inner, x)
        if len(matching) < ell + 1:
            break
        partner = dict(matching)
        K = frozenset(partner)
        hit = None
        for kp in range(len(K), ell, -1):
            kprime = extract_isolation_set(cg, x, K, k, kp, method, max_k)
            if kprime is None:
                continue
            outer = {partner[v] for v in kprime}
            y = extract_robust_vertex(outside, x, outer, ell, max_k)
            if y is not None:
                z = next(v for v in sorted(kprime) if partner[v] == y)
                hit = (min(z, y), max(z, y))
                break
        if hit is None:
            break
        inst = inst.replace(requests=inst.requests - {hit})
        removed.append(hit)
    return CherryReduction(inst, cherry_terminals(inst, c), tuple(removed))


# --- active sets ------------------------------------------------------------------------------


@dataclass(frozen=True)
class ActiveSet:
    cherry: Cherry
    edges: frozenset
    budget: int
    terminals: frozenset = frozenset()

    def bound(self) -> int:
        return self.budget * len(self.terminals) * math.factorial(self.budget)


def active_set(g: MultiGraph, c: Cherry, K, k: int, max_k: int = DEFAULT_MAX_K) -> ActiveSet:
    """Union of the borders of all indivisible left cuts (rooted at the
    attachment, border at most ``k``) that avoid some terminal in ``K``."""
    K = frozenset(K)
    if not K <= c.inner:
        raise GraphError("terminals must lie inside the cherry")
    edges = set()
    if K and k > 0:
        cg = cherry_graph(g, c)
        for y in sorted(K):
            fam = enumerate_indivisible_left_cuts(cg, c.attachment, y, k, max_k)
            edges |= fam.borders()
    out = ActiveSet(c, frozenset(edges), k, K)
    assert len(out.edges) <= out.bound(), "active set exceeds k|K|k!"
    return out


def nested_active_sets(inst: Instance, chain, method: str = "recursive", max_k: int = DEFAULT_MAX_K) -> list:
    """Active sets for nested cherries ``U_1 <= U_2 <= ...`` sharing an attachment.

    Terminal sets are threaded: the cherry reduction of ``U_{i+1}`` runs on
    the instance already reduced for ``U_i``, so its surviving terminals lie
    in ``K_i`` plus the new part. Returns a list of ActiveSet.
    """
    chain = list(chain)
    if not chain:
        return []
    x = chain[0].attachment
    for a, b in zip(chain, chain[1:]):
        if b.attachment != x or not a.body <= b.body:
            raise GraphError("cherry chain is not nested")
    out = []
    for c in chain:
        red = reduce_cherry_terminals(inst, c, method, max_k)
        inst = red.instance
        out.append(active_set(inst.graph, c, red.terminals, inst.budget, max_k))
    return out
