"""Integer 2-SAT over ordered domains.

Variables ``c_i`` range over ``1..l_i``. Clauses are implications between
threshold literals (``c_i <= a`` or ``c_i >= a``). The order encoding uses a
boolean ``b_{i,a}`` meaning ``c_i >= a`` for ``a = 2..l_i`` plus the ladder
``b_{i,a} => b_{i,a-1}``, which keeps every clause binary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

LE = "<="
GE = ">="


class EncodingError(ValueError):
    pass


class Lit(NamedTuple):
    var: int
    op: str
    bound: int

    def holds(self, values) -> bool:
        v = values[self.var]
        return v <= self.bound if self.op == LE else v >= self.bound

    def negate(self) -> "Lit":
        if self.op == LE:
            return Lit(self.var, GE, self.bound + 1)
        return Lit(self.var, LE, self.bound - 1)


class Clause(NamedTuple):
    """``lhs => rhs``."""

    lhs: Lit
    rhs: Lit

    def holds(self, values) -> bool:
        return not self.lhs.holds(values) or self.rhs.holds(values)


@dataclass
class TwoSatProblem:
    domains: list  # l_i for each variable, all >= 1
    clauses: list = field(default_factory=list)

    def __post_init__(self):
        for i, d in enumerate(self.domains):
            if d < 1:
                raise EncodingError(f"variable {i} has empty domain")
        for c in self.clauses:
            for lit in c:
                if lit.op not in (LE, GE) or not 0 <= lit.var < len(self.domains):
                    raise EncodingError(f"bad literal {lit}")

    def add(self, lhs: Lit, rhs: Lit) -> None:
        self.clauses.append(Clause(lhs, rhs))

    def satisfied_by(self, values) -> bool:
        if len(values) != len(self.domains):
            return False
        if any(not 1 <= v <= d for v, d in zip(values, self.domains)):
            return False
        return all(c.holds(values) for c in self.clauses)


@dataclass
class BooleanForm:
    """Binary CNF over DIMACS-style literals (+v / -v, v >= 1)."""

    num_vars: int
    clauses: list  # tuples of 0, 1 or 2 literals; an empty tuple is a contradiction
    var_of: dict  # (i, a) -> boolean variable meaning c_i >= a
    domains: list

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(lit) for lit in c) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


TRUE = "T"
FALSE = "F"


def _ge_literal(var_of, domains, i, a):
    if a <= 1:
        return TRUE
    if a > domains[i]:
        return FALSE
    return var_of[(i, a)]


def _literal(var_of, domains, lit: Lit):
    if lit.op == GE:
        return _ge_literal(var_of, domains, lit.var, lit.bound)
    pos = _ge_literal(var_of, domains, lit.var, lit.bound + 1)
    return _neg(pos)


def _neg(lit):
    if lit == TRUE:
        return FALSE
    if lit == FALSE:
        return TRUE
    return -lit


def encode(p: TwoSatProblem) -> BooleanForm:
    var_of = {}
    nxt = 1
    for i, d in enumerate(p.domains):
        for a in range(2, d + 1):
            var_of[(i, a)] = nxt
            nxt += 1
    clauses = []
    for i, d in enumerate(p.domains):
        for a in range(3, d + 1):
            clauses.append((-var_of[(i, a)], var_of[(i, a - 1)]))
    for c in p.clauses:
        a = _neg(_literal(var_of, p.domains, c.lhs))
        b = _literal(var_of, p.domains, c.rhs)
        if a == TRUE or b == TRUE:
            continue
        lits = tuple(sorted({lit for lit in (a, b) if lit != FALSE}, key=lambda v: (abs(v), v)))
        clauses.append(lits)
    return BooleanForm(nxt - 1, clauses, var_of, list(p.domains))


def _scc(num_nodes, succ):
    """Iterative Tarjan; component ids come out in reverse topological order."""
    index = [-1] * num_nodes
    low = [0] * num_nodes
    on_stack = [False] * num_nodes
    comp = [-1] * num_nodes
    stack = []
    counter = 0
    ncomp = 0
    for root in range(num_nodes):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
    return comp


def solve_cnf(num_vars: int, clauses) -> list | None:
    """Boolean model (index 1..num_vars, index 0 unused) or None if unsatisfiable."""

    def node(lit):
        return 2 * (abs(lit) - 1) + (1 if lit < 0 else 0)

    n = 2 * num_vars
    succ = [[] for _ in range(n)]
    for c in clauses:
        if len(c) == 0:
            return None
        a, b = (c[0], c[0]) if len(c) == 1 else c
        succ[node(-a)].append(node(b))
        succ[node(-b)].append(node(a))
    comp = _scc(n, succ)
    model = [False] * (num_vars + 1)
    for v in range(1, num_vars + 1):
        p, q = comp[2 * (v - 1)], comp[2 * (v - 1) + 1]
        if p == q:
            return None
        # Tarjan numbers sink components first; pick the literal nearer the sinks
        model[v] = p < q
    return model


def decode(f: BooleanForm, model) -> list:
    values = []
    for i, d in enumerate(f.domains):
        c = 1
        for a in range(2, d + 1):
            if model[f.var_of[(i, a)]]:
                c = a
        values.append(c)
    return values


def solve(f: BooleanForm) -> list | None:
    """Integer values ``c_i`` (index order) satisfying the form, or None."""
    model = solve_cnf(f.num_vars, f.clauses)
    if model is None:
        return None
    return decode(f, model)


def solve_problem(p: TwoSatProblem) -> list | None:
    return solve(encode(p))


# --- subdivided endgame ----------------------------------------------------------------


def _reach(shape, v, w):
    """Literal for "v stays connected to branch vertex w" once each path loses one edge."""
    where = shape.locate(v)
    if where is None:
        raise EncodingError(f"vertex {v} is not on the shape")
    if where[0] == "branch":
        return v == w
    _, a, i = where
    p = shape.paths[a]
    # internal vertex i sits between edges i and i + 1
    if w == p.source:
        return Lit(a, GE, i + 1)
    if w == p.target:
        return Lit(a, LE, i)
    return False


def _forbid_both(p: TwoSatProblem, first, second) -> None:
    """Add ``not (first and second)``; literals may be python booleans."""
    if first is False or second is False:
        return
    if first is True and second is True:
        if not p.domains:
            raise EncodingError("contradictory constant clause")
        p.add(Lit(0, GE, 1), Lit(0, LE, 0))
    elif first is True:
        p.add(Lit(second.var, GE, 1), second.negate())
    elif second is True:
        p.add(Lit(first.var, GE, 1), first.negate())
    else:
        p.add(first, second.negate())


def encode_subdivided(shape, inst) -> TwoSatProblem:
    """One variable per shape path: ``c_a = r`` deletes the r-th edge from its source.

    Requests are cut when their endpoints end up attached to different
    branch vertices; half-requests ``(u, y, v)`` forbid u and v both staying
    attached to the branch vertex y.
    """
    p = TwoSatProblem([path.length for path in shape.paths])
    for u, v in sorted(inst.requests):
        lu, lv = shape.locate(u), shape.locate(v)
        if lu is None or lv is None:
            raise EncodingError(f"request ({u}, {v}) leaves the shape")
        if lu[0] == "path" and lv[0] == "path" and lu[1] == lv[1]:
            a = lu[1]
            i, j = sorted((lu[2], lv[2]))
            p.add(Lit(a, GE, 1), Lit(a, GE, i + 1))
            p.add(Lit(a, GE, 1), Lit(a, LE, j))
            continue
        anchors_u = {lu[1]} if lu[0] == "branch" else {shape.paths[lu[1]].source, shape.paths[lu[1]].target}
        anchors_v = {lv[1]} if lv[0] == "branch" else {shape.paths[lv[1]].source, shape.paths[lv[1]].target}
        for w in sorted(anchors_u & anchors_v):
            _forbid_both(p, _reach(shape, u, w), _reach(shape, v, w))
    for u, y, v in sorted(inst.half_requests):
        if y not in shape.branch_vertices:
            raise EncodingError(f"half-request via {y}, which is not a branch vertex")
        _forbid_both(p, _reach(shape, u, y), _reach(shape, v, y))
    return p


def decode_subdivided(shape, values) -> frozenset:
    """Edges deleted by an assignment of path positions."""
    return frozenset(path.edges[c - 1] for path, c in zip(shape.paths, values))
