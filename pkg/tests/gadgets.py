"""Hand-built instances used across the test suite."""

from __future__ import annotations

from multicut.graph import Instance


def _b(n, edges, reqs, k, halves=()):
    return Instance.build(n, edges, reqs, k, halves)


def path3(k=1):
    """x=1 - a=2 - y=3, request (x, y)."""
    return _b(3, [(1, 2), (2, 3)], [(1, 3)], k)


def star_triangle(k):
    """Center 1, leaves 2, 3, 4, requests between every pair of leaves."""
    return _b(4, [(1, 2), (1, 3), (1, 4)], [(2, 3), (2, 4), (3, 4)], k)


def theta(k, reqs=((1, 2),)):
    """Hubs 1, 2 joined through 3 and through 4."""
    return _b(4, [(1, 3), (3, 2), (1, 4), (4, 2)], reqs, k)


def theta_chord(k):
    return _b(4, [(1, 3), (3, 2), (1, 4), (4, 2), (3, 4)], [(1, 2)], k)


def chain22(k):
    """x=1 =2= a=2 - b=3 =2= y=4."""
    return _b(4, [(1, 2), (1, 2), (2, 3), (3, 4), (3, 4)], [(1, 4)], k)


def k4(k):
    edges = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    return _b(4, edges, [(1, 4), (2, 3)], k)


def cycle(n, reqs, k):
    return _b(n, [(i, i % n + 1) for i in range(1, n + 1)], reqs, k)


def three_attachment(k):
    """Two x-y paths plus a pendant path to z; requests force the attachments apart."""
    edges = [(1, 4), (4, 2), (1, 5), (5, 2), (4, 6), (6, 3)]
    return _b(6, edges, [(1, 2), (1, 3), (2, 3)], k)


def grid(k):
    """3x3 grid, corner-to-corner requests."""
    idx = lambda r, c: 3 * r + c + 1  # noqa: E731
    edges = []
    for r in range(3):
        for c in range(3):
            if c < 2:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r < 2:
                edges.append((idx(r, c), idx(r + 1, c)))
    return _b(9, edges, [(1, 9), (3, 7)], k)


def double_star(k):
    """Two centers joined by a double edge, three leaves each, cross requests."""
    edges = [(1, 2), (1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (2, 7), (2, 8)]
    return _b(8, edges, [(3, 6), (4, 7), (5, 8), (3, 4)], k)


def subdivided_theta(k):
    """Three subdivided paths between 1 and 2, requests between internal vertices."""
    edges = [(1, 3), (3, 4), (4, 2), (1, 5), (5, 6), (6, 2), (1, 7), (7, 8), (8, 2)]
    return _b(8, edges, [(3, 6), (5, 8), (4, 7), (1, 2)], k)


def cherry_fan(k):
    """Path cherry hanging at 1 with terminals requesting the far side."""
    edges = [(1, 2), (2, 3), (3, 4), (1, 5), (5, 6), (6, 7), (1, 7)]
    return _b(7, edges, [(3, 6), (4, 5), (2, 7)], k)


def ladder(k):
    edges = [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (1, 5), (2, 6), (3, 7), (4, 8)]
    return _b(8, edges, [(1, 8), (4, 5), (2, 7)], k)


def wheel(k):
    edges = [(1, v) for v in range(2, 7)] + [(v, v + 1) for v in range(2, 6)] + [(6, 2)]
    return _b(6, edges, [(2, 4), (3, 5), (4, 6)], k)


def separated(k=0):
    return _b(4, [(1, 2), (3, 4)], [(1, 3), (2, 4)], k)


def parallel_bundle(k):
    return _b(3, [(1, 2)] * 3 + [(2, 3)] * 2, [(1, 3)], k)


def halves_triangle(k):
    """Triangle with a half-request through vertex 1."""
    return _b(4, [(1, 2), (1, 3), (2, 4), (3, 4)], [], k, [(2, 1, 3)])


def gadget_corpus() -> list:
    """``(name, instance)`` for every gadget at every budget 0..4."""
    makers = {
        "path3": path3,
        "star_triangle": star_triangle,
        "theta": theta,
        "theta_chord": theta_chord,
        "chain22": chain22,
        "k4": k4,
        "cycle6": lambda k: cycle(6, [(1, 4), (2, 5)], k),
        "three_attachment": three_attachment,
        "grid": grid,
        "double_star": double_star,
        "subdivided_theta": subdivided_theta,
        "cherry_fan": cherry_fan,
        "ladder": ladder,
        "wheel": wheel,
        "separated": separated,
        "parallel_bundle": parallel_bundle,
        "halves_triangle": halves_triangle,
    }
    return [(f"{name}-k{k}", make(k)) for name, make in makers.items() for k in range(5)]
