"""Standard diagrams: circle, theta, and the ellipse family with two hairs.

Cyclic orders follow a planar drawing, counter-clockwise at every vertex.
For the ellipse family the top vertices ``t_1..t_n`` are ``0..n-1``,
bottom vertices ``b_1..b_n`` are ``n..2n-1``; at a top vertex the slots
are (right, left, down), at a bottom vertex (right, up, left).  Rungs
join ``t_i`` and ``b_i`` for ``i < n``; the hairs hang inward from
``t_n`` and ``b_n`` on the right-hand arc.
"""

from __future__ import annotations

from .diagram import Diagram, DiagramError, join_hairs
from .laurent import ONE, LaurentPoly

__all__ = ["circle", "theta", "ellipse_generator", "joined_generator", "ellipse_edges"]


def circle(bead: LaurentPoly = ONE) -> Diagram:
    return Diagram(0, 0, (), (bead,))


def theta(beads=(ONE, ONE, ONE)) -> Diagram:
    """Planar theta graph (sl2 value +6)."""
    b0, b1, b2 = beads
    return Diagram(2, 0, (((0, 0), (1, 0), b0), ((0, 1), (1, 2), b1), ((0, 2), (1, 1), b2)))


def ellipse_edges(n: int) -> dict[str, list[int]]:
    """Edge indices of :func:`ellipse_generator` grouped by role.

    ``between_hairs`` is the edge ``t_n -- b_n`` joining the two stems.
    """
    arcs = list(range(0, 2 * n - 2)) + [2 * n - 2]
    return {
        "arc": arcs,
        "between_hairs": [2 * n - 1],
        "rung": list(range(2 * n, 3 * n - 1)),
        "hair": [3 * n - 1, 3 * n],
    }


def ellipse_generator(n: int) -> Diagram:
    """Ellipse with ``n - 1`` parallel rungs and two hairs on its right arc.

    Vassiliev degree ``n + 1``; joining the hairs gives ``n`` rungs.
    """
    if n < 1:
        raise DiagramError("ellipse generator needs n >= 1")

    def top(i):
        return i - 1

    def bot(i):
        return n + i - 1

    edges = []
    for i in range(2, n + 1):
        edges.append(((top(i - 1), 0), (top(i), 1), ONE))
    for i in range(2, n + 1):
        edges.append(((bot(i - 1), 0), (bot(i), 2), ONE))
    edges.append(((top(1), 1), (bot(1), 2), ONE))
    edges.append(((top(n), 0), (bot(n), 0), ONE))
    for i in range(1, n):
        edges.append(((top(i), 2), (bot(i), 1), ONE))
    edges.append(((top(n), 2), (2 * n, 0), ONE))
    edges.append(((bot(n), 1), (2 * n + 1, 0), ONE))
    return Diagram(2 * n, 2, tuple(edges))


def joined_generator(n: int) -> Diagram:
    """Closed ellipse with ``n`` parallel rungs."""
    return join_hairs(ellipse_generator(n))
