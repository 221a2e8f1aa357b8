"""The sl2 weight system on closed trivalent diagrams.

Two local rules evaluate any closed diagram: a loop is worth
``loop_value`` (3 for sl2), and an internal edge ``e = (u, v)`` with
cyclic orders ``(e, a, b)`` at ``u`` and ``(e, c, d)`` at ``v`` expands as

    value(D) = value(a-d, b-c) - value(a-c, b-d)

where each term deletes ``u``, ``v`` and ``e`` and joins the loose ends as
indicated.  With this pairing the planar theta graph is worth +6.

Results are memoized on the signed canonical form; the memo is a plain
dict that callers may pass in and reuse.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Optional

from .diagram import (
    Diagram,
    DiagramError,
    DiagramSum,
    canonicalize,
    decode,
    has_tadpole,
    rewire,
    split_components,
)

__all__ = ["LOOP_VALUE", "sl2_eval", "sl2_eval_sum", "resolve_edge", "choose_edge"]

LOOP_VALUE = 3


def _check(d: Diagram) -> None:
    if d.n_uni:
        raise DiagramError("sl2_eval needs a closed diagram (no univalent vertices)")
    if not d.all_beads_one():
        raise DiagramError("sl2_eval needs all beads equal to 1")


def resolve_edge(d: Diagram, e: int) -> tuple[Diagram, Diagram]:
    """Return the (parallel, crossed) resolutions of edge ``e``."""
    (u, i), (v, j), _ = d.edges[e]
    if u == v:
        raise DiagramError("cannot resolve a tadpole edge")
    a, b = (u, (i + 1) % 3), (u, (i + 2) % 3)
    c, dd = (v, (j + 1) % 3), (v, (j + 2) % 3)
    parallel = rewire(d, (u, v), [(a, dd), (b, c)], discard=[e])
    crossed = rewire(d, (u, v), [(a, c), (b, dd)], discard=[e])
    return parallel, crossed


def choose_edge(d: Diagram) -> int:
    """Index of a non-loop edge lying on a shortest cycle."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(d.n_vertices)}
    for idx, (a, b, _) in enumerate(d.edges):
        adj[a[0]].append((b[0], idx))
        adj[b[0]].append((a[0], idx))
    best, best_len = None, None
    for idx, (a, b, _) in enumerate(d.edges):
        u, v = a[0], b[0]
        if u == v:
            continue
        dist = {u: 0}
        queue = deque([u])
        while queue and v not in dist:
            x = queue.popleft()
            for y, k in adj[x]:
                if k != idx and y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        length = dist[v] + 1 if v in dist else None
        if length is not None and (best_len is None or length < best_len):
            best, best_len = idx, length
            if length == 2:
                break
    if best is None:
        for idx, (a, b, _) in enumerate(d.edges):
            if a[0] != b[0]:
                return idx
        raise DiagramError("no resolvable edge")
    return best


def _eval(d: Diagram, memo: dict, loop_value: int) -> int:
    value = loop_value ** len(d.circles)
    if d.n_tri == 0:
        return value
    if has_tadpole(d):
        return 0
    core_diagram = Diagram(d.n_tri, 0, d.edges)
    parts = split_components(core_diagram)
    if len(parts) > 1:
        for p in parts:
            value *= _eval(p, memo, loop_value)
            if not value:
                return 0
        return value
    sc = canonicalize(core_diagram)
    if sc.sign == 0:
        return 0
    key = (loop_value, sc.encoding)
    core = memo.get(key)
    if core is None:
        rep = decode(sc.encoding)
        par, cro = resolve_edge(rep, choose_edge(rep))
        core = _eval(par, memo, loop_value) - _eval(cro, memo, loop_value)
        memo[key] = core
    return value * sc.sign * core


def sl2_eval(
    d: Diagram,
    *,
    loop_value: int = LOOP_VALUE,
    memo: Optional[dict] = None,
    first_edge: Optional[int] = None,
) -> int:
    """Exact sl2 weight of a closed diagram with trivial beads.

    ``first_edge`` forces the first resolution to use that edge of ``d``
    as given (no canonical relabelling first); later steps use the
    shortest-cycle heuristic.
    """
    _check(d)
    if memo is None:
        memo = {}
    if first_edge is None:
        return _eval(d, memo, loop_value)
    a, b, _ = d.edges[first_edge]
    if a[0] == b[0]:
        return 0  # tadpole
    par, cro = resolve_edge(d, first_edge)
    return _eval(par, memo, loop_value) - _eval(cro, memo, loop_value)


def sl2_eval_sum(
    s: DiagramSum, *, loop_value: int = LOOP_VALUE, memo: Optional[dict] = None
) -> Fraction:
    if memo is None:
        memo = {}
    total = Fraction(0)
    for d, c in s.items():
        _check(d)
        total += c * _eval(d, memo, loop_value)
    return total
