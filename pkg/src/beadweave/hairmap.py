"""The hair map from beaded diagrams to hairy diagrams, truncated by
Vassiliev degree.

A bead ``p(t)`` on an edge becomes ``p(exp(h))``; the monomial ``h^k``
places ``k`` hairs along that edge.  Hairs are unlabelled, so every
ordering of the ``k`` hairs along the edge yields the same diagram and
the ``1/k!``-weighted sum over orderings collapses to that one diagram.
Hairs hang on the side fixed by :func:`~beadweave.diagram.attach_hair`
relative to the stored edge orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import (
    Diagram,
    DiagramSum,
    attach_hair,
    is_connected,
    vassiliev_degree,
)
from .laurent import ONE, lp_exp_substitute

__all__ = ["hair_expand", "place_hairs", "leading_term", "LeadingTerm", "hairs_on_single_edge"]


def place_hairs(d: Diagram, counts: list[int]) -> Diagram:
    """Attach ``counts[i]`` hairs along edge ``i`` (edges, then circles)
    and reset every bead to 1."""
    ne = len(d.edges)
    if len(counts) != d.n_edges:
        raise ValueError("one hair count per edge expected")
    d = d.with_beads([ONE] * d.n_edges)
    # circles first, from the last, so ordinary edge indices stay put
    for j in reversed(range(len(d.circles))):
        k = counts[ne + j]
        if not k:
            continue
        target = len(d.edges)
        d = attach_hair(d, len(d.edges) + j)
        for _ in range(k - 1):
            d = attach_hair(d, target)
    for i in range(ne):
        for _ in range(counts[i]):
            d = attach_hair(d, i)
    return d


def _allocations(series: list[dict[int, Fraction]], budget: int):
    """Yield (counts, coefficient) with sum(counts) <= budget."""
    options = [sorted(s.items()) for s in series]

    def rec(i, left):
        if i == len(options):
            yield [], Fraction(1)
            return
        for k, c in options[i]:
            if k > left:
                break
            for rest, rc in rec(i + 1, left - k):
                yield [k] + rest, c * rc

    yield from rec(0, budget)


def hair_expand(s: DiagramSum, d_max: int) -> DiagramSum:
    """Apply the hair map to ``s`` keeping Vassiliev degree ``<= d_max``."""
    if d_max < 0:
        raise ValueError("d_max must be >= 0")
    out = []
    for d, coef in s.items():
        budget = d_max - vassiliev_degree(d)
        if budget < 0:
            continue
        series = [lp_exp_substitute(b, budget).coefficients() for b in d.beads()]
        for counts, c in _allocations(series, budget):
            out.append((coef * c, place_hairs(d, counts)))
    return DiagramSum.from_terms(out)


def hairs_on_single_edge(d: Diagram) -> bool:
    """True iff ``d`` has exactly two hairs whose stems are joined by an edge."""
    if d.n_uni != 2:
        return False
    partner = d.partner_map()
    u = partner[(d.n_tri, 0)][0]
    v = partner[(d.n_tri + 1, 0)][0]
    if u == v or u >= d.n_tri or v >= d.n_tri:
        return False
    return any({a[0], b[0]} == {u, v} for a, b, _ in d.edges)


@dataclass
class LeadingTerm:
    n: int
    part: DiagramSum
    low_degree: DiagramSum
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.low_degree


def leading_term(s: DiagramSum, n: int) -> LeadingTerm:
    """Split off the Vassiliev degree ``n + 1`` part of a hair-expanded
    sum and check it lies in the two-hairs-on-one-edge subspace."""
    part = s.filter(lambda d: vassiliev_degree(d) == n + 1)
    low = s.filter(lambda d: vassiliev_degree(d) <= n)
    violations = []
    if low:
        violations.append(f"{len(low)} terms of Vassiliev degree <= {n}")
    for d, c in part.items():
        if not is_connected(d):
            violations.append("disconnected term in degree n+1 part")
        elif not hairs_on_single_edge(d):
            violations.append(f"term with {d.n_uni} hairs not on a single edge")
    return LeadingTerm(n, part, low, violations)
