"""Tree claspers, equivariant linking data and the complete contraction.

The complete contraction of a clasper sums, over all perfect matchings
of its leaves, the trivalent diagram obtained by deleting each matched
pair of leaves and fusing their pendant edges into one edge beaded by the
linking value of the pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

from .diagram import (
    Diagram,
    DiagramError,
    DiagramSum,
    _as_bead,
    components,
    euler_degree,
    is_connected,
    rewire,
)
from .families import ellipse_edges, ellipse_generator
from .laurent import ONE, T_MINUS_ONE, ZERO, LaurentPoly

__all__ = [
    "Clasper",
    "LinkingData",
    "GropeSpec",
    "ShapeReport",
    "TermShape",
    "complete_contraction",
    "perfect_matchings",
    "build_grope_clasper",
    "check_theorem1_shape",
]


@dataclass(frozen=True)
class Clasper:
    """A forest of unitrivalent trees with leaves labelled ``1..L``.

    ``labels[k]`` is the label of univalent vertex ``diagram.n_tri + k``.
    """

    diagram: Diagram
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        d = self.diagram
        labels = tuple(self.labels) or tuple(range(1, d.n_uni + 1))
        object.__setattr__(self, "labels", labels)
        if sorted(labels) != list(range(1, d.n_uni + 1)):
            raise DiagramError("leaf labels must be a bijection onto 1..L")
        if d.circles:
            raise DiagramError("a clasper has no circle components")
        if not d.all_beads_one():
            raise DiagramError("clasper edges carry bead 1")
        if len(d.edges) != d.n_vertices - len(components(d)):
            raise DiagramError("clasper graph must be a forest")
        for comp in components(d):
            if all(v >= d.n_tri for v in comp) and len(comp) != 2:
                raise DiagramError("isolated leaf in clasper")

    @property
    def n_leaves(self) -> int:
        return self.diagram.n_uni

    def leaf_vertex(self, label: int) -> int:
        return self.diagram.n_tri + self.labels.index(label)

    def is_tree(self) -> bool:
        return len(components(self.diagram)) == 1


class LinkingData:
    """Symmetric ``L x L`` matrix of beads indexed from 1."""

    __slots__ = ("size", "_rows")

    def __init__(self, size: int, entries: Optional[Mapping[tuple[int, int], object]] = None):
        if size < 0:
            raise ValueError("size must be >= 0")
        self.size = size
        rows = [[ZERO] * size for _ in range(size)]
        for (i, j), val in (entries or {}).items():
            if not (1 <= i <= size and 1 <= j <= size):
                raise ValueError(f"linking entry ({i}, {j}) out of range")
            p = _as_bead(val)
            a, b = rows[i - 1][j - 1], rows[j - 1][i - 1]
            if (a and a != p) or (b and b != p):
                raise ValueError(f"conflicting entries at ({i}, {j})")
            rows[i - 1][j - 1] = p
            rows[j - 1][i - 1] = p
        self._rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "LinkingData":
        n = len(rows)
        entries = {}
        for i in range(n):
            for j in range(n):
                p, q = _as_bead(rows[i][j]), _as_bead(rows[j][i])
                if p != q:
                    raise ValueError("linking matrix must be symmetric")
                if p and i <= j:
                    entries[(i + 1, j + 1)] = p
        return cls(n, entries)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self._rows[i - 1][j - 1]

    def nonzero_entries(self) -> dict[tuple[int, int], LaurentPoly]:
        return {
            (i + 1, j + 1): self._rows[i][j]
            for i in range(self.size)
            for j in range(i, self.size)
            if self._rows[i][j]
        }

    def permuted(self, perm: Mapping[int, int]) -> "LinkingData":
        """Relabel leaves: old label ``i`` becomes ``perm[i]``."""
        return LinkingData(
            self.size, {(perm[i], perm[j]): p for (i, j), p in self.nonzero_entries().items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkingData):
            return NotImplemented
        return self.size == other.size and self._rows == other._rows

    def __repr__(self) -> str:
        return f"LinkingData({self.size}, {self.nonzero_entries()!r})"


def perfect_matchings(labels: Sequence[int], lk: Optional[LinkingData] = None) -> Iterator[list[tuple[int, int]]]:
    """Yield perfect matchings of ``labels``; with ``lk`` given, skip pairs
    whose linking value is zero."""
    labels = list(labels)
    if not labels:
        yield []
        return
    first, rest = labels[0], labels[1:]
    for k, other in enumerate(rest):
        if lk is not None and not lk[first, other]:
            continue
        for m in perfect_matchings(rest[:k] + rest[k + 1:], lk):
            yield [(first, other)] + m


def glue(c: Clasper, lk: LinkingData, matching: Sequence[tuple[int, int]]) -> Diagram:
    """The closed diagram of one matching (beads not yet normalized)."""
    d = c.diagram
    joins = [((c.leaf_vertex(i), 0), (c.leaf_vertex(j), 0)) for i, j in matching]
    beads = [lk[i, j] for i, j in matching]
    return rewire(d, range(d.n_tri, d.n_vertices), joins, join_beads=beads)


def complete_contraction(c: Clasper, lk: LinkingData) -> DiagramSum:
    if lk.size != c.n_leaves:
        raise ValueError(f"linking data has size {lk.size}, clasper has {c.n_leaves} leaves")
    if c.n_leaves % 2:
        return DiagramSum()
    labels = range(1, c.n_leaves + 1)
    return DiagramSum.from_terms((1, glue(c, lk, m)) for m in perfect_matchings(labels, lk))


# -- grope realization ----------------------------------------------------------


@dataclass(frozen=True)
class GropeSpec:
    """Combinatorial data for a genus-one grope of class ``2n``.

    ``generator`` defaults to the ellipse with ``n - 1`` rungs and two
    hairs; ``edge_cut_set`` lists generator edges broken into Hopf pairs
    (default: the rungs).
    """

    n: int
    generator: Optional[Diagram] = None
    edge_cut_set: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grope class 2n needs n >= 1")

    def resolved(self) -> tuple[Diagram, tuple[int, ...]]:
        gen = self.generator if self.generator is not None else ellipse_generator(self.n)
        cut = self.edge_cut_set
        if cut is None:
            if self.generator is not None:
                raise ValueError("a custom generator needs an explicit edge_cut_set")
            cut = tuple(ellipse_edges(self.n)["rung"])
        return gen, tuple(cut)


def _hair_stems(gen: Diagram) -> tuple[int, int, int]:
    """Return (u, v, e_uv): the two hair stems and an edge joining them."""
    if gen.n_uni != 2:
        raise DiagramError("generator must have exactly two hairs")
    if not gen.all_beads_one():
        raise DiagramError("generator beads must all be 1")
    partner = gen.partner_map()
    u = partner[(gen.n_tri, 0)][0]
    v = partner[(gen.n_tri + 1, 0)][0]
    if u >= gen.n_tri or v >= gen.n_tri or u == v:
        raise DiagramError("hairs must hang from two distinct trivalent vertices")
    for i, (a, b, _) in enumerate(gen.edges):
        if {a[0], b[0]} == {u, v}:
            return u, v, i
    raise DiagramError("the two hairs do not sit on a single edge")


def build_grope_clasper(spec: GropeSpec) -> tuple[Clasper, LinkingData]:
    """Clasper ``T'`` and its linking matrix for a grope of class ``2n``.

    The two hairs and their stems are removed; the edge they sat on is
    cut into leaves 1 and 2 (linking ``t - 1``), and each edge of the cut
    set into a Hopf pair ``2k+1, 2k+2`` (linking 1).
    """
    gen, cut = spec.resolved()
    u, v, e_uv = _hair_stems(gen)
    x, y = gen.n_tri, gen.n_tri + 1
    partner = gen.partner_map()
    idx = gen.edge_index_map()
    stems = {u, v, x, y}
    for e in cut:
        if not 0 <= e < len(gen.edges):
            raise DiagramError(f"cut edge {e} not in generator")
        a, b, _ = gen.edges[e]
        if a[0] in stems or b[0] in stems:
            raise DiagramError(f"cut edge {e} touches a hair or its stem")
    if len(set(cut)) != len(cut):
        raise DiagramError("repeated edge in cut set")

    hair_u = partner[(x, 0)]
    hair_v = partner[(y, 0)]
    e_a, e_b = gen.edges[e_uv][0], gen.edges[e_uv][1]
    mid_u, mid_v = (e_a, e_b) if e_a[0] == u else (e_b, e_a)
    (a_u,) = [(u, s) for s in range(3) if (u, s) not in (hair_u, mid_u)]
    (b_v,) = [(v, s) for s in range(3) if (v, s) not in (hair_v, mid_v)]

    n_leaves = 0

    def new_leaf():
        nonlocal n_leaves
        n_leaves += 1
        return ("leaf", n_leaves)

    skip = {idx[(x, 0)], idx[(y, 0)], e_uv, idx[a_u], idx[b_v]} | set(cut)
    pairs = []
    r, r2 = new_leaf(), new_leaf()
    far_a, far_b = partner[a_u], partner[b_v]
    if far_a == b_v:
        pairs.append((r, r2))
    else:
        pairs.append((far_a, r))
        pairs.append((far_b, r2))
    for e in cut:
        a, b, _ = gen.edges[e]
        p, q = new_leaf(), new_leaf()
        pairs.append((a, p))
        pairs.append((b, q))
    for i, (a, b, _) in enumerate(gen.edges):
        if i not in skip:
            pairs.append((a, b))

    kept = [w for w in range(gen.n_tri) if w not in (u, v)]
    rename = {w: i for i, w in enumerate(kept)}
    k = len(kept)

    def half(h):
        if h[0] == "leaf":
            return (k + h[1] - 1, 0)
        return (rename[h[0]], h[1])

    diagram = Diagram(k, n_leaves, tuple((half(a), half(b), ONE) for a, b in pairs))
    try:
        clasper = Clasper(diagram)
    except DiagramError:
        clasper = None
    if clasper is None or not clasper.is_tree():
        raise DiagramError("edge_cut_set does not cut the generator into a tree")
    entries = {(1, 2): T_MINUS_ONE}
    for j in range(3, n_leaves + 1, 2):
        entries[(j, j + 1)] = ONE
    return clasper, LinkingData(n_leaves, entries)


# -- contraction shape check ----------------------------------------------------


@dataclass
class TermShape:
    coefficient: object
    connected: bool
    euler_degree: int
    special_beads: int
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class ShapeReport:
    n: int
    terms: list[TermShape]
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.terms)


_TM1 = {T_MINUS_ONE, -T_MINUS_ONE}


def check_theorem1_shape(s: DiagramSum, n: int) -> ShapeReport:
    """Every term connected, Euler degree ``2n - 2``, exactly one bead
    ``+-(t - 1)`` and all other beads 1."""
    terms = []
    for d, coef in s.items():
        viol = []
        conn = is_connected(d)
        if not conn:
            viol.append("disconnected")
        deg = euler_degree(d)
        if deg != 2 * n - 2:
            viol.append(f"euler degree {deg} != {2 * n - 2}")
        beads = d.beads()
        special = sum(1 for b in beads if b in _TM1)
        others = [b for b in beads if b not in _TM1 and not b.is_one()]
        if special != 1:
            viol.append(f"{special} beads equal to +-(t-1), expected 1")
        if others:
            viol.append("beads other than 1 and +-(t-1): " + ", ".join(map(str, others)))
        terms.append(TermShape(coef, conn, deg, special, viol))
    warnings = [] if terms else ["empty sum: shape check holds vacuously"]
    return ShapeReport(n, terms, warnings)
