"""Beaded uni/trivalent diagrams, signed canonical forms and formal sums.

A :class:`Diagram` numbers its trivalent vertices ``0..n_tri-1`` and its
univalent vertices ``n_tri..n_tri+n_uni-1``.  A half-edge is a pair
``(vertex, slot)``; slots ``0, 1, 2`` at a trivalent vertex list the
half-edges in their cyclic order, a univalent vertex only has slot 0.
Each edge is an ordered pair of half-edges plus a bead, and vertex-free
loops are kept separately in ``circles`` (one bead each).

Edge indices used by :func:`attach_hair` run over ``edges`` first and
then over ``circles``.

Relations imposed on sums: antisymmetry (through the sign returned by
:func:`canonicalize`), vanishing of tadpoles, vanishing of diagrams equal
to their own negative under an automorphism, and vanishing of every
diagram with a component carrying exactly one univalent vertex.  IHX is
not imposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from . import _kernel
from .laurent import ONE, LaurentPoly, format_laurent, parse_laurent

__all__ = [
    "DiagramError",
    "HalfEdge",
    "Edge",
    "Diagram",
    "SignedCanonical",
    "DiagramSum",
    "canonicalize",
    "simplify",
    "euler_degree",
    "vassiliev_degree",
    "attach_hair",
    "join_hairs",
    "disjoint_union",
    "components",
    "is_connected",
    "has_tadpole",
    "rewire",
    "split_components",
]

HalfEdge = tuple[int, int]
Edge = tuple[HalfEdge, HalfEdge, LaurentPoly]
Coefficient = Union[int, Fraction]


class DiagramError(ValueError):
    """Malformed diagram data or a violated structural precondition."""


def _as_bead(b) -> LaurentPoly:
    if isinstance(b, LaurentPoly):
        return b
    if isinstance(b, int):
        return LaurentPoly(b)
    if isinstance(b, str):
        return parse_laurent(b)
    raise TypeError(f"not a bead: {b!r}")


@dataclass(frozen=True)
class Diagram:
    n_tri: int
    n_uni: int
    edges: tuple[Edge, ...] = ()
    circles: tuple[LaurentPoly, ...] = ()

    def __post_init__(self):
        edges = tuple(
            ((int(a[0]), int(a[1])), (int(b[0]), int(b[1])), _as_bead(bead))
            for a, b, bead in (_edge_triple(e) for e in self.edges)
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "circles", tuple(_as_bead(c) for c in self.circles))
        if self.n_tri < 0 or self.n_uni < 0:
            raise DiagramError("vertex counts must be non-negative")
        seen: set[HalfEdge] = set()
        for a, b, _ in edges:
            for v, s in (a, b):
                if not 0 <= v < self.n_vertices:
                    raise DiagramError(f"half-edge {v}.{s} names a missing vertex")
                if v < self.n_tri:
                    if s not in (0, 1, 2):
                        raise DiagramError(f"slot {s} invalid at trivalent vertex {v}")
                elif s != 0:
                    raise DiagramError(f"slot {s} invalid at univalent vertex {v}")
                if (v, s) in seen:
                    raise DiagramError(f"half-edge {v}.{s} used twice")
                seen.add((v, s))
        if len(seen) != 3 * self.n_tri + self.n_uni:
            raise DiagramError("some half-edges are not attached to an edge")

    @property
    def n_vertices(self) -> int:
        return self.n_tri + self.n_uni

    @property
    def n_edges(self) -> int:
        """Ordinary edges plus circles (the range accepted by attach_hair)."""
        return len(self.edges) + len(self.circles)

    def is_trivalent(self, v: int) -> bool:
        return v < self.n_tri

    def univalent_vertices(self) -> range:
        return range(self.n_tri, self.n_vertices)

    def is_closed(self) -> bool:
        return self.n_uni == 0

    def beads(self) -> list[LaurentPoly]:
        return [e[2] for e in self.edges] + list(self.circles)

    def all_beads_one(self) -> bool:
        return all(b.is_one() for b in self.beads())

    def partner_map(self) -> dict[HalfEdge, HalfEdge]:
        out = {}
        for a, b, _ in self.edges:
            out[a] = b
            out[b] = a
        return out

    def edge_index_map(self) -> dict[HalfEdge, int]:
        out = {}
        for i, (a, b, _) in enumerate(self.edges):
            out[a] = i
            out[b] = i
        return out

    def with_beads(self, beads: Sequence) -> "Diagram":
        """Replace beads; ``beads`` follows ``edges`` then ``circles``."""
        if len(beads) != self.n_edges:
            raise DiagramError("bead list length mismatch")
        ne = len(self.edges)
        return Diagram(
            self.n_tri,
            self.n_uni,
            tuple((a, b, _as_bead(beads[i])) for i, (a, b, _) in enumerate(self.edges)),
            tuple(_as_bead(x) for x in beads[ne:]),
        )

    def flip_vertex(self, v: int) -> "Diagram":
        """Reverse the cyclic order at trivalent vertex ``v`` (one AS move)."""
        if not 0 <= v < self.n_tri:
            raise DiagramError(f"{v} is not a trivalent vertex")
        swap = {1: 2, 2: 1, 0: 0}

        def f(h):
            return (v, swap[h[1]]) if h[0] == v else h

        return Diagram(
            self.n_tri,
            self.n_uni,
            tuple((f(a), f(b), bead) for a, b, bead in self.edges),
            self.circles,
        )


def _edge_triple(e):
    if len(e) == 2:
        return e[0], e[1], ONE
    return e


# -- structure queries ----------------------------------------------------


def euler_degree(d: Diagram) -> int:
    return d.n_tri


def vassiliev_degree(d: Diagram) -> int:
    total = d.n_tri + d.n_uni
    if total % 2:
        raise DiagramError(f"odd vertex count {total} has no Vassiliev degree")
    return total // 2


def has_tadpole(d: Diagram) -> bool:
    return any(a[0] == b[0] for a, b, _ in d.edges)


def components(d: Diagram) -> list[list[int]]:
    """Vertex sets of the connected components with at least one vertex."""
    parent = list(range(d.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in d.edges:
        ra, rb = find(a[0]), find(b[0])
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(d.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(d: Diagram) -> bool:
    n = len(components(d)) + len(d.circles)
    return n == 1


def _has_lonely_hair(d: Diagram) -> bool:
    for comp in components(d):
        if sum(1 for v in comp if v >= d.n_tri) == 1:
            return True
    return False


# -- canonical forms ----------------------------------------------------------

Encoding = tuple  # (n_tri, n_uni, ((la, sa, lb, sb, bead), ...), (circle beads...))


@dataclass(frozen=True)
class SignedCanonical:
    """Canonical encoding of an isomorphism class and the AS sign of the
    diagram it was computed from.  ``encoding`` is ``None`` for tadpoles."""

    encoding: Optional[Encoding]
    sign: int

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def diagram(self) -> Diagram:
        if self.encoding is None:
            raise DiagramError("tadpole diagrams have no stored representative")
        return decode(self.encoding)


@lru_cache(maxsize=4096)
def _bead_from_str(s: str) -> LaurentPoly:
    return parse_laurent(s)


@lru_cache(maxsize=65536)
def decode(encoding: Encoding) -> Diagram:
    n_tri, n_uni, edges, circles = encoding
    return Diagram(
        n_tri,
        n_uni,
        tuple(((la, sa), (lb, sb), _bead_from_str(b)) for la, sa, lb, sb, b in edges),
        tuple(_bead_from_str(c) for c in circles),
    )


def canonicalize(d: Diagram) -> SignedCanonical:
    """Signed canonical form of ``d``.

    The sign is the parity of the cyclic-order reversals needed to carry
    ``d`` onto the canonical representative.  It is 0 for tadpoles and
    for diagrams with an automorphism reversing an odd number of cyclic
    orders.
    """
    if has_tadpole(d):
        return SignedCanonical(None, 0)
    bead_strs = [format_laurent(e[2]) for e in d.edges]
    table = sorted(set(bead_strs))
    colour = {s: i for i, s in enumerate(table)}
    nv = d.n_vertices
    nbr = [-1] * (3 * nv)
    ecol = [-1] * (3 * nv)
    for (a, b, _), bs in zip(d.edges, bead_strs):
        ha = 3 * a[0] + a[1]
        hb = 3 * b[0] + b[1]
        nbr[ha] = hb
        nbr[hb] = ha
        ecol[ha] = ecol[hb] = colour[bs]
    vcol = [0] * d.n_tri + [1] * d.n_uni
    enc, sign = _kernel.canonical_search(nv, d.n_tri, nbr, ecol, vcol)
    edges = tuple((la, sa, lb, sb, table[c]) for la, sa, lb, sb, c in enc)
    circles = tuple(sorted(format_laurent(c) for c in d.circles))
    return SignedCanonical((d.n_tri, d.n_uni, edges, circles), sign)


# -- constructions ------------------------------------------------------------


def _shift(h: HalfEdge, start: int, delta: int) -> HalfEdge:
    return (h[0] + delta, h[1]) if h[0] >= start else h


def attach_hair(d: Diagram, e: int, side: int = 1) -> Diagram:
    """Subdivide edge ``e`` at a new trivalent vertex and hang a hair on it.

    The edge ``a -> b`` (stored orientation) becomes ``a -> v.0`` (kept at
    index ``e`` with the old bead) and ``v.1 -> b`` (appended, bead 1), so
    the cyclic order at ``v`` reads (incoming, outgoing, hair).  The hair
    edge ``v.2 -- u.0`` is appended last.  ``side=-1`` gives the reversed
    cyclic order at ``v``.  A circle index turns the circle into a loop
    at ``v``.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    ne = len(d.edges)
    if not 0 <= e < d.n_edges:
        raise DiagramError(f"edge {e} not in diagram")
    v = d.n_tri
    edges = [(_shift(a, v, 1), _shift(b, v, 1), bead) for a, b, bead in d.edges]
    u = d.n_tri + 1 + d.n_uni
    vin, vout = ((v, 0), (v, 1)) if side == 1 else ((v, 1), (v, 0))
    circles = list(d.circles)
    if e < ne:
        a, b, bead = edges[e]
        edges[e] = (a, vin, bead)
        edges.append((vout, b, ONE))
    else:
        bead = circles.pop(e - ne)
        edges.append((vout, vin, bead))
    edges.append(((v, 2), (u, 0), ONE))
    return Diagram(d.n_tri + 1, d.n_uni + 1, tuple(edges), tuple(circles))


def join_hairs(d: Diagram) -> Diagram:
    """Replace the two hairs of ``d`` by one edge between their stems."""
    if d.n_uni != 2:
        raise DiagramError(f"join_hairs needs exactly 2 univalent vertices, got {d.n_uni}")
    if not d.all_beads_one():
        raise DiagramError("join_hairs needs all beads equal to 1")
    x, y = d.n_tri, d.n_tri + 1
    partner = d.partner_map()
    idx = d.edge_index_map()
    ex, ey = idx[(x, 0)], idx[(y, 0)]
    edges = list(d.edges)
    circles = list(d.circles)
    if ex == ey:
        circles.append(ONE)
        del edges[ex]
    else:
        edges[min(ex, ey)] = (partner[(x, 0)], partner[(y, 0)], ONE)
        del edges[max(ex, ey)]
    return Diagram(d.n_tri, 0, tuple(edges), tuple(circles))


def disjoint_union(a: Diagram, b: Diagram) -> Diagram:
    ka, kb = a.n_tri, b.n_tri

    def fa(h):
        return h if h[0] < ka else (h[0] + kb, h[1])

    def fb(h):
        return (h[0] + ka, h[1]) if h[0] < kb else (h[0] + ka + a.n_uni, h[1])

    edges = tuple((fa(x), fa(y), bead) for x, y, bead in a.edges) + tuple(
        (fb(x), fb(y), bead) for x, y, bead in b.edges
    )
    return Diagram(ka + kb, a.n_uni + b.n_uni, edges, a.circles + b.circles)


# -- formal sums ----------------------------------------------------------------


def _normalize_beads(d: Diagram) -> tuple[int, Diagram]:
    """Pull integer content out of every bead; scale 0 means a zero bead."""
    scale = 1
    beads = []
    changed = False
    for b in d.beads():
        g, prim = b.normalized()
        if g == 0:
            return 0, d
        changed = changed or g != 1
        scale *= g
        beads.append(prim)
    if not changed:
        return 1, d
    return scale, d.with_beads(beads)


def _accumulate(acc: dict, coef: Fraction, d: Diagram) -> None:
    if not coef:
        return
    scale, d = _normalize_beads(d)
    if scale == 0 or _has_lonely_hair(d):
        return
    sc = canonicalize(d)
    if sc.sign == 0:
        return
    key = sc.encoding
    val = acc.get(key, Fraction(0)) + sc.sign * scale * coef
    if val:
        acc[key] = val
    else:
        acc.pop(key, None)


class DiagramSum:
    """Finite Q-linear combination of canonical diagrams.

    Build sums with :meth:`from_terms` / :meth:`from_diagram`; the raw
    constructor takes an ``{encoding: coefficient}`` mapping and trusts
    the encodings to be canonical already.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Encoding, Coefficient]] = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Coefficient, Diagram]]) -> "DiagramSum":
        acc: dict = {}
        for c, d in pairs:
            _accumulate(acc, Fraction(c), d)
        out = cls.__new__(cls)
        out._terms = acc
        return out

    @classmethod
    def from_diagram(cls, d: Diagram, coef: Coefficient = 1) -> "DiagramSum":
        return cls.from_terms([(coef, d)])

    @property
    def terms(self) -> dict[Encoding, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Diagram, Fraction]]:
        """``(representative, coefficient)`` pairs in a fixed order."""
        return [(decode(k), self._terms[k]) for k in sorted(self._terms)]

    def coefficient(self, d: Diagram) -> Fraction:
        sc = canonicalize(d)
        if sc.sign == 0:
            return Fraction(0)
        return sc.sign * self._terms.get(sc.encoding, Fraction(0))

    def filter(self, predicate) -> "DiagramSum":
        return DiagramSum({k: c for k, c in self._terms.items() if predicate(decode(k))})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[tuple[Diagram, Fraction]]:
        return iter(self.items())

    def __add__(self, other: "DiagramSum") -> "DiagramSum":
        if not isinstance(other, DiagramSum):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return DiagramSum(acc)

    def __neg__(self) -> "DiagramSum":
        return DiagramSum({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "DiagramSum") -> "DiagramSum":
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "DiagramSum":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return DiagramSum({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"DiagramSum(<{len(self._terms)} terms>)"


def simplify(s: DiagramSum) -> DiagramSum:
    """Re-apply every vanishing rule to ``s`` and merge equal classes."""
    acc: dict = {}
    for d, c in s.items():
        _accumulate(acc, c, d)
    out = DiagramSum.__new__(DiagramSum)
    out._terms = acc
    return out


# -- rewiring -----------------------------------------------------------------


def rewire(
    d: Diagram,
    remove: Iterable[int],
    joins: Iterable[tuple[HalfEdge, HalfEdge]],
    discard: Iterable[int] = (),
    join_beads: Optional[Sequence[LaurentPoly]] = None,
) -> Diagram:
    """Delete vertices and reconnect the loose ends.

    Every half-edge at a removed vertex is a *port* and must appear in
    exactly one pair of ``joins``, unless its edge index is listed in
    ``discard``.  Joining ports ``x`` and ``y`` links the far end of
    ``x``'s edge to the far end of ``y``'s edge; chains through several
    ports fuse into one edge whose bead is the product of the beads met
    (edge beads and ``join_beads``).  Chains that close up become circles.
    Remaining vertices keep their relative order.
    """
    removed = set(remove)
    discard = set(discard)
    joins = list(joins)
    if join_beads is None:
        join_beads = [ONE] * len(joins)
    partner: dict[HalfEdge, tuple[HalfEdge, LaurentPoly]] = {}
    for i, (a, b, bead) in enumerate(d.edges):
        if i in discard:
            if a[0] not in removed or b[0] not in removed:
                raise DiagramError("discarded edges must lie inside the removed set")
            continue
        partner[a] = (b, bead)
        partner[b] = (a, bead)
    jmap: dict[HalfEdge, tuple[HalfEdge, LaurentPoly]] = {}
    for (x, y), bead in zip(joins, join_beads):
        if x in jmap or y in jmap or x == y:
            raise DiagramError(f"port joined twice: {x} / {y}")
        jmap[x] = (y, bead)
        jmap[y] = (x, bead)
    for h in partner:
        if h[0] in removed and h not in jmap:
            raise DiagramError(f"port {h} left unjoined")
    for h in jmap:
        if h[0] not in removed or h not in partner:
            raise DiagramError(f"join names a non-port half-edge {h}")

    kept_tri = [v for v in range(d.n_tri) if v not in removed]
    kept_uni = [v for v in range(d.n_tri, d.n_vertices) if v not in removed]
    newidx = {v: i for i, v in enumerate(kept_tri + kept_uni)}

    def rename(h):
        return (newidx[h[0]], h[1])

    edges = []
    done: set[HalfEdge] = set()
    for a, b, bead in d.edges:
        for start in (a, b):
            if start[0] in removed or start in done:
                continue
            far, acc = partner[start]
            while far[0] in removed:
                done.add(far)
                nxt, jb = jmap[far]
                done.add(nxt)
                step, eb = partner[nxt]
                acc = acc * jb * eb
                far = step
            done.add(start)
            done.add(far)
            edges.append((rename(start), rename(far), acc))
    circles = list(d.circles)
    for p in jmap:
        if p in done:
            continue
        acc = ONE
        cur = p
        while True:
            done.add(cur)
            nxt, jb = jmap[cur]
            done.add(nxt)
            step, eb = partner[nxt]
            acc = acc * jb * eb
            cur = step
            if cur == p:
                break
        circles.append(acc)
    return Diagram(len(kept_tri), len(kept_uni), tuple(edges), tuple(circles))


def split_components(d: Diagram) -> list[Diagram]:
    """One diagram per connected component; circles come last."""
    core = Diagram(d.n_tri, d.n_uni, d.edges)
    comps = components(d)
    if len(comps) <= 1:
        parts = [core] if comps else []
    else:
        parts = []
        for comp in comps:
            keep = set(comp)
            drop = [v for v in range(d.n_vertices) if v not in keep]
            discard = [i for i, (a, _, _) in enumerate(d.edges) if a[0] not in keep]
            parts.append(rewire(core, drop, [], discard))
    parts.extend(Diagram(0, 0, (), (c,)) for c in d.circles)
    return parts
