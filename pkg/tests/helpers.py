"""Random instances and independent brute-force oracles for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from beadweave.contraction import Clasper, LinkingData
from beadweave.diagram import Diagram, DiagramSum, has_tadpole
from beadweave.laurent import ONE, T_MINUS_ONE, LaurentPoly, T

BEADS = [ONE, ONE, ONE, T_MINUS_ONE, LaurentPoly(2), T.conjugate()]
LINK_VALUES = [LaurentPoly(0), ONE, -ONE, T_MINUS_ONE, 2 * T_MINUS_ONE]

EVEN_ROTATIONS = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]


def random_diagram(rng: random.Random, n_tri: int, n_uni: int, beads=None,
                   tadpoles: bool = False, circles: int = 0, tries: int = 200) -> Diagram:
    """Random uni/trivalent diagram from a uniform matching of half-edges."""
    if (3 * n_tri + n_uni) % 2:
        raise ValueError("half-edge count must be even")
    beads = beads or [ONE]
    halves = [(v, s) for v in range(n_tri) for s in range(3)]
    halves += [(v, 0) for v in range(n_tri, n_tri + n_uni)]
    for _ in range(tries):
        rng.shuffle(halves)
        edges = [(halves[i], halves[i + 1], rng.choice(beads)) for i in range(0, len(halves), 2)]
        d = Diagram(n_tri, n_uni, tuple(edges), tuple(rng.choice(beads) for _ in range(circles)))
        if tadpoles or not has_tadpole(d):
            return d
    raise RuntimeError("could not draw a tadpole-free diagram")


def random_closed(rng: random.Random, n_tri: int, **kw) -> Diagram:
    return random_diagram(rng, n_tri, 0, **kw)


def relabel(d: Diagram, rng: random.Random, odd_vertices=(), flip_edges: bool = True) -> Diagram:
    """Random isomorphic copy: permute vertices, rotate cyclic orders by
    even rotations, flip edge orientations and shuffle edge order.
    Vertices in ``odd_vertices`` additionally get a transposition.
    ``flip_edges=False`` keeps every stored edge orientation."""
    tri = list(range(d.n_tri))
    uni = list(range(d.n_tri, d.n_vertices))
    rng.shuffle(tri)
    rng.shuffle(uni)
    vmap = {old: new for new, old in enumerate(tri)}
    vmap.update({old: d.n_tri + new for new, old in enumerate(uni)})
    rot = {}
    for v in range(d.n_tri):
        r = list(rng.choice(EVEN_ROTATIONS))
        if v in odd_vertices:
            r[1], r[2] = r[2], r[1]
        rot[v] = r

    def f(h):
        v, s = h
        return (vmap[v], rot[v][s] if v < d.n_tri else 0)

    edges = []
    for a, b, bead in d.edges:
        a, b = f(a), f(b)
        if flip_edges and rng.random() < 0.5:
            a, b = b, a
        edges.append((a, b, bead))
    rng.shuffle(edges)
    circles = list(d.circles)
    rng.shuffle(circles)
    return Diagram(d.n_tri, d.n_uni, tuple(edges), tuple(circles))


def brute_isomorphism_parities(d1: Diagram, d2: Diagram) -> set[int]:
    """Parities (0 even, 1 odd) of all isomorphisms d1 -> d2 that respect
    beads, found by trying every vertex bijection and slot permutation.
    Only for very small diagrams."""
    if (d1.n_tri, d1.n_uni, len(d1.edges)) != (d2.n_tri, d2.n_uni, len(d2.edges)):
        return set()
    if sorted(map(str, d1.circles)) != sorted(map(str, d2.circles)):
        return set()
    target = {}
    for a, b, bead in d2.edges:
        key = frozenset([a, b]) if a != b else frozenset([a])
        target[key] = target.get(key, []) + [str(bead)]
    target = {k: sorted(v) for k, v in target.items()}
    perms = list(itertools.permutations(range(3)))
    parity_of = {p: sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j]) % 2 for p in perms}
    found = set()
    for tri in itertools.permutations(range(d1.n_tri)):
        for uni in itertools.permutations(range(d1.n_tri, d1.n_vertices)):
            vmap = dict(enumerate(tri))
            vmap.update({d1.n_tri + i: u for i, u in enumerate(uni)})
            for slots in itertools.product(perms, repeat=d1.n_tri):
                def f(h):
                    v, s = h
                    return (vmap[v], slots[v][s] if v < d1.n_tri else 0)

                image = {}
                for a, b, bead in d1.edges:
                    key = frozenset([f(a), f(b)])
                    image[key] = image.get(key, []) + [str(bead)]
                if {k: sorted(v) for k, v in image.items()} == target:
                    found.add(sum(parity_of[p] for p in slots) % 2)
                    if len(found) == 2:
                        return found
    return found


# -- claspers -------------------------------------------------------------------


def random_clasper(rng: random.Random, max_leaves: int = 8, max_tri_per_component: int = 3,
                   even: bool = False) -> Clasper:
    """Random forest of struts and unitrivalent trees (with an even leaf
    count when ``even`` is set)."""
    while True:
        c = _random_forest(rng, max_leaves, max_tri_per_component)
        if not even or c.n_leaves % 2 == 0:
            return c


def _random_forest(rng: random.Random, max_leaves: int, max_tri_per_component: int) -> Clasper:
    comps = []
    leaves = 0
    while True:
        k = rng.randint(0, max_tri_per_component)
        need = 2 if k == 0 else k + 2
        if leaves + need > max_leaves:
            break
        comps.append(k)
        leaves += need
        if rng.random() < 0.35:
            break
    if not comps:
        comps = [0]
    # abstract edges over tagged vertices ("t", i) / ("u", j)
    tri_count = 0
    uni_count = 0
    abstract = []
    for k in comps:
        if k == 0:
            abstract.append(((("u", uni_count), 0), (("u", uni_count + 1), 0)))
            uni_count += 2
            continue
        # grow a tree: start with one vertex with three leaves
        root = tri_count
        tri_count += 1
        pend = []  # list of [vertex_half, leaf_index]
        slots = [0, 1, 2]
        rng.shuffle(slots)
        for s in slots:
            pend.append((("t", root), s))
        for _ in range(k - 1):
            h = pend.pop(rng.randrange(len(pend)))
            w = tri_count
            tri_count += 1
            order = [0, 1, 2]
            rng.shuffle(order)
            abstract.append((h, (("t", w), order[0])))
            pend.append((("t", w), order[1]))
            pend.append((("t", w), order[2]))
        for h in pend:
            abstract.append((h, (("u", uni_count), 0)))
            uni_count += 1

    def conv(h):
        (kind, i), s = h
        return (i, s) if kind == "t" else (tri_count + i, 0)

    edges = [(conv(a), conv(b), ONE) for a, b in abstract]
    rng.shuffle(edges)
    labels = list(range(1, uni_count + 1))
    rng.shuffle(labels)
    return Clasper(Diagram(tri_count, uni_count, tuple(edges)), tuple(labels))


def random_linking(rng: random.Random, size: int, values=LINK_VALUES, density: float = 0.6) -> LinkingData:
    entries = {}
    for i in range(1, size + 1):
        for j in range(i, size + 1):
            if rng.random() < density:
                entries[(i, j)] = rng.choice(values)
    return LinkingData(size, entries)


def oracle_contraction(c: Clasper, lk: LinkingData) -> DiagramSum:
    """All perfect matchings, no pruning, glued by direct edge fusion."""
    L = c.n_leaves
    if L % 2:
        return DiagramSum()
    d = c.diagram
    label_vertex = {lab: d.n_tri + k for k, lab in enumerate(c.labels)}
    all_pairs = list(itertools.combinations(range(1, L + 1), 2))
    terms = []
    for chosen in itertools.combinations(all_pairs, L // 2):
        covered = {x for p in chosen for x in p}
        if len(covered) != L:
            continue
        edges = [[a, b, bead] for a, b, bead in d.edges]
        circles = []
        for i, j in chosen:
            hi, hj = (label_vertex[i], 0), (label_vertex[j], 0)
            ei = next(e for e in edges if hi in (e[0], e[1]))
            ej = next(e for e in edges if hj in (e[0], e[1]))
            val = lk[i, j]
            if ei is ej:
                edges.remove(ei)
                circles.append(ei[2] * val)
                continue
            oi = ei[1] if ei[0] == hi else ei[0]
            oj = ej[1] if ej[0] == hj else ej[0]
            edges.remove(ei)
            edges.remove(ej)
            edges.append([oi, oj, ei[2] * ej[2] * val])
        terms.append((1, Diagram(d.n_tri, 0, tuple(map(tuple, edges)), tuple(circles))))
    return DiagramSum.from_terms(terms)


def ihx_triple(d: Diagram, e: int) -> list[Diagram]:
    """The three diagrams of an IHX relation around internal edge ``e``.

    Returns ``[]`` when an end of the four outer edges lies at ``u`` or
    ``v`` (degenerate configuration).  Their sl2 weights sum to zero.
    """
    (u, i), (v, j), _ = d.edges[e]
    if u == v:
        return []
    partner = d.partner_map()
    ports = [(u, (i + 1) % 3), (u, (i + 2) % 3), (v, (j + 1) % 3), (v, (j + 2) % 3)]
    outer = [partner[p] for p in ports]
    if any(o[0] in (u, v) for o in outer):
        return []
    A, B, C, D = outer
    keep = [(a, b, bead) for a, b, bead in d.edges
            if a[0] not in (u, v) and b[0] not in (u, v)]

    def build(x, y, z, w):
        edges = keep + [((u, 0), (v, 0), ONE), ((u, 1), x, ONE), ((u, 2), y, ONE),
                        ((v, 1), z, ONE), ((v, 2), w, ONE)]
        return Diagram(d.n_tri, d.n_uni, tuple(edges), d.circles)

    return [build(A, B, C, D), build(A, C, D, B), build(A, D, B, C)]


def half(x) -> Fraction:
    return Fraction(x, 2)
