"""Text formats for diagrams, sums, claspers and linking matrices.

Diagram block::

    vertices: T 2 U 0
    edge 0: 0.0 -- 1.0 bead 1
    edge 1: 0.1 -- 1.2 bead -1+t
    edge 2: 0.2 -- 1.1 bead 1
    circle 3: bead 1          # a vertex-free loop; ids continue after edges

A sum file is a sequence of blocks, each preceded by ``coeff: <rational>``.
A clasper block ends with ``leaf <vertex>: <label>`` lines.  A linking
file has ``leaves: L`` followed by ``lk <i> <j>: <laurent>`` lines.
Everything after ``#`` on a line is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .contraction import Clasper, LinkingData
from .diagram import Diagram, DiagramError, DiagramSum
from .laurent import format_laurent, parse_laurent

__all__ = [
    "FormatError",
    "format_diagram",
    "parse_diagram",
    "parse_diagrams",
    "format_sum",
    "parse_sum",
    "format_clasper",
    "parse_clasper",
    "format_linking",
    "parse_linking",
]


class FormatError(ValueError):
    pass


_VERT = re.compile(r"^vertices:\s*T\s+(\d+)\s+U\s+(\d+)$")
_EDGE = re.compile(r"^edge\s+(\d+):\s*(\d+)\.(\d+)\s*--\s*(\d+)\.(\d+)\s+bead\s+(.+)$")
_CIRC = re.compile(r"^circle\s+(\d+):\s*bead\s+(.+)$")
_LEAF = re.compile(r"^leaf\s+(\d+):\s*(\d+)$")
_COEF = re.compile(r"^coeff:\s*(\S+)$")
_LEAVES = re.compile(r"^leaves:\s*(\d+)$")
_LK = re.compile(r"^lk\s+(\d+)\s+(\d+):\s*(.+)$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def format_diagram(d: Diagram) -> str:
    out = [f"vertices: T {d.n_tri} U {d.n_uni}"]
    for i, (a, b, bead) in enumerate(d.edges):
        out.append(f"edge {i}: {a[0]}.{a[1]} -- {b[0]}.{b[1]} bead {format_laurent(bead)}")
    for j, bead in enumerate(d.circles):
        out.append(f"circle {len(d.edges) + j}: bead {format_laurent(bead)}")
    return "\n".join(out) + "\n"


class _Block:
    def __init__(self, lineno, n_tri, n_uni, coeff):
        self.lineno = lineno
        self.n_tri, self.n_uni = n_tri, n_uni
        self.coeff = coeff
        self.items: dict[int, tuple] = {}
        self.leaves: dict[int, int] = {}

    def build(self) -> Diagram:
        ids = sorted(self.items)
        if ids != list(range(len(ids))):
            raise FormatError(f"block at line {self.lineno}: edge ids must be 0..{len(ids) - 1}")
        edges, circles = [], []
        for i in ids:
            kind, payload = self.items[i]
            if kind == "edge":
                if circles:
                    raise FormatError(f"block at line {self.lineno}: circles must come after edges")
                edges.append(payload)
            else:
                circles.append(payload)
        try:
            return Diagram(self.n_tri, self.n_uni, tuple(edges), tuple(circles))
        except DiagramError as exc:
            raise FormatError(f"block at line {self.lineno}: {exc}") from exc


def _parse_blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    pending_coeff: Optional[Fraction] = None
    cur: Optional[_Block] = None
    for lineno, line in _lines(text):
        if m := _COEF.match(line):
            try:
                pending_coeff = Fraction(m.group(1))
            except (ValueError, ZeroDivisionError) as exc:
                raise FormatError(f"line {lineno}: bad coefficient") from exc
            cur = None
            continue
        if m := _VERT.match(line):
            cur = _Block(lineno, int(m.group(1)), int(m.group(2)), pending_coeff)
            pending_coeff = None
            blocks.append(cur)
            continue
        if cur is None:
            raise FormatError(f"line {lineno}: expected 'vertices:' header")
        try:
            if m := _EDGE.match(line):
                i = int(m.group(1))
                item = ("edge", ((int(m.group(2)), int(m.group(3))),
                                 (int(m.group(4)), int(m.group(5))),
                                 parse_laurent(m.group(6))))
            elif m := _CIRC.match(line):
                i = int(m.group(1))
                item = ("circle", parse_laurent(m.group(2)))
            elif m := _LEAF.match(line):
                cur.leaves[int(m.group(1))] = int(m.group(2))
                continue
            else:
                raise FormatError(f"line {lineno}: unrecognized line {line!r}")
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
        if i in cur.items:
            raise FormatError(f"line {lineno}: duplicate id {i}")
        cur.items[i] = item
    if pending_coeff is not None:
        raise FormatError("trailing coefficient without a diagram")
    return blocks


def parse_diagrams(text: str) -> list[Diagram]:
    return [b.build() for b in _parse_blocks(text)]


def parse_diagram(text: str) -> Diagram:
    ds = parse_diagrams(text)
    if len(ds) != 1:
        raise FormatError(f"expected one diagram, found {len(ds)}")
    return ds[0]


def format_sum(s: DiagramSum) -> str:
    return "\n".join(f"coeff: {c}\n" + format_diagram(d) for d, c in s.items())


def parse_sum(text: str) -> DiagramSum:
    terms = []
    for b in _parse_blocks(text):
        terms.append((b.coeff if b.coeff is not None else Fraction(1), b.build()))
    return DiagramSum.from_terms(terms)


def format_clasper(c: Clasper) -> str:
    body = format_diagram(c.diagram)
    d = c.diagram
    leaves = "".join(f"leaf {d.n_tri + k}: {lab}\n" for k, lab in enumerate(c.labels))
    return body + leaves


def parse_clasper(text: str) -> Clasper:
    blocks = _parse_blocks(text)
    if len(blocks) != 1:
        raise FormatError(f"expected one clasper, found {len(blocks)}")
    b = blocks[0]
    d = b.build()
    if b.leaves:
        if sorted(b.leaves) != list(d.univalent_vertices()):
            raise FormatError("leaf section must label every univalent vertex")
        labels = tuple(b.leaves[v] for v in d.univalent_vertices())
    else:
        labels = ()
    try:
        return Clasper(d, labels)
    except DiagramError as exc:
        raise FormatError(str(exc)) from exc


def format_linking(lk: LinkingData) -> str:
    out = [f"leaves: {lk.size}"]
    for (i, j), p in sorted(lk.nonzero_entries().items()):
        out.append(f"lk {i} {j}: {format_laurent(p)}")
    return "\n".join(out) + "\n"


def parse_linking(text: str) -> LinkingData:
    size = None
    entries = {}
    for lineno, line in _lines(text):
        if size is None:
            m = _LEAVES.match(line)
            if not m:
                raise FormatError(f"line {lineno}: expected 'leaves: L'")
            size = int(m.group(1))
            continue
        m = _LK.match(line)
        if not m:
            raise FormatError(f"line {lineno}: unrecognized line {line!r}")
        i, j = int(m.group(1)), int(m.group(2))
        if i > j:
            raise FormatError(f"line {lineno}: entries are written with i <= j")
        if (i, j) in entries:
            raise FormatError(f"line {lineno}: duplicate entry")
        try:
            entries[(i, j)] = parse_laurent(m.group(3))
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if size is None:
        raise FormatError("missing 'leaves:' header")
    try:
        return LinkingData(size, entries)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
