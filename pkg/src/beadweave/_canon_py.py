"""Pure-Python canonical labelling kernel.

Operates on a flat integer description of a uni/trivalent graph:

* ``nbr[3*v + s]`` is the partner half-edge of slot ``s`` at vertex ``v``
  (``-1`` for the unused slots 1, 2 of a univalent vertex);
* ``ecol[3*v + s]`` is the integer colour of the edge through that slot;
* ``vcol`` gives initial vertex colours (0 trivalent, 1 univalent).

The search individualizes and refines vertex colourings; at every leaf the
slot order at each trivalent vertex is fixed greedily and the resulting
edge list is compared.  The minimal edge list is the encoding.  Each leaf
carries the parity of the slot permutations it applied; if two leaves
reach the minimum with opposite parity the diagram equals its own
negative and the returned sign is 0.

Loops (an edge with both ends at one vertex) must be removed by the
caller.  ``_canon.pyx`` implements the same algorithm and must return
identical results.
"""

from __future__ import annotations


def _refine(col, nv, nbr, ecol):
    ncells = len(set(col))
    while True:
        sigs = []
        for v in range(nv):
            pairs = []
            for s in range(3):
                p = nbr[3 * v + s]
                if p >= 0:
                    pairs.append((col[p // 3], ecol[3 * v + s]))
            pairs.sort()
            sigs.append((col[v], tuple(pairs)))
        ranks = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [ranks[sig] for sig in sigs]
        if len(ranks) == ncells:
            return new
        col = new
        ncells = len(ranks)


def _leaf(label, nv, ntri, nbr, ecol):
    order = sorted(range(nv), key=label.__getitem__)
    newslot = [-1] * (3 * nv)
    parity = 0
    for u in order:
        if u >= ntri:
            newslot[3 * u] = 0
            continue
        lu = label[u]
        keys = []
        for s in range(3):
            p = nbr[3 * u + s]
            w = p // 3
            lw = label[w]
            side = -newslot[p] if lw < lu else 0
            keys.append((lw, side, ecol[3 * u + s], s))
        keys.sort()
        perm = [0, 0, 0]
        for pos, key in enumerate(keys):
            perm[key[3]] = pos
            newslot[3 * u + key[3]] = pos
        inv = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2])
        parity ^= inv & 1
    edges = []
    for h in range(3 * nv):
        p = nbr[h]
        if p < h:
            continue
        a = (label[h // 3], newslot[h])
        b = (label[p // 3], newslot[p])
        if b < a:
            a, b = b, a
        edges.append((a[0], a[1], b[0], b[1], ecol[h]))
    edges.sort()
    return tuple(edges), parity


def canonical_search(nv, ntri, nbr, ecol, vcol):
    """Return ``(encoding, sign)`` with ``sign`` in ``{1, -1, 0}``.

    ``encoding`` is a sorted tuple of ``(la, sa, lb, sb, colour)`` edges
    in canonical labels.  ``sign`` is the AS sign of the input relative
    to the canonical representative.
    """
    if nv == 0:
        return (), 1
    best = None
    parities = set()
    stack = [_refine(list(vcol), nv, nbr, ecol)]
    while stack:
        col = stack.pop()
        counts = {}
        for c in col:
            counts[c] = counts.get(c, 0) + 1
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            enc, par = _leaf(col, nv, ntri, nbr, ecol)
            if best is None or enc < best:
                best = enc
                parities = {par}
            elif enc == best:
                parities.add(par)
            continue
        for v in reversed(range(nv)):
            if col[v] != target:
                continue
            child = [2 * c + 1 for c in col]
            child[v] = 2 * col[v]
            stack.append(_refine(child, nv, nbr, ecol))
    if len(parities) == 2:
        return best, 0
    return best, (-1 if parities.pop() else 1)
