# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonical labelling kernel.

Same algorithm and output as ``_canon_py.canonical_search``; see that
module for the input layout.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef enum:
    SIGW = 7
    BIG = 2147483647


cdef struct Graph:
    int nv
    int ntri
    int ne
    int* nbr
    int* ecol


cdef struct Best:
    int have
    int* enc
    int parities  # bit 0: even seen, bit 1: odd seen


cdef inline int _cmp_row(int* a, int* b, int w) nogil:
    cdef int i
    for i in range(w):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
    return 0


cdef void _sort_rows(int* rows, int* idx, int n, int w) nogil:
    # insertion sort of row indices; n is small
    cdef int i, j, key
    for i in range(n):
        idx[i] = i
    for i in range(1, n):
        key = idx[i]
        j = i - 1
        while j >= 0 and _cmp_row(rows + idx[j] * w, rows + key * w, w) > 0:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = key


cdef int _dense_rank(int* rows, int* idx, int n, int w, int* out) nogil:
    cdef int i, rank = 0
    _sort_rows(rows, idx, n, w)
    for i in range(n):
        if i > 0 and _cmp_row(rows + idx[i - 1] * w, rows + idx[i] * w, w) != 0:
            rank += 1
        out[idx[i]] = rank
    return rank + 1


cdef void _refine(Graph* g, int* col, int* sig, int* idx, int* tmp) nogil:
    # col values must lie in [0, 2*nv) on entry; returns dense ranks in col
    cdef int v, s, p, k, ncells, nnew
    cdef int a0, b0
    cdef int pc[6]
    cdef int nv = g.nv
    # count distinct colours on entry (values < 2*nv)
    for v in range(2 * nv):
        tmp[v] = 0
    ncells = 0
    for v in range(nv):
        if tmp[col[v]] == 0:
            tmp[col[v]] = 1
            ncells += 1
    while True:
        for v in range(nv):
            k = 0
            for s in range(3):
                p = g.nbr[3 * v + s]
                if p >= 0:
                    pc[2 * k] = col[p // 3]
                    pc[2 * k + 1] = g.ecol[3 * v + s]
                    k += 1
            while k < 3:
                pc[2 * k] = BIG
                pc[2 * k + 1] = BIG
                k += 1
            # sort three (colour, ecol) pairs
            if pc[0] > pc[2] or (pc[0] == pc[2] and pc[1] > pc[3]):
                a0 = pc[0]; b0 = pc[1]; pc[0] = pc[2]; pc[1] = pc[3]; pc[2] = a0; pc[3] = b0
            if pc[2] > pc[4] or (pc[2] == pc[4] and pc[3] > pc[5]):
                a0 = pc[2]; b0 = pc[3]; pc[2] = pc[4]; pc[3] = pc[5]; pc[4] = a0; pc[5] = b0
            if pc[0] > pc[2] or (pc[0] == pc[2] and pc[1] > pc[3]):
                a0 = pc[0]; b0 = pc[1]; pc[0] = pc[2]; pc[1] = pc[3]; pc[2] = a0; pc[3] = b0
            sig[v * SIGW] = col[v]
            for s in range(6):
                sig[v * SIGW + 1 + s] = pc[s]
        nnew = _dense_rank(sig, idx, nv, SIGW, tmp)
        memcpy(col, tmp, nv * sizeof(int))
        if nnew == ncells:
            return
        ncells = nnew


cdef int _leaf(Graph* g, int* label, int* order, int* newslot, int* enc, int* rows, int* idx) nogil:
    cdef int nv = g.nv
    cdef int u, v, s, p, w, lw, lu, i, j, e, h
    cdef int keys[12]
    cdef int perm[3]
    cdef int kidx[3]
    cdef int parity = 0, inv, t
    cdef int ka, kb, i2
    for v in range(nv):
        order[label[v]] = v
    for h in range(3 * nv):
        newslot[h] = -1
    for i in range(nv):
        u = order[i]
        if u >= g.ntri:
            newslot[3 * u] = 0
            continue
        lu = label[u]
        for s in range(3):
            p = g.nbr[3 * u + s]
            w = p // 3
            lw = label[w]
            keys[4 * s] = lw
            keys[4 * s + 1] = -newslot[p] if lw < lu else 0
            keys[4 * s + 2] = g.ecol[3 * u + s]
            keys[4 * s + 3] = s
            kidx[s] = s
        # sort three keys
        for i2 in range(1, 3):
            t = kidx[i2]
            j = i2 - 1
            while j >= 0 and _cmp_row(keys + 4 * kidx[j], keys + 4 * t, 4) > 0:
                kidx[j + 1] = kidx[j]
                j -= 1
            kidx[j + 1] = t
        for j in range(3):
            perm[kidx[j]] = j
            newslot[3 * u + kidx[j]] = j
        inv = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2])
        parity ^= inv & 1
    e = 0
    for h in range(3 * nv):
        p = g.nbr[h]
        if p < h:
            continue
        ka = label[h // 3] * 4 + newslot[h]
        kb = label[p // 3] * 4 + newslot[p]
        if kb < ka:
            rows[5 * e] = label[p // 3]
            rows[5 * e + 1] = newslot[p]
            rows[5 * e + 2] = label[h // 3]
            rows[5 * e + 3] = newslot[h]
        else:
            rows[5 * e] = label[h // 3]
            rows[5 * e + 1] = newslot[h]
            rows[5 * e + 2] = label[p // 3]
            rows[5 * e + 3] = newslot[p]
        rows[5 * e + 4] = g.ecol[h]
        e += 1
    _sort_rows(rows, idx, e, 5)
    for i in range(e):
        memcpy(enc + 5 * i, rows + 5 * idx[i], 5 * sizeof(int))
    return parity


cdef struct Work:
    int* sig
    int* idx
    int* tmp
    int* order
    int* newslot
    int* enc
    int* rows
    int* counts


cdef void _search(Graph* g, Work* wk, Best* best, int* col) nogil:
    cdef int nv = g.nv
    cdef int v, c, target = -1, par, cmp
    cdef int* child
    for c in range(nv):
        wk.counts[c] = 0
    for v in range(nv):
        wk.counts[col[v]] += 1
    for c in range(nv):
        if wk.counts[c] > 1:
            target = c
            break
    if target < 0:
        par = _leaf(g, col, wk.order, wk.newslot, wk.enc, wk.rows, wk.idx)
        if best.have:
            cmp = _cmp_row(wk.enc, best.enc, 5 * g.ne)
        else:
            cmp = -1
        if cmp < 0:
            memcpy(best.enc, wk.enc, 5 * g.ne * sizeof(int))
            best.have = 1
            best.parities = 1 << par
        elif cmp == 0:
            best.parities |= 1 << par
        return
    child = <int*> malloc(nv * sizeof(int))
    for v in range(nv):
        if col[v] != target:
            continue
        for c in range(nv):
            child[c] = 2 * col[c] + 1
        child[v] = 2 * col[v]
        _refine(g, child, wk.sig, wk.idx, wk.tmp)
        _search(g, wk, best, child)
    free(child)


def canonical_search(int nv, int ntri, nbr, ecol, vcol):
    """Return ``(encoding, sign)``; see ``_canon_py.canonical_search``."""
    cdef Graph g
    cdef Work wk
    cdef Best best
    cdef int i, ne = 0
    cdef int* col
    if nv == 0:
        return (), 1
    col = <int*> malloc(nv * sizeof(int))
    g.nv = nv
    g.ntri = ntri
    g.nbr = <int*> malloc(3 * nv * sizeof(int))
    g.ecol = <int*> malloc(3 * nv * sizeof(int))
    for i in range(3 * nv):
        g.nbr[i] = nbr[i]
        g.ecol[i] = ecol[i]
    for i in range(3 * nv):
        if g.nbr[i] >= i:
            ne += 1
    g.ne = ne
    for i in range(nv):
        col[i] = vcol[i]
    wk.sig = <int*> malloc(nv * SIGW * sizeof(int))
    wk.idx = <int*> malloc((nv + ne + 1) * sizeof(int))
    wk.tmp = <int*> malloc(2 * nv * sizeof(int))
    wk.order = <int*> malloc(nv * sizeof(int))
    wk.newslot = <int*> malloc(3 * nv * sizeof(int))
    wk.enc = <int*> malloc((5 * ne + 1) * sizeof(int))
    wk.rows = <int*> malloc((5 * ne + 1) * sizeof(int))
    wk.counts = <int*> malloc(2 * nv * sizeof(int))
    best.have = 0
    best.parities = 0
    best.enc = <int*> malloc((5 * ne + 1) * sizeof(int))
    try:
        with nogil:
            _refine(&g, col, wk.sig, wk.idx, wk.tmp)
            _search(&g, &wk, &best, col)
        enc = tuple(
            (best.enc[5 * i], best.enc[5 * i + 1], best.enc[5 * i + 2],
             best.enc[5 * i + 3], best.enc[5 * i + 4])
            for i in range(ne)
        )
        if best.parities == 3:
            sign = 0
        elif best.parities == 2:
            sign = -1
        else:
            sign = 1
        return enc, sign
    finally:
        free(col); free(g.nbr); free(g.ecol)
        free(wk.sig); free(wk.idx); free(wk.tmp); free(wk.order)
        free(wk.newslot); free(wk.enc); free(wk.rows); free(wk.counts)
        free(best.enc)
