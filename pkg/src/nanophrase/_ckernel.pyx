# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled state-sum kernel; same interface as ``_pykernel``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset


cdef struct Work:
    int n
    int maxc
    int *buf
    int *nbuf
    int *clen
    int *nclen
    int *proj
    int *cnt
    int *mark


cdef int _alloc(Work *w, int n, int k) nogil:
    w.n = n
    w.maxc = n + k + 1
    cdef int m = 2 * n + 1
    w.buf = <int *> malloc(m * sizeof(int))
    w.nbuf = <int *> malloc(m * sizeof(int))
    w.clen = <int *> malloc(w.maxc * sizeof(int))
    w.nclen = <int *> malloc(w.maxc * sizeof(int))
    w.proj = <int *> malloc((n + 1) * sizeof(int))
    w.cnt = <int *> malloc((n + 1) * sizeof(int))
    w.mark = <int *> malloc((n + 1) * sizeof(int))
    if not (w.buf and w.nbuf and w.clen and w.nclen and w.proj and w.cnt and w.mark):
        return -1
    memset(w.cnt, 0, (n + 1) * sizeof(int))
    return 0


cdef void _release(Work *w) nogil:
    free(w.buf); free(w.nbuf); free(w.clen); free(w.nclen)
    free(w.proj); free(w.cnt); free(w.mark)


cdef inline void _swap(Work *w) nogil:
    cdef int *tmp = w.buf
    w.buf = w.nbuf
    w.nbuf = tmp
    tmp = w.clen
    w.clen = w.nclen
    w.nclen = tmp


cdef void _twist(Work *w, int *src, int length) nogil:
    cdef int i
    for i in range(length):
        w.cnt[src[i]] += 1
    for i in range(length):
        if w.cnt[src[i]] == 1:
            w.proj[src[i]] = -w.proj[src[i]]
    for i in range(length):
        w.cnt[src[i]] = 0


cdef int _delete(Work *w, int *ncomp, int a) nogil:
    """Delete letter ``a``; returns -1 if it does not occur twice."""
    cdef int c, i, off = 0, c1 = -1, i1 = -1, o1 = 0, c2 = -1, i2 = -1, o2 = 0
    for c in range(ncomp[0]):
        for i in range(w.clen[c]):
            if w.buf[off + i] == a:
                if c1 < 0:
                    c1 = c; i1 = i; o1 = off
                else:
                    c2 = c; i2 = i; o2 = off
        off += w.clen[c]
    if c2 < 0:
        return -1
    cdef bint keep = w.mark[a] == w.proj[a]
    cdef int src = 0, dst = 0, nc = 0, j, len1, lx, ly
    cdef int *x
    for c in range(ncomp[0]):
        len1 = w.clen[c]
        if c == c1 and c1 == c2:
            # w = u A x A v  ->  x = w[i1+1:i2], y = v u
            lx = i2 - i1 - 1
            ly = len1 - 2 - lx
            x = w.buf + o1 + i1 + 1
            if keep:
                memcpy(w.nbuf + dst, x, lx * sizeof(int))
                dst += lx
                w.nclen[nc] = lx; nc += 1
            else:
                _twist(w, x, lx)
                for j in range(lx):
                    w.nbuf[dst + j] = x[lx - 1 - j]
                dst += lx
            memcpy(w.nbuf + dst, w.buf + o1 + i2 + 1, (len1 - i2 - 1) * sizeof(int))
            dst += len1 - i2 - 1
            memcpy(w.nbuf + dst, w.buf + o1, i1 * sizeof(int))
            dst += i1
            w.nclen[nc] = ly if keep else lx + ly
            nc += 1
        elif c == c1:
            # x = w1[i1+1:] + w1[:i1], followed by y from component c2
            lx = len1 - 1
            memcpy(w.nbuf + dst, w.buf + o1 + i1 + 1, (len1 - i1 - 1) * sizeof(int))
            memcpy(w.nbuf + dst + len1 - i1 - 1, w.buf + o1, i1 * sizeof(int))
            if not keep:
                _twist(w, w.nbuf + dst, lx)
                for j in range(lx // 2):
                    i = w.nbuf[dst + j]
                    w.nbuf[dst + j] = w.nbuf[dst + lx - 1 - j]
                    w.nbuf[dst + lx - 1 - j] = i
            dst += lx
            ly = w.clen[c2] - 1
            memcpy(w.nbuf + dst, w.buf + o2 + i2 + 1, (w.clen[c2] - i2 - 1) * sizeof(int))
            memcpy(w.nbuf + dst + w.clen[c2] - i2 - 1, w.buf + o2, i2 * sizeof(int))
            dst += ly
            w.nclen[nc] = lx + ly
            nc += 1
        elif c == c2:
            pass
        else:
            memcpy(w.nbuf + dst, w.buf + src, len1 * sizeof(int))
            dst += len1
            w.nclen[nc] = len1
            nc += 1
        src += len1
    ncomp[0] = nc
    _swap(w)
    return 0


cdef int _load(Work *w, int *word, int *lens, int k, int *proj, int total) nogil:
    memcpy(w.buf, word, total * sizeof(int))
    memcpy(w.clen, lens, k * sizeof(int))
    memcpy(w.proj, proj, w.n * sizeof(int))
    return k


cdef int _run(Work *w, int *word, int *lens, int k, int *proj, int total,
              int *order) nogil:
    cdef int ncomp = _load(w, word, lens, k, proj, total)
    cdef int step, c, remaining = total
    if order != NULL:
        for step in range(w.n):
            if _delete(w, &ncomp, order[step]) < 0:
                return -1
        return ncomp
    while remaining > 0:
        if _delete(w, &ncomp, w.buf[0]) < 0:
            return -1
        remaining -= 2
    return ncomp


cdef void _flatten(comps, int **word, int **lens, int *k, int *total) except *:
    k[0] = len(comps)
    total[0] = sum(len(c) for c in comps)
    word[0] = <int *> malloc((total[0] + 1) * sizeof(int))
    lens[0] = <int *> malloc((k[0] + 1) * sizeof(int))
    cdef int i = 0, ci = 0
    for comp in comps:
        lens[0][ci] = len(comp)
        ci += 1
        for a in comp:
            word[0][i] = a
            i += 1


def reduce_loops(comps, proj, mark, order=None):
    cdef int n = len(proj), k, total, i, res
    cdef int *word
    cdef int *lens
    cdef int *cproj
    cdef int *corder = NULL
    cdef Work w
    _flatten(comps, &word, &lens, &k, &total)
    if total != 2 * n:
        free(word); free(lens)
        raise ValueError("every letter must occur exactly twice")
    if _alloc(&w, n, k) < 0:
        free(word); free(lens)
        raise MemoryError()
    cproj = <int *> malloc((n + 1) * sizeof(int))
    for i in range(n):
        cproj[i] = proj[i]
        w.mark[i] = mark[i]
    if order is not None:
        corder = <int *> malloc((n + 1) * sizeof(int))
        for i in range(n):
            corder[i] = order[i]
    res = _run(&w, word, lens, k, cproj, total, corder)
    free(word); free(lens); free(cproj); free(corder)
    _release(&w)
    if res < 0:
        raise ValueError("bad deletion order")
    return res


def state_counts(comps, proj, int n, long long start=0, stop=None):
    cdef long long cstop = ((<long long> 1) << n) if stop is None else stop
    cdef int k, total, i, loops, width, kp
    cdef long long s
    cdef int *word
    cdef int *lens
    cdef int *cproj
    cdef long long *counts
    cdef Work w
    _flatten(comps, &word, &lens, &k, &total)
    if total != 2 * n or n > 62:
        free(word); free(lens)
        raise ValueError("bad phrase for state enumeration")
    width = n + k + 1
    if _alloc(&w, n, k) < 0:
        free(word); free(lens)
        raise MemoryError()
    cproj = <int *> malloc((n + 1) * sizeof(int))
    counts = <long long *> malloc((n + 1) * width * sizeof(long long))
    memset(counts, 0, (n + 1) * width * sizeof(long long))
    for i in range(n):
        cproj[i] = proj[i]
    with nogil:
        for s in range(start, cstop):
            kp = n
            for i in range(n):
                if (s >> i) & 1:
                    w.mark[i] = -1
                    kp -= 1
                else:
                    w.mark[i] = 1
            loops = _run(&w, word, lens, k, cproj, total, NULL)
            counts[kp * width + loops] += 1
    result = [[counts[kp * width + loops] for loops in range(width)] for kp in range(n + 1)]
    free(word); free(lens); free(cproj); free(counts)
    _release(&w)
    return result
