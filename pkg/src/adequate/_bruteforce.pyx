# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled brute-force search for maps A -> GF(q) that move r.

Same walk as ``_bruteforce_py.find_counterexample``.
"""

from libc.stdlib cimport malloc, free


cdef inline long _add(long a, long b, int p, int k) nogil:
    cdef long out = 0, s = 1, x, y
    cdef int i
    if p == 2:
        return a ^ b
    for i in range(k):
        x = a % p
        y = b % p
        a = a // p
        b = b // p
        out += ((x + y) % p) * s
        s *= p
    return out


def find_counterexample(int q, int p, int k, exp, log, int n, ones, adds, muls,
                        long r_code, long one_code):
    """Return (assignment or None, number of partial maps visited)."""
    cdef int order = q - 1
    cdef long *cexp = <long *> malloc(q * sizeof(long))
    cdef long *clog = <long *> malloc(q * sizeof(long))
    cdef long *f = <long *> malloc(n * sizeof(long))
    cdef int nrel = len(ones) + len(adds) + len(muls)
    cdef int *rel = <int *> malloc((4 * nrel + 1) * sizeof(int))
    cdef int *start = <int *> malloc((n + 1) * sizeof(int))
    cdef int d, t, a, b, c, pos, idx
    cdef long visited = 0, lhs, x, y
    cdef bint ok
    try:
        for a in range(len(exp)):
            cexp[a] = exp[a]
        for a in range(q):
            clog[a] = log[a]
        entries = [[] for _ in range(n)]
        for i in ones:
            entries[i].append((0, i, i, i))
        for i, j, kk in adds:
            entries[max(i, j, kk)].append((1, i, j, kk))
        for i, j, kk in muls:
            entries[max(i, j, kk)].append((2, i, j, kk))
        pos = 0
        for d in range(n):
            start[d] = pos
            for e in entries[d]:
                rel[4 * pos] = e[0]
                rel[4 * pos + 1] = e[1]
                rel[4 * pos + 2] = e[2]
                rel[4 * pos + 3] = e[3]
                pos += 1
        start[n] = pos

        d = 0
        f[0] = -1
        with nogil:
            while d >= 0:
                f[d] += 1
                if d == 0 and f[0] == r_code:
                    f[0] += 1
                if f[d] >= q:
                    d -= 1
                    continue
                visited += 1
                ok = True
                for idx in range(start[d], start[d + 1]):
                    t = rel[4 * idx]
                    a = rel[4 * idx + 1]
                    b = rel[4 * idx + 2]
                    c = rel[4 * idx + 3]
                    if t == 0:
                        ok = f[a] == one_code
                    elif t == 1:
                        ok = _add(f[a], f[b], p, k) == f[c]
                    else:
                        x = f[a]
                        y = f[b]
                        if x == 0 or y == 0:
                            lhs = 0
                        else:
                            lhs = cexp[(clog[x] + clog[y]) % order]
                        ok = lhs == f[c]
                    if not ok:
                        break
                if not ok:
                    continue
                if d == n - 1:
                    break
                d += 1
                f[d] = -1
        if d < 0:
            return None, visited
        return [f[i] for i in range(n)], visited
    finally:
        free(cexp)
        free(clog)
        free(f)
        free(rel)
        free(start)
