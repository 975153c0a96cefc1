"""Pure-Python brute-force search for maps A -> GF(q) that move r.

Mirror of ``_bruteforce.pyx``; both walk the maps f in lexicographic order of
(f(x_1), ..., f(x_n)) over element codes and return the first one satisfying
every relation with f(x_1) != r.
"""


def _by_depth(n, ones, adds, muls):
    levels = [[] for _ in range(n)]
    for i in ones:
        levels[i].append((0, i, i, i))
    for i, j, k in adds:
        levels[max(i, j, k)].append((1, i, j, k))
    for i, j, k in muls:
        levels[max(i, j, k)].append((2, i, j, k))
    return levels


def find_counterexample(q, p, k, exp, log, n, ones, adds, muls, r_code, one_code):
    """Return (assignment or None, number of partial maps visited)."""
    order = q - 1
    xor = p == 2

    def add(a, b):
        if xor:
            return a ^ b
        out, s = 0, 1
        for _ in range(k):
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * s
            s *= p
        return out

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return exp[(log[a] + log[b]) % order]

    levels = _by_depth(n, ones, adds, muls)
    f = [0] * n
    visited = 0
    d = 0
    f[0] = -1
    while d >= 0:
        f[d] += 1
        if d == 0 and f[0] == r_code:
            f[0] += 1
        if f[d] >= q:
            d -= 1
            continue
        visited += 1
        ok = True
        for t, i, j, kk in levels[d]:
            if t == 0:
                ok = f[i] == one_code
            elif t == 1:
                ok = add(f[i], f[j]) == f[kk]
            else:
                ok = mul(f[i], f[j]) == f[kk]
            if not ok:
                break
        if not ok:
            continue
        if d == n - 1:
            return list(f), visited
        d += 1
        f[d] = -1
    return None, visited
