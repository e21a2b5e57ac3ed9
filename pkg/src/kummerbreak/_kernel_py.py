"""Pure-Python arithmetic kernel for towers of Eisenstein extensions.

An element of a tower level is a flat list of integers modulo ``p**M``.
Level 0 is the unramified ring ``Z/p^M[x]/(res(x))`` (``f`` integers).
Level ``k`` is ``base[w]/(w^n + a_{n-1} w^{n-1} + ... + a_0)``; its flat
list is the concatenation of ``n`` base elements.

A tower descriptor is a list ``levels``:

    levels[0] = (f, mod, res_low)             x^f = -sum(res_low[i] x^i)
    levels[k] = (n, bdim, eis_low)            eis_low[i] is a flat base list

The compiled kernel mirrors these functions exactly.
"""


def mul(levels, k, a, b):
    if k == 0:
        f, mod, res = levels[0]
        if f == 1:
            return [(a[0] * b[0]) % mod]
        t = [0] * (2 * f - 1)
        for i in range(f):
            ai = a[i]
            if ai:
                for j in range(f):
                    t[i + j] += ai * b[j]
        for m in range(2 * f - 2, f - 1, -1):
            c = t[m] % mod
            if c:
                base = m - f
                for i in range(f):
                    t[base + i] -= c * res[i]
        return [c % mod for c in t[:f]]
    n, bd, eis = levels[k]
    mod = levels[0][1]
    zero = [0] * bd
    t = [zero] * (2 * n - 1)
    blocks_b = [b[j * bd:(j + 1) * bd] for j in range(n)]
    nz_b = [j for j in range(n) if any(blocks_b[j])]
    for i in range(n):
        ai = a[i * bd:(i + 1) * bd]
        if not any(ai):
            continue
        for j in nz_b:
            pr = mul(levels, k - 1, ai, blocks_b[j])
            tij = t[i + j]
            t[i + j] = [(x + y) % mod for x, y in zip(tij, pr)]
    for m in range(2 * n - 2, n - 1, -1):
        c = t[m]
        if not any(c):
            continue
        base = m - n
        for i in range(n):
            pr = mul(levels, k - 1, c, eis[i])
            tt = t[base + i]
            t[base + i] = [(x - y) % mod for x, y in zip(tt, pr)]
    out = []
    for blk in t[:n]:
        out.extend(blk)
    return out


def scale(levels, k, c, a):
    """Multiply the level-``k`` element ``a`` by the level-``k-1`` element ``c``."""
    n, bd, _ = levels[k]
    out = []
    for i in range(n):
        out.extend(mul(levels, k - 1, c, a[i * bd:(i + 1) * bd]))
    return out
