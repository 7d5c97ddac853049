"""Independent oracles for the test suite.

Nothing here calls the package's Groebner kernel: polynomials are plain
dicts {(i, j): coefficient} and membership is decided by linear algebra over
F_p on bounded-degree cofactors.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def mono_list(degree):
    return [(i, d - i) for d in range(degree + 1) for i in range(d, -1, -1)]


def as_dict(poly):
    return dict(poly.terms)


def dmul(a, b, p=None):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return _clean(out, p)


def dadd(a, b, p=None, sign=1):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + sign * c
    return _clean(out, p)


def _clean(d, p):
    if p is not None:
        d = {k: c % p for k, c in d.items()}
    return {k: c for k, c in d.items() if c}


def ddeg(a):
    return max((i + j for i, j in a), default=-1)


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def cofactor_membership(f, gens, p, bound=None):
    """Is f = sum c_k g_k with deg c_k <= bound - deg g_k solvable over F_p?

    Default bound is deg f + max deg g (a test heuristic, not a completeness claim).
    """
    gens = [g for g in gens if g]
    if not f:
        return True
    if bound is None:
        bound = max(ddeg(f), 0) + max(ddeg(g) for g in gens)
    columns = []
    for g in gens:
        for m in mono_list(bound - ddeg(g)):
            columns.append(dmul({m: 1}, g, p))
    monos = mono_list(bound + max(ddeg(g) for g in gens))
    index = {m: r for r, m in enumerate(monos)}
    if any(m not in index for m in f):
        return False

    def matrix(extra):
        rows = [[0] * (len(columns) + extra) for _ in monos]
        for c, col in enumerate(columns):
            for m, x in col.items():
                rows[index[m]][c] = x % p
        return rows

    a = matrix(0)
    ab = matrix(1)
    for m, x in f.items():
        ab[index[m]][-1] = x % p
    if not columns:
        return False
    return rank_mod_p(a, p) == rank_mod_p(ab, p)


def all_dicts(p, degree):
    monos = mono_list(degree)
    for coeffs in itertools.product(range(p), repeat=len(monos)):
        yield {m: c for m, c in zip(monos, coeffs) if c}


def is_irreducible_bruteforce(c, p):
    """No product of two non-constant polynomials equals c (up to a unit)."""
    d = ddeg(c)
    if d <= 0:
        return False
    for da in range(1, d // 2 + 1):
        for a in all_dicts(p, da):
            if ddeg(a) != da:
                continue
            for b in all_dicts(p, d - da):
                if ddeg(b) != d - da:
                    continue
                prod = dmul(a, b, p)
                for unit in range(1, p):
                    if _clean({k: x * unit for k, x in prod.items()}, p) == c:
                        return False
    return True


def lex_divide(f, g, p=None):
    """Division of f by a single g in lex order; returns (quotient, remainder)."""

    def lead(d):
        return max(d)

    def inv(x):
        return pow(x, p - 2, p) if p is not None else Fraction(1) / x

    q, r, rest = {}, {}, dict(f)
    lg = lead(g)
    cg = inv(g[lg])
    while rest:
        lm = lead(rest)
        if lm[0] >= lg[0] and lm[1] >= lg[1]:
            t = {(lm[0] - lg[0], lm[1] - lg[1]): _mul(rest[lm], cg, p)}
            q = dadd(q, t, p)
            rest = dadd(rest, dmul(t, g, p), p, sign=-1)
        else:
            r[lm] = rest.pop(lm)
    return q, r


def _mul(a, b, p):
    return a * b % p if p is not None else a * b


def divisible(f, g, p=None):
    return not lex_divide(f, g, p)[1]


def divisible_by_power(f, g, e, p=None):
    """f in (g^e), by e successive exact divisions."""
    for _ in range(e):
        if not f:
            return True
        q, r = lex_divide(f, g, p)
        if r:
            return False
        f = q
    return True


def mod_u_power(f, a):
    return {m: c for m, c in f.items() if m[0] < a}


def escalating_membership(f, gens, p, extra=4):
    """Cofactor search from the default bound up to default + extra.

    The default bound misses memberships whose cofactors need higher degree
    (typical for non-homogeneous unit ideals), so the search is widened the
    same way in both directions before answering "out".
    """
    gens = [g for g in gens if g]
    base = max(ddeg(f), 0) + max(ddeg(g) for g in gens)
    for bound in range(base, base + extra + 1):
        if cofactor_membership(f, gens, p, bound):
            return True, bound
    return False, base + extra
