"""Univariate polynomials over an exact field as coefficient lists (lowest degree first)."""

from __future__ import annotations

from fractions import Fraction


def trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: list) -> int:
    return len(trim(p)) - 1


def add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    zero = Fraction(0)
    return trim([(p[i] if i < len(p) else zero) + (q[i] if i < len(q) else zero) for i in range(n)])


def scale(p: list, c) -> list:
    return trim([c * x for x in p])


def sub(p: list, q: list) -> list:
    return add(p, scale(q, -1))


def mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def derivative(p: list) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: list, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_poly(p: list, q: list) -> tuple[list, list]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    if len(r) < len(q):
        return [], r
    out = [Fraction(0)] * (len(r) - len(q) + 1)
    lead = q[-1]
    r = list(r)
    while r and len(r) >= len(q):
        shift = len(r) - len(q)
        c = r[-1] / lead
        out[shift] = c
        for i, x in enumerate(q):
            r[i + shift] = r[i + shift] - c * x
        r = trim(r[:-1])
    return trim(out), r


def monic(p: list) -> list:
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [x / lead for x in p]


def gcd(p: list, q: list) -> list:
    a, b = trim(p), trim(q)
    while b:
        _, rem = divmod_poly(a, b)
        a, b = b, rem
    return monic(a)


def squarefree_decomposition(p: list) -> list[list]:
    """Yun's algorithm: monic ``f_1, f_2, ...`` with ``p = lc * prod f_i**i``, each f_i squarefree."""
    p = monic(p)
    if len(p) <= 1:
        return []
    factors = []
    d = derivative(p)
    a = gcd(p, d)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(d, a)
    dd = sub(c, derivative(b))
    while degree(b) > 0:
        a = gcd(b, dd)
        factors.append(a)
        b, _ = divmod_poly(b, a)
        c, _ = divmod_poly(dd, a)
        dd = sub(c, derivative(b))
    while factors and degree(factors[-1]) == 0:
        factors.pop()
    return factors


def primitive_integer(p: list) -> list[int]:
    """Scale a rational polynomial to coprime integer coefficients."""
    import math

    p = [Fraction(x) for x in trim(p)]
    den = 1
    for x in p:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in p]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return [x // g for x in ints] if g else ints
