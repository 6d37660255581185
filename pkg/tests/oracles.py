"""Independent brute-force oracles used to freeze expected values.

Everything here works on raw coefficient tuples (highest degree first)
with dense polynomial arithmetic modulo the field polynomial -- no
discrete-log tables, so results are an independent route from the
package's own arithmetic.
"""

from itertools import product


def pmul(a, b, modulus, p):
    k = len(modulus) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                res[i + j] = (res[i + j] + ca * cb) % p
    while len(res) > k:
        lead = res[0]
        if lead:
            for i in range(len(modulus)):
                res[i] = (res[i] - lead * modulus[i]) % p
        res = res[1:]
    while len(res) < k:
        res = [0] + res
    return tuple(res)


def ppow(a, e, modulus, p):
    k = len(modulus) - 1
    r = (0,) * (k - 1) + (1,)
    base = a
    while e:
        if e & 1:
            r = pmul(r, base, modulus, p)
        base = pmul(base, base, modulus, p)
        e >>= 1
    return r


def psub(a, b, p):
    return tuple((x - y) % p for x, y in zip(a, b))


def pinv(a, modulus, p):
    order = p ** (len(modulus) - 1)
    return ppow(a, order - 2, modulus, p)


def x_element(modulus, p):
    k = len(modulus) - 1
    if k == 1:
        return ((-modulus[1]) % p,)
    return (0,) * (k - 2) + (1, 0)


def oracle_derivative(coeffs, s, modulus, p):
    """(f^s - f) / (x^s - x) via plain polynomial arithmetic."""
    k = len(modulus) - 1
    zero = (0,) * k
    x = x_element(modulus, p)
    den = psub(ppow(x, s, modulus, p), x, p)
    assert den != zero, "degenerate deformation"
    num = psub(ppow(coeffs, s, modulus, p), coeffs, p)
    return pmul(num, pinv(den, modulus, p), modulus, p)


def oracle_power_table(modulus, p):
    """Powers of x mod the modulus, or None if x does not have full order."""
    k = len(modulus) - 1
    order = p ** k
    one = (0,) * (k - 1) + (1,)
    x = x_element(modulus, p)
    pows = [one]
    cur = one
    for _ in range(order - 2):
        cur = pmul(cur, x, modulus, p)
        if cur == one or not any(cur):
            return None
        pows.append(cur)
    if pmul(cur, x, modulus, p) != one:
        return None
    if len(set(pows)) != order - 1:
        return None
    return pows


def oracle_primitive_polys(p, k):
    """All primitive monic degree-k polynomials, in lex (high-first) order."""
    out = []
    for tail in product(range(p), repeat=k):
        modulus = (1, *tail)
        if oracle_power_table(modulus, p) is not None:
            out.append(modulus)
    return out


def oracle_factorize(n):
    """Plain trial-division factorization (fine for small n)."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)
