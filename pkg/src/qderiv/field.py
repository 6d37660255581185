"""Exact arithmetic in GF(p^k) with full discrete-log tables.

The field is realized as GF(p)[x] modulo a primitive polynomial, so the
class of x (written theta) generates the multiplicative group and every
nonzero element is theta^n for a unique n in [0, p^k - 2].  Elements are
coefficient tuples in the power basis, highest degree first, so the digit
rendering reads like a base-p numeral: "0111" is theta^2 + theta + 1 over
GF(2).  Zero carries the dedicated exponent sentinel NEG_INFINITY.

A full exp/log table pair is built at construction; mul, inv and pow are
O(1) exponent arithmetic modulo p^k - 1.  Field order is capped (default
2^20, override via the QDERIV_MAX_FIELD_ORDER environment variable or the
max_order argument) because the dense tables are the whole point of this
representation; no large-field discrete-log machinery is provided.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import (
    DivisionByZero,
    FieldTooLarge,
    MixedFields,
    NotIrreducible,
    NotPrime,
    NotPrimitive,
    ParseError,
    ZeroToZeroPower,
)

DEFAULT_MAX_ORDER = 1 << 20
MAX_ORDER_ENV = "QDERIV_MAX_FIELD_ORDER"


class _NegInfinity:
    """Exponent of the zero element.  Orders below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


NEG_INFINITY = _NegInfinity()


def _max_order(explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_ORDER_ENV)
    return int(env) if env else DEFAULT_MAX_ORDER


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, slots=True)
class FieldElement:
    """One element of GF(p^k): coefficient tuple (highest degree first) plus
    its discrete log, NEG_INFINITY for zero.  Construct via Field methods."""

    field: "Field" = dc_field(repr=False)
    coeffs: tuple[int, ...] = ()
    dlog: object = NEG_INFINITY

    def __str__(self) -> str:
        if self.field.p <= 10:
            return "".join(str(c) for c in self.coeffs)
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"<GF({self.field.order}) {self}>"

    def __bool__(self) -> bool:
        return self.dlog is not NEG_INFINITY

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return self.field.add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self.field.sub(self, other)

    def __neg__(self) -> "FieldElement":
        return self.field.neg(self)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return self.field.mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self.field.mul(self, self.field.inv(other))

    def __pow__(self, m: int) -> "FieldElement":
        return self.field.pow(self, m)


class Field:
    """Immutable GF(p^k) context: modulus, order and both log tables."""

    def __init__(self, p: int, k: int, poly: Optional[Sequence[int]] = None,
                 max_order: Optional[int] = None):
        if not _is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if k < 1:
            raise ParseError(f"extension degree must be >= 1, got {k}")
        order = p ** k
        bound = _max_order(max_order)
        if order > bound:
            raise FieldTooLarge(f"field order {p}^{k} = {order} exceeds bound {bound}")
        if poly is None:
            poly = find_primitive_poly(p, k, max_order=bound)
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != k + 1 or poly[0] != 1:
            raise ParseError(f"modulus must be monic of degree {k}, got {poly}")

        self.p = p
        self.k = k
        self.order = order
        self.poly = poly
        table = _power_table(p, k, poly)
        if table is None:
            if _is_irreducible(poly, p):
                raise NotPrimitive(f"{poly_to_string(poly, p)} is irreducible over "
                                   f"GF({p}) but x does not generate the nonzero elements")
            raise NotIrreducible(f"{poly_to_string(poly, p)} is reducible over GF({p})")
        self.theta_log: list[FieldElement] = [
            FieldElement(self, coeffs, n) for n, coeffs in enumerate(table)
        ]
        self.theta_dlog: dict[tuple[int, ...], int] = {
            el.coeffs: n for n, el in enumerate(self.theta_log)
        }
        self.zero = FieldElement(self, (0,) * k, NEG_INFINITY)
        self.one = self.theta_log[0]

    def __repr__(self) -> str:
        return f"<GF({self.p}^{self.k}) mod {poly_to_string(self.poly, self.p)}>"

    def spec_string(self) -> str:
        return f"p={self.p},k={self.k},poly={poly_to_string(self.poly, self.p)}"

    def _check(self, *elements: FieldElement) -> None:
        for a in elements:
            if not isinstance(a, FieldElement) or a.field is not self:
                raise MixedFields(f"element {a!r} does not belong to {self!r}")

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        """Element from a coefficient sequence, highest degree first."""
        t = tuple(int(c) % self.p for c in coeffs)
        if len(t) != self.k:
            raise ParseError(f"expected {self.k} coefficients, got {len(t)}")
        if not any(t):
            return self.zero
        return FieldElement(self, t, self.theta_dlog[t])

    def from_value(self, value: int) -> FieldElement:
        """Element whose digit string is ``value`` written in base p."""
        digits = []
        v = value
        for _ in range(self.k):
            digits.append(v % self.p)
            v //= self.p
        if v:
            raise ParseError(f"value {value} does not fit in {self.k} base-{self.p} digits")
        return self.element(tuple(reversed(digits)))

    def theta(self, n: int) -> FieldElement:
        """theta^n (n taken modulo p^k - 1)."""
        return self.theta_log[n % (self.order - 1)]

    def elements(self) -> Iterator[FieldElement]:
        """All p^k elements, ascending by digit-string value."""
        for coeffs in product(range(self.p), repeat=self.k):
            yield self.element(coeffs)

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        return self.element(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        return self.element(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        return self.element(tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a, b)
        if not a or not b:
            return self.zero
        return self.theta_log[(a.dlog + b.dlog) % (self.order - 1)]

    def inv(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if not a:
            raise DivisionByZero("zero has no multiplicative inverse")
        return self.theta_log[-a.dlog % (self.order - 1)]

    def pow(self, a: FieldElement, m: int) -> FieldElement:
        self._check(a)
        if not a:
            if m == 0:
                raise ZeroToZeroPower("0**0 is undefined")
            if m < 0:
                raise DivisionByZero("zero to a negative power")
            return self.zero
        return self.theta_log[(a.dlog * m) % (self.order - 1)]

    def dlog(self, a: FieldElement):
        """Exponent n with theta^n = a, or NEG_INFINITY for zero."""
        self._check(a)
        return a.dlog


def make_field(p: int, k: int, poly: Optional[Sequence[int]] = None,
               max_order: Optional[int] = None) -> Field:
    """Build a GF(p^k) context.  With no modulus given, the lexicographically
    smallest primitive monic polynomial (highest-degree coefficients compared
    first) is selected, so construction is reproducible."""
    return Field(p, k, poly, max_order)


def _mul_by_x(coeffs: tuple[int, ...], poly: tuple[int, ...], p: int) -> tuple[int, ...]:
    # shift up one degree, then cancel x^k with the monic modulus
    lead = coeffs[0]
    shifted = coeffs[1:] + (0,)
    if lead == 0:
        return shifted
    return tuple((c - lead * m) % p for c, m in zip(shifted, poly[1:]))


def _power_table(p: int, k: int, poly: tuple[int, ...]) -> Optional[list[tuple[int, ...]]]:
    """Powers of x modulo poly, or None unless x has order exactly p^k - 1.

    That order is only achievable when the quotient ring is a field (any
    reducible modulus has a strictly smaller unit group), so a full cycle
    certifies both irreducibility and primitivity in one pass.
    """
    order = p ** k
    one = (0,) * (k - 1) + (1,)
    table = [one]
    cur = one
    for _ in range(order - 2):
        cur = _mul_by_x(cur, poly, p)
        if cur == one or not any(cur):
            return None
        table.append(cur)
    if _mul_by_x(cur, poly, p) != one:
        return None
    return table


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    # dense coefficient lists, highest degree first; b monic-normalized here
    a = a[:]
    binv = pow(b[0], -1, p)
    q = []
    while len(a) >= len(b) and any(a):
        if a[0] == 0:
            a.pop(0)
            q.append(0)
            continue
        c = a[0] * binv % p
        q.append(c)
        for i in range(len(b)):
            a[i] = (a[i] - c * b[i]) % p
        a.pop(0)
    return q, [c for c in a]


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(poly) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = [1, *tail]
            _, rem = _poly_divmod(list(poly), divisor, p)
            if not any(rem):
                return False
    return True


def find_primitive_poly(p: int, k: int, max_order: Optional[int] = None) -> tuple[int, ...]:
    """Lexicographically smallest monic degree-k polynomial over GF(p) whose
    root x generates the multiplicative group (deterministic)."""
    if not _is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if p ** k > _max_order(max_order):
        raise FieldTooLarge(f"field order {p}^{k} exceeds bound {_max_order(max_order)}")
    for tail in product(range(p), repeat=k):
        poly = (1, *tail)
        if _power_table(p, k, poly) is not None:
            return poly
    raise NotPrimitive(f"no primitive polynomial of degree {k} over GF({p})")  # unreachable


# -- spec strings -----------------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")


def parse_poly_string(text: str, p: int, k: int) -> tuple[int, ...]:
    """Parse "x^4+x+1" or "x^2+3x+2" into a coefficient tuple, constant last."""
    coeffs = [0] * (k + 1)
    for raw in text.split("+"):
        term = raw.strip()
        m = _TERM_RE.match(term)
        if not m or not term:
            raise ParseError(f"bad polynomial term {term!r} in {text!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        elif m.group(3) is not None:
            deg = int(m.group(3))
        else:
            deg = 1
        if deg > k:
            raise ParseError(f"term {term!r} exceeds degree {k} in {text!r}")
        coeffs[k - deg] = (coeffs[k - deg] + coeff) % p
    return tuple(coeffs)


def poly_to_string(poly: Sequence[int], p: int) -> str:
    k = len(poly) - 1
    terms = []
    for i, c in enumerate(poly):
        deg = k - i
        if c == 0:
            continue
        if deg == 0:
            terms.append(str(c))
        else:
            x = "x" if deg == 1 else f"x^{deg}"
            terms.append(x if c == 1 else f"{c}{x}")
    return "+".join(terms) if terms else "0"


def parse_field_spec(text: str, max_order: Optional[int] = None) -> Field:
    """Build a field from a spec string like "p=2,k=4,poly=x^4+x+1"."""
    parts = dict()
    for chunk in text.split(","):
        if "=" not in chunk:
            raise ParseError(f"bad field spec chunk {chunk!r} in {text!r}")
        key, _, value = chunk.partition("=")
        parts[key.strip()] = value.strip()
    unknown = set(parts) - {"p", "k", "poly"}
    if unknown:
        raise ParseError(f"unknown field spec keys {sorted(unknown)} in {text!r}")
    try:
        p = int(parts["p"])
        k = int(parts["k"])
    except (KeyError, ValueError):
        raise ParseError(f"field spec needs integer p= and k=: {text!r}") from None
    poly = parse_poly_string(parts["poly"], p, k) if "poly" in parts else None
    return make_field(p, k, poly, max_order)
