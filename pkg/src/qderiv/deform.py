"""The s/q-deformed derivative on GF(p^k) and its operator structure.

The shift M_s sends f to f^s; the deformed differential is d_s(f) = f^s - f
and the derivative is the difference quotient

    D(f) = (f^s - f) / (theta^s - theta),

which on powers evaluates to D(theta^n) = [n] * theta^(n-1) with the
q-number [n] = 1 + q + ... + q^(n-1) taken at theta, q = theta^(s-1).
The deformation is only admissible when theta^s != theta, i.e. when
p^k - 1 does not divide s - 1; s is stored normalized into [2, p^k - 1]
since s and s + (p^k - 1) act identically on nonzero elements.

D is additive exactly when the shift is a Frobenius power map (s = p^j with
j % k != 0).  In that case D is a GF(p)-linear operator and the rest of the
apparatus applies: constants (the kernel, cut out by (p^k-1) | n(p^j-1)),
exp elements (fixed points), iterated derivatives, the Fitting split into a
nilpotent and an invertible part, trig-like periodic elements, canonical
antiderivatives, the antiderivative chain with its delta inner product, the
commutators [D, x.] = M and [D, x.]_q = id, the Hamiltonian {D, x.} with
energies [n+1] + [n], the logarithmic derivative and the discrete q-log.
Operations that need linearity raise NotFrobenius for general s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import linalg
from .errors import (
    DivisionByZero,
    FieldTooLargeForExhaustive,
    InvalidDeformation,
    NoExpFunction,
    NotFrobenius,
    NotInSubspace,
    ParseError,
)
from .field import Field, FieldElement

PAIR_BUDGET = 1 << 22  # largest order**2 an exhaustive additivity scan will attempt


@dataclass(frozen=True, slots=True)
class OperatorMatrix:
    """D as a k x k matrix over GF(p) in the power basis, plus its
    structure: kernel, image, and the Fitting decomposition into the
    generalized kernel (nilpotent part) and an invariant complement on
    which D is invertible.  All bases are in reduced echelon form,
    highest-degree coordinate eliminated first.

    Column j holds the image coefficients of theta^(k-1-j), matching the
    highest-degree-first coefficient convention, so that
    entries . coeffs(f) = coeffs(D(f)).
    """

    entries: linalg.Mat
    kernel_basis: tuple[FieldElement, ...]
    image_basis: tuple[FieldElement, ...]
    generalized_kernel_basis: tuple[FieldElement, ...]
    periodic_basis: tuple[FieldElement, ...]
    kernel_pivots: tuple[int, ...] = dc_field(repr=False)


class Deformation:
    """A validated shift exponent s (equivalently q = x^(s-1)) on a field."""

    def __init__(self, field: Field, s: Optional[int] = None, q_exp: Optional[int] = None):
        if (s is None) == (q_exp is None):
            raise ParseError("give exactly one of s or q_exp")
        if s is None:
            s = q_exp + 1
        if s < 2:
            raise InvalidDeformation(f"shift exponent must be >= 2, got {s}")
        m = field.order - 1
        if (s - 1) % m == 0:
            raise InvalidDeformation(
                f"s = {s} fixes theta on GF({field.order}) "
                f"(p^k - 1 = {m} divides s - 1), so the difference quotient degenerates")
        s = s % m if s % m else m  # same map on nonzero elements, s in [2, p^k - 1]
        self.ctx = field
        self.s = s
        self.q_exp = s - 1
        self.j = next((r for r in range(1, field.k) if field.p ** r == s), None)
        self.frobenius = self.j is not None
        self._dtheta_inv = field.inv(field.theta(s) - field.theta(1))
        q_theta = field.theta(self.q_exp)
        table = [field.zero]
        for _ in range(m - 1):
            table.append(field.one + q_theta * table[-1])
        self.q_table: tuple[FieldElement, ...] = tuple(table)
        self._op_matrix: Optional[OperatorMatrix] = None
        self._chain: Optional[tuple[FieldElement, ...]] = None

    def __repr__(self) -> str:
        return f"<Deformation q=x^{self.q_exp} (s={self.s}) on GF({self.ctx.order})>"

    def spec_string(self) -> str:
        return f"q=x^{self.q_exp}" if self.q_exp != 1 else "q=x"

    def label(self) -> str:
        """Column label for reports: D_x, D_x^3, ..."""
        return "D_x" if self.q_exp == 1 else f"D_x^{self.q_exp}"

    def _require_frobenius(self) -> None:
        if not self.frobenius:
            raise NotFrobenius(
                f"s = {self.s} is not a Frobenius power p^j on GF({self.ctx.order}); "
                "the derivative is not linear, so this operation is undefined")

    # -- the basic operators --------------------------------------------------

    def shift(self, f: FieldElement) -> FieldElement:
        """M_s(f) = f^s; zero maps to zero."""
        self.ctx._check(f)
        return self.ctx.pow(f, self.s) if f else self.ctx.zero

    def derivative(self, f: FieldElement) -> FieldElement:
        """(f^s - f) / (theta^s - theta); zero for f = 0."""
        self.ctx._check(f)
        if not f:
            return self.ctx.zero
        return (self.shift(f) - f) * self._dtheta_inv

    def derivative_power(self, f: FieldElement, m: int) -> FieldElement:
        """m-fold derivative; m = 0 is the identity."""
        if m < 0:
            raise ValueError(f"iteration count must be >= 0, got {m}")
        for _ in range(m):
            f = self.derivative(f)
        return f

    def q_number(self, n: int) -> FieldElement:
        """[n] at theta; n is reduced modulo p^k - 1."""
        return self.q_table[n % (self.ctx.order - 1)]

    def q_number_at(self, n: int, y: FieldElement) -> FieldElement:
        """[n] = 1 + q + ... + q^(n-1) evaluated at an arbitrary element y.

        The geometric-sum form stays defined even where q(y) = 1 (it then
        equals n mod p), which the quotient form cannot express.
        """
        self.ctx._check(y)
        if n < 0:
            raise ValueError(f"q-number evaluation needs n >= 0, got {n}")
        qy = self.ctx.pow(y, self.q_exp) if y else self.ctx.zero
        val = self.ctx.zero
        for _ in range(n):
            val = self.ctx.one + qy * val
        return val

    # -- linearity and the kernel ---------------------------------------------

    def is_linear(self, pair_budget: int = PAIR_BUDGET) -> bool:
        """Exhaustively decide whether D(a+b) = D(a) + D(b) for all pairs."""
        order = self.ctx.order
        if order * order > pair_budget:
            raise FieldTooLargeForExhaustive(
                f"{order}^2 pairs exceed the scan budget {pair_budget}; "
                "fall back to the frobenius flag if that is acceptable")
        els = list(self.ctx.elements())
        for a in els:
            da = self.derivative(a)
            for b in els:
                if self.derivative(a + b) != da + self.derivative(b):
                    return False
        return True

    def constants(self) -> set[FieldElement]:
        """Elements with zero derivative: {0} plus the theta^n with
        (p^k - 1) | n(p^j - 1), verified against a direct kernel scan."""
        self._require_frobenius()
        m = self.ctx.order - 1
        w = self.ctx.p ** self.j - 1
        members = {self.ctx.zero} | {self.ctx.theta(n) for n in range(m) if (n * w) % m == 0}
        for f in self.ctx.elements():  # the divisibility criterion must match the kernel
            assert (not self.derivative(f)) == (f in members), f
        return members

    def find_exp(self) -> set[int]:
        """Exponents e with D(theta^e) = theta^e, by direct evaluation."""
        self._require_frobenius()
        return {e for e in range(self.ctx.order - 1)
                if self.derivative(self.ctx.theta(e)) == self.ctx.theta(e)}

    # -- the operator as a matrix ----------------------------------------------

    def operator_matrix(self) -> OperatorMatrix:
        self._require_frobenius()
        if self._op_matrix is not None:
            return self._op_matrix
        ctx, p, k = self.ctx, self.ctx.p, self.ctx.k
        cols = [self.derivative(ctx.theta(k - 1 - j)).coeffs for j in range(k)]
        entries = tuple(tuple(col[r] for col in cols) for r in range(k))
        ker_vecs, ker_pivots = linalg.kernel(entries, p)
        image = linalg.row_space_basis(cols, p)
        fitting = linalg.mat_pow(entries, k, p)
        gen_kernel, _ = linalg.kernel(fitting, p)
        periodic = linalg.row_space_basis(
            [tuple(row[c] for row in fitting) for c in range(k)], p)
        as_els = lambda vecs: tuple(ctx.element(v) for v in vecs)
        self._op_matrix = OperatorMatrix(
            entries=entries,
            kernel_basis=as_els(ker_vecs),
            image_basis=as_els(image),
            generalized_kernel_basis=as_els(gen_kernel),
            periodic_basis=as_els(periodic),
            kernel_pivots=tuple(ker_pivots),
        )
        return self._op_matrix

    def antiderivative(self, f: FieldElement) -> Optional[FieldElement]:
        """The canonical F with D(F) = f, or None when f has none.

        Solutions are unique up to a constant; the canonical one has zero
        coordinate at every kernel pivot position, which picks a single
        representative deterministically.
        """
        self._require_frobenius()
        self.ctx._check(f)
        op = self.operator_matrix()
        v = linalg.solve(op.entries, f.coeffs, self.ctx.p)
        if v is None:
            return None
        v = list(v)
        for vec, piv in zip(op.kernel_basis, op.kernel_pivots):
            c = v[piv]
            if c:
                v = [(a - c * b) % self.ctx.p for a, b in zip(v, vec.coeffs)]
        return self.ctx.element(v)

    def nilpotent_basis(self) -> tuple[FieldElement, ...]:
        """The antiderivative chain b0 = 1, b_{i+1} = antiderivative(b_i),
        continued while an antiderivative exists.  Every link lies in the
        nilpotent part automatically (D is invertible on the complement),
        but the chain may span less than the full generalized kernel; see
        chain_spans_generalized_kernel."""
        self._require_frobenius()
        if self._chain is not None:
            return self._chain
        chain = [self.ctx.one]
        while len(chain) <= self.ctx.k:
            nxt = self.antiderivative(chain[-1])
            if nxt is None:
                break
            chain.append(nxt)
        self._chain = tuple(chain)
        return self._chain

    def chain_spans_generalized_kernel(self) -> bool:
        """Flag whether the antiderivative chain exhausts the nilpotent part."""
        return len(self.nilpotent_basis()) == len(self.operator_matrix().generalized_kernel_basis)

    def inner_product(self, u: FieldElement, v: FieldElement) -> int:
        """Dot product of chain coordinates; delta_{n,m} on the chain itself.

        Defined only on the span of the antiderivative chain; the periodic
        complement (exp and the other trig-like elements) is orthogonal by
        construction and raises NotInSubspace.
        """
        self._require_frobenius()
        self.ctx._check(u)
        self.ctx._check(v)
        chain = self.nilpotent_basis()
        cols = tuple(tuple(b.coeffs[r] for b in chain) for r in range(self.ctx.k))
        coords = []
        for w in (u, v):
            c = linalg.solve(cols, w.coeffs, self.ctx.p)
            if c is None:
                raise NotInSubspace(f"{w!r} is outside the span of the antiderivative chain")
            coords.append(c)
        return sum(a * b for a, b in zip(*coords)) % self.ctx.p

    def classify_trig(self) -> dict[FieldElement, int]:
        """Period of every nonzero element of the invertible part under
        iterated derivatives; nilpotent-part elements do not appear."""
        self._require_frobenius()
        op = self.operator_matrix()
        periods: dict[FieldElement, int] = {}
        for vec in linalg.span_elements([b.coeffs for b in op.periodic_basis],
                                        self.ctx.p, self.ctx.k):
            f = self.ctx.element(vec)
            if not f:
                continue
            cur = self.derivative(f)
            m = 1
            while cur != f:
                cur = self.derivative(cur)
                m += 1
                assert m <= self.ctx.order  # D permutes the invertible part
            periods[f] = m
        return periods

    # -- commutators, Hamiltonian, logarithms -----------------------------------

    def mq_bracket(self, f: FieldElement) -> FieldElement:
        """[D, x.](f) = D(theta f) - theta D(f); equals the shift M(f)."""
        self._require_frobenius()
        self.ctx._check(f)
        theta = self.ctx.theta(1)
        return self.derivative(theta * f) - theta * self.derivative(f)

    def q_bracket(self, f: FieldElement) -> FieldElement:
        """[D, x.]_q(f) = D(theta f) - M(theta) D(f); equals f."""
        self._require_frobenius()
        self.ctx._check(f)
        theta = self.ctx.theta(1)
        return self.derivative(theta * f) - self.shift(theta) * self.derivative(f)

    def hamiltonian(self, f: FieldElement) -> FieldElement:
        """{D, x.}(f) = D(theta f) + theta D(f)."""
        self._require_frobenius()
        self.ctx._check(f)
        theta = self.ctx.theta(1)
        return self.derivative(theta * f) + theta * self.derivative(f)

    def energy(self, n: int) -> FieldElement:
        """[n+1] + [n]; the Hamiltonian eigenvalue on theta^n."""
        self._require_frobenius()
        return self.q_number(n + 1) + self.q_number(n)

    def log_derivative(self, f: FieldElement) -> FieldElement:
        """D(f) / f for nonzero f."""
        self._require_frobenius()
        self.ctx._check(f)
        if not f:
            raise DivisionByZero("logarithmic derivative of zero")
        return self.derivative(f) * self.ctx.inv(f)

    def q_log(self, h: FieldElement) -> Optional[FieldElement]:
        """[n] evaluated at exp when h = exp^n, else None.

        Uses the smallest fixed-point exponent as exp; ld(exp^n) = [n](exp)
        makes this a discrete q-logarithm on the cyclic group <exp>.
        """
        self._require_frobenius()
        self.ctx._check(h)
        exps = sorted(self.find_exp())
        if not exps:
            raise NoExpFunction(f"no exp element for {self!r}")
        e = exps[0]
        exp_el = self.ctx.theta(e)
        m = self.ctx.order - 1
        for n in range(m // math.gcd(e, m) if e else 1):
            if self.ctx.pow(exp_el, n) == h:
                return self.q_number_at(n, exp_el)
        return None


def parse_deformation_spec(field: Field, text: str) -> Deformation:
    """Build a deformation from "q=x^7", "q=x" or "s=8"."""
    key, _, value = text.partition("=")
    key = key.strip()
    value = value.strip()
    if key == "s":
        try:
            return Deformation(field, s=int(value))
        except ValueError as exc:
            if isinstance(exc, InvalidDeformation):
                raise
            raise ParseError(f"bad shift exponent in {text!r}") from None
    if key == "q":
        m = value
        if m == "x":
            return Deformation(field, q_exp=1)
        if m.startswith("x^"):
            try:
                return Deformation(field, q_exp=int(m[2:]))
            except ValueError as exc:
                if isinstance(exc, InvalidDeformation):
                    raise
                raise ParseError(f"bad q power in {text!r}") from None
        raise ParseError(f"q must be x or x^<int>, got {value!r}")
    raise ParseError(f"deformation spec must be q=... or s=..., got {text!r}")
