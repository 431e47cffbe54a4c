"""Matrices with polynomial entries over k[a_0..a_n] and exact rank/kernel
over the fraction field k(a_0..a_n).

Entries arising in this package have total degree <= 1 (coefficients of a
generic linear form), which keeps fraction-free Gaussian elimination cheap:
after k steps the entries are k x k minors, of degree <= k.

The rank routine has two paths:

* fast path -- substitute random scalars for the a_i and take the best rank
  over ``confidence`` draws.  Over QQ the draws live in F_q for a fixed
  prime q > 2**30; over a small prime field they can only live in the field
  itself, so the fast path is advisory there.
* exact path -- fraction-free (Bareiss) elimination over the polynomial
  ring.  Always authoritative; always run when the fast path lands within 1
  of min(rows, cols), when requested explicitly, or when the base field is
  too small for trustworthy random specialization.
"""

from __future__ import annotations

from typing import Sequence

from .fields import BIG_PRIME, GF, QQ, PrimeField
from .matrix import ExactMatrix


class MPoly:
    """Sparse multivariate polynomial: {exponent tuple -> nonzero coeff}.

    Immutable by convention. The monomial order used for leading terms is
    lex on exponent tuples (first variable heaviest).
    """

    __slots__ = ("field", "nvars", "coeffs")

    def __init__(self, field, nvars: int, coeffs: dict):
        self.field = field
        self.nvars = nvars
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field, nvars: int) -> "MPoly":
        return cls(field, nvars, {})

    @classmethod
    def const(cls, field, nvars: int, c) -> "MPoly":
        c = field(c)
        if field.is_zero(c):
            return cls.zero(field, nvars)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs or (len(self.coeffs) == 1 and (0,) * self.nvars in self.coeffs)

    def constant_value(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[(0,) * self.nvars]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def leading(self):
        """(exponent, coeff) of the lex-leading term."""
        e = max(self.coeffs)
        return e, self.coeffs[e]

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def add(self, other: "MPoly") -> "MPoly":
        f = self.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = f.add(out.get(e, f.zero), c)
            if f.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(f, self.nvars, out)

    def neg(self) -> "MPoly":
        f = self.field
        return MPoly(f, self.nvars, {e: f.neg(c) for e, c in self.coeffs.items()})

    def sub(self, other: "MPoly") -> "MPoly":
        return self.add(other.neg())

    def mul(self, other: "MPoly") -> "MPoly":
        f = self.field
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(out.get(e, f.zero), f.mul(c1, c2))
                if f.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(f, self.nvars, out)

    def scale(self, c) -> "MPoly":
        f = self.field
        if f.is_zero(c):
            return MPoly.zero(f, self.nvars)
        return MPoly(f, self.nvars, {e: f.mul(c, v) for e, v in self.coeffs.items()})

    def try_div(self, other: "MPoly") -> "MPoly | None":
        """Exact quotient self/other, or None if the division is not exact."""
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return MPoly.zero(f, self.nvars)
        if other.is_constant():
            return self.scale(f.inv(other.constant_value()))
        rem = dict(self.coeffs)
        lead_e, lead_c = other.leading()
        inv_lead = f.inv(lead_c)
        quo: dict = {}
        while rem:
            e = max(rem)
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if any(x < 0 for x in qe):
                return None
            qc = f.mul(rem[e], inv_lead)
            quo[qe] = qc
            for oe, oc in other.coeffs.items():
                te = tuple(a + b for a, b in zip(qe, oe))
                s = f.sub(rem.get(te, f.zero), f.mul(qc, oc))
                if f.is_zero(s):
                    rem.pop(te, None)
                else:
                    rem[te] = s
        return MPoly(f, self.nvars, quo)

    def exact_div(self, other: "MPoly") -> "MPoly":
        q = self.try_div(other)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return q

    def evaluate(self, point: Sequence, field=None):
        """Evaluate at scalars; ``field`` may differ from the coefficient field
        (coefficients are coerced, used for mod-q specialization of QQ input)."""
        f = self.field if field is None else field
        acc = f.zero
        for e, c in self.coeffs.items():
            term = f(c) if field is not None else c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = f.mul(term, x)
            acc = f.add(acc, term)
        return acc

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            mono = "*".join(f"a{i}^{k}" if k > 1 else f"a{i}" for i, k in enumerate(e) if k)
            c = self.field.to_str(self.coeffs[e])
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


class LinearPolyMatrix:
    """Matrix with MPoly entries in the a-variables (degree <= 1 on input)."""

    __slots__ = ("field", "nvars", "rows", "cols", "data")

    def __init__(self, field, nvars: int, data):
        self.field = field
        self.nvars = nvars
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0

    @classmethod
    def from_constant(cls, m: ExactMatrix, nvars: int) -> "LinearPolyMatrix":
        f = m.field
        return cls(f, nvars, [[MPoly.const(f, nvars, x) for x in row] for row in m.data])

    def compose_left(self, q: ExactMatrix) -> "LinearPolyMatrix":
        """q @ self, with q a constant matrix over the same base field."""
        if q.cols != self.rows:
            raise ValueError("shape mismatch in compose_left")
        f = self.field
        out = []
        for i in range(q.rows):
            row = []
            for j in range(self.cols):
                acc = MPoly.zero(f, self.nvars)
                for k in range(self.rows):
                    c = q.data[i][k]
                    if not f.is_zero(c):
                        acc = acc.add(self.data[k][j].scale(c))
                row.append(acc)
            out.append(row)
        return LinearPolyMatrix(f, self.nvars, out)

    def specialize(self, point: Sequence, field=None) -> ExactMatrix:
        f = self.field if field is None else field
        return ExactMatrix(
            f, [[e.evaluate(point, field=field) for e in row] for row in self.data], cols=self.cols
        )

    def max_total_degree(self) -> int:
        return max((e.total_degree() for row in self.data for e in row), default=0)


def poly_row_echelon(m: LinearPolyMatrix):
    """Fraction-free (Bareiss) row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` is the echelonized list of
    MPoly rows and ``pivots`` the pivot column indices; the rank is
    ``len(pivots)``. Pivoting is deterministic (first nonzero in a
    row-major scan), divisions are exact by the Bareiss identity.
    """
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    f = m.field
    prev = MPoly.const(f, m.nvars, f.one)
    piv = []
    pr = 0
    for pc in range(ncols):
        sel = -1
        for i in range(pr, nrows):
            if not rows[i][pc].is_zero():
                sel = i
                break
        if sel < 0:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        pivot = rows[pr][pc]
        for i in range(pr + 1, nrows):
            head = rows[i][pc]
            for j in range(ncols):
                if j == pc:
                    continue
                num = pivot.mul(rows[i][j]).sub(head.mul(rows[pr][j]))
                rows[i][j] = num.exact_div(prev)
            rows[i][pc] = MPoly.zero(f, m.nvars)
        prev = pivot
        piv.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, tuple(piv)


def poly_rank(m: LinearPolyMatrix) -> int:
    return len(poly_row_echelon(m)[1])


def rank_over_function_field(m: LinearPolyMatrix, confidence: int = 8, exact: bool = False) -> int:
    """Rank of ``m`` over the fraction field k(a_0..a_n).

    ``confidence`` random specializations give a lower bound (the fast
    path); the exact Bareiss path is run whenever it could matter and its
    answer wins.
    """
    if confidence < 1:
        raise ValueError("confidence must be >= 1")
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.max_total_degree() == 0:
        return m.specialize((0,) * m.nvars).rank()

    base = m.field
    small_field = isinstance(base, PrimeField) and base.p < 2**30
    import random

    rng = random.Random(0x5EED)
    best = 0
    bound = min(m.rows, m.cols)
    for _ in range(confidence):
        if isinstance(base, PrimeField):
            point = [rng.randrange(base.p) for _ in range(m.nvars)]
            spec = m.specialize(point)
        else:
            fq = GF(BIG_PRIME)
            try:
                point = [fq(rng.randrange(fq.p)) for _ in range(m.nvars)]
                spec = m.specialize(point, field=fq)
            except ZeroDivisionError:
                continue
        best = max(best, spec.rank())
        if best == bound and not small_field:
            break

    if exact or small_field or best >= bound - 1:
        return poly_rank(m)
    return best


class FracPoly:
    """Lazy fraction of MPolys (no gcd reduction beyond cheap exact division)."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.const(num.field, num.nvars, num.field.one)
        else:
            num, den = _cancel_content(num, den)
            q = num.try_div(den)
            if q is not None:
                num, den = q, MPoly.const(num.field, num.nvars, num.field.one)
            elif den.is_constant():
                num = num.scale(num.field.inv(den.constant_value()))
                den = MPoly.const(num.field, num.nvars, num.field.one)
            else:
                # normalize the denominator's leading coefficient to 1
                _, lc = den.leading()
                if not den.field.eq(lc, den.field.one):
                    inv = den.field.inv(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def constant_value(self):
        """Field constant c with self == c, or None if not constant."""
        if self.num.is_zero():
            return self.num.field.zero
        en, cn = self.num.leading()
        ed, cd = self.den.leading()
        if en != ed:
            return None
        c = self.num.field.div(cn, cd)
        if self.num.sub(self.den.scale(c)).is_zero():
            return c
        return None


def _cancel_content(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    """Cancel the common monomial factor of numerator and denominator."""

    def content(p: MPoly):
        it = iter(p.coeffs)
        acc = list(next(it))
        for e in it:
            for i, v in enumerate(e):
                if v < acc[i]:
                    acc[i] = v
            if not any(acc):
                break
        return tuple(acc)

    cn, cd = content(num), content(den)
    common = tuple(min(a, b) for a, b in zip(cn, cd))
    if not any(common):
        return num, den
    shift = lambda p: MPoly(
        p.field, p.nvars, {tuple(a - b for a, b in zip(e, common)): c for e, c in p.coeffs.items()}
    )
    return shift(num), shift(den)


class _FracOps:
    """Field-ops adapter so generic elimination can run over k(a_0..a_n)."""

    def __init__(self, field, nvars: int):
        self.base = field
        self.nvars = nvars
        one = MPoly.const(field, nvars, field.one)
        self.zero = FracPoly(MPoly.zero(field, nvars), one)
        self.one = FracPoly(one, one)

    def is_zero(self, a: FracPoly) -> bool:
        return a.is_zero()

    def eq(self, a: FracPoly, b: FracPoly) -> bool:
        return a.num.mul(b.den).sub(b.num.mul(a.den)).is_zero()

    def add(self, a, b):
        return FracPoly(a.num.mul(b.den).add(b.num.mul(a.den)), a.den.mul(b.den))

    def sub(self, a, b):
        return FracPoly(a.num.mul(b.den).sub(b.num.mul(a.den)), a.den.mul(b.den))

    def mul(self, a, b):
        return FracPoly(a.num.mul(b.num), a.den.mul(b.den))

    def div(self, a, b):
        if b.is_zero():
            raise ZeroDivisionError
        return FracPoly(a.num.mul(b.den), a.den.mul(b.num))

    def neg(self, a):
        return FracPoly(a.num.neg(), a.den)

    def inv(self, a):
        return self.div(self.one, a)


def function_field_kernel(m: LinearPolyMatrix):
    """Canonical right-kernel basis of ``m`` over k(a_0..a_n).

    Returns ``(vectors, ops)`` where ``vectors`` is a list of kernel basis
    columns (lists of FracPoly) in reduced column echelon form (first
    nonzero entry of each column equals 1, pivot rows increasing), and
    ``ops`` the fraction-field adapter used.
    """
    from .matrix import _generic_rref

    f = m.field
    ops = _FracOps(f, m.nvars)
    rows, piv = poly_row_echelon(m)
    pivset = set(piv)
    free = [j for j in range(m.cols) if j not in pivset]
    one_p = MPoly.const(f, m.nvars, f.one)

    def frac(p: MPoly) -> FracPoly:
        return FracPoly(p, one_p)

    vectors = []
    for fc in free:
        x: list = [ops.zero] * m.cols
        x[fc] = ops.one
        for k in range(len(piv) - 1, -1, -1):
            pc = piv[k]
            acc = ops.zero
            for c in range(pc + 1, m.cols):
                if not x[c].is_zero() and not rows[k][c].is_zero():
                    acc = ops.add(acc, ops.mul(frac(rows[k][c]), x[c]))
            x[pc] = ops.neg(ops.div(acc, frac(rows[k][pc])))
        vectors.append(x)

    if not vectors:
        return [], ops
    # canonicalize: reduced column echelon over the fraction field
    mat_rows = [list(col) for col in vectors]  # treat columns as rows
    _generic_rref(mat_rows, ops)
    vectors = [row for row in mat_rows if not all(v.is_zero() for v in row)]
    return vectors, ops
