"""Graded pieces of S = k[x_0..x_n]: monomial bases, multiplication maps,
degree pieces of ideals, and colon operations.

The canonical monomial order is fixed here once and for all: the basis of
S_d lists exponent vectors in decreasing lexicographic order with x_0
heaviest (so x_0^d is position 0 and x_n^d is last). Every echelon form,
quotient basis and determinant sign downstream derives from this order.

Subspaces of S_d are stored in reduced column echelon form, so subspace
equality is matrix equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactalg import ExactMatrix, LinearPolyMatrix, MPoly, column_echelon, function_field_kernel
from .utils import parallel_map


class DegreeTooLow(ValueError):
    """A generator has degree larger than the requested graded piece."""


class ZeroForm(ValueError):
    """The zero linear form cannot be used for a colon."""


Monomial = tuple  # exponent vector of length n+1


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_str(m: Monomial) -> str:
    parts = [f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e]
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[Monomial, ...]:
    """All C(d+n, n) degree-d monomials in x_0..x_n, in canonical order."""
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")

    def gen(nvars: int, deg: int):
        if nvars == 1:
            yield (deg,)
            return
        for e in range(deg, -1, -1):
            for rest in gen(nvars - 1, deg - e):
                yield (e,) + rest

    return tuple(gen(n + 1, d))


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(n, d))}


def dim_S(n: int, d: int) -> int:
    return len(monomial_basis(n, d))


class GradedSubspace:
    """Subspace of S_d, canonically echelonized.

    ``basis`` has one row per monomial of S_d and one column per basis
    element, in reduced column echelon form.
    """

    __slots__ = ("n", "d", "basis")

    def __init__(self, n: int, d: int, basis: ExactMatrix, *, canonical: bool = False):
        if basis.rows != dim_S(n, d):
            raise ValueError("basis row count does not match dim S_d")
        self.n = n
        self.d = d
        self.basis = basis if canonical else column_echelon(basis)

    @classmethod
    def from_vectors(cls, n: int, d: int, vectors, field) -> "GradedSubspace":
        D = dim_S(n, d)
        if not vectors:
            return cls(n, d, ExactMatrix(field, [[] for _ in range(D)], cols=0), canonical=True)
        return cls(n, d, ExactMatrix.from_cols(field, vectors))

    @classmethod
    def zero(cls, n: int, d: int, field) -> "GradedSubspace":
        return cls.from_vectors(n, d, [], field)

    @classmethod
    def full(cls, n: int, d: int, field) -> "GradedSubspace":
        return cls(n, d, ExactMatrix.identity(field, dim_S(n, d)), canonical=True)

    @classmethod
    def from_monomials(cls, n: int, d: int, monos: Sequence[Monomial], field) -> "GradedSubspace":
        idx = monomial_index(n, d)
        D = dim_S(n, d)
        vecs = []
        for m in monos:
            v = [field.zero] * D
            v[idx[m]] = field.one
            vecs.append(v)
        return cls.from_vectors(n, d, vecs, field)

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def ambient_dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and (self.n, self.d) == (other.n, other.d)
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.n, self.d, self.basis))

    def __repr__(self):
        return f"GradedSubspace(n={self.n}, d={self.d}, dim={self.dim}/{self.ambient_dim})"

    def contains_matrix(self, m: ExactMatrix) -> bool:
        """Do all columns of m lie in the subspace?"""
        if m.cols == 0:
            return True
        return self.basis.hstack(m).rank() == self.dim

    def contains(self, other: "GradedSubspace") -> bool:
        return self.contains_matrix(other.basis)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        q = annihilator_rows(self).vstack(annihilator_rows(other))
        return GradedSubspace(self.n, self.d, q.right_kernel(), canonical=True)

    def to_json(self) -> dict:
        f = self.field
        return {
            "n": self.n,
            "d": self.d,
            "field": f.name,
            "rows": self.basis.rows,
            "cols": self.basis.cols,
            "entries": [[f.to_str(x) for x in row] for row in self.basis.data],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradedSubspace":
        from .exactalg import field_from_name

        f = field_from_name(obj["field"])
        n, d = int(obj["n"]), int(obj["d"])
        rows = [[f.from_str(x) for x in row] for row in obj["entries"]]
        m = ExactMatrix(f, rows, cols=int(obj["cols"]))
        return cls(n, d, m)

    def monomial_support(self) -> list[Monomial] | None:
        """If the subspace is spanned by monomials, return them; else None."""
        basis = monomial_basis(self.n, self.d)
        monos = []
        f = self.field
        for col in range(self.basis.cols):
            nz = [i for i in range(self.basis.rows) if not f.is_zero(self.basis.data[i][col])]
            if len(nz) != 1 or not f.eq(self.basis.data[nz[0]][col], f.one):
                return None
            monos.append(basis[nz[0]])
        return monos


def annihilator_rows(space: GradedSubspace) -> ExactMatrix:
    """Matrix whose rows span the functionals vanishing on the subspace.

    Composing any map into S_d with these rows realizes the quotient
    S_d / space up to isomorphism, which is all the colon computations need.
    """
    return space.basis.transpose().right_kernel().transpose()


def multiplication_map(n: int, d: int, coeffs: Sequence, field) -> ExactMatrix:
    """Matrix of multiplication by a linear form, S_d -> S_{d+1}.

    ``coeffs`` lists the n+1 coefficients of the form in x_0..x_n.
    """
    if len(coeffs) != n + 1:
        raise ValueError("linear form needs n+1 coefficients")
    src = monomial_basis(n, d)
    tgt_idx = monomial_index(n, d + 1)
    rows = len(tgt_idx)
    out = [[field.zero] * len(src) for _ in range(rows)]
    for j, m in enumerate(src):
        for i, c in enumerate(coeffs):
            c = field(c)
            if field.is_zero(c):
                continue
            e = list(m)
            e[i] += 1
            r = tgt_idx[tuple(e)]
            out[r][j] = field.add(out[r][j], c)
    return ExactMatrix(field, out)


@lru_cache(maxsize=None)
def variable_multiplication_map(n: int, d: int, i: int, field) -> ExactMatrix:
    """Matrix of multiplication by the variable x_i, S_d -> S_{d+1} (cached)."""
    coeffs = [field.zero] * (n + 1)
    coeffs[i] = field.one
    return multiplication_map(n, d, coeffs, field)


def generic_multiplication_map(n: int, d: int, field) -> LinearPolyMatrix:
    """Multiplication by the generic form a_0 x_0 + ... + a_n x_n, S_d -> S_{d+1}.

    The entries are degree-1 polynomials in the indeterminate coefficients
    a_i over the base field.
    """
    src = monomial_basis(n, d)
    tgt_idx = monomial_index(n, d + 1)
    nvars = n + 1
    zero = MPoly.zero(field, nvars)
    out = [[zero for _ in range(len(src))] for _ in range(len(tgt_idx))]
    for j, m in enumerate(src):
        for i in range(nvars):
            e = list(m)
            e[i] += 1
            r = tgt_idx[tuple(e)]
            out[r][j] = out[r][j].add(MPoly.variable(field, nvars, i))
    return LinearPolyMatrix(field, nvars, out)


# -- polynomials and ideals ---------------------------------------------------

Poly = dict  # {exponent vector -> coefficient}, homogeneous


def poly_degree(p: Poly) -> int:
    degs = {monomial_degree(m) for m in p}
    if len(degs) != 1:
        raise ValueError("polynomial is not homogeneous")
    return degs.pop()


def poly_vector(p: Poly, n: int, d: int, field) -> list:
    idx = monomial_index(n, d)
    v = [field.zero] * dim_S(n, d)
    for m, c in p.items():
        v[idx[m]] = field(c)
    return v


def ideal_degree_piece(generators: Sequence[Poly], n: int, d: int, field) -> GradedSubspace:
    """Degree-d piece of the ideal generated by homogeneous generators."""
    vecs = []
    for g in generators:
        if not g:
            continue
        dg = poly_degree(g)
        if dg > d:
            raise DegreeTooLow(f"generator of degree {dg} exceeds requested degree {d}")
        for m in monomial_basis(n, d - dg):
            prod = {monomial_mul(m, mg): c for mg, c in g.items()}
            vecs.append(poly_vector(prod, n, d, field))
    return GradedSubspace.from_vectors(n, d, vecs, field)


def times_S1(space: GradedSubspace) -> GradedSubspace:
    """Span of x_i * W over all variables, in degree d+1."""
    n, d, f = space.n, space.d, space.field
    mats = [variable_multiplication_map(n, d, i, f).mul(space.basis) for i in range(n + 1)]
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.hstack(m)
    return GradedSubspace(n, d + 1, stacked)


def colon_by_linear(space: GradedSubspace, coeffs: Sequence) -> GradedSubspace:
    """(I : l) in degree d-1 for a nonzero linear form l over the base field."""
    f = space.field
    coeffs = [f(c) for c in coeffs]
    if all(f.is_zero(c) for c in coeffs):
        raise ZeroForm("colon by the zero form")
    n, d = space.n, space.d
    if d < 1:
        raise ValueError("colon needs degree >= 1")
    q = annihilator_rows(space)
    m = multiplication_map(n, d - 1, coeffs, f)
    return GradedSubspace(n, d - 1, q.mul(m).right_kernel(), canonical=True)


def colon_by_S1(space: GradedSubspace) -> GradedSubspace:
    """(I : S_1) in degree d-1: elements whose product with every variable lands in I."""
    n, d, f = space.n, space.d, space.field
    if d < 1:
        raise ValueError("colon needs degree >= 1")
    q = annihilator_rows(space)
    blocks = parallel_map(
        lambda i: q.mul(variable_multiplication_map(n, d - 1, i, f)), range(n + 1)
    )
    stacked = blocks[0]
    for b in blocks[1:]:
        stacked = stacked.vstack(b)
    return GradedSubspace(n, d - 1, stacked.right_kernel(), canonical=True)


@dataclass
class GenericColonResult:
    """(I : L) over k(a_0..a_n) for the generic linear form L = sum a_i x_i.

    ``basis_num``/``den`` give the canonical kernel basis with polynomial
    numerators over a common denominator; ``k_rational`` is true iff the
    echelonized basis has all entries constant in the a_i, in which case
    ``constant_basis`` holds it as an ordinary subspace (and den == 1).
    """

    n: int
    d: int
    codim: int
    k_rational: bool
    basis_num: list[list[MPoly]]
    den: MPoly
    constant_basis: GradedSubspace | None

    @property
    def dim(self) -> int:
        return len(self.basis_num)


def generic_colon(space: GradedSubspace) -> GenericColonResult:
    """(I : L) computed exactly over the rational-function field.

    Uses fraction-free elimination for both the dimension and the basis;
    the returned basis is the reduced column echelon form over k(a).
    """
    n, d, f = space.n, space.d, space.field
    if d < 1:
        raise ValueError("colon needs degree >= 1")
    q = annihilator_rows(space)
    ml = generic_multiplication_map(n, d - 1, f)
    a = ml.compose_left(q)
    vectors, _ops = function_field_kernel(a)
    D = dim_S(n, d - 1)
    codim = D - len(vectors)

    consts: list[list] = []
    k_rational = True
    for vec in vectors:
        col = []
        for entry in vec:
            c = entry.constant_value()
            if c is None:
                k_rational = False
                break
            col.append(c)
        if not k_rational:
            break
        consts.append(col)

    nvars = n + 1
    one = MPoly.const(f, nvars, f.one)
    if k_rational:
        basis_num = [[MPoly.const(f, nvars, c) for c in col] for col in consts]
        constant = GradedSubspace.from_vectors(n, d - 1, consts, f)
        return GenericColonResult(n, d - 1, codim, True, basis_num, one, constant)

    dens: list[MPoly] = []
    for vec in vectors:
        for entry in vec:
            if not entry.den.is_constant() and all(not entry.den.sub(x).is_zero() for x in dens):
                dens.append(entry.den)
    common = one
    for den in dens:
        common = common.mul(den)
    basis_num = []
    for vec in vectors:
        col = []
        for entry in vec:
            scale = common.exact_div(entry.den)
            col.append(entry.num.mul(scale))
        basis_num.append(col)
    return GenericColonResult(n, d - 1, codim, False, basis_num, common, None)


# -- coordinate changes and hyperplane restriction ---------------------------


def substitution_matrix(n: int, d: int, g: Sequence[Sequence], field) -> ExactMatrix:
    """Matrix on S_d of the substitution x_j -> sum_k g[j][k] x_k."""
    basis = monomial_basis(n, d)
    idx = monomial_index(n, d)
    D = len(basis)
    lin = [[field(c) for c in row] for row in g]
    cols = []
    for m in basis:
        acc: dict = {(0,) * (n + 1): field.one}
        for j, e in enumerate(m):
            for _ in range(e):
                nxt: dict = {}
                for mono, c in acc.items():
                    for k2, gc in enumerate(lin[j]):
                        if field.is_zero(gc):
                            continue
                        e2 = list(mono)
                        e2[k2] += 1
                        key = tuple(e2)
                        s = field.add(nxt.get(key, field.zero), field.mul(c, gc))
                        if field.is_zero(s):
                            nxt.pop(key, None)
                        else:
                            nxt[key] = s
                acc = nxt
        v = [field.zero] * D
        for mono, c in acc.items():
            v[idx[mono]] = c
        cols.append(v)
    return ExactMatrix.from_cols(field, cols)


def apply_substitution(space: GradedSubspace, g: Sequence[Sequence]) -> GradedSubspace:
    sub = substitution_matrix(space.n, space.d, g, space.field)
    return GradedSubspace(space.n, space.d, sub.mul(space.basis))


def restrict_to_hyperplane(space: GradedSubspace, coeffs: Sequence) -> GradedSubspace:
    """Image of W under restriction to the hyperplane sum c_i x_i = 0.

    The last variable with nonzero coefficient is eliminated; the result
    lives in the degree-d piece of a polynomial ring with one variable
    fewer.
    """
    f = space.field
    coeffs = [f(c) for c in coeffs]
    piv = max((i for i, c in enumerate(coeffs) if not f.is_zero(c)), default=-1)
    if piv < 0:
        raise ZeroForm("restriction to the zero form")
    n, d = space.n, space.d
    inv = f.inv(coeffs[piv])
    repl = [f.neg(f.mul(inv, c)) for i, c in enumerate(coeffs) if i != piv]
    keep = [i for i in range(n + 1) if i != piv]

    tgt_idx = monomial_index(n - 1, d)
    DT = dim_S(n - 1, d)
    cols = []
    for m in monomial_basis(n, d):
        # substitute x_piv -> sum repl[k] * x_keep[k]
        acc: dict = {tuple(m[i] for i in keep): f.one}
        for _ in range(m[piv]):
            nxt: dict = {}
            for mono, c in acc.items():
                for k2, rc in enumerate(repl):
                    if f.is_zero(rc):
                        continue
                    e2 = list(mono)
                    e2[k2] += 1
                    key = tuple(e2)
                    s = f.add(nxt.get(key, f.zero), f.mul(c, rc))
                    if f.is_zero(s):
                        nxt.pop(key, None)
                    else:
                        nxt[key] = s
            acc = nxt
        v = [f.zero] * DT
        for mono, c in acc.items():
            v[tgt_idx[mono]] = c
        cols.append(v)
    sub = ExactMatrix.from_cols(f, cols)
    return GradedSubspace(n - 1, d, sub.mul(space.basis))


# -- generator text grammar ---------------------------------------------------

_TOKEN = re.compile(r"(?P<num>\d+(?:/\d+)?)|(?P<var>x\d+(?:\^\d+)?)|(?P<mul>\*)|(?P<ws>\s+)")


def parse_generators(text: str, n: int) -> list[Poly]:
    """Parse comma-separated homogeneous polynomials in x0..xN.

    Grammar: rational coefficients, ``^`` for powers, ``*`` optional,
    e.g. ``"x0*x2, x1*x2"`` or ``"x0x2 - x1^2"``.
    """
    gens = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        gens.append(parse_poly(chunk, n))
    if not gens:
        raise ValueError("no generators given")
    return gens


def parse_poly(text: str, n: int) -> Poly:
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s.replace(" ", ""))
    poly: Poly = {}
    for term in terms:
        sign = Fraction(1)
        body = term
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        expo = [0] * (n + 1)
        pos = 0
        saw_factor = False
        while pos < len(body):
            m = _TOKEN.match(body, pos)
            if not m:
                raise ValueError(f"cannot parse {body[pos:]!r} in {text!r}")
            pos = m.end()
            if m.group("mul") or m.group("ws"):
                continue
            saw_factor = True
            if m.group("num"):
                coeff *= Fraction(m.group("num"))
            else:
                var = m.group("var")
                if "^" in var:
                    name, p = var.split("^")
                    k = int(p)
                else:
                    name, k = var, 1
                i = int(name[1:])
                if i > n:
                    raise ValueError(f"variable {name} out of range for n={n}")
                expo[i] += k
        if not saw_factor:
            raise ValueError(f"empty term in {text!r}")
        key = tuple(expo)
        coeff = poly.get(key, Fraction(0)) + coeff
        if coeff == 0:
            poly.pop(key, None)
        else:
            poly[key] = coeff
    if poly:
        poly_degree(poly)  # homogeneity check
    return poly


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p, reverse=True):
        c = p[m]
        mono = monomial_str(m)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else ("+" if parts else "")) + body)
    return "".join(parts)
