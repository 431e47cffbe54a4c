"""Field-valued quiver-representation points above the Hilbert scheme.

A point is a tuple (rho, M_0..M_n) of matrices: rho maps S_R onto k^p(R),
each M_i maps k^p(R) to k^p(R+1), subject to

* rho surjective,
* the concatenation [M_0 | ... | M_n] surjective,
* M_i . rho . mu_j = M_j . rho . mu_i for all i, j (mu = multiplication
  by a variable, S_{R-1} -> S_R).

beta: S_{R+1} -> k^p(R+1) is determined by beta(x_i f) = M_i(rho(f)); it
is stored explicitly and its well-definedness identity beta . mu_i =
M_i . rho is an invariant checked by ``validate`` rather than re-derived
per call. The kernels of rho and beta recover the subspace pair of a
Hilbert point, and the Pluecker coordinates in both degrees are maximal
minors of rho resp. of the column map built from M and rho.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import ExactMatrix, field_from_name, maximal_minors
from .grassmann import PluckerVector, quotient_map
from .polyring import (
    GradedSubspace,
    dim_S,
    monomial_basis,
    monomial_index,
    variable_multiplication_map,
)


class PreconditionFailed(ValueError):
    """Input pair violates a construction precondition (reported in args)."""


class SingularMatrix(ValueError):
    """Group element is not invertible."""


@dataclass
class QuiverPoint:
    n: int
    R: int
    field: object
    rho: ExactMatrix  # p(R) x dim S_R
    M: tuple  # n+1 matrices, each p(R+1) x p(R)
    beta: ExactMatrix  # p(R+1) x dim S_{R+1}, cached

    @property
    def pR(self) -> int:
        return self.rho.rows

    @property
    def pR1(self) -> int:
        return self.M[0].rows

    def to_json(self) -> dict:
        f = self.field
        return {
            "n": self.n,
            "R": self.R,
            "field": f.name,
            "rho": [[f.to_str(x) for x in row] for row in self.rho.data],
            "M": [[[f.to_str(x) for x in row] for row in m.data] for m in self.M],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuiverPoint":
        f = field_from_name(obj["field"])
        n, R = int(obj["n"]), int(obj["R"])
        rho = ExactMatrix.from_rows(f, [[f.from_str(x) for x in row] for row in obj["rho"]])
        M = tuple(
            ExactMatrix.from_rows(f, [[f.from_str(x) for x in row] for row in mat])
            for mat in obj["M"]
        )
        if len(M) != n + 1:
            raise ValueError("need n+1 matrices M_i")
        beta = _rebuild_beta(n, R, f, rho, M)
        q = cls(n=n, R=R, field=f, rho=rho, M=M, beta=beta)
        for name, ok, detail in _beta_compatibility(q):
            if not ok:
                raise PreconditionFailed(f"{name}: {detail}")
        return q


def _section_matrix(field, D: int, positions) -> ExactMatrix:
    cols = []
    for p in positions:
        v = [field.zero] * D
        v[p] = field.one
        cols.append(v)
    return ExactMatrix.from_cols(field, cols)


def build_representation(
    I_R: GradedSubspace, I_R1: GradedSubspace, spec=None
) -> QuiverPoint:
    """Quiver point of a subspace pair.

    rho and beta are the deterministic monomial quotient maps of I_R and
    I_{R+1}; M_i = beta . mu_i . sigma with sigma the section sending each
    quotient-basis monomial to itself.
    """
    if I_R.n != I_R1.n or I_R.d + 1 != I_R1.d:
        raise PreconditionFailed("subspace pair must sit in degrees (R, R+1) of the same ring")
    n, R = I_R.n, I_R.d
    if R < 1:
        raise PreconditionFailed("need R >= 1")
    f = I_R.field
    if spec is not None:
        if I_R.codim != spec.value(R):
            raise PreconditionFailed(
                f"codim I_R = {I_R.codim}, expected p({R}) = {spec.value(R)}"
            )
        if I_R1.codim != spec.value(R + 1):
            raise PreconditionFailed(
                f"codim I_R1 = {I_R1.codim}, expected p({R + 1}) = {spec.value(R + 1)}"
            )
    for i in range(n + 1):
        img = variable_multiplication_map(n, R, i, f).mul(I_R.basis)
        if not I_R1.contains_matrix(img):
            raise PreconditionFailed(f"x{i} * I_R is not contained in I_R1")

    qm_r = quotient_map(I_R)
    qm_r1 = quotient_map(I_R1)
    sigma = _section_matrix(f, dim_S(n, R), qm_r.positions)
    M = tuple(
        qm_r1.matrix.mul(variable_multiplication_map(n, R, i, f)).mul(sigma)
        for i in range(n + 1)
    )
    return QuiverPoint(n=n, R=R, field=f, rho=qm_r.matrix, M=M, beta=qm_r1.matrix)


def _rebuild_beta(n: int, R: int, f, rho: ExactMatrix, M) -> ExactMatrix:
    """beta from (rho, M) via the smallest-variable factorization of each monomial."""
    idx_r = monomial_index(n, R)
    cols = []
    for v in monomial_basis(n, R + 1):
        j = next(i for i, e in enumerate(v) if e > 0)
        z = list(v)
        z[j] -= 1
        cols.append(M[j].mul_vec(rho.col(idx_r[tuple(z)])))
    return ExactMatrix.from_cols(f, cols)


def _beta_compatibility(q: QuiverPoint):
    out = []
    for i in range(q.n + 1):
        lhs = q.beta.mul(variable_multiplication_map(q.n, q.R, i, q.field))
        rhs = q.M[i].mul(q.rho)
        out.append((f"beta_mu_{i}", lhs == rhs, "beta . mu_i == M_i . rho"))
    return out


@dataclass
class ValidationReport:
    checks: list  # (name, ok, detail)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c[1]]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
        }


def validate(q: QuiverPoint) -> ValidationReport:
    """Check surjectivity of rho and of [M_0|...|M_n], all commutation
    identities, and the cached-beta compatibility. Failures are report
    entries, not exceptions."""
    checks = []
    pR, pR1 = q.pR, q.pR1
    checks.append(("rho_surjective", q.rho.rank() == pR, f"rank(rho) == {pR}"))
    stacked = q.M[0]
    for m in q.M[1:]:
        stacked = stacked.hstack(m)
    checks.append(("sigma_M_surjective", stacked.rank() == pR1, f"rank[M_0|...|M_n] == {pR1}"))
    mu = [variable_multiplication_map(q.n, q.R - 1, i, q.field) for i in range(q.n + 1)]
    rho_mu = [q.rho.mul(m) for m in mu]
    for i in range(q.n + 1):
        for j in range(i + 1, q.n + 1):
            ok = q.M[i].mul(rho_mu[j]) == q.M[j].mul(rho_mu[i])
            checks.append((f"commute_{i}_{j}", ok, "M_i.rho.mu_j == M_j.rho.mu_i"))
    checks.extend(_beta_compatibility(q))
    return ValidationReport(checks)


def act(g: ExactMatrix, h: ExactMatrix, q: QuiverPoint) -> QuiverPoint:
    """Base change: rho' = g.rho, M_i' = h.M_i.g^{-1}, beta' = h.beta."""
    if not g.is_invertible():
        raise SingularMatrix("g is singular")
    if not h.is_invertible():
        raise SingularMatrix("h is singular")
    ginv = g.inverse()
    return QuiverPoint(
        n=q.n,
        R=q.R,
        field=q.field,
        rho=g.mul(q.rho),
        M=tuple(h.mul(m).mul(ginv) for m in q.M),
        beta=h.mul(q.beta),
    )


def plucker_via_minors(q: QuiverPoint) -> tuple[PluckerVector, PluckerVector]:
    """Pluecker coordinates in degrees R and R+1 from matrix minors.

    Degree R: maximal minors of rho. Degree R+1: for each monomial v of
    S_{R+1}, factor v = x_j z with j the smallest dividing variable; the
    column at v is M_j(rho(z)) and coordinates are maximal minors of the
    resulting p(R+1) x dim S_{R+1} matrix.
    """
    f = q.field
    coords_r = {}
    for colset, val in maximal_minors(q.rho):
        if not f.is_zero(val):
            coords_r[colset] = val
    vec_r = PluckerVector(n=q.n, d=q.R, r=q.pR, field=f, coords=coords_r, provenance="raw")

    idx_r = monomial_index(q.n, q.R)
    cols = []
    for v in monomial_basis(q.n, q.R + 1):
        j = next(i for i, e in enumerate(v) if e > 0)
        z = list(v)
        z[j] -= 1
        cols.append(q.M[j].mul_vec(q.rho.col(idx_r[tuple(z)])))
    cmat = ExactMatrix.from_cols(f, cols)
    coords_r1 = {}
    for colset, val in maximal_minors(cmat):
        if not f.is_zero(val):
            coords_r1[colset] = val
    vec_r1 = PluckerVector(
        n=q.n, d=q.R + 1, r=q.pR1, field=f, coords=coords_r1, provenance="raw"
    )
    return vec_r, vec_r1


def kernel_ideal(q: QuiverPoint) -> tuple[GradedSubspace, GradedSubspace]:
    """(ker rho, ker beta) as canonical subspaces."""
    return (
        GradedSubspace(q.n, q.R, q.rho.right_kernel(), canonical=True),
        GradedSubspace(q.n, q.R + 1, q.beta.right_kernel(), canonical=True),
    )
