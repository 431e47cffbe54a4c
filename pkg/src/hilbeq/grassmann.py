"""Grassmannian points and their Pluecker coordinates.

A codimension-r subspace W of S_d is encoded by the matrix N of the
canonical quotient map S_d -> S_d/W in the monomial basis and a
deterministic quotient basis (the first r monomials, in canonical order,
whose classes are independent in the quotient). The Pluecker coordinate
at a strictly increasing r-tuple of monomials is the corresponding
maximal minor of N; with this normalization the coordinate at the chosen
quotient tuple is exactly 1, pinning down the global unit.

Coordinates are keyed internally by tuples of *positions* into the
canonical monomial basis; the JSON form spells them out as exponent
vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactalg import ExactMatrix, field_from_name, maximal_minors
from .polyring import GradedSubspace, dim_S, monomial_basis, monomial_degree, monomial_index


class MixedDegrees(ValueError):
    """Index tuple mixes monomials of different degrees."""


class WrongCodimension(ValueError):
    """Subspace codimension does not match the requested quotient rank."""


def sort_with_sign(positions: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Sign 0 means a repeated entry (the corresponding coordinate is 0).
    Quadratic inversion count; index tuples here are short.
    """
    items = list(positions)
    n = len(items)
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if items[i] > items[j]:
                inv += 1
            elif items[i] == items[j]:
                return tuple(sorted(items)), 0
    return tuple(sorted(items)), -1 if inv % 2 else 1


def canonical_index(monomials: Sequence[tuple], n: int) -> tuple[tuple[tuple, ...], int]:
    """Canonical (sorted) form of a monomial index tuple and its sign."""
    if not monomials:
        return (), 1
    degs = {monomial_degree(m) for m in monomials}
    if len(degs) != 1:
        raise MixedDegrees(f"mixed degrees in index tuple: {sorted(degs)}")
    d = degs.pop()
    idx = monomial_index(n, d)
    pos, sign = sort_with_sign([idx[m] for m in monomials])
    basis = monomial_basis(n, d)
    return tuple(basis[p] for p in pos), sign


@dataclass
class QuotientMap:
    """Deterministic quotient map of a subspace: N and its monomial basis positions."""

    matrix: ExactMatrix  # r x dim S_d
    positions: tuple[int, ...]  # the r quotient-basis monomial positions


def quotient_map(space: GradedSubspace) -> QuotientMap:
    """Quotient map S_d -> S_d/W with the canonical monomial quotient basis.

    The quotient basis is greedy: scanning monomials in canonical order,
    keep those whose class is independent of the subspace and the classes
    kept so far. N satisfies N * basis(W) = 0 and N restricted to the kept
    columns is the identity.
    """
    f = space.field
    D = space.ambient_dim
    k = space.dim
    r = D - k

    # incremental row reduction to pick the quotient monomials
    pivots: dict[int, list] = {}

    def reduce(vec: list) -> list | None:
        v = list(vec)
        for p in sorted(pivots):
            if not f.is_zero(v[p]):
                c = v[p]
                row = pivots[p]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        for p, x in enumerate(v):
            if not f.is_zero(x):
                inv = f.inv(x)
                pivots[p] = [f.mul(inv, y) for y in v]
                return v
        return None

    for col in space.basis.columns():
        reduce(list(col))
    chosen = []
    for c in range(D):
        unit = [f.zero] * D
        unit[c] = f.one
        if reduce(unit) is not None:
            chosen.append(c)
            if len(chosen) == r:
                break
    assert len(chosen) == r, "quotient basis selection must reach the codimension"

    if r == 0:
        return QuotientMap(ExactMatrix(f, [], cols=D), ())
    unit_cols = [[f.one if i == c else f.zero for i in range(D)] for c in chosen]
    a = space.basis.hstack(ExactMatrix.from_cols(f, unit_cols))
    ainv = a.inverse()
    n_rows = ainv.data[k:]
    return QuotientMap(ExactMatrix(f, n_rows, cols=D), tuple(chosen))


@dataclass
class PluckerVector:
    """Sparse Pluecker coordinate vector of a degree-d Grassmannian point."""

    n: int
    d: int
    r: int
    field: object
    coords: dict  # {sorted position tuple -> nonzero field element}
    provenance: str = "raw"  # "from_subspace" | "raw"
    subspace: GradedSubspace | None = None

    def get(self, idx: tuple[int, ...]):
        return self.coords.get(idx, self.field.zero)

    def is_zero(self) -> bool:
        return not self.coords

    def first_support(self) -> tuple[int, ...]:
        return min(self.coords)

    def to_json(self) -> dict:
        basis = monomial_basis(self.n, self.d)
        coords = []
        for idx in sorted(self.coords):
            coords.append(
                {"idx": [list(basis[p]) for p in idx], "val": self.field.to_str(self.coords[idx])}
            )
        return {"n": self.n, "d": self.d, "r": self.r, "field": self.field.name, "coords": coords}

    @classmethod
    def from_json(cls, obj: dict) -> "PluckerVector":
        f = field_from_name(obj["field"])
        n, d, r = int(obj["n"]), int(obj["d"]), int(obj["r"])
        idx_map = monomial_index(n, d)
        coords = {}
        for rec in obj["coords"]:
            monos = [tuple(int(e) for e in ev) for ev in rec["idx"]]
            pos, sign = sort_with_sign([idx_map[m] for m in monos])
            if sign == 0:
                raise ValueError("repeated monomial in coordinate index")
            val = f.from_str(rec["val"])
            if sign < 0:
                val = f.neg(val)
            if not f.is_zero(val):
                if pos in coords:
                    raise ValueError("duplicate coordinate index")
                coords[pos] = val
        if not coords:
            raise ValueError("identically zero coordinate vector")
        if any(len(p) != r for p in coords):
            raise ValueError("coordinate index length does not match rank")
        return cls(n=n, d=d, r=r, field=f, coords=coords, provenance="raw")


def plucker_from_subspace(space: GradedSubspace, expected_r: int | None = None) -> PluckerVector:
    """All Pluecker coordinates of a subspace, as maximal minors of its quotient map."""
    r = space.codim
    if expected_r is not None and r != expected_r:
        raise WrongCodimension(f"codimension {r}, expected {expected_r}")
    qm = quotient_map(space)
    f = space.field
    coords = {}
    for cols, val in maximal_minors(qm.matrix):
        if not f.is_zero(val):
            coords[cols] = val
    return PluckerVector(
        n=space.n, d=space.d, r=r, field=f, coords=coords,
        provenance="from_subspace", subspace=space,
    )


def proportional(u: PluckerVector, v: PluckerVector) -> bool:
    """Are two coordinate vectors equal up to one global nonzero scalar?"""
    if u.is_zero() or v.is_zero():
        return u.is_zero() and v.is_zero()
    f = u.field
    ref = u.first_support()
    if f.is_zero(v.get(ref)):
        return False
    a, b = u.get(ref), v.get(ref)
    for idx in set(u.coords) | set(v.coords):
        if not f.eq(f.mul(u.get(idx), b), f.mul(v.get(idx), a)):
            return False
    return True


def decomposable_check(v: PluckerVector) -> tuple[bool, GradedSubspace | None]:
    """Does v satisfy all Pluecker relations?

    Reconstructs the candidate quotient map from the coordinates adjacent
    to the first nonzero one, recomputes the full coordinate vector of the
    reconstructed subspace, and compares up to a global unit. Equivalent
    to the vanishing of the full quadratic relation set, without
    enumerating it.
    """
    if v.is_zero():
        raise ValueError("decomposable_check needs a nonzero vector")
    f = v.field
    D = dim_S(v.n, v.d)
    J = v.first_support()
    pj = v.coords[J]
    jset = set(J)
    rows = []
    for k in range(v.r):
        row = [f.zero] * D
        for c in range(D):
            if c in jset:
                if c == J[k]:
                    row[c] = pj
                continue
            pos, sign = sort_with_sign(J[:k] + (c,) + J[k + 1 :])
            if sign == 0:
                continue
            val = v.get(pos)
            if f.is_zero(val):
                continue
            row[c] = val if sign > 0 else f.neg(val)
        rows.append(row)
    nmat = ExactMatrix(f, rows, cols=D)
    w = GradedSubspace(v.n, v.d, nmat.right_kernel(), canonical=True)
    if w.codim != v.r:
        return False, None
    u = plucker_from_subspace(w)
    if proportional(u, v):
        return True, w
    return False, None


def plucker_relations_sample(n: int, d: int, r: int, count: int, seed: int):
    """Seeded sample of the standard quadratic shuffle relations.

    Each relation picks an (r-1)-tuple i and an (r+1)-tuple j of distinct
    basis positions and asserts sum_t (-1)^t P_{i + j_t} P_{j - j_t} = 0,
    with all indices canonically sorted/signed. Identically zero forms are
    dropped and the sample is deduplicated, so for r = 1 the result is
    empty.
    """
    from .equations import EquationForm, normalize_quadratic_terms
    from .rng import SplitMix64

    if count <= 0:
        return []
    D = dim_S(n, d)
    if r < 2 or D < r + 1:
        return []
    rng = SplitMix64(seed).fork(0x9E1A)
    out = []
    seen = set()
    attempts = 0
    max_attempts = 60 * count + 200
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        i_tuple = tuple(sorted(rng.sample_indices(D, r - 1))) if r > 1 else ()
        j_tuple = tuple(sorted(rng.sample_indices(D, r + 1)))
        terms: dict = {}
        for t, jt in enumerate(j_tuple):
            left, s1 = sort_with_sign(i_tuple + (jt,))
            if s1 == 0:
                continue
            right = j_tuple[:t] + j_tuple[t + 1 :]
            coeff = s1 * (-1) ** t
            key = (left, right) if left <= right else (right, left)
            terms[key] = terms.get(key, 0) + coeff
        norm = normalize_quadratic_terms(terms)
        if norm is None or norm in seen:
            continue
        seen.add(norm)
        out.append(EquationForm(kind="quadratic", terms=norm))
    return out
