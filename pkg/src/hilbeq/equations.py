"""Generation and evaluation of the defining equations.

Two families of sparse forms in Pluecker coordinates of degree R+1 are
generated from a Hilbert polynomial p and a degree R:

* linear forms ("E"): orbit sums over all distinct arrangements of a
  variable multiset x (size p(R)+1) paired with a monomial multiset m in
  S_R (same size) and a strictly increasing tuple n in S_{R+1} of size
  p(R+1)-p(R)-1. They are the a-monomial coefficients of the multilinear
  expansion of (sum a_i x_i)m_1 ^ ... ^ n_1 ^ ..., and they vanish on
  every Hilbert point. For constant p the family is empty.

* F symbols: same construction with tuple sizes p(R) and p(R+1)-p(R).
  Arranged into a matrix with rows indexed by m and columns by (n, x),
  membership within the E-locus is equivalent to this matrix having rank
  at most 1; the quadratic equations are exactly its 2x2 minors
  ("cross quadrics").

Canonicalization: m and n are kept sorted, x is stored as a multiplicity
vector alpha, and every expanded form is sign-normalized so its
lexicographically-first term has positive coefficient; forms are then
deduplicated on their expanded term keys. Coefficients are plain ints and
coerce into any coefficient field, so one generated system serves every
base field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .exactalg import ExactMatrix
from .grassmann import PluckerVector, sort_with_sign
from .macaulay import HilbertPolynomialSpec
from .polyring import dim_S, monomial_basis, monomial_index
from .rng import SplitMix64
from .utils import distinct_permutations


class DimensionMismatch(ValueError):
    """Point degree or rank does not match the equation system."""


LinearKey = tuple  # sorted tuple of basis positions in S_{R+1}
QuadKey = tuple  # ordered pair (LinearKey, LinearKey)


@dataclass(frozen=True)
class EquationForm:
    """Sparse linear or quadratic form in Pluecker coordinates.

    ``terms`` is a tuple of ``(coeff, key)`` with integer coefficients,
    keys canonical and no zero coefficients. Quadratic keys are ordered
    pairs of linear keys.
    """

    kind: str  # "linear" | "quadratic"
    terms: tuple

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point: PluckerVector):
        f = point.field
        acc = f.zero
        if self.kind == "linear":
            for c, key in self.terms:
                v = point.coords.get(key)
                if v is not None:
                    acc = f.add(acc, f.mul(f.from_int(c), v))
        else:
            for c, (k1, k2) in self.terms:
                v1 = point.coords.get(k1)
                if v1 is None:
                    continue
                v2 = point.coords.get(k2)
                if v2 is None:
                    continue
                acc = f.add(acc, f.mul(f.from_int(c), f.mul(v1, v2)))
        return acc

    def vanishes_at(self, point: PluckerVector) -> bool:
        return point.field.is_zero(self.evaluate(point))


def normalize_linear_terms(terms: dict) -> tuple | None:
    """Drop zeros, sort by key, flip sign so the first coefficient is positive."""
    items = sorted((k, c) for k, c in terms.items() if c != 0)
    if not items:
        return None
    if items[0][1] < 0:
        items = [(k, -c) for k, c in items]
    return tuple((c, k) for k, c in items)


def normalize_quadratic_terms(terms: dict) -> tuple | None:
    return normalize_linear_terms(terms)


# -- orbit expansion ----------------------------------------------------------


def _variable_products(n: int, R: int) -> list[list[int]]:
    """table[i][pos]: position in S_{R+1} of x_i times the pos-th monomial of S_R."""
    src = monomial_basis(n, R)
    tgt = monomial_index(n, R + 1)
    table = []
    for i in range(n + 1):
        row = []
        for m in src:
            e = list(m)
            e[i] += 1
            row.append(tgt[tuple(e)])
        table.append(row)
    return table


def orbit_expansion(
    m_tuple: Sequence[int], n_tuple: Sequence[int], alpha: Sequence[int], table
) -> dict:
    """Signed orbit sum over all distinct arrangements of the variable multiset.

    ``m_tuple``/``n_tuple`` hold basis positions, ``alpha`` the variable
    multiplicities; returns {sorted index tuple -> int coefficient}.
    """
    letters = []
    for i, k in enumerate(alpha):
        letters.extend([i] * k)
    out: dict = {}
    for arrangement in distinct_permutations(letters):
        prods = tuple(table[v][m] for v, m in zip(arrangement, m_tuple))
        idx, sign = sort_with_sign(prods + tuple(n_tuple))
        if sign == 0:
            continue
        c = out.get(idx, 0) + sign
        if c == 0:
            out.pop(idx, None)
        else:
            out[idx] = c
    return out


def _alpha_tuples(nvars: int, size: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), size):
        alpha = [0] * nvars
        for v in combo:
            alpha[v] += 1
        out.append(tuple(alpha))
    return out


# -- linear forms -------------------------------------------------------------


def iter_E_raw(spec: HilbertPolynomialSpec, n: int, R: int) -> Iterable[tuple]:
    """Yield (m, n_tuple, alpha, expansion) over the full enumeration.

    Empty for constant p (no admissible n-tuple size).
    """
    pR = spec.value(R)
    pR1 = spec.value(R + 1)
    q = pR1 - pR - 1
    if spec.is_constant or q < 0:
        return
    DR = dim_S(n, R)
    DR1 = dim_S(n, R + 1)
    table = _variable_products(n, R)
    size = pR + 1
    for m_tuple in combinations_with_replacement(range(DR), size):
        for n_tuple in combinations(range(DR1), q):
            for alpha in _alpha_tuples(n + 1, size):
                yield m_tuple, n_tuple, alpha, orbit_expansion(m_tuple, n_tuple, alpha, table)


def gen_E(spec: HilbertPolynomialSpec, n: int, R: int) -> list[EquationForm]:
    """All nonzero linear forms, canonicalized and deduplicated."""
    if R < 1:
        raise ValueError("need R >= 1")
    forms = []
    seen = set()
    for _m, _n, _alpha, expansion in iter_E_raw(spec, n, R):
        norm = normalize_linear_terms(expansion)
        if norm is None or norm in seen:
            continue
        seen.add(norm)
        forms.append(EquationForm(kind="linear", terms=norm))
    return forms


# -- F symbols ----------------------------------------------------------------


@dataclass(frozen=True)
class FSymbol:
    """One symbol: monomial tuple m, tuple n, variable multiset alpha, and the
    expanded sparse linear form. Zero expansions are legitimate matrix
    entries and stay in the table, flagged."""

    m: tuple[int, ...]
    n: tuple[int, ...]
    alpha: tuple[int, ...]
    terms: tuple

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, coords: dict, field):
        acc = field.zero
        for c, key in self.terms:
            v = coords.get(key)
            if v is not None:
                acc = field.add(acc, field.mul(field.from_int(c), v))
        return acc


@dataclass
class FTable:
    """Full table of F symbols for (p, n, R): rows = m-tuples, cols = (n, alpha)."""

    n: int
    R: int
    pR: int
    pR1: int
    rows: list[tuple[int, ...]]
    cols: list[tuple[tuple[int, ...], tuple[int, ...]]]
    symbols: list[list[FSymbol]]  # [row][col]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


def gen_F_symbols(spec: HilbertPolynomialSpec, n: int, R: int) -> FTable:
    """Full enumeration of F symbols (no zero-dropping; entries are flagged)."""
    if R < 1:
        raise ValueError("need R >= 1")
    pR = spec.value(R)
    pR1 = spec.value(R + 1)
    q = pR1 - pR
    if q < 0:
        raise ValueError("p(R+1) < p(R): no symbol table at this degree")
    DR = dim_S(n, R)
    DR1 = dim_S(n, R + 1)
    table = _variable_products(n, R)
    rows = list(combinations_with_replacement(range(DR), pR))
    cols = [(nt, alpha) for nt in combinations(range(DR1), q) for alpha in _alpha_tuples(n + 1, pR)]
    symbols = []
    for m_tuple in rows:
        row = []
        for n_tuple, alpha in cols:
            expansion = orbit_expansion(m_tuple, n_tuple, alpha, table)
            norm = tuple((c, k) for k, c in sorted(expansion.items()))
            row.append(FSymbol(m=m_tuple, n=n_tuple, alpha=alpha, terms=norm))
        symbols.append(row)
    return FTable(n=n, R=R, pR=pR, pR1=pR1, rows=rows, cols=cols, symbols=symbols)


@dataclass
class FMatrix:
    """Evaluation of the full F-symbol table at one point."""

    table: FTable
    matrix: ExactMatrix


def f_matrix(table: FTable, point: PluckerVector) -> FMatrix:
    if point.d != table.R + 1 or point.r != table.pR1:
        raise DimensionMismatch(
            f"point (d={point.d}, r={point.r}) vs table (R+1={table.R + 1}, p(R+1)={table.pR1})"
        )
    f = point.field
    coords = point.coords
    data = [[sym.evaluate(coords, f) for sym in row] for row in table.symbols]
    return FMatrix(table=table, matrix=ExactMatrix(f, data, cols=len(table.cols)))


def cross_quadric_residual(fm: FMatrix) -> tuple[bool, dict | None]:
    """True iff every 2x2 minor of the evaluated F-matrix vanishes.

    Checked via the pivot criterion (rank <= 1), not by enumerating
    quadrics; on failure returns one nonzero minor as a certificate.
    """
    m = fm.matrix
    f = m.field
    pivot = None
    for i in range(m.rows):
        for j in range(m.cols):
            if not f.is_zero(m.data[i][j]):
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        return True, None
    r0, c0 = pivot
    a = m.data[r0][c0]
    for i in range(m.rows):
        if i == r0:
            continue
        for j in range(m.cols):
            if j == c0:
                continue
            minor = f.sub(f.mul(m.data[i][j], a), f.mul(m.data[i][c0], m.data[r0][j]))
            if not f.is_zero(minor):
                table = fm.table
                witness = {
                    "m1": table.rows[r0],
                    "m2": table.rows[i],
                    "col1": table.cols[c0],
                    "col2": table.cols[j],
                    "minor": f.to_str(minor),
                }
                return False, witness
    return True, None


def f_matrix_rank(fm: FMatrix) -> int:
    return fm.matrix.rank()


# -- explicit cross quadrics ---------------------------------------------------


def _quadric_from_entries(f1: FSymbol, f2: FSymbol, g1: FSymbol, g2: FSymbol):
    """Expansion of F(m1,c1)F(m2,c2) - F(m2,c1)F(m1,c2) as a quadratic form."""
    terms: dict = {}

    def accumulate(a: FSymbol, b: FSymbol, sign: int):
        for c1, k1 in a.terms:
            for c2, k2 in b.terms:
                key = (k1, k2) if k1 <= k2 else (k2, k1)
                c = terms.get(key, 0) + sign * c1 * c2
                if c == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = c

    accumulate(f1, g2, 1)
    accumulate(f2, g1, -1)
    return normalize_quadratic_terms(terms)


def cross_quadrics(
    table: FTable, count: int | None = None, seed: int = 0, full: bool = False
) -> list[EquationForm]:
    """Explicit 2x2-minor quadrics of the symbolic F-matrix.

    ``full`` enumerates every row pair x column pair (deduplicated);
    otherwise a seeded sample of ``count`` distinct nonzero quadrics is
    drawn. The full set is huge in general; membership checking goes
    through the rank criterion instead.
    """
    nrows, ncols = table.shape
    out = []
    seen = set()

    def push(i1, i2, j1, j2) -> bool:
        norm = _quadric_from_entries(
            table.symbols[i1][j1], table.symbols[i2][j1],
            table.symbols[i1][j2], table.symbols[i2][j2],
        )
        if norm is None or norm in seen:
            return False
        seen.add(norm)
        out.append(EquationForm(kind="quadratic", terms=norm))
        return True

    if full:
        for i1, i2 in combinations(range(nrows), 2):
            for j1, j2 in combinations(range(ncols), 2):
                push(i1, i2, j1, j2)
        return out

    if not count or count <= 0 or nrows < 2 or ncols < 2:
        return []
    rng = SplitMix64(seed).fork(0xF0AD)
    attempts = 0
    max_attempts = 60 * count + 200
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        i1, i2 = sorted(rng.sample_indices(nrows, 2))
        j1, j2 = sorted(rng.sample_indices(ncols, 2))
        push(i1, i2, j1, j2)
    return out


# -- cached system + export ----------------------------------------------------


@lru_cache(maxsize=32)
def _cached_system(a: tuple[int, ...], coeffs: tuple, n: int, R: int):
    spec = HilbertPolynomialSpec(a, coeffs)
    return gen_E(spec, n, R), gen_F_symbols(spec, n, R)


def equation_system(spec: HilbertPolynomialSpec, n: int, R: int):
    """(E forms, F table) for a given polynomial/degree, cached.

    The forms have integer coefficients, so one system is shared across
    all base fields.
    """
    return _cached_system(spec.a, spec.coefficients, n, R)


def _quadric_from_minor(table: FTable, i1: int, i2: int, j1: int, j2: int):
    return _quadric_from_entries(
        table.symbols[i1][j1], table.symbols[i2][j1],
        table.symbols[i1][j2], table.symbols[i2][j2],
    )


def export_equations(
    spec: HilbertPolynomialSpec,
    n: int,
    R: int,
    include: Sequence[str] = ("plucker", "E", "Fquad"),
    sample_quadrics: int = 50,
    sample_plucker: int = 50,
    full_quadrics: bool = False,
    seed: int = 0,
) -> dict:
    """Equation file contents (JSON-ready dict); deterministic given seed.

    Exponent vectors are little-endian in the variable index; integers are
    decimal strings. Identically-zero linear forms are dropped but counted
    in the header; the F-symbol table is exported in full (the complete
    quadric set is represented implicitly by it plus the rank-1 rule).
    """
    from .grassmann import plucker_relations_sample

    include = tuple(include)
    pR, pR1 = spec.value(R), spec.value(R + 1)
    basis_r1 = monomial_basis(n, R + 1)
    basis_r = monomial_basis(n, R)

    def lin_key_json(key):
        return [list(basis_r1[p]) for p in key]

    meta_counts: dict = {}
    out: dict = {
        "meta": {
            "n": n,
            "poly": spec.poly_str(),
            "R": R,
            "pR": pR,
            "pR1": pR1,
            "counts": meta_counts,
        },
        "linear": [],
        "fsymbols": [],
        "quadrics": [],
        "plucker_relations": [],
    }

    if "E" in include:
        enumerated = 0
        zero = 0
        seen = set()
        kept = []
        for _m, _n, _alpha, expansion in iter_E_raw(spec, n, R):
            enumerated += 1
            norm = normalize_linear_terms(expansion)
            if norm is None:
                zero += 1
                continue
            if norm in seen:
                continue
            seen.add(norm)
            kept.append(norm)
        out["linear"] = [
            {"terms": [{"c": str(c), "idx": lin_key_json(k)} for c, k in norm]} for norm in kept
        ]
        meta_counts["E_enumerated"] = enumerated
        meta_counts["E_zero"] = zero
        meta_counts["E_kept"] = len(kept)
        if not kept:
            out["meta"]["linear_empty"] = True

    if "Fquad" in include:
        table = equation_system(spec, n, R)[1]
        fsyms = []
        zero_syms = 0
        for row in table.symbols:
            for sym in row:
                if sym.is_zero:
                    zero_syms += 1
                fsyms.append(
                    {
                        "m": [list(basis_r[p]) for p in sym.m],
                        "n": [list(basis_r1[p]) for p in sym.n],
                        "alpha": list(sym.alpha),
                        "zero": sym.is_zero,
                        "terms": [{"c": str(c), "idx": lin_key_json(k)} for c, k in sym.terms],
                    }
                )
        out["fsymbols"] = fsyms
        meta_counts["fsymbols"] = len(fsyms)
        meta_counts["fsymbols_zero"] = zero_syms
        quads = cross_quadrics(table, count=sample_quadrics, seed=seed, full=full_quadrics)
        out["quadrics"] = [
            {
                "terms": [
                    {"c": str(c), "idx": [lin_key_json(k1), lin_key_json(k2)]}
                    for c, (k1, k2) in q.terms
                ]
            }
            for q in quads
        ]
        meta_counts["quadrics"] = len(quads)
        if not quads:
            out["meta"]["quadrics_empty"] = True

    if "plucker" in include:
        rels = plucker_relations_sample(n, R + 1, pR1, sample_plucker, seed)
        out["plucker_relations"] = [
            {
                "terms": [
                    {"c": str(c), "idx": [lin_key_json(k1), lin_key_json(k2)]}
                    for c, (k1, k2) in q.terms
                ]
            }
            for q in rels
        ]
        meta_counts["plucker_relations"] = len(rels)

    return out


def write_equation_file(payload: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_equation_file(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def forms_from_file(payload: dict) -> tuple[list[EquationForm], list[EquationForm], list[EquationForm]]:
    """Reconstruct (linear, quadrics, plucker_relations) from an equation file."""
    meta = payload["meta"]
    n, R = int(meta["n"]), int(meta["R"])
    idx_map = monomial_index(n, R + 1)

    def key_of(idx_json):
        pos = [idx_map[tuple(int(e) for e in ev)] for ev in idx_json]
        spos, sign = sort_with_sign(pos)
        if sign == 0:
            raise ValueError("repeated monomial in equation index")
        return spos, sign

    def lin(entries):
        out = []
        for rec in entries:
            terms: dict = {}
            for t in rec["terms"]:
                key, sign = key_of(t["idx"])
                terms[key] = terms.get(key, 0) + sign * int(t["c"])
            norm = normalize_linear_terms(terms)
            if norm:
                out.append(EquationForm(kind="linear", terms=norm))
        return out

    def quad(entries):
        out = []
        for rec in entries:
            terms: dict = {}
            for t in rec["terms"]:
                k1, s1 = key_of(t["idx"][0])
                k2, s2 = key_of(t["idx"][1])
                key = (k1, k2) if k1 <= k2 else (k2, k1)
                terms[key] = terms.get(key, 0) + s1 * s2 * int(t["c"])
            norm = normalize_quadratic_terms(terms)
            if norm:
                out.append(EquationForm(kind="quadratic", terms=norm))
        return out

    return lin(payload.get("linear", [])), quad(payload.get("quadrics", [])), quad(
        payload.get("plucker_relations", [])
    )
