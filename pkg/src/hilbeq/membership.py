"""Membership verdicts and cross-validation.

Two fully independent routes decide whether a point of the degree-(R+1)
Grassmannian is a Hilbert point:

* the colon-codimension oracle: codim I_{R+1} = p(R+1) and
  codim (I_{R+1} : S_1) = p(R);
* the equation route: decomposability, exact vanishing of every linear
  form, and rank <= 1 of the evaluated F-matrix.

Above the shared exact-linear-algebra layer the two routes share no code,
so their agreement on every tested point is evidence, not tautology.
``cross_check`` runs both plus the generic-form conductor and raises
``InconsistencyDetected`` on any disagreement with a full verdict dump.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .equations import (
    DimensionMismatch,
    FTable,
    cross_quadric_residual,
    equation_system,
    f_matrix,
)
from .grassmann import (
    PluckerVector,
    WrongCodimension,
    decomposable_check,
    plucker_from_subspace,
)
from .macaulay import HilbertPolynomialSpec
from .polyring import GradedSubspace, colon_by_S1, generic_colon, monomial_basis


class BelowGotzmann(ValueError):
    """R below the gotzmann number; pass allow_below_gotzmann to override."""


class InconsistencyDetected(RuntimeError):
    """The equation route and an oracle disagreed; carries the full report."""

    def __init__(self, problems, report):
        super().__init__("; ".join(problems))
        self.problems = problems
        self.report = report


@dataclass
class Verdict:
    decomposable: bool = False
    codim_ok: bool = False
    E_ok: bool = False
    Fquad_ok: bool = False
    oracle_ok: bool | None = None
    h_ok: bool | None = None
    conductor_k_rational: bool | None = None
    certificates: list = dc_field(default_factory=list)

    @property
    def equation_member(self) -> bool:
        return self.decomposable and self.codim_ok and self.E_ok and self.Fquad_ok

    def to_json(self) -> dict:
        return {
            "decomposable": self.decomposable,
            "codim_ok": self.codim_ok,
            "E_ok": self.E_ok,
            "Fquad_ok": self.Fquad_ok,
            "oracle_ok": self.oracle_ok,
            "h_ok": self.h_ok,
            "conductor_k_rational": self.conductor_k_rational,
            "equation_member": self.equation_member,
            "certificates": self.certificates,
        }


@dataclass
class EquationContext:
    """Cached equation system for one (polynomial, n, R)."""

    spec: HilbertPolynomialSpec
    n: int
    R: int
    pR: int
    pR1: int
    E: list
    table: FTable


@lru_cache(maxsize=32)
def _context(a, coeffs, n, R):
    spec = HilbertPolynomialSpec(a, coeffs)
    E, table = equation_system(spec, n, R)
    return EquationContext(
        spec=spec, n=n, R=R, pR=spec.value(R), pR1=spec.value(R + 1), E=E, table=table
    )


def equation_context(spec: HilbertPolynomialSpec, n: int, R: int) -> EquationContext:
    return _context(spec.a, spec.coefficients, n, R)


def _serialize_linear(form, n: int, R1: int) -> list:
    basis = monomial_basis(n, R1)
    return [{"c": str(c), "idx": [list(basis[p]) for p in key]} for c, key in form.terms]


def gotzmann_oracle_detail(
    I_R1: GradedSubspace, spec: HilbertPolynomialSpec, R: int, allow_below_gotzmann: bool = False
) -> dict:
    """Codimension pair behind the oracle verdict."""
    if R < spec.gotzmann and not allow_below_gotzmann:
        raise BelowGotzmann(
            f"R={R} is below the gotzmann number {spec.gotzmann}; override to experiment"
        )
    pR, pR1 = spec.value(R), spec.value(R + 1)
    codim = I_R1.codim
    colon_codim = colon_by_S1(I_R1).codim
    return {
        "member": codim == pR1 and colon_codim == pR,
        "codim": codim,
        "colon_codim": colon_codim,
        "expected_codim": pR1,
        "expected_colon_codim": pR,
    }


def gotzmann_oracle(
    I_R1: GradedSubspace, spec: HilbertPolynomialSpec, R: int, allow_below_gotzmann: bool = False
) -> bool:
    """Membership iff codim I_{R+1} = p(R+1) and codim (I_{R+1}:S_1) = p(R)."""
    return gotzmann_oracle_detail(I_R1, spec, R, allow_below_gotzmann)["member"]


def h_membership(I_R1: GradedSubspace, spec: HilbertPolynomialSpec, R: int) -> bool:
    """Membership in the linear-form locus via the generic conductor.

    True iff codim (I_{R+1} : L) <= p(R) over k(a_0..a_n); for constant p
    the locus is the whole Grassmannian.
    """
    pR1 = spec.value(R + 1)
    if I_R1.codim != pR1:
        raise WrongCodimension(f"codim {I_R1.codim}, expected p(R+1) = {pR1}")
    if spec.is_constant:
        return True
    return generic_colon(I_R1).codim <= spec.value(R)


def _resolve_point(point, ctx: EquationContext):
    """Normalize input to (vector, subspace, decomposable, codim_ok, certs)."""
    certs: list = []
    if isinstance(point, GradedSubspace):
        if (point.n, point.d) != (ctx.n, ctx.R + 1):
            raise DimensionMismatch("subspace degree does not match the equation system")
        codim_ok = point.codim == ctx.pR1
        if not codim_ok:
            certs.append({"kind": "codim", "got": point.codim, "expected": ctx.pR1})
            return None, point, True, False, certs
        return plucker_from_subspace(point), point, True, True, certs
    if isinstance(point, PluckerVector):
        if (point.n, point.d) != (ctx.n, ctx.R + 1) or point.r != ctx.pR1:
            raise DimensionMismatch("coordinate vector does not match the equation system")
        if point.provenance == "from_subspace" and point.subspace is not None:
            return point, point.subspace, True, True, certs
        ok, sub = decomposable_check(point)
        if not ok:
            certs.append({"kind": "decomposable"})
        return point, sub, ok, True, certs
    raise TypeError(f"unsupported point type {type(point)!r}")


def equation_verdict(point, ctx: EquationContext) -> Verdict:
    """Equation-route verdict: decomposability, all linear forms, rank-1 F-matrix."""
    vector, _sub, decomposable, codim_ok, certs = _resolve_point(point, ctx)
    verdict = Verdict(decomposable=decomposable, codim_ok=codim_ok, certificates=certs)
    if vector is None:
        return verdict
    e_ok = True
    for form in ctx.E:
        val = form.evaluate(vector)
        if not vector.field.is_zero(val):
            e_ok = False
            certs.append(
                {
                    "kind": "E",
                    "form": _serialize_linear(form, ctx.n, ctx.R + 1),
                    "value": vector.field.to_str(val),
                }
            )
            break
    verdict.E_ok = e_ok
    fq_ok, witness = cross_quadric_residual(f_matrix(ctx.table, vector))
    verdict.Fquad_ok = fq_ok
    if not fq_ok:
        certs.append({"kind": "Fquad", "witness": _witness_json(witness, ctx)})
    return verdict


def _witness_json(witness: dict, ctx: EquationContext) -> dict:
    basis_r = monomial_basis(ctx.n, ctx.R)
    basis_r1 = monomial_basis(ctx.n, ctx.R + 1)
    return {
        "m1": [list(basis_r[p]) for p in witness["m1"]],
        "m2": [list(basis_r[p]) for p in witness["m2"]],
        "n1": [list(basis_r1[p]) for p in witness["col1"][0]],
        "alpha1": list(witness["col1"][1]),
        "n2": [list(basis_r1[p]) for p in witness["col2"][0]],
        "alpha2": list(witness["col2"][1]),
        "minor": witness["minor"],
    }


@dataclass
class CrossCheckReport:
    verdict: Verdict
    below_gotzmann: bool
    problems: list

    @property
    def consistent(self) -> bool:
        return not self.problems

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.to_json(),
            "below_gotzmann": self.below_gotzmann,
            "consistent": self.consistent,
            "problems": self.problems,
        }


def cross_check(
    point,
    spec: HilbertPolynomialSpec,
    n: int,
    R: int,
    allow_below_gotzmann: bool = False,
    raise_on_inconsistency: bool = True,
) -> CrossCheckReport:
    """Run both routes plus the conductor and assert their agreement.

    Below the gotzmann number (override required) the oracle-vs-equations
    equivalence is not claimed and is reported, not asserted; the
    linear-form <-> conductor-codimension equivalence is asserted at every
    degree.
    """
    below = R < spec.gotzmann
    if below and not allow_below_gotzmann:
        raise BelowGotzmann(
            f"R={R} is below the gotzmann number {spec.gotzmann}; override to experiment"
        )
    ctx = equation_context(spec, n, R)
    verdict = equation_verdict(point, ctx)
    _vector, sub, _dec, codim_ok, _ = _resolve_point(point, ctx)

    gc = None
    if sub is not None and codim_ok:
        verdict.oracle_ok = gotzmann_oracle(sub, spec, R, allow_below_gotzmann=True)
        gc = generic_colon(sub)
        verdict.h_ok = True if spec.is_constant else gc.codim <= ctx.pR
        verdict.conductor_k_rational = gc.k_rational
        if not verdict.oracle_ok:
            verdict.certificates.append(
                {
                    "kind": "oracle",
                    "colon_codim": colon_by_S1(sub).codim,
                    "expected": ctx.pR,
                }
            )
    else:
        verdict.oracle_ok = False
        verdict.h_ok = False
        verdict.conductor_k_rational = False

    problems = []
    if not below and verdict.equation_member != verdict.oracle_ok:
        problems.append(
            f"equation verdict {verdict.equation_member} != oracle verdict {verdict.oracle_ok}"
        )
    if sub is not None and codim_ok:
        if verdict.E_ok != verdict.h_ok:
            problems.append(f"E_ok {verdict.E_ok} != h_membership {verdict.h_ok}")
        if verdict.h_ok and gc is not None:
            guard_ok = (not below) or gc.codim == ctx.pR
            if guard_ok:
                if verdict.Fquad_ok != verdict.conductor_k_rational:
                    problems.append(
                        f"Fquad_ok {verdict.Fquad_ok} != k_rational {verdict.conductor_k_rational}"
                    )
                if not below and verdict.oracle_ok != verdict.Fquad_ok:
                    problems.append(
                        f"oracle_ok {verdict.oracle_ok} != Fquad_ok {verdict.Fquad_ok} on H"
                    )
    report = CrossCheckReport(verdict=verdict, below_gotzmann=below, problems=problems)
    if problems and raise_on_inconsistency:
        raise InconsistencyDetected(problems, report)
    return report
