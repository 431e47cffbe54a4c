"""Binomial combinatorics for Hilbert functions.

Provides the unique greedy binomial expansion of an integer in a fixed
degree (``macaulay_rep``), the shifted re-expansions ``macaulay_upper``
(bounding codimension growth under multiplication by linear forms) and
``macaulay_lower`` (bounding restriction to a general hyperplane), and
admissible Hilbert polynomials stored via their binomial decomposition

    p(d) = C(d + a_1, a_1) + C(d + a_2 - 1, a_2) + ... ,
    a_1 >= a_2 >= ... >= a_r >= 0,

whose length r ("gotzmann") is the degree from which the pairwise
codimension criterion characterizes Hilbert points.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class NotAdmissible(ValueError):
    """The polynomial is not the Hilbert polynomial of any subscheme."""


def binom(n: int, k: int) -> int:
    """C(n, k) for integer n (possibly negative), via falling factorials.

    For n >= 0 this agrees with math.comb; for n < 0 it is the polynomial
    extension n(n-1)...(n-k+1)/k!, which is what degree extrapolation of
    Hilbert polynomials requires.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    num = 1
    for i in range(k):
        num *= n - i
    return num // math.factorial(k)


@dataclass(frozen=True)
class MacaulayRep:
    """Greedy expansion c = C(k_d, d) + C(k_{d-1}, d-1) + ...

    ``terms`` lists the k-values from position d downward; the list is
    shorter than d when the remainder hits zero early (trailing binomials
    vanish). Invariant: strictly decreasing, k_j >= j.
    """

    d: int
    terms: tuple[int, ...]

    def positions(self) -> list[int]:
        return [self.d - i for i in range(len(self.terms))]

    def value(self) -> int:
        return sum(math.comb(k, j) for k, j in zip(self.terms, self.positions()))


def macaulay_rep(c: int, d: int) -> MacaulayRep:
    if c < 0 or d < 1:
        raise ValueError("need c >= 0 and d >= 1")
    terms = []
    rem = c
    j = d
    while rem > 0 and j >= 1:
        k = j
        while math.comb(k + 1, j) <= rem:
            k += 1
        terms.append(k)
        rem -= math.comb(k, j)
        j -= 1
    assert rem == 0, "greedy expansion must terminate at zero"
    assert all(a > b for a, b in zip(terms, terms[1:])), "k-sequence must strictly decrease"
    return MacaulayRep(d, tuple(terms))


def macaulay_upper(c: int, d: int) -> int:
    """c^<d>: bound on the codimension of S_1 * W given codim W = c in degree d."""
    rep = macaulay_rep(c, d)
    return sum(math.comb(k + 1, j + 1) for k, j in zip(rep.terms, rep.positions()))


def macaulay_lower(c: int, d: int) -> int:
    """c_<d>: bound on the codimension of the restriction of W to a general hyperplane."""
    rep = macaulay_rep(c, d)
    return sum(math.comb(k - 1, j) for k, j in zip(rep.terms, rep.positions()))


@dataclass(frozen=True)
class HilbertPolynomialSpec:
    """Admissible Hilbert polynomial via its binomial decomposition."""

    a: tuple[int, ...]
    coefficients: tuple[Fraction, ...]  # low degree -> high degree

    @property
    def gotzmann(self) -> int:
        return len(self.a)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def value(self, d: int) -> int:
        acc = 0
        for i, ai in enumerate(self.a):
            acc += binom(d + ai - i, ai)
        return acc

    def is_extrapolation(self, d: int) -> bool:
        return d < self.gotzmann

    def poly_str(self) -> str:
        return format_polynomial(self.coefficients)

    def __str__(self):
        return self.poly_str()


def eval_hilbert(spec: HilbertPolynomialSpec, d: int) -> int:
    """Exact integer value p(d); degrees below the gotzmann number extrapolate."""
    return spec.value(d)


def _binomial_poly(shift: int, a: int) -> list[Fraction]:
    """Coefficients of C(t + shift, a) as a polynomial in t (low -> high)."""
    coeffs = [Fraction(1)]
    for i in range(a):
        # multiply by (t + shift - i)
        c = Fraction(shift - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for k, v in enumerate(coeffs):
            nxt[k] += v * c
            nxt[k + 1] += v
        coeffs = nxt
    fact = Fraction(math.factorial(a))
    return [v / fact for v in coeffs]


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


MAX_GOTZMANN = 2_000_000


def hilbert_spec_from_coefficients(coeffs: Sequence) -> HilbertPolynomialSpec:
    """Recover the unique nonincreasing a-sequence greedily, or fail.

    At each step the remainder must have a positive leading coefficient
    whose product with (deg)! is an integer; one binomial layer of the
    current degree is peeled off per step.
    """
    work = _trim([Fraction(c) for c in coeffs])
    if not work:
        raise NotAdmissible("the zero polynomial is not admissible")
    original = list(work)
    a_list: list[int] = []
    i = 0
    while work:
        deg = len(work) - 1
        lead = work[-1]
        if lead <= 0:
            raise NotAdmissible(f"greedy decomposition failed: leading term {lead} t^{deg} at layer {i + 1}")
        if (lead * math.factorial(deg)).denominator != 1:
            raise NotAdmissible(f"leading coefficient {lead} is not an integer multiple of 1/{deg}!")
        if i >= MAX_GOTZMANN:
            raise NotAdmissible("decomposition does not terminate")
        a_list.append(deg)
        layer = _binomial_poly(deg - i, deg)
        for k in range(len(layer)):
            if k < len(work):
                work[k] -= layer[k]
            elif layer[k] != 0:
                raise NotAdmissible("layer degree exceeds remainder degree")
        work = _trim(work)
        i += 1
    assert all(x >= y for x, y in zip(a_list, a_list[1:])), "a-sequence must be nonincreasing"
    spec = HilbertPolynomialSpec(tuple(a_list), tuple(original))
    r = spec.gotzmann
    for d in range(r, r + 11):
        direct = sum(c * d**k for k, c in enumerate(original))
        if direct != spec.value(d):
            raise NotAdmissible("decomposition does not reproduce the polynomial")
    return spec


def hilbert_spec_from_decomposition(a: Sequence[int]) -> HilbertPolynomialSpec:
    a = tuple(int(x) for x in a)
    if not a:
        raise NotAdmissible("empty decomposition")
    if any(x < 0 for x in a) or any(x < y for x, y in zip(a, a[1:])):
        raise NotAdmissible("a-sequence must be nonincreasing and nonnegative")
    coeffs = [Fraction(0)]
    for i, ai in enumerate(a):
        layer = _binomial_poly(ai - i, ai)
        while len(coeffs) < len(layer):
            coeffs.append(Fraction(0))
        for k, v in enumerate(layer):
            coeffs[k] += v
    return HilbertPolynomialSpec(a, tuple(_trim(coeffs)))


# -- text grammar ------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?P<coef>\d+(/\d+)?)?(?:\*)?(?P<var>t(\^(?P<exp>\d+))?)?$"
)


def parse_polynomial(text: str) -> list[Fraction]:
    """Parse the polynomial grammar: ``"3t+1"``, ``"t+2"``, ``"2"``,
    ``"1/2t^2+3/2t+1"``; or explicit decomposition ``"a:[1,1,1,0]"``
    (returned as the coefficient list of the decomposed polynomial)."""
    s = text.strip().replace(" ", "")
    if s.startswith("a:"):
        body = s[2:]
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad decomposition syntax: {text!r}")
        a = [int(x) for x in body[1:-1].split(",") if x != ""]
        return list(hilbert_spec_from_decomposition(a).coefficients)
    if not s:
        raise ValueError("empty polynomial")
    # split into signed terms
    chunks = re.findall(r"[+-]?[^+-]+", s)
    coeffs: list[Fraction] = []
    for chunk in chunks:
        sign = 1
        body = chunk
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"bad polynomial term {chunk!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        else:
            exp = 0
        while len(coeffs) <= exp:
            coeffs.append(Fraction(0))
        coeffs[exp] += sign * coef
    return _trim(coeffs)


def parse_hilbert_spec(text: str) -> HilbertPolynomialSpec:
    return hilbert_spec_from_coefficients(parse_polynomial(text))


def format_polynomial(coeffs: Sequence[Fraction]) -> str:
    terms = []
    for exp in range(len(coeffs) - 1, -1, -1):
        c = coeffs[exp]
        if c == 0:
            continue
        mag = abs(c)
        if exp == 0:
            body = str(mag)
        else:
            var = "t" if exp == 1 else f"t^{exp}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(terms) if terms else "0"
