"""Classical group characters as ratios of determinants.

Every family is a quotient ``coeff * det(numerator) / det(denominator)``
whose matrix entries are ``x_h^e`` or ``x_h^e +/- x_h^-e``.  The exponent
patterns live in one table (:data:`PATTERNS`); the symbolic, rational-point
and principal-specialization evaluators all read from it.

Families:

``gl``       Schur polynomial, entries ``x^(lam_t + N - t)``
``so-odd``   odd orthogonal, ``x^e - x^-e`` with ``e = lam_t + N - t + 1/2``
``sp``       symplectic, ``x^e - x^-e`` with ``e = lam_t + N - t + 1``
``o-even``   even orthogonal, ``2 * det(x^e + x^-e) / ...`` with ``e = lam_t + N - t``
``so-even``  ``(det(x^e + x^-e) + det(x^e - x^-e)) / ...``; last part may be negative
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .laurent import (
    LaurentPoly,
    NotDivisibleError,
    Rational,
    SquareRootError,
    bareiss_det,
    det,
    exact_div,
    product,
    rational_pow,
    to_rational,
)
from .shapes import Shape, SkewDiagram, odd_columns, rectangle, subshapes_of_rectangle

FAMILIES = ("gl", "so-odd", "sp", "o-even", "so-even")
WEYL_TYPE = {"gl": "A", "so-odd": "B", "sp": "C", "o-even": "D", "so-even": "D"}


@dataclass(frozen=True)
class Pattern:
    shift: int  # doubled offset added to lam_t + N - t
    numerators: Tuple[Tuple[int, Optional[int]], ...]  # (coefficient, sign of x^-e term or None)
    denominator_sign: Optional[int]


PATTERNS: Dict[str, Pattern] = {
    "gl": Pattern(0, ((1, None),), None),
    "so-odd": Pattern(1, ((1, -1),), -1),
    "sp": Pattern(2, ((1, -1),), -1),
    "o-even": Pattern(0, ((2, 1),), 1),
    "so-even": Pattern(0, ((1, 1), (1, -1)), 1),
}

O_EVEN_CAVEAT = (
    "o-even needs every part strictly positive: with a zero last part the "
    "determinantal quotient (with its factor 2) is twice an irreducible "
    "character and a different normalization would be required"
)


class CharacterError(ValueError):
    pass


class SingularDenominatorError(ArithmeticError):
    """The Weyl denominator vanishes at the requested point."""


class SymbolicGuardError(RuntimeError):
    pass


def max_symbolic_vars() -> int:
    return int(os.environ.get("CHARLAB_MAX_SYMBOLIC_VARS", "8"))


@dataclass(frozen=True)
class CharacterSpec:
    """A character to evaluate.

    ``literal=True`` lifts the o-even positivity check and evaluates the
    determinantal quotient exactly as written, factor 2 included.
    """

    family: str
    shape: Shape
    nvars: int
    literal: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CharacterError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.nvars < 1:
            raise CharacterError("need at least one variable")
        if len(self.shape) != self.nvars:
            raise CharacterError(f"shape {self.shape} has {len(self.shape)} parts but there are {self.nvars} variables")
        d = self.shape.doubled
        if self.family in ("gl", "sp") and not self.shape.is_partition:
            raise CharacterError(f"{self.family} needs a partition, got {self.shape}")
        if self.family == "so-even":
            if len(d) >= 2 and d[-2] < abs(d[-1]):
                raise CharacterError(f"so-even needs lam_(N-1) >= |lam_N|, got {self.shape}")
        elif d[-1] < 0:
            raise CharacterError(f"{self.family} does not allow negative parts")
        if self.family == "o-even" and d[-1] == 0 and not self.literal:
            raise CharacterError(O_EVEN_CAVEAT)

    @classmethod
    def make(cls, family: str, shape, nvars: Optional[int] = None, literal: bool = False) -> "CharacterSpec":
        if isinstance(shape, str):
            shape = Shape.parse(shape)
        elif not isinstance(shape, Shape):
            shape = Shape.of(shape)
        return cls(family, shape, len(shape) if nvars is None else nvars, literal)


# -- matrices as term lists ------------------------------------------------------
# An entry is a tuple of (coefficient, doubled exponent) pairs in the row variable.

Entry = Tuple[Tuple[int, int], ...]


def _entry(e: int, sign: Optional[int]) -> Entry:
    if sign is None:
        return ((1, e),)
    if e == 0:
        return ((1 + sign, 0),) if 1 + sign else ()
    return ((1, e), (sign, -e))


def _matrix(doubled_parts: Sequence[int], shift: int, sign: Optional[int]) -> List[List[Entry]]:
    n = len(doubled_parts)
    cols = [doubled_parts[t] + 2 * (n - 1 - t) + shift for t in range(n)]
    return [[_entry(e, sign) for e in cols] for _ in range(n)]


def numerator_matrices(spec: CharacterSpec) -> List[Tuple[int, List[List[Entry]]]]:
    pat = PATTERNS[spec.family]
    return [(c, _matrix(spec.shape.doubled, pat.shift, s)) for c, s in pat.numerators]


def denominator_matrix(family: str, nvars: int) -> List[List[Entry]]:
    pat = PATTERNS[_family_of(family)]
    return _matrix((0,) * nvars, pat.shift, pat.denominator_sign)


def _family_of(family_or_type: str) -> str:
    inverse = {"A": "gl", "B": "so-odd", "C": "sp", "D": "o-even"}
    if family_or_type in PATTERNS:
        return family_or_type
    if family_or_type in inverse:
        return inverse[family_or_type]
    raise CharacterError(f"unknown family {family_or_type!r}")


def _row_shifts(mats: Sequence[List[List[Entry]]], n: int) -> List[int]:
    """Per-row doubled shift (0 or 1) making every exponent in that row integral.

    A row whose exponents are all odd in every matrix is multiplied through
    by ``x_h^(1/2)``; numerator and denominator share the factor, so the
    quotient is unchanged.
    """
    shifts = []
    for h in range(n):
        exps = [d for m in mats for entry in m[h] for _, d in entry]
        shifts.append(1 if exps and all(d % 2 for d in exps) else 0)
    return shifts


def _symbolic(matrix: List[List[Entry]], nvars: int) -> List[List[LaurentPoly]]:
    out = []
    for h, row in enumerate(matrix):
        prow = []
        for entry in row:
            terms = {}
            for c, d in entry:
                exps = [0] * nvars
                exps[h] = d
                terms[tuple(exps)] = terms.get(tuple(exps), 0) + c
            prow.append(LaurentPoly.from_dict(nvars, terms))
        out.append(prow)
    return out


# -- Weyl denominators -------------------------------------------------------------

def weyl_denominator_factors(family: str, nvars: int) -> Tuple[LaurentPoly, List[LaurentPoly]]:
    """``(monomial prefactor, binomial factors)`` of the product formula."""
    kind = WEYL_TYPE[_family_of(family)]
    n = nvars
    if n < 1:
        raise CharacterError("need at least one variable")
    x = [LaurentPoly.var(n, i) for i in range(n)]
    one = LaurentPoly.one(n)
    factors: List[LaurentPoly] = []
    for h in range(n):
        for t in range(h + 1, n):
            factors.append(x[h] - x[t])
            if kind != "A":
                factors.append(x[h] * x[t] - one)
    if kind == "A":
        pre = one
    elif kind == "B":
        pre = LaurentPoly.monomial(n, [-2 * n + 1] * n)
        factors += [x[h] - one for h in range(n)]
    elif kind == "C":
        pre = LaurentPoly.monomial(n, [-2 * n] * n)
        for h in range(n):
            factors += [x[h] - one, x[h] + one]
    else:
        pre = LaurentPoly.monomial(n, [-2 * n + 2] * n, 2)
    return pre, factors


def weyl_denominator(family: str, nvars: int) -> LaurentPoly:
    """Product form of the denominator determinant for the family's type."""
    pre, factors = weyl_denominator_factors(family, nvars)
    return pre * product(factors, nvars)


def weyl_denominator_matrix(family: str, nvars: int) -> List[List[LaurentPoly]]:
    return _symbolic(denominator_matrix(family, nvars), nvars)


# -- evaluators ---------------------------------------------------------------------

def _check_guard(nvars: int) -> None:
    limit = max_symbolic_vars()
    if nvars > limit:
        raise SymbolicGuardError(
            f"symbolic evaluation limited to {limit} variables (set CHARLAB_MAX_SYMBOLIC_VARS to change)"
        )


@lru_cache(maxsize=512)
def character_poly(spec: CharacterSpec) -> LaurentPoly:
    """The character as a Laurent polynomial (exact division asserted)."""
    _check_guard(spec.nvars)
    n = spec.nvars
    num = LaurentPoly.zero(n)
    for c, m in numerator_matrices(spec):
        num = num + det(_symbolic(m, n)).scale(c)
    pre, factors = weyl_denominator_factors(spec.family, n)
    try:
        q = exact_div(num, pre)
        for f in factors:
            q = exact_div(q, f)
    except NotDivisibleError as exc:  # pragma: no cover - would mean a broken table
        raise ArithmeticError(f"Weyl denominator does not divide the numerator for {spec}") from exc
    return q


def _evaluate_matrix(matrix, shifts, point) -> List[List[Rational]]:
    out = []
    for h, row in enumerate(matrix):
        out.append([sum((c * rational_pow(point[h], d + shifts[h]) for c, d in entry), 0) for entry in row])
    return out


def character_at(spec: CharacterSpec, point: Sequence, signs: Optional[Sequence[bool]] = None) -> Rational:
    """Exact value at a point via Bareiss determinants of rational matrices.

    ``signs[i]`` true evaluates at ``-point[i]``.  Raises
    :class:`SingularDenominatorError` where the Weyl denominator vanishes;
    use :func:`principal_specialization` for such points.
    """
    n = spec.nvars
    if len(point) != n:
        raise CharacterError(f"point has {len(point)} coordinates, need {n}")
    x = [to_rational(v) for v in point]
    if signs is not None:
        if len(signs) != n:
            raise CharacterError("one sign per variable")
        x = [-v if s else v for v, s in zip(x, signs)]
    if any(v == 0 for v in x):
        raise CharacterError("characters are evaluated at nonzero points only")
    nums = numerator_matrices(spec)
    den = denominator_matrix(spec.family, n)
    shifts = _row_shifts([m for _, m in nums] + [den], n)
    d = bareiss_det(_evaluate_matrix(den, shifts, x))
    if d == 0:
        raise SingularDenominatorError(
            "the Weyl denominator vanishes at this point; use the principal specialization instead"
        )
    total = sum((c * bareiss_det(_evaluate_matrix(m, shifts, x)) for c, m in nums), 0)
    v = Fraction(total) / Fraction(d)
    return v.numerator if v.denominator == 1 else v


def _q_matrix(matrix, shifts, images) -> List[List[LaurentPoly]]:
    out = []
    for h, row in enumerate(matrix):
        c_h, k_h = images[h]
        prow = []
        for entry in row:
            terms: Dict[Tuple[int], Rational] = {}
            for c, d in entry:
                d = d + shifts[h]
                key = (k_h * d,)
                terms[key] = terms.get(key, 0) + c * rational_pow(c_h, d)
            prow.append(LaurentPoly.from_dict(1, terms))
        out.append(prow)
    return out


def principal_specialization(spec: CharacterSpec, negate: bool = False) -> Rational:
    """Value at all ones (or all minus ones) by the q-route.

    Substitutes ``x_h = q^h`` (``x_h = -q^(h-1)`` when ``negate``), divides
    the two univariate determinants exactly and sets ``q = 1``.
    """
    n = spec.nvars
    images = [(-1, h) if negate else (1, h + 1) for h in range(n)]
    nums = numerator_matrices(spec)
    den = denominator_matrix(spec.family, n)
    shifts = _row_shifts([m for _, m in nums] + [den], n)
    try:
        dq = det(_q_matrix(den, shifts, images))
        nq = LaurentPoly.zero(1)
        for c, m in nums:
            nq = nq + det(_q_matrix(m, shifts, images)).scale(c)
    except SquareRootError as exc:
        raise CharacterError(f"{spec.family} {spec.shape} has half-integer exponents; cannot negate") from exc
    quotient = exact_div(nq, dq)
    value = sum((Fraction(c) for _, c in quotient.terms()), Fraction(0))
    return value.numerator if value.denominator == 1 else value


# -- product formulas ------------------------------------------------------------------

def sp_dimension_product(m: int, N: int) -> Rational:
    """prod_{1<=h<t<=N+1} (2m+2N+3-h-t) / (2N+3-h-t)."""
    if m < 0 or N < 0:
        raise ValueError("m and N must be non-negative")
    v = Fraction(1)
    for h in range(1, N + 2):
        for t in range(h + 1, N + 2):
            v *= Fraction(2 * m + 2 * N + 3 - h - t, 2 * N + 3 - h - t)
    return v.numerator if v.denominator == 1 else v


def spp_star_product(m: int, n: int) -> Rational:
    """2 * prod_{1<=h<t<=n} (2m+2n-h-t) / (2n-h-t)."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    v = Fraction(2)
    for h in range(1, n + 1):
        for t in range(h + 1, n + 1):
            v *= Fraction(2 * m + 2 * n - h - t, 2 * n - h - t)
    return v.numerator if v.denominator == 1 else v


def so_odd_minus_ones_product(m: int, n: int) -> Rational:
    """(-1)^(mn) prod_{1<=h<t<=n} (2m+2n+1-h-t) / (2n+1-h-t)."""
    v = Fraction((-1) ** (m * n))
    for h in range(1, n + 1):
        for t in range(h + 1, n + 1):
            v *= Fraction(2 * m + 2 * n + 1 - h - t, 2 * n + 1 - h - t)
    return v.numerator if v.denominator == 1 else v


# -- Schur-sum decomposition of so-even rectangles -------------------------------------

SCHUR_SUM_MODES = ("zero-odd-cols", "2c-odd-cols")


def admissible_subshapes(c, nvars: int, mode: str):
    """Shapes nu inside ((2c)^n) whose complement has 0 (or 2c) odd columns."""
    if mode not in SCHUR_SUM_MODES:
        raise ValueError(f"mode must be one of {SCHUR_SUM_MODES}")
    width = rectangle(c, 1).doubled[0]  # doubled c == 2c
    outer = rectangle(width, nvars)
    target = 0 if mode == "zero-odd-cols" else width
    for nu in subshapes_of_rectangle(width, nvars):
        if odd_columns(SkewDiagram(outer, nu)) == target:
            yield nu


def so_even_schur_sum(c, nvars: int, mode: str) -> LaurentPoly:
    """(x_1...x_n)^(-c) times the sum of s_nu over admissible nu."""
    _check_guard(nvars)
    doubled_c = rectangle(c, 1).doubled[0]
    total = LaurentPoly.zero(nvars)
    for nu in admissible_subshapes(c, nvars, mode):
        total = total + character_poly(CharacterSpec("gl", nu, nvars))
    return total.shift([-doubled_c] * nvars)


def so_even_schur_sum_at_ones(c, nvars: int, mode: str) -> Rational:
    return sum(principal_specialization(CharacterSpec("gl", nu, nvars)) for nu in admissible_subshapes(c, nvars, mode))


def so_even_pair(c, nvars: int) -> Tuple[CharacterSpec, CharacterSpec]:
    """The two so-even characters ``(c^n)`` and ``(c^(n-1), -c)``."""
    d = rectangle(c, 1).doubled[0]
    return (
        CharacterSpec("so-even", Shape((d,) * nvars), nvars),
        CharacterSpec("so-even", Shape((d,) * (nvars - 1) + (-d,)), nvars),
    )
