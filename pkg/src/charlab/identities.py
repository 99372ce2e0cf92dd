"""Mechanical checks of the subset-sum lemmas and the factorization theorems.

Two modes:

* ``symbolic`` expands both sides completely and compares canonical forms.
* ``random`` compares exact rational values at pseudo-random points drawn
  from a seeded generator; the first mismatching trial is reported.

Subsets are 1-based, matching the ground sets ``[2N]`` / ``[2N+1]``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .characters import (
    CharacterSpec,
    character_at,
    character_poly,
    max_symbolic_vars,
)
from .laurent import (
    DenseExpansion,
    LaurentPoly,
    Rational,
    dense_sum,
    product,
    rational_sqrt,
    substitute,
    to_rational,
)
from .shapes import Shape, format_half, parse_half

MODES = ("symbolic", "random")
THEOREMS = ("thm1", "thm2", "thm3", "thm4", "uniform15", "uniform65", "eq13", "eq14")
ALIASES = {"1": "thm1", "2": "thm2", "3": "thm3", "4": "thm4",
           "uniform-1-2": "uniform15", "uniform-3-4": "uniform65"}
DENSE_CELL_LIMIT = 40_000_000


class GuardError(RuntimeError):
    pass


def _fmt(v: Rational) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass
class VerificationReport:
    identity: str
    params: Dict[str, str]
    mode: str
    trials: int
    seed: Optional[int]
    verdict: str = "equal"
    counterexample: Optional[Dict[str, object]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"

    def to_json(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "identity": self.identity,
            "params": dict(self.params),
            "mode": self.mode,
            "trials": str(self.trials),
            "seed": None if self.seed is None else str(self.seed),
            "verdict": self.verdict,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass(frozen=True)
class SubsetTerm:
    A: Tuple[int, ...]
    Ac: Tuple[int, ...]
    K: int

    def __post_init__(self):
        if set(self.A) | set(self.Ac) != set(range(1, self.K + 1)) or set(self.A) & set(self.Ac):
            raise ValueError("A and Ac must partition [K]")

    @classmethod
    def of(cls, A, K: int) -> "SubsetTerm":
        A = tuple(sorted(A))
        return cls(A, tuple(i for i in range(1, K + 1) if i not in A), K)


def subset_terms(K: int, size: Optional[int] = None):
    sizes = range(K + 1) if size is None else (size,)
    for r in sizes:
        for A in itertools.combinations(range(1, K + 1), r):
            yield SubsetTerm.of(A, K)


# -- V and R products --------------------------------------------------------------

def _x(nvars: int, a: int, inverted: bool) -> LaurentPoly:
    if not 1 <= a <= nvars:
        raise ValueError(f"index {a} outside 1..{nvars}")
    return LaurentPoly.var(nvars, a - 1, -1 if inverted else 1)


def vprod_factors(A: Sequence[int], inverted: bool, nvars: int) -> List[LaurentPoly]:
    A = sorted(A)
    return [_x(nvars, a, inverted) - _x(nvars, b, inverted) for a, b in itertools.combinations(A, 2)]


def rprod_factors(A, B, a_inverted: bool, b_inverted: bool, nvars: int) -> List[LaurentPoly]:
    return [_x(nvars, a, a_inverted) - _x(nvars, b, b_inverted) for a in A for b in B]


def vprod(A: Sequence[int], inverted: bool = False, nvars: Optional[int] = None) -> LaurentPoly:
    """prod_{a<b in A} (x_a - x_b), or with reciprocals; empty product is 1."""
    n = nvars or max(A, default=1)
    return product(vprod_factors(A, inverted, n), n)


def rprod(A, B, a_inverted: bool = False, b_inverted: bool = True, nvars: Optional[int] = None) -> LaurentPoly:
    """prod_{a in A} prod_{b in B} (x_a^{+-1} - x_b^{+-1}); empty product is 1."""
    n = nvars or max(list(A) + list(B), default=1)
    return product(rprod_factors(A, B, a_inverted, b_inverted, n), n)


# -- lemma summands ------------------------------------------------------------------

def lemma_ground_set(which: int, N: int) -> int:
    if which not in (1, 2, 3):
        raise ValueError("lemma must be 1, 2 or 3")
    if which in (1, 2) and N < 1:
        raise ValueError(f"lemma {which} needs N >= 1")
    if N < 0:
        raise ValueError("N must be non-negative")
    return 2 * N + 1 if which == 3 else 2 * N


def _summand_parts(which: int, side: str, term: SubsetTerm, N: int):
    """``(sign, doubled monomial, binomial factor index pairs)`` for one summand.

    Binomials are encoded as ``(a, a_inv, b, b_inv)`` meaning
    ``x_a^{+-1} - x_b^{+-1}``.
    """
    A, Ac, K = term.A, term.Ac, term.K
    pairs = []
    for S in (A, Ac):
        for a, b in itertools.combinations(S, 2):
            pairs.append((a, False, b, False))
            pairs.append((a, True, b, True))
    mono = [0] * K
    sign = 1
    if side == "lhs":
        pairs += [(a, False, b, True) for a in A for b in A]
        pairs += [(a, False, b, True) for a in Ac for b in Ac]
    else:
        pairs += [(a, False, b, True) for a in A for b in Ac]
        pairs += [(a, False, b, True) for a in Ac for b in A]
        if which in (2, 3):
            for a in A:
                mono[a - 1] = -2
            for a in Ac:
                mono[a - 1] = 2
        if which == 3 and (N + len(A)) % 2:
            sign = -1
    return sign, mono, pairs


def _side_terms(which: int, side: str, N: int):
    K = lemma_ground_set(which, N)
    size = N if side == "lhs" else None
    return K, list(subset_terms(K, size))


def lemma_summand(which: int, side: str, A, N: int) -> LaurentPoly:
    """One summand of a lemma side, expanded with sparse arithmetic."""
    K = lemma_ground_set(which, N)
    sign, mono, pairs = _summand_parts(which, side, SubsetTerm.of(A, K), N)
    out = LaurentPoly.monomial(K, mono, sign)
    for a, ai, b, bi in pairs:
        out = out * (_x(K, a, ai) - _x(K, b, bi))
    return out


def lemma_side_sparse(which: int, side: str, N: int) -> LaurentPoly:
    """A lemma side summed term by term with sparse arithmetic (small N only)."""
    K, terms = _side_terms(which, side, N)
    total = LaurentPoly.zero(K)
    for t in terms:
        total = total + lemma_summand(which, side, t.A, N)
    return total


def lemma_side(which: int, side: str, N: int) -> LaurentPoly:
    """Fully expanded lemma side.

    Summands with the same ``|A|`` are variable renamings of one another
    (via the order-preserving shuffle taking ``{1..r}`` to ``A``), so only one
    representative per size is expanded, densely, and the rest are obtained
    by transposing its coefficient array.
    """
    if side not in ("lhs", "rhs"):
        raise ValueError("side must be 'lhs' or 'rhs'")
    K, terms = _side_terms(which, side, N)
    limit = max_symbolic_vars()
    if 2 * N > limit:
        raise GuardError(f"symbolic lemma sides are limited to 2N <= {limit} (CHARLAB_MAX_SYMBOLIC_VARS)")
    bases: Dict[int, DenseExpansion] = {}
    for r in sorted({len(t.A) for t in terms}):
        base = SubsetTerm.of(range(1, r + 1), K)
        sign, mono, pairs = _summand_parts(which, side, base, N)
        lo = [0] * K
        hi = [0] * K
        for i in range(K):
            lo[i] = hi[i] = mono[i] // 2
        for a, ai, b, bi in pairs:
            for idx, inv in ((a, ai), (b, bi)):
                if inv:
                    lo[idx - 1] -= 1
                else:
                    hi[idx - 1] += 1
        cells = 1
        for i in range(K):
            cells *= hi[i] - lo[i] + 1
        if cells > DENSE_CELL_LIMIT:
            raise GuardError(f"dense expansion would need {cells} cells")
        acc = DenseExpansion.one(K).mul(LaurentPoly.monomial(K, mono, sign))
        for a, ai, b, bi in pairs:
            acc = acc.mul(_x(K, a, ai) - _x(K, b, bi))
        bases[r] = acc
    parts = []
    for t in terms:
        perm = [a - 1 for a in t.A] + [a - 1 for a in t.Ac]
        parts.append(bases[len(t.A)].permuted(perm))
    return dense_sum(parts).to_poly()


def lemma_side_at(which: int, side: str, N: int, point: Sequence) -> Rational:
    """Exact value of a lemma side at a rational point (no expansion).

    With ``x_i = p_i / q_i`` every summand is an integer over a product of
    powers of the ``p_i`` and ``q_i``, so the side is accumulated over one
    common denominator in integer arithmetic and reduced once at the end.
    """
    K, terms = _side_terms(which, side, N)
    x = [Fraction(to_rational(v)) for v in point]
    if len(x) != K:
        raise ValueError(f"point needs {K} coordinates")
    if any(v == 0 for v in x):
        raise ZeroDivisionError("lemma sides need nonzero coordinates")
    p = [v.numerator for v in x]
    q = [v.denominator for v in x]
    # u = (numerator, index into the 2K denominators): x_i -> (p_i, q_i), 1/x_i -> (q_i, p_i)
    unit = {False: [(p[i], i) for i in range(K)], True: [(q[i], K + i) for i in range(K)]}
    dens = q + p

    parts = []
    top = [0] * (2 * K)
    for t in terms:
        sign, mono, pairs = _summand_parts(which, side, t, N)
        num = sign
        exps = [0] * (2 * K)
        for a, ai, b, bi in pairs:
            (na, da), (nb, db) = unit[ai][a - 1], unit[bi][b - 1]
            num *= na * dens[db] - nb * dens[da]
            exps[da] += 1
            exps[db] += 1
        for i, d in enumerate(mono):
            if d:
                n_i, d_i = unit[d < 0][i]
                num *= n_i ** abs(d // 2)
                exps[d_i] += abs(d // 2)
        parts.append((num, exps))
        top = [max(u, v) for u, v in zip(top, exps)]

    total = 0
    for num, exps in parts:
        if num:
            for j, e in enumerate(exps):
                if top[j] > e:
                    num *= dens[j] ** (top[j] - e)
            total += num
    den = 1
    for j, e in enumerate(top):
        den *= dens[j] ** e
    v = Fraction(total, den)
    return v.numerator if v.denominator == 1 else v


# -- random points ----------------------------------------------------------------------

def random_point(rng: random.Random, k: int, squares: bool = False, bound: int = 10**6) -> List[Fraction]:
    """Random nonzero rationals avoiding ``x_i = x_j^{+-1}`` (and ``x_i = +-1``).

    With ``squares`` the coordinates are squares of random rationals, so
    half-integer powers stay rational.
    """
    while True:
        ys = []
        for _ in range(k):
            v = Fraction(rng.randint(1, bound), rng.randint(1, bound))
            ys.append(-v if rng.random() < 0.5 else v)
        xs = [y * y for y in ys] if squares else ys
        bad = False
        for i in range(k):
            if xs[i] in (1, -1):
                bad = True
            for j in range(i + 1, k):
                if xs[i] == xs[j] or xs[i] * xs[j] == 1:
                    bad = True
        if not bad:
            return xs


# -- lemma verification -----------------------------------------------------------------

def verify_lemma(which: int, N: int, mode: str = "symbolic", trials: int = 20, seed: int = 0) -> VerificationReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    params = {"N": str(N)}
    if mode == "symbolic":
        rep = VerificationReport(f"lemma{which}", params, mode, 1, None)
        lhs, rhs = lemma_side(which, "lhs", N), lemma_side(which, "rhs", N)
        if lhs != rhs:
            rep.verdict = "counterexample"
            rep.counterexample = {"difference_terms": str(len(lhs - rhs))}
        return rep
    rep = VerificationReport(f"lemma{which}", params, mode, trials, seed)
    rng = random.Random(seed)
    K = lemma_ground_set(which, N)
    for i in range(trials):
        pt = random_point(rng, K)
        lhs = lemma_side_at(which, "lhs", N, pt)
        rhs = lemma_side_at(which, "rhs", N, pt)
        if lhs != rhs:
            rep.verdict = "counterexample"
            rep.counterexample = {"trial": str(i), "point": [_fmt(v) for v in pt], "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
            break
    return rep


def degree_bound(which: int, N: int) -> int:
    return 2 * N + 1 if which == 3 else 2 * N - 1


def degree_bound_check(which: int, N: int) -> bool:
    """Both expanded sides have x_1-degree within the proved bound."""
    bound = 2 * degree_bound(which, N)
    for side in ("lhs", "rhs"):
        p = lemma_side(which, side, N)
        if p.is_zero():
            continue
        lo, hi = p.exponent_range(0)
        if lo < -bound or hi > bound:
            return False
    return True


# -- theorem sides ------------------------------------------------------------------------
# A side is a list of (coefficient, [factor, ...]); a factor is one of
#   ("pair", Shape)            Schur polynomial at x_1, 1/x_1, ..., x_n, 1/x_n
#   ("char", CharacterSpec, negate)
#   ("half",)                  prod (x_i^(1/2) + x_i^(-1/2))

Side = List[Tuple[int, list]]


@dataclass
class TheoremInstance:
    name: str
    n: int
    lhs: Side
    rhs: Side
    needs_squares: bool
    notes: List[str] = field(default_factory=list)


def _pair(M_doubled: int, rows: int, n: int):
    return ("pair", Shape((M_doubled,) * rows + (0,) * (2 * n - rows)))


def _char(family: str, doubled_part: int, n: int, negate: bool = False, literal: bool = False):
    return ("char", CharacterSpec(family, Shape((doubled_part,) * n), n, literal), negate)


def theorem_instance(which: str, m, n: int) -> TheoremInstance:
    """Both sides of a factorization identity for parameters ``(m, n)``.

    For the uniform identities ``m`` may be a half-integer; the rectangle is
    ``((2m)^n)``.  The bridge identities use the shape ``(m^n)``.
    """
    which = ALIASES.get(str(which), str(which))
    if which not in THEOREMS:
        raise ValueError(f"unknown identity {which!r}; expected one of {THEOREMS}")
    if n < 1:
        raise ValueError("n must be at least 1")
    dm = parse_half(m)
    if dm < 0:
        raise ValueError("m must be non-negative")
    if which in ("thm1", "thm2", "thm3", "thm4", "eq13", "eq14") and dm % 2:
        raise ValueError(f"identity {which} needs an integer m")
    mi = dm // 2
    sgn = (-1) ** (mi * n)
    if which == "thm1":
        return TheoremInstance(which, n, [(1, [_pair(4 * mi, n, n)])],
                               [(sgn, [_char("so-odd", dm, n), _char("so-odd", dm, n, negate=True)])], False)
    if which == "thm2":
        return TheoremInstance(which, n, [(1, [_pair(4 * mi + 2, n, n)])],
                               [(1, [_char("sp", dm, n), _char("o-even", dm + 2, n)])], False)
    if which == "thm3":
        return TheoremInstance(which, n, [(1, [_pair(4 * mi + 2, n, n)]), (1, [_pair(4 * mi + 2, n - 1, n)])],
                               [(sgn, [_char("so-odd", dm + 2, n), _char("so-odd", dm, n, negate=True)])], False)
    if which == "thm4":
        if mi == 0:
            inst = theorem_instance("uniform65", 0, n)
            inst.name = "thm4"
            inst.notes = ["m=0 boundary checked through uniform65 with M=0; "
                          "o-even (0^n) evaluated as the literal 2*det/det quotient"]
            return inst
        return TheoremInstance(which, n, [(1, [_pair(4 * mi, n, n)]), (1, [_pair(4 * mi, n - 1, n)])],
                               [(1, [_char("sp", dm, n), _char("o-even", dm, n)])], False)
    if which == "uniform15":
        M2 = 2 * dm  # doubled M
        return TheoremInstance(which, n, [(1, [("half",), _pair(M2, n, n)])],
                               [(1, [_char("so-odd", dm, n), _char("o-even", dm + 1, n)])], True)
    if which == "uniform65":
        M2 = 2 * dm
        inst = TheoremInstance(which, n, [(1, [("half",), _pair(M2, n, n)]), (1, [("half",), _pair(M2, n - 1, n)])],
                               [(1, [_char("so-odd", dm + 1, n), _char("o-even", dm, n, literal=dm == 0)])], True)
        if dm == 0:
            inst.notes.append("o-even (0^n) evaluated as the literal 2*det/det quotient")
        return inst
    lam = Shape((dm,) * n)
    return bridge_instance(which, lam)


def bridge_instance(which: str, lam: Shape) -> TheoremInstance:
    """Bridges between a shape and its half-shift ``lam + 1/2``."""
    if not lam.is_partition:
        raise ValueError("bridge identities take a partition")
    n = len(lam)
    up = lam.shifted(1)
    if which == "eq13":
        sign = -1 if sum(lam.int_parts()) % 2 else 1
        return TheoremInstance(which, n,
                               [(sign, [("char", CharacterSpec("so-odd", lam, n), True), ("half",)])],
                               [(1, [("char", CharacterSpec("o-even", up, n), False)])], True)
    if which == "eq14":
        return TheoremInstance(which, n,
                               [(1, [("char", CharacterSpec("sp", lam, n), False), ("half",)])],
                               [(1, [("char", CharacterSpec("so-odd", up, n), False)])], True)
    raise ValueError(which)


def _half_factor_poly(n: int) -> LaurentPoly:
    return product((LaurentPoly.var(n, i, Fraction(1, 2)) + LaurentPoly.var(n, i, Fraction(-1, 2)) for i in range(n)), n)


def _factor_poly(f, n: int) -> LaurentPoly:
    kind = f[0]
    if kind == "half":
        return _half_factor_poly(n)
    if kind == "pair":
        spec = CharacterSpec("gl", f[1], 2 * n)
        images = [LaurentPoly.var(n, i) for i in range(n)] + [LaurentPoly.var(n, i, -1) for i in range(n)]
        return substitute(character_poly(spec), images)
    spec, negate = f[1], f[2]
    p = character_poly(spec)
    if negate:
        p = substitute(p, [LaurentPoly.var(n, i, 1, -1) for i in range(n)])
    return p


def _factor_at(f, n: int, x: Sequence[Fraction]) -> Rational:
    kind = f[0]
    if kind == "half":
        v = Fraction(1)
        for xi in x:
            r = Fraction(rational_sqrt(xi))
            v *= r + 1 / r
        return v
    if kind == "pair":
        return character_at(CharacterSpec("gl", f[1], 2 * n), list(x) + [1 / Fraction(v) for v in x])
    return character_at(f[1], x, [f[2]] * n if f[2] else None)


def side_poly(side: Side, n: int) -> LaurentPoly:
    total = LaurentPoly.zero(n)
    for coeff, factors in side:
        total = total + product((_factor_poly(f, n) for f in factors), n).scale(coeff)
    return total


def side_at(side: Side, n: int, x: Sequence[Fraction]) -> Rational:
    total = Fraction(0)
    for coeff, factors in side:
        v = Fraction(coeff)
        for f in factors:
            v *= _factor_at(f, n, x)
        total += v
    return total.numerator if total.denominator == 1 else total


def _check_instance(inst: TheoremInstance, params, mode: str, trials: int, seed: int) -> VerificationReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    name = inst.name
    if mode == "symbolic":
        rep = VerificationReport(name, params, mode, 1, None, notes=list(inst.notes))
        lhs, rhs = side_poly(inst.lhs, inst.n), side_poly(inst.rhs, inst.n)
        if lhs != rhs:
            rep.verdict = "counterexample"
            rep.counterexample = {"lhs": str(lhs), "rhs": str(rhs)}
        return rep
    rep = VerificationReport(name, params, mode, trials, seed, notes=list(inst.notes))
    rng = random.Random(seed)
    for i in range(trials):
        pt = random_point(rng, inst.n, squares=inst.needs_squares)
        lhs, rhs = side_at(inst.lhs, inst.n, pt), side_at(inst.rhs, inst.n, pt)
        if lhs != rhs:
            rep.verdict = "counterexample"
            rep.counterexample = {"trial": str(i), "point": [_fmt(v) for v in pt], "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
            break
    return rep


def verify_theorem(which, m, n: int, mode: str = "symbolic", trials: int = 20, seed: int = 0) -> VerificationReport:
    inst = theorem_instance(which, m, n)
    return _check_instance(inst, {"m": format_half(parse_half(m)), "n": str(n)}, mode, trials, seed)


def verify_bridge(which: str, lam: Shape, mode: str = "symbolic", trials: int = 20, seed: int = 0) -> VerificationReport:
    inst = bridge_instance(which, lam)
    return _check_instance(inst, {"shape": str(lam)}, mode, trials, seed)
