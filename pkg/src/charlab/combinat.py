"""Plane partitions in a box, their symmetry classes, and the count identities.

A plane partition in the ``a x b x c`` box is a ``b x c`` matrix of integers
in ``[0, a]``, weakly decreasing along rows and columns.  Each quantity can
be obtained three ways:

* ``bruteforce``: exhaustive counting of the matrices themselves,
* ``character``: a principal specialization of a character,
* ``product``: a closed product formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from .characters import (
    CharacterSpec,
    principal_specialization,
    so_even_schur_sum_at_ones,
    sp_dimension_product,
    spp_star_product,
)
from .shapes import Shape

FAMILIES = ("pp", "spp", "tcpp", "spp-star")
METHODS = ("bruteforce", "character", "product")
COUNT_IDENTITIES = ("5.1", "5.4", "6.6", "6.7")
NODE_LIMIT = 2_000_000

Matrix = Tuple[Tuple[int, ...], ...]


class GuardExceeded(RuntimeError):
    pass


class NotApplicable(ValueError):
    pass


def _int(v) -> int:
    v = Fraction(v)
    if v.denominator != 1:
        raise ArithmeticError(f"expected an integer count, got {v}")
    return v.numerator


def _check_box(*dims: int) -> None:
    if any(d < 0 for d in dims):
        raise ValueError("box dimensions must be non-negative")


# -- enumeration ----------------------------------------------------------------------

def enumerate_pp(a: int, b: int, c: int, limit: Optional[int] = NODE_LIMIT) -> Iterator[Matrix]:
    """Every plane partition in the box, cells filled row by row.

    Each cell takes its admissible values in increasing order, so the first
    matrix produced is the all-zero one.  ``limit`` bounds the number of
    search nodes; exceeding it raises :class:`GuardExceeded`.
    """
    _check_box(a, b, c)
    grid = [[0] * c for _ in range(b)]
    cells = [(i, j) for i in range(b) for j in range(c)]
    nodes = 0

    def rec(k):
        nonlocal nodes
        if k == len(cells):
            yield tuple(tuple(r) for r in grid)
            return
        i, j = cells[k]
        hi = a
        if i:
            hi = min(hi, grid[i - 1][j])
        if j:
            hi = min(hi, grid[i][j - 1])
        for v in range(hi + 1):
            nodes += 1
            if limit is not None and nodes > limit:
                raise GuardExceeded(f"enumeration of the {a}x{b}x{c} box exceeded {limit} nodes")
            grid[i][j] = v
            yield from rec(k + 1)

    yield from rec(0)


def count_pp(a: int, b: int, c: int) -> int:
    """Exhaustive count by a transfer sum over rows.

    The number of ways to finish the matrix below a given row depends only
    on that row, so rows are processed one at a time on a dense grid indexed
    by row contents (entries outside the weakly decreasing region are zero).
    """
    import numpy as np

    _check_box(a, b, c)
    if b == 0 or c == 0:
        return 1
    shape = (a + 1,) * c
    idx = np.indices(shape)
    valid = np.ones(shape, dtype=bool)
    for j in range(c - 1):
        valid &= idx[j] >= idx[j + 1]
    f = valid.astype(object)
    for _ in range(b - 1):
        # g(row) = sum of f(row') over rows' dominating row componentwise
        g = f
        for axis in range(c):
            g = np.flip(np.cumsum(np.flip(g, axis), axis=axis), axis)
        f = np.where(valid, g, 0)
    return int(f.sum())


def _count_symmetric(a: int, n: int, limit: Optional[int]) -> int:
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    grid = [[0] * n for _ in range(n)]
    nodes = 0
    total = 0

    def rec(k):
        nonlocal nodes, total
        if k == len(cells):
            total += 1
            return
        i, j = cells[k]
        hi = a
        if i:
            hi = min(hi, grid[i - 1][j])
        if j > i:
            hi = min(hi, grid[i][j - 1])
        for v in range(hi + 1):
            nodes += 1
            if limit is not None and nodes > limit:
                raise GuardExceeded(f"symmetric enumeration exceeded {limit} nodes")
            grid[i][j] = v
            rec(k + 1)

    rec(0)
    return total


def count_spp(a: int, n: int, limit: Optional[int] = NODE_LIMIT) -> int:
    """Symmetric plane partitions in the ``a x n x n`` box (upper triangle search)."""
    _check_box(a, n)
    return _count_symmetric(a, n, limit)


def count_spp_filtered(a: int, n: int, limit: Optional[int] = NODE_LIMIT) -> int:
    """Same count by filtering :func:`enumerate_pp` for ``pi == pi^T``."""
    return sum(1 for p in enumerate_pp(a, n, n, limit) if all(p[i][j] == p[j][i] for i in range(n) for j in range(n)))


def count_tcpp(m: int, n: int, limit: Optional[int] = NODE_LIMIT) -> int:
    """Transpose-complementary plane partitions in the ``2m x n x n`` box.

    ``pi[i][j] + pi[n-1-j][n-1-i] == 2m`` (0-based).  Cells strictly below
    the anti-diagonal are forced by their partners.
    """
    _check_box(m, n)
    a = 2 * m
    grid = [[0] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]
    nodes = 0
    total = 0

    def rec(k):
        nonlocal nodes, total
        if k == len(cells):
            total += 1
            return
        i, j = cells[k]
        hi = a
        if i:
            hi = min(hi, grid[i - 1][j])
        if j:
            hi = min(hi, grid[i][j - 1])
        if i + j >= n - 1:
            v = m if i + j == n - 1 else a - grid[n - 1 - j][n - 1 - i]
            choices = [v] if 0 <= v <= hi else []
        else:
            choices = range(hi + 1)
        for v in choices:
            nodes += 1
            if limit is not None and nodes > limit:
                raise GuardExceeded(f"transpose-complementary enumeration exceeded {limit} nodes")
            grid[i][j] = v
            rec(k + 1)

    rec(0)
    return total


def is_tcpp(p: Matrix, m: int) -> bool:
    n = len(p)
    return all(p[i][j] + p[n - 1 - j][n - 1 - i] == 2 * m for i in range(n) for j in range(n))


# -- product formulas -----------------------------------------------------------------

def pp_product(a: int, b: int, c: int) -> int:
    """MacMahon's box formula prod (i+j+k-1)/(i+j+k-2)."""
    _check_box(a, b, c)
    v = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                v *= Fraction(i + j + k - 1, i + j + k - 2)
    return _int(v)


def spp_product(a: int, n: int) -> int:
    """prod_i (2i+a-1)/(2i-1) * prod_{i<j} (i+j+a-1)/(i+j-1)."""
    _check_box(a, n)
    v = Fraction(1)
    for i in range(1, n + 1):
        v *= Fraction(2 * i + a - 1, 2 * i - 1)
        for j in range(i + 1, n + 1):
            v *= Fraction(i + j + a - 1, i + j - 1)
    return _int(v)


def tcpp_product(m: int, n: int) -> int:
    if n < 1:
        raise ValueError("TCPP needs n >= 1")
    return _int(sp_dimension_product(m, n - 1))


# -- character specializations -----------------------------------------------------------

def pp_character(a: int, b: int, c: int) -> int:
    """s_{(a^b)} in ``b + c`` variables at all ones."""
    _check_box(a, b, c)
    if b == 0 or c == 0:
        return 1
    return _int(principal_specialization(CharacterSpec("gl", Shape((2 * a,) * b + (0,) * c), b + c)))


def spp_character(a: int, n: int) -> int:
    """so_{((a/2)^n)} at all ones; ``a`` may be odd."""
    _check_box(a, n)
    if n == 0:
        return 1
    return _int(principal_specialization(CharacterSpec("so-odd", Shape((a,) * n), n)))


def tcpp_character(m: int, n: int) -> int:
    """(-1)^(mn) so_{(m^n)}(-1, ..., -1)."""
    _check_box(m, n)
    if n < 1:
        raise ValueError("TCPP needs n >= 1")
    v = principal_specialization(CharacterSpec("so-odd", Shape((2 * m,) * n), n), negate=True)
    return _int((-1) ** (m * n) * v)


def spp_star_character(m: int, n: int) -> int:
    """o-even_{(m^n)} at all ones; ``m = 0`` uses the literal quotient (value 2)."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    return _int(principal_specialization(CharacterSpec("o-even", Shape((2 * m,) * n), n, literal=m == 0)))


def spp_star_schur_sum(m: int, n: int) -> int:
    """The two so-even Schur sums for ``(m^n)`` at all ones, added."""
    return _int(sum(so_even_schur_sum_at_ones(m, n, mode) for mode in ("zero-odd-cols", "2c-odd-cols")))


def count_spp_star_algebraic(m: int, n: int) -> int:
    """SPP*(2m, n, n) by the product, the o-even specialization and the Schur sums."""
    values = {spp_star_product(m, n), spp_star_character(m, n), spp_star_schur_sum(m, n)}
    if len(values) != 1:
        raise ArithmeticError(f"SPP* routes disagree for m={m}, n={n}: {sorted(values)}")
    return _int(values.pop())


# -- quantities and reports ----------------------------------------------------------------

def quantity(family: str, method: str, m: int, n: int, b: Optional[int] = None, c: Optional[int] = None,
             limit: Optional[int] = NODE_LIMIT) -> int:
    """One count by one method.

    ``pp`` counts the ``m x b x c`` box (``b``, ``c`` default to ``n``); the
    symmetric classes use the ``2m x n x n`` box, as in ``SPP(2m, n, n)``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if family == "pp":
        b = n if b is None else b
        c = n if c is None else c
        return {"bruteforce": count_pp, "character": pp_character, "product": pp_product}[method](m, b, c)
    if family == "spp":
        if method == "bruteforce":
            return count_spp(2 * m, n, limit)
        return (spp_character if method == "character" else spp_product)(2 * m, n)
    if family == "tcpp":
        if method == "bruteforce":
            return count_tcpp(m, n, limit)
        return (tcpp_character if method == "character" else tcpp_product)(m, n)
    if method == "bruteforce":
        raise NotApplicable("SPP* has no trusted enumerator; use character or product")
    return (spp_star_character if method == "character" else spp_star_product)(m, n)


@dataclass
class CountReport:
    family: str
    params: Dict[str, int]
    methods: Dict[str, object] = field(default_factory=dict)

    @property
    def values(self) -> Dict[str, int]:
        return {k: v for k, v in self.methods.items() if isinstance(v, int)}

    @property
    def consistent(self) -> bool:
        return len(set(self.values.values())) <= 1

    def to_json(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "params": {k: str(v) for k, v in self.params.items()},
            "methods": {k: str(v) for k, v in self.methods.items()},
            "consistent": self.consistent,
        }


def count_report(family: str, m: int, n: int, methods=METHODS, b: Optional[int] = None, c: Optional[int] = None,
                 limit: Optional[int] = NODE_LIMIT) -> CountReport:
    if family == "pp":
        params = {"height": m, "b": n if b is None else b, "c": n if c is None else c}
    else:
        params = {"height": 2 * m, "b": n, "c": n}
    rep = CountReport(family, params)
    for method in methods:
        try:
            rep.methods[method] = quantity(family, method, m, n, b, c, limit)
        except GuardExceeded:
            rep.methods[method] = "skipped"
        except NotApplicable:
            rep.methods[method] = "not applicable"
    return rep


# -- count identities --------------------------------------------------------------------------
# A term is (label, family, m, n, b, c) with the quantity() conventions.

Term = Tuple[str, str, int, int, Optional[int], Optional[int]]


def _pp(a: int, b: int, c: int) -> Term:
    return (f"PP({a},{b},{c})", "pp", a, b, b, c)


def _spp(a: int, n: int) -> Term:
    return (f"SPP({a},{n},{n})", "spp", a // 2, n, None, None)


def _tcpp(a: int, n: int) -> Term:
    return (f"TCPP({a},{n},{n})", "tcpp", a // 2, n, None, None)


def _spp_star(a: int, n: int) -> Term:
    return (f"SPP*({a},{n},{n})", "spp-star", a // 2, n, None, None)


def identity_terms(which: str, m: int, n: int) -> Tuple[List[Term], List[Term]]:
    """Sum of products: ``(lhs summands, rhs factors)``."""
    if which not in COUNT_IDENTITIES:
        raise ValueError(f"unknown count identity {which!r}; expected one of {COUNT_IDENTITIES}")
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    if which == "5.1":
        return [_pp(2 * m, n, n)], [_spp(2 * m, n), _tcpp(2 * m, n)]
    if which == "5.4":
        return [_pp(2 * m + 1, n, n)], [_tcpp(2 * m, n + 1), _spp_star(2 * m + 2, n)]
    if which == "6.6":
        return [_pp(2 * m + 1, n, n), _pp(2 * m + 1, n - 1, n + 1)], [_spp(2 * m + 2, n), _tcpp(2 * m, n)]
    return [_pp(2 * m, n, n), _pp(2 * m, n - 1, n + 1)], [_tcpp(2 * m, n + 1), _spp_star(2 * m, n)]


@dataclass
class CountIdentityReport:
    identity: str
    params: Dict[str, int]
    terms: Dict[str, CountReport] = field(default_factory=dict)
    lhs: Dict[str, int] = field(default_factory=dict)
    rhs: Dict[str, int] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        if not all(r.consistent for r in self.terms.values()):
            return False
        sides = set(self.lhs.values()) | set(self.rhs.values())
        return len(sides) == 1

    def to_json(self) -> Dict[str, object]:
        return {
            "identity": self.identity,
            "params": {k: str(v) for k, v in self.params.items()},
            "terms": {k: {mk: str(mv) for mk, mv in r.methods.items()} for k, r in self.terms.items()},
            "lhs": {k: str(v) for k, v in self.lhs.items()},
            "rhs": {k: str(v) for k, v in self.rhs.items()},
            "consistent": self.consistent,
        }


def verify_count_identity(which: str, m: int, n: int, methods=METHODS, limit: Optional[int] = NODE_LIMIT) -> CountIdentityReport:
    """Evaluate both sides with every method that can produce every term.

    A side is reported for a method only when all its terms have a value
    under that method; missing values come from guards or SPP* brute force.
    """
    lhs_terms, rhs_terms = identity_terms(which, m, n)
    rep = CountIdentityReport(which, {"m": m, "n": n})
    for label, family, qm, qn, b, c in lhs_terms + rhs_terms:
        if label not in rep.terms:
            rep.terms[label] = count_report(family, qm, qn, methods, b, c, limit)
    for method in methods:
        lv = [rep.terms[t[0]].methods.get(method) for t in lhs_terms]
        rv = [rep.terms[t[0]].methods.get(method) for t in rhs_terms]
        if all(isinstance(v, int) for v in lv):
            rep.lhs[method] = sum(lv)
        if all(isinstance(v, int) for v in rv):
            p = 1
            for v in rv:
                p *= v
            rep.rhs[method] = p
    return rep
