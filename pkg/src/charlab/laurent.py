"""Exact multivariate Laurent polynomials with half-integer exponents.

Every exponent is stored doubled, so ``x^(1/2)`` has doubled exponent 1 and
``x^-1`` has doubled exponent -2.  Coefficients are Python ``int`` when
integral and ``Fraction`` otherwise; no floating point is ever involved.

Internally a monomial is packed into a single non-negative integer, one
32-bit digit per variable (first variable most significant), each digit
holding ``doubled + 2**31``.  Integer comparison of packed keys is then the
lexicographic order on doubled exponent vectors, and multiplying monomials is
one integer addition.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Exponents = Tuple[int, ...]

_BITS = 32
_OFF = 1 << (_BITS - 1)
_MASK = (1 << _BITS) - 1
_BIAS_CACHE: Dict[int, int] = {}


class LaurentError(ArithmeticError):
    """Base class for Laurent arithmetic failures."""


class NotDivisibleError(LaurentError):
    """Raised by :func:`exact_div` when the remainder is nonzero."""


class VariableCountError(ValueError):
    """Operands live in rings with different numbers of variables."""


class SquareRootError(LaurentError):
    """A half-integer exponent met a value with no rational square root."""


def _bias(nvars: int) -> int:
    b = _BIAS_CACHE.get(nvars)
    if b is None:
        b = 0
        for _ in range(nvars):
            b = (b << _BITS) | _OFF
        _BIAS_CACHE[nvars] = b
    return b


def pack(exps: Sequence[int]) -> int:
    key = 0
    for d in exps:
        if not -_OFF < d < _OFF:
            raise OverflowError(f"doubled exponent {d} out of range")
        key = (key << _BITS) | (d + _OFF)
    return key


def unpack(key: int, nvars: int) -> Exponents:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = (key & _MASK) - _OFF
        key >>= _BITS
    return tuple(out)


def _norm(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def to_rational(value) -> Rational:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact rational."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, str):
        return _norm(Fraction(value.strip()))
    raise TypeError(f"cannot use {value!r} as an exact rational")


def rational_sqrt(c: Rational) -> Rational:
    """Non-negative rational square root of ``c``, or :class:`SquareRootError`."""
    c = Fraction(c)
    if c < 0:
        raise SquareRootError(f"{c} has no real square root")
    num, den = c.numerator, c.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise SquareRootError(f"{c} is not the square of a rational")
    return _norm(Fraction(rn, rd))


def rational_pow(c: Rational, doubled: int) -> Rational:
    """``c ** (doubled / 2)`` exactly, using the non-negative square root."""
    if doubled % 2:
        c = rational_sqrt(c)
        e = doubled
    else:
        e = doubled // 2
    if e >= 0:
        return c ** e
    if c == 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return _norm(Fraction(1) / Fraction(c) ** (-e))


class LaurentPoly:
    """A Laurent polynomial in ``nvars`` variables over the rationals.

    Instances are immutable by convention; every operation returns a new
    object.  The zero polynomial has no terms.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, Rational] | None = None, *, _trusted: bool = False):
        if nvars < 1:
            raise ValueError("a Laurent ring needs at least one variable")
        self.nvars = nvars
        self._hash = None
        if terms is None:
            self._terms: Dict[int, Rational] = {}
        elif _trusted:
            self._terms = terms  # type: ignore[assignment]
        else:
            self._terms = {k: _norm(c) for k, c in terms.items() if c != 0}

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "LaurentPoly":
        c = to_rational(c)
        return cls(nvars, {_bias(nvars): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, doubled: Sequence[int], coeff=1) -> "LaurentPoly":
        if len(doubled) != nvars:
            raise VariableCountError(f"expected {nvars} exponents, got {len(doubled)}")
        coeff = to_rational(coeff)
        return cls(nvars, {pack(doubled): coeff} if coeff else {}, _trusted=True)

    @classmethod
    def var(cls, nvars: int, i: int, power=1, coeff=1) -> "LaurentPoly":
        """``coeff * x_i^power`` with ``i`` zero-based and ``power`` a half-integer."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} outside 0..{nvars - 1}")
        d = 2 * Fraction(power)
        if d.denominator != 1:
            raise ValueError(f"exponent {power} is not a half-integer")
        exps = [0] * nvars
        exps[i] = int(d)
        return cls.monomial(nvars, exps, coeff)

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[Sequence[int], object]) -> "LaurentPoly":
        """Build from ``{doubled exponent tuple: coefficient}``."""
        out: Dict[int, Rational] = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise VariableCountError(f"monomial {exps} has wrong length for {nvars} variables")
            k = pack(exps)
            out[k] = out.get(k, 0) + to_rational(c)
        return cls(nvars, out)

    # -- inspection ---------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[Tuple[Exponents, Rational]]:
        """Terms as ``(doubled exponents, coefficient)``, leading term first."""
        n = self.nvars
        for k in sorted(self._terms, reverse=True):
            yield unpack(k, n), self._terms[k]

    def as_dict(self) -> Dict[Exponents, Rational]:
        return dict(self.terms())

    def constant_value(self) -> Rational | None:
        """The value if this polynomial is a constant, else ``None``."""
        if not self._terms:
            return 0
        if len(self._terms) == 1 and _bias(self.nvars) in self._terms:
            return self._terms[_bias(self.nvars)]
        return None

    def is_integral(self) -> bool:
        """True iff every exponent is an integer (no half powers)."""
        return all(d % 2 == 0 for exps, _ in self.terms() for d in exps)

    def exponent_range(self, i: int) -> Tuple[int, int]:
        """``(min, max)`` doubled exponent of variable ``i`` over all terms."""
        if not self._terms:
            raise ValueError("zero polynomial has no exponent range")
        shift = _BITS * (self.nvars - 1 - i)
        ds = [((k >> shift) & _MASK) - _OFF for k in self._terms]
        return min(ds), max(ds)

    def leading_term(self) -> Tuple[Exponents, Rational]:
        k = max(self._terms)
        return unpack(k, self.nvars), self._terms[k]

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise VariableCountError(f"{self.nvars} variables vs {other.nvars} variables")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return LaurentPoly(self.nvars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        bias = _bias(self.nvars)
        out: Dict[int, Rational] = {}
        get = out.get
        for kb, cb in b.items():
            shift = kb - bias
            for ka, ca in a.items():
                k = ka + shift
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.nvars, {k: _norm(c) for k, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = to_rational(c)
        if not c:
            return LaurentPoly(self.nvars)
        return LaurentPoly(self.nvars, {k: _norm(v * c) for k, v in self._terms.items()}, _trusted=True)

    def shift(self, doubled: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given doubled exponents."""
        d = pack(doubled) - _bias(self.nvars)
        return LaurentPoly(self.nvars, {k + d: c for k, c in self._terms.items()}, _trusted=True)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            if isinstance(e, int) and len(self._terms) == 1:
                return exact_div(LaurentPoly.one(self.nvars), self ** (-e))
            raise ValueError("only non-negative integer powers (or inverses of monomials)")
        result = LaurentPoly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == LaurentPoly.const(self.nvars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)


# -- module-level operations -------------------------------------------------

def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    return p * q


def product(factors: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    """Product of an iterable of polynomials; the empty product is 1."""
    out = LaurentPoly.one(nvars)
    for f in factors:
        out = out * f
    return out


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Quotient ``q`` with ``q * d == p``; raises if ``d`` does not divide ``p``.

    Leading terms are cancelled in lex order.  Every quotient monomial must
    lie inside the box ``[min(p) - min(d), max(p) - max(d)]`` per variable,
    which bounds the loop and rejects non-divisible input early.
    """
    p._check(d)
    if not d._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.nvars
    if not p._terms:
        return LaurentPoly(n)
    bias = _bias(n)
    if len(d._terms) == 1:
        (kd, cd), = d._terms.items()
        inv = Fraction(1) / Fraction(cd)
        return LaurentPoly(n, {k - kd + bias: _norm(c * inv) for k, c in p._terms.items()}, _trusted=True)

    lo = [p.exponent_range(i)[0] - d.exponent_range(i)[0] for i in range(n)]
    hi = [p.exponent_range(i)[1] - d.exponent_range(i)[1] for i in range(n)]
    lead_d = max(d._terms)
    lc_d = d._terms[lead_d]
    inv_lc = Fraction(1) / Fraction(lc_d) if lc_d not in (1, -1) else lc_d
    rest = [(k - bias, c) for k, c in d._terms.items() if k != lead_d]

    rem = dict(p._terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: Dict[int, Rational] = {}
    while rem:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        qk = k - lead_d + bias
        exps = unpack(qk, n)
        for i in range(n):
            if not lo[i] <= exps[i] <= hi[i]:
                raise NotDivisibleError("divisor does not divide dividend exactly")
        qc = _norm(c * inv_lc)
        quot[qk] = qc
        for sk, sc in rest:
            t = qk + sk
            v = rem.get(t, 0) - qc * sc
            if v:
                if t not in rem:
                    heapq.heappush(heap, -t)
                rem[t] = v
            else:
                rem.pop(t, None)
    return LaurentPoly(n, quot, _trusted=True)


def substitute(p: LaurentPoly, images: Sequence[LaurentPoly]) -> LaurentPoly:
    """Replace variable ``i`` by ``images[i]``.

    Each image must be a single term ``c * monomial`` (a nonzero constant is
    allowed) in a common target ring.  Half-integer powers take the
    non-negative square root of ``c`` and need the image's own exponents to
    be integral; anything else raises :class:`SquareRootError`.
    """
    if len(images) != p.nvars:
        raise VariableCountError(f"need {p.nvars} images, got {len(images)}")
    if not images:
        raise ValueError("no images")
    m = images[0].nvars
    zero_key = _bias(m)
    parts = []
    for img in images:
        if img.nvars != m:
            raise VariableCountError("images live in different rings")
        if len(img._terms) > 1:
            raise ValueError("substitution images must be single terms")
        if not img._terms:
            parts.append((0, 0, None))
        else:
            (k, c), = img._terms.items()
            parts.append((c, k - zero_key, unpack(k, m)))

    out: Dict[int, Rational] = {}
    cache: Dict[Tuple[int, int], Tuple[int, Rational]] = {}
    for exps, coeff in p.terms():
        key = zero_key
        val: Rational = coeff
        for i, d in enumerate(exps):
            if d == 0:
                continue
            hit = cache.get((i, d))
            if hit is None:
                c, k_off, img_exps = parts[i]
                if img_exps is None:
                    if d < 0:
                        raise ZeroDivisionError(f"substituting 0 for x{i + 1} with a negative exponent")
                    hit = (0, 0)
                else:
                    if d % 2 and any(e % 2 for e in img_exps):
                        raise SquareRootError(f"x{i + 1}^({d}/2) of a half-power image")
                    mono = pack([e * d // 2 for e in img_exps]) - zero_key
                    hit = (mono, rational_pow(c, d))
                cache[(i, d)] = hit
            key += hit[0]
            val = val * hit[1]
            if not val:
                break
        if val:
            s = out.get(key, 0) + val
            if s:
                out[key] = s
            else:
                out.pop(key)
    return LaurentPoly(m, out)


def eval_rational(p: LaurentPoly, point: Sequence) -> Rational:
    """Exact value of ``p`` at ``point``; half powers use the non-negative root."""
    if len(point) != p.nvars:
        raise VariableCountError(f"point has {len(point)} coordinates, ring has {p.nvars}")
    pt = [to_rational(v) for v in point]
    cache: Dict[Tuple[int, int], Rational] = {}
    total: Rational = 0
    for exps, coeff in p.terms():
        val: Rational = coeff
        for i, d in enumerate(exps):
            if d == 0:
                continue
            v = cache.get((i, d))
            if v is None:
                if pt[i] == 0:
                    if d < 0:
                        raise ZeroDivisionError(f"x{i + 1} = 0 with a negative exponent")
                    v = 0
                else:
                    v = rational_pow(pt[i], d)
                cache[(i, d)] = v
            val = val * v
        total += val
    return _norm(total) if isinstance(total, Fraction) else total


def det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant by Laplace expansion with memoized minors.

    Rows are consumed top to bottom; the state is the set of columns already
    used, so each minor over the leading rows is computed once
    (``n * 2**(n-1)`` ring multiplications instead of ``n!``).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    for row in matrix:
        for e in row:
            if e.nvars != nv:
                raise VariableCountError("matrix entries live in different rings")
    minors: Dict[int, LaurentPoly] = {0: LaurentPoly.one(nv)}
    for r in range(n):
        row = matrix[r]
        nxt: Dict[int, LaurentPoly] = {}
        for mask, val in minors.items():
            for col in range(n):
                bit = 1 << col
                if mask & bit or not row[col]._terms:
                    continue
                # inversions: already-used columns to the right of col
                term = val * row[col]
                if bin(mask >> (col + 1)).count("1") % 2:
                    term = -term
                acc = nxt.get(mask | bit)
                nxt[mask | bit] = term if acc is None else acc + term
        minors = {k: v for k, v in nxt.items() if v._terms}
        if not minors:
            return LaurentPoly(nv)
    return minors.get((1 << n) - 1, LaurentPoly(nv))


def bareiss_det(matrix: Sequence[Sequence]) -> Rational:
    """Determinant of a rational matrix by fraction-free Bareiss elimination.

    Rows are first cleared of denominators, so elimination runs on integers
    and every division is exact.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    scale = Fraction(1)
    a: List[List[int]] = []
    for row in matrix:
        fr = [Fraction(to_rational(v)) for v in row]
        l = 1
        for v in fr:
            l = l * v.denominator // math.gcd(l, v.denominator)
        scale *= l
        a.append([int(v * l) for v in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return _norm(Fraction(sign * a[n - 1][n - 1]) / scale)


# -- text form -----------------------------------------------------------------

def _fmt_coeff(c: Rational) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_text(p: LaurentPoly) -> str:
    """Canonical text, e.g. ``"1 * x1^{2/2} + -1 * x1^{-2/2}"``.

    Terms are listed in descending lex order; every nonzero exponent is
    printed as its doubled value over 2.
    """
    if not p._terms:
        return "0"
    parts = []
    for exps, c in p.terms():
        factors = [_fmt_coeff(c)]
        factors += [f"x{i + 1}^{{{d}/2}}" for i, d in enumerate(exps) if d]
        parts.append(" * ".join(factors))
    return " + ".join(parts)


def from_text(text: str, nvars: int) -> LaurentPoly:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return LaurentPoly(nvars)
    terms: Dict[Exponents, Rational] = {}
    for chunk in text.split(" + "):
        factors = chunk.split(" * ")
        coeff = to_rational(factors[0])
        exps = [0] * nvars
        for f in factors[1:]:
            name, _, power = f.partition("^")
            idx = int(name[1:]) - 1
            num, _, den = power.strip("{}").partition("/")
            if den != "2":
                raise ValueError(f"malformed exponent in {f!r}")
            exps[idx] += int(num)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly.from_dict(nvars, terms)


# -- dense expansion -------------------------------------------------------------

class DenseExpansion:
    """Dense coefficient array for a product of small integral Laurent factors.

    The array covers a box of integer exponents ``lo[i] .. hi[i]`` per
    variable.  Coefficients are int64 while a running L1-norm bound stays
    below 2**62 (so every entry is provably exact) and switch to Python
    integers beyond that.  Meant for expanding long products of binomials,
    where the sparse dict product spends most of its time on hashing.
    """

    _LIMIT = 1 << 62

    def __init__(self, nvars: int, lo: Sequence[int], array, l1: int):
        self.nvars = nvars
        self.lo = tuple(lo)
        self.array = array
        self.l1 = l1

    @classmethod
    def one(cls, nvars: int) -> "DenseExpansion":
        import numpy as np

        return cls(nvars, (0,) * nvars, np.ones((1,) * nvars, dtype=np.int64), 1)

    @staticmethod
    def _integral_terms(f: LaurentPoly):
        out = []
        for exps, c in f.terms():
            if any(d % 2 for d in exps) or not isinstance(c, int):
                raise ValueError("dense expansion needs integral exponents and integer coefficients")
            out.append((tuple(d // 2 for d in exps), c))
        return out

    def mul(self, f: LaurentPoly) -> "DenseExpansion":
        import numpy as np

        if f.nvars != self.nvars:
            raise VariableCountError("factor lives in a different ring")
        terms = self._integral_terms(f)
        if not terms:
            return DenseExpansion(self.nvars, self.lo, np.zeros((1,) * self.nvars, dtype=np.int64), 0)
        n = self.nvars
        flo = [min(e[i] for e, _ in terms) for i in range(n)]
        fhi = [max(e[i] for e, _ in terms) for i in range(n)]
        l1 = self.l1 * sum(abs(c) for _, c in terms)
        dtype = np.int64 if l1 < self._LIMIT and self.array.dtype == np.int64 else object
        src = self.array.astype(dtype) if self.array.dtype != dtype else self.array
        shape = tuple(src.shape[i] + fhi[i] - flo[i] for i in range(n))
        out = np.zeros(shape, dtype=dtype)
        for e, c in terms:
            idx = tuple(slice(e[i] - flo[i], e[i] - flo[i] + src.shape[i]) for i in range(n))
            out[idx] += c * src
        lo = tuple(self.lo[i] + flo[i] for i in range(n))
        return DenseExpansion(n, lo, out, l1)

    def permuted(self, perm: Sequence[int]) -> "DenseExpansion":
        """Rename variable ``i`` to variable ``perm[i]``."""
        import numpy as np

        inv = [0] * self.nvars
        for i, p in enumerate(perm):
            inv[p] = i
        arr = np.transpose(self.array, inv)
        lo = tuple(self.lo[inv[j]] for j in range(self.nvars))
        return DenseExpansion(self.nvars, lo, arr, self.l1)

    def to_poly(self) -> LaurentPoly:
        import numpy as np

        n = self.nvars
        out: Dict[int, Rational] = {}
        for idx in zip(*np.nonzero(self.array)):
            c = int(self.array[idx])
            out[pack([2 * (int(i) + self.lo[k]) for k, i in enumerate(idx)])] = c
        return LaurentPoly(n, out, _trusted=True)


def dense_sum(parts: Sequence[DenseExpansion], coeffs: Sequence[int] | None = None) -> DenseExpansion:
    """Sum of dense expansions over the union of their boxes."""
    import numpy as np

    if not parts:
        raise ValueError("nothing to sum")
    n = parts[0].nvars
    coeffs = list(coeffs) if coeffs is not None else [1] * len(parts)
    lo = [min(p.lo[i] for p in parts) for i in range(n)]
    hi = [max(p.lo[i] + p.array.shape[i] - 1 for p in parts) for i in range(n)]
    l1 = sum(abs(c) * p.l1 for p, c in zip(parts, coeffs))
    exact64 = l1 < DenseExpansion._LIMIT and all(p.array.dtype == np.int64 for p in parts)
    dtype = np.int64 if exact64 else object
    out = np.zeros(tuple(hi[i] - lo[i] + 1 for i in range(n)), dtype=dtype)
    for p, c in zip(parts, coeffs):
        idx = tuple(slice(p.lo[i] - lo[i], p.lo[i] - lo[i] + p.array.shape[i]) for i in range(n))
        out[idx] += c * p.array.astype(dtype)
    return DenseExpansion(n, lo, out, l1)
