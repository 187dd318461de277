"""Univariate polynomials over the rationals, polynomial matrices, Smith
normal form, and real-root isolation.

Polynomials are coefficient tuples in ascending degree with trailing zeros
stripped.  The zero polynomial has an empty coefficient tuple and degree -1
(standing in for "minus infinity").  All arithmetic is exact; nothing in
this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotSquareError, ZeroPolynomialError
from .exact import Matrix

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class Polynomial:
    """Immutable univariate polynomial with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial([c])

    @staticmethod
    def variable() -> "Polynomial":
        return Polynomial([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return Polynomial(), self
        quot = [_ZERO] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quot[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dv[j]
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def __call__(self, t):
        t = _frac(t)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.leading == 1:
            return self
        inv = 1 / self.leading
        return Polynomial([c * inv for c in self.coeffs])

    def scale_argument(self, a) -> "Polynomial":
        """p(a*t)."""
        a = _frac(a)
        out, power = [], _ONE
        for c in self.coeffs:
            out.append(c * power)
            power *= a
        return Polynomial(out)

    def reversal(self, grade=None) -> "Polynomial":
        """t**grade * p(1/t); grade defaults to the degree."""
        if grade is None:
            grade = max(self.degree, 0)
        if grade < self.degree:
            raise ValueError("grade below degree")
        out = [_ZERO] * (grade + 1)
        for i, c in enumerate(self.coeffs):
            out[grade - i] = c
        return Polynomial(out)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return Polynomial([x])
        return NotImplemented

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "Poly(" + " + ".join(parts) + ")"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Polynomial):
    """Yun decomposition: list of (factor, multiplicity) with factors squarefree.

    The product of factor**multiplicity equals p up to a constant.
    """
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.degree == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    mult = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f, mult))
        b2 = b // f
        c2 = d // f
        d = c2 - b2.derivative()
        b = b2
        mult += 1
    return out


def root_multiplicity(p: Polynomial, r) -> int:
    """Multiplicity of the rational value r as a root of p."""
    r = _frac(r)
    count = 0
    lin = Polynomial([-r, 1])
    while not p.is_zero() and p(r) == 0:
        p = p // lin
        count += 1
    return count


# ---- Sturm machinery ------------------------------------------------------


def _primitive_int(p: Polynomial) -> Polynomial:
    """Scale by a positive rational so coefficients are coprime integers."""
    if p.is_zero():
        return p
    lcm = 1
    for c in p.coeffs:
        d = c.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(c * lcm) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return Polynomial(ints)


def sturm_chain(p: Polynomial):
    """Sturm sequence of a squarefree polynomial, primitively normalized."""
    chain = [_primitive_int(p), _primitive_int(p.derivative())]
    while not chain[-1].is_zero():
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(_primitive_int(-rem))
    return [q for q in chain if not q.is_zero()]


def _sign_variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p_squarefree: Polynomial, lo, hi) -> int:
    """Number of real roots in the half-open interval (lo, hi]."""
    chain = sturm_chain(p_squarefree)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def simplest_rational_in(lo, hi) -> Fraction:
    """The rational with smallest denominator strictly inside (lo, hi).

    Continued-fraction descent; used to recognize rational roots from tight
    isolating intervals without factoring anything.
    """
    lo = _frac(lo)
    hi = _frac(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return _ZERO
    if hi <= 0:
        return -_simplest_cf(-hi, -lo)
    return _simplest_cf(lo, hi)


def _simplest_cf(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational strictly inside (lo, hi), assuming 0 <= lo < hi."""
    n = lo.numerator // lo.denominator  # floor, lo nonnegative
    if Fraction(n + 1) < hi:
        return Fraction(n + 1)
    frac_lo = lo - n
    if frac_lo == 0:
        # (n, hi) with hi <= n+1: answer is n + 1/k for the smallest valid k
        inv = hi - n
        k = inv.denominator // inv.numerator + 1
        return n + Fraction(1, k)
    # x in (lo, hi) <=> x = n + 1/y with y in (1/(hi-n), 1/frac_lo)
    inner = _simplest_cf(1 / (hi - n), 1 / frac_lo)
    return n + 1 / inner


@dataclass(frozen=True)
class RootRecord:
    """One real root: exact rational value, or an isolating interval (lo, hi]."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    value: Fraction | None = None

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    def midpoint(self) -> Fraction:
        if self.value is not None:
            return self.value
        return (self.lo + self.hi) / 2


_DEFAULT_WIDTH = Fraction(1, 10**12)


def real_roots(p: Polynomial, lo, hi, width=_DEFAULT_WIDTH, include_hi=True):
    """Isolate the real roots of p in (lo, hi] (or (lo, hi) when include_hi
    is false).

    Returns RootRecord entries sorted by position.  Rational roots found by
    exact evaluation are reported with `value` set; all other roots come with
    an isolating interval refined below `width`.  Multiplicities are exact,
    obtained from the squarefree decomposition.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    lo = _frac(lo)
    hi = _frac(hi)
    records = []
    for factor, mult in squarefree_decomposition(p):
        for rec in _isolate_squarefree(factor, lo, hi, width):
            records.append(
                RootRecord(rec.lo, rec.hi, mult, rec.value)
            )
    if not include_hi:
        records = [r for r in records if not (r.value is not None and r.value == hi)]
    records.sort(key=lambda r: r.midpoint())
    return records


def _isolate_squarefree(p: Polynomial, lo, hi, width):
    chain = sturm_chain(p)

    def var(x):
        return _sign_variations(chain, x)

    out = []
    if p(hi) == 0:
        out.append(RootRecord(hi, hi, 1, hi))

    stack = [(lo, hi, var(lo), var(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if p(b) == 0:
            count -= 1  # root at the right endpoint handled separately
        if count <= 0:
            continue
        if count == 1:
            out.append(_refine(p, chain, a, b, width))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            out.append(RootRecord(mid, mid, 1, mid))
        vm = var(mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    return out


def _refine(p, chain, a, b, width):
    """Shrink (a, b) around its single interior root; spot rational roots."""

    def var(x):
        return _sign_variations(chain, x)

    va = var(a)
    while b - a > width:
        mid = (a + b) / 2
        if p(mid) == 0:
            return RootRecord(mid, mid, 1, mid)
        vm = var(mid)
        if va - vm >= 1:
            b = mid
        else:
            a, va = mid, vm
    if a < b:
        cand = simplest_rational_in(a, b)
        if p(cand) == 0:
            return RootRecord(cand, cand, 1, cand)
    return RootRecord(a, b, 1, None)


# ---- polynomial matrices ---------------------------------------------------


_P_ZERO = Polynomial()
_P_ONE = Polynomial([1])


class PolyMatrix:
    """Rectangular matrix of Polynomial entries with a declared grade.

    The grade (declared degree) is used for reversal and for eigenvalues at
    infinity; it must dominate every entry degree.
    """

    __slots__ = ("entries", "nrows", "ncols", "grade")

    def __init__(self, entries, grade=None):
        rows = tuple(
            tuple(e if isinstance(e, Polynomial) else Polynomial([e]) for e in row)
            for row in entries
        )
        self.entries = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged rows")
        max_deg = max((e.degree for row in rows for e in row), default=0)
        max_deg = max(max_deg, 0)
        if grade is None:
            grade = max_deg
        elif grade < max_deg:
            raise ValueError("grade below maximum entry degree")
        self.grade = grade

    @staticmethod
    def from_coefficients(mats, grade=None) -> "PolyMatrix":
        """Build sum_k mats[k] * t**k from constant Matrix coefficients."""
        if not mats:
            raise ValueError("need at least one coefficient matrix")
        nr, nc = mats[0].nrows, mats[0].ncols
        entries = [
            [Polynomial([m.data[i][j] for m in mats]) for j in range(nc)]
            for i in range(nr)
        ]
        if grade is None:
            grade = len(mats) - 1
        return PolyMatrix(entries, grade=grade)

    def coefficient(self, k: int) -> Matrix:
        """Constant matrix of the t**k coefficients."""
        return Matrix(
            [
                [e.coeffs[k] if k <= e.degree else _ZERO for e in row]
                for row in self.entries
            ]
        )

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            grade=max(self.grade, other.grade),
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            grade=max(self.grade, other.grade),
        )

    def scale(self, p) -> "PolyMatrix":
        p = Polynomial._coerce(p)
        return PolyMatrix([[p * e for e in row] for row in self.entries])

    def eval_at(self, t) -> Matrix:
        return Matrix([[e(t) for e in row] for row in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.entries)), grade=self.grade)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols}, grade={self.grade})"


def reversal(m: PolyMatrix) -> PolyMatrix:
    """Entrywise coefficient reversal with respect to the declared grade."""
    k = m.grade
    return PolyMatrix(
        [[e.reversal(k) for e in row] for row in m.entries], grade=k
    )


def polymat_det(m: PolyMatrix) -> Polynomial:
    """Exact determinant of a square polynomial matrix.

    Fraction-free Bareiss elimination over the polynomial ring, cross-checked
    by comparing against scalar determinants at degree-bound + 1 rational
    sample points.  A disagreement means a bug and raises RuntimeError.
    """
    if not m.is_square():
        raise NotSquareError(f"{m.nrows}x{m.ncols} polynomial matrix")
    n = m.nrows
    if n == 0:
        return Polynomial([1])
    det = _polymat_det_bareiss(m)
    bound = sum(max((e.degree for e in row), default=0) for row in m.entries)
    bound = max(bound, 0)
    t = 0
    checked = 0
    while checked <= bound:
        point = Fraction(t)
        if det(point) != m.eval_at(point).det():
            raise RuntimeError("determinant cross-check failed")
        checked += 1
        t = -t if t > 0 else -t + 1
    return det


def _polymat_det_bareiss(m: PolyMatrix) -> Polynomial:
    n = m.nrows
    a = [[e for e in row] for row in m.entries]
    sign = 1
    prev = _P_ONE
    for k in range(n - 1):
        piv = None
        best = None
        for i in range(k, n):
            e = a[i][k]
            if not e.is_zero() and (best is None or e.degree < best):
                best = e.degree
                piv = i
        if piv is None:
            return Polynomial()
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            rik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            new_row = []
            for j in range(n):
                num = pk * rowi[j] - rik * rowk[j]
                if num.is_zero():
                    new_row.append(_P_ZERO)
                    continue
                q, r = divmod(num, prev)
                if not r.is_zero():
                    raise RuntimeError("non-exact division in fraction-free elimination")
                new_row.append(q)
            a[i] = new_row
        prev = pk
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


@dataclass(frozen=True)
class SmithForm:
    """Invariant polynomials of a polynomial matrix, monic, in divisibility order."""

    invariants: tuple[Polynomial, ...]
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def partial_multiplicities(self, value) -> tuple[int, ...]:
        """Positive multiplicities of a rational value across the invariants."""
        out = []
        for inv in self.invariants:
            k = root_multiplicity(inv, value)
            if k:
                out.append(k)
        return tuple(out)


def smith_form(m: PolyMatrix) -> SmithForm:
    """Smith normal form over Q[t].

    Iterative gcd-driven diagonalization with unimodular row and column
    operations.  The pivot is always the lowest-degree nonzero entry of the
    working submatrix (ties broken by position), which makes the reduction
    deterministic.  The divisibility chain is verified before returning.
    """
    a = [[e for e in row] for row in m.entries]
    nr, nc = m.nrows, m.ncols
    limit = min(nr, nc)
    d = 0
    while d < limit:
        while True:
            piv = None
            best = None
            for i in range(d, nr):
                for j in range(d, nc):
                    e = a[i][j]
                    if not e.is_zero() and (best is None or e.degree < best):
                        best = e.degree
                        piv = (i, j)
            if piv is None:
                break
            pi, pj = piv
            if pi != d:
                a[d], a[pi] = a[pi], a[d]
            if pj != d:
                for row in a:
                    row[d], row[pj] = row[pj], row[d]
            pivot = a[d][d]
            dirty = False
            for i in range(d + 1, nr):
                if not a[i][d].is_zero():
                    q = a[i][d] // pivot
                    if not q.is_zero():
                        a[i] = [x - q * y for x, y in zip(a[i], a[d])]
                    if not a[i][d].is_zero():
                        dirty = True
            if dirty:
                continue
            for j in range(d + 1, nc):
                col_entry = a[d][j]
                if not col_entry.is_zero():
                    q = col_entry // pivot
                    if not q.is_zero():
                        for row in a:
                            row[j] = row[j] - q * row[d]
                    if not a[d][j].is_zero():
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(d + 1, nr):
                for j in range(d + 1, nc):
                    if not (a[i][j] % pivot).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[d] = [x + y for x, y in zip(a[d], a[offender])]
        if a[d][d].is_zero():
            break
        d += 1
    invariants = tuple(a[i][i].monic() for i in range(d))
    for s, t in zip(invariants, invariants[1:]):
        if not s.divides(t):
            raise RuntimeError("invariant factors do not form a divisibility chain")
    return SmithForm(invariants, nr, nc)
