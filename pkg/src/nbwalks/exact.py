"""Dense matrices over arbitrary-precision rationals.

Everything in here is exact: entries are `fractions.Fraction`, determinants
use fraction-free elimination on integer-scaled rows, and characteristic
polynomials are recovered by interpolation through integer determinants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import NotSquareError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


class Matrix:
    """Immutable rational matrix."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, rows):
        data = tuple(tuple(_frac(x) for x in row) for row in rows)
        self.data = data
        self.nrows = len(data)
        self.ncols = len(data[0]) if data else 0
        if any(len(r) != self.ncols for r in data):
            raise ValueError("ragged rows")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "Matrix":
        return Matrix([[_ZERO] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return Matrix(
            [[_frac(entries[i]) if i == j else _ZERO for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"Matrix({[list(map(str, r)) for r in self.data]})"

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in row] for row in self.data])

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix([[c * a for a in row] for row in self.data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.data))
        out = []
        for row in self.data:
            out.append(
                [sum((a * b for a, b in zip(row, col) if a), _ZERO) for col in cols]
            )
        return Matrix(out)

    def __rmul__(self, c):
        return self.scale(c)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.data))) if self.data else Matrix([])

    def hadamard(self, other: "Matrix") -> "Matrix":
        return Matrix(
            [[a * b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def abs_sum(self) -> Fraction:
        return sum((abs(x) for row in self.data for x in row), _ZERO)

    def apply_vector(self, vec):
        """Matrix times a column vector given as a sequence."""
        return [sum((a * v for a, v in zip(row, vec) if a), _ZERO) for row in self.data]

    def to_float(self):
        return [[float(x) for x in row] for row in self.data]

    # ---- exact linear algebra -------------------------------------------

    def _integer_rows(self):
        """Rows scaled to integers; returns (int rows, product of scale factors)."""
        rows = []
        scale = _ONE
        for row in self.data:
            lcm = 1
            for x in row:
                d = x.denominator
                if d != 1:
                    lcm = lcm * d // gcd(lcm, d)
            if lcm != 1:
                scale *= lcm
            rows.append([int(x * lcm) for x in row])
        return rows, scale

    def det(self) -> Fraction:
        """Exact determinant via fraction-free Bareiss elimination."""
        if not self.is_square():
            raise NotSquareError(f"{self.nrows}x{self.ncols} matrix")
        n = self.nrows
        if n == 0:
            return _ONE
        rows, scale = self._integer_rows()
        d = _bareiss_int_det(rows)
        return Fraction(d) / scale

    def rank(self) -> int:
        m = [list(row) for row in self.data]
        nr, nc = self.nrows, self.ncols
        rank = 0
        for col in range(nc):
            piv = None
            for i in range(rank, nr):
                if m[i][col]:
                    piv = i
                    break
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            prow = m[rank]
            pval = prow[col]
            for i in range(rank + 1, nr):
                f = m[i][col]
                if f:
                    fac = f / pval
                    m[i] = [a - fac * b if b else a for a, b in zip(m[i], prow)]
            rank += 1
            if rank == nr:
                break
        return rank

    def solve(self, rhs: "Matrix"):
        """Solve self @ X = rhs exactly; returns None when singular."""
        if not self.is_square() or self.nrows != rhs.nrows:
            raise ValueError("dimension mismatch")
        n = self.nrows
        w = rhs.ncols
        aug = [list(self.data[i]) + list(rhs.data[i]) for i in range(n)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if aug[i][k]:
                    piv = i
                    break
            if piv is None:
                return None
            aug[k], aug[piv] = aug[piv], aug[k]
            prow = aug[k]
            pval = prow[k]
            for i in range(n):
                if i == k:
                    continue
                f = aug[i][k]
                if f:
                    fac = f / pval
                    aug[i] = [a - fac * b if b else a for a, b in zip(aug[i], prow)]
        return Matrix([[aug[i][n + j] / aug[i][i] for j in range(w)] for i in range(n)])

    def inverse(self):
        """Exact inverse; returns None when singular."""
        return self.solve(Matrix.identity(self.nrows))

    def char_poly(self):
        """Coefficients of det(t*I - self), ascending, as Fractions.

        Computed by interpolating integer Bareiss determinants of s*I - N at
        s = 0..n, where N is the matrix cleared of denominators.  Monic by
        construction, degree n.
        """
        if not self.is_square():
            raise NotSquareError(f"{self.nrows}x{self.ncols} matrix")
        n = self.nrows
        if n == 0:
            return [_ONE]
        lcm = 1
        for row in self.data:
            for x in row:
                d = x.denominator
                if d != 1:
                    lcm = lcm * d // gcd(lcm, d)
        nmat = [[int(x * lcm) for x in row] for row in self.data]
        values = []
        for s in range(n + 1):
            rows = [
                [(s if i == j else 0) - nmat[i][j] for j in range(n)] for i in range(n)
            ]
            values.append(_bareiss_int_det(rows))
        coeffs = _newton_interpolate(values)
        # det(tI - self) = lcm**(-n) * h(lcm * t) with h = det(sI - N)
        out = []
        power = _ONE
        scale = Fraction(1, lcm) ** n
        for c in coeffs:
            out.append(c * power * scale)
            power *= lcm
        return out

    def det_one_minus_t(self):
        """Coefficients of det(I - t*self), ascending; reversal of char_poly."""
        cp = self.char_poly()
        return list(reversed(cp))


def _bareiss_int_det(rows) -> int:
    """Fraction-free determinant of an integer matrix given as mutable rows."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            rik = m[i][k]
            rowi = m[i]
            rowk = m[k]
            if rik:
                m[i] = [(pk * a - rik * b) // prev for a, b in zip(rowi, rowk)]
            elif prev != 1 or pk != 1:
                m[i] = [(pk * a) // prev for a in rowi]
        prev = pk
    return sign * m[n - 1][n - 1]


def _newton_interpolate(values):
    """Interpolate through (0, v0), (1, v1), ... and return ascending coefficients."""
    n = len(values)
    diffs = [_frac(v) for v in values]
    table = [diffs[0]]
    work = diffs
    for level in range(1, n):
        work = [
            (work[i + 1] - work[i]) / level for i in range(len(work) - 1)
        ]  # divided differences on unit-spaced nodes
        table.append(work[0])
    # expand Newton form sum_k table[k] * t(t-1)...(t-k+1)
    coeffs = [_ZERO] * n
    basis = [_ONE]
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += table[k] * b
        # multiply basis by (t - k)
        nxt = [_ZERO] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= k * b
        basis = nxt
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs
