"""Certified spectral radius of nonnegative rational matrices.

The radius is bracketed by exact Collatz-Wielandt quotients: for any
entrywise positive x and irreducible nonnegative M,

    min_i (Mx)_i / x_i  <=  rho(M)  <=  max_i (Mx)_i / x_i.

Floating point is only used to find a good starting vector; the reported
bounds are rational and rigorous.  Reducible matrices are split into the
strongly connected blocks of their support graph and the radius is the
maximum over blocks, which also avoids zero divisions on transient states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IterationBudgetExceededError, NegativeEntryError
from .exact import Matrix
from .graphs import _tarjan_sccs

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_TOL = Fraction(1, 10**12)
DEFAULT_ITERATIONS = 10**5


@dataclass(frozen=True)
class PerronResult:
    """Certified bracket around the Perron root."""

    lower: Fraction
    upper: Fraction
    nilpotent: bool
    iterations: int

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def as_float(self) -> float:
        return float(self.midpoint())


def _check_nonnegative(m: Matrix) -> None:
    for row in m.data:
        for x in row:
            if x < 0:
                raise NegativeEntryError("matrix must be entrywise nonnegative")


def is_nilpotent(m: Matrix) -> bool:
    """True when the support digraph of a nonnegative matrix is acyclic."""
    _check_nonnegative(m)
    n = m.nrows
    out = [[j for j in range(n) if m.data[i][j]] for i in range(n)]
    for i in range(n):
        if m.data[i][i]:
            return False
    color = [0] * n  # 0 unvisited, 1 active, 2 done
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, 0)]
        color[root] = 1
        while stack:
            v, pi = stack[-1]
            if pi < len(out[v]):
                stack[-1] = (v, pi + 1)
                w = out[v][pi]
                if color[w] == 1:
                    return False
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, 0))
            else:
                color[v] = 2
                stack.pop()
    return True


def _float_power_vector(block, iterations=400):
    """Approximate Perron vector of block + I in floating point."""
    n = len(block)
    fm = [[float(x) for x in row] for row in block]
    x = [1.0] * n
    for _ in range(iterations):
        y = [sum(fm[i][k] * x[k] for k in range(n)) + x[i] for i in range(n)]
        top = max(y)
        if top == 0:
            return [1.0] * n
        x = [v / top for v in y]
    return x


def _block_radius(block, tol, budget):
    """Certified bracket for one irreducible block given as Fraction rows."""
    n = len(block)
    if n == 1:
        d = block[0][0]
        return d, d, 0

    # starting vector: rationalized float Perron vector, clamped positive
    approx = _float_power_vector(block)
    floor = Fraction(1, 10**18)
    x = []
    for v in approx:
        f = Fraction(v).limit_denominator(10**15)
        x.append(f if f > 0 else floor)

    iterations = 0
    lo_best, hi_best = _ZERO, None
    while True:
        y = [
            sum((block[i][k] * x[k] for k in range(n) if block[i][k]), _ZERO)
            for i in range(n)
        ]
        ratios = [y[i] / x[i] for i in range(n)]
        lo = min(ratios)
        hi = max(ratios)
        if hi_best is None or hi < hi_best:
            hi_best = hi
        if lo > lo_best:
            lo_best = lo
        if hi_best - lo_best <= tol * max(_ONE, hi_best):
            return lo_best, hi_best, iterations
        iterations += 1
        if iterations > budget:
            raise IterationBudgetExceededError(
                f"bracket width {float(hi_best - lo_best)} after {budget} iterations"
            )
        # shifted step keeps periodic blocks converging
        top = max(y[i] + x[i] for i in range(n))
        x = [
            max(((y[i] + x[i]) / top).limit_denominator(10**30), floor)
            for i in range(n)
        ]


def perron_radius(m: Matrix, tol=DEFAULT_TOL, budget=DEFAULT_ITERATIONS) -> PerronResult:
    """Certified Perron radius of a nonnegative square matrix.

    Nilpotent support gives rho = 0 exactly.  Otherwise the support graph is
    split into strongly connected blocks; each block gets exact
    Collatz-Wielandt brackets tightened by shifted power iteration, and the
    result is the blockwise maximum.
    """
    _check_nonnegative(m)
    n = m.nrows
    if n == 0:
        return PerronResult(_ZERO, _ZERO, True, 0)
    out = [[j for j in range(n) if m.data[i][j]] for i in range(n)]
    blocks = _tarjan_sccs(n, out)

    lo_all, hi_all = _ZERO, _ZERO
    iterations = 0
    trivial = True
    for verts in blocks:
        if len(verts) == 1:
            v = verts[0]
            d = m.data[v][v]
            if d:
                trivial = False
                lo_all = max(lo_all, d)
                hi_all = max(hi_all, d)
            continue
        trivial = False
        sub = [[m.data[i][j] for j in verts] for i in verts]
        lo, hi, its = _block_radius(sub, tol, budget)
        iterations += its
        lo_all = max(lo_all, lo)
        hi_all = max(hi_all, hi)
    if trivial:
        return PerronResult(_ZERO, _ZERO, True, 0)
    return PerronResult(lo_all, hi_all, False, iterations)
