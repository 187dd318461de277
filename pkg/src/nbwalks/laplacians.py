"""Deformed graph Laplacians for digraphs and their eigenvalue multiplicity
reports.

The directed deformed graph Laplacian of an unweighted loop-free digraph is

    M(t) = I - A*t + (D - I)*t**2 + (A - S)*t**3

with A the adjacency matrix, S the adjacency of the undirected part and D
the diagonal count of reciprocal edges per vertex.  The downweighted variant
replaces the last two coefficients by tau*(D - tau*I) and tau**2*(A - S).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IrrationalLambdaUnsupportedError,
    SingularPolyMatrixError,
    TauOutOfRangeError,
)
from .exact import Matrix
from .graphs import Graph, undirected_part, undirectization
from .polys import PolyMatrix, polymat_det, root_multiplicity, smith_form


def structure_matrices(g: Graph):
    """A, S and D for an unweighted digraph."""
    a = g.adjacency()
    es = g.edge_set()
    n = g.n
    s_rows = [
        [a.data[i][j] if (j, i) in es else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    s = Matrix(s_rows)
    d = Matrix.diagonal([sum(row) for row in s_rows])
    return a, s, d


def directed_dgl(g: Graph) -> PolyMatrix:
    """Directed deformed graph Laplacian; grade 3, dropping to 2 for
    undirected graphs where the cubic coefficient vanishes."""
    g.require_unweighted("directed_dgl")
    a, s, d = structure_matrices(g)
    eye = Matrix.identity(g.n)
    coeffs = [eye, -a, d - eye, a - s]
    grade = 2 if a == s else 3
    return PolyMatrix.from_coefficients(coeffs[: grade + 1], grade=grade)


def tau_dgl(g: Graph, tau) -> PolyMatrix:
    """Downweighted deformed graph Laplacian for rational tau in (0, 1]."""
    g.require_unweighted("tau_dgl")
    tau = Fraction(tau)
    if not 0 < tau <= 1:
        raise TauOutOfRangeError(f"tau={tau} outside (0, 1]")
    a, s, d = structure_matrices(g)
    eye = Matrix.identity(g.n)
    coeffs = [eye, -a, (d - eye.scale(tau)).scale(tau), (a - s).scale(tau * tau)]
    grade = 2 if a == s else 3
    return PolyMatrix.from_coefficients(coeffs[: grade + 1], grade=grade)


@dataclass(frozen=True)
class LaplacianBundle:
    """All the Laplacian-flavored matrices derived from one graph."""

    deformed: PolyMatrix
    deformed_tau: PolyMatrix | None
    undirected_part_dgl: PolyMatrix
    undirectization_dgl: PolyMatrix
    laplacian: Matrix
    signless_laplacian: Matrix
    arc_count: int
    reciprocated_count: int


def laplacian_bundle(g: Graph, tau=None) -> LaplacianBundle:
    g.require_unweighted("laplacian_bundle")
    a, s, d = structure_matrices(g)
    return LaplacianBundle(
        deformed=directed_dgl(g),
        deformed_tau=None if tau is None else tau_dgl(g, tau),
        undirected_part_dgl=directed_dgl(undirected_part(g)),
        undirectization_dgl=directed_dgl(undirectization(g)),
        laplacian=d - s,
        signless_laplacian=d + s,
        arc_count=g.arc_count(),
        reciprocated_count=g.reciprocated_arc_count(),
    )


@dataclass(frozen=True)
class EigenReport:
    """Multiplicities of one rational eigenvalue of a polynomial matrix."""

    eigenvalue: Fraction
    algebraic: int
    geometric: int
    partials: tuple[int, ...]


def eigen_report(m: PolyMatrix, lam) -> EigenReport:
    """Algebraic, geometric and partial multiplicities of a rational value.

    The algebraic multiplicity comes from the determinant, the geometric one
    from the rank of the evaluated matrix, and the partial multiplicities
    from the Smith form.  Their internal consistency is asserted.
    """
    if isinstance(lam, float):
        raise IrrationalLambdaUnsupportedError(
            "pass an exact rational eigenvalue; floats are ambiguous"
        )
    lam = Fraction(lam)
    det = polymat_det(m)
    if det.is_zero():
        raise SingularPolyMatrixError("determinant is identically zero")
    algebraic = root_multiplicity(det, lam)
    geometric = m.nrows - m.eval_at(lam).rank()
    partials = smith_form(m).partial_multiplicities(lam)
    if sum(partials) != algebraic or len(partials) != geometric:
        raise RuntimeError("multiplicity bookkeeping disagrees")
    return EigenReport(lam, algebraic, geometric, partials)


def is_one_defective(g: Graph, tau=1) -> bool:
    """Whether 1/tau is a defective eigenvalue of the downweighted Laplacian.

    Pure counting test: 2*d - d_U == 2*tau*n, no linear algebra involved.
    """
    g.require_unweighted("is_one_defective")
    tau = Fraction(tau)
    d = g.arc_count()
    d_u = g.reciprocated_arc_count()
    return Fraction(2 * d - d_u) == 2 * tau * g.n
