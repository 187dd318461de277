"""Exact determinant-identity certificates.

Each verifier computes both sides of an identity by genuinely different
routes (edge-space characteristic polynomials against vertex-space
Laplacian determinants, or matrix products against closed forms) and
returns a certificate whose `equal` flag is an exact polynomial comparison.
A failing certificate signals an implementation bug or a wrong identity,
never a tolerance issue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .edgespace import EdgeSpace, build_edge_space
from .errors import TauOutOfRangeError
from .exact import Matrix
from .graphs import Graph
from .laplacians import directed_dgl, tau_dgl
from .polys import Polynomial, PolyMatrix, polymat_det

_ONE = Fraction(1)


@dataclass(frozen=True)
class IdentityCertificate:
    """Outcome of one exact identity check.

    For determinant identities lhs and rhs hold the cross-multiplied
    polynomials and residual their difference.  Matrix identities set lhs
    and rhs to None and encode the total absolute deviation in residual, so
    `equal` is always equivalent to `residual == 0`.
    """

    identity: str
    equal: bool
    residual: Polynomial
    lhs: Polynomial | None = None
    rhs: Polynomial | None = None
    graph_summary: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)


def _summary(g: Graph, es: EdgeSpace) -> dict:
    return {
        "n": g.n,
        "m": es.m,
        "a": es.unreciprocated_count,
        "b": es.reciprocal_pair_count,
    }


def _det_certificate(name, lhs, rhs, summary, details=None) -> IdentityCertificate:
    residual = lhs - rhs
    return IdentityCertificate(
        identity=name,
        equal=residual.is_zero(),
        residual=residual,
        lhs=lhs,
        rhs=rhs,
        graph_summary=summary,
        details=details or {},
    )


def _matrix_certificate(name, deviation: Fraction, summary, details=None):
    residual = Polynomial([deviation])
    return IdentityCertificate(
        identity=name,
        equal=deviation == 0,
        residual=residual,
        graph_summary=summary,
        details=details or {},
    )


def _det_one_minus_t(m: Matrix) -> Polynomial:
    return Polynomial(m.det_one_minus_t())


def _cross_multiply(edge_side: Polynomial, vertex_side: Polynomial, base: Polynomial,
                    exponent: int):
    """Balance det identities with exponent b - n on the base polynomial.

    Negative exponents multiply the edge side instead, keeping both sides
    polynomial.
    """
    if exponent >= 0:
        return edge_side, vertex_side * base**exponent
    return edge_side * base ** (-exponent), vertex_side


def verify_ihara_digraph(g: Graph) -> IdentityCertificate:
    """det(I - t B) against (1 - t**2)**(b - n) det M(t), cross-multiplied."""
    g.require_unweighted("verify_ihara_digraph")
    es = build_edge_space(g)
    base = Polynomial([1, 0, -1])
    lhs = _det_one_minus_t(es.hashimoto)
    rhs = polymat_det(directed_dgl(g))
    lhs, rhs = _cross_multiply(lhs, rhs, base, es.reciprocal_pair_count - g.n)
    return _det_certificate("ihara_digraph", lhs, rhs, _summary(g, es))


def _tau_laplacian(g: Graph, tau: Fraction) -> PolyMatrix:
    if tau > 0:
        return tau_dgl(g, tau)
    eye = Matrix.identity(g.n)
    return PolyMatrix.from_coefficients([eye, -g.adjacency()], grade=1)


def verify_tau_ihara(g: Graph, tau) -> IdentityCertificate:
    """Downweighted identity: det(I - t(tau B + (1 - tau) W)) against
    (1 - tau**2 t**2)**(b - n) det M_tau(t)."""
    g.require_unweighted("verify_tau_ihara")
    tau = Fraction(tau)
    if not 0 <= tau <= 1:
        raise TauOutOfRangeError(f"tau={tau} outside [0, 1]")
    es = build_edge_space(g)
    blend = es.hashimoto.scale(tau) + es.line_graph.scale(1 - tau)
    lhs = _det_one_minus_t(blend)
    rhs = polymat_det(_tau_laplacian(g, tau))
    base = Polynomial([1, 0, -(tau * tau)])
    lhs, rhs = _cross_multiply(lhs, rhs, base, es.reciprocal_pair_count - g.n)
    return _det_certificate(
        "tau_ihara", lhs, rhs, _summary(g, es), details={"tau": str(tau)}
    )


def verify_flanders(g: Graph) -> IdentityCertificate:
    """Line-graph determinant identity det(I - t W) = det(I - t A)."""
    g.require_unweighted("verify_flanders")
    es = build_edge_space(g)
    lhs = _det_one_minus_t(es.line_graph)
    rhs = _det_one_minus_t(g.adjacency())
    return _det_certificate("flanders", lhs, rhs, _summary(g, es))


def verify_weighted_ihara(g: Graph, samples: int | None = None) -> IdentityCertificate:
    """Weighted identity in square-root-free form.

    The claim det Phi(A, t) = prod_i (1 - t**2 w_i w_i') / det(I - t V) is
    checked as det Phi * det(I - t B Z) == product side, with two routes:

    * a polynomial route collapsing det Phi * det(I - t B Z) through the
      Weinstein-Aronszajn identity to det(I + t (W - B) Z), and
    * a pointwise route evaluating Phi exactly through the adjugate of
      I - t B Z at 2 (n + m) + 1 rational sample points.

    The product side is enumerated straight from the reciprocal edge pairs.
    """
    es = build_edge_space(g)
    summary = _summary(g, es)
    n = g.n
    m = es.m
    if m == 0:
        one = Polynomial([1])
        return _det_certificate(
            "weighted_ihara", one, one, summary, details={"sample_points": 0}
        )

    wmap = g.weight_map()
    rhs = Polynomial([1])
    for u, v in g.reciprocal_pairs():
        rhs = rhs * Polynomial([1, 0, -(wmap[(u, v)] * wmap[(v, u)])])

    step = es.hashimoto * es.weight_diag  # B Z in the unweighted-support form
    collapse = (es.hashimoto - es.line_graph) * es.weight_diag
    lhs = _det_one_minus_t(collapse)
    g_poly = Polynomial(step.det_one_minus_t())

    samples_ok, checked = _adjugate_sample_check(
        es, step, g_poly, rhs, 2 * (n + m) + 1 if samples is None else samples
    )

    residual = lhs - rhs
    return IdentityCertificate(
        identity="weighted_ihara",
        equal=residual.is_zero() and samples_ok,
        residual=residual,
        lhs=lhs,
        rhs=rhs,
        graph_summary=summary,
        details={"sample_points": checked, "samples_consistent": samples_ok},
    )


def _adjugate_sample_check(es, step, g_poly, rhs, count):
    """Evaluate Phi exactly at rational sample points through the adjugate of
    I - t B Z and compare det(Phi) * det(I - t B Z) with the pair product.

    The adjugate coefficients follow the Horner recurrence
    C_j = (B Z) C_{j-1} + g_j I applied directly to the target incidence,
    with everything scaled to integers to keep the arithmetic cheap.
    """
    n = es.graph.n
    m = es.m
    ell = 1
    for e in range(m):
        d = es.weight_diag.data[e][e].denominator
        ell = ell * d // _gcd(ell, d)
    # sparse integer form of ell * B Z
    rows_sparse = []
    for e in range(m):
        row = step.data[e]
        rows_sparse.append([(f, int(x * ell)) for f, x in enumerate(row) if x])
    h = []
    for j in range(m + 1):
        gj = g_poly.coeffs[j] if j <= g_poly.degree else Fraction(0)
        scaled = gj * ell**j
        if scaled.denominator != 1:
            raise RuntimeError("determinant coefficients failed to clear denominators")
        h.append(int(scaled))
    r_int = [[int(x) for x in row] for row in es.target.data]
    coeff_ints = [[[h[0] * x for x in row] for row in r_int]]
    for j in range(1, m):
        prev = coeff_ints[-1]
        hj = h[j]
        nxt = []
        for e in range(m):
            acc = [hj * x for x in r_int[e]]
            for f, w in rows_sparse[e]:
                if w:
                    prow = prev[f]
                    for col in range(n):
                        acc[col] += w * prow[col]
            nxt.append(acc)
        coeff_ints.append(nxt)

    lt_z = es.source.transpose() * es.weight_diag
    eye = Matrix.identity(n)
    checked = 0
    candidate = 0
    while checked < count:
        candidate += 1
        t = Fraction(candidate, 2) if candidate % 2 else Fraction(-candidate // 2)
        gt = g_poly(t)
        if gt == 0:
            continue
        p, q = t.numerator, t.denominator
        base = q * ell
        # Y(t) * (q*ell)**(m-1) via scaled integer Horner
        acc = [row[:] for row in coeff_ints[m - 1]]
        power = 1
        for j in range(m - 2, -1, -1):
            power *= base
            cj = coeff_ints[j]
            for e in range(m):
                acc[e] = [a * p + c * power for a, c in zip(acc[e], cj[e])]
        scale = Fraction(1, base ** (m - 1))
        y = Matrix([[x * scale for x in row] for row in acc])
        nmat = eye.scale(gt) + (lt_z * y).scale(t)
        if nmat.det() != rhs(t) * gt ** (n - 1):
            return False, checked
        checked += 1
    return True, checked


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def verify_lemma_suite(g: Graph, tau) -> list[IdentityCertificate]:
    """Exact certificates for the structural edge-space lemmas.

    Covers the alternating powers of the backtrack pairing, its compression
    to degree and reciprocity matrices, its characteristic polynomial, and
    the resolvent form of the downweighted Laplacian at rational sample
    points.
    """
    g.require_unweighted("verify_lemma_suite")
    tau = Fraction(tau)
    if not 0 <= tau <= 1:
        raise TauOutOfRangeError(f"tau={tau} outside [0, 1]")
    es = build_edge_space(g)
    summary = _summary(g, es)
    certs = []

    delta = es.backtrack
    omega_mat = es.reciprocal_mask
    if es.m == 0:
        zero = Fraction(0)
        certs.append(_matrix_certificate("backtrack_powers", zero, summary))
        certs.append(_matrix_certificate("incidence_compression", zero, summary))
        one = Polynomial([1])
        certs.append(_det_certificate("backtrack_char_poly", one, one, summary))
        certs.append(
            _matrix_certificate("resolvent_form", zero, summary, {"tau": str(tau)})
        )
        return certs

    # powers alternate between the pairing itself and the reciprocal mask
    deviation = Fraction(0)
    power = delta
    for k in range(2, 7):
        power = power * delta
        expected = omega_mat if k % 2 == 0 else delta
        deviation += (power - expected).abs_sum()
    certs.append(_matrix_certificate("backtrack_powers", deviation, summary))

    lt = es.source.transpose()
    es_graph_edges = g.edge_set()
    a_mat = g.adjacency()
    s_mat = Matrix(
        [
            [
                a_mat.data[i][j] if (j, i) in es_graph_edges else Fraction(0)
                for j in range(g.n)
            ]
            for i in range(g.n)
        ]
    )
    d_mat = Matrix.diagonal([sum(row, Fraction(0)) for row in s_mat.data])
    deviation = (lt * delta * es.target - d_mat).abs_sum()
    deviation += (lt * omega_mat * es.target - s_mat).abs_sum()
    certs.append(_matrix_certificate("incidence_compression", deviation, summary))

    char = Polynomial(delta.char_poly())
    expected = Polynomial([0, 1]) ** es.unreciprocated_count * Polynomial(
        [-1, 0, 1]
    ) ** es.reciprocal_pair_count
    certs.append(_det_certificate("backtrack_char_poly", char, expected, summary))

    m_tau = _tau_laplacian(g, tau)
    eye_m = Matrix.identity(es.m)
    eye_n = Matrix.identity(g.n)
    deviation = Fraction(0)
    points = 0
    candidate = 0
    while points < 5:
        candidate += 1
        t = Fraction(1, candidate + 1)
        if tau * t == 1 or tau * t == -1:
            continue
        inv = (eye_m + delta.scale(tau * t)).inverse()
        if inv is None:
            continue
        lhs_val = (eye_n - (lt * inv * es.target).scale(t)).scale(1 - tau * tau * t * t)
        deviation += (lhs_val - m_tau.eval_at(t)).abs_sum()
        points += 1
    certs.append(
        _matrix_certificate(
            "resolvent_form", deviation, summary, {"tau": str(tau), "sample_points": points}
        )
    )
    return certs
