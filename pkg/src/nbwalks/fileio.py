"""Edge-list parsing and canonical JSON serialization.

File format: one edge per line as "src<TAB>dst[<TAB>weight]".  A line with a
single token declares an isolated vertex.  Anything after '#' is a comment.
A "%undirected" directive line mirrors every listed arc.  Weights may be
integers, decimals (converted exactly) or "p/q" rationals; they must be
positive.  Rationals serialize as "p/q" strings everywhere, polynomials as
ascending coefficient arrays.
"""

from __future__ import annotations

import hashlib
import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .convergence import Bound, RadiusReport
from .errors import GraphParseError
from .exact import Matrix
from .graphs import ComponentReport, Graph, build_graph
from .ihara import IdentityCertificate
from .polys import Polynomial, SmithForm
from .spectral import PerronResult
from .walks import CentralityResult, WalkTable


def parse_weight(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return Fraction(Decimal(token))
    except (InvalidOperation, ValueError):
        raise GraphParseError(f"cannot parse weight {token!r}")


def parse_graph(text: str) -> Graph:
    """Parse edge-list text into a Graph.

    Vertices are indexed in first-appearance order over the whole file,
    including isolated declarations.
    """
    mirror = False
    triples = []
    declared = []
    order = []
    seen_labels = set()

    def mention(label):
        if label not in seen_labels:
            seen_labels.add(label)
            order.append(label)

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%"):
            directive = line[1:].strip().lower()
            if directive == "undirected":
                mirror = True
                continue
            raise GraphParseError(f"unknown directive {line!r}", line_no)
        tokens = line.split()
        if len(tokens) == 1:
            mention(tokens[0])
            declared.append(tokens[0])
            continue
        if len(tokens) == 2:
            src, dst = tokens
            weight = Fraction(1)
        elif len(tokens) == 3:
            src, dst, wtok = tokens
            try:
                weight = parse_weight(wtok)
            except GraphParseError as exc:
                raise GraphParseError(str(exc), line_no) from None
        else:
            raise GraphParseError(
                f"expected 1 to 3 whitespace-separated fields, got {len(tokens)}",
                line_no,
            )
        mention(src)
        mention(dst)
        triples.append((src, dst, weight))

    if mirror:
        triples = triples + [(dst, src, w) for src, dst, w in triples]
    return build_graph(triples, vertices=order)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def serialize_graph(g: Graph) -> str:
    """Canonical text form; parsing it back reproduces the same Graph."""
    lines = [str(label) for label in g.labels]
    for u, v, w in g.edges:
        lines.append(f"{g.labels[u]}\t{g.labels[v]}\t{rational_str(w)}")
    return "\n".join(lines) + "\n"


# ---- JSON building blocks ---------------------------------------------------


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def poly_json(p: Polynomial) -> list:
    return [rational_str(c) for c in p.coeffs]


def matrix_json(m: Matrix) -> list:
    return [[rational_str(x) for x in row] for row in m.data]


def bound_json(b: Bound | None):
    if b is None:
        return None
    if b.kind == "infinite":
        return {"kind": "infinite"}
    if b.kind == "exact":
        return {
            "kind": "exact",
            "value": rational_str(b.value),
            "decimal": b.decimal(),
        }
    return {
        "kind": "interval",
        "lo": rational_str(b.lo),
        "hi": rational_str(b.hi),
        "decimal": b.decimal(),
    }


def perron_json(pr: PerronResult | None):
    if pr is None:
        return None
    return {
        "lower": rational_str(pr.lower),
        "upper": rational_str(pr.upper),
        "nilpotent": pr.nilpotent,
        "iterations": pr.iterations,
    }


def component_report_json(rep: ComponentReport, g: Graph) -> list:
    return [
        {
            "vertices": [str(g.labels[v]) for v in comp.vertices],
            "kind": comp.kind,
            "n": comp.n,
            "d": comp.arc_count,
            "d_u": comp.reciprocated_count,
            "cycle_class": comp.cycle_class,
        }
        for comp in rep.components
    ]


def walk_table_json(table: WalkTable) -> dict:
    return {
        "walk_kind": table.kind,
        "method": table.method,
        "kmax": table.kmax,
        "omega": None if table.omega is None else rational_str(table.omega),
        "tables": [matrix_json(m) for m in table.tables],
    }


def certificate_json(cert: IdentityCertificate) -> dict:
    return {
        "identity": cert.identity,
        "equal": cert.equal,
        "lhs": None if cert.lhs is None else poly_json(cert.lhs),
        "rhs": None if cert.rhs is None else poly_json(cert.rhs),
        "residual": poly_json(cert.residual),
        "graph": cert.graph_summary,
        "details": cert.details,
    }


def smith_json(sf: SmithForm) -> dict:
    return {
        "nrows": sf.nrows,
        "ncols": sf.ncols,
        "rank": sf.rank,
        "invariants": [poly_json(p) for p in sf.invariants],
    }


def radius_json(report: RadiusReport) -> dict:
    return {
        "mode": report.mode,
        "tau": None if report.tau is None else rational_str(report.tau),
        "case": report.case_label,
        "r": bound_json(report.r),
        "mu": bound_json(report.mu),
        "rho": perron_json(report.rho),
        "sigma_squared": None
        if report.sigma_squared is None
        else rational_str(report.sigma_squared),
        "bounds": None
        if report.bounds is None
        else [bound_json(report.bounds[0]), bound_json(report.bounds[1])],
        "provenance": report.provenance,
        "notes": list(report.notes),
    }


def centrality_json(res: CentralityResult) -> dict:
    return {
        "t": rational_str(res.t),
        "mode": res.mode,
        "omega": None if res.omega is None else rational_str(res.omega),
        "row_sums": [rational_str(x) for x in res.row_sums],
        "converged": res.converged,
        "note": res.note,
    }


def report_document(version: str, command: str, payload: dict, source=None) -> dict:
    doc = {
        "tool": {"name": "nbwalks", "version": version},
        "command": command,
        "input": source,
        "payload": payload,
    }
    return doc


def input_descriptor(path: str, text: str, g: Graph) -> dict:
    return {
        "path": path,
        "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "n": g.n,
        "m": g.m,
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True)


def to_tsv(doc: dict) -> str:
    """Flat tab-separated rendering for human inspection."""
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                emit(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list):
            if value and all(
                isinstance(row, list) and all(not isinstance(x, (list, dict)) for x in row)
                for row in value
            ):
                lines.append(prefix)
                for row in value:
                    lines.append("\t" + "\t".join("" if x is None else str(x) for x in row))
            elif all(not isinstance(x, (list, dict)) for x in value):
                lines.append(prefix + "\t" + "\t".join(str(x) for x in value))
            else:
                for i, item in enumerate(value):
                    emit(f"{prefix}[{i}]", item)
        else:
            lines.append(f"{prefix}\t{value}")

    emit("", doc)
    return "\n".join(lines) + "\n"
