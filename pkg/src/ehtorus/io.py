"""JSON and SVG export of Heegaard diagrams.

Rationals are written as ``[numerator, denominator]``.  Every document has
a ``schema_version`` field; the matching JSON schemas live in ``schemas/``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .heegaard import HeegaardDiagram
from .surface import SurfacePresentation

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def rational(q) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def from_rational(v) -> Fraction:
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v) and v[1] > 0):
        raise SchemaError(f"bad rational {v!r}")
    return Fraction(v[0], v[1])


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def export_json(D: HeegaardDiagram) -> dict:
    pages = []
    for p in (1, 0):
        page = D.pages[p]
        curves = [
            {"beta": bl, "word": list(arc.word), "start": arc.start, "end": arc.end,
             "chords": [list(c) for c in arc.chords(D.S)]}
            for bl, arc in zip(D.beta_labels, page.curves)
        ]
        pages.append({
            "index": p,
            "counts": [page.counts[x] for x in range(2 * D.S.n)],
            "curves": curves,
            "faces": [[list(page.marks[s]) for s in face] for face in page.faces],
        })
    regions = [
        {"index": r.index, "faces": [list(f) for f in r.faces], "euler": r.euler, "corners": r.corners,
         "euler_measure": rational(r.euler_measure), "contains_z": r.contains_z,
         "tau_pieces": sorted(list(t) for t in r.tau_pieces)}
        for r in D.regions
    ]
    points = [
        {"index": q.index, "name": q.name, "alpha": q.alpha, "beta": q.beta, "page": q.page,
         "t": q.t, "in_F": q.in_F}
        for q in D.points
    ]
    ok, _ = D.check_weak_admissibility()
    depths = getattr(D, "dotted_depths", None)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "heegaard-diagram",
        "label": D.label,
        "surface": D.S.to_json(),
        "images": [list(w) for w in D.images],
        "pages": pages,
        "points": points,
        "regions": regions,
        "z": D.z,
        "F": sorted(D.F_zone) if D.F_zone is not None else None,
        "dotted_depths": ([[i, e, k] for (i, e), k in sorted(depths.items())] if depths else None),
        "eh_generator": list(D.eh_generator().points),
        "generator_count": len(D.generators()),
        "periodic_basis": [list(P.coeffs) for P in D.periodic_domains()],
        "balance_rows": [list(r) for r in D.balance_rows],
        "euler_sum": rational(D.euler_sum()),
        "weakly_admissible": ok,
    }


def import_json(doc: dict) -> HeegaardDiagram:
    """Rebuild a diagram and check that it reproduces the document exactly."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError("unsupported or missing schema_version")
    if doc.get("kind") != "heegaard-diagram":
        raise SchemaError("not a diagram document")
    try:
        s = doc["surface"]
        S = SurfacePresentation(tuple(s["sides"]), s["name"])
        D = HeegaardDiagram(S, [tuple(w) for w in doc["images"]], doc["label"])
    except (KeyError, TypeError) as e:
        raise SchemaError(f"malformed diagram document: {e}") from e
    if doc.get("dotted_depths"):
        D.set_boundary_twist_zone()
    elif doc.get("F") is not None:
        D.set_F(doc["F"])
    if export_json(D) != doc:
        raise SchemaError("document does not match the rebuilt diagram")
    return D


# ---------------------------------------------------------------- SVG

_PAGE_R = 150.0
_PAGE_GAP = 380.0


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _mark_xy(D: HeegaardDiagram, p: int, mark, cx: float) -> tuple[float, float]:
    """Marks sit on a circle; side X occupies the arc [X, X+1) of 2n slots."""
    page = D.pages[p]
    n2 = 2 * D.S.n
    x, k = mark
    frac = (k + 1) / (page.counts[x] + 1)
    ang = 2 * math.pi * (x + frac) / n2
    return cx + _PAGE_R * math.cos(ang), 200.0 - _PAGE_R * math.sin(ang)


def export_svg(D: HeegaardDiagram) -> str:
    """Both pages as polygons with beta chords; alpha sides are drawn solid,
    boundary sides grey, points of F red, and z as a labelled dot."""
    n2 = 2 * D.S.n
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(2 * _PAGE_GAP)}" height="420" '
           f'viewBox="0 0 {int(2 * _PAGE_GAP)} 420">']
    out.append(f'<title>{D.label}</title>')
    palette = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"]
    point_at = {}
    for i, pm in enumerate(D._point_marks):
        point_at[(pm["page"], pm[1])] = i
        point_at[(pm["page"], pm[-1])] = i
    for col, p in enumerate((1, 0)):
        cx = _PAGE_GAP * col + _PAGE_GAP / 2
        page = D.pages[p]
        out.append(f'<g id="page{p}">')
        title = "S_1/2" if p == 1 else "-S_0"
        out.append(f'<text x="{_fmt(cx)}" y="24" text-anchor="middle" font-size="16">{title}</text>')
        for x in range(n2):
            a0, a1 = 2 * math.pi * x / n2, 2 * math.pi * (x + 1) / n2
            x0, y0 = cx + _PAGE_R * math.cos(a0), 200 - _PAGE_R * math.sin(a0)
            x1, y1 = cx + _PAGE_R * math.cos(a1), 200 - _PAGE_R * math.sin(a1)
            if x % 2 == 0:
                lab = D.S.sides[x // 2]
                out.append(f'<line class="alpha" x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                           f'stroke="#d62728" stroke-width="2"/>')
                mx, my = cx + 1.15 * _PAGE_R * math.cos((a0 + a1) / 2), 200 - 1.15 * _PAGE_R * math.sin((a0 + a1) / 2)
                name = f"a{abs(lab)}" + ("" if lab > 0 else "'")
                out.append(f'<text x="{_fmt(mx)}" y="{_fmt(my)}" font-size="12" text-anchor="middle">{name}</text>')
            else:
                out.append(f'<line class="boundary" x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
                           f'stroke="#999999" stroke-width="1"/>')
        drawn = set()
        for m in page.marks:
            q = page.partner[m]
            key = tuple(sorted((m, q)))
            if key in drawn:
                continue
            drawn.add(key)
            (x0, y0), (x1, y1) = _mark_xy(D, p, m, cx), _mark_xy(D, p, q, cx)
            colour = palette[(page.mark_curve[m] - 1) % len(palette)]
            out.append(f'<path class="beta" d="M {_fmt(x0)} {_fmt(y0)} Q {_fmt(cx)} 200 {_fmt(x1)} {_fmt(y1)}" '
                       f'fill="none" stroke="{colour}" stroke-width="1.5"/>')
        for m in page.marks:
            if m[0] % 2 or (p, m) not in point_at:
                continue
            pt = D.points[point_at[(p, m)]]
            x0, y0 = _mark_xy(D, p, m, cx)
            fill = "#d62728" if pt.in_F else "#000000"
            out.append(f'<circle class="point" cx="{_fmt(x0)}" cy="{_fmt(y0)}" r="3" fill="{fill}">'
                       f'<title>{pt.name}</title></circle>')
        if p == 1:
            # z sits by the outer half of the first boundary side
            t = D.S.n - 1
            a = 2 * math.pi * (2 * t + 1.75) / n2
            zx, zy = cx + 0.9 * _PAGE_R * math.cos(a), 200 - 0.9 * _PAGE_R * math.sin(a)
            out.append(f'<circle class="z" cx="{_fmt(zx)}" cy="{_fmt(zy)}" r="4" fill="#ff7f0e"/>')
            out.append(f'<text x="{_fmt(zx + 6)}" y="{_fmt(zy)}" font-size="12">z</text>')
        elif getattr(D, "dotted_depths", None):
            out.append(f'<circle class="dotted" cx="{_fmt(cx)}" cy="200" r="{_fmt(0.8 * _PAGE_R)}" fill="none" '
                       f'stroke="#444444" stroke-dasharray="4 4"/>')
        out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
