"""Certificates for the contact class EH(S, h) over the two-element field.

Three independent methods, each with replayable evidence:

* emptiness: no nonnegative domain with n_z = 0 reaches the distinguished
  generator x from any other generator, so x is not a boundary;
* left arc: in a suitable basis an embedded bigon runs from (y_1, x_2, ...)
  to x, so x is a boundary;
* bigon complex: when every nonnegative domain is an embedded bigon the whole
  chain complex is known and its homology is computed directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import mcg
from .heegaard import Domain, Generator, HeegaardDiagram, annulus_diagram, torus_diagram
from .surface import TorusBasis
from .words import MapClassWord, word


class CertKind(str, enum.Enum):
    NONZERO_BY_EMPTINESS = "NonzeroByEmptiness"
    ZERO_BY_LEFT_ARC = "ZeroByLeftArc"
    HOMOLOGY_NONZERO = "ComputedHomologyNonzero"
    HOMOLOGY_ZERO = "ComputedHomologyZero"
    INCONCLUSIVE = "Inconclusive"

    @property
    def nonzero(self) -> bool | None:
        if self in (CertKind.NONZERO_BY_EMPTINESS, CertKind.HOMOLOGY_NONZERO):
            return True
        if self in (CertKind.ZERO_BY_LEFT_ARC, CertKind.HOMOLOGY_ZERO):
            return False
        return None


class VerdictMismatch(RuntimeError):
    def __init__(self, message: str, certificate: "Certificate", verdict):
        super().__init__(message)
        self.certificate = certificate
        self.verdict = verdict


@dataclass
class Source:
    """What a diagram was built from, enough to rebuild it."""

    surface: str  # "torus" or "annulus"
    word: str | None = None
    twist: int | None = None
    basis: tuple[tuple[int, int], tuple[int, int]] | None = None

    def build(self) -> HeegaardDiagram:
        if self.surface == "annulus":
            return annulus_diagram(self.twist)
        B = TorusBasis.of(*self.basis) if self.basis else None
        return torus_diagram(self.word, B)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"surface": self.surface}
        if self.word is not None:
            out["word"] = self.word
        if self.twist is not None:
            out["twist"] = self.twist
        if self.basis is not None:
            out["basis"] = [list(v) for v in self.basis]
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Source":
        basis = tuple(tuple(v) for v in d["basis"]) if d.get("basis") else None
        return cls(d["surface"], d.get("word"), d.get("twist"), basis)


def _basis_tuple(B: TorusBasis | None):
    if B is None:
        return None
    return tuple(a.slope for a in B.arcs)


@dataclass
class Certificate:
    kind: CertKind
    method: str
    source: Source | None = None
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "kind": self.kind.value,
            "method": self.method,
            "source": self.source.to_json() if self.source else None,
            "evidence": self.evidence,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        if d.get("schema_version") != 1:
            raise ValueError("unsupported certificate schema version")
        src = Source.from_json(d["source"]) if d.get("source") else None
        return cls(CertKind(d["kind"]), d["method"], src, d.get("evidence", {}), d.get("notes", []))


def eh_generator(D: HeegaardDiagram) -> Generator:
    return D.eh_generator()


# ---------------------------------------------------------------- emptiness


def certify_nonzero(D: HeegaardDiagram, source: Source | None = None, bound: int | None = None) -> Certificate:
    ok, witness = D.check_weak_admissibility()
    if not ok:
        return Certificate(CertKind.INCONCLUSIVE, "emptiness", source,
                           {"reason": "not weakly admissible", "witness": list(witness.coeffs)})
    x = D.eh_generator()
    records = []
    for y in D.generators():
        if y == x:
            continue
        D0 = D.connecting_domain(y, x)
        if D0 is None:
            records.append({"y": list(y.points), "connecting": None})
            continue
        found, wit, B = D.positive_domain_exists(y, x, bound)
        if found:
            return Certificate(CertKind.INCONCLUSIVE, "emptiness", source, {
                "reason": "nonnegative domain into x",
                "y": list(y.points),
                "witness": list(wit.coeffs),
            })
        records.append({"y": list(y.points), "connecting": list(D0.coeffs), "bound": B})
    return Certificate(CertKind.NONZERO_BY_EMPTINESS, "emptiness", source, {
        "x": list(x.points),
        "periodic_basis": [list(P.coeffs) for P in D.periodic_domains()],
        "records": records,
    })


# ---------------------------------------------------------------- left arc


def _left_bigon(D: HeegaardDiagram, bound: int | None = None):
    """(y, bigon) with y = x except at one page-0 coordinate and a unique
    nonnegative domain from y to x which is an embedded bigon."""
    x = D.eh_generator()
    for i, xi in enumerate(x.points):
        a = D.points[xi].alpha
        for p in D.points:
            if p.page != 0 or p.alpha != a or p.beta != a:
                continue
            pts = list(x.points)
            pts[i] = p.index
            y = Generator(tuple(pts))
            sols, B = D.positive_domains(y, x, bound)
            sols = [s for s in sols if not s.is_zero()]
            if len(sols) == 1 and D.is_embedded_bigon(sols[0], y, x):
                return y, sols[0], B
    return None


def _left_candidates(h: MapClassWord, max_conj: int = 3):
    """Bases to try: first from rays the lift moves to the left, then short
    conjugators."""
    from .farey import slope_vector
    from .intlinalg import ext_gcd

    seen = set()
    # Farey rationals of small height
    rays = []
    for q in range(0, 6):
        for p in range(-6, 7):
            if q == 0 and p != 1:
                continue
            from math import gcd

            if gcd(p, q) != 1:
                continue
            rays.append((q, p))
    for v in rays:
        for s in (1, -1):
            vv = (s * v[0], s * v[1])
            r0 = mcg.LiftedRay(vv, 0)
            r1 = mcg.lifted_action(h, r0)
            if r0.compare(r1) > 0:  # moved left
                g, a, b = ext_gcd(vv[0], vv[1])
                w = (-b, a)  # det(vv, w) = 1
                B = TorusBasis.of(vv, w)
                key = tuple(x.slope for x in B.arcs)
                if key not in seen:
                    seen.add(key)
                    yield B
    import itertools

    for n in range(1, max_conj + 1):
        for letters in itertools.product("aAbB", repeat=n):
            f = MapClassWord(letters)
            if len(f) != n:
                continue
            F = mcg.evaluate(f)
            B = TorusBasis.of((F.a, F.c), (F.b, F.d))
            key = tuple(x.slope for x in B.arcs)
            if key not in seen:
                seen.add(key)
                yield B


def certify_zero_left_arc(surface: str, h=None, twist: int | None = None, bound: int | None = None,
                          max_tries: int = 40) -> Certificate:
    if surface == "annulus":
        src = Source("annulus", twist=twist)
        D = src.build()
        hit = _left_bigon(D, bound)
        if hit:
            y, big, B = hit
            return Certificate(CertKind.ZERO_BY_LEFT_ARC, "left-arc", src,
                               {"y": list(y.points), "x": list(D.eh_generator().points),
                                "bigon": list(big.coeffs), "bound": B})
        return Certificate(CertKind.INCONCLUSIVE, "left-arc", src, {"reason": "no left bigon"})
    h = word(h)
    for k, B in enumerate(_left_candidates(h)):
        if k >= max_tries:
            break
        src = Source("torus", str(h), basis=_basis_tuple(B))
        D = src.build()
        hit = _left_bigon(D, bound)
        if hit:
            y, big, bnd = hit
            return Certificate(CertKind.ZERO_BY_LEFT_ARC, "left-arc", src,
                               {"y": list(y.points), "x": list(D.eh_generator().points),
                                "bigon": list(big.coeffs), "bound": bnd})
    return Certificate(CertKind.INCONCLUSIVE, "left-arc", Source("torus", str(h)),
                       {"reason": "no left bigon in the searched bases"})


# ---------------------------------------------------------------- bigon complex


def _rank_gf2(rows: list[list[int]]) -> int:
    rows = [r[:] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % 2), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % 2:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _in_span_gf2(cols: list[list[int]], target: list[int]) -> bool:
    if not cols:
        return not any(t % 2 for t in target)
    rows_a = [list(r) for r in zip(*cols)]
    aug = [ra + [t] for ra, t in zip(rows_a, target)]
    return _rank_gf2(rows_a) == _rank_gf2(aug)


@dataclass
class BigonComplex:
    generators: list[Generator]
    matrix: list[list[int]]  # matrix[i][j] = coefficient of generators[j] in d(generators[i])
    x_index: int
    x_is_cycle: bool
    x_is_boundary: bool
    homology_rank: int
    dd_zero: bool

    @property
    def x_nonzero(self) -> bool:
        return self.x_is_cycle and not self.x_is_boundary

    def to_json(self) -> dict:
        return {
            "generators": [list(g.points) for g in self.generators],
            "matrix": self.matrix,
            "x": self.x_index,
            "x_is_cycle": self.x_is_cycle,
            "x_is_boundary": self.x_is_boundary,
            "homology_rank": self.homology_rank,
        }


def bigon_complex(D: HeegaardDiagram, bound: int | None = None) -> BigonComplex | None:
    gens = D.generators()
    n = len(gens)
    mat = [[0] * n for _ in range(n)]
    for i, y in enumerate(gens):
        for j, w in enumerate(gens):
            if i == j:
                continue
            sols, _ = D.positive_domains(y, w, bound)
            for s in sols:
                if not D.is_embedded_bigon(s, y, w):
                    return None
                mat[i][j] ^= 1
    x = D.eh_generator()
    xi = gens.index(x)
    dd = [[sum(mat[i][k] * mat[k][j] for k in range(n)) % 2 for j in range(n)] for i in range(n)]
    dd_zero = not any(any(r) for r in dd)
    rank = _rank_gf2(mat) if n else 0
    unit = [1 if j == xi else 0 for j in range(n)]
    return BigonComplex(
        generators=gens,
        matrix=mat,
        x_index=xi,
        x_is_cycle=not any(mat[xi]),
        x_is_boundary=_in_span_gf2([mat[i] for i in range(n)], unit),
        homology_rank=n - 2 * rank,
        dd_zero=dd_zero,
    )


def certify_bigon_complex(D: HeegaardDiagram, source: Source | None = None, bound: int | None = None) -> Certificate:
    bc = bigon_complex(D, bound)
    if bc is None:
        return Certificate(CertKind.INCONCLUSIVE, "bigon-complex", source,
                           {"reason": "some nonnegative domain is not an embedded bigon"})
    if not bc.dd_zero:
        raise RuntimeError("bigon differential does not square to zero")
    kind = CertKind.HOMOLOGY_NONZERO if bc.x_nonzero else CertKind.HOMOLOGY_ZERO
    return Certificate(kind, "bigon-complex", source, bc.to_json())


# ---------------------------------------------------------------- orchestration


def _diagram_bases(h: MapClassWord):
    """Extra bases for the emptiness method: the reducible normal form basis
    or the third-quadrant basis."""
    nt = mcg.classify(h)
    M = mcg.evaluate(h)
    out = []
    if nt.kind is mcg.NTType.REDUCIBLE:
        P = mcg.reducible_normal_form(h).basis_change
        Pi = P.inverse()
        out.append(TorusBasis.of((Pi.a, Pi.c), (Pi.b, Pi.d)))
    elif nt.kind is mcg.NTType.PSEUDO_ANOSOV and M.trace < -2:
        P, _ = mcg.third_quadrant_conjugate(M)
        Pi = P.inverse()
        out.append(TorusBasis.of((Pi.a, Pi.c), (Pi.b, Pi.d)))
    return out


def decide(surface: str = "torus", h=None, twist: int | None = None, basis: TorusBasis | None = None,
           bound: int | None = None, cross_check: bool = True,
           orbit_depth: int = mcg.DEFAULT_ORBIT_DEPTH) -> Certificate:
    """Run left-arc, emptiness and bigon-complex certification in turn."""
    if surface == "annulus":
        cert = certify_zero_left_arc("annulus", twist=twist, bound=bound)
        if cert.kind is CertKind.INCONCLUSIVE:
            src = Source("annulus", twist=twist)
            D = src.build()
            cert = certify_nonzero(D, src, bound)
            if cert.kind is CertKind.INCONCLUSIVE:
                cert = certify_bigon_complex(D, src, bound)
        return cert
    h = word(h)
    verdict = mcg.tight(h, orbit_depth) if cross_check else None
    cert = certify_zero_left_arc("torus", h, bound=bound)
    if cert.kind is CertKind.INCONCLUSIVE:
        bases = [basis] + [B for B in _diagram_bases(h) if B != basis]
        for B in bases:
            src = Source("torus", str(h), basis=_basis_tuple(B))
            c = certify_nonzero(src.build(), src, bound)
            if c.kind is not CertKind.INCONCLUSIVE:
                cert = c
                break
    if cert.kind is CertKind.INCONCLUSIVE:
        src = Source("torus", str(h), basis=_basis_tuple(basis))
        cert = certify_bigon_complex(src.build(), src, bound)
    if cross_check and cert.kind.nonzero is not None:
        tight = verdict.verdict is mcg.Verdict.TIGHT
        if cert.kind.nonzero != tight:
            raise VerdictMismatch(
                f"certificate {cert.kind.value} disagrees with {verdict.verdict.value} for {h}", cert, verdict)
    return cert


# ---------------------------------------------------------------- replay


class ReplayError(RuntimeError):
    pass


def replay(cert: Certificate | dict) -> bool:
    """Re-validate a certificate from its evidence; raises ReplayError on failure."""
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    if cert.kind is CertKind.INCONCLUSIVE:
        return True
    if cert.source is None:
        raise ReplayError("certificate has no source")
    D = cert.source.build()
    ev = cert.evidence
    if cert.kind is CertKind.NONZERO_BY_EMPTINESS:
        ok, _ = D.check_weak_admissibility()
        if not ok:
            raise ReplayError("diagram is not weakly admissible")
        x = Generator(tuple(ev["x"]))
        if x != D.eh_generator():
            raise ReplayError("recorded x is not the distinguished generator")
        if [list(P.coeffs) for P in D.periodic_domains()] != ev["periodic_basis"]:
            raise ReplayError("periodic lattice differs")
        recorded = {tuple(r["y"]) for r in ev["records"]}
        if recorded != {g.points for g in D.generators() if g != x}:
            raise ReplayError("records do not cover every generator")
        from ._accel import enumerate_nonnegative

        for r in ev["records"]:
            y = Generator(tuple(r["y"]))
            if r["connecting"] is None:
                if D.connecting_domain(y, x) is not None:
                    raise ReplayError(f"a connecting domain exists for {y}")
                continue
            D0 = Domain(tuple(r["connecting"]))
            if not D.is_domain_from(D0, y, x) or D.n_z(D0) != 0:
                raise ReplayError(f"recorded domain for {y} has the wrong boundary")
            basis = [list(P.coeffs) for P in D.periodic_domains()]
            if enumerate_nonnegative(list(D0.coeffs), basis, r["bound"], first_only=True):
                raise ReplayError(f"nonnegative domain found for {y} at the recorded bound")
        return True
    if cert.kind is CertKind.ZERO_BY_LEFT_ARC:
        x = Generator(tuple(ev["x"]))
        y = Generator(tuple(ev["y"]))
        big = Domain(tuple(ev["bigon"]))
        if x != D.eh_generator():
            raise ReplayError("recorded x is not the distinguished generator")
        if not (D.is_domain_from(big, y, x) and D.n_z(big) == 0 and D.is_embedded_bigon(big, y, x)):
            raise ReplayError("recorded bigon is not an embedded bigon from y to x")
        sols, _ = D.positive_domains(y, x, ev["bound"])
        if [s for s in sols if not s.is_zero()] != [big]:
            raise ReplayError("the bigon is not the only nonnegative domain from y to x")
        return True
    # computed homology
    bc = bigon_complex(D)
    if bc is None or bc.to_json() != ev:
        raise ReplayError("recomputed complex differs from the recorded one")
    if (cert.kind is CertKind.HOMOLOGY_NONZERO) != bc.x_nonzero:
        raise ReplayError("class of x differs")
    return True
