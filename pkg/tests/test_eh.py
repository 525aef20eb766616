import json

import pytest

from ehtorus import eh, mcg
from ehtorus.eh import CertKind
from ehtorus.heegaard import annulus_diagram, torus_diagram


@pytest.mark.parametrize("m,nonzero", [(0, True), (1, True), (-1, False)])
def test_annulus_bigon_complex(m, nonzero):
    bc = eh.bigon_complex(annulus_diagram(m))
    assert bc is not None and bc.dd_zero
    assert bc.x_nonzero is nonzero


def test_annulus_identity_homology_rank():
    assert eh.bigon_complex(annulus_diagram(0)).homology_rank == 2


@pytest.mark.parametrize("m,kind", [
    (-1, CertKind.ZERO_BY_LEFT_ARC), (1, CertKind.NONZERO_BY_EMPTINESS), (0, CertKind.HOMOLOGY_NONZERO),
])
def test_annulus_decide(m, kind):
    c = eh.decide("annulus", twist=m)
    assert c.kind is kind
    assert eh.replay(c.to_json())


@pytest.mark.parametrize("w,kind", [
    ("(aba)^2 B a", CertKind.NONZERO_BY_EMPTINESS),
    ("B", CertKind.ZERO_BY_LEFT_ARC),
    ("AbAb", CertKind.ZERO_BY_LEFT_ARC),
    ("ab", CertKind.NONZERO_BY_EMPTINESS),
    ("a", CertKind.HOMOLOGY_NONZERO),
])
def test_torus_decide(w, kind):
    c = eh.decide("torus", w)
    assert c.kind is kind
    assert c.kind.nonzero == (mcg.tight(w).verdict is mcg.Verdict.TIGHT)
    doc = json.loads(json.dumps(c.to_json()))
    assert eh.replay(doc)


def test_left_arc_fails_on_right_veering():
    assert eh.certify_zero_left_arc("torus", "a").kind is CertKind.INCONCLUSIVE


def test_emptiness_inconclusive_on_boundary_twist():
    c = eh.certify_nonzero(torus_diagram("d"))
    assert c.kind is CertKind.INCONCLUSIVE
    assert c.evidence["reason"] == "nonnegative domain into x"


def test_replay_rejects_tampering():
    c = eh.decide("torus", "B").to_json()
    big = c["evidence"]["bigon"]
    i = next(j for j, v in enumerate(big) if v == 0)
    big[i] = 1
    with pytest.raises(eh.ReplayError):
        eh.replay(c)


def test_replay_rejects_wrong_records():
    c = eh.decide("torus", "(aba)^2 B a").to_json()
    c["evidence"]["records"] = c["evidence"]["records"][1:]
    with pytest.raises(eh.ReplayError):
        eh.replay(c)


def test_certificate_schema_version():
    c = eh.decide("torus", "B").to_json()
    c["schema_version"] = 2
    with pytest.raises(ValueError):
        eh.Certificate.from_json(c)


def test_mismatch_is_raised(monkeypatch):
    real = mcg.tight

    def flipped(w, depth=mcg.DEFAULT_ORBIT_DEPTH):
        v = real(w, depth)
        other = mcg.Verdict.OVERTWISTED if v.verdict is mcg.Verdict.TIGHT else mcg.Verdict.TIGHT
        return mcg.TightnessVerdict(other, v.reason, v.fdtc, v.nt)

    monkeypatch.setattr(mcg, "tight", flipped)
    with pytest.raises(eh.VerdictMismatch):
        eh.decide("torus", "B")
