import json

import pytest

from ehtorus import io
from ehtorus.heegaard import annulus_diagram, torus_diagram


@pytest.mark.parametrize("build", [lambda: annulus_diagram(0), lambda: torus_diagram("d"),
                                   lambda: torus_diagram("(aba)^2 B a")])
def test_json_round_trip(build):
    D = build()
    text = io.dumps(io.export_json(D))
    E = io.import_json(json.loads(text))
    assert io.dumps(io.export_json(E)) == text
    assert len(E.generators()) == len(D.generators())


def test_import_rejects_edits():
    doc = io.export_json(annulus_diagram(0))
    doc["regions"][0]["euler"] += 1
    with pytest.raises(io.SchemaError):
        io.import_json(doc)
    doc = io.export_json(annulus_diagram(0))
    doc["schema_version"] = 99
    with pytest.raises(io.SchemaError):
        io.import_json(doc)


def test_rationals_are_pairs():
    doc = io.export_json(torus_diagram("d"))
    assert doc["euler_sum"] == [-2, 1]
    assert all(len(r["euler_measure"]) == 2 for r in doc["regions"])
    assert io.from_rational([3, 4]) == io.from_rational([6, 8])
    with pytest.raises(io.SchemaError):
        io.from_rational([1, 0])


def test_annulus_picture_counts():
    D = annulus_diagram(0)
    svg = io.export_svg(D)
    # each point is drawn on both copies of its alpha side
    assert svg.count('class="point"') == 2 * len(D.points)
    assert svg.count('class="z"') == 1
    assert 'class="dotted"' not in svg


def test_boundary_twist_picture_has_dotted_arc():
    svg = io.export_svg(torus_diagram("d"))
    assert 'class="dotted"' in svg
    assert 'fill="#d62728"' in svg  # points of F


def test_svg_is_deterministic():
    assert io.export_svg(torus_diagram("ab")) == io.export_svg(torus_diagram("ab"))
