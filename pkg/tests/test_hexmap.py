import xml.etree.ElementTree as ET

import pytest

from histosom.hexmap import render_map_svg

SVG_NS = "{http://www.w3.org/2000/svg}"


def tiny_doc():
    bins = [{"lower": 0.0, "upper": 1.0, "weight": 0.5},
            {"lower": 1.0, "upper": 3.0, "weight": 0.5}]
    return {
        "rows": 1,
        "cols": 2,
        "neuron_label": [0, 1],
        "prototypes": [[bins], [bins]],
        "assignments": [
            {"id": "a", "bmu": 0, "cluster": 0},
            {"id": "b", "bmu": 0, "cluster": 0},
            {"id": "c", "bmu": 1, "cluster": 1},
            {"id": "d", "bmu": 1, "cluster": 1},
        ],
    }


def parse(svg):
    return ET.fromstring(svg)


def polys(root, cls):
    return [p for p in root.iter(f"{SVG_NS}polygon") if p.get("class") == cls]


class TestTiles:
    def test_two_hexes_distinct_fills(self):
        root = parse(render_map_svg(tiny_doc()))
        tiles = polys(root, "tile")
        assert len(tiles) == 2
        assert tiles[0].get("fill") != tiles[1].get("fill")

    def test_unlabeled_neuron_is_gray(self):
        doc = tiny_doc()
        doc["neuron_label"] = [0, None]
        root = parse(render_map_svg(doc))
        assert polys(root, "tile")[1].get("fill") == "#d9d9d9"


class TestCountsOverlay:
    def test_empty_neuron_zero_radius(self):
        doc = tiny_doc()
        doc["assignments"] = [{"id": "a", "bmu": 0, "cluster": 0}]
        root = parse(render_map_svg(doc, counts=True))
        overlays = polys(root, "count")
        assert len(overlays) == 2
        # all six corners of the empty neuron's overlay collapse to its center
        pts = {tuple(p.split(",")) for p in overlays[1].get("points").split()}
        assert len(pts) == 1
        pts0 = {tuple(p.split(",")) for p in overlays[0].get("points").split()}
        assert len(pts0) == 6


class TestTrajectory:
    def test_polyline_visits_centers_in_order(self):
        doc = tiny_doc()
        root = parse(render_map_svg(doc, trajectory=["a", "c", "b", "d"]))
        line = [p for p in root.iter(f"{SVG_NS}polyline")
                if p.get("class") == "trajectory"]
        assert len(line) == 1
        points = line[0].get("points").split()
        assert len(points) == 4
        assert points[0] == points[2]  # a and b share neuron 0
        assert points[1] == points[3]
        stops = [c for c in root.iter(f"{SVG_NS}circle")
                 if c.get("class") == "trajectory-stop"]
        assert len(stops) == 4
        radii = [float(c.get("r")) for c in stops]
        assert radii == sorted(radii, reverse=True)

    def test_unknown_id_raises(self):
        with pytest.raises(ValueError, match="trajectory id"):
            render_map_svg(tiny_doc(), trajectory=["nope"])


class TestPanels:
    def test_per_variable_panels_with_glyphs(self):
        root = parse(render_map_svg(tiny_doc(), panels=True))
        # one cluster layer plus one panel (d = 1): four hexes total
        assert len(polys(root, "tile")) == 4
        glyphs = [r for r in root.iter(f"{SVG_NS}rect") if r.get("class") == "glyph"]
        assert len(glyphs) == 4  # 2 bins x 2 prototypes
