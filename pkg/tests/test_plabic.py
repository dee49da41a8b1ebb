import json

import pytest

from symplabic import fixtures as fx, linalg
from symplabic.errors import InvalidGraph, NonPlanarEmbedding, ProductNotOne, ZeroLambda
from symplabic.measure import meas, meas_faces
from symplabic.plabic import (
    BLACK,
    WHITE,
    FaceWeighting,
    PlabicGraph,
    concat,
    concat_graphs,
    edge_weights_from_faces,
    face_weights_of,
    find_perfect_orientation,
    from_json,
    gauge,
    identity_graph,
    isomorphism,
    nondegenerate,
    perfect_orientations,
    random_weighting,
    recolor,
    reflect,
    to_json,
)
from symplabic.scalar import Scalar, eval as eval_expr


def test_face_count_follows_euler(cycle_graph, ladder_graph, double_square_graph):
    for g in (cycle_graph, ladder_graph, double_square_graph):
        # planar map with the frame: V - E + F = 2, outer face excluded
        v = len(g.pos) + 4
        e = len(g.edges) + 2 * g.n + 4  # each side split into n + 1 pieces, plus top and bottom
        assert len(g.faces()) == e - v + 1


def test_cycle_face_weights_in_letters(cycle_graph):
    net = fx.cycle_network()
    fw = face_weights_of(net)
    lab = fx.labels(cycle_graph, fx.CYCLE_FACE_POINTS)
    env = {c: Scalar(i + 2) for i, c in enumerate("abcdefgh")}
    a, b, c, d, e, f, g, h = (env[x] for x in "abcdefgh")
    expected = {"y1": a * b * c, "y2": f * d / a, "y3": 1 / (d * b * e * g),
                "y4": e * h / c, "y5": g / (f * h)}
    for name, value in expected.items():
        assert eval_expr(fw[lab[name]], env) == value


def test_face_flags(orthogonal_square_graph):
    g = orthogonal_square_graph
    lab = fx.labels(g, fx.ORTHOGONAL_FACE_POINTS)
    assert g.top_face().id == lab["top"]
    assert g.bottom_face().id == lab["bottom"]
    assert g.face(lab["center"]).touches_midline
    assert g.face(lab["upper_left"]).region == "+"
    assert g.face(lab["lower_left"]).region == "-"


def test_gauge_keeps_face_weights_and_measurement(rng):
    net = fx.cycle_network({c: Scalar(i + 1) for i, c in enumerate("abcdefgh")})
    moved = gauge(gauge(net, "A", Scalar(3)), "D", Scalar(-2))
    assert face_weights_of(moved) == face_weights_of(net)
    assert meas(moved) == meas(net)
    with pytest.raises(ZeroLambda):
        gauge(net, "A", 0)


def test_edge_weights_from_faces_roundtrip(ladder_graph, rng):
    fw = random_weighting(ladder_graph, rng)
    net = edge_weights_from_faces(ladder_graph, fw)
    assert face_weights_of(net) == fw
    bad = FaceWeighting({f: Scalar(2) for f in ladder_graph.face_ids()}, "full")
    with pytest.raises(ProductNotOne):
        edge_weights_from_faces(ladder_graph, bad)


def test_crossing_edges_are_rejected():
    verts = {"s1": (0, 1, None), "s2": (0, 2, None), "t1": (1, 1, None), "t2": (1, 2, None)}
    with pytest.raises(NonPlanarEmbedding):
        PlabicGraph((0, 1, 0, 3), verts, ["s1", "s2"], ["t1", "t2"], [("s1", "t2"), ("s2", "t1")])


def test_boundary_vertices_must_be_univalent():
    verts = {"s1": (0, 1, None), "t1": (2, 1, None), "A": (1, 1, BLACK), "B": (1, 2, WHITE)}
    with pytest.raises(InvalidGraph):
        PlabicGraph((0, 2, 0, 3), verts, ["s1"], ["t1"], [("s1", "A"), ("A", "t1"), ("s1", "B"), ("B", "A")])


def test_straight_wires_count_as_connected():
    g = identity_graph(3)
    assert len(g.faces()) == 4
    assert nondegenerate(g)


def test_concatenated_bridges_give_the_square_graph(square_graph):
    g, *_ = concat_graphs(fx.raising_bridge(), fx.lowering_bridge())
    assert isomorphism(g, square_graph) is not None or isomorphism(g, recolor(square_graph)) is not None


def test_concat_of_weightings_multiplies_measurements(rng):
    g1, g2 = fx.raising_bridge(), fx.lowering_bridge()
    w1, w2 = random_weighting(g1, rng), random_weighting(g2, rng)
    g, w = concat(g1, w1, g2, w2)
    assert linalg.equal(meas_faces(g, w), linalg.matmul(meas_faces(g1, w1), meas_faces(g2, w2)))


def test_reflect_twice_is_identity(ladder_graph):
    twice = reflect(reflect(ladder_graph))
    assert twice.vertex_table() == ladder_graph.vertex_table()


def test_perfect_orientations_of_the_cycle_graph(cycle_graph):
    found = perfect_orientations(cycle_graph)
    assert found
    assert [True] * 8 in [list(o) for o in found]


def test_json_roundtrip(ladder_graph, rng):
    fw = random_weighting(ladder_graph, rng)
    net = edge_weights_from_faces(ladder_graph, fw)
    obj = json.loads(json.dumps(to_json(ladder_graph, net, fw)))
    g, net2, fw2 = from_json(obj)
    assert g.vertex_table() == ladder_graph.vertex_table()
    assert list(net2.weights) == list(net.weights)
    assert fw2 == fw


def test_bottleneck_column_is_degenerate():
    g = fx.elementary_column(3, 1, "bottleneck")
    assert find_perfect_orientation(g) is not None
    assert not nondegenerate(g)
    assert nondegenerate(fx.elementary_column(3, 2, "raise"))


def test_consecutive_bottlenecks_cannot_be_drawn_straight():
    b = fx.elementary_column(3, 1, "bottleneck")
    with pytest.raises(NonPlanarEmbedding):
        concat_graphs(b, b)
