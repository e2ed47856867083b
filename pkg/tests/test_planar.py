import json

import pytest

from torsor.chains import format_signed_chain
from torsor.errors import Disconnected, InputFormatError, NotPlanarEmbedding
from torsor.planar import parse_plane_graph, planar_signature
from torsor.signatures import is_acyclic

from conftest import FIG1_EMBEDDING, SIGMA_CHAINS, SIGMA_STAR_CHAINS

TRIANGLE = """
{
  "edges": {"a": ["u","v"], "b": ["v","w"], "c": ["u","w"]},
  "vertices": {"u": ["a","c"], "v": ["b","a"], "w": ["c","b"]},
  "outer_face": ["-a","b","c"],
  "root": "u"
}
"""

PARALLEL = """
{
  "edges": {"e0": ["u","v"], "e1": ["u","v"]},
  "vertices": {"u": ["e0","e1"], "v": ["e0","e1"]},
  "outer_face": ["+e0","-e1"],
  "root": "u"
}
"""


class TestFaceTracing:
    def test_fig1_faces(self):
        pg = parse_plane_graph(FIG1_EMBEDDING)
        boundaries = sorted(sorted(h[0] for h in face) for face in pg.faces)
        assert boundaries == [["f1", "f2", "f3"], ["f1", "f2", "f4"], ["f3", "f4"]]

    def test_euler_check(self):
        # crossing rotation at v3 yields a non-planar face count
        data = json.loads(FIG1_EMBEDDING)
        data["vertices"]["v3"] = ["f3", "f2", "f4"]
        data["outer_face"] = ["f1", "f2", "f4"]
        with pytest.raises((NotPlanarEmbedding, InputFormatError)):
            parse_plane_graph(json.dumps(data))

    def test_disconnected(self):
        text = """
        {
          "edges": {"a": ["u","v"], "b": ["x","y"]},
          "vertices": {"u": ["a"], "v": ["a"], "x": ["b"], "y": ["b"]},
          "outer_face": ["a","a","b","b"],
          "root": "u"
        }
        """
        with pytest.raises(Disconnected):
            parse_plane_graph(text)

    def test_ambiguous_outer_face_needs_signs(self):
        text = TRIANGLE.replace('["-a","b","c"]', '["a","b","c"]')
        with pytest.raises(InputFormatError):
            parse_plane_graph(text)

    def test_unknown_edge_in_rotation(self):
        data = json.loads(FIG1_EMBEDDING)
        data["vertices"]["v2"] = ["f1", "zzz"]
        with pytest.raises(InputFormatError):
            parse_plane_graph(json.dumps(data))

    def test_missing_key(self):
        with pytest.raises(InputFormatError):
            parse_plane_graph('{"edges": {}}')


class TestPlanarSignature:
    def test_fig1_reproduces_the_example_pair(self, fig1_pair):
        pg = parse_plane_graph(FIG1_EMBEDDING)
        m, pair = planar_signature(pg)
        assert [format_signed_chain(c) for c in pair.circuit.chains()] == SIGMA_CHAINS
        assert sorted(format_signed_chain(c) for c in pair.cocircuit.chains()) == sorted(
            SIGMA_STAR_CHAINS
        )
        assert pair == fig1_pair

    def test_fig1_pair_verified_acyclic_and_triangulating(self):
        pg = parse_plane_graph(FIG1_EMBEDDING)
        m, pair = planar_signature(pg)
        assert is_acyclic(m, pair.circuit)[0]
        assert is_acyclic(m, pair.cocircuit)[0]
        assert pair.is_triangulating(m)

    def test_triangle(self):
        m, pair = planar_signature(parse_plane_graph(TRIANGLE))
        assert [format_signed_chain(c) for c in pair.circuit.chains()] == ["+a+b-c"]
        assert sorted(format_signed_chain(c) for c in pair.cocircuit.chains()) == [
            "+a+c",
            "+a-b",
            "+b+c",
        ]

    def test_two_parallel_edges(self):
        m, pair = planar_signature(parse_plane_graph(PARALLEL))
        assert [format_signed_chain(c) for c in pair.circuit.chains()] == ["-e0+e1"]
        assert [format_signed_chain(c) for c in pair.cocircuit.chains()] == ["+e0+e1"]
        assert pair.is_triangulating(m)

    def test_loop_edge(self):
        text = """
        {
          "edges": {"l": ["u","u"], "e": ["u","v"]},
          "vertices": {"u": ["l:t","l:h","e"], "v": ["e"]},
          "outer_face": ["l","e","e"],
          "root": "v"
        }
        """
        m, pair = planar_signature(parse_plane_graph(text))
        assert frozenset({"l"}) in m.circuit_supports()
        assert len(pair.circuit) == 1

    def test_root_changes_cut_orientations(self):
        pg_u = parse_plane_graph(TRIANGLE)
        pg_w = parse_plane_graph(TRIANGLE.replace('"root": "u"', '"root": "w"'))
        _, pair_u = planar_signature(pg_u)
        _, pair_w = planar_signature(pg_w)
        assert pair_u.circuit == pair_w.circuit
        assert pair_u.cocircuit != pair_w.cocircuit

    def test_torsor_does_not_depend_on_the_root(self):
        # the cut orientations move with the root but the induced action on
        # spanning trees does not (the plane-graph torsor is root-free)
        from torsor.bby import BBYInstance

        tables = []
        for root in ("v1", "v2", "v3"):
            text = FIG1_EMBEDDING.replace('"root": "v1"', '"root": "%s"' % root)
            m, pair = planar_signature(parse_plane_graph(text))
            inst = BBYInstance(m, pair)
            table = {
                (e, s, b): inst.act_arc(e, s, b)
                for e in m.ground.elements
                for s in (1, -1)
                for b in m.bases()
            }
            tables.append(table)
        assert tables[0] == tables[1] == tables[2]

    def test_bridge_is_walked_twice_by_its_face(self):
        # triangle with a pendant edge: the outer face traverses the bridge
        # in both directions
        text = """
        {
          "edges": {"a": ["u","v"], "b": ["v","w"], "c": ["u","w"], "p": ["w","x"]},
          "vertices": {"u": ["a","c"], "v": ["b","a"], "w": ["c","p","b"], "x": ["p"]},
          "outer_face": ["a","b","p","p","c"],
          "root": "u"
        }
        """
        pg = parse_plane_graph(text)
        outer = [h[0] for h in pg.faces[pg.outer]]
        assert outer.count("p") == 2
        m, pair = planar_signature(pg)
        # with the pendant face designated outer, the triangle's interior is
        # the bare face on the other side
        assert [format_signed_chain(c) for c in pair.circuit.chains()] == ["-a-b+c"]
        assert pair.cocircuit.chain(frozenset({"p"}))["p"] == 1  # away from u
        assert pair.is_triangulating(m)
