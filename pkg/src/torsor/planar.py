"""Plane graphs as rotation systems, and the signature pair they induce.

A plane graph is a connected multigraph with a cyclic counterclockwise
order of edge ends around every vertex and a designated outer face.  The
induced circuit signature orients every simple cycle counterclockwise,
combinatorially: the side of the cycle without the outer face lies to the
left of the traversal.  The induced cocircuit signature orients every
minimal cut away from a designated root vertex: from the side containing
the root to the other side.  The resulting pair is acyclic (hence
triangulating); both facts are verified before the pair is returned.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .chains import SimpleChain
from .errors import Disconnected, InputFormatError, NotPlanarEmbedding
from .matroid import RegularMatroid
from .signatures import (
    CircuitSignature,
    CocircuitSignature,
    SignaturePair,
    is_acyclic,
)


class PlaneGraph:
    """A combinatorial plane embedding.

    edges: ordered dict name -> (tail, head).
    rotations: vertex -> counterclockwise list of half-edges (name, end),
    where end 0 is the tail end and end 1 the head end.
    """

    def __init__(self, edges, rotations, outer_face: Sequence[str], root: str):
        self.edges = dict(edges)
        self.rotations = {v: list(ends) for v, ends in rotations.items()}
        self.root = root
        if root not in self.rotations:
            raise InputFormatError("root vertex %r is not a vertex" % root)
        self._check_rotations()
        self._check_connected()
        self.faces = self._trace_faces()
        nv, ne, nf = len(self.rotations), len(self.edges), len(self.faces)
        if nv - ne + nf != 2:
            raise NotPlanarEmbedding(
                "Euler check failed: %d - %d + %d != 2" % (nv, ne, nf)
            )
        self.outer = self._match_face(outer_face)
        # the face to the left of each directed traversal (name, end-departed)
        self._left_face = {}
        for fid, face in enumerate(self.faces):
            for h in face:
                self._left_face[h] = fid

    def _check_rotations(self) -> None:
        seen = {}
        for v, ends in self.rotations.items():
            for name, end in ends:
                if name not in self.edges:
                    raise InputFormatError("rotation mentions unknown edge %r" % name)
                tail, head = self.edges[name]
                expect = tail if end == 0 else head
                if expect != v:
                    raise InputFormatError(
                        "edge end %s:%s listed at %r but belongs to %r"
                        % (name, "th"[end], v, expect)
                    )
                if (name, end) in seen:
                    raise InputFormatError("edge end %s:%s listed twice" % (name, "th"[end]))
                seen[(name, end)] = v
        for name in self.edges:
            for end in (0, 1):
                if (name, end) not in seen:
                    raise InputFormatError("edge end %s:%s missing from rotations" % (name, "th"[end]))
        self._vertex_of = seen

    def _check_connected(self) -> None:
        verts = list(self.rotations)
        adj = {v: set() for v in verts}
        for tail, head in self.edges.values():
            adj[tail].add(head)
            adj[head].add(tail)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(verts):
            raise Disconnected("graph is not connected")

    def _trace_faces(self) -> tuple:
        # next departure = rotation predecessor of the arrival end; with
        # counterclockwise rotations each face lies left of its traversal
        index = {}
        for v, ends in self.rotations.items():
            for i, h in enumerate(ends):
                index[h] = (v, i)
        faces = []
        visited = set()
        for start in sorted(index, key=lambda h: (h[0], h[1])):
            if start in visited:
                continue
            face = []
            h = start
            while True:
                face.append(h)
                visited.add(h)
                twin = (h[0], 1 - h[1])
                v, i = index[twin]
                rot = self.rotations[v]
                h = rot[(i - 1) % len(rot)]
                if h == start:
                    break
            faces.append(tuple(face))
        return tuple(faces)

    def _match_face(self, names: Sequence[str]) -> int:
        """Find the face with the given boundary edges.

        Entries are edge names, optionally signed ("+e" / "-e") to pin the
        traversal direction (+ means tail to head); signs disambiguate when
        two faces share the same boundary edge set.
        """
        plain = []
        signed = []
        for entry in names:
            entry = str(entry)
            if entry[0] in "+-":
                signed.append((entry[1:], 0 if entry[0] == "+" else 1))
                plain.append(entry[1:])
            else:
                plain.append(entry)
        want = sorted(plain)
        hits = []
        for fid, face in enumerate(self.faces):
            if sorted(h[0] for h in face) != want:
                continue
            if all(h in face for h in signed):
                hits.append(fid)
        if not hits:
            raise InputFormatError(
                "no face has boundary %r; faces: %r"
                % (list(names), [[h[0] for h in face] for face in self.faces])
            )
        if len(hits) > 1:
            raise InputFormatError(
                "outer face %r is ambiguous; sign an entry to pin the direction"
                % (list(names),)
            )
        return hits[0]

    def matroid(self, verify: str = "auto") -> RegularMatroid:
        triples = [(tail, head, name) for name, (tail, head) in self.edges.items()]
        return RegularMatroid.from_graph(triples, verify=verify)

    # -- the two orientation rules ------------------------------------------

    def counterclockwise_cycle(self, m: RegularMatroid, support: frozenset) -> SimpleChain:
        """Orient a cycle with its interior (the side without the outer
        face) on the left."""
        interior = self._interior_faces(support)
        coeffs = {}
        for name in support:
            left_of_forward = self._left_face[(name, 0)]
            left_of_backward = self._left_face[(name, 1)]
            fwd_in = left_of_forward in interior
            bwd_in = left_of_backward in interior
            if fwd_in == bwd_in:
                raise NotPlanarEmbedding(
                    "cycle %r does not separate the faces at %s" % (sorted(support), name)
                )
            coeffs[name] = 1 if fwd_in else -1
        chain = SimpleChain.from_dict(m.ground, coeffs)
        pair = m.circuit_pair(support)
        assert chain in pair, "cycle orientation is not a signed circuit"
        return chain

    def _interior_faces(self, support: frozenset) -> set:
        nfaces = len(self.faces)
        parent = list(range(nfaces))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for name in self.edges:
            if name in support:
                continue
            a = find(self._left_face[(name, 0)])
            b = find(self._left_face[(name, 1)])
            parent[a] = b
        sides = {}
        for fid in range(nfaces):
            sides.setdefault(find(fid), set()).add(fid)
        if len(sides) != 2:
            raise NotPlanarEmbedding(
                "cycle %r splits the sphere into %d parts" % (sorted(support), len(sides))
            )
        for group in sides.values():
            if self.outer not in group:
                return group
        raise AssertionError("unreachable")

    def cut_away_from_root(self, m: RegularMatroid, support: frozenset) -> SimpleChain:
        """Orient a minimal cut from the root's side to the other side."""
        verts = list(self.rotations)
        adj = {v: set() for v in verts}
        for name, (tail, head) in self.edges.items():
            if name in support:
                continue
            adj[tail].add(head)
            adj[head].add(tail)
        root_side = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in root_side:
                    root_side.add(w)
                    stack.append(w)
        coeffs = {}
        for name in support:
            tail, head = self.edges[name]
            if (tail in root_side) == (head in root_side):
                raise AssertionError("cut edge %s does not cross the partition" % name)
            coeffs[name] = 1 if tail in root_side else -1
        chain = SimpleChain.from_dict(m.ground, coeffs)
        pair = m.cocircuit_pair(support)
        assert chain in pair, "cut orientation is not a signed cocircuit"
        return chain


def planar_signature(pg: PlaneGraph, m: Optional[RegularMatroid] = None):
    """The signature pair of a plane graph: counterclockwise cycles and
    root-outward cuts.  Returns (matroid, pair); the pair is verified
    acyclic on both halves and flagged triangulating."""
    if m is None:
        m = pg.matroid()
    circ = CircuitSignature(
        m.ground,
        {supp: pg.counterclockwise_cycle(m, supp) for supp in m.circuit_supports()},
    )
    cocirc = CocircuitSignature(
        m.ground,
        {supp: pg.cut_away_from_root(m, supp) for supp in m.cocircuit_supports()},
    )
    ok_c, _ = is_acyclic(m, circ)
    ok_d, _ = is_acyclic(m, cocirc)
    assert ok_c and ok_d, "embedding-derived signatures must be acyclic"
    pair = SignaturePair(circ, cocirc)
    assert pair.is_triangulating(m)
    return m, pair


def parse_plane_graph(text: str) -> PlaneGraph:
    """JSON form: {"edges": {name: [tail, head]}, "vertices": {v: [ends]},
    "outer_face": [names], "root": v}.

    A rotation entry is an edge name, or "name:t" / "name:h" to pick the
    tail or head end explicitly (required for loops); a plain loop name may
    appear twice, first occurrence meaning the tail end.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError("bad JSON: %s" % exc)
    for key in ("edges", "vertices", "outer_face", "root"):
        if key not in data:
            raise InputFormatError("missing key %r" % key)
    edges = {}
    for name, pair in data["edges"].items():
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InputFormatError("edge %r needs [tail, head]" % name)
        edges[str(name)] = (str(pair[0]), str(pair[1]))
    rotations = {}
    for v, entries in data["vertices"].items():
        v = str(v)
        ends = []
        seen_plain: dict = {}
        for entry in entries:
            entry = str(entry)
            if ":" in entry:
                name, suffix = entry.rsplit(":", 1)
                if suffix == "t":
                    ends.append((name, 0))
                elif suffix == "h":
                    ends.append((name, 1))
                else:
                    raise InputFormatError("bad end suffix in %r" % entry)
            else:
                name = entry
                if name not in edges:
                    raise InputFormatError("unknown edge %r at vertex %r" % (name, v))
                tail, head = edges[name]
                if tail == head:
                    # loop: first plain mention is the tail end
                    end = seen_plain.get(name, 0)
                    seen_plain[name] = end + 1
                    ends.append((name, end))
                else:
                    if tail == v:
                        ends.append((name, 0))
                    elif head == v:
                        ends.append((name, 1))
                    else:
                        raise InputFormatError("edge %r is not incident to %r" % (name, v))
        rotations[v] = ends
    return PlaneGraph(edges, rotations, [str(x) for x in data["outer_face"]], str(data["root"]))
