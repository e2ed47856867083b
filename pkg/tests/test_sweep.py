import itertools

import pytest

from torsor.bby import BBYInstance
from torsor.errors import BudgetExceeded
from torsor.matroid import RegularMatroid
from torsor.signatures import is_acyclic
from torsor.sweep import (
    R10_ROWS,
    check_counting,
    connected_multigraphs,
    generic_acyclic_pair,
    r10_matroid,
    run_sweep,
    sweep_matroids,
)


class TestMultigraphEnumeration:
    def test_counts_by_edges(self):
        graphs = connected_multigraphs(5)
        by_edges = {}
        for g in graphs:
            by_edges[len(g)] = by_edges.get(len(g), 0) + 1
        assert by_edges == {1: 1, 2: 2, 3: 5, 4: 12, 5: 33}

    def test_no_isomorphic_duplicates_at_three_edges(self):
        graphs = [g for g in connected_multigraphs(3) if len(g) == 3]

        def canon(edges):
            verts = sorted({v for t, h, _ in edges for v in (t, h)})
            best = None
            for perm in itertools.permutations(verts):
                relabel = dict(zip(verts, perm))
                sig = tuple(sorted(tuple(sorted((relabel[t], relabel[h]))) for t, h, _ in edges))
                if best is None or sig < best:
                    best = sig
            return best

        forms = [canon(g) for g in graphs]
        assert len(set(forms)) == len(forms)

    def test_all_connected_and_loopless(self):
        for edges in connected_multigraphs(4):
            m = RegularMatroid.from_graph(edges)
            assert not m.loops()
            # graph connectivity: one matroid component per 2-edge-connected
            # piece, but the vertex graph itself is connected by design
            verts = {v for t, h, _ in edges for v in (t, h)}
            adj = {v: set() for v in verts}
            for t, h, _ in edges:
                adj[t].add(h)
                adj[h].add(t)
            seen = {next(iter(verts))}
            stack = list(seen)
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            assert seen == verts


class TestR10:
    def test_matrix_is_totally_unimodular(self):
        m = r10_matroid()  # construction verifies all square minors
        assert m.rank == 5

    def test_binary_support_is_the_standard_one(self):
        for i in range(5):
            for j in range(5):
                expect = 1 if j in (i, (i + 1) % 5, (i + 4) % 5) else 0
                assert abs(R10_ROWS[i][5 + j]) == expect

    def test_counting_identities(self):
        c = check_counting(r10_matroid())
        assert c["ok"] and c["bases"] == 162

    def test_self_dual_counts(self):
        m = r10_matroid()
        assert len(m.circuit_supports()) == len(m.cocircuit_supports()) == 30

    def test_generic_pair_gives_a_torsor(self):
        m = r10_matroid()
        pair = generic_acyclic_pair(m)
        assert is_acyclic(m, pair.circuit)[0]
        assert is_acyclic(m, pair.cocircuit)[0]
        inst = BBYInstance(m, pair)  # asserts bijectivity onto representatives
        b = next(iter(m.bases()))
        image = inst.act_arc("e0", 1, b)
        assert image in m.basis_set()
        back = inst.act_arc("e0", -1, image)
        assert back == b


class TestGenericPair:
    def test_acyclic_on_every_small_matroid(self):
        for label, kind, m in sweep_matroids(3, include_r10=False):
            pair = generic_acyclic_pair(m)
            assert is_acyclic(m, pair.circuit)[0]
            assert is_acyclic(m, pair.cocircuit)[0]
            assert pair.is_triangulating(m)


class TestRunSweep:
    def test_small_sweep_clean(self):
        rep = run_sweep(max_edges=3, include_r10=False)
        assert rep.status == "ok"
        assert rep.violations() == []
        assert len(rep.instances) == 8
        assert rep.pairs_checked() == 58

    def test_acyclic_fallback_fires_under_a_tiny_budget(self):
        rep = run_sweep(
            max_edges=2,
            include_r10=False,
            pair_budget=2,
            checks=("counting", "torsor"),
        )
        assert rep.status == "ok"
        used = {r.filter_used for r in rep.instances}
        # instances above the pair budget fall back to acyclic enumeration
        assert "acyclic" in used
        assert used <= {"acyclic", "triangulating"}

    def test_time_budget(self):
        with pytest.raises(BudgetExceeded):
            run_sweep(max_edges=4, include_r10=False, time_budget=0.0)

    def test_report_serialization(self):
        rep = run_sweep(max_edges=2, include_r10=False, checks=("counting",))
        data = rep.to_json_dict()
        assert data["status"] == "ok"
        assert len(data["instances"]) == 3
        assert all("label" in r for r in data["instances"])
