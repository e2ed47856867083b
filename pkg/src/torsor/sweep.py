"""Exhaustive verification sweeps over small test matroids.

The test family is every connected loopless multigraph with up to a given
number of edges (deduplicated up to isomorphism) plus a fixed totally
unimodular realization of the rank-5 ten-element non-graphic regular
matroid.  For each matroid the driver checks the counting identities, and
for each triangulating signature pair (all of them, or all acyclic pairs
when the pair count blows the budget) the torsor, consistency, structure,
duality, signature-theory and oracle-equivalence properties.  Everything
is deterministic; there is no sampling anywhere.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bby import BBYInstance, verify_action_structure, verify_consistency, verify_duality
from .chains import Chain, SimpleChain
from .errors import BudgetExceeded
from .matroid import RegularMatroid
from .sandpile import classes as reversal_classes
from .sandpile import greedy_representative, group as sandpile_group
from .signatures import (
    CircuitSignature,
    CocircuitSignature,
    SignaturePair,
    basis_fourientation,
    contract_sig,
    delete_sig,
    enumerate_signatures,
    is_acyclic,
    is_triangulating,
)

# A totally unimodular signing of the standard binary representation
# [I5 | circulant(1,1,0,0,1)] of the ten-element regular matroid that is
# neither graphic nor cographic; 162 bases.
R10_ROWS = (
    (1, 0, 0, 0, 0, 1, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 1, 1, 1, 0, 0),
    (0, 0, 1, 0, 0, 0, 1, 1, 1, 0),
    (0, 0, 0, 1, 0, 0, 0, 1, 1, -1),
    (0, 0, 0, 0, 1, 1, 0, 0, -1, 1),
)


def r10_matroid() -> RegularMatroid:
    return RegularMatroid.from_matrix([list(r) for r in R10_ROWS], verify="minors")


def connected_multigraphs(max_edges: int, min_edges: int = 1) -> list:
    """All connected loopless multigraphs with min..max edges, one per
    isomorphism class, as edge lists (tail, head, name)."""
    out = []
    for m in range(min_edges, max_edges + 1):
        for n in range(2, m + 2):
            pairs = list(itertools.combinations(range(n), 2))
            seen = set()
            for combo in itertools.combinations_with_replacement(pairs, m):
                used = set()
                for u, v in combo:
                    used.add(u)
                    used.add(v)
                if len(used) != n:
                    continue
                if not _connected(n, combo):
                    continue
                canon = _canonical_form(n, combo)
                if canon in seen:
                    continue
                seen.add(canon)
                out.append(
                    tuple(("v%d" % u, "v%d" % v, "e%d" % k) for k, (u, v) in enumerate(combo))
                )
    return out


def _connected(n: int, edges) -> bool:
    adj = {i: set() for i in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def _canonical_form(n: int, edges) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        relabeled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or relabeled < best:
            best = relabeled
    return best


def generic_acyclic_pair(m: RegularMatroid) -> SignaturePair:
    """The acyclic pair cut out by the separator y = (1, 2, 4, ...).

    Distinct powers of two never cancel, so y is nonzero on every signed
    chain and picking the positive side of each pair is acyclic by
    construction.
    """
    y = [1 << i for i in range(len(m.ground))]

    def positive_side(chains):
        chosen = {}
        for c in chains[::2]:
            dot = sum(a * b for a, b in zip(y, c.coeffs))
            assert dot != 0
            pick = c if dot > 0 else -c
            chosen[pick.support()] = pick
        return chosen

    circ = CircuitSignature(m.ground, positive_side(m.signed_circuits()))
    cocirc = CocircuitSignature(m.ground, positive_side(m.signed_cocircuits()))
    return SignaturePair(circ, cocirc)


# -- per-instance checks -------------------------------------------------------


def check_counting(m: RegularMatroid) -> dict:
    """Bases, reversal classes and group order must agree."""
    nbases = len(m.bases())
    ncls = len(reversal_classes(m))
    order = sandpile_group(m).order
    return {
        "bases": nbases,
        "classes": ncls,
        "order": order,
        "ok": nbases == ncls == order,
    }


def check_torsor(inst: BBYInstance) -> list:
    """Simple transitivity: the action table is a Latin square and every
    ordered pair of bases is connected by exactly one group element."""
    violations = []
    bases = list(inst.m.bases())
    table = {}
    for g in inst.action.group.elements():
        row = [inst.act(g, b) for b in bases]
        if len(set(row)) != len(bases):
            violations.append(("torsor", "row of %r is not a permutation" % (g,)))
        table[g] = row
    for j in range(len(bases)):
        col = [table[g][j] for g in table]
        if len(set(col)) != len(bases):
            violations.append(("torsor", "column %d is not a permutation" % j))
    index = {b: i for i, b in enumerate(bases)}
    hits = {}
    for g, row in table.items():
        for i, b in enumerate(bases):
            key = (i, index[row[i]])
            hits[key] = hits.get(key, 0) + 1
    for key, cnt in hits.items():
        if cnt != 1:
            violations.append(("torsor", "ordered basis pair %r reached by %d elements" % (key, cnt)))
    # acting by two generators in either order must agree
    elems = inst.m.ground.elements
    if len(elems) >= 2:
        f, g_ = elems[0], elems[1]
        combined = SimpleChain.from_dict(inst.m.ground, {f: 1, g_: 1})
        for b in bases:
            one = inst.act_arc(g_, 1, inst.act_arc(f, 1, b))
            other = inst.act_arc(f, 1, inst.act_arc(g_, 1, b))
            if not (one == other == inst.act(combined, b)):
                violations.append(("torsor", "arc order changes the image of %r" % (sorted(b),)))
    return violations


def check_signature_theory(m: RegularMatroid, sigs, minor_budget: int) -> list:
    """Minor stability of the triangulating and acyclic verdicts, and the
    restriction identities of the basis fourientations."""
    violations = []
    loops = m.loops()
    coloops = m.coloops()
    for sig in sigs[:minor_budget]:
        acyclic_here = is_acyclic(m, sig)[0]
        triangulating_here = is_triangulating(m, sig)[0]
        for e in m.ground.elements:
            if e not in coloops:
                minor = m.delete(e)
                rsig = delete_sig(m, sig, e, minor)
                if acyclic_here and not is_acyclic(minor, rsig)[0]:
                    violations.append(("signature-minors", "deletion of %s broke acyclicity" % e))
                if triangulating_here and not is_triangulating(minor, rsig)[0]:
                    violations.append(
                        ("signature-minors", "deletion of %s broke triangulation" % e)
                    )
            if e not in loops:
                minor = m.contract(e)
                rsig = contract_sig(m, sig, e, minor)
                if acyclic_here and not is_acyclic(minor, rsig)[0]:
                    violations.append(
                        ("signature-minors", "contraction of %s broke acyclicity" % e)
                    )
                if triangulating_here and not is_triangulating(minor, rsig)[0]:
                    violations.append(
                        ("signature-minors", "contraction of %s broke triangulation" % e)
                    )
    return violations


def check_fourientation_restriction(m: RegularMatroid, sig) -> list:
    """F(B - e, sig/e) is F(B, sig) restricted, for e in B; F(B, sig\\e) is
    the restriction for e outside B."""
    violations = []
    loops = m.loops()
    coloops = m.coloops()
    for b in m.bases():
        full = basis_fourientation(m, b, sig)
        for e in m.ground.elements:
            if e in b and e not in loops:
                minor = m.contract(e)
                rsig = contract_sig(m, sig, e, minor)
                if basis_fourientation(minor, b - {e}, rsig) != full.restrict(e):
                    violations.append(
                        ("fourientation-minors", "contraction identity fails at (%r, %s)" % (sorted(b), e))
                    )
            elif e not in b and e not in coloops:
                minor = m.delete(e)
                rsig = delete_sig(m, sig, e, minor)
                if basis_fourientation(minor, b, rsig) != full.restrict(e):
                    violations.append(
                        ("fourientation-minors", "deletion identity fails at (%r, %s)" % (sorted(b), e))
                    )
    return violations


def check_oracles(inst: BBYInstance) -> list:
    """Greedy reduction agrees with the class scan on every orientation,
    and greedy decompositions re-sum with sign agreement."""
    violations = []
    m = inst.m
    n = len(m.ground)
    cls = inst.action.classes
    for mask in range(1 << n):
        o = cls.orientation_of(mask)
        want = inst.action.representative(o)
        got = greedy_representative(m, inst.pair, o)
        if want != got:
            violations.append(("oracle", "greedy disagrees on %r" % (o,)))
    cases = []
    circuits = m.signed_circuits()
    cocircuits = m.signed_cocircuits()
    for a, b in itertools.combinations(range(len(circuits)), 2):
        cases.append(("kernel", circuits[a] + circuits[b]))
    for a, b in itertools.combinations(range(len(cocircuits)), 2):
        cases.append(("rowspace", cocircuits[a] + cocircuits[b]))
    for c in circuits:
        cases.append(("kernel", 2 * c))
    for c in cocircuits:
        cases.append(("rowspace", 3 * c))
    for space, p in cases:
        parts = m.decompose(p, space)
        total = Chain(m.ground, [0] * n)
        for part in parts:
            total = total + part
            for e in part.support():
                if p[e] * part[e] <= 0:
                    violations.append(("oracle", "decompose sign disagreement at %s" % e))
        if total != p:
            violations.append(("oracle", "decompose parts do not re-sum"))
    return violations


# -- the driver -------------------------------------------------------------------


@dataclass
class InstanceRecord:
    label: str
    kind: str
    nelements: int
    nbases: int
    nclasses: int
    group_order: int
    filter_used: str = ""
    pairs_checked: int = 0
    triples_checked: int = 0
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "elements": self.nelements,
            "bases": self.nbases,
            "classes": self.nclasses,
            "group_order": self.group_order,
            "filter": self.filter_used,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "violations": [list(v) for v in self.violations],
        }


@dataclass
class SweepReport:
    max_edges: int
    instances: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "ok" if not self.violations() else "violation"

    def violations(self) -> list:
        out = []
        for rec in self.instances:
            for v in rec.violations:
                out.append((rec.label,) + tuple(v))
        return out

    def violations_for(self, criterion: str) -> list:
        return [v for v in self.violations() if v[1] == criterion]

    def pairs_checked(self) -> int:
        return sum(rec.pairs_checked for rec in self.instances)

    def to_json_dict(self) -> dict:
        # timing is kept on the objects only; report files must be
        # byte-identical across runs on the same inputs
        return {
            "status": self.status,
            "max_edges": self.max_edges,
            "instances": [rec.to_json_dict() for rec in self.instances],
            "pairs_checked": self.pairs_checked(),
            "violations": [list(v) for v in self.violations()],
        }


class _Deadline:
    def __init__(self, seconds: Optional[float]):
        self.t0 = time.monotonic()
        self.seconds = seconds

    def check(self) -> None:
        if self.seconds is not None and time.monotonic() - self.t0 > self.seconds:
            raise BudgetExceeded("time budget of %s seconds exhausted" % self.seconds)


def sweep_matroids(max_edges: int, include_r10: bool = True) -> list:
    """(label, kind, matroid) triples for the sweep family."""
    out = []
    for edges in connected_multigraphs(max_edges):
        label = "g%d-%s" % (
            len(edges),
            "_".join("%s%s" % (t[1:], h[1:]) for t, h, _ in edges),
        )
        out.append((label, "graph", RegularMatroid.from_graph(edges)))
    if include_r10:
        out.append(("r10", "matrix", r10_matroid()))
    return out


def verify_instance(
    inst: BBYInstance,
    checks: Sequence[str] = ("torsor", "consistency", "structure", "duality"),
):
    """All per-pair verdicts for one instance: (violations, triples checked)."""
    violations = []
    triples = 0
    if "torsor" in checks:
        violations.extend(check_torsor(inst))
    if "consistency" in checks:
        rep = verify_consistency(inst)
        triples = rep.triples_checked
        for v in rep.violations:
            violations.append(
                ("consistency-" + v["part"], "%s on %s at %s" % (v["arc"], v["basis"], v["element"]))
            )
    if "structure" in checks:
        ok, wits, _ = verify_action_structure(inst)
        for w in wits:
            violations.append(("structure", repr(w)))
    if "duality" in checks:
        ok, wits = verify_duality(inst)
        for w in wits:
            violations.append(("duality", repr(w)))
    return violations, triples


def run_sweep(
    max_edges: int = 5,
    include_r10: bool = True,
    pair_budget: int = 4096,
    signature_minor_budget: int = 1 << 12,
    time_budget: Optional[float] = None,
    checks: Sequence[str] = (
        "counting",
        "torsor",
        "consistency",
        "structure",
        "duality",
        "signatures",
        "oracles",
    ),
    r10_pair_checks: bool = False,
) -> SweepReport:
    """The full exhaustive verification sweep.

    Graph instances run every check over every triangulating pair (or over
    all acyclic pairs when 2^(circuits+cocircuits) exceeds pair_budget).
    The ten-element fixture runs the counting identities, plus the torsor
    checks on its generic acyclic pair when r10_pair_checks is set.
    """
    deadline = _Deadline(time_budget)
    report = SweepReport(max_edges=max_edges)
    t_start = time.monotonic()
    for label, kind, m in sweep_matroids(max_edges, include_r10):
        deadline.check()
        t0 = time.monotonic()
        rec = InstanceRecord(
            label=label,
            kind=kind,
            nelements=len(m.ground),
            nbases=len(m.bases()),
            nclasses=0,
            group_order=0,
        )
        if "counting" in checks:
            counting = check_counting(m)
            rec.nclasses = counting["classes"]
            rec.group_order = counting["order"]
            if not counting["ok"]:
                rec.violations.append(("counting", repr(counting)))
        is_r10 = label == "r10"
        run_pairs = (not is_r10) or r10_pair_checks
        if run_pairs:
            if is_r10:
                rec.filter_used = "generic"
                pairs = [generic_acyclic_pair(m)]
            else:
                nsupports = len(m.circuit_supports()) + len(m.cocircuit_supports())
                side_filter = "triangulating" if (1 << nsupports) <= pair_budget else "acyclic"
                rec.filter_used = side_filter
                circ_sigs = list(enumerate_signatures(m, "circuit", side_filter))
                cocirc_sigs = list(enumerate_signatures(m, "cocircuit", side_filter))
                pairs = []
                for c in circ_sigs:
                    for d in cocirc_sigs:
                        p = SignaturePair(c, d)
                        if side_filter == "triangulating":
                            p._triangulating = True
                        pairs.append(p)
            pair_checks = tuple(
                c for c in checks if c in ("torsor", "consistency", "structure", "duality")
            )
            for pair in pairs:
                deadline.check()
                inst = BBYInstance(m, pair)
                vio, triples = verify_instance(inst, pair_checks)
                rec.violations.extend(vio)
                rec.triples_checked += triples
                rec.pairs_checked += 1
            if "oracles" in checks and pairs:
                rec.violations.extend(check_oracles(BBYInstance(m, pairs[0])))
        if "signatures" in checks and not is_r10:
            for kind_name in ("circuit", "cocircuit"):
                enumerated = list(enumerate_signatures(m, kind_name, "all"))
                acyclic = [s for s in enumerated if is_acyclic(m, s)[0]]
                for s in acyclic:
                    if not is_triangulating(m, s)[0]:
                        rec.violations.append(
                            (
                                "acyclic-triangulating",
                                "acyclic %s signature fails triangulation" % kind_name,
                            )
                        )
                rec.violations.extend(
                    check_signature_theory(m, enumerated, signature_minor_budget)
                )
                for s in enumerated[:4]:
                    rec.violations.extend(check_fourientation_restriction(m, s))
        rec.elapsed = time.monotonic() - t0
        report.instances.append(rec)
    report.elapsed = time.monotonic() - t_start
    return report
