"""The basis-orientation bijection, its torsor, and the verifiers.

A triangulating pair maps each basis B to the orientation
meet(F(B, circuit sig), F(B, cocircuit sig)); the images are exactly the
compatible representatives, so conjugating the canonical action through
the map gives a simply transitive action on bases.  The verifiers then
check, exhaustively over a chosen scope, that arc actions descend to
deletions and contractions, agree with the dual instance, decompose into
the three-step trace shape, and never move bases in other components.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .chains import Chain, Orientation, SimpleChain, format_orientation
from .errors import BudgetExceeded, NotABasis, NotCompatibleOrientation
from .matroid import RegularMatroid, format_matrix_file
from .sandpile import CanonicalAction
from .signatures import (
    CocircuitSignature,
    CircuitSignature,
    SignaturePair,
    contract_pair,
    delete_pair,
    format_signature_file,
)


class BBYInstance:
    """A matroid with a triangulating pair and the induced basis torsor."""

    def __init__(self, m: RegularMatroid, pair: SignaturePair, budget: int = 1 << 20):
        self.m = m
        self.pair = pair
        self.action = CanonicalAction(m, pair, budget)
        self.forward = {}
        self.backward = {}
        for b in m.bases():
            o = self.map(b)
            assert self.action.is_representative(o), (
                "image of %r is not a compatible representative" % (sorted(b),)
            )
            assert o not in self.backward, "map is not injective at %r" % (sorted(b),)
            self.forward[b] = o
            self.backward[o] = b
        reps = set(self.action.representatives())
        assert set(self.backward) == reps, "image does not exhaust the representatives"

    # -- the bijection -------------------------------------------------------

    def map(self, basis: frozenset) -> Orientation:
        """meet of the two basis fourientations; a total orientation."""
        basis = frozenset(basis)
        if basis in self.forward:
            return self.forward[basis]
        from .signatures import basis_fourientation

        f1 = basis_fourientation(self.m, basis, self.pair.circuit)
        f2 = basis_fourientation(self.m, basis, self.pair.cocircuit)
        return f1.meet(f2).to_orientation()

    def inverse(self, o: Orientation) -> frozenset:
        try:
            return self.backward[o]
        except KeyError:
            raise NotCompatibleOrientation(format_orientation(o))

    # -- the torsor ------------------------------------------------------------

    def act(self, s, basis: frozenset) -> frozenset:
        """The torsor: push the basis through the bijection, act, pull back."""
        basis = frozenset(basis)
        if basis not in self.forward:
            raise NotABasis(sorted(basis))
        return self.inverse(self.action.act(s, self.forward[basis]))

    def act_arc(self, e: str, sign: int, basis: frozenset) -> frozenset:
        return self.act(SimpleChain.arc(self.m.ground, e, sign), basis)

    def signed_arcs(self) -> tuple:
        return tuple((e, s) for e in self.m.ground.elements for s in (1, -1))

    def matroid_hash(self) -> str:
        return hashlib.sha256(format_matrix_file(self.m).encode()).hexdigest()[:16]

    def signature_hash(self) -> str:
        text = format_signature_file(self.pair.circuit, self.pair.cocircuit)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class ConsistencyReport:
    """Outcome of a consistency sweep; violations carry replay data."""

    matroid_hash: str
    signature_hash: str
    matrix_text: str
    signature_text: str
    triples_checked: int = 0
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "ok" if not self.violations else "violation"

    def add_violation(self, part: str, arc, basis, element, detail: str) -> None:
        self.violations.append(
            {
                "part": part,
                "arc": ("+" if arc[1] > 0 else "-") + arc[0],
                "basis": ",".join(sorted(basis)),
                "element": element,
                "detail": detail,
                "matrix": self.matrix_text,
                "signature": self.signature_text,
            }
        )

    def to_json_dict(self) -> dict:
        # timing stays off the serialized report: identical inputs must
        # produce byte-identical report files
        return {
            "status": self.status,
            "matroid_hash": self.matroid_hash,
            "signature_hash": self.signature_hash,
            "triples_checked": self.triples_checked,
            "counts": dict(self.counts),
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def _new_report(inst: BBYInstance) -> ConsistencyReport:
    return ConsistencyReport(
        matroid_hash=inst.matroid_hash(),
        signature_hash=inst.signature_hash(),
        matrix_text=format_matrix_file(inst.m),
        signature_text=format_signature_file(inst.pair.circuit, inst.pair.cocircuit),
    )


class _MinorCache:
    """Fresh instances for M delete e and M contract e, built on demand."""

    def __init__(self, inst: BBYInstance):
        self.inst = inst
        self._cache: dict = {}

    def deletion(self, e: str) -> BBYInstance:
        key = ("del", e)
        if key not in self._cache:
            minor = self.inst.m.delete(e)
            self._cache[key] = BBYInstance(
                minor, delete_pair(self.inst.m, self.inst.pair, e, minor)
            )
        return self._cache[key]

    def contraction(self, e: str) -> BBYInstance:
        key = ("con", e)
        if key not in self._cache:
            minor = self.inst.m.contract(e)
            self._cache[key] = BBYInstance(
                minor, contract_pair(self.inst.m, self.inst.pair, e, minor)
            )
        return self._cache[key]


def bby_map(inst: BBYInstance, basis: frozenset) -> Orientation:
    return inst.map(basis)


def bby_inverse(inst: BBYInstance, o: Orientation) -> frozenset:
    return inst.inverse(o)


def bby_act(inst: BBYInstance, s, basis: frozenset) -> frozenset:
    return inst.act(s, basis)


def verify_consistency(
    inst: BBYInstance,
    arcs: Optional[Sequence] = None,
    bases: Optional[Sequence] = None,
    elements: Optional[Sequence[str]] = None,
) -> ConsistencyReport:
    """Exhaustively check that arc actions descend to minors.

    For every arc f and basis B1 with B2 = [f].B1:

    * deletion: for e outside both bases (e != f), the arc sends B1 to B2
      in the instance on (M delete e, restricted pair);
    * contraction: for e inside both bases (e != f), the arc sends B1 - e
      to B2 - e in the instance on (M contract e, restricted pair);
    * separation: every e in a different connected component of f lies in
      B1 iff it lies in B2.

    The minor checks are phrased both through orientations (act on the
    minor's image orientation) and through the minor torsor (act on the
    basis); the two verdicts are compared and must agree.
    """
    report = _new_report(inst)
    t0 = time.monotonic()
    minors = _MinorCache(inst)
    m = inst.m
    comp_of = {}
    for comp in m.components():
        for x in comp:
            comp_of[x] = comp
    arc_list = list(arcs) if arcs is not None else list(inst.signed_arcs())
    basis_list = [frozenset(b) for b in bases] if bases is not None else list(m.bases())
    counts = {"deletion": 0, "contraction": 0, "separation": 0}
    for e, sign in arc_list:
        for b1 in basis_list:
            b2 = inst.act_arc(e, sign, b1)
            for x in m.ground.elements:
                if x == e or (elements is not None and x not in elements):
                    continue
                if x not in comp_of[e]:
                    counts["separation"] += 1
                    report.triples_checked += 1
                    if (x in b1) != (x in b2):
                        report.add_violation(
                            "separation", (e, sign), b1, x,
                            "basis changed at %s outside the component of %s" % (x, e),
                        )
                if x not in b1 and x not in b2:
                    counts["deletion"] += 1
                    report.triples_checked += 1
                    sub = minors.deletion(x)
                    got = sub.act_arc(e, sign, b1)
                    ok_torsor = got == b2
                    o2 = sub.action.act(
                        SimpleChain.arc(sub.m.ground, e, sign), sub.map(b1)
                    )
                    ok_orient = o2 == sub.map(b2)
                    if ok_torsor != ok_orient:
                        report.add_violation(
                            "phrasing", (e, sign), b1, x,
                            "orientation and torsor phrasings disagree",
                        )
                    if not ok_torsor:
                        report.add_violation(
                            "deletion", (e, sign), b1, x,
                            "minor image %s != %s" % (sorted(got), sorted(b2)),
                        )
                elif x in b1 and x in b2 and x != e:
                    counts["contraction"] += 1
                    report.triples_checked += 1
                    sub = minors.contraction(x)
                    got = sub.act_arc(e, sign, b1 - {x})
                    ok_torsor = got == b2 - {x}
                    o2 = sub.action.act(
                        SimpleChain.arc(sub.m.ground, e, sign), sub.map(b1 - {x})
                    )
                    ok_orient = o2 == sub.map(b2 - {x})
                    if ok_torsor != ok_orient:
                        report.add_violation(
                            "phrasing", (e, sign), b1, x,
                            "orientation and torsor phrasings disagree",
                        )
                    if not ok_torsor:
                        report.add_violation(
                            "contraction", (e, sign), b1, x,
                            "minor image %s != %s" % (sorted(got), sorted(b2 - {x})),
                        )
    report.counts = counts
    report.elapsed = time.monotonic() - t0
    return report


def verify_duality(inst: BBYInstance):
    """Pointwise equality with the dual instance plus torsor agreement.

    Builds (dual matroid, swapped pair) and checks that complementary bases
    map to the same orientation, and that every arc action carries over to
    complements.  Returns (ok, witnesses).
    """
    m = inst.m
    dual = m.dual()
    dual_pair = SignaturePair(
        CircuitSignature.from_chains(dual, inst.pair.cocircuit.chains()),
        CocircuitSignature.from_chains(dual, inst.pair.circuit.chains()),
    )
    dual_inst = BBYInstance(dual, dual_pair)
    witnesses = []
    universe = set(m.ground.elements)
    for b in m.bases():
        if inst.map(b) != dual_inst.map(frozenset(universe - b)):
            witnesses.append(("map", sorted(b)))
    for e, sign in inst.signed_arcs():
        for b1 in m.bases():
            b2 = inst.act_arc(e, sign, b1)
            dual_b2 = dual_inst.act_arc(e, sign, frozenset(universe - b1))
            if dual_b2 != universe - b2:
                witnesses.append(("torsor", ("+" if sign > 0 else "-") + e, sorted(b1)))
    return (not witnesses, witnesses)


def verify_action_structure(inst: BBYInstance):
    """Build the three-step trace for every (arc, basis) and check its shape.

    The trace construction itself enforces the four structural conditions
    (reversal-iff-compatible on both ends, mixed kinds, the two-element
    intersection identity); on top, whenever a circuit is reversed the
    circuit must avoid elements outside both bases (except the arc's own
    element).  Returns (ok, witnesses, traces).
    """
    witnesses = []
    traces = []
    for e, sign in inst.signed_arcs():
        for b1 in inst.m.bases():
            o1 = inst.map(b1)
            try:
                t = inst.action.trace_arc(e, sign, o1)
            except AssertionError as exc:
                witnesses.append(("trace", ("+" if sign > 0 else "-") + e, sorted(b1), str(exc)))
                continue
            traces.append(t)
            b2 = inst.inverse(t.end)
            circ = None
            if t.pre is None and t.post is not None and t.post[0] == "circuit":
                circ = t.post[1]
            elif t.pre is not None and t.pre[0] == "circuit" and t.post is not None:
                circ = t.pre[1]
            if circ is not None:
                outside = (circ.support() - {e}) - b1 - b2
                if outside:
                    witnesses.append(
                        (
                            "circuit-outside-bases",
                            ("+" if sign > 0 else "-") + e,
                            sorted(b1),
                            sorted(outside),
                        )
                    )
    return (not witnesses, witnesses, traces)


def check_generating_pairs(
    inst: BBYInstance,
    pairs: Iterable,
    budget: int = 1 << 22,
) -> bool:
    """Whether the given (group element, basis) pairs generate the torsor.

    From any start basis, chained moves through pairs must realize every
    group element as an accumulated sum.  Decided by BFS over accumulated
    sums per start basis.
    """
    m = inst.m
    group = inst.action.group
    if group.order * len(m.bases()) > budget:
        raise BudgetExceeded("state space %d exceeds budget" % (group.order * len(m.bases())))
    moves: dict = {}
    for s, b in pairs:
        moves.setdefault(frozenset(b), []).append(s)
    all_elements = set(group.elements())
    for start in m.bases():
        seen = {group.identity()}
        frontier = [(group.identity(), start)]
        while frontier:
            acc, cur = frontier.pop()
            for s in moves.get(cur, ()):
                nxt = acc + s
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append((nxt, inst.act(s, cur)))
        if seen != all_elements:
            return False
    return True


def single_swap_pairs(inst: BBYInstance) -> list:
    """The (group element, basis) pairs whose action changes one element."""
    out = []
    for g in inst.action.group.elements():
        if g.is_identity():
            continue
        for b in inst.m.bases():
            image = inst.act(g, b)
            if len(b ^ image) == 2:
                out.append((g, b))
    return out
