"""The sandpile group, reversal classes and the canonical action.

The group is Z^E modulo the lattice spanned by all signed circuits and
signed cocircuits, presented by exact Smith normal form; its order equals
the number of bases.  Orientations fall into circuit-cocircuit reversal
classes (as many as bases); with a triangulating signature pair attached,
each class holds a unique compatible representative and the group acts
simply transitively by flipping single elements inside classes.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Optional, Sequence

from . import intlinalg
from .chains import Chain, Orientation, SimpleChain, compatible
from .errors import BudgetExceeded, NotCompatibleOrientation, NotTriangulating
from .matroid import RegularMatroid
from .signatures import SignaturePair

DEFAULT_ORIENTATION_BUDGET = 1 << 20


class GroupElement:
    """A sandpile group element in canonical coordinates.

    coords[i] lives modulo factors[i]; only nontrivial invariant factors
    are kept.
    """

    __slots__ = ("coords", "factors")

    def __init__(self, coords: Sequence[int], factors: Sequence[int]):
        self.factors = tuple(factors)
        self.coords = tuple(c % f for c, f in zip(coords, self.factors))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.factors != other.factors:
            raise ValueError("elements of different groups")
        return GroupElement([a + b for a, b in zip(self.coords, other.coords)], self.factors)

    def __neg__(self) -> "GroupElement":
        return GroupElement([-c for c in self.coords], self.factors)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.factors == other.factors
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.coords, self.factors))

    def __repr__(self) -> str:
        return "GroupElement(%s)" % ",".join(map(str, self.coords))


class SandpileGroup:
    """Invariant-factor presentation of Z^E / (circuit + cocircuit lattice)."""

    def __init__(self, m: RegularMatroid):
        self.m = m
        n = len(m.ground)
        rows = [c.coeffs for c in m.signed_circuits()[::2]]
        rows += [c.coeffs for c in m.signed_cocircuits()[::2]]
        diag, V, Vinv = intlinalg.smith_normal_form(rows, n)
        assert all(d >= 1 for d in diag), "flow + dual-flow lattice must have full rank"
        self.diag = tuple(diag)
        self._V = V
        self._Vinv = Vinv
        self.invariant_factors = tuple(d for d in diag if d > 1)
        self._nontrivial = [i for i, d in enumerate(diag) if d > 1]
        self.order = 1
        for d in diag:
            self.order *= d
        nbases = len(m.bases())
        assert self.order == nbases, (
            "group order %d != %d bases" % (self.order, nbases)
        )

    def reduce(self, chain: Chain) -> GroupElement:
        """Canonical coordinates of the class of an integer chain."""
        z = chain.coeffs
        n = len(z)
        y = [sum(z[k] * self._V[k][j] for k in range(n)) for j in self._nontrivial]
        return GroupElement(y, self.invariant_factors)

    def identity(self) -> GroupElement:
        return GroupElement([0] * len(self.invariant_factors), self.invariant_factors)

    def arc_class(self, e: str, sign: int = 1) -> GroupElement:
        return self.reduce(SimpleChain.arc(self.m.ground, e, sign))

    def chain_for(self, g: GroupElement) -> Chain:
        """An integer chain representing the class g."""
        n = len(self.m.ground)
        y = [0] * n
        for pos, c in zip(self._nontrivial, g.coords):
            y[pos] = c
        z = [sum(y[k] * self._Vinv[k][j] for k in range(n)) for j in range(n)]
        return Chain(self.m.ground, z)

    def elements(self):
        """All group elements, in lexicographic coordinate order."""
        import itertools

        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(coords, self.invariant_factors)


class ReversalClasses:
    """The partition of all 2^|E| orientations into reversal classes.

    Orientations are bitmasks (bit i set means sign + at element i); the
    classes are materialized by BFS over single compatible circuit or
    cocircuit reversals.
    """

    def __init__(self, m: RegularMatroid, budget: int = DEFAULT_ORIENTATION_BUDGET):
        self.m = m
        n = len(m.ground)
        if 1 << n > budget:
            raise BudgetExceeded("2^%d orientations exceed budget %d" % (n, budget))
        moves = []
        for c in list(m.signed_circuits()) + list(m.signed_cocircuits()):
            pos = 0
            neg = 0
            for i, v in enumerate(c.coeffs):
                if v > 0:
                    pos |= 1 << i
                elif v < 0:
                    neg |= 1 << i
            moves.append((pos, neg, pos | neg))
        self._moves = moves
        class_of = [-1] * (1 << n)
        members: list = []
        for start in range(1 << n):
            if class_of[start] != -1:
                continue
            cid = len(members)
            queue = [start]
            class_of[start] = cid
            seen = [start]
            while queue:
                o = queue.pop()
                for pos, neg, full in moves:
                    if (pos & ~o) == 0 and (neg & o) == 0:
                        nxt = o ^ full
                        if class_of[nxt] == -1:
                            class_of[nxt] = cid
                            queue.append(nxt)
                            seen.append(nxt)
            members.append(tuple(sorted(seen)))
        self.class_of_mask = class_of
        self.members = tuple(members)

    def __len__(self) -> int:
        return len(self.members)

    def mask_of(self, o: Orientation) -> int:
        mask = 0
        for i, s in enumerate(o.signs):
            if s > 0:
                mask |= 1 << i
        return mask

    def orientation_of(self, mask: int) -> Orientation:
        n = len(self.m.ground)
        return Orientation(self.m.ground, [1 if (mask >> i) & 1 else -1 for i in range(n)])

    def class_of(self, o: Orientation) -> int:
        return self.class_of_mask[self.mask_of(o)]

    def class_members(self, cid: int) -> tuple:
        return self.members[cid]


_GROUP_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()
_CLASSES_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def group(m: RegularMatroid) -> SandpileGroup:
    if m not in _GROUP_CACHE:
        _GROUP_CACHE[m] = SandpileGroup(m)
    return _GROUP_CACHE[m]


def classes(m: RegularMatroid, budget: int = DEFAULT_ORIENTATION_BUDGET) -> ReversalClasses:
    if m not in _CLASSES_CACHE:
        _CLASSES_CACHE[m] = ReversalClasses(m, budget)
    return _CLASSES_CACHE[m]


def _chain_masks(c: SimpleChain) -> tuple:
    pos = 0
    neg = 0
    for i, v in enumerate(c.coeffs):
        if v > 0:
            pos |= 1 << i
        elif v < 0:
            neg |= 1 << i
    return (pos, neg)


@dataclass(frozen=True)
class ActionTrace:
    """The three-step shape of one arc acting on a compatible orientation:
    an optional reversal through the arc's element, the flip of the element,
    an optional second reversal through it."""

    element: str
    sign: int
    start: Orientation
    end: Orientation
    pre: Optional[tuple]  # ("circuit" | "cocircuit", SimpleChain)
    post: Optional[tuple]

    def to_json_dict(self) -> dict:
        from .chains import format_orientation, format_signed_chain

        def part(p):
            if p is None:
                return {"kind": "none"}
            return {"kind": p[0], "chain": format_signed_chain(p[1])}

        return {
            "pre": part(self.pre),
            "flip": ("+" if self.sign > 0 else "-") + self.element,
            "post": part(self.post),
            "start": format_orientation(self.start),
            "end": format_orientation(self.end),
        }


class CanonicalAction:
    """The group action engine for one matroid and triangulating pair.

    Builds the group, the reversal classes, the compatible-representative
    table and per-arc class permutations once; all queries afterwards are
    pure lookups plus composition.
    """

    def __init__(
        self,
        m: RegularMatroid,
        pair: SignaturePair,
        budget: int = DEFAULT_ORIENTATION_BUDGET,
    ):
        if not pair.is_triangulating(m):
            raise NotTriangulating(
                "pair is not triangulating: witness %r" % (pair.triangulating_witness(m),)
            )
        self.m = m
        self.pair = pair
        self.group = group(m)
        self.classes = classes(m, budget)
        self._rep_of_class = self._build_representatives()
        self._arc_perm: dict = {}

    def _build_representatives(self) -> tuple:
        """The unique compatible member of every class (uniqueness asserted)."""
        # bitmask forms of every signed chain NOT in the signature: a
        # compatible representative must be compatible with none of them
        forbidden = []
        for c in self.m.signed_circuits():
            if c not in self.pair.circuit:
                forbidden.append(_chain_masks(c))
        for c in self.m.signed_cocircuits():
            if c not in self.pair.cocircuit:
                forbidden.append(_chain_masks(c))
        reps = []
        for cid, members in enumerate(self.classes.members):
            found = [mask for mask in members if self._mask_compatible(mask, forbidden)]
            assert len(found) == 1, (
                "class %d holds %d compatible orientations" % (cid, len(found))
            )
            reps.append(found[0])
        return tuple(reps)

    @staticmethod
    def _mask_compatible(mask: int, forbidden) -> bool:
        for pos, neg in forbidden:
            if (pos & ~mask) == 0 and (neg & mask) == 0:
                return False
        return True

    # -- representatives ---------------------------------------------------

    def representative(self, o: Orientation) -> Orientation:
        """The compatible orientation in the reversal class of o."""
        cid = self.classes.class_of(o)
        return self.classes.orientation_of(self._rep_of_class[cid])

    def representatives(self) -> tuple:
        return tuple(self.classes.orientation_of(mask) for mask in self._rep_of_class)

    def is_representative(self, o: Orientation) -> bool:
        return self.classes.mask_of(o) in set(self._rep_of_class)

    # -- the action ----------------------------------------------------------

    def _arc_class_permutation(self, e: str, sign: int) -> list:
        """Class-level action of one arc: flip e on a member anti-compatible
        with the arc (one exists in every class)."""
        key = (e, sign)
        if key not in self._arc_perm:
            bit = 1 << self.m.ground.index(e)
            want_plus = sign < 0  # member must carry -arc, i.e. sign -sign at e
            perm = []
            for members in self.classes.members:
                src = None
                for mask in members:
                    has_plus = bool(mask & bit)
                    if has_plus == want_plus:
                        src = mask
                        break
                assert src is not None, "no member carries the opposite arc"
                perm.append(self.classes.class_of_mask[src ^ bit])
            self._arc_perm[key] = perm
        return self._arc_perm[key]

    def act_class(self, chain: Chain, cid: int) -> int:
        """Class-level action of an arbitrary integer chain."""
        for i, c in enumerate(chain.coeffs):
            if c == 0:
                continue
            e = self.m.ground.elements[i]
            perm = self._arc_class_permutation(e, 1 if c > 0 else -1)
            for _ in range(abs(c)):
                cid = perm[cid]
        return cid

    def act(self, s, o: Orientation) -> Orientation:
        """s . o for s a GroupElement or integer chain, o a representative."""
        if not self.is_representative(o):
            raise NotCompatibleOrientation(
                "orientation is not the compatible representative of its class"
            )
        chain = self.group.chain_for(s) if isinstance(s, GroupElement) else s
        cid = self.act_class(chain, self.classes.class_of(o))
        return self.classes.orientation_of(self._rep_of_class[cid])

    def act_arc(self, e: str, sign: int, o: Orientation) -> Orientation:
        return self.act(SimpleChain.arc(self.m.ground, e, sign), o)

    # -- structured traces ------------------------------------------------------

    def trace_arc(self, e: str, sign: int, o: Orientation) -> ActionTrace:
        """Decompose one arc action into (optional reversal, flip, optional
        reversal) and check the structural side conditions."""
        if not self.is_representative(o):
            raise NotCompatibleOrientation(
                "orientation is not the compatible representative of its class"
            )
        m = self.m
        end = self.act_arc(e, sign, o)
        arc_compat = o[e] == sign

        candidates: list
        if not arc_compat:
            candidates = [None]
        else:
            kind, _ = m.three_painting(o, e)
            pool = m.signed_circuits() if kind == "circuit" else m.signed_cocircuits()
            candidates = [
                (kind, c) for c in pool if c[e] != 0 and compatible(c, o)
            ]
            # prefer the pre-reversal leaving the least work for the last step
            def flip_size(entry):
                _, c = entry
                mid = o.reverse(c.support() - {e})
                return sum(1 for a, b in zip(mid.signs, end.signs) if a != b)

            candidates.sort(key=lambda entry: (flip_size(entry), entry[1].coeffs))

        for pre in candidates:
            mid = o.reverse({e} if pre is None else pre[1].support() - {e})
            diff = frozenset(
                x for x, a, b in zip(m.ground.elements, mid.signs, end.signs) if a != b
            )
            if not diff:
                post = None
            else:
                post = self._find_reversal(diff, e, mid)
                if post is None:
                    continue
            trace = ActionTrace(e, sign, o, end, pre, post)
            self._check_trace(trace)
            return trace
        raise AssertionError("no three-step decomposition found for %s%s" % (sign, e))

    def _find_reversal(self, support: frozenset, e: str, mid: Orientation):
        if e not in support:
            return None
        for kind, pool in (
            ("circuit", self.m.signed_circuits()),
            ("cocircuit", self.m.signed_cocircuits()),
        ):
            for c in pool:
                if c.support() == support and compatible(c, mid):
                    return (kind, c)
        return None

    def _check_trace(self, t: ActionTrace) -> None:
        arc = SimpleChain.arc(self.m.ground, t.element, t.sign)
        assert (t.pre is not None) == compatible(arc, t.start), "pre-reversal condition"
        assert (t.post is not None) == compatible(-arc, t.end), "post-reversal condition"
        if t.pre is not None and t.post is not None:
            assert t.pre[0] != t.post[0], "both reversals of the same kind"
            circ = t.pre[1] if t.pre[0] == "circuit" else t.post[1]
            cocirc = t.pre[1] if t.pre[0] == "cocircuit" else t.post[1]
            inter = circ.support() & cocirc.support()
            assert t.element in inter and len(inter) == 2, "intersection is not {f, g}"
            g = next(iter(inter - {t.element}))
            flipset = (circ.support() | cocirc.support()) - {g}
            assert t.end == t.start.reverse(flipset), "endpoint mismatch on (C u C*) - g"


def compatible_representative(m: RegularMatroid, pair: SignaturePair, o: Orientation) -> Orientation:
    return CanonicalAction(m, pair).representative(o)


def canonical_action(m: RegularMatroid, pair: SignaturePair, s, o: Orientation) -> Orientation:
    return CanonicalAction(m, pair).act(s, o)


def arc_action_trace(m: RegularMatroid, pair: SignaturePair, e: str, sign: int, o: Orientation) -> ActionTrace:
    return CanonicalAction(m, pair).trace_arc(e, sign, o)


def greedy_representative(
    m: RegularMatroid,
    pair: SignaturePair,
    o: Orientation,
    max_steps: Optional[int] = None,
) -> Orientation:
    """Reach the compatible representative by repeatedly reversing any
    compatible circuit not in the circuit signature (or cocircuit not in
    the cocircuit signature).  Secondary path; cross-checked against the
    class-scan representative."""
    if max_steps is None:
        max_steps = 4 ** len(m.ground) + 16
    circuits = m.signed_circuits()
    cocircuits = m.signed_cocircuits()
    for _ in range(max_steps):
        move = None
        for c in circuits:
            if c not in pair.circuit and compatible(c, o):
                move = c
                break
        if move is None:
            for c in cocircuits:
                if c not in pair.cocircuit and compatible(c, o):
                    move = c
                    break
        if move is None:
            return o
        o = o.reverse(move.support())
    raise BudgetExceeded("greedy reduction did not settle in %d steps" % max_steps)
