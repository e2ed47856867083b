"""Ground-set-indexed integer 1-chains, orientations and fourientations.

Every other module speaks this vocabulary: a chain is an integer vector
indexed by a fixed, ordered ground set; a simple chain has entries in
{-1, 0, +1}; an orientation assigns a sign to every element; a
fourientation assigns one of the four subsets of {-, +} to every element.
All values are immutable after construction.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

# Fourientation states are subsets of {-, +} packed into two bits.
EMPTY = 0
PLUS = 1
MINUS = 2
BOTH = 3

_STATE_TEXT = {EMPTY: "0", PLUS: "+", MINUS: "-", BOTH: "±"}
_TEXT_STATE = {"0": EMPTY, "+": PLUS, "-": MINUS, "±": BOTH, "+-": BOTH, "-+": BOTH}


class GroundSet:
    """An ordered set of element names; the coordinate order of all chains."""

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[str]):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate element names: %r" % (self.elements,))
        self._index = {e: i for i, e in enumerate(self.elements)}

    def index(self, e: str) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise KeyError("unknown element %r (ground set %r)" % (e, self.elements))

    def __contains__(self, e: str) -> bool:
        return e in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return "GroundSet(%s)" % ",".join(self.elements)

    def without(self, e: str) -> "GroundSet":
        """Ground set with element e removed, order preserved."""
        i = self.index(e)
        return GroundSet(self.elements[:i] + self.elements[i + 1:])


def _check_same_ground(a, b) -> None:
    if a.ground != b.ground:
        raise ValueError("ground sets differ: %r vs %r" % (a.ground, b.ground))


class Chain:
    """An integer 1-chain over a ground set."""

    __slots__ = ("ground", "coeffs")

    def __init__(self, ground: GroundSet, coeffs: Sequence[int]):
        self.ground = ground
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != len(ground):
            raise ValueError("expected %d coefficients, got %d" % (len(ground), len(self.coeffs)))

    @classmethod
    def from_dict(cls, ground: GroundSet, entries: Mapping[str, int]) -> "Chain":
        coeffs = [0] * len(ground)
        for e, c in entries.items():
            coeffs[ground.index(e)] = c
        return cls(ground, coeffs)

    def __getitem__(self, e: str) -> int:
        return self.coeffs[self.ground.index(e)]

    def support(self) -> frozenset:
        return frozenset(e for e, c in zip(self.ground.elements, self.coeffs) if c != 0)

    def restrict(self, e: str) -> "Chain":
        """The chain on E minus e obtained by dropping the coordinate of e."""
        i = self.ground.index(e)
        return type(self)(self.ground.without(e), self.coeffs[:i] + self.coeffs[i + 1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "Chain") -> "Chain":
        _check_same_ground(self, other)
        return Chain(self.ground, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Chain") -> "Chain":
        _check_same_ground(self, other)
        return Chain(self.ground, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return type(self)(self.ground, [-c for c in self.coeffs])

    def __rmul__(self, k: int) -> "Chain":
        return Chain(self.ground, [k * c for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.ground == other.ground
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.coeffs))

    def __repr__(self) -> str:
        return "Chain(%s)" % format_chain(self)


class SimpleChain(Chain):
    """A 1-chain with every coefficient in {-1, 0, +1}."""

    __slots__ = ()

    def __init__(self, ground: GroundSet, coeffs: Sequence[int]):
        super().__init__(ground, coeffs)
        for e, c in zip(ground.elements, self.coeffs):
            if c not in (-1, 0, 1):
                raise ValueError("coefficient %d at %s is not in {-1,0,+1}" % (c, e))

    @classmethod
    def arc(cls, ground: GroundSet, e: str, sign: int = 1) -> "SimpleChain":
        """The simple chain supported on the single element e."""
        if sign not in (-1, 1):
            raise ValueError("arc sign must be +1 or -1")
        coeffs = [0] * len(ground)
        coeffs[ground.index(e)] = sign
        return cls(ground, coeffs)


class Orientation:
    """A total assignment of a sign (-1 or +1) to every element."""

    __slots__ = ("ground", "signs")

    def __init__(self, ground: GroundSet, signs: Sequence[int]):
        self.ground = ground
        self.signs = tuple(int(s) for s in signs)
        if len(self.signs) != len(ground):
            raise ValueError("expected %d signs, got %d" % (len(ground), len(self.signs)))
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("orientation signs must be -1 or +1: %r" % (self.signs,))

    def __getitem__(self, e: str) -> int:
        return self.signs[self.ground.index(e)]

    def reverse(self, subset: Iterable[str]) -> "Orientation":
        """Switch the sign at each element of the subset."""
        flip = {self.ground.index(e) for e in subset}
        return Orientation(
            self.ground,
            [-s if i in flip else s for i, s in enumerate(self.signs)],
        )

    def restrict(self, e: str) -> "Orientation":
        i = self.ground.index(e)
        return Orientation(self.ground.without(e), self.signs[:i] + self.signs[i + 1:])

    def to_chain(self) -> SimpleChain:
        return SimpleChain(self.ground, self.signs)

    def to_fourientation(self) -> "Fourientation":
        return Fourientation(self.ground, [PLUS if s > 0 else MINUS for s in self.signs])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.ground == other.ground
            and self.signs == other.signs
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.signs))

    def __repr__(self) -> str:
        return "Orientation(%s)" % format_orientation(self)


class Fourientation:
    """A map from elements to subsets of {-, +}.

    States are EMPTY, PLUS, MINUS or BOTH.  An orientation embeds as the
    total fourientation with states PLUS/MINUS only.
    """

    __slots__ = ("ground", "states")

    def __init__(self, ground: GroundSet, states: Sequence[int]):
        self.ground = ground
        self.states = tuple(int(s) for s in states)
        if len(self.states) != len(ground):
            raise ValueError("expected %d states, got %d" % (len(ground), len(self.states)))
        if any(s not in (EMPTY, PLUS, MINUS, BOTH) for s in self.states):
            raise ValueError("invalid fourientation state in %r" % (self.states,))

    def __getitem__(self, e: str) -> int:
        return self.states[self.ground.index(e)]

    def reverse(self, subset: Iterable[str]) -> "Fourientation":
        """Negate the state on subset elements that are currently - or +.

        EMPTY and BOTH states are left unchanged, even when listed.
        """
        flip = {self.ground.index(e) for e in subset}
        return Fourientation(
            self.ground,
            [
                _negate_state(s) if i in flip and s in (PLUS, MINUS) else s
                for i, s in enumerate(self.states)
            ],
        )

    def negate(self) -> "Fourientation":
        return Fourientation(self.ground, [_negate_state(s) for s in self.states])

    def complement(self) -> "Fourientation":
        return Fourientation(self.ground, [s ^ BOTH for s in self.states])

    def meet(self, other: "Fourientation") -> "Fourientation":
        _check_same_ground(self, other)
        return Fourientation(self.ground, [a & b for a, b in zip(self.states, other.states)])

    def join(self, other: "Fourientation") -> "Fourientation":
        _check_same_ground(self, other)
        return Fourientation(self.ground, [a | b for a, b in zip(self.states, other.states)])

    def restrict(self, e: str) -> "Fourientation":
        i = self.ground.index(e)
        return Fourientation(self.ground.without(e), self.states[:i] + self.states[i + 1:])

    def is_total(self) -> bool:
        return all(s in (PLUS, MINUS) for s in self.states)

    def to_orientation(self) -> Orientation:
        if not self.is_total():
            raise ValueError("fourientation %s is not a total orientation" % format_fourientation(self))
        return Orientation(self.ground, [1 if s == PLUS else -1 for s in self.states])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Fourientation)
            and self.ground == other.ground
            and self.states == other.states
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.states))

    def __repr__(self) -> str:
        return "Fourientation(%s)" % format_fourientation(self)


def _negate_state(s: int) -> int:
    return ((s & PLUS) << 1) | ((s & MINUS) >> 1)


def _as_fourientation(f) -> Fourientation:
    return f.to_fourientation() if isinstance(f, Orientation) else f


def compatible(p: Chain, f) -> bool:
    """Whether chain p is compatible with fourientation (or orientation) f.

    At every element where p is nonzero, the sign of the coefficient must
    be contained in the state of f.
    """
    four = _as_fourientation(f)
    _check_same_ground(p, four)
    for c, s in zip(p.coeffs, four.states):
        if c > 0 and not (s & PLUS):
            return False
        if c < 0 and not (s & MINUS):
            return False
    return True


def support(p: Chain) -> frozenset:
    return p.support()


def restrict(p, e: str):
    return p.restrict(e)


def reverse(f, subset: Iterable[str]):
    return f.reverse(subset)


def negate(f: Fourientation) -> Fourientation:
    return f.negate()


def complement(f: Fourientation) -> Fourientation:
    return f.complement()


def meet(f1: Fourientation, f2: Fourientation) -> Fourientation:
    return f1.meet(f2)


def join(f1: Fourientation, f2: Fourientation) -> Fourientation:
    return f1.join(f2)


# Text forms: comma-separated entries in ground-set order.

def format_chain(p: Chain) -> str:
    return ",".join("%+d" % c if c else "0" for c in p.coeffs)


def parse_chain(ground: GroundSet, text: str) -> Chain:
    coeffs = [int(part.strip()) for part in text.split(",")]
    return Chain(ground, coeffs)


def format_orientation(o: Orientation) -> str:
    return ",".join("+" if s > 0 else "-" for s in o.signs)


def parse_orientation(ground: GroundSet, text: str) -> Orientation:
    signs = []
    for part in text.split(","):
        part = part.strip()
        if part == "+":
            signs.append(1)
        elif part == "-":
            signs.append(-1)
        else:
            raise ValueError("bad orientation entry %r" % part)
    return Orientation(ground, signs)


def format_fourientation(f: Fourientation) -> str:
    return ",".join(_STATE_TEXT[s] for s in f.states)


def parse_fourientation(ground: GroundSet, text: str) -> Fourientation:
    states = []
    for part in text.split(","):
        part = part.strip()
        if part not in _TEXT_STATE:
            raise ValueError("bad fourientation entry %r" % part)
        states.append(_TEXT_STATE[part])
    return Fourientation(ground, states)


def format_signed_chain(p: Chain) -> str:
    """Signed-name form, e.g. ``+f1-f2+f3`` (support elements only)."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in zip(p.ground.elements, p.coeffs):
        if c == 0:
            continue
        sign = "+" if c > 0 else "-"
        mag = abs(c)
        parts.append("%s%s%s" % (sign, "" if mag == 1 else "%d*" % mag, e))
    return "".join(parts)


def parse_signed_chain(ground: GroundSet, text: str) -> SimpleChain:
    """Parse ``+f1-f2+f3`` into a simple chain."""
    text = text.strip()
    if text == "0":
        return SimpleChain(ground, [0] * len(ground))
    coeffs = [0] * len(ground)
    token = ""
    sign = None
    for ch in text + "+":  # sentinel flushes the last token
        if ch in "+-":
            if sign is not None:
                if not token:
                    raise ValueError("dangling sign in %r" % text)
                coeffs[ground.index(token)] += sign
            sign = 1 if ch == "+" else -1
            token = ""
        else:
            if sign is None:
                raise ValueError("missing leading sign in %r" % text)
            if not ch.isspace():
                token += ch
    return SimpleChain(ground, coeffs)
