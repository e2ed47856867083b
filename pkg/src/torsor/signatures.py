"""Circuit and cocircuit signatures.

A circuit signature picks one of the two signed circuits on every circuit
support; a cocircuit signature does the same for cocircuits.  The two
properties that matter downstream:

* triangulating: for any two distinct bases B1, B2, the fourientation
  F(B1, sig) meet negate(F(B2, sig)) admits no compatible signed chain of
  the signature's kind;
* acyclic: no nonzero nonnegative combination of the chosen chains is zero
  (decided exactly, with a separating-vector or dependence certificate).

Acyclic implies triangulating; both survive deletion and contraction.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from . import intlinalg
from .chains import (
    BOTH,
    MINUS,
    PLUS,
    Fourientation,
    GroundSet,
    SimpleChain,
    compatible,
    format_signed_chain,
    parse_signed_chain,
)
from .errors import BudgetExceeded, InputFormatError, NotABasis
from .matroid import RegularMatroid

DEFAULT_ENUMERATION_BUDGET = 1 << 20


class _Signature:
    """Common behaviour of circuit and cocircuit signatures."""

    kind = ""

    def __init__(self, ground: GroundSet, chosen: dict):
        self.ground = ground
        self.chosen = dict(chosen)

    @classmethod
    def from_chains(cls, m: RegularMatroid, chains: Iterable[SimpleChain]):
        valid = set(m.signed_circuits() if cls.kind == "circuit" else m.signed_cocircuits())
        supports = set(
            m.circuit_supports() if cls.kind == "circuit" else m.cocircuit_supports()
        )
        chosen = {}
        for c in chains:
            if c not in valid:
                raise ValueError(
                    "%s is not a signed %s of the matroid" % (format_signed_chain(c), cls.kind)
                )
            supp = c.support()
            if supp in chosen and chosen[supp] != c:
                raise ValueError("both signs chosen on %r" % (sorted(supp),))
            chosen[supp] = c
        missing = supports - set(chosen)
        if missing:
            raise ValueError("no chain chosen on %r" % (sorted(sorted(s) for s in missing),))
        return cls(m.ground, chosen)

    def chain(self, support: frozenset) -> SimpleChain:
        return self.chosen[frozenset(support)]

    def chains(self) -> tuple:
        """Chosen chains, sorted by support for deterministic output."""
        keys = sorted(self.chosen, key=lambda s: sorted(self.ground.index(e) for e in s))
        return tuple(self.chosen[k] for k in keys)

    def __contains__(self, chain: SimpleChain) -> bool:
        return self.chosen.get(chain.support()) == chain

    def __len__(self) -> int:
        return len(self.chosen)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.chosen == other.chosen

    def __hash__(self) -> int:
        return hash((self.kind, frozenset(self.chosen.items())))

    def __repr__(self) -> str:
        return "%s(%s)" % (
            type(self).__name__,
            "; ".join(format_signed_chain(c) for c in self.chains()),
        )


class CircuitSignature(_Signature):
    kind = "circuit"


class CocircuitSignature(_Signature):
    kind = "cocircuit"


class SignaturePair:
    """A circuit signature plus a cocircuit signature, with cached verdicts."""

    def __init__(self, circuit: CircuitSignature, cocircuit: CocircuitSignature):
        self.circuit = circuit
        self.cocircuit = cocircuit
        self._triangulating: Optional[bool] = None
        self._witness = None

    def is_triangulating(self, m: RegularMatroid) -> bool:
        if self._triangulating is None:
            ok1, w1 = is_triangulating(m, self.circuit)
            ok2, w2 = is_triangulating(m, self.cocircuit)
            self._triangulating = ok1 and ok2
            self._witness = w1 if not ok1 else w2
        return self._triangulating

    def triangulating_witness(self, m: RegularMatroid):
        self.is_triangulating(m)
        return self._witness

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignaturePair)
            and self.circuit == other.circuit
            and self.cocircuit == other.cocircuit
        )

    def __hash__(self) -> int:
        return hash((self.circuit, self.cocircuit))

    def __repr__(self) -> str:
        return "SignaturePair(%r, %r)" % (self.circuit, self.cocircuit)


def basis_fourientation(m: RegularMatroid, basis: frozenset, sig: _Signature) -> Fourientation:
    """F(B, sig): the basis side bi-oriented, the rest oriented by the signature.

    For a circuit signature the basis elements are bi-oriented and each
    outside element e follows the chosen signed fundamental circuit of e;
    for a cocircuit signature the roles of the two sides swap.
    """
    basis = frozenset(basis)
    if not m.is_basis(basis):
        raise NotABasis(sorted(basis))
    states = []
    if sig.kind == "circuit":
        for e in m.ground.elements:
            if e in basis:
                states.append(BOTH)
            else:
                supp = m.fundamental_circuit(basis, e)[0].support()
                states.append(PLUS if sig.chain(supp)[e] > 0 else MINUS)
    else:
        for e in m.ground.elements:
            if e not in basis:
                states.append(BOTH)
            else:
                supp = m.fundamental_cocircuit(basis, e)[0].support()
                states.append(PLUS if sig.chain(supp)[e] > 0 else MINUS)
    return Fourientation(m.ground, states)


def is_triangulating(m: RegularMatroid, sig: _Signature):
    """Definitional check over all ordered pairs of distinct bases.

    Returns (True, None) or (False, (B1, B2, chain)) where the chain of the
    signature's kind is compatible with F(B1,sig) meet negate(F(B2,sig)).
    """
    chains = m.signed_circuits() if sig.kind == "circuit" else m.signed_cocircuits()
    fouris = {b: basis_fourientation(m, b, sig) for b in m.bases()}
    for b1 in m.bases():
        for b2 in m.bases():
            if b1 == b2:
                continue
            overlay = fouris[b1].meet(fouris[b2].negate())
            for c in chains:
                if compatible(c, overlay):
                    return (False, (b1, b2, c))
    return (True, None)


def is_acyclic(m: RegularMatroid, sig: _Signature):
    """Exact acyclicity decision with a certificate.

    Returns (True, ("separator", y)) where y is an integer vector with
    y . c > 0 for every chosen chain c, or (False, ("dependence", lam))
    where lam is a nonzero nonnegative integer vector (aligned with
    sig.chains()) whose combination of the chosen chains is zero.
    """
    chains = sig.chains()
    if not chains:
        return (True, ("separator", [0] * len(m.ground)))
    n = len(m.ground)
    cons = [(list(c.coeffs), 1) for c in chains]
    point = intlinalg.fm_feasible_point(cons, n)
    if point is not None:
        y = intlinalg.clear_denominators(point)
        for c in chains:
            assert sum(a * b for a, b in zip(y, c.coeffs)) > 0
        return (True, ("separator", y))
    # Gordan alternative: a nonzero nonnegative dependence must exist.
    k = len(chains)
    cons = []
    for j in range(n):
        coeffs = [c.coeffs[j] for c in chains]
        cons.append((coeffs, 0))
        cons.append(([-x for x in coeffs], 0))
    for i in range(k):
        cons.append(([1 if t == i else 0 for t in range(k)], 0))
    cons.append(([1] * k, 1))  # normalization keeps lambda nonzero
    lam = intlinalg.fm_feasible_point(cons, k)
    assert lam is not None, "either a separator or a dependence must exist"
    lam_int = intlinalg.clear_denominators(lam)
    assert all(v >= 0 for v in lam_int) and any(lam_int)
    zero = [0] * n
    for i, c in enumerate(chains):
        zero = [z + lam_int[i] * x for z, x in zip(zero, c.coeffs)]
    assert all(z == 0 for z in zero)
    return (False, ("dependence", lam_int))


def delete_sig(m: RegularMatroid, sig: _Signature, e: str, minor: Optional[RegularMatroid] = None):
    """The signature of M delete e: restrict every chosen chain, keep the
    ones that are signed chains of the minor."""
    if minor is None:
        minor = m.delete(e)
    return _restrict_signature(sig, minor)


def contract_sig(m: RegularMatroid, sig: _Signature, e: str, minor: Optional[RegularMatroid] = None):
    """The signature of M contract e (restriction, keeping support-minimal chains)."""
    if minor is None:
        minor = m.contract(e)
    return _restrict_signature(sig, minor)


def _restrict_signature(sig: _Signature, minor: RegularMatroid):
    dropped = set(sig.ground.elements) - set(minor.ground.elements)
    assert len(dropped) == 1
    e = dropped.pop()
    if sig.kind == "circuit":
        valid = set(minor.signed_circuits())
        supports = set(minor.circuit_supports())
        out_cls = CircuitSignature
    else:
        valid = set(minor.signed_cocircuits())
        supports = set(minor.cocircuit_supports())
        out_cls = CocircuitSignature
    chosen = {}
    for c in sig.chains():
        r = c.restrict(e)
        if r in valid:
            prev = chosen.get(r.support())
            assert prev is None or prev == r, "conflicting restrictions on %r" % (
                sorted(r.support()),
            )
            chosen[r.support()] = r
    assert set(chosen) == supports, "restriction is not a complete signature"
    return out_cls(minor.ground, chosen)


def delete_pair(m: RegularMatroid, pair: SignaturePair, e: str, minor=None) -> SignaturePair:
    if minor is None:
        minor = m.delete(e)
    out = SignaturePair(
        delete_sig(m, pair.circuit, e, minor), delete_sig(m, pair.cocircuit, e, minor)
    )
    if pair._triangulating:
        # minors of triangulating signatures are triangulating; the unique-
        # representative assertion downstream still guards the claim
        out._triangulating = True
    return out


def contract_pair(m: RegularMatroid, pair: SignaturePair, e: str, minor=None) -> SignaturePair:
    if minor is None:
        minor = m.contract(e)
    out = SignaturePair(
        contract_sig(m, pair.circuit, e, minor), contract_sig(m, pair.cocircuit, e, minor)
    )
    if pair._triangulating:
        out._triangulating = True
    return out


def enumerate_signatures(
    m: RegularMatroid,
    kind: str,
    filter: str = "all",
    budget: int = DEFAULT_ENUMERATION_BUDGET,
):
    """Deterministic lexicographic enumeration of signatures of one kind.

    filter is "all", "triangulating" or "acyclic".  Raises BudgetExceeded
    when 2^(number of supports) exceeds the budget.
    """
    if kind == "circuit":
        canon = m.signed_circuits()[::2]
        cls = CircuitSignature
    elif kind == "cocircuit":
        canon = m.signed_cocircuits()[::2]
        cls = CocircuitSignature
    else:
        raise ValueError("kind must be 'circuit' or 'cocircuit'")
    if filter not in ("all", "triangulating", "acyclic"):
        raise ValueError("unknown filter %r" % filter)
    k = len(canon)
    if 1 << k > budget:
        raise BudgetExceeded("2^%d signatures exceed budget %d" % (k, budget))
    for signs in itertools.product((0, 1), repeat=k):
        chosen = {}
        for flip, c in zip(signs, canon):
            chain = -c if flip else c
            chosen[chain.support()] = chain
        sig = cls(m.ground, chosen)
        if filter == "triangulating" and not is_triangulating(m, sig)[0]:
            continue
        if filter == "acyclic" and not is_acyclic(m, sig)[0]:
            continue
        yield sig


def enumerate_pairs(
    m: RegularMatroid,
    filter: str = "triangulating",
    budget: int = DEFAULT_ENUMERATION_BUDGET,
):
    """All signature pairs with both halves passing the filter.

    The verdicts decompose per side, so the two halves are enumerated and
    filtered independently and combined; the budget bounds the pair count.
    """
    ncirc = len(m.circuit_supports())
    ncocirc = len(m.cocircuit_supports())
    if 1 << (ncirc + ncocirc) > budget:
        raise BudgetExceeded(
            "2^%d signature pairs exceed budget %d" % (ncirc + ncocirc, budget)
        )
    circuits = list(enumerate_signatures(m, "circuit", filter, budget))
    cocircuits = list(enumerate_signatures(m, "cocircuit", filter, budget))
    for s in circuits:
        for t in cocircuits:
            pair = SignaturePair(s, t)
            if filter == "triangulating":
                pair._triangulating = True
            yield pair


# -- file format -----------------------------------------------------------------
#
# One line per support:  circuit {f1,f2,f3}: +f1-f2+f3
# The leading kind word may be omitted when the support is unambiguous.


def parse_signature_file(m: RegularMatroid, text: str):
    """Returns (CircuitSignature or None, CocircuitSignature or None)."""
    circuit_supports = set(m.circuit_supports())
    cocircuit_supports = set(m.cocircuit_supports())
    circ_chains = []
    cocirc_chains = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind = None
        for word in ("circuit", "cocircuit"):
            if line.startswith(word + " ") or line.startswith(word + "{"):
                kind = word
                line = line[len(word):].strip()
                break
        if ":" not in line:
            raise InputFormatError("expected '{support}: chain'", lineno)
        support_text, chain_text = line.split(":", 1)
        support_text = support_text.strip()
        if not (support_text.startswith("{") and support_text.endswith("}")):
            raise InputFormatError("support must be brace-delimited", lineno)
        names = [s.strip() for s in support_text[1:-1].split(",") if s.strip()]
        try:
            support = frozenset(names)
            chain = parse_signed_chain(m.ground, chain_text.strip())
        except (KeyError, ValueError) as exc:
            raise InputFormatError(str(exc), lineno)
        if chain.support() != support:
            raise InputFormatError(
                "chain support %r does not match %r" % (sorted(chain.support()), sorted(support)),
                lineno,
            )
        if kind is None:
            in_c = support in circuit_supports
            in_d = support in cocircuit_supports
            if in_c and in_d:
                raise InputFormatError(
                    "support is both a circuit and a cocircuit; prefix the line", lineno
                )
            if not in_c and not in_d:
                raise InputFormatError("support %r is neither kind" % (sorted(support),), lineno)
            kind = "circuit" if in_c else "cocircuit"
        (circ_chains if kind == "circuit" else cocirc_chains).append(chain)
    circ = CircuitSignature.from_chains(m, circ_chains) if circ_chains else None
    cocirc = CocircuitSignature.from_chains(m, cocirc_chains) if cocirc_chains else None
    return circ, cocirc


def parse_signature_pair(m: RegularMatroid, text: str) -> SignaturePair:
    circ, cocirc = parse_signature_file(m, text)
    if circ is None and not m.circuit_supports():
        circ = CircuitSignature(m.ground, {})
    if cocirc is None and not m.cocircuit_supports():
        cocirc = CocircuitSignature(m.ground, {})
    if circ is None or cocirc is None:
        raise InputFormatError("signature file must contain both halves of the pair")
    return SignaturePair(circ, cocirc)


def format_signature_file(*sigs) -> str:
    lines = []
    for sig in sigs:
        if sig is None:
            continue
        for c in sig.chains():
            lines.append(
                "%s {%s}: %s"
                % (sig.kind, ",".join(sorted(c.support(), key=sig.ground.index)), format_signed_chain(c))
            )
    return "\n".join(lines) + "\n"
