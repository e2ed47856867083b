import itertools

import pytest

from torsor.chains import (
    BOTH,
    EMPTY,
    MINUS,
    PLUS,
    Chain,
    Fourientation,
    GroundSet,
    SimpleChain,
    compatible,
    format_chain,
    format_fourientation,
    format_orientation,
    format_signed_chain,
    parse_chain,
    parse_fourientation,
    parse_orientation,
    parse_signed_chain,
)

G4 = GroundSet(["f1", "f2", "f3", "f4"])


def all_fourientations(ground):
    for states in itertools.product((EMPTY, PLUS, MINUS, BOTH), repeat=len(ground)):
        yield Fourientation(ground, states)


def all_simple_chains(ground):
    for coeffs in itertools.product((-1, 0, 1), repeat=len(ground)):
        yield SimpleChain(ground, coeffs)


class TestSupportRestrict:
    def test_zero_chain_empty_support(self):
        assert Chain(G4, [0, 0, 0, 0]).support() == frozenset()

    def test_example_support(self):
        c = parse_signed_chain(G4, "+f1-f2+f3")
        assert c.support() == frozenset({"f1", "f2", "f3"})

    def test_arc_support(self):
        assert SimpleChain.arc(G4, "f4").support() == frozenset({"f4"})

    def test_restrict_drops_zero_coordinate(self):
        c = parse_signed_chain(G4, "+f1-f2+f3")
        r = c.restrict("f4")
        assert r.ground.elements == ("f1", "f2", "f3")
        assert r.coeffs == (1, -1, 1)

    def test_restrict_drops_nonzero_coordinate(self):
        c = parse_signed_chain(G4, "-f1+f3+f4")
        assert format_signed_chain(c.restrict("f4")) == "-f1+f3"

    def test_restrict_zero_chain(self):
        assert Chain(G4, [0] * 4).restrict("f2").is_zero()

    def test_restrict_unknown_element(self):
        with pytest.raises(KeyError):
            Chain(G4, [0] * 4).restrict("nope")


class TestCompatibility:
    def test_arc_against_orientation(self):
        o = parse_orientation(G4, "-,-,+,+")
        assert compatible(SimpleChain.arc(G4, "f1", -1), o)
        assert not compatible(SimpleChain.arc(G4, "f1", 1), o)

    def test_everything_compatible_with_full_biorientation(self):
        full = Fourientation(G4, [BOTH] * 4)
        for c in all_simple_chains(G4):
            assert compatible(c, full)

    def test_mixed_fourientation(self):
        f = parse_fourientation(G4, "±,-,±,+")
        assert compatible(parse_signed_chain(G4, "+f1-f2+f3"), f)
        assert not compatible(parse_signed_chain(G4, "+f1+f2"), f)

    def test_zero_chain_always_compatible(self):
        zero = Chain(G4, [0] * 4)
        for f in all_fourientations(GroundSet(["a", "b"])):
            assert compatible(Chain(f.ground, [0, 0]), f)
        assert compatible(zero, parse_orientation(G4, "+,+,+,+"))


class TestReverse:
    def test_orientation_flip(self):
        o = parse_orientation(G4, "-,-,+,+")
        assert format_orientation(o.reverse({"f1"})) == "+,-,+,+"

    def test_reverse_empty_set_identity(self):
        f = parse_fourientation(G4, "±,0,+,-")
        assert f.reverse(set()) == f

    def test_circuit_reversal_example(self):
        o = parse_orientation(G4, "+,-,+,-")
        assert format_orientation(o.reverse({"f3", "f4"})) == "+,-,-,+"

    def test_reverse_skips_empty_and_bioriented(self):
        f = parse_fourientation(G4, "±,0,+,-")
        assert format_fourientation(f.reverse({"f1", "f2", "f3", "f4"})) == "±,0,-,+"

    def test_reverse_involution(self):
        g = GroundSet(["a", "b", "c"])
        subsets = [set(), {"a"}, {"a", "c"}, {"a", "b", "c"}]
        for f in all_fourientations(g):
            for s in subsets:
                assert f.reverse(s).reverse(s) == f


class TestNegateComplement:
    def test_negate_table(self):
        f = parse_fourientation(G4, "±,0,+,-")
        assert format_fourientation(f.negate()) == "±,0,-,+"

    def test_complement_table(self):
        f = parse_fourientation(G4, "±,0,+,-")
        assert format_fourientation(f.complement()) == "0,±,-,+"

    def test_complement_of_negate(self):
        # composing the two tables: negation swaps the signs, complement
        # swaps them back and exchanges the bioriented and empty states
        f = parse_fourientation(G4, "+,+,±,0")
        assert format_fourientation(f.negate().complement()) == "+,+,0,±"
        assert format_fourientation(f.complement()) == "-,-,0,±"

    def test_involutions(self):
        g = GroundSet(["a", "b"])
        for f in all_fourientations(g):
            assert f.negate().negate() == f
            assert f.complement().complement() == f


class TestMeetJoin:
    def test_meet_gives_bby_orientation(self):
        a = parse_fourientation(G4, "±,-,±,+")
        b = parse_fourientation(G4, "-,±,+,±")
        assert format_fourientation(a.meet(b)) == "-,-,+,+"

    def test_meet_idempotent(self):
        f = parse_fourientation(G4, "±,0,+,-")
        assert f.meet(f) == f

    def test_join_pointwise_union(self):
        a = parse_fourientation(G4, "+,0,0,-")
        b = parse_fourientation(G4, "-,0,+,-")
        assert format_fourientation(a.join(b)) == "±,0,+,-"


class TestFourientationLaws:
    """Pointwise laws, exhaustive over a 2-element ground set."""

    G2 = GroundSet(["a", "b"])

    def test_negation_compatibility(self):
        for c in all_simple_chains(self.G2):
            for f in all_fourientations(self.G2):
                assert compatible(c, f) == compatible(-c, f.negate())

    def test_meet_compatibility(self):
        for c in all_simple_chains(self.G2):
            for f1 in all_fourientations(self.G2):
                for f2 in all_fourientations(self.G2):
                    assert compatible(c, f1.meet(f2)) == (
                        compatible(c, f1) and compatible(c, f2)
                    )

    def test_reverse_distributes(self):
        subsets = [set(), {"a"}, {"b"}, {"a", "b"}]
        for f1 in all_fourientations(self.G2):
            for f2 in all_fourientations(self.G2):
                for s in subsets:
                    assert f1.join(f2).reverse(s) == f1.reverse(s).join(f2.reverse(s))
                    assert f1.meet(f2).reverse(s) == f1.reverse(s).meet(f2.reverse(s))

    def test_sum_compatibility_cases(self):
        # p + q is compatible iff every support element satisfies one of:
        # bioriented, p's sign fits there, q's sign fits there, or
        # cancellation (a zero coefficient has no sign and fits nothing)
        def entry_ok(v, state):
            return v != 0 and bool(state & (PLUS if v > 0 else MINUS))

        for p in all_simple_chains(self.G2):
            for q in all_simple_chains(self.G2):
                s = p + q
                for f in all_fourientations(self.G2):
                    lhs = compatible(s, f)
                    rhs = True
                    for i, e in enumerate(self.G2.elements):
                        if p.coeffs[i] == 0 and q.coeffs[i] == 0:
                            continue
                        state = f.states[i]
                        if not (
                            state == BOTH
                            or entry_ok(p.coeffs[i], state)
                            or entry_ok(q.coeffs[i], state)
                            or p.coeffs[i] == -q.coeffs[i]
                        ):
                            rhs = False
                            break
                    assert lhs == rhs, (p, q, f)


class TestTextForms:
    def test_chain_round_trip(self):
        c = Chain(G4, [2, -1, 0, 3])
        assert format_chain(c) == "+2,-1,0,+3"
        assert parse_chain(G4, format_chain(c)) == c

    def test_orientation_round_trip(self):
        o = parse_orientation(G4, "+,-,+,+")
        assert parse_orientation(G4, format_orientation(o)) == o

    def test_fourientation_round_trip(self):
        f = parse_fourientation(G4, "+,-,±,0")
        assert parse_fourientation(G4, format_fourientation(f)) == f

    def test_signed_chain_round_trip(self):
        for text in ["+f1-f2+f3", "-f3+f4", "0"]:
            assert format_signed_chain(parse_signed_chain(G4, text)) == text

    def test_bad_entries(self):
        with pytest.raises(ValueError):
            parse_orientation(G4, "+,-,+,?")
        with pytest.raises(ValueError):
            parse_fourientation(G4, "+,-,%,0")
        with pytest.raises(ValueError):
            SimpleChain(G4, [2, 0, 0, 0])

    def test_orientation_chain_conversions(self):
        o = parse_orientation(G4, "+,-,+,+")
        assert o.to_chain().coeffs == (1, -1, 1, 1)
        assert o.to_fourientation().to_orientation() == o
        with pytest.raises(ValueError):
            parse_fourientation(G4, "±,-,+,+").to_orientation()

    def test_duplicate_ground_set_names_rejected(self):
        with pytest.raises(ValueError):
            GroundSet(["a", "b", "a"])
