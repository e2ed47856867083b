import pytest

from torsor.chains import format_fourientation, format_signed_chain, parse_signed_chain
from torsor.errors import BudgetExceeded, InputFormatError, NotABasis
from torsor.matroid import RegularMatroid
from torsor.signatures import (
    CircuitSignature,
    basis_fourientation,
    contract_sig,
    delete_sig,
    enumerate_pairs,
    enumerate_signatures,
    format_signature_file,
    is_acyclic,
    is_triangulating,
    parse_signature_file,
    parse_signature_pair,
)

from conftest import SIGMA_CHAINS, SIGMA_STAR_CHAINS


def oracle_triangulating(m, sig):
    """Independent implementation: dict-based states, no fourientation type."""
    chains = m.signed_circuits() if sig.kind == "circuit" else m.signed_cocircuits()

    def states(basis):
        out = {}
        for e in m.ground.elements:
            inside = e in basis
            if (sig.kind == "circuit") == inside:
                out[e] = {1, -1}
            else:
                if sig.kind == "circuit":
                    supp = m.fundamental_circuit(basis, e)[0].support()
                else:
                    supp = m.fundamental_cocircuit(basis, e)[0].support()
                out[e] = {sig.chain(supp)[e]}
        return out

    for b1 in m.bases():
        for b2 in m.bases():
            if b1 == b2:
                continue
            s1 = states(b1)
            s2 = states(b2)
            overlay = {e: s1[e] & {-v for v in s2[e]} for e in m.ground.elements}
            for c in chains:
                if all(c[e] == 0 or c[e] in overlay[e] for e in m.ground.elements):
                    return False
    return True


@pytest.fixture(scope="module")
def sigma(fig1, fig1_pair):
    return fig1_pair.circuit


@pytest.fixture(scope="module")
def sigma_star(fig1, fig1_pair):
    return fig1_pair.cocircuit


class TestConstruction:
    def test_from_chains_validates_membership(self, fig1):
        with pytest.raises(ValueError):
            CircuitSignature.from_chains(
                fig1, [parse_signed_chain(fig1.ground, "+f1+f2")]
            )

    def test_from_chains_requires_completeness(self, fig1):
        with pytest.raises(ValueError):
            CircuitSignature.from_chains(
                fig1, [parse_signed_chain(fig1.ground, "+f1-f2+f3")]
            )

    def test_from_chains_rejects_both_signs(self, fig1):
        chains = [parse_signed_chain(fig1.ground, s) for s in SIGMA_CHAINS]
        chains.append(-chains[0])
        with pytest.raises(ValueError):
            CircuitSignature.from_chains(fig1, chains)


class TestBasisFourientation:
    def test_circuit_side(self, fig1, sigma):
        f = basis_fourientation(fig1, frozenset({"f1", "f3"}), sigma)
        assert format_fourientation(f) == "±,-,±,+"

    def test_cocircuit_side(self, fig1, sigma_star):
        f = basis_fourientation(fig1, frozenset({"f1", "f3"}), sigma_star)
        assert format_fourientation(f) == "-,±,+,±"

    def test_free_matroid_all_bioriented(self):
        m = RegularMatroid.from_matrix([[1, 0], [0, 1]])
        sig = CircuitSignature(m.ground, {})
        f = basis_fourientation(m, frozenset({"e0", "e1"}), sig)
        assert format_fourientation(f) == "±,±"

    def test_not_a_basis(self, fig1, sigma):
        with pytest.raises(NotABasis):
            basis_fourientation(fig1, frozenset({"f3", "f4"}), sigma)


class TestTriangulating:
    def test_example_pair(self, fig1, fig1_pair):
        assert fig1_pair.is_triangulating(fig1)

    def test_verdicts_match_oracle_for_all_signatures(self, fig1):
        for sig in enumerate_signatures(fig1, "circuit", "all"):
            got, witness = is_triangulating(fig1, sig)
            assert got == oracle_triangulating(fig1, sig)
            if not got:
                b1, b2, chain = witness
                # replay the witness
                overlay = basis_fourientation(fig1, b1, sig).meet(
                    basis_fourientation(fig1, b2, sig).negate()
                )
                from torsor.chains import compatible

                assert compatible(chain, overlay)
        for sig in enumerate_signatures(fig1, "cocircuit", "all"):
            assert is_triangulating(fig1, sig)[0] == oracle_triangulating(fig1, sig)

    def test_single_basis_vacuous(self):
        m = RegularMatroid.from_matrix([[1, 0], [0, 1]])
        sig = CircuitSignature(m.ground, {})
        assert is_triangulating(m, sig) == (True, None)


class TestAcyclic:
    def test_example_signature_acyclic(self, fig1, sigma, sigma_star):
        ok, cert = is_acyclic(fig1, sigma)
        assert ok and cert[0] == "separator"
        y = cert[1]
        for c in sigma.chains():
            assert sum(a * b for a, b in zip(y, c.coeffs)) > 0
        assert is_acyclic(fig1, sigma_star)[0]

    def test_positively_dependent_signature(self, fig1):
        tau = CircuitSignature.from_chains(
            fig1,
            [parse_signed_chain(fig1.ground, s) for s in ("+f1-f2+f3", "-f1+f2-f4", "-f3+f4")],
        )
        ok, cert = is_acyclic(fig1, tau)
        assert not ok
        assert cert == ("dependence", [1, 1, 1])

    def test_empty_signature(self):
        m = RegularMatroid.from_matrix([[1, 0], [0, 1]])
        assert is_acyclic(m, CircuitSignature(m.ground, {}))[0]

    def test_exactly_six_acyclic_circuit_signatures(self, fig1):
        verdicts = {}
        for sig in enumerate_signatures(fig1, "circuit", "all"):
            verdicts[tuple(format_signed_chain(c) for c in sig.chains())] = is_acyclic(
                fig1, sig
            )[0]
        assert sum(verdicts.values()) == 6
        # the two positively dependent choices are the all-cancelling ones
        bad = sorted(k for k, v in verdicts.items() if not v)
        assert bad == [
            ("+f1-f2+f3", "-f1+f2-f4", "-f3+f4"),
            ("-f1+f2-f3", "+f1-f2+f4", "+f3-f4"),
        ]


class TestMinorsOfSignatures:
    def test_delete_f4_circuit_side(self, fig1, sigma):
        minor = fig1.delete("f4")
        out = delete_sig(fig1, sigma, "f4", minor)
        assert [format_signed_chain(c) for c in out.chains()] == ["+f1-f2+f3"]

    def test_delete_f4_cocircuit_side(self, fig1, sigma_star):
        minor = fig1.delete("f4")
        out = delete_sig(fig1, sigma_star, "f4", minor)
        assert [format_signed_chain(c) for c in out.chains()] == [
            "-f1-f2",
            "-f1+f3",
            "+f2+f3",
        ]

    def test_contract_keeps_other_component_untouched(self):
        m = RegularMatroid.from_graph(
            [("a", "b", "x"), ("a", "b", "y"), ("c", "d", "z"), ("c", "d", "w")]
        )
        sig = CircuitSignature.from_chains(
            m,
            [
                m.circuit_pair(frozenset({"x", "y"}))[0],
                m.circuit_pair(frozenset({"z", "w"}))[0],
            ],
        )
        out = contract_sig(m, sig, "x", m.contract("x"))
        kept = out.chain(frozenset({"z", "w"}))
        assert kept == sig.chain(frozenset({"z", "w"})).restrict("x")


class TestEnumeration:
    def test_counts(self, fig1):
        assert len(list(enumerate_signatures(fig1, "circuit", "all"))) == 8
        assert len(list(enumerate_signatures(fig1, "cocircuit", "all"))) == 8

    def test_acyclic_subset_of_triangulating(self, fig1):
        tri = list(enumerate_signatures(fig1, "circuit", "triangulating"))
        for sig in enumerate_signatures(fig1, "circuit", "acyclic"):
            assert sig in tri

    def test_budget(self, fig1):
        with pytest.raises(BudgetExceeded):
            list(enumerate_signatures(fig1, "circuit", "all", budget=4))

    def test_free_matroid_single_empty_signature(self):
        m = RegularMatroid.from_matrix([[1, 0], [0, 1]])
        sigs = list(enumerate_signatures(m, "circuit", "all"))
        assert len(sigs) == 1 and len(sigs[0]) == 0

    def test_deterministic_order(self, fig1):
        a = [repr(s) for s in enumerate_signatures(fig1, "circuit", "all")]
        b = [repr(s) for s in enumerate_signatures(fig1, "circuit", "all")]
        assert a == b

    def test_pair_enumeration(self, fig1):
        pairs = list(enumerate_pairs(fig1, "triangulating"))
        assert len(pairs) == 36
        for p in pairs[:3]:
            assert p.is_triangulating(fig1)


class TestSignatureFiles:
    def test_round_trip(self, fig1, fig1_pair):
        text = format_signature_file(fig1_pair.circuit, fig1_pair.cocircuit)
        assert parse_signature_pair(fig1, text) == fig1_pair

    def test_kind_prefixes_optional_when_unambiguous(self, fig1):
        text = "\n".join(
            "{%s}: %s" % (",".join(sorted(parse_signed_chain(fig1.ground, s).support())), s)
            for s in SIGMA_CHAINS + SIGMA_STAR_CHAINS
        )
        pair = parse_signature_pair(fig1, text)
        assert len(pair.circuit) == 3 and len(pair.cocircuit) == 3

    def test_half_files(self, fig1):
        text = "\n".join(
            "circuit {%s}: %s"
            % (",".join(sorted(parse_signed_chain(fig1.ground, s).support())), s)
            for s in SIGMA_CHAINS
        )
        circ, cocirc = parse_signature_file(fig1, text)
        assert circ is not None and cocirc is None
        with pytest.raises(InputFormatError):
            parse_signature_pair(fig1, text)

    def test_malformed_lines(self, fig1):
        with pytest.raises(InputFormatError):
            parse_signature_file(fig1, "circuit f1,f2: +f1+f2\n")
        with pytest.raises(InputFormatError):
            parse_signature_file(fig1, "{f1,f2,f3} +f1-f2+f3\n")
        with pytest.raises(InputFormatError):
            parse_signature_file(fig1, "{f1,f3}: +f1+f3\n")
        with pytest.raises(InputFormatError):
            # support and chain disagree
            parse_signature_file(fig1, "{f1,f2,f3}: +f1-f2+f4\n")
