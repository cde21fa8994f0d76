"""Relational examples, fragments, closed-world evaluation, universe enumeration."""

import pytest
from hypothesis import given, strategies as st

from relfrag import (
    CapExceededError,
    GroundAtom,
    RelationalExample,
    Vocabulary,
    atom,
    enumerate_omega,
    evaluate,
    evaluate_theory,
    format_example,
    fragment,
    infer_vocabulary,
    iter_size_k_subsets,
    parse_example_text,
    parse_formula,
)
from relfrag.logic import Atom, Not, UnboundVariableError, omega_size


class TestRelationalExample:
    def test_canonical_storage(self):
        a = RelationalExample((atom("p", "b"), atom("p", "a")), ("b", "a"))
        b = RelationalExample((atom("p", "a"), atom("p", "b")), ("a", "b"))
        assert a == b
        assert hash(a) == hash(b)
        assert a.domain == ("a", "b")

    def test_duplicate_atoms_collapse(self):
        ex = RelationalExample((atom("p", "a"), atom("p", "a")), ("a",))
        assert len(ex.atoms) == 1

    def test_stray_constant_rejected(self):
        with pytest.raises(ValueError, match="outside the domain"):
            RelationalExample((atom("p", "z"),), ("a",))

    def test_empty_domain_allowed(self):
        ex = RelationalExample((), ())
        assert ex.atoms == () and ex.domain == ()


class TestFragment:
    def test_paper_worked_fragment(self, smokers):
        got = fragment(smokers, ["alice", "bob"])
        want = RelationalExample(
            (atom("sm", "alice"), atom("fr", "alice", "bob"), atom("fr", "bob", "alice")),
            ("alice", "bob"),
        )
        assert got == want

    def test_identity(self, smokers):
        assert fragment(smokers, smokers.domain) == smokers

    def test_empty(self, smokers):
        assert fragment(smokers, []) == RelationalExample((), ())

    def test_not_a_subset(self, smokers):
        with pytest.raises(ValueError, match="not in the example's domain"):
            fragment(smokers, ["alice", "zeb"])

    def test_idempotence(self, smokers):
        outer = fragment(smokers, ["alice", "bob"])
        assert fragment(outer, ["alice"]) == fragment(smokers, ["alice"])

    @given(st.data())
    def test_idempotence_random(self, data):
        constants = ["a", "b", "c", "d", "e"]
        pool = [atom("p", c) for c in constants] + [
            atom("r", x, y) for x in constants for y in constants
        ]
        atoms = data.draw(st.sets(st.sampled_from(pool), max_size=12))
        ex = RelationalExample(tuple(atoms), tuple(constants))
        big = data.draw(st.sets(st.sampled_from(constants)))
        small = data.draw(st.sets(st.sampled_from(sorted(big)) if big else st.nothing()))
        assert fragment(fragment(ex, big), small) == fragment(ex, small)


class TestEvaluate:
    def test_beta_true_on_two_smokers(self, two_smokers, beta):
        assert evaluate(beta, two_smokers) is True

    def test_alpha_false_on_two_smokers(self, two_smokers, alpha):
        # bob is not listed as a smoker, so the universal fails
        assert evaluate(alpha, two_smokers) is False

    def test_vacuous_universal_on_empty_domain(self, alpha):
        assert evaluate(alpha, RelationalExample((), ())) is True

    def test_existential_on_empty_domain(self, beta):
        assert evaluate(beta, RelationalExample((), ())) is False

    def test_closed_world_atom(self, smokers, smokers_vocab):
        sm_alice = parse_formula("sm(alice)", smokers_vocab)
        sm_bob = parse_formula("sm(bob)", smokers_vocab)
        assert evaluate(sm_alice, smokers) is True
        assert evaluate(sm_bob, smokers) is False

    def test_constant_outside_domain_is_false(self, smokers, smokers_vocab):
        f = parse_formula("sm(alice)", smokers_vocab)
        tiny = fragment(smokers, ["bob", "eve"])
        assert evaluate(f, tiny) is False
        assert evaluate(Not(f), tiny) is True

    def test_connectives(self, smokers, smokers_vocab):
        t = parse_formula("sm(alice)", smokers_vocab)
        f = parse_formula("sm(bob)", smokers_vocab)
        checks = {
            "sm(alice) & sm(bob)": False,
            "sm(alice) | sm(bob)": True,
            "sm(alice) -> sm(bob)": False,
            "sm(bob) -> sm(alice)": True,
            "~sm(bob)": True,
        }
        for text, want in checks.items():
            assert evaluate(parse_formula(text, smokers_vocab), smokers) is want, text

    def test_quantifier_ranges_over_example_domain_only(self, smokers, smokers_vocab):
        # the fragment's domain excludes the global smoker, so exists fails
        f = parse_formula("exists X : sm(X)", smokers_vocab)
        assert evaluate(f, fragment(smokers, ["bob", "eve"])) is False

    def test_open_formula_raises(self, smokers):
        with pytest.raises(UnboundVariableError):
            evaluate(Atom("sm", ("X",)), smokers)

    def test_theory_is_conjunction(self, smokers, smokers_vocab):
        fs = [
            parse_formula("sm(alice)", smokers_vocab),
            parse_formula("exists X : fr(alice,X)", smokers_vocab),
        ]
        assert evaluate_theory(fs, smokers) is True
        fs.append(parse_formula("sm(eve)", smokers_vocab))
        assert evaluate_theory(fs, smokers) is False

    @given(
        st.sampled_from(
            [
                "forall X : sm(X)",
                "exists X : exists Y : fr(X,Y)",
                "forall X : (sm(X) -> exists Y : fr(X,Y))",
                "sm(alice) & ~sm(bob)",
            ]
        )
    )
    def test_negation_complements(self, text):
        from relfrag import infer_vocabulary, smokers_fixture

        ex = smokers_fixture()
        f = parse_formula(text, infer_vocabulary(ex))
        assert evaluate(Not(f), ex) == (not evaluate(f, ex))


class TestOmegaEnumeration:
    def test_paper_two_element_universe(self):
        vocab = Vocabulary.make({"sm": 1}, ["alice"])
        elements = list(enumerate_omega(vocab, 1))
        assert len(elements) == 2
        assert set(elements) == {
            RelationalExample((atom("sm", "alice"),), ("alice",)),
            RelationalExample((), ("alice",)),
        }

    def test_zero_predicates(self):
        vocab = Vocabulary.make({}, ["a"])
        assert list(enumerate_omega(vocab, 1)) == [RelationalExample((), ("a",))]

    def test_edge_vocab_sixteen_elements(self):
        vocab = Vocabulary.make({"edge": 2}, ["a", "b"])
        universe = enumerate_omega(vocab, 2)
        elements = list(universe)
        assert len(universe) == 16
        # brute-force oracle: distinct subsets of the 4 ground atoms
        assert len(set(elements)) == 16
        assert all(e.domain == ("a", "b") for e in elements)

    def test_count_matches_formula_with_multiple_subsets(self):
        vocab = Vocabulary.make({"p": 1, "r": 2}, list("abcd"))
        universe = enumerate_omega(vocab, 2)
        # 6 subsets x 2^(2 + 4) atom patterns
        assert len(universe) == 6 * 64
        elements = list(universe)
        assert len(set(elements)) == len(elements) == len(universe)

    def test_cap_refusal_reports_size(self):
        vocab = Vocabulary.make({"r": 2}, list("abcdef"))
        with pytest.raises(CapExceededError) as err:
            enumerate_omega(vocab, 4, max_elements=10**3)
        assert err.value.size == omega_size(vocab, 4)

    def test_arity_zero_predicate(self):
        vocab = Vocabulary.make({"flag": 0}, ["a"])
        elements = list(enumerate_omega(vocab, 1))
        assert len(elements) == 2
        assert RelationalExample((GroundAtom("flag", ()),), ("a",)) in elements


class TestSubsetOrder:
    def test_colex_order(self):
        got = list(iter_size_k_subsets("dcab", 2))
        assert got == [("a", "b"), ("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("c", "d")]

    def test_k_zero_and_k_too_big(self):
        assert list(iter_size_k_subsets("ab", 0)) == [()]
        assert list(iter_size_k_subsets("ab", 3)) == []


class TestExampleTextFormat:
    def test_round_trip(self, smokers):
        assert parse_example_text(format_example(smokers)) == smokers

    def test_comments_and_blank_lines(self):
        text = """
        # a comment
        domain: a b   # trailing comment

        p(a)
        r(a,b)  # another
        """
        ex = parse_example_text(text)
        assert ex == RelationalExample((atom("p", "a"), atom("r", "a", "b")), ("a", "b"))

    def test_duplicate_atom_rejected(self):
        with pytest.raises(ValueError, match="duplicate atom"):
            parse_example_text("domain: a\np(a)\np(a)\n")

    def test_missing_domain_line(self):
        with pytest.raises(ValueError, match="domain"):
            parse_example_text("p(a)\n")

    def test_atom_constant_outside_domain(self):
        with pytest.raises(ValueError, match="outside the domain"):
            parse_example_text("domain: a\np(b)\n")

    def test_malformed_atom_line(self):
        with pytest.raises(ValueError, match="line 2"):
            parse_example_text("domain: a\nnot an atom\n")


class TestVocabulary:
    def test_duplicate_constants_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            Vocabulary.make({"p": 1}, ["a", "a"])

    def test_negative_arity_rejected(self):
        with pytest.raises(ValueError, match="arity"):
            Vocabulary.make({"p": -1}, [])

    def test_infer_vocabulary(self, smokers):
        vocab = infer_vocabulary(smokers, extra_predicates=[("dead", 1)])
        assert vocab.has_predicate("fr", 2)
        assert vocab.has_predicate("sm", 1)
        assert vocab.has_predicate("dead", 1)
        assert vocab.constant_set == {"alice", "bob", "eve"}
        assert vocab.validates(smokers)
