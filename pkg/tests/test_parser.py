"""Formula parsing, printing, and the parse(print(f)) == f round trip."""

import pytest
from hypothesis import given, settings, strategies as st

from relfrag import (
    FormulaSyntaxError,
    ShadowedVariableError,
    UnboundVariableError,
    UnknownPredicateError,
    Vocabulary,
    format_formula,
    parse_formula,
)
from relfrag.logic import And, Atom, Exists, ForAll, Implies, Not, Or

VOCAB = Vocabulary.make({"sm": 1, "fr": 2, "flag": 0}, ["alice", "bob"])


class TestParseExamples:
    def test_universal(self):
        f = parse_formula("forall X : sm(X)", VOCAB)
        assert f == ForAll("X", Atom("sm", ("X",)))

    def test_nested_existentials(self):
        f = parse_formula("exists X : exists Y : fr(X,Y)", VOCAB)
        assert f == Exists("X", Exists("Y", Atom("fr", ("X", "Y"))))

    def test_multivariable_block_is_sugar(self):
        nested = parse_formula("exists X : exists Y : fr(X,Y)", VOCAB)
        assert parse_formula("exists X, Y : fr(X,Y)", VOCAB) == nested
        assert parse_formula("exists X Y : fr(X,Y)", VOCAB) == nested

    def test_precedence(self):
        f = parse_formula("sm(alice) | sm(bob) & ~sm(alice)", VOCAB)
        assert f == Or((Atom("sm", ("alice",)),
                        And((Atom("sm", ("bob",)), Not(Atom("sm", ("alice",)))))))

    def test_implication_lowest_and_right_assoc(self):
        f = parse_formula("sm(alice) -> sm(bob) -> flag()", VOCAB)
        assert f == Implies(
            Atom("sm", ("alice",)),
            Implies(Atom("sm", ("bob",)), Atom("flag", ())),
        )
        g = parse_formula("sm(alice) & sm(bob) -> flag()", VOCAB)
        assert isinstance(g, Implies)

    def test_quantifier_body_extends_right(self):
        f = parse_formula("forall X : sm(X) & sm(alice)", VOCAB)
        assert f == ForAll("X", And((Atom("sm", ("X",)), Atom("sm", ("alice",)))))

    def test_parenthesised_quantifier_inside_conjunction(self):
        f = parse_formula("(forall X : sm(X)) & sm(alice)", VOCAB)
        assert f == And((ForAll("X", Atom("sm", ("X",))), Atom("sm", ("alice",))))

    def test_arity_zero_atom(self):
        assert parse_formula("flag()", VOCAB) == Atom("flag", ())


class TestParseErrors:
    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError, match="Y"):
            parse_formula("forall X : sm(Y)", VOCAB)

    def test_shadowing_rejected(self):
        with pytest.raises(ShadowedVariableError):
            parse_formula("forall X : exists X : sm(X)", VOCAB)

    def test_unknown_predicate(self):
        with pytest.raises(UnknownPredicateError, match="unknown predicate"):
            parse_formula("forall X : smoker(X)", VOCAB)

    def test_arity_mismatch(self):
        with pytest.raises(UnknownPredicateError, match="arity"):
            parse_formula("sm(alice,bob)", VOCAB)

    def test_unknown_constant(self):
        with pytest.raises(UnknownPredicateError, match="constant"):
            parse_formula("sm(carol)", VOCAB)

    def test_syntax_error_carries_position(self):
        with pytest.raises(FormulaSyntaxError) as err:
            parse_formula("forall X sm(X)", VOCAB)
        assert err.value.position == 9

    def test_trailing_garbage(self):
        with pytest.raises(FormulaSyntaxError, match="trailing"):
            parse_formula("sm(alice) sm(bob)", VOCAB)

    def test_unexpected_character(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("sm(alice) + sm(bob)", VOCAB)

    def test_empty_quantifier(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("forall : sm(alice)", VOCAB)


# --- round-trip property -----------------------------------------------------

_PREDICATES = [("sm", 1), ("fr", 2), ("flag", 0)]
_CONSTANTS = ["alice", "bob"]
_VARIABLES = ["X", "Y", "Z", "W"]


def _atoms(scope: tuple[str, ...]):
    terms = st.sampled_from(list(scope) + _CONSTANTS) if scope else st.sampled_from(_CONSTANTS)
    return st.sampled_from(_PREDICATES).flatmap(
        lambda p: st.tuples(*([terms] * p[1])).map(lambda ts: Atom(p[0], ts))
    )


def _formulas(scope: tuple[str, ...] = (), depth: int = 3):
    if depth == 0:
        return _atoms(scope)
    sub = _formulas(scope, depth - 1)
    options = [
        _atoms(scope),
        sub.map(Not),
        st.lists(sub, min_size=2, max_size=3).map(lambda ps: And(tuple(ps))),
        st.lists(sub, min_size=2, max_size=3).map(lambda ps: Or(tuple(ps))),
        st.tuples(sub, sub).map(lambda ac: Implies(*ac)),
    ]
    fresh = [v for v in _VARIABLES if v not in scope]
    if fresh:
        v = fresh[0]
        inner = _formulas(scope + (v,), depth - 1)
        options.append(inner.map(lambda b: ForAll(v, b)))
        options.append(inner.map(lambda b: Exists(v, b)))
    return st.one_of(options)


class TestRoundTrip:
    @settings(max_examples=300, deadline=None)
    @given(_formulas())
    def test_parse_print_round_trip(self, formula):
        assert parse_formula(format_formula(formula), VOCAB) == formula

    def test_nested_or_keeps_structure(self):
        inner = Or((Atom("sm", ("alice",)), Atom("sm", ("bob",))))
        outer = Or((inner, Atom("flag", ())))
        assert parse_formula(format_formula(outer), VOCAB) == outer

    def test_quantifier_printing_nested_single(self):
        f = parse_formula("exists X, Y : fr(X,Y)", VOCAB)
        assert format_formula(f) == "exists X : exists Y : fr(X,Y)"
