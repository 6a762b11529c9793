import random

import pytest
from hypothesis import given, settings, strategies as st

from genterms import gen_case, gen_term
from redsem import (
    HOLE,
    HOLE_PAT,
    HOLE_TERM,
    bindings_from,
    CtxTerm,

    HeadCtx,
    Hole,
    ListPat,
    ListTerm,
    Literal,
    LitPat,
    NamePat,
    OracleFuelError,
    TailCtx,
    enumerate_decompositions,
    grammar_length,
    is_proper_subterm,
    is_subgrammar,
    matches,
    new_grammar,
    oracle_decompose,
    oracle_match,
    oracle_match_original,
    plug,
    remove_prod,
)
from redsem.matching import EMPTY_BINDINGS

A, B = Literal("a"), Literal("b")
AB = ListTerm((A, B))
EMPTY_G = new_grammar([])

seeds = st.integers(min_value=0, max_value=2**31 - 1)


def bnd(**kw):
    return bindings_from(kw.items())


def count_positions(t):
    """Independent position count: one per term plus nested list element
    positions (context values are opaque), or one per cut of a context's
    hole path."""
    if isinstance(t, ListTerm):
        return 1 + sum(
            count_positions(item) for item in t.items if not isinstance(item, CtxTerm)
        )
    if isinstance(t, CtxTerm):
        return 1 + spine_length(t.context)
    return 1


def spine_length(c):
    if isinstance(c, Hole):
        return 0
    if isinstance(c, HeadCtx):
        return 1 + spine_length(c.hole_side)
    return spine_length(c.rest)


def count_atoms(t):
    if isinstance(t, Literal):
        return 1
    if isinstance(t, ListTerm):
        return sum(count_atoms(i) for i in t.items if not isinstance(i, CtxTerm))
    return 0


class TestEnumerateDecompositions:
    def test_literal(self):
        assert enumerate_decompositions(A) == [(HOLE, A)]

    def test_pair(self):
        assert enumerate_decompositions(AB) == [
            (HOLE, AB),
            (HeadCtx(HOLE, (B,)), A),
            (TailCtx(A, HeadCtx(HOLE, ())), B),
        ]

    def test_context_term_cuts_along_spine(self):
        t = CtxTerm(HeadCtx(HOLE, (B,)))
        assert enumerate_decompositions(t) == [
            (HOLE, t),
            (HeadCtx(HOLE, (B,)), HOLE_TERM),
        ]

    @given(seeds)
    def test_roundtrip_unique_and_counted(self, seed):
        t = gen_term(random.Random(seed))
        splits = enumerate_decompositions(t)
        assert splits[0] == (HOLE, t)
        assert len(set(splits)) == len(splits)
        for c, sub in splits:
            assert plug(c, sub) == t
        assert len(splits) == count_positions(t)

    @given(seeds)
    def test_at_least_atoms_plus_one(self, seed):
        # each reachable atom is its own split position, plus the trivial one
        t = gen_term(random.Random(seed))
        if isinstance(t, ListTerm):
            assert len(enumerate_decompositions(t)) >= count_atoms(t) + 1


class TestOracleMatch:
    def test_literal_axiom(self):
        assert oracle_match(EMPTY_G, A, LitPat(A)) == {EMPTY_BINDINGS}

    def test_name_rule(self):
        assert oracle_match(EMPTY_G, A, NamePat("x", LitPat(A))) == {bnd(x=A)}

    def test_consistent_repeat(self):
        p = ListPat((NamePat("x", LitPat(A)), NamePat("x", LitPat(A))))
        assert oracle_match(EMPTY_G, ListTerm((A, A)), p) == {bnd(x=A)}

    def test_hole_axiom(self):
        assert oracle_match(EMPTY_G, HOLE_TERM, HOLE_PAT) == {EMPTY_BINDINGS}
        assert oracle_match(EMPTY_G, A, HOLE_PAT) == set()

    def test_fuel_error_with_tiny_budget(self):
        p = NamePat("x", NamePat("y", LitPat(A)))
        with pytest.raises(OracleFuelError):
            oracle_match(EMPTY_G, A, p, fuel=1)


class TestOracleDecompose:
    def test_hole_pattern_trivial_split(self):
        assert oracle_decompose(EMPTY_G, AB, HOLE_PAT) == {
            (HOLE, AB, EMPTY_BINDINGS)
        }

    def test_head_split(self):
        p = ListPat((HOLE_PAT, LitPat(B)))
        assert oracle_decompose(EMPTY_G, AB, p) == {
            (HeadCtx(HOLE, (B,)), A, EMPTY_BINDINGS)
        }

    def test_literals_never_split(self):
        assert oracle_decompose(EMPTY_G, A, LitPat(A)) == set()

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_subterm_characterization(self, seed):
        g, t, p = gen_case(random.Random(seed))
        for c, sub, _ in oracle_decompose(g, t, p):
            assert (sub == t and c == HOLE) or is_proper_subterm(sub, t)
            assert plug(c, sub) == t


class TestOriginalSystem:
    def test_literal(self):
        assert oracle_match_original(EMPTY_G, A, LitPat(A)) == {EMPTY_BINDINGS}

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_equals_generalized_at_original_grammar(self, seed):
        g, t, p = gen_case(random.Random(seed))
        assert oracle_match_original(g, t, p) == oracle_match(g, t, p, g)

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_equals_engine_matches(self, seed):
        g, t, p = gen_case(random.Random(seed))
        assert oracle_match_original(g, t, p) == matches(g, t, p)


class TestGrammarWeakening:
    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_fewer_productions_derive_fewer_matches(self, seed):
        rng = random.Random(seed)
        g, t, p = gen_case(rng)
        if grammar_length(g) == 0:
            return
        smaller = remove_prod(g, rng.choice(g.productions))
        assert is_subgrammar(smaller, g)
        assert oracle_match(g, t, p, smaller) <= oracle_match(g, t, p, g)
