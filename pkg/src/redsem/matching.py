"""Terminating matching and decomposition over grammars.

The engine answers, for a term, a pattern, and a grammar: which bindings
make the pattern match the term, and which (context, sub-term) splits of
the term the pattern describes.  Recursion is justified by a lexicographic
order (consume input first; otherwise consume pattern structure or grammar
productions) and, when debug checks are on, every recursive call is
verified against that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import EngineError
from .grammar import Grammar, Production, grammar_length, productions_of, remove_prod
from .terms import (
    HOLE,
    HOLE_TERM,
    Context,
    CtxTerm,
    HeadCtx,
    Hole,
    HolePat,
    InHolePat,
    ListPat,
    ListTerm,
    Literal,
    LitPat,
    NamePat,
    NtPat,
    Pattern,
    TailCtx,
    Term,
    compose,
    is_proper_subterm,
    pattern_size,
    plug,
    term_size,
)


class MeasureViolationError(EngineError):
    """A recursive matching call failed to decrease the tuple order."""


class MatchFuelError(EngineError):
    """The matcher exceeded its recursion budget (suspected left recursion)."""


class SoundnessCheckError(EngineError):
    """A produced decomposition failed its plug/subterm invariant."""


@dataclass(frozen=True)
class Bindings:
    """Finite map from pattern variables to terms, sorted by variable."""

    entries: tuple[tuple[str, Term], ...]

    def get(self, var: str) -> Term | None:
        for v, t in self.entries:
            if v == var:
                return t
        return None

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


EMPTY_BINDINGS = Bindings(())


def bindings_from(pairs: Iterable[tuple[str, Term]]) -> Bindings:
    merged: dict[str, Term] = {}
    for var, value in pairs:
        if var in merged and merged[var] != value:
            raise ValueError(f"conflicting bindings for {var!r}")
        merged[var] = value
    return Bindings(tuple(sorted(merged.items(), key=lambda e: e[0])))


def bindings_union(b1: Bindings, b2: Bindings) -> Bindings | None:
    """Disjoint union: defined iff shared variables agree on their terms."""
    merged = dict(b1.entries)
    for var, value in b2.entries:
        if var in merged:
            if merged[var] != value:
                return None
        else:
            merged[var] = value
    return Bindings(tuple(sorted(merged.items(), key=lambda e: e[0])))


@dataclass(frozen=True)
class EmptyDecomposition:
    """The pattern matched the whole term; nothing was split off."""


@dataclass(frozen=True)
class ContextDecomposition:
    """The term was split into a context and the sub-term in its hole."""

    context: Context
    subterm: Term


Decomposition = Union[EmptyDecomposition, ContextDecomposition]

EMPTY_DECOMPOSITION = EmptyDecomposition()


@dataclass(frozen=True)
class MatchResult:
    decomposition: Decomposition
    bindings: Bindings


@dataclass(frozen=True)
class MatchingTuple:
    """One matching problem: a term, a pattern, and the current grammar."""

    term: Term
    pattern: Pattern
    grammar: Grammar


def default_fuel(t: Term, p: Pattern, g: Grammar) -> int:
    return 10 * (term_size(t) + 1) * (pattern_size(p) + grammar_length(g) + 1)


def tuple_order_decreases(
    g_orig: Grammar, nxt: MatchingTuple, prev: MatchingTuple
) -> bool:
    """True iff nxt is strictly below prev in the matching tuple order.

    Either the term shrank to a proper subterm, or the term is unchanged
    and the (pattern, grammar) pair took one of the four non-consuming
    steps: into an in-hole component, into a name body, or into one
    production of a non-terminal with that production removed.
    """
    del g_orig
    if is_proper_subterm(nxt.term, prev.term):
        return True
    if nxt.term != prev.term:
        return False
    p_prev, p_next = prev.pattern, nxt.pattern
    if isinstance(p_prev, InHolePat) and nxt.grammar == prev.grammar:
        if p_next == p_prev.context_pat or p_next == p_prev.hole_pat:
            return True
    if isinstance(p_prev, NamePat) and nxt.grammar == prev.grammar:
        if p_next == p_prev.pattern:
            return True
    if isinstance(p_prev, NtPat):
        prod = Production(p_prev.name, p_next)
        if prod in prev.grammar.productions:
            if nxt.grammar == remove_prod(prev.grammar, prod):
                return True
    return False


def select(
    t_head: Term,
    d_head: Decomposition,
    t_tail: tuple[Term, ...],
    d_tail: Decomposition,
    whole: Term,
) -> Decomposition | None:
    """Combine head and tail results of a list-shaped match into one.

    Both empty: the whole list matched.  Exactly one side decomposed: the
    split is lifted into a head- or tail-tagged list context.  None when
    no single-hole context exists for the combination: both sides split,
    or the split falls on the opposite side of a context's own hole path,
    or extracting the sub-term would tear a context value out of a plain
    list.
    """
    head_split = isinstance(d_head, ContextDecomposition)
    tail_split = isinstance(d_tail, ContextDecomposition)
    if head_split and tail_split:
        return None
    if not head_split and not tail_split:
        return EMPTY_DECOMPOSITION

    if isinstance(whole, ListTerm):
        if head_split:
            assert isinstance(d_head, ContextDecomposition)
            if isinstance(d_head.subterm, CtxTerm):
                return None
            return ContextDecomposition(
                HeadCtx(d_head.context, t_tail), d_head.subterm
            )
        assert isinstance(d_tail, ContextDecomposition)
        if isinstance(d_tail.context, Hole):
            return None
        return ContextDecomposition(
            TailCtx(t_head, d_tail.context), d_tail.subterm
        )

    if isinstance(whole, CtxTerm) and isinstance(whole.context, HeadCtx):
        if head_split:
            assert isinstance(d_head, ContextDecomposition)
            return ContextDecomposition(
                HeadCtx(d_head.context, whole.context.tail), d_head.subterm
            )
        return None

    if isinstance(whole, CtxTerm) and isinstance(whole.context, TailCtx):
        if tail_split:
            assert isinstance(d_tail, ContextDecomposition)
            if isinstance(d_tail.context, Hole):
                return None
            return ContextDecomposition(
                TailCtx(whole.context.head, d_tail.context), d_tail.subterm
            )
        return None

    return None


def combine(
    whole: Term, context: Context, subterm: Term, d_hole: Decomposition
) -> Decomposition:
    """Resolve an in-hole result: a match of the focused sub-term means the
    in-hole pattern matched the whole term; a further split composes the
    two contexts."""
    assert plug(context, subterm) == whole
    if isinstance(d_hole, EmptyDecomposition):
        return EMPTY_DECOMPOSITION
    return ContextDecomposition(compose(context, d_hole.context), d_hole.subterm)


def bind_name(
    var: str, whole: Term, decom: Decomposition, bindings: Bindings
) -> Bindings | None:
    """Extend bindings with the value a name pattern captured: the whole
    term for a match, the extracted context for a decomposition."""
    if isinstance(decom, EmptyDecomposition):
        value: Term = whole
    else:
        value = CtxTerm(decom.context)
    return bindings_union(bindings, Bindings(((var, value),)))


_AUTO_FUEL = object()


def match_decompose(
    grammar: Grammar,
    term: Term,
    pattern: Pattern,
    current: Grammar | None = None,
    *,
    debug: bool | None = None,
    fuel: int | None | object = _AUTO_FUEL,
) -> list[MatchResult]:
    """All matches and decompositions of term against pattern.

    Non-terminals are interpreted against `current` until input is
    consumed, then against the original grammar.  The result list is
    deterministic and may contain duplicates.  With debug checks on,
    every recursive call is verified to decrease the tuple order and each
    produced split is verified to plug back to its input.
    """
    if current is None:
        current = grammar
    if debug is None:
        debug = __debug__
    if fuel is _AUTO_FUEL:
        budget: int | None = default_fuel(term, pattern, grammar)
    else:
        budget = fuel  # type: ignore[assignment]

    def check_results(t: Term, results: list[MatchResult]) -> list[MatchResult]:
        for r in results:
            d = r.decomposition
            if isinstance(d, ContextDecomposition):
                if plug(d.context, d.subterm) != t:
                    raise SoundnessCheckError(
                        "decomposition does not plug back to its input"
                    )
                if not (
                    (d.subterm == t and d.context == HOLE)
                    or is_proper_subterm(d.subterm, t)
                ):
                    raise SoundnessCheckError(
                        "decomposition sub-term is neither the whole term "
                        "under a hole nor a proper sub-term"
                    )
        return results

    def ev(t: Term, p: Pattern, g_cur: Grammar, depth: int) -> list[MatchResult]:
        if budget is not None and depth > budget:
            raise MatchFuelError(
                "matching exceeded its recursion budget; "
                "the grammar is probably left recursive"
            )

        def rec(t2: Term, p2: Pattern, g2: Grammar) -> list[MatchResult]:
            if debug and not tuple_order_decreases(
                grammar, MatchingTuple(t2, p2, g2), MatchingTuple(t, p, g_cur)
            ):
                raise MeasureViolationError(
                    "recursive matching call does not decrease the tuple order"
                )
            return ev(t2, p2, g2, depth + 1)

        if isinstance(p, HolePat):
            if t == HOLE_TERM:
                results = [
                    MatchResult(ContextDecomposition(HOLE, HOLE_TERM), EMPTY_BINDINGS),
                    MatchResult(EMPTY_DECOMPOSITION, EMPTY_BINDINGS),
                ]
            else:
                results = [MatchResult(ContextDecomposition(HOLE, t), EMPTY_BINDINGS)]

        elif isinstance(p, LitPat):
            if isinstance(t, Literal) and t == p.lit:
                results = [MatchResult(EMPTY_DECOMPOSITION, EMPTY_BINDINGS)]
            else:
                results = []

        elif isinstance(p, NamePat):
            results = []
            for r in rec(t, p.pattern, g_cur):
                extended = bind_name(p.var, t, r.decomposition, r.bindings)
                if extended is not None:
                    results.append(MatchResult(r.decomposition, extended))

        elif isinstance(p, NtPat):
            results = []
            for rhs in productions_of(g_cur, p.name):
                g2 = remove_prod(g_cur, Production(p.name, rhs))
                for r in rec(t, rhs, g2):
                    results.append(MatchResult(r.decomposition, EMPTY_BINDINGS))

        elif isinstance(p, InHolePat):
            results = []
            for rc in rec(t, p.context_pat, g_cur):
                dc = rc.decomposition
                if not isinstance(dc, ContextDecomposition):
                    continue
                g_hole = g_cur if dc.subterm == t else grammar
                for rh in rec(dc.subterm, p.hole_pat, g_hole):
                    merged = bindings_union(rc.bindings, rh.bindings)
                    if merged is None:
                        continue
                    d = combine(t, dc.context, dc.subterm, rh.decomposition)
                    results.append(MatchResult(d, merged))

        elif isinstance(p, ListPat):
            results = _ev_list(t, p, g_cur, rec)

        else:
            results = []

        if debug:
            check_results(t, results)
        return results

    def _ev_list(t: Term, p: ListPat, g_cur: Grammar, rec) -> list[MatchResult]:
        if isinstance(t, ListTerm):
            if not t.items and not p.items:
                return [MatchResult(EMPTY_DECOMPOSITION, EMPTY_BINDINGS)]
            if not t.items or not p.items:
                return []
            head, tail = t.items[0], t.items[1:]
            return _cross(t, head, ListTerm(tail), tail, p, rec)
        if isinstance(t, CtxTerm) and isinstance(t.context, HeadCtx):
            if not p.items:
                return []
            c = t.context
            return _cross(t, CtxTerm(c.hole_side), ListTerm(c.tail), c.tail, p, rec)
        if isinstance(t, CtxTerm) and isinstance(t.context, TailCtx):
            if not p.items:
                return []
            c = t.context
            return _cross(t, c.head, CtxTerm(c.rest), (), p, rec)
        return []

    def _cross(
        whole: Term,
        head: Term,
        tail_term: Term,
        tail_items: tuple[Term, ...],
        p: ListPat,
        rec,
    ) -> list[MatchResult]:
        p_head, p_tail = p.items[0], ListPat(p.items[1:])
        head_results = rec(head, p_head, grammar)
        if not head_results:
            return []
        tail_results = rec(tail_term, p_tail, grammar)
        out: list[MatchResult] = []
        for rh in head_results:
            for rt in tail_results:
                d = select(head, rh.decomposition, tail_items, rt.decomposition, whole)
                if d is None:
                    continue
                merged = bindings_union(rh.bindings, rt.bindings)
                if merged is None:
                    continue
                out.append(MatchResult(d, merged))
        return out

    return ev(term, pattern, current, 0)


def matches(
    grammar: Grammar, term: Term, pattern: Pattern, **kwargs
) -> set[Bindings]:
    """Deduplicated bindings of the pure matches of term against pattern."""
    return {
        r.bindings
        for r in match_decompose(grammar, term, pattern, **kwargs)
        if isinstance(r.decomposition, EmptyDecomposition)
    }


def decompose(
    grammar: Grammar, term: Term, pattern: Pattern, **kwargs
) -> set[tuple[Context, Term, Bindings]]:
    """Deduplicated (context, sub-term, bindings) splits of term."""
    return {
        (r.decomposition.context, r.decomposition.subterm, r.bindings)
        for r in match_decompose(grammar, term, pattern, **kwargs)
        if isinstance(r.decomposition, ContextDecomposition)
    }
