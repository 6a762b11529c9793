"""Terms, contexts, and patterns of the object language.

Terms are literals, lists of terms, or embedded contexts.  A context is a
term with exactly one hole; every list node of a context carries a tag
(head/tail) pointing toward the hole, so plugging and decomposition can
follow a path instead of searching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True, eq=False)
class Literal:
    """Atomic term: a symbol (str), an integer, or a boolean.

    Booleans are kept distinct from integers even though Python's bool is
    an int subclass.
    """

    value: str | int | bool

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Literal)
            and type(other.value) is type(self.value)
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((type(self.value).__name__, self.value))

    def __repr__(self) -> str:
        return f"Literal({self.value!r})"


@dataclass(frozen=True)
class ListTerm:
    """A list of zero or more terms."""

    items: tuple["Term", ...]


@dataclass(frozen=True)
class CtxTerm:
    """A context embedded in term position."""

    context: "Context"


@dataclass(frozen=True)
class Hole:
    """The marked position of a context."""


@dataclass(frozen=True)
class HeadCtx:
    """List context whose hole lies inside the head element."""

    hole_side: "Context"
    tail: tuple["Term", ...]


@dataclass(frozen=True)
class TailCtx:
    """List context whose hole lies somewhere in the tail."""

    head: "Term"
    rest: "ListContext"


Term = Union[Literal, ListTerm, CtxTerm]
Context = Union[Hole, HeadCtx, TailCtx]
ListContext = Union[HeadCtx, TailCtx]

HOLE = Hole()
HOLE_TERM = CtxTerm(HOLE)


@dataclass(frozen=True)
class LitPat:
    """Matches exactly one literal."""

    lit: Literal


@dataclass(frozen=True)
class HolePat:
    """Matches the hole context; decomposes any term trivially."""


@dataclass(frozen=True)
class ListPat:
    """Matches a list of terms element-wise."""

    items: tuple["Pattern", ...]


@dataclass(frozen=True)
class NamePat:
    """Matches the sub-pattern and binds the matched value to a variable."""

    var: str
    pattern: "Pattern"


@dataclass(frozen=True)
class NtPat:
    """Matches any term produced by a grammar non-terminal."""

    name: str


@dataclass(frozen=True)
class InHolePat:
    """Matches terms decomposable into a context and a focused sub-term."""

    context_pat: "Pattern"
    hole_pat: "Pattern"


Pattern = Union[LitPat, HolePat, ListPat, NamePat, NtPat, InHolePat]

HOLE_PAT = HolePat()


def term_eq(t1: Term, t2: Term) -> bool:
    """Decidable structural equality on terms."""
    return t1 == t2


def term_size(t: Term) -> int:
    if isinstance(t, Literal):
        return 1
    if isinstance(t, ListTerm):
        return 1 + sum(term_size(item) for item in t.items)
    return 1 + context_size(t.context)


def context_size(c: Context) -> int:
    if isinstance(c, Hole):
        return 1
    if isinstance(c, HeadCtx):
        return 1 + context_size(c.hole_side) + sum(term_size(item) for item in c.tail)
    return 1 + term_size(c.head) + context_size(c.rest)


def pattern_size(p: Pattern) -> int:
    if isinstance(p, (LitPat, HolePat, NtPat)):
        return 1
    if isinstance(p, ListPat):
        return 1 + sum(pattern_size(item) for item in p.items)
    if isinstance(p, NamePat):
        return 1 + pattern_size(p.pattern)
    return 1 + pattern_size(p.context_pat) + pattern_size(p.hole_pat)


def subpatterns(p: Pattern) -> Iterator[Pattern]:
    """Yield p and every pattern nested inside it."""
    yield p
    if isinstance(p, ListPat):
        for item in p.items:
            yield from subpatterns(item)
    elif isinstance(p, NamePat):
        yield from subpatterns(p.pattern)
    elif isinstance(p, InHolePat):
        yield from subpatterns(p.context_pat)
        yield from subpatterns(p.hole_pat)


def immediate_subterms(t: Term) -> Iterator[Term]:
    """One-step subterm positions used by matching recursion.

    List nodes expose their head and their tail-as-list; context nodes
    expose the components the matcher recurses into (the hole-side context
    as a term, tail elements as a list, the head term, the rest context as
    a term).
    """
    if isinstance(t, ListTerm):
        if t.items:
            yield t.items[0]
            yield ListTerm(t.items[1:])
    elif isinstance(t, CtxTerm):
        c = t.context
        if isinstance(c, HeadCtx):
            yield CtxTerm(c.hole_side)
            yield ListTerm(c.tail)
        elif isinstance(c, TailCtx):
            yield c.head
            yield CtxTerm(c.rest)


def proper_subterms(t: Term) -> Iterator[Term]:
    """All proper subterms of t (transitive closure of immediate_subterms)."""
    for sub in immediate_subterms(t):
        yield sub
        yield from proper_subterms(sub)


def is_proper_subterm(sub: Term, t: Term) -> bool:
    """True iff sub occurs strictly inside t.  Irreflexive and transitive."""
    return any(sub == s for s in proper_subterms(t))


def plug(c: Context, t: Term) -> Term:
    """Replace the hole of c with t.

    Plugging a context-valued term rewires the two contexts into one (the
    result is again a context); plugging anything else fills in the hole
    structurally and always yields a non-context term shape.
    """
    if isinstance(t, CtxTerm):
        return CtxTerm(compose(c, t.context))
    if isinstance(c, Hole):
        return t
    if isinstance(c, HeadCtx):
        return ListTerm((plug(c.hole_side, t),) + c.tail)
    return ListTerm((c.head,) + _plug_items(c.rest, t))


def _plug_items(lc: ListContext, t: Term) -> tuple[Term, ...]:
    if isinstance(lc, HeadCtx):
        return (plug(lc.hole_side, t),) + lc.tail
    return (lc.head,) + _plug_items(lc.rest, t)


def compose(outer: Context, inner: Context) -> Context:
    """Replace outer's hole with inner.

    Satisfies plug(compose(c1, c2), t) == plug(c1, plug(c2, t)).
    """
    if isinstance(outer, Hole):
        return inner
    if isinstance(outer, HeadCtx):
        return HeadCtx(compose(outer.hole_side, inner), outer.tail)
    rest = compose(outer.rest, inner)
    if isinstance(rest, Hole):
        raise TypeError("composition erased the tail path of a context")
    return TailCtx(outer.head, rest)


def context_hole_count(c: Context) -> int:
    """Number of holes reachable along the context's own path structure.

    Embedded context terms sitting in term slots are opaque values; their
    holes belong to them, not to this context.
    """
    if isinstance(c, Hole):
        return 1
    if isinstance(c, HeadCtx):
        return context_hole_count(c.hole_side)
    return context_hole_count(c.rest)
