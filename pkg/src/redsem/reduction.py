"""Context-sensitive reduction rules on top of matching.

A rule pairs a pattern with a template; applying it instantiates the
template under every set of bindings the pattern produces.  Templates can
plug instantiated terms into bound contexts, which is how rules rewrite
inside evaluation contexts without a substitution function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .errors import EngineError
from .grammar import Grammar
from .matching import Bindings, matches
from .terms import (
    HOLE,
    CtxTerm,
    InHolePat,
    ListPat,
    ListTerm,
    Literal,
    NamePat,
    Pattern,
    Term,
    plug,
)


class UnboundTemplateVariableError(EngineError):
    """A template references a variable the bindings do not supply."""


class TemplateContextError(EngineError):
    """The context slot of an in-hole template produced a non-context."""


@dataclass(frozen=True)
class LitTemplate:
    lit: Literal


@dataclass(frozen=True)
class HoleTemplate:
    """Instantiates to a bare hole context term."""


@dataclass(frozen=True)
class ListTemplate:
    items: tuple["Template", ...]


@dataclass(frozen=True)
class RefTemplate:
    """Instantiates to the term bound to the variable."""

    var: str


@dataclass(frozen=True)
class InHoleTemplate:
    """Plugs the instantiated body into the instantiated context."""

    context: "Template"
    body: "Template"


Template = Union[LitTemplate, HoleTemplate, ListTemplate, RefTemplate, InHoleTemplate]


def template_vars(tpl: Template) -> set[str]:
    if isinstance(tpl, RefTemplate):
        return {tpl.var}
    if isinstance(tpl, ListTemplate):
        out: set[str] = set()
        for item in tpl.items:
            out |= template_vars(item)
        return out
    if isinstance(tpl, InHoleTemplate):
        return template_vars(tpl.context) | template_vars(tpl.body)
    return set()


def pattern_binding_vars(p: Pattern) -> set[str]:
    if isinstance(p, NamePat):
        return {p.var} | pattern_binding_vars(p.pattern)
    if isinstance(p, ListPat):
        out: set[str] = set()
        for item in p.items:
            out |= pattern_binding_vars(item)
        return out
    if isinstance(p, InHolePat):
        return pattern_binding_vars(p.context_pat) | pattern_binding_vars(p.hole_pat)
    return set()


@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Pattern
    rhs: Template

    def __post_init__(self) -> None:
        free = template_vars(self.rhs) - pattern_binding_vars(self.lhs)
        if free:
            raise UnboundTemplateVariableError(
                f"rule {self.name!r} uses unbound template variable(s): "
                + ", ".join(sorted(free))
            )


def instantiate(tpl: Template, bindings: Bindings) -> Term:
    """Build the term a template denotes under the given bindings."""
    if isinstance(tpl, LitTemplate):
        return tpl.lit
    if isinstance(tpl, HoleTemplate):
        return CtxTerm(HOLE)
    if isinstance(tpl, RefTemplate):
        value = bindings.get(tpl.var)
        if value is None:
            raise UnboundTemplateVariableError(
                f"template variable {tpl.var!r} is unbound"
            )
        return value
    if isinstance(tpl, ListTemplate):
        return ListTerm(tuple(instantiate(item, bindings) for item in tpl.items))
    ctx_term = instantiate(tpl.context, bindings)
    if not isinstance(ctx_term, CtxTerm):
        raise TemplateContextError(
            "the context slot of an in-hole template must instantiate to a context"
        )
    return plug(ctx_term.context, instantiate(tpl.body, bindings))


def apply_rule(grammar: Grammar, rule: Rule, term: Term, **kwargs) -> list[Term]:
    """All reducts of term under one rule, deduplicated, deterministic."""
    out: list[Term] = []
    seen: set[Term] = set()
    for b in sorted(matches(grammar, term, rule.lhs, **kwargs), key=repr):
        reduct = instantiate(rule.rhs, b)
        if reduct not in seen:
            seen.add(reduct)
            out.append(reduct)
    return out


def step(
    grammar: Grammar, rules: list[Rule], term: Term, **kwargs
) -> list[tuple[str, Term]]:
    """One-step reducts under all rules, tagged with the rule name."""
    out: list[tuple[str, Term]] = []
    for rule in rules:
        out.extend((rule.name, t2) for t2 in apply_rule(grammar, rule, term, **kwargs))
    return out


NORMAL_FORM = "normal-form"
CUTOFF = "cutoff"
CYCLE = "cycle"
REDUCED = "reduced"


@dataclass
class Trace:
    """Breadth-first reduction graph up to a depth bound.

    nodes[i] is the i-th term discovered; statuses[i] is 'reduced' for
    expanded interior nodes and a leaf status otherwise; edges hold
    (source, rule name, target) triples.
    """

    nodes: list[Term] = field(default_factory=list)
    statuses: list[str] = field(default_factory=list)
    edges: list[tuple[int, str, int]] = field(default_factory=list)


def trace(
    grammar: Grammar, rules: list[Rule], term: Term, max_steps: int, **kwargs
) -> Trace:
    """Expand the reduction graph from term, at most max_steps layers deep.

    A successor term equal to an already-discovered one becomes a 'cycle'
    leaf and is not expanded again.  Unexpanded terms at the depth bound
    are marked 'cutoff' unless they are normal forms.
    """
    tr = Trace(nodes=[term], statuses=["pending"], edges=[])
    seen: set[Term] = {term}
    frontier = [0]
    for _ in range(max_steps):
        if not frontier:
            break
        next_frontier: list[int] = []
        for i in frontier:
            successors = step(grammar, rules, tr.nodes[i], **kwargs)
            if not successors:
                tr.statuses[i] = NORMAL_FORM
                continue
            tr.statuses[i] = REDUCED
            for rule_name, t2 in successors:
                j = len(tr.nodes)
                tr.nodes.append(t2)
                tr.edges.append((i, rule_name, j))
                if t2 in seen:
                    tr.statuses.append(CYCLE)
                else:
                    seen.add(t2)
                    tr.statuses.append("pending")
                    next_frontier.append(j)
        frontier = next_frontier
    for i in frontier:
        successors = step(grammar, rules, tr.nodes[i], **kwargs)
        tr.statuses[i] = NORMAL_FORM if not successors else CUTOFF
    return tr
