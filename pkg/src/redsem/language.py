"""Text syntax for terms, patterns, templates, and language files.

Terms and patterns share one s-expression surface.  In pattern position
the head symbols `name`, `nt`, and `in-hole` and the atom `hole` are
reserved; in term position only `hole` is.  A language file is one
`(define-language <name> (<nt> <pat> ...) ...)` form followed by any
number of `(rule <name> <lhs> <rhs>)` forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import EngineError
from .grammar import Grammar, Production, new_grammar
from .matching import Bindings
from .reduction import (
    HoleTemplate,
    InHoleTemplate,
    ListTemplate,
    LitTemplate,
    RefTemplate,
    Rule,
    Template,
)
from .sexpr import Atom, ParseError, SExpr, SList, parse_sexpr, parse_sexprs
from .terms import (
    HOLE,
    HOLE_PAT,
    HOLE_TERM,
    Context,
    CtxTerm,
    HeadCtx,
    Hole,
    HolePat,
    InHolePat,
    ListContext,
    ListPat,
    ListTerm,
    Literal,
    LitPat,
    NamePat,
    NtPat,
    Pattern,
    TailCtx,
    Term,
    subpatterns,
)


class NoHoleError(EngineError):
    """The term converted to a context contains no hole."""


class MultipleHolesError(EngineError):
    """The term converted to a context contains more than one hole."""


class LanguageError(EngineError):
    """A language file is malformed."""


_INT_RE = re.compile(r"^[+-]?[0-9]+$")
_PATTERN_KEYWORDS = ("name", "nt", "in-hole")
_TEMPLATE_KEYWORDS = ("ref", "in-hole")


def _atom_literal(a: Atom) -> Literal:
    if a.text == "#t":
        return Literal(True)
    if a.text == "#f":
        return Literal(False)
    if _INT_RE.match(a.text):
        return Literal(int(a.text))
    return Literal(a.text)


def print_literal(lit: Literal) -> str:
    if lit.value is True:
        return "#t"
    if lit.value is False:
        return "#f"
    return str(lit.value)


def _sexpr_term(e: SExpr) -> Term:
    if isinstance(e, Atom):
        if e.text == "hole":
            return HOLE_TERM
        return _atom_literal(e)
    return ListTerm(tuple(_sexpr_term(item) for item in e.items))


def parse_term(src: str) -> Term:
    return _sexpr_term(parse_sexpr(src))


def print_term(t: Term) -> str:
    if isinstance(t, Literal):
        return print_literal(t)
    if isinstance(t, ListTerm):
        return "(" + " ".join(print_term(item) for item in t.items) + ")"
    return print_context(t.context)


def print_context(c: Context) -> str:
    if isinstance(c, Hole):
        return "hole"
    return "(" + " ".join(_context_elements(c)) + ")"


def _context_elements(lc: ListContext) -> list[str]:
    if isinstance(lc, HeadCtx):
        return [print_context(lc.hole_side)] + [print_term(t) for t in lc.tail]
    return [print_term(lc.head)] + _context_elements(lc.rest)


def _count_holes(t: Term) -> int:
    if isinstance(t, ListTerm):
        return sum(_count_holes(item) for item in t.items)
    if isinstance(t, CtxTerm):
        return 1 if isinstance(t.context, Hole) else 0
    return 0


def to_context(t: Term) -> Context:
    """Interpret a term with exactly one hole as a context.

    The head/tail tags of the result encode the path to the hole, so
    plugging the hole term back reprints as the original source.
    """
    if isinstance(t, CtxTerm):
        return t.context
    n = _count_holes(t)
    if n == 0:
        raise NoHoleError("the term contains no hole")
    if n > 1:
        raise MultipleHolesError(f"the term contains {n} holes, expected exactly 1")
    return _build_context(t)


def _build_context(t: Term) -> Context:
    if t == HOLE_TERM:
        return HOLE
    assert isinstance(t, ListTerm)
    for i, item in enumerate(t.items):
        if _count_holes(item) == 1:
            ctx: Context = HeadCtx(_build_context(item), t.items[i + 1 :])
            for head in reversed(t.items[:i]):
                ctx = TailCtx(head, ctx)  # type: ignore[arg-type]
            return ctx
    raise NoHoleError("the term contains no hole")


def _sexpr_pattern(e: SExpr) -> Pattern:
    if isinstance(e, Atom):
        if e.text == "hole":
            return HOLE_PAT
        if e.text in _PATTERN_KEYWORDS:
            raise ParseError(
                f"reserved word {e.text!r} cannot be a literal pattern", e.line, e.col
            )
        return LitPat(_atom_literal(e))
    if e.items and isinstance(e.items[0], Atom):
        head = e.items[0].text
        if head == "name":
            if len(e.items) != 3:
                raise ParseError(
                    f"arity error: (name x p) takes 2 arguments, got {len(e.items) - 1}",
                    e.line,
                    e.col,
                )
            var = e.items[1]
            if not isinstance(var, Atom) or not isinstance(
                _atom_literal(var).value, str
            ):
                raise ParseError("(name x p) needs a symbol for x", e.line, e.col)
            return NamePat(var.text, _sexpr_pattern(e.items[2]))
        if head == "nt":
            if len(e.items) != 2:
                raise ParseError(
                    f"arity error: (nt n) takes 1 argument, got {len(e.items) - 1}",
                    e.line,
                    e.col,
                )
            nt = e.items[1]
            if not isinstance(nt, Atom) or not isinstance(_atom_literal(nt).value, str):
                raise ParseError("(nt n) needs a symbol for n", e.line, e.col)
            return NtPat(nt.text)
        if head == "in-hole":
            if len(e.items) != 3:
                raise ParseError(
                    f"arity error: (in-hole pc ph) takes 2 arguments, "
                    f"got {len(e.items) - 1}",
                    e.line,
                    e.col,
                )
            return InHolePat(_sexpr_pattern(e.items[1]), _sexpr_pattern(e.items[2]))
    return ListPat(tuple(_sexpr_pattern(item) for item in e.items))


def parse_pattern(src: str) -> Pattern:
    return _sexpr_pattern(parse_sexpr(src))


def print_pattern(p: Pattern) -> str:
    if isinstance(p, LitPat):
        return print_literal(p.lit)
    if isinstance(p, HolePat):
        return "hole"
    if isinstance(p, ListPat):
        return "(" + " ".join(print_pattern(item) for item in p.items) + ")"
    if isinstance(p, NamePat):
        return f"(name {p.var} {print_pattern(p.pattern)})"
    if isinstance(p, NtPat):
        return f"(nt {p.name})"
    return f"(in-hole {print_pattern(p.context_pat)} {print_pattern(p.hole_pat)})"


def _sexpr_template(e: SExpr) -> Template:
    if isinstance(e, Atom):
        if e.text == "hole":
            return HoleTemplate()
        if e.text in _TEMPLATE_KEYWORDS:
            raise ParseError(
                f"reserved word {e.text!r} cannot be a literal template", e.line, e.col
            )
        return LitTemplate(_atom_literal(e))
    if e.items and isinstance(e.items[0], Atom):
        head = e.items[0].text
        if head == "ref":
            if len(e.items) != 2 or not isinstance(e.items[1], Atom):
                raise ParseError(
                    "arity error: (ref x) takes 1 symbol argument", e.line, e.col
                )
            return RefTemplate(e.items[1].text)
        if head == "in-hole":
            if len(e.items) != 3:
                raise ParseError(
                    f"arity error: (in-hole c t) takes 2 arguments, "
                    f"got {len(e.items) - 1}",
                    e.line,
                    e.col,
                )
            return InHoleTemplate(_sexpr_template(e.items[1]), _sexpr_template(e.items[2]))
    return ListTemplate(tuple(_sexpr_template(item) for item in e.items))


def parse_template(src: str) -> Template:
    return _sexpr_template(parse_sexpr(src))


def print_template(tpl: Template) -> str:
    if isinstance(tpl, LitTemplate):
        return print_literal(tpl.lit)
    if isinstance(tpl, HoleTemplate):
        return "hole"
    if isinstance(tpl, ListTemplate):
        return "(" + " ".join(print_template(item) for item in tpl.items) + ")"
    if isinstance(tpl, RefTemplate):
        return f"(ref {tpl.var})"
    return f"(in-hole {print_template(tpl.context)} {print_template(tpl.body)})"


def print_bindings(b: Bindings) -> str:
    return (
        "(bindings"
        + "".join(f" ({var} {print_term(value)})" for var, value in b.entries)
        + ")"
    )


@dataclass(frozen=True)
class LanguageDef:
    name: str
    grammar: Grammar
    rules: tuple[Rule, ...]


def _check_nonterminals(defined: set[str], p: Pattern, where: str) -> None:
    for sp in subpatterns(p):
        if isinstance(sp, NtPat) and sp.name not in defined:
            raise LanguageError(f"undefined non-terminal {sp.name!r} in {where}")


def check_pattern_nonterminals(grammar: Grammar, p: Pattern) -> None:
    """Raise LanguageError if p references a non-terminal the grammar lacks."""
    defined = {prod.nonterminal for prod in grammar.productions}
    _check_nonterminals(defined, p, "the pattern")


def parse_language(src: str) -> LanguageDef:
    forms = parse_sexprs(src)
    if not forms:
        raise LanguageError("missing (define-language ...) form")
    head = forms[0]
    if (
        not isinstance(head, SList)
        or not head.items
        or head.items[0] != Atom("define-language")
    ):
        raise LanguageError("the first form must be (define-language ...)")
    if len(head.items) < 2 or not isinstance(head.items[1], Atom):
        raise LanguageError("define-language needs a name")
    name = head.items[1].text

    productions: list[Production] = []
    for clause in head.items[2:]:
        if (
            not isinstance(clause, SList)
            or len(clause.items) < 2
            or not isinstance(clause.items[0], Atom)
        ):
            raise LanguageError(
                "each grammar clause must be (<nonterminal> <pattern> ...)"
            )
        nt = clause.items[0].text
        for rhs in clause.items[1:]:
            productions.append(Production(nt, _sexpr_pattern(rhs)))
    grammar = new_grammar(productions)
    defined = {p.nonterminal for p in grammar.productions}
    for prod in grammar.productions:
        _check_nonterminals(
            defined, prod.pattern, f"the productions of {prod.nonterminal!r}"
        )

    rules: list[Rule] = []
    for form in forms[1:]:
        if (
            not isinstance(form, SList)
            or len(form.items) != 4
            or form.items[0] != Atom("rule")
            or not isinstance(form.items[1], Atom)
        ):
            raise LanguageError("each rule must be (rule <name> <lhs> <rhs>)")
        rule_name = form.items[1].text
        lhs = _sexpr_pattern(form.items[2])
        _check_nonterminals(defined, lhs, f"rule {rule_name!r}")
        rules.append(Rule(rule_name, lhs, _sexpr_template(form.items[3])))

    return LanguageDef(name, grammar, tuple(rules))


def load_language(path: str) -> LanguageDef:
    with open(path, encoding="utf-8") as f:
        return parse_language(f.read())
