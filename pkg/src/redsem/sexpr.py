"""S-expression reader and canonical printer."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EngineError


class ParseError(EngineError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Atom:
    text: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SList:
    items: tuple["SExpr", ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


SExpr = Atom | SList

_DELIMS = "()"
_WHITESPACE = " \t\r\n"


class _Tokenizer:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self) -> str:
        ch = self.src[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def tokens(self):
        while self.pos < len(self.src):
            line, col = self.line, self.col
            ch = self.src[self.pos]
            if ch in _WHITESPACE:
                self._advance()
                continue
            if ch == ";":
                while self.pos < len(self.src) and self.src[self.pos] != "\n":
                    self._advance()
                continue
            if ch in _DELIMS:
                self._advance()
                yield ch, ch, line, col
                continue
            chars: list[str] = []
            while self.pos < len(self.src) and self.src[self.pos] not in (
                _WHITESPACE + _DELIMS + ";"
            ):
                chars.append(self._advance())
            yield "atom", "".join(chars), line, col


def parse_sexprs(src: str) -> list[SExpr]:
    """Parse all top-level s-expressions in src."""
    tok = _Tokenizer(src)
    stack: list[tuple[list[SExpr], int, int]] = []
    top: list[SExpr] = []
    for kind, text, line, col in tok.tokens():
        if kind == "(":
            stack.append(([], line, col))
        elif kind == ")":
            if not stack:
                raise ParseError("unbalanced ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
            (stack[-1][0] if stack else top).append(node)
        else:
            node = Atom(text, line, col)
            (stack[-1][0] if stack else top).append(node)
    if stack:
        _, l0, c0 = stack[-1]
        raise ParseError("unbalanced '(': missing ')'", l0, c0)
    return top


def parse_sexpr(src: str) -> SExpr:
    """Parse exactly one s-expression; reject empty or trailing input."""
    exprs = parse_sexprs(src)
    if not exprs:
        raise ParseError("empty input", 1, 1)
    if len(exprs) > 1:
        raise ParseError("trailing input after expression", exprs[1].line, exprs[1].col)
    return exprs[0]


def print_sexpr(e: SExpr) -> str:
    if isinstance(e, Atom):
        return e.text
    return "(" + " ".join(print_sexpr(item) for item in e.items) + ")"
