"""Textual front end for defeasible theories and tagged conclusions.

Concrete syntax (`.dl` files):

    emu(ethel).  bird(tweety).          % facts
    r1: emu(X) -> bird(X).              % strict rule
    r2: bird(X) => flies(X).            % defeasible rule
    r3: heavy(X) ~> ~flies(X).          % defeater
    r5: => heavy(ethel).                % empty body is allowed
    r4 > r2.                            % superiority

`~` is classical negation, `%` starts a line comment, constants begin with a
lowercase letter and variables with an uppercase one.  Labels are optional;
unlabeled rules get generated labels `_r1`, `_r2`, ... in file order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (
    Atom,
    Literal,
    Rule,
    RuleKind,
    SourceTheory,
    Tag,
    TaggedConclusion,
    ARROWS,
    is_variable,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, token: str = ""):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.token = token


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<WS>\s+)
  | (?P<COMMENT>%[^\n]*)
  | (?P<ARROW>->|=>|~>)
  | (?P<TILDE>~)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<COMMA>,)
  | (?P<DOT>\.)
  | (?P<COLON>:)
  | (?P<GT>>)
  | (?P<LIDENT>[a-z]\w*)
  | (?P<UIDENT>[A-Z]\w*)
    """,
    re.VERBOSE,
)

_ARROW_KIND = {arrow: kind for kind, arrow in ARROWS.items()}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, text[pos])
        kind = m.lastgroup
        value = m.group()
        if kind not in ("WS", "COMMENT"):
            tokens.append(_Token(kind, value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.arities: dict[str, tuple[int, _Token]] = {}
        self.auto_label = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(
                f"expected {what}, found {tok.text or 'end of input'!r}",
                tok.line, tok.column, tok.text,
            )
        return tok

    def fail(self, message: str, tok: _Token):
        raise ParseError(message, tok.line, tok.column, tok.text)

    def theory(self) -> SourceTheory:
        facts: list[Literal] = []
        rules: list[Rule] = []
        sup: list[tuple[str, str]] = []
        while self.peek().kind != "EOF":
            self.statement(facts, rules, sup)
        return SourceTheory(tuple(facts), tuple(rules), tuple(sup))

    def statement(self, facts, rules, sup):
        tok = self.peek()
        if tok.kind == "ARROW":
            rules.append(self.rule_tail(None, []))
            return
        if tok.kind == "LIDENT" and self.peek(1).kind == "COLON":
            label = self.next().text
            self.next()  # colon
            body = [] if self.peek().kind == "ARROW" else self.body()
            rules.append(self.rule_tail(label, body))
            return
        if tok.kind == "LIDENT" and self.peek(1).kind == "GT":
            hi = self.next().text
            self.next()  # >
            lo = self.expect("LIDENT", "a rule label").text
            self.expect("DOT", "'.'")
            sup.append((hi, lo))
            return
        first = self.literal()
        nxt = self.peek()
        if nxt.kind == "DOT":
            self.next()
            if not first.is_ground():
                self.fail(f"fact {first} contains a variable", tok)
            facts.append(first)
            return
        body = [first]
        while self.peek().kind == "COMMA":
            self.next()
            body.append(self.literal())
        rules.append(self.rule_tail(None, body))

    def rule_tail(self, label, body) -> Rule:
        arrow = self.expect("ARROW", "an arrow ('->', '=>' or '~>')")
        head = self.literal()
        self.expect("DOT", "'.'")
        if label is None:
            self.auto_label += 1
            label = f"_r{self.auto_label}"
        return Rule(label, _ARROW_KIND[arrow.text], tuple(body), head)

    def body(self) -> list[Literal]:
        out = [self.literal()]
        while self.peek().kind == "COMMA":
            self.next()
            out.append(self.literal())
        return out

    def literal(self) -> Literal:
        positive = True
        if self.peek().kind == "TILDE":
            self.next()
            positive = False
        return Literal(positive, self.atom())

    def atom(self) -> Atom:
        name = self.expect("LIDENT", "a predicate name")
        args: list[str] = []
        if self.peek().kind == "LPAREN":
            self.next()
            args.append(self.term())
            while self.peek().kind == "COMMA":
                self.next()
                args.append(self.term())
            self.expect("RPAREN", "')'")
        known = self.arities.get(name.text)
        if known is not None and known[0] != len(args):
            self.fail(
                f"arity clash for {name.text}: {len(args)} here, "
                f"{known[0]} at {known[1].line}:{known[1].column}",
                name,
            )
        self.arities.setdefault(name.text, (len(args), name))
        return Atom(name.text, tuple(args))

    def term(self) -> str:
        tok = self.next()
        if tok.kind not in ("LIDENT", "UIDENT"):
            self.fail(f"expected a term, found {tok.text or 'end of input'!r}", tok)
        return tok.text


def parse_theory(text: str) -> SourceTheory:
    """Parse a `.dl` document.  Malformed input raises a located ParseError."""
    return _Parser(text).theory()


_TAGS = {t.value: t for t in Tag}


def parse_conclusion(text: str) -> TaggedConclusion:
    """Parse a tagged conclusion such as `+d flies(tweety)` or `-D ~heavy(e)`."""
    stripped = text.strip()
    if len(stripped) < 2 or stripped[:2] not in _TAGS:
        raise ParseError(f"unknown tag in {stripped!r} (expected +D, -D, +d or -d)", 1, 1, stripped[:2])
    tag = _TAGS[stripped[:2]]
    p = _Parser(stripped[2:])
    literal = p.literal()
    trailing = p.peek()
    if trailing.kind != "EOF":
        p.fail(f"unexpected {trailing.text!r} after literal", trailing)
    if not literal.is_ground():
        raise ParseError(f"conclusion literal {literal} is not ground", 1, 3, str(literal))
    return TaggedConclusion(tag, literal)


def render_theory(t: SourceTheory) -> str:
    """Canonical text form; `parse_theory(render_theory(t))` equals `t`."""
    lines = [f"{fact}." for fact in t.facts]
    lines += [str(rule) for rule in t.rules]
    lines += [f"{hi} > {lo}." for hi, lo in t.superiority]
    return "\n".join(lines) + ("\n" if lines else "")
