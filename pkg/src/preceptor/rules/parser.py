"""Recursive-descent parser for the textual fuzzy rule language.

One rule per line::

    IF <expr> THEN <variable> IS <label> [;]

Keywords (IF/THEN/IS/AND/OR) are case-insensitive; variable names are single
identifiers; labels are identifiers or double-quoted strings (quoting allows
embedded spaces). AND binds tighter than OR, parentheses group, and the atom
shorthand ``X IS A OR B`` expands to ``X IS A OR X IS B``. ``#`` starts a
comment running to the end of the line.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .model import And, Atom, Diagnostic, Node, Or, Rule, RuleBase, has_errors
from .printer import pretty_print

KEYWORDS = frozenset({"IF", "THEN", "IS", "AND", "OR"})


class ParseError(Exception):
    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.message = message
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | STRING | LPAREN | RPAREN | SEMI | EOL
    value: str
    column: int

    @property
    def keyword(self) -> str | None:
        if self.kind == "IDENT" and self.value.upper() in KEYWORDS:
            return self.value.upper()
        return None


@dataclass(frozen=True)
class ParseResult:
    """Outcome of a parse: a rule base when error-free, diagnostics always."""

    rule_base: RuleBase | None
    diagnostics: tuple[Diagnostic, ...]

    @property
    def ok(self) -> bool:
        return self.rule_base is not None


def _tokenize_line(line: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(line)
    while i < n:
        ch = line[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            tokens.append(Token("LPAREN", "(", i + 1))
            i += 1
        elif ch == ")":
            tokens.append(Token("RPAREN", ")", i + 1))
            i += 1
        elif ch == ";":
            tokens.append(Token("SEMI", ";", i + 1))
            i += 1
        elif ch == '"':
            end = line.find('"', i + 1)
            if end < 0:
                raise ParseError("unterminated quoted label", i + 1)
            tokens.append(Token("STRING", line[i + 1 : end].strip(), i + 1))
            i = end + 1
        elif ch.isalpha() or ch == "_":
            start = i
            while i < n and (line[i].isalnum() or line[i] == "_"):
                i += 1
            tokens.append(Token("IDENT", line[start:i], start + 1))
        else:
            raise ParseError(f"unexpected character {ch!r}", i + 1)
    tokens.append(Token("EOL", "", n + 1))
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != "EOL":
            self.pos += 1
        return token

    def expect_keyword(self, keyword: str) -> Token:
        token = self.next()
        if token.keyword != keyword:
            raise ParseError(f"expected {keyword}, found {token.value or 'end of line'!r}", token.column)
        return token

    def parse_rule(self, rule_id: int) -> Rule:
        self.expect_keyword("IF")
        antecedent = self.parse_expr()
        self.expect_keyword("THEN")
        variable = self.parse_identifier("consequent variable")
        self.expect_keyword("IS")
        label = self.parse_label()
        if self.peek().kind == "SEMI":
            self.next()
        tail = self.peek()
        if tail.kind != "EOL":
            raise ParseError(f"unexpected trailing input {tail.value!r}", tail.column)
        return Rule(rule_id, antecedent, variable, label)

    def parse_expr(self) -> Node:
        parts = [self.parse_conj()]
        while self.peek().keyword == "OR":
            self.next()
            parts.append(self.parse_conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_conj(self) -> Node:
        parts = [self.parse_atom()]
        while self.peek().keyword == "AND":
            self.next()
            parts.append(self.parse_atom())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def parse_atom(self) -> Node:
        if self.peek().kind == "LPAREN":
            self.next()
            inner = self.parse_expr()
            token = self.next()
            if token.kind != "RPAREN":
                raise ParseError("expected ')'", token.column)
            return inner
        variable = self.parse_identifier("variable")
        self.expect_keyword("IS")
        labels = [self.parse_label()]
        # Shorthand: "X IS A OR B" continues with labels as long as the token
        # after OR is not itself the start of a new atom or group.
        while self.peek().keyword == "OR" and self._shorthand_continues():
            self.next()
            labels.append(self.parse_label())
        if len(labels) == 1:
            return Atom(variable, labels[0])
        return Or(tuple(Atom(variable, label) for label in labels))

    def _shorthand_continues(self) -> bool:
        after_or = self.peek(1)
        if after_or.kind == "STRING":
            return self.peek(2).keyword != "IS"
        if after_or.kind == "IDENT" and after_or.keyword is None:
            return self.peek(2).keyword != "IS"
        return False

    def parse_identifier(self, what: str) -> str:
        token = self.next()
        if token.kind != "IDENT" or token.keyword is not None:
            raise ParseError(f"expected {what} name, found {token.value or 'end of line'!r}", token.column)
        return token.value

    def parse_label(self) -> str:
        token = self.next()
        if token.kind == "STRING":
            return token.value
        if token.kind == "IDENT" and token.keyword is None:
            return token.value.strip()
        raise ParseError(f"expected label, found {token.value or 'end of line'!r}", token.column)


def parse_rules(text: str) -> ParseResult:
    """Parse rule text; every input yields a rule base or at least one error."""
    diagnostics: list[Diagnostic] = []
    rules: list[Rule] = []
    rule_id = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            tokens = _tokenize_line(line)
        except ParseError as exc:
            diagnostics.append(Diagnostic("error", exc.message, line_no, exc.column))
            continue
        if tokens[0].kind == "EOL":
            continue
        rule_id += 1
        try:
            rules.append(_LineParser(tokens).parse_rule(rule_id))
        except ParseError as exc:
            diagnostics.append(
                Diagnostic("error", exc.message, line_no, exc.column, rule_id)
            )
    if not rules and not has_errors(diagnostics):
        diagnostics.append(Diagnostic("error", "empty rule file", 1, 1))
    if has_errors(diagnostics):
        return ParseResult(None, tuple(diagnostics))
    rule_base = RuleBase(tuple(rules), source_hash=canonical_hash(rules))
    return ParseResult(rule_base, tuple(diagnostics))


def canonical_hash(rules: list[Rule] | tuple[Rule, ...]) -> str:
    canonical = pretty_print(rules)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
