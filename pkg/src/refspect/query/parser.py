"""Recursive-descent parser for the boolean query language.

Grammar (operators case-insensitive, NOT > AND > OR, parens override)::

    TOP    := QUERY (REFINED BY [EXCLUDING] FACET (':'|'=') '(' VALUES ')')*
    QUERY  := ANDQ (OR ANDQ)*
    ANDQ   := NOTQ (AND NOTQ)*
    NOTQ   := CLAUSE (NOT CLAUSE)*
    CLAUSE := FIELD (':'|'=') '(' TOP ')'
            | FIELD (':'|'=') CLAUSE        -- unparenthesized single clause
            | '"' PHRASE '"'
            | TERM ['*']
            | '#' NAME
            | '(' TOP ')'
    FIELD  := TS | TI | TOPIC | TITLE
    VALUES := VALUE (OR VALUE)*             -- a VALUE may span several words

`*` is legal only at the very end of a term. Facet names accept the display
labels (DOCUMENT TYPES, WEB OF SCIENCE CATEGORIES, SUBJECT CATEGORIES,
PUBLICATION YEARS, TIMESPAN) as well as the internal snake_case names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import FACETS, And, FieldScope, Node, Not, Or, Phrase, Refine, SetRef, Term

_FIELD_CANON = {"TS": "TOPIC", "TOPIC": "TOPIC", "TI": "TITLE", "TITLE": "TITLE"}
_FACET_CANON = {
    "DOCUMENT TYPES": "doc_type",
    "DOC_TYPE": "doc_type",
    "WEB OF SCIENCE CATEGORIES": "subject_category",
    "SUBJECT CATEGORIES": "subject_category",
    "SUBJECT_CATEGORY": "subject_category",
    "PUBLICATION YEARS": "pub_year",
    "PUB_YEAR": "pub_year",
    "TIMESPAN": "timespan",
}
_WORD_BREAK = set(' \t\r\n()":=')


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class _Token:
    kind: str  # LPAREN RPAREN COLON QUOTED SETREF WORD END
    text: str
    offset: int

    def is_op(self, *names: str) -> bool:
        return self.kind == "WORD" and self.text.upper() in names


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("LPAREN", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, i))
            i += 1
        elif ch in ":=":
            tokens.append(_Token("COLON", ch, i))
            i += 1
        elif ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError("unterminated quote", i)
            tokens.append(_Token("QUOTED", text[i + 1 : end], i))
            i = end + 1
        elif ch == "#":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            if j == i + 1:
                raise ParseError("empty set reference", i)
            tokens.append(_Token("SETREF", text[i:j], i))
            i = j
        else:
            j = i
            while j < n and text[j] not in _WORD_BREAK and text[j] != "#":
                j += 1
            word = text[i:j]
            star = word.find("*")
            if 0 <= star < len(word) - 1:
                raise ParseError("wildcard is only allowed at the end of a term", i + star)
            tokens.append(_Token("WORD", word, i))
            i = j
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "END":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.offset)
        return tok

    # -- grammar levels ----------------------------------------------------

    def parse_top(self) -> Node:
        node = self.parse_or()
        while self.peek().is_op("REFINED"):
            node = self.parse_refine(node)
        return node

    def parse_or(self) -> Node:
        children = [self.parse_and()]
        while self.peek().is_op("OR"):
            self.take()
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> Node:
        children = [self.parse_not()]
        while self.peek().is_op("AND"):
            self.take()
            children.append(self.parse_not())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_not(self) -> Node:
        node = self.parse_clause()
        while self.peek().is_op("NOT"):
            self.take()
            node = Not(node, self.parse_clause())
        return node

    def parse_clause(self) -> Node:
        tok = self.take()
        if tok.kind == "LPAREN":
            node = self.parse_top()
            self.expect("RPAREN", "')'")
            return node
        if tok.kind == "QUOTED":
            if not tok.text.strip():
                raise ParseError("empty phrase", tok.offset)
            return Phrase(tok.text)
        if tok.kind == "SETREF":
            return SetRef(tok.text)
        if tok.kind == "WORD":
            upper = tok.text.upper()
            if upper in _FIELD_CANON and self.peek().kind == "COLON":
                self.take()
                field = _FIELD_CANON[upper]
                if self.peek().kind == "LPAREN":
                    self.take()
                    child = self.parse_top()
                    self.expect("RPAREN", "')'")
                else:
                    child = self.parse_clause()
                return FieldScope(field, child)
            if upper in ("AND", "OR", "NOT", "REFINED"):
                raise ParseError("empty clause before operator", tok.offset)
            if tok.text.endswith("*"):
                stem = tok.text[:-1]
                if not stem:
                    raise ParseError("wildcard needs a stem", tok.offset)
                return Term(stem, wildcard=True)
            return Term(tok.text)
        raise ParseError("expected a clause", tok.offset)

    def parse_refine(self, child: Node) -> Refine:
        self.take()  # REFINED
        if not self.peek().is_op("BY"):
            raise ParseError("expected BY after REFINED", self.peek().offset)
        self.take()
        mode = "include"
        if self.peek().is_op("EXCLUDING"):
            self.take()
            mode = "exclude"
        words: list[str] = []
        while self.peek().kind == "WORD":
            words.append(self.take().text)
        facet_raw = " ".join(words).strip()
        facet = _FACET_CANON.get(facet_raw.upper(), facet_raw.lower() if facet_raw.lower() in FACETS else None)
        if facet is None:
            raise ParseError(f"unknown facet {facet_raw!r}", self.peek().offset)
        self.expect("COLON", "':' after facet name")
        self.expect("LPAREN", "'(' before facet values")
        values = self.parse_values()
        self.expect("RPAREN", "')' after facet values")
        return Refine(child, facet, mode, tuple(values))

    def parse_values(self) -> list[str]:
        values: list[str] = []
        current: list[str] = []
        while True:
            tok = self.peek()
            if tok.kind == "RPAREN" or tok.kind == "END":
                break
            if tok.is_op("OR"):
                self.take()
                if not current:
                    raise ParseError("empty facet value", tok.offset)
                values.append(" ".join(current))
                current = []
                continue
            if tok.kind == "QUOTED":
                self.take()
                current.append(tok.text)
                continue
            if tok.kind == "WORD":
                self.take()
                current.append(tok.text)
                continue
            raise ParseError("unexpected token in facet values", tok.offset)
        if current:
            values.append(" ".join(current))
        if not values:
            raise ParseError("facet value list is empty", self.peek().offset)
        return values


def parse_query(text: str) -> Node:
    parser = _Parser(text)
    if parser.peek().kind == "END":
        raise ParseError("empty query", 0)
    node = parser.parse_top()
    trailing = parser.peek()
    if trailing.kind != "END":
        raise ParseError(f"unexpected {trailing.text!r}", trailing.offset)
    return node
