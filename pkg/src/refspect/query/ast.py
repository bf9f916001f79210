"""Query syntax tree and its canonical text form.

The printer and parser are inverses up to structural equality:
``parse_query(to_text(node)) == node`` for every well-formed tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

#: Facet enum used by Refine nodes.
FACETS = ("doc_type", "subject_category", "pub_year", "timespan")

#: Canonical display label per facet, accepted back by the parser.
FACET_LABELS = {
    "doc_type": "DOCUMENT TYPES",
    "subject_category": "WEB OF SCIENCE CATEGORIES",
    "pub_year": "PUBLICATION YEARS",
    "timespan": "TIMESPAN",
}


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Term(Node):
    text: str
    wildcard: bool = False


@dataclass(frozen=True)
class Phrase(Node):
    text: str


@dataclass(frozen=True)
class SetRef(Node):
    name: str  # includes the leading '#'


@dataclass(frozen=True)
class FieldScope(Node):
    field: str  # 'TOPIC' or 'TITLE'
    child: Node


@dataclass(frozen=True)
class And(Node):
    children: tuple[Node, ...]


@dataclass(frozen=True)
class Or(Node):
    children: tuple[Node, ...]


@dataclass(frozen=True)
class Not(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Refine(Node):
    child: Node
    facet: str  # one of FACETS
    mode: str  # 'include' or 'exclude'
    values: tuple[str, ...]


# single spaces only: any other whitespace must round-trip through quotes
_PLAIN_VALUE_RE = re.compile(r"^[^\s()\"#:=*]+( [^\s()\"#:=*]+)*$")
_OPERATOR_WORDS = {"AND", "OR", "NOT", "REFINED", "BY", "EXCLUDING"}


def _value_text(value: str) -> str:
    plain = bool(_PLAIN_VALUE_RE.match(value))
    if plain and not (_OPERATOR_WORDS & {w.upper() for w in value.split()}):
        return value
    return f'"{value}"'


def to_text(node: Node) -> str:
    """Canonical query text for a tree; reparses to an equal tree."""
    if isinstance(node, Term):
        return node.text + ("*" if node.wildcard else "")
    if isinstance(node, Phrase):
        return f'"{node.text}"'
    if isinstance(node, SetRef):
        return node.name
    if isinstance(node, FieldScope):
        return f"{node.field}:({to_text(node.child)})"
    if isinstance(node, Not):
        # NOT binds tightest and is left-associative: the left side may be a
        # bare NOT chain, while anything looser needs parentheses, and the
        # right side must print as a single clause
        left = to_text(node.left)
        if not isinstance(node.left, (Term, Phrase, SetRef, FieldScope, Not)):
            left = f"({left})"
        right = to_text(node.right)
        if not isinstance(node.right, (Term, Phrase, SetRef, FieldScope)):
            right = f"({right})"
        return f"{left} NOT {right}"
    if isinstance(node, And):
        parts = []
        for child in node.children:
            text = to_text(child)
            if isinstance(child, (Or, And, Refine)):
                text = f"({text})"
            parts.append(text)
        return " AND ".join(parts)
    if isinstance(node, Or):
        parts = []
        for child in node.children:
            text = to_text(child)
            if isinstance(child, (Or, Refine)):
                text = f"({text})"
            parts.append(text)
        return " OR ".join(parts)
    if isinstance(node, Refine):
        mode = "EXCLUDING " if node.mode == "exclude" else ""
        values = " OR ".join(_value_text(v) for v in node.values)
        return f"{to_text(node.child)} REFINED BY {mode}{FACET_LABELS[node.facet]}:({values})"
    raise TypeError(f"not a query node: {node!r}")
