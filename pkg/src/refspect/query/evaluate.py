"""Query evaluation against a corpus and a saved-set table."""

from __future__ import annotations

import re

from ..corpus import Corpus, RecordSet
from .ast import And, FieldScope, Node, Not, Or, Phrase, Refine, SetRef, Term, to_text
from .parser import parse_query

#: field applied to terms/phrases outside any explicit FIELD:(...) scope
DEFAULT_FIELD = "TOPIC"

_SPAN_RE = re.compile(r"^(\d{4})\s*-\s*(\d{4})$")
_SCRIPT_LINE_RE = re.compile(r"^\s*(#[A-Za-z0-9_-]+)\s*:=\s*(.+?)\s*$")


class EvaluationError(ValueError):
    pass


def _timespan_bounds(values: tuple[str, ...]) -> tuple[int, int]:
    years: list[int] = []
    for value in values:
        m = _SPAN_RE.match(value.strip())
        if m:
            years.extend((int(m.group(1)), int(m.group(2))))
        elif value.strip().isdigit():
            years.append(int(value))
        else:
            raise EvaluationError(f"timespan value must be YYYY or YYYY-YYYY, got {value!r}")
    if not years:
        raise EvaluationError("timespan refine needs at least one year")
    return min(years), max(years)


def _eval(node: Node, corpus: Corpus, sets: dict[str, RecordSet], field: str) -> frozenset[str]:
    if isinstance(node, Term):
        if node.wildcard:
            return corpus.match_prefix(field, node.text)
        return corpus.match_term(field, node.text)
    if isinstance(node, Phrase):
        return corpus.match_phrase(field, node.text)
    if isinstance(node, SetRef):
        saved = sets.get(node.name) or sets.get(node.name.lstrip("#"))
        if saved is None:
            raise EvaluationError(f"unknown saved set {node.name}")
        return saved.ids
    if isinstance(node, FieldScope):
        return _eval(node.child, corpus, sets, node.field)
    if isinstance(node, And):
        result = _eval(node.children[0], corpus, sets, field)
        for child in node.children[1:]:
            result &= _eval(child, corpus, sets, field)
        return result
    if isinstance(node, Or):
        result = _eval(node.children[0], corpus, sets, field)
        for child in node.children[1:]:
            result |= _eval(child, corpus, sets, field)
        return result
    if isinstance(node, Not):
        return _eval(node.left, corpus, sets, field) - _eval(node.right, corpus, sets, field)
    if isinstance(node, Refine):
        ids = _eval(node.child, corpus, sets, field)
        if node.facet == "timespan":
            first, last = _timespan_bounds(node.values)
            return corpus.restrict_timespan(ids, first, last)
        return corpus.refine(ids, node.facet, node.values, excluding=node.mode == "exclude")
    raise TypeError(f"not a query node: {node!r}")


def evaluate(
    query: Node | str,
    corpus: Corpus,
    sets: dict[str, RecordSet] | None = None,
    name: str = "",
) -> RecordSet:
    """Evaluate a query (text or tree) to a RecordSet.

    The result's ``query`` field is the canonical text of the tree, so the
    set is replayable from its own provenance.
    """
    node = parse_query(query) if isinstance(query, str) else query
    ids = _eval(node, corpus, sets or {}, DEFAULT_FIELD)
    return RecordSet(name=name, query=to_text(node), ids=ids)


def set_algebra(op: str, a: RecordSet, b: RecordSet, corpus: Corpus | None = None) -> RecordSet:
    """Combine two saved sets; provenance records the expression."""
    if corpus is not None:
        for operand in (a, b):
            stray = operand.ids - corpus.all_ids
            if stray:
                raise EvaluationError(
                    f"set {operand.name or '?'} does not belong to this corpus ({len(stray)} unknown ids)"
                )
    op = op.upper()
    if op == "AND":
        ids = a.ids & b.ids
    elif op == "OR":
        ids = a.ids | b.ids
    elif op == "NOT":
        ids = a.ids - b.ids
    else:
        raise EvaluationError(f"unknown set operation {op!r}")
    label_a = a.name or f"({a.query})"
    label_b = b.name or f"({b.query})"
    return RecordSet(name="", query=f"{label_a} {op} {label_b}", ids=ids)


def run_script(
    text: str,
    corpus: Corpus,
    sets: dict[str, RecordSet] | None = None,
) -> dict[str, RecordSet]:
    """Execute a query script, one `#N := <query>` per line, top to bottom.

    Blank lines and `//` comments are skipped. Later lines may reference
    earlier set names. Returns the table of sets defined by the script, in
    definition order.
    """
    table: dict[str, RecordSet] = dict(sets or {})
    defined: dict[str, RecordSet] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("//"):
            continue
        m = _SCRIPT_LINE_RE.match(line)
        if not m:
            raise EvaluationError(f"line {line_no}: expected '#name := <query>', got {stripped!r}")
        name, query_text = m.group(1), m.group(2)
        if name in defined:
            raise EvaluationError(f"line {line_no}: set {name} defined twice")
        try:
            result = evaluate(query_text, corpus, table, name=name)
        except (ValueError, KeyError) as exc:
            raise EvaluationError(f"line {line_no}: {exc}") from exc
        table[name] = result
        defined[name] = result
    return defined
