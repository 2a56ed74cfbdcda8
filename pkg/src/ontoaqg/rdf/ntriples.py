"""Canonical N-Triples writer (sorted lines, minimal escaping)."""

from __future__ import annotations

from typing import Iterable

from ..terms import BNode, Iri, Literal, Term, Triple, TripleSet, XSD_STRING

_STRING_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t",
                   "\b": "\\b", "\f": "\\f"}


def _escape_string(s: str) -> str:
    out = []
    for ch in s:
        if ch in _STRING_ESCAPES:
            out.append(_STRING_ESCAPES[ch])
        elif ord(ch) < 0x20 or ord(ch) == 0x7F:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(s: str) -> str:
    out = []
    for ch in s:
        if ord(ch) <= 0x20 or ch in '<>"{}|^`\\':
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def format_term(term: Term) -> str:
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value)}>"
    if isinstance(term, BNode):
        return f"_:{term.id}"
    if isinstance(term, Literal):
        body = f'"{_escape_string(term.lexical)}"'
        if term.lang:
            return f"{body}@{term.lang}"
        if term.datatype != XSD_STRING:
            return f"{body}^^{format_term(term.datatype)}"
        return body
    raise TypeError(f"not an RDF term: {term!r}")


def format_triple(t: Triple) -> str:
    return f"{format_term(t.subject)} {format_term(t.predicate)} {format_term(t.object)} ."


def serialize_ntriples(triples: TripleSet | Iterable[Triple]) -> str:
    if isinstance(triples, TripleSet):
        ordered = triples.sorted()
    else:
        ordered = TripleSet(frozenset(triples)).sorted()
    return "".join(format_triple(t) + "\n" for t in ordered)
