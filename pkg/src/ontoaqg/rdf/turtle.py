"""Turtle 1.1 and N-Triples parser with line/column diagnostics.

The lexer runs a single compiled alternation over the whole document; the
parser is a recursive-descent walk over the resulting token list. N-Triples
is handled as a restricted Turtle: the same lexer, with every abbreviation
rejected by the parser.
"""

from __future__ import annotations

import bisect
import re
from typing import Literal as Syntax, Optional
from urllib.parse import urljoin

from ..errors import RdfSyntaxError, UnsupportedConstructError
from ..terms import (
    BNode, Iri, Literal, RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, Triple, TripleSet,
    XSD_BOOLEAN, XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER, XSD_STRING,
)

_PN_CHARS_BASE = (
    "A-Za-z\u00C0-\u00D6\u00D8-\u00F6\u00F8-\u02FF\u0370-\u037D\u037F-\u1FFF"
    "\u200C-\u200D\u2070-\u218F\u2C00-\u2FEF\u3001-\uD7FF\uF900-\uFDCF"
    "\uFDF0-\uFFFD\U00010000-\U000EFFFF"
)
_PN_CHARS_U = _PN_CHARS_BASE + "_"
_PN_CHARS = _PN_CHARS_U + "\\-0-9\u00B7\u0300-\u036F\u203F-\u2040"
_PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_PREFIX = f"[{_PN_CHARS_BASE}](?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"
_PN_LOCAL = (
    f"(?:[{_PN_CHARS_U}:0-9]|{_PLX})"
    f"(?:(?:[{_PN_CHARS}.:]|{_PLX})*(?:[{_PN_CHARS}:]|{_PLX}))?"
)
_UCHAR = r"\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8}"
_ECHAR = r"\\[tbnrf\"'\\]"

_TOKEN_SPEC = [
    ("WS", r"[ \t\r\n]+|#[^\r\n]*"),
    ("IRIREF", rf"<(?:[^\x00-\x20<>\"{{}}|^`\\]|{_UCHAR})*>"),
    ("LONG_DQ", rf'"""(?:(?:"|"")?(?:[^"\\]|{_ECHAR}|{_UCHAR}))*"""'),
    ("LONG_SQ", rf"'''(?:(?:'|'')?(?:[^'\\]|{_ECHAR}|{_UCHAR}))*'''"),
    ("STRING_DQ", rf'"(?:[^"\\\n\r]|{_ECHAR}|{_UCHAR})*"'),
    ("STRING_SQ", rf"'(?:[^'\\\n\r]|{_ECHAR}|{_UCHAR})*'"),
    ("BNODE", rf"_:(?:[{_PN_CHARS_U}0-9])(?:[{_PN_CHARS}.]*[{_PN_CHARS}])?"),
    ("PNAME_LN", rf"(?:{_PN_PREFIX})?:{_PN_LOCAL}"),
    ("PNAME_NS", rf"(?:{_PN_PREFIX})?:"),
    ("LANGTAG", r"@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*"),
    ("DOUBLE", r"[+-]?(?:[0-9]+\.[0-9]*[eE][+-]?[0-9]+|\.[0-9]+[eE][+-]?[0-9]+|[0-9]+[eE][+-]?[0-9]+)"),
    ("DECIMAL", r"[+-]?[0-9]*\.[0-9]+"),
    ("INTEGER", r"[+-]?[0-9]+"),
    ("WORD", r"[A-Za-z_][A-Za-z0-9_\-]*"),
    ("PUNCT", r"\^\^|<<|>>|\{\||\|\}|[.;,\[\]()\{\}]"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_SPEC))

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|.)", re.S)
_UCHAR_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8})")
_LOCAL_ESC_RE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")


def _unescape_string(body: str) -> str:
    def sub(m: re.Match) -> str:
        g = m.group(1)
        if g[0] in "uU" and len(g) > 1:
            return chr(int(g[1:], 16))
        return _ESCAPES[g]
    return _ESCAPE_RE.sub(sub, body) if "\\" in body else body


def _unescape_iri(body: str) -> str:
    if "\\" not in body:
        return body
    return _UCHAR_RE.sub(lambda m: chr(int(m.group(1)[1:], 16)), body)


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int) -> None:
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self) -> str:
        return f"_Token({self.kind}, {self.text!r}, {self.pos})"


_EOF = "EOF"

# Used only when a document does not declare these prefixes itself.
FALLBACK_PREFIXES = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}


class _Parser:
    def __init__(self, text: str, syntax: str, base: Optional[str]) -> None:
        self.text = text
        self.nt = syntax == "ntriples"
        self.base = base
        self.prefixes: dict[str, str] = {}
        self.triples: set[Triple] = set()
        self._line_starts = [0] + [m.end() for m in re.finditer(r"\r\n|\n|\r", text)]
        self.tokens = self._tokenize()
        self.i = 0
        used = {t.text[2:] for t in self.tokens if t.kind == "BNODE"}
        self._used_labels = used
        self._gen = 0

    # -- positions and errors -------------------------------------------

    def _loc(self, pos: int) -> tuple[int, int]:
        line = bisect.bisect_right(self._line_starts, pos)
        return line, pos - self._line_starts[line - 1] + 1

    def _error(self, message: str, pos: int, cls=RdfSyntaxError):
        line, col = self._loc(pos)
        return cls(message, line, col)

    def _tokenize(self) -> list[_Token]:
        text = self.text
        tokens: list[_Token] = []
        pos = 0
        n = len(text)
        match = _MASTER.match
        while pos < n:
            m = match(text, pos)
            if m is None:
                ch = text[pos]
                if ch in "\"'":
                    raise self._error("unterminated or malformed string literal", pos)
                if ch == "<":
                    raise self._error("malformed IRI reference", pos)
                raise self._error(f"unexpected character {ch!r}", pos)
            kind = m.lastgroup
            if kind != "WS":
                tokens.append(_Token(kind, m.group(), pos))
            pos = m.end()
        tokens.append(_Token(_EOF, "", n))
        return tokens

    # -- token helpers ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _describe(self, tok: _Token) -> str:
        return "end of input" if tok.kind == _EOF else repr(tok.text)

    def expect_punct(self, ch: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.text == ch:
            return self.advance()
        raise self._error(f"expected '{ch}' {what}, found {self._describe(tok)}", tok.pos)

    def _is_punct(self, tok: _Token, ch: str) -> bool:
        return tok.kind == "PUNCT" and tok.text == ch

    def _reject_nt(self, tok: _Token, what: str) -> None:
        if self.nt:
            raise self._error(f"{what} is not allowed in N-Triples", tok.pos)

    def _check_star(self, tok: _Token) -> None:
        if tok.kind == "PUNCT" and tok.text in ("<<", ">>", "{|", "|}"):
            raise self._error(
                f"RDF-star syntax {tok.text!r} is not supported", tok.pos, UnsupportedConstructError)
        if tok.kind == "PUNCT" and tok.text in ("{", "}"):
            raise self._error(
                "graph blocks are not supported", tok.pos, UnsupportedConstructError)

    def new_bnode(self) -> BNode:
        while True:
            self._gen += 1
            label = f"g{self._gen}"
            if label not in self._used_labels:
                return BNode(label)

    # -- terms ------------------------------------------------------------

    def resolve(self, iri: str, pos: int) -> str:
        if self.base is None or _has_scheme(iri):
            return iri
        return urljoin(self.base, iri)

    def iri_from_ref(self, tok: _Token) -> Iri:
        raw = _unescape_iri(tok.text[1:-1])
        return _make_iri(self.resolve(raw, tok.pos), tok, self)

    def iri_from_pname(self, tok: _Token) -> Iri:
        prefix, _, local = tok.text.partition(":")
        ns = self.prefixes.get(prefix)
        if ns is None:
            ns = FALLBACK_PREFIXES.get(prefix)
            if ns is None:
                raise self._error(f"undeclared prefix {prefix + ':'!r}", tok.pos)
        local = _LOCAL_ESC_RE.sub(r"\1", local)
        return _make_iri(ns + local, tok, self)

    def parse_iri(self, tok: _Token) -> Iri:
        if tok.kind == "IRIREF":
            return self.iri_from_ref(tok)
        if tok.kind in ("PNAME_LN", "PNAME_NS"):
            self._reject_nt(tok, "prefixed name")
            return self.iri_from_pname(tok)
        raise self._error(f"expected IRI, found {self._describe(tok)}", tok.pos)

    # -- grammar ----------------------------------------------------------

    def parse(self) -> TripleSet:
        while self.peek().kind != _EOF:
            self.statement()
        base = Iri(self.base) if self.base else None
        return TripleSet(frozenset(self.triples), base, self.prefixes)

    def statement(self) -> None:
        tok = self.peek()
        if tok.kind == "LANGTAG" and tok.text in ("@prefix", "@base"):
            self._reject_nt(tok, "directive")
            self.advance()
            if tok.text == "@prefix":
                self.prefix_decl(tok)
            else:
                self.base_decl(tok)
            self.expect_punct(".", "after directive")
            return
        if tok.kind == "WORD" and tok.text.upper() in ("PREFIX", "BASE"):
            self._reject_nt(tok, "directive")
            self.advance()
            if tok.text.upper() == "PREFIX":
                self.prefix_decl(tok)
            else:
                self.base_decl(tok)
            return
        self.triples_stmt()
        self.expect_punct(".", "at end of statement")

    def prefix_decl(self, kw: _Token) -> None:
        name = self.advance()
        if name.kind != "PNAME_NS":
            raise self._error(f"expected prefix name, found {self._describe(name)}", name.pos)
        ref = self.advance()
        if ref.kind != "IRIREF":
            raise self._error(f"expected IRI, found {self._describe(ref)}", ref.pos)
        ns = self.resolve(_unescape_iri(ref.text[1:-1]), ref.pos)
        self.prefixes[name.text[:-1]] = ns

    def base_decl(self, kw: _Token) -> None:
        ref = self.advance()
        if ref.kind != "IRIREF":
            raise self._error(f"expected IRI, found {self._describe(ref)}", ref.pos)
        self.base = self.resolve(_unescape_iri(ref.text[1:-1]), ref.pos)

    def triples_stmt(self) -> None:
        tok = self.peek()
        self._check_star(tok)
        if self._is_punct(tok, "["):
            self._reject_nt(tok, "blank node property list")
            anon = self._is_punct(self.tokens[self.i + 1], "]")
            subj = self.blank_node_property_list()
            if not anon and self._is_punct(self.peek(), "."):
                return
            self.predicate_object_list(subj)
            return
        subj = self.subject()
        self.predicate_object_list(subj)

    def subject(self):
        tok = self.peek()
        self._check_star(tok)
        if tok.kind in ("IRIREF", "PNAME_LN", "PNAME_NS"):
            self.advance()
            return self.parse_iri(tok)
        if tok.kind == "BNODE":
            self.advance()
            return BNode(tok.text[2:])
        if self._is_punct(tok, "("):
            self._reject_nt(tok, "collection")
            return self.collection()
        if tok.kind == _EOF:
            raise self._error("expected subject, found end of input", tok.pos)
        raise self._error(f"expected subject, found {self._describe(tok)}", tok.pos)

    def verb(self) -> Iri:
        tok = self.peek()
        self._check_star(tok)
        if tok.kind == "WORD" and tok.text == "a":
            self._reject_nt(tok, "'a' keyword")
            self.advance()
            return RDF_TYPE
        if tok.kind in ("IRIREF", "PNAME_LN", "PNAME_NS"):
            self.advance()
            return self.parse_iri(tok)
        raise self._error(f"expected predicate, found {self._describe(tok)}", tok.pos)

    def predicate_object_list(self, subj) -> None:
        pred = self.verb()
        self.object_list(subj, pred)
        while self._is_punct(self.peek(), ";"):
            tok = self.advance()
            self._reject_nt(tok, "';' abbreviation")
            while self._is_punct(self.peek(), ";"):
                self.advance()
            nxt = self.peek()
            if nxt.kind == "PUNCT" and nxt.text in (".", "]"):
                return
            if nxt.kind == _EOF:
                return
            pred = self.verb()
            self.object_list(subj, pred)

    def object_list(self, subj, pred: Iri) -> None:
        self.triples.add(Triple(subj, pred, self.object()))
        while self._is_punct(self.peek(), ","):
            tok = self.advance()
            self._reject_nt(tok, "',' abbreviation")
            self.triples.add(Triple(subj, pred, self.object()))
        self._check_star(self.peek())

    def object(self):
        tok = self.peek()
        self._check_star(tok)
        kind = tok.kind
        if kind in ("IRIREF", "PNAME_LN", "PNAME_NS"):
            self.advance()
            return self.parse_iri(tok)
        if kind == "BNODE":
            self.advance()
            return BNode(tok.text[2:])
        if kind == "PUNCT" and tok.text == "[":
            self._reject_nt(tok, "blank node property list")
            return self.blank_node_property_list()
        if kind == "PUNCT" and tok.text == "(":
            self._reject_nt(tok, "collection")
            return self.collection()
        if kind in ("STRING_DQ", "STRING_SQ", "LONG_DQ", "LONG_SQ"):
            return self.rdf_literal()
        if kind in ("INTEGER", "DECIMAL", "DOUBLE"):
            self._reject_nt(tok, "numeric literal shorthand")
            self.advance()
            dt = {"INTEGER": XSD_INTEGER, "DECIMAL": XSD_DECIMAL, "DOUBLE": XSD_DOUBLE}[kind]
            return Literal(tok.text, dt)
        if kind == "WORD" and tok.text in ("true", "false"):
            self._reject_nt(tok, "boolean literal shorthand")
            self.advance()
            return Literal(tok.text, XSD_BOOLEAN)
        raise self._error(f"expected object, found {self._describe(tok)}", tok.pos)

    def rdf_literal(self) -> Literal:
        tok = self.advance()
        if tok.kind in ("LONG_DQ", "LONG_SQ"):
            self._reject_nt(tok, "long string")
            body = tok.text[3:-3]
        else:
            if tok.kind == "STRING_SQ":
                self._reject_nt(tok, "single-quoted string")
            body = tok.text[1:-1]
        lexical = _unescape_string(body)
        nxt = self.peek()
        if nxt.kind == "LANGTAG":
            self.advance()
            return Literal(lexical, lang=nxt.text[1:])
        if self._is_punct(nxt, "^^"):
            self.advance()
            dt_tok = self.advance()
            if self.nt and dt_tok.kind != "IRIREF":
                raise self._error(
                    f"expected datatype IRI, found {self._describe(dt_tok)}", dt_tok.pos)
            if dt_tok.kind not in ("IRIREF", "PNAME_LN", "PNAME_NS"):
                raise self._error(
                    f"expected datatype IRI, found {self._describe(dt_tok)}", dt_tok.pos)
            return Literal(lexical, self.parse_iri(dt_tok))
        return Literal(lexical, XSD_STRING)

    def blank_node_property_list(self) -> BNode:
        self.advance()  # '['
        node = self.new_bnode()
        if self._is_punct(self.peek(), "]"):
            self.advance()
            return node
        self.predicate_object_list(node)
        self.expect_punct("]", "to close blank node property list")
        return node

    def collection(self):
        self.advance()  # '('
        items = []
        while not self._is_punct(self.peek(), ")"):
            if self.peek().kind == _EOF:
                raise self._error("expected ')' to close collection, found end of input",
                                  self.peek().pos)
            items.append(self.object())
        self.advance()
        if not items:
            return RDF_NIL
        head = self.new_bnode()
        node = head
        for idx, item in enumerate(items):
            self.triples.add(Triple(node, RDF_FIRST, item))
            nxt = self.new_bnode() if idx < len(items) - 1 else RDF_NIL
            self.triples.add(Triple(node, RDF_REST, nxt))
            node = nxt
        return head


def _has_scheme(iri: str) -> bool:
    return bool(re.match(r"[A-Za-z][A-Za-z0-9+.\-]*:", iri))


def _make_iri(value: str, tok: _Token, parser: _Parser) -> Iri:
    if not value:
        raise parser._error("empty IRI", tok.pos)
    return Iri(value)


def parse_document(text: str, syntax: Syntax["turtle", "ntriples"] = "turtle",
                   base: Optional[str] = None) -> TripleSet:
    """Parse a Turtle or N-Triples document into a :class:`TripleSet`.

    Raises:
        RdfSyntaxError: grammar violation, with 1-based line/column.
        UnsupportedConstructError: RDF-star or TriG syntax.
    """
    if syntax not in ("turtle", "ntriples"):
        raise ValueError(f"unsupported syntax: {syntax!r}")
    if text.startswith("\ufeff"):
        text = text[1:]
    return _Parser(text, syntax, base).parse()
