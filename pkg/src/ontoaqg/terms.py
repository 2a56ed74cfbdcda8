"""RDF terms, triples and the raw triple set produced by the parser."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping, NamedTuple, Optional, Union

_SCHEME = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self) -> None:
        if not isinstance(self.value, str) or not self.value:
            raise ValueError("IRI must be a non-empty string")

    def __str__(self) -> str:
        return self.value

    @property
    def is_absolute(self) -> bool:
        return bool(_SCHEME.match(self.value))

    @property
    def local_name(self) -> str:
        v = self.value
        for sep in ("#", "/", ":"):
            idx = v.rfind(sep)
            if 0 <= idx < len(v) - 1:
                return v[idx + 1:]
        return v


@dataclass(frozen=True, slots=True)
class BNode:
    id: str

    def __str__(self) -> str:
        return "_:" + self.id


class NS:
    RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
    RDFS = "http://www.w3.org/2000/01/rdf-schema#"
    OWL = "http://www.w3.org/2002/07/owl#"
    XSD = "http://www.w3.org/2001/XMLSchema#"


XSD_STRING = Iri(NS.XSD + "string")
RDF_LANGSTRING = Iri(NS.RDF + "langString")


@dataclass(frozen=True, slots=True)
class Literal:
    """A literal keeps its lexical form untouched; no value normalisation."""

    lexical: str
    datatype: Iri = XSD_STRING
    lang: Optional[str] = None

    def __post_init__(self) -> None:
        if self.lang is not None and self.datatype != RDF_LANGSTRING:
            object.__setattr__(self, "datatype", RDF_LANGSTRING)

    def __str__(self) -> str:
        return self.lexical


Subject = Union[Iri, BNode]
Term = Union[Iri, BNode, Literal]


class Triple(NamedTuple):
    subject: Subject
    predicate: Iri
    object: Term


def term_key(term: Term) -> tuple:
    """Total order over mixed terms: IRIs, then blank nodes, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BNode):
        return (1, term.id, "", "")
    return (2, term.lexical, term.datatype.value, term.lang or "")


def triple_key(t: Triple) -> tuple:
    return (term_key(t.subject), t.predicate.value, term_key(t.object))


@dataclass(frozen=True)
class TripleSet:
    triples: frozenset[Triple] = frozenset()
    base: Optional[Iri] = None
    prefixes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "triples", frozenset(self.triples))
        object.__setattr__(self, "prefixes", MappingProxyType(dict(self.prefixes)))
        for t in self.triples:
            if not isinstance(t.predicate, Iri):
                raise ValueError(f"predicate must be an IRI: {t!r}")

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted())

    def __contains__(self, t: object) -> bool:
        return t in self.triples

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripleSet):
            return NotImplemented
        return (self.triples == other.triples and self.base == other.base
                and dict(self.prefixes) == dict(other.prefixes))

    def __hash__(self) -> int:
        return hash(self.triples)

    def sorted(self) -> list[Triple]:
        return sorted(self.triples, key=triple_key)


# Shorthands for vocabulary used across modules.
RDF_TYPE = Iri(NS.RDF + "type")
RDF_FIRST = Iri(NS.RDF + "first")
RDF_REST = Iri(NS.RDF + "rest")
RDF_NIL = Iri(NS.RDF + "nil")
RDF_PROPERTY = Iri(NS.RDF + "Property")
RDFS_CLASS = Iri(NS.RDFS + "Class")
RDFS_SUBCLASSOF = Iri(NS.RDFS + "subClassOf")
RDFS_DOMAIN = Iri(NS.RDFS + "domain")
RDFS_RANGE = Iri(NS.RDFS + "range")
RDFS_COMMENT = Iri(NS.RDFS + "comment")
RDFS_LABEL = Iri(NS.RDFS + "label")
OWL_CLASS = Iri(NS.OWL + "Class")
OWL_THING = Iri(NS.OWL + "Thing")
OWL_NOTHING = Iri(NS.OWL + "Nothing")
OWL_OBJECT_PROPERTY = Iri(NS.OWL + "ObjectProperty")
OWL_DATATYPE_PROPERTY = Iri(NS.OWL + "DatatypeProperty")
OWL_ANNOTATION_PROPERTY = Iri(NS.OWL + "AnnotationProperty")
OWL_NAMED_INDIVIDUAL = Iri(NS.OWL + "NamedIndividual")
OWL_ONTOLOGY = Iri(NS.OWL + "Ontology")
OWL_IMPORTS = Iri(NS.OWL + "imports")
OWL_UNION_OF = Iri(NS.OWL + "unionOf")
XSD_INTEGER = Iri(NS.XSD + "integer")
XSD_DECIMAL = Iri(NS.XSD + "decimal")
XSD_DOUBLE = Iri(NS.XSD + "double")
XSD_BOOLEAN = Iri(NS.XSD + "boolean")
