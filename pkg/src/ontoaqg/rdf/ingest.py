"""Map a parsed :class:`TripleSet` onto the schema / knowledge-base model."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Optional

from ..errors import CycleError, EmptyOntologyError, PunningError
from ..model import KnowledgeBase, OntologySchema, find_cycle, with_inferred_membership
from ..terms import (
    BNode, Iri, Literal, NS, OWL_ANNOTATION_PROPERTY, OWL_CLASS, OWL_DATATYPE_PROPERTY,
    OWL_IMPORTS, OWL_NAMED_INDIVIDUAL, OWL_NOTHING, OWL_OBJECT_PROPERTY, OWL_THING,
    OWL_UNION_OF, RDF_FIRST, RDF_NIL, RDF_PROPERTY, RDF_REST, RDF_TYPE, RDFS_CLASS,
    RDFS_COMMENT, RDFS_DOMAIN, RDFS_LABEL, RDFS_RANGE, RDFS_SUBCLASSOF, Triple, TripleSet,
)

log = logging.getLogger(__name__)

_CLASS_TYPES = {OWL_CLASS, RDFS_CLASS}
_PROPERTY_TYPES = {
    OWL_OBJECT_PROPERTY, OWL_DATATYPE_PROPERTY, RDF_PROPERTY,
    *(Iri(NS.OWL + n) for n in (
        "FunctionalProperty", "InverseFunctionalProperty", "TransitiveProperty",
        "SymmetricProperty", "AsymmetricProperty", "ReflexiveProperty",
        "IrreflexiveProperty")),
}
_BUILTIN_NS = (NS.RDF, NS.RDFS, NS.OWL, NS.XSD)
# Annotation vocabularies whose predicates are never promoted to properties.
_ANNOTATION_NS = (
    "http://purl.org/dc/elements/1.1/", "http://purl.org/dc/terms/",
    "http://www.w3.org/2004/02/skos/core#", "http://xmlns.com/foaf/0.1/",
    "http://www.w3.org/ns/prov#", "http://purl.org/vocab/vann/",
)


@dataclass(frozen=True)
class Warning_:
    code: str
    message: str
    location: Optional[str] = None

    def as_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "location": self.location}


@dataclass
class IngestResult:
    kb: KnowledgeBase
    warnings: list[Warning_] = field(default_factory=list)


def _builtin(iri: Iri) -> bool:
    return iri.value.startswith(_BUILTIN_NS)


def _annotation_vocab(iri: Iri) -> bool:
    return iri.value.startswith(_ANNOTATION_NS)


def _read_list(head, rest_of: dict, first_of: dict) -> Optional[list]:
    items = []
    seen = set()
    node = head
    while node != RDF_NIL:
        if node in seen or node not in first_of:
            return None
        seen.add(node)
        items.append(first_of[node])
        node = rest_of.get(node, RDF_NIL)
    return items


def _pick_label(values: list[Literal]) -> str:
    def rank(lit: Literal):
        lang = (lit.lang or "").lower()
        return (0 if lang in ("", "en") or lang.startswith("en-") else 1, lang, lit.lexical)
    return sorted(values, key=rank)[0].lexical


def build_knowledge_base(triples: TripleSet, *, inferred_membership: bool = False) -> IngestResult:
    """Classify the triples into concepts, properties, hierarchy and A-Box.

    Raises:
        EmptyOntologyError: no triples, or nothing classifiable.
        CycleError: a subsumption cycle between named classes.
        PunningError: one IRI in two of concept / property / instance roles.
    """
    if not triples.triples:
        raise EmptyOntologyError("document contains no triples")
    warnings: list[Warning_] = []

    def warn(code: str, message: str, location: Optional[str] = None) -> None:
        warnings.append(Warning_(code, message, location))

    ordered = triples.sorted()
    by_pred: dict[Iri, list[Triple]] = defaultdict(list)
    for t in ordered:
        by_pred[t.predicate].append(t)
    first_of = {t.subject: t.object for t in by_pred[RDF_FIRST]}
    rest_of = {t.subject: t.object for t in by_pred[RDF_REST]}

    # (1)-(2) declarations
    declared_classes: set[Iri] = set()
    declared_props: set[Iri] = set()
    annotation_props: set[Iri] = set()
    anonymous_classes = 0
    for s, _, o in by_pred[RDF_TYPE]:
        if o in _CLASS_TYPES:
            if isinstance(s, BNode):
                anonymous_classes += 1
            elif s not in (OWL_THING, OWL_NOTHING) and not _builtin(s):
                declared_classes.add(s)
        elif o in _PROPERTY_TYPES and isinstance(s, Iri) and not _builtin(s):
            declared_props.add(s)
        elif o == OWL_ANNOTATION_PROPERTY and isinstance(s, Iri):
            annotation_props.add(s)
    if anonymous_classes:
        warn("anonymous-class", f"{anonymous_classes} anonymous class expression(s) dropped")

    both = declared_classes & declared_props
    if both:
        first = sorted(both, key=lambda i: i.value)[0]
        raise PunningError(first.value, ["concept", "property"])
    declared_props -= annotation_props

    # Named classes referenced by subClassOf but never declared.
    concepts = set(declared_classes)
    implicit: set[Iri] = set()
    for s, _, o in by_pred[RDFS_SUBCLASSOF]:
        for node in (s, o):
            if (isinstance(node, Iri) and node not in concepts and node not in (OWL_THING, OWL_NOTHING)
                    and not _builtin(node) and node not in declared_props):
                implicit.add(node)
    for s, _, o in by_pred[RDF_TYPE]:
        if (isinstance(o, Iri) and not _builtin(o) and o not in concepts
                and o not in declared_props and o not in annotation_props):
            implicit.add(o)
    if implicit:
        warn("implicit-class", f"{len(implicit)} undeclared class(es) inferred from usage: "
             + ", ".join(sorted(i.value for i in implicit)[:10]))
        concepts |= implicit

    # (3) hierarchy
    hierarchy: set[tuple[Iri, Iri]] = set()
    dropped_bnode = 0
    for s, _, o in by_pred[RDFS_SUBCLASSOF]:
        if isinstance(s, BNode) or isinstance(o, BNode):
            dropped_bnode += 1
            continue
        if not isinstance(o, Iri) or o in (OWL_THING,) or s == OWL_NOTHING:
            continue
        if s not in concepts or o not in concepts:
            continue
        if s == o:
            warn("reflexive-subclass", f"{s} rdfs:subClassOf itself ignored", s.value)
            continue
        hierarchy.add((s, o))
    if dropped_bnode:
        warn("anonymous-subclass", f"{dropped_bnode} subClassOf triple(s) involving blank nodes dropped")
    cycle = find_cycle(hierarchy)
    if cycle:
        raise CycleError([c.value for c in cycle])

    # (5)-(6) instances, memberships and property assertions
    properties = set(declared_props)
    instances: set[Iri] = set()
    concept_inst: dict[Iri, set[Iri]] = defaultdict(set)
    schema_entities = concepts | properties | annotation_props

    def check_individual(x: Iri, role: str) -> None:
        if x in concepts:
            raise PunningError(x.value, ["concept", "instance"])
        if x in properties or x in annotation_props:
            raise PunningError(x.value, ["property", "instance"])

    for s, _, o in by_pred[RDF_TYPE]:
        if not isinstance(s, Iri) or _builtin(s):
            continue
        if o in concepts:
            check_individual(s, "typed")
            instances.add(s)
            concept_inst[o].add(s)
        elif o == OWL_NAMED_INDIVIDUAL:
            check_individual(s, "named individual")
            instances.add(s)

    ignored_annotations: Counter = Counter()
    implicit_props: set[Iri] = set()
    candidate_assertions: list[Triple] = []
    for t in ordered:
        p = t.predicate
        if p in properties:
            candidate_assertions.append(t)
        elif _builtin(p):
            if p not in (RDF_TYPE, RDFS_SUBCLASSOF, RDFS_DOMAIN, RDFS_RANGE, RDFS_COMMENT,
                         RDF_FIRST, RDF_REST):
                ignored_annotations[p.value] += 1
        elif p in annotation_props or _annotation_vocab(p):
            ignored_annotations[p.value] += 1
        elif isinstance(t.subject, Iri) and t.subject in instances:
            implicit_props.add(p)
            candidate_assertions.append(t)
        else:
            ignored_annotations[p.value] += 1
    if implicit_props:
        clash = implicit_props & concepts
        if clash:
            first = sorted(clash, key=lambda i: i.value)[0]
            raise PunningError(first.value, ["concept", "property"])
        warn("implicit-property", f"{len(implicit_props)} undeclared predicate(s) used on "
             "instances treated as properties: "
             + ", ".join(sorted(i.value for i in implicit_props)[:10]))
        properties |= implicit_props
    if instances & properties:
        first = sorted(instances & properties, key=lambda i: i.value)[0]
        raise PunningError(first.value, ["property", "instance"])

    literals: set[Literal] = set()
    property_inst: dict[Iri, set] = defaultdict(set)
    skipped = Counter()
    for s, p, o in candidate_assertions:
        if isinstance(s, BNode) or isinstance(o, BNode):
            skipped["blank node"] += 1
            continue
        if s in concepts or s in properties:
            skipped["schema subject"] += 1
            continue
        if isinstance(o, Iri):
            if o in concepts or o in properties or o in annotation_props:
                raise PunningError(o.value, ["schema entity", "assertion object"])
            instances.add(o)
        else:
            literals.add(o)
        instances.add(s)
        property_inst[p].add((s, o))
    for reason, n in sorted(skipped.items()):
        warn("assertion-skipped", f"{n} property assertion(s) skipped ({reason})")

    # (4) domain / range
    domains: dict[Iri, list[Optional[Iri]]] = defaultdict(list)
    ranges: dict[Iri, list[Optional[Iri]]] = defaultdict(list)
    for pred, target in ((RDFS_DOMAIN, domains), (RDFS_RANGE, ranges)):
        for s, _, o in by_pred[pred]:
            if s not in properties:
                continue
            if isinstance(o, Iri):
                if o != OWL_THING:
                    target[s].append(o)
            elif isinstance(o, BNode):
                members = _union_members(o, triples_index=by_pred, first_of=first_of,
                                         rest_of=rest_of)
                if members:
                    target[s].extend(members)
                else:
                    warn("anonymous-domain-range",
                         f"complex {pred.local_name} of {s} dropped", s.value)
    prop_map: dict[Iri, set] = {}
    for p in properties:
        ds = domains.get(p) or [None]
        rs = ranges.get(p) or [None]
        prop_map[p] = {(d, r) for d in ds for r in rs}

    # (7) comments and labels
    annotations: set[tuple[Iri, str]] = set()
    instance_comments: set[tuple[Iri, str]] = set()
    for s, _, o in by_pred[RDFS_COMMENT]:
        if not isinstance(s, Iri) or not isinstance(o, Literal):
            continue
        if s in concepts or s in properties:
            annotations.add((s, o.lexical))
        elif s in instances:
            instance_comments.add((s, o.lexical))
    label_values: dict[Iri, list[Literal]] = defaultdict(list)
    for s, _, o in by_pred[RDFS_LABEL]:
        if isinstance(s, Iri) and isinstance(o, Literal):
            label_values[s].append(o)
    labels = {s: _pick_label(v) for s, v in label_values.items()}

    if by_pred[OWL_IMPORTS]:
        for s, _, o in by_pred[OWL_IMPORTS]:
            warn("imports-not-followed", f"owl:imports {o} not followed", str(o))
    for pred, n in sorted(ignored_annotations.items()):
        warn("annotation-ignored", f"{n} triple(s) with predicate {pred} not used for metrics", pred)

    if not concepts and not properties and not instances:
        raise EmptyOntologyError("no classes, properties or individuals found")

    schema = OntologySchema(frozenset(concepts), frozenset(properties), frozenset(hierarchy),
                            prop_map, frozenset(annotations))
    kb = KnowledgeBase(schema, frozenset(instances), frozenset(literals), concept_inst,
                       property_inst, labels, frozenset(instance_comments))
    if inferred_membership:
        kb = with_inferred_membership(kb)
    for w in warnings:
        log.debug("%s: %s", w.code, w.message)
    return IngestResult(kb, warnings)


def _union_members(node, *, triples_index, first_of, rest_of) -> list[Iri]:
    """Named members of an ``owl:unionOf`` class expression, else empty."""
    for s, _, o in triples_index.get(OWL_UNION_OF, ()):
        if s == node:
            items = _read_list(o, rest_of, first_of)
            if items and all(isinstance(i, Iri) for i in items):
                return list(items)
    return []
