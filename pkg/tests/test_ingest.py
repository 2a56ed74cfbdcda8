import random

import pytest

from ontoaqg.errors import CycleError, EmptyOntologyError, PunningError
from ontoaqg.rdf import parse_document, serialize_ntriples
from ontoaqg.rdf.ingest import build_knowledge_base
from ontoaqg.terms import Iri, TripleSet

PREFIXES = """@prefix : <http://e/> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
"""
E = "http://e/"


def ingest(body: str, **kw):
    return build_knowledge_base(parse_document(PREFIXES + body), **kw)


def iris(*names):
    return frozenset(Iri(E + n) for n in names)


def codes(result):
    return {w.code for w in result.warnings}


def test_spec_example_schema_only():
    kb = ingest(":B a owl:Class . :A a owl:Class . :B rdfs:subClassOf :A .").kb
    assert kb.concepts == iris("A", "B")
    assert kb.hierarchy == {(Iri(E + "B"), Iri(E + "A"))}
    assert kb.instances == frozenset()


def test_spec_example_with_instance():
    kb = ingest(":B a owl:Class . :A a owl:Class . :B rdfs:subClassOf :A . :b1 a :B .").kb
    assert kb.instances == iris("b1")
    assert kb.members(Iri(E + "B")) == iris("b1")
    assert kb.members(Iri(E + "A")) == frozenset()


def test_inferred_membership_flag():
    body = ":B a owl:Class . :A a owl:Class . :B rdfs:subClassOf :A . :b1 a :B ."
    kb = ingest(body, inferred_membership=True).kb
    assert kb.members(Iri(E + "A")) == iris("b1")


def test_cycle_rejected_with_members_listed():
    with pytest.raises(CycleError) as info:
        ingest(":A a owl:Class . :B a owl:Class . :A rdfs:subClassOf :B . :B rdfs:subClassOf :A .")
    assert {E + "A", E + "B"} <= set(info.value.cycle)


def test_punning_rejected():
    with pytest.raises(PunningError):
        ingest(":A a owl:Class . :B a owl:Class . :A a :B .")
    with pytest.raises(PunningError):
        ingest(":p a owl:ObjectProperty . :C a owl:Class . :p a :C .")


def test_empty_ontology():
    with pytest.raises(EmptyOntologyError):
        build_knowledge_base(TripleSet(frozenset()))
    with pytest.raises(EmptyOntologyError):
        ingest("<http://e/onto> a owl:Ontology .")


def test_owl_thing_excluded():
    r = ingest(":A a owl:Class ; rdfs:subClassOf owl:Thing . owl:Thing a owl:Class .")
    assert r.kb.concepts == iris("A")
    assert r.kb.hierarchy == frozenset()


def test_blank_node_superclass_dropped_with_warning():
    r = ingest(":A a owl:Class ; rdfs:subClassOf [ a owl:Restriction ; "
               "owl:onProperty :p ; owl:someValuesFrom :A ] . :p a owl:ObjectProperty .")
    assert r.kb.hierarchy == frozenset()
    assert "anonymous-subclass" in codes(r)


def test_implicit_class_promoted():
    r = ingest(":A a owl:Class . :A rdfs:subClassOf :B . :x a :C .")
    assert r.kb.concepts == iris("A", "B", "C")
    assert "implicit-class" in codes(r)


def test_implicit_property_promoted():
    r = ingest(":A a owl:Class . :x a :A ; :knows :y .")
    assert Iri(E + "knows") in r.kb.properties
    assert r.kb.instances == iris("x", "y")
    assert "implicit-property" in codes(r)


def test_assertion_objects_become_instances_and_literals():
    r = ingest(':A a owl:Class . :p a owl:ObjectProperty . :q a owl:DatatypeProperty .'
               ' :x a :A ; :p :y ; :q "v" .')
    kb = r.kb
    assert kb.instances == iris("x", "y")
    assert {lit.lexical for lit in kb.literals} == {"v"}
    assert kb.assertion_count() == 2


def test_comments_split_between_schema_and_instances():
    r = ingest(':A a owl:Class ; rdfs:comment "class note" . :x a :A ; rdfs:comment "inst note" .')
    assert r.kb.schema.annotations == {(Iri(E + "A"), "class note")}
    assert r.kb.instance_comments == {(Iri(E + "x"), "inst note")}


def test_domain_union_expanded():
    r = ingest(":A a owl:Class . :B a owl:Class . :p a owl:ObjectProperty ;"
               " rdfs:domain [ owl:unionOf ( :A :B ) ] .")
    domains = {d for d, _ in r.kb.schema.prop_map[Iri(E + "p")]}
    assert domains == iris("A", "B")


def test_imports_and_ignored_annotations_warned():
    r = ingest('<http://e/o> a owl:Ontology ; owl:imports <http://other/> .'
               ' :A a owl:Class ; rdfs:label "A" ; rdfs:seeAlso :B .')
    assert {"imports-not-followed", "annotation-ignored"} <= codes(r)


def test_label_prefers_english():
    r = ingest(':A a owl:Class ; rdfs:label "Ein A"@de, "An A"@en .')
    assert r.kb.label(Iri(E + "A")) == "An A"


def test_order_independence(planets_path):
    text = planets_path.read_text()
    reference = build_knowledge_base(parse_document(text))
    lines = serialize_ntriples(parse_document(text)).splitlines(keepends=True)
    for seed in range(5):
        random.Random(seed).shuffle(lines)
        again = build_knowledge_base(parse_document("".join(lines), "ntriples"))
        assert again.kb == reference.kb
        assert again.warnings == reference.warnings


def test_planets_inventory(planets_kb):
    kb = planets_kb
    assert len(kb.concepts) == 6
    assert len(kb.hierarchy) == 5
    assert len(kb.properties) == 4
    assert len(kb.instances) == 6
    assert kb.assertion_count() == 10
