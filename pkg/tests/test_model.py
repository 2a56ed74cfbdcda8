import random

import pytest
from hypothesis import given, settings, strategies as st

from ontoaqg.errors import ModelError, UnknownEntityError
from ontoaqg.model import (
    KnowledgeBase,
    OntologySchema,
    concept_depth,
    find_cycle,
    out_assertions,
    populated_concepts,
    siblings_of,
    with_inferred_membership,
)
from ontoaqg.terms import Iri, Literal, XSD_INTEGER

import oracles
from synth import random_spec, to_kb

A, B, B1, B2, C, D = (Iri(f"http://e/{n}") for n in ("A", "B", "B1", "B2", "C", "D"))


def kb_of(concepts, hierarchy=(), concept_inst=None, properties=(), property_inst=None,
          instances=None):
    concept_inst = concept_inst or {}
    property_inst = property_inst or {}
    if instances is None:
        instances = {i for ms in concept_inst.values() for i in ms}
        instances |= {s for pairs in property_inst.values() for s, _ in pairs}
    schema = OntologySchema(frozenset(concepts), frozenset(properties), frozenset(hierarchy))
    lits = {o for pairs in property_inst.values() for _, o in pairs if isinstance(o, Literal)}
    return KnowledgeBase(schema, frozenset(instances), frozenset(lits), concept_inst,
                         property_inst)


def test_populated_empty_abox():
    assert populated_concepts(kb_of({A, B})) == frozenset()


def test_populated_direct():
    a1 = Iri("http://e/a1")
    assert populated_concepts(kb_of({A, B}, concept_inst={A: {a1}})) == {A}


def test_siblings_examples():
    kb = kb_of({A, B, C}, {(B, A), (C, A)})
    assert siblings_of(kb, B) == {C}
    assert siblings_of(kb_of({A, B}, {(B, A)}), B) == frozenset()
    kb = kb_of({A, B, C, D}, {(B, A), (C, A), (D, C)})
    assert siblings_of(kb, D) == frozenset()


def test_top_level_classes_are_not_siblings():
    assert siblings_of(kb_of({A, B}), A) == frozenset()


def test_depth_examples():
    assert concept_depth(kb_of({A}), A) == 1
    assert concept_depth(kb_of({A, B, C}, {(B, A), (C, B)}), C) == 3
    kb = kb_of({A, B1, B2, C}, {(C, B1), (C, B2), (B1, A)})
    assert concept_depth(kb, C) == 2


def test_out_assertions_examples():
    a, b = Iri("http://e/a"), Iri("http://e/b")
    p1, p2 = Iri("http://e/P1"), Iri("http://e/P2")
    five = Literal("5", XSD_INTEGER)
    kb = kb_of({A}, properties={p1, p2}, property_inst={p1: {(a, b)}, p2: {(a, five)}},
               instances={a, b})
    assert out_assertions(kb, a) == {(p1, b), (p2, five)}
    assert out_assertions(kb, b) == frozenset()


def test_unknown_entities_raise():
    kb = kb_of({A})
    with pytest.raises(UnknownEntityError):
        siblings_of(kb, B)
    with pytest.raises(UnknownEntityError):
        concept_depth(kb, B)
    with pytest.raises(UnknownEntityError):
        out_assertions(kb, A)


def test_schema_rejects_cycle():
    with pytest.raises(ModelError, match="cyclic"):
        OntologySchema(frozenset({A, B}), hierarchy=frozenset({(A, B), (B, A)}))


def test_schema_rejects_overlap_and_dangling_pairs():
    with pytest.raises(ModelError):
        OntologySchema(frozenset({A}), frozenset({A}))
    with pytest.raises(ModelError):
        OntologySchema(frozenset({A}), hierarchy=frozenset({(B, A)}))


def test_kb_rejects_instance_that_is_a_concept():
    with pytest.raises(ModelError):
        kb_of({A}, concept_inst={A: {A}})


def test_find_cycle_reports_path():
    cyc = find_cycle([(A, B), (B, C), (C, A)])
    assert cyc is not None and cyc[0] == cyc[-1]
    assert set(cyc) == {A, B, C}
    assert find_cycle([(A, B), (B, C)]) is None


def test_inferred_membership_adds_ancestors():
    x = Iri("http://e/x")
    kb = kb_of({A, B, C}, {(B, A), (C, B)}, concept_inst={C: {x}})
    inferred = with_inferred_membership(kb)
    assert inferred.members(A) == {x} and inferred.members(B) == {x}
    assert kb.members(A) == frozenset()


def test_label_falls_back_to_local_name():
    kb = kb_of({A})
    assert kb.label(A) == "A"
    assert kb.label(Literal("12", XSD_INTEGER)) == "12"


# -- properties over synthetic KBs ----------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_sibling_relation_symmetric_irreflexive(seed):
    spec = random_spec(random.Random(seed), max_classes=25, max_instances=10)
    kb = to_kb(spec)
    for c in kb.concepts:
        sibs = siblings_of(kb, c)
        assert c not in sibs
        for s in sibs:
            assert c in siblings_of(kb, s)
        assert {x.value for x in sibs} == oracles.siblings(spec, c.value)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_depth_matches_path_enumeration(seed):
    spec = random_spec(random.Random(seed), max_classes=30, max_instances=5)
    kb = to_kb(spec)
    memo: dict = {}
    for c in kb.concepts:
        d = concept_depth(kb, c)
        assert d >= 1
        assert d == oracles.depth(spec, c.value, memo)


@settings(max_examples=40, deadline=None)
@given(seeds, st.data())
def test_extra_parent_never_increases_depth(seed, data):
    """Giving a non-root concept an extra parent only adds upward paths."""
    spec = random_spec(random.Random(seed), max_classes=15, max_instances=0)
    if len(spec.concepts) < 2:
        return
    kb = to_kb(spec)
    child = Iri(data.draw(st.sampled_from(spec.concepts)))
    blocked = kb.schema.descendants(child) | {child}
    candidates = sorted(c.value for c in kb.concepts if c not in blocked)
    if not candidates:
        return
    parent = Iri(data.draw(st.sampled_from(candidates)))
    bigger = KnowledgeBase(
        OntologySchema(kb.schema.concepts, kb.schema.properties,
                       kb.schema.hierarchy | {(child, parent)}, kb.schema.prop_map),
        kb.instances, kb.literals, kb.concept_inst, kb.property_inst)
    if kb.schema.parents(child):
        for c in kb.concepts:
            assert concept_depth(bigger, c) <= concept_depth(kb, c)
