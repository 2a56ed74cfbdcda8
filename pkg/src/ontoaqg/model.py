"""Ontology schema and knowledge base, plus the graph queries built on them.

Both structures are immutable once constructed. Indexes needed by the
queries (parent/child maps, per-instance assertions) are built eagerly in
``__post_init__`` so that every query is a read-only lookup.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .errors import ModelError, UnknownEntityError
from .terms import Iri, Literal

ObjectValue = Union[Iri, Literal]


def _freeze_map(m: Mapping, value_type=frozenset) -> Mapping:
    return MappingProxyType({k: value_type(v) for k, v in m.items()})


def find_cycle(edges: Iterable[tuple[Iri, Iri]]) -> Optional[list[Iri]]:
    """Return one directed cycle (first node repeated at the end), or None."""
    graph: dict[Iri, list[Iri]] = defaultdict(list)
    for a, b in sorted(edges, key=lambda e: (e[0].value, e[1].value)):
        graph[a].append(b)
    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict[Iri, int] = defaultdict(int)
    for start in sorted(graph, key=lambda n: n.value):
        if colour[start] != WHITE:
            continue
        stack = [(start, iter(graph[start]))]
        path = [start]
        colour[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                path.pop()
            elif colour[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                stack.append((nxt, iter(graph[nxt])))
                path.append(nxt)
    return None


@dataclass(frozen=True)
class OntologySchema:
    concepts: frozenset[Iri] = frozenset()
    properties: frozenset[Iri] = frozenset()
    hierarchy: frozenset[tuple[Iri, Iri]] = frozenset()
    prop_map: Mapping[Iri, frozenset[tuple[Optional[Iri], Optional[Iri]]]] = field(
        default_factory=dict)
    annotations: frozenset[tuple[Iri, str]] = frozenset()

    def __post_init__(self) -> None:
        for name in ("concepts", "properties", "hierarchy", "annotations"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "prop_map", _freeze_map(self.prop_map))

        overlap = self.concepts & self.properties
        if overlap:
            raise ModelError(f"concepts and properties overlap: {_names(overlap)}")
        for child, parent in self.hierarchy:
            if child not in self.concepts or parent not in self.concepts:
                raise ModelError(f"hierarchy pair ({child}, {parent}) references a non-concept")
        for p in self.prop_map:
            if p not in self.properties:
                raise ModelError(f"prop map key {p} is not a property")
        cycle = find_cycle(self.hierarchy)
        if cycle:
            raise ModelError("hierarchy is cyclic: " + " -> ".join(map(str, cycle)))

        parents: dict[Iri, set[Iri]] = defaultdict(set)
        children: dict[Iri, set[Iri]] = defaultdict(set)
        for child, parent in self.hierarchy:
            parents[child].add(parent)
            children[parent].add(child)
        object.__setattr__(self, "_parents", _freeze_map(parents))
        object.__setattr__(self, "_children", _freeze_map(children))

    def parents(self, c: Iri) -> frozenset[Iri]:
        return self._parents.get(c, frozenset())

    def children(self, c: Iri) -> frozenset[Iri]:
        return self._children.get(c, frozenset())

    def ancestors(self, c: Iri) -> frozenset[Iri]:
        """Strict ancestors of ``c`` under the asserted hierarchy."""
        seen: set[Iri] = set()
        todo = list(self.parents(c))
        while todo:
            p = todo.pop()
            if p not in seen:
                seen.add(p)
                todo.extend(self.parents(p))
        return frozenset(seen)

    def descendants(self, c: Iri) -> frozenset[Iri]:
        seen: set[Iri] = set()
        todo = list(self.children(c))
        while todo:
            p = todo.pop()
            if p not in seen:
                seen.add(p)
                todo.extend(self.children(p))
        return frozenset(seen)


@dataclass(frozen=True)
class KnowledgeBase:
    """Schema plus A-Box.

    ``labels`` and ``instance_comments`` are rendering aids for question
    generation; the metrics never look at them.
    """

    schema: OntologySchema = field(default_factory=OntologySchema)
    instances: frozenset[Iri] = frozenset()
    literals: frozenset[Literal] = frozenset()
    concept_inst: Mapping[Iri, frozenset[Iri]] = field(default_factory=dict)
    property_inst: Mapping[Iri, frozenset[tuple[Iri, ObjectValue]]] = field(default_factory=dict)
    labels: Mapping[Iri, str] = field(default_factory=dict)
    instance_comments: frozenset[tuple[Iri, str]] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "instances", frozenset(self.instances))
        object.__setattr__(self, "literals", frozenset(self.literals))
        object.__setattr__(self, "instance_comments", frozenset(self.instance_comments))
        # Empty sets are dropped so that key presence means "has members".
        object.__setattr__(self, "concept_inst", _freeze_map(
            {k: v for k, v in self.concept_inst.items() if v}))
        object.__setattr__(self, "property_inst", _freeze_map(
            {k: v for k, v in self.property_inst.items() if v}))
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))
        self._validate()

        out: dict[Iri, set[tuple[Iri, ObjectValue]]] = defaultdict(set)
        types: dict[Iri, set[Iri]] = defaultdict(set)
        for p, pairs in self.property_inst.items():
            for s, o in pairs:
                out[s].add((p, o))
        for c, members in self.concept_inst.items():
            for i in members:
                types[i].add(c)
        object.__setattr__(self, "_out", _freeze_map(out))
        object.__setattr__(self, "_types", _freeze_map(types))

    def _validate(self) -> None:
        s = self.schema
        clash = self.instances & (s.concepts | s.properties)
        if clash:
            raise ModelError(f"instances overlap schema entities: {_names(clash)}")
        for c, members in self.concept_inst.items():
            if c not in s.concepts:
                raise ModelError(f"concept_inst key {c} is not a concept")
            stray = members - self.instances
            if stray:
                raise ModelError(f"concept_inst({c}) has non-instances: {_names(stray)}")
        for p, pairs in self.property_inst.items():
            if p not in s.properties:
                raise ModelError(f"property_inst key {p} is not a property")
            for subj, obj in pairs:
                if subj not in self.instances:
                    raise ModelError(f"assertion subject {subj} is not an instance")
                if isinstance(obj, Literal):
                    if obj not in self.literals:
                        raise ModelError(f"assertion object {obj!r} is not in the literal set")
                elif obj not in self.instances:
                    raise ModelError(f"assertion object {obj} is not an instance")

    # -- convenience accessors --------------------------------------------

    @property
    def concepts(self) -> frozenset[Iri]:
        return self.schema.concepts

    @property
    def properties(self) -> frozenset[Iri]:
        return self.schema.properties

    @property
    def hierarchy(self) -> frozenset[tuple[Iri, Iri]]:
        return self.schema.hierarchy

    def members(self, c: Iri) -> frozenset[Iri]:
        return self.concept_inst.get(c, frozenset())

    def types_of(self, i: Iri) -> frozenset[Iri]:
        return self._types.get(i, frozenset())

    def assertion_count(self) -> int:
        return sum(len(v) for v in self.property_inst.values())

    def label(self, entity: Union[Iri, Literal]) -> str:
        if isinstance(entity, Literal):
            return entity.lexical
        return self.labels.get(entity) or entity.local_name


def _names(items: Iterable[Iri]) -> str:
    return ", ".join(sorted(str(i) for i in items))


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def populated_concepts(kb: KnowledgeBase) -> frozenset[Iri]:
    return frozenset(c for c in kb.schema.concepts if kb.concept_inst.get(c))


def siblings_of(kb: KnowledgeBase, c: Iri) -> frozenset[Iri]:
    """Concepts sharing at least one asserted immediate parent with ``c``.

    Parentless concepts are not siblings of one another: the implicit top
    concept is not part of the hierarchy.
    """
    schema = kb.schema
    if c not in schema.concepts:
        raise UnknownEntityError("concept", c)
    result: set[Iri] = set()
    for parent in schema.parents(c):
        result |= schema.children(parent)
    result.discard(c)
    return frozenset(result)


def concept_depth(kb: KnowledgeBase, c: Iri) -> int:
    """Edges from ``c`` to the implicit root along the shortest upward path."""
    schema = kb.schema
    if c not in schema.concepts:
        raise UnknownEntityError("concept", c)
    seen = {c}
    queue = deque([(c, 1)])
    while queue:
        node, depth = queue.popleft()
        parents = schema.parents(node)
        if not parents:
            return depth
        for p in parents:
            if p not in seen:
                seen.add(p)
                queue.append((p, depth + 1))
    raise AssertionError("unreachable: hierarchy is acyclic")


def out_assertions(kb: KnowledgeBase, i: Iri) -> frozenset[tuple[Iri, ObjectValue]]:
    if i not in kb.instances:
        raise UnknownEntityError("instance", i)
    return kb._out.get(i, frozenset())


def with_inferred_membership(kb: KnowledgeBase) -> KnowledgeBase:
    """Copy of ``kb`` where every instance also belongs to its classes' ancestors."""
    schema = kb.schema
    expanded: dict[Iri, set[Iri]] = defaultdict(set)
    for c, members in kb.concept_inst.items():
        expanded[c] |= members
        for a in schema.ancestors(c):
            expanded[a] |= members
    return KnowledgeBase(schema, kb.instances, kb.literals, expanded, kb.property_inst,
                         kb.labels, kb.instance_comments)
