"""Template-based question generation over a knowledge base.

Six strategies, each a pure function of the knowledge base. Stems use fixed
templates with no verbalisation; entities render as their ``rdfs:label``
when present, otherwise as the IRI local name. All iteration happens in
sorted IRI order so output is reproducible.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import InvalidParameterError
from .model import KnowledgeBase, ObjectValue, populated_concepts, siblings_of
from .rdf.ntriples import format_triple
from .terms import Iri, Literal, RDF_TYPE, RDFS_COMMENT, RDFS_SUBCLASSOF, Triple, term_key


class Strategy(str, enum.Enum):
    CLASS_MEMBERSHIP = "ClassMembership"
    PROPERTY_BASED = "PropertyBased"
    TERMINOLOGY = "TerminologyBased"
    ANNOTATION = "AnnotationBased"
    MCQ = "MCQ"
    MULTI_ENTITY = "MultiEntity"


# CLI spellings, in report order.
STRATEGY_NAMES = {
    "class-membership": Strategy.CLASS_MEMBERSHIP,
    "property": Strategy.PROPERTY_BASED,
    "terminology": Strategy.TERMINOLOGY,
    "annotation": Strategy.ANNOTATION,
    "mcq": Strategy.MCQ,
    "multi-entity": Strategy.MULTI_ENTITY,
}

STRATEGY_LABELS = {
    Strategy.CLASS_MEMBERSHIP: "Class membership",
    Strategy.PROPERTY_BASED: "Property-based",
    Strategy.TERMINOLOGY: "Terminology-based",
    Strategy.ANNOTATION: "Annotation-based",
    Strategy.MCQ: "MCQs",
    Strategy.MULTI_ENTITY: "Multi-entity",
}


def parse_strategies(names: Iterable[str]) -> frozenset[Strategy]:
    out: set[Strategy] = set()
    for raw in names:
        for name in str(raw).split(","):
            name = name.strip().lower()
            if not name:
                continue
            if name == "all":
                out.update(Strategy)
            elif name in STRATEGY_NAMES:
                out.add(STRATEGY_NAMES[name])
            else:
                matches = [s for s in Strategy if s.value.lower() == name]
                if not matches:
                    raise InvalidParameterError(f"unknown strategy: {name!r}")
                out.add(matches[0])
    return frozenset(out)


@dataclass(frozen=True)
class Question:
    strategy: Strategy
    stem: str
    correct_answers: tuple[str, ...]
    distractors: tuple[str, ...] = ()
    source_triples: tuple[Triple, ...] = ()
    focus_entity: Optional[Iri] = None

    def __post_init__(self) -> None:
        if not self.correct_answers:
            raise ValueError("a question needs at least one correct answer")
        if self.strategy is Strategy.MCQ:
            if not self.distractors:
                raise ValueError("an MCQ needs at least one distractor")
            if set(self.distractors) & set(self.correct_answers):
                raise ValueError("distractors overlap the correct answers")

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy.value,
            "stem": self.stem,
            "answers": list(self.correct_answers),
            "distractors": list(self.distractors),
            "source": [format_triple(t) for t in self.source_triples],
            "focus": self.focus_entity.value if self.focus_entity else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=False, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"[{STRATEGY_LABELS[self.strategy]}] {self.stem}"]
        if self.distractors:
            options = sorted(self.correct_answers + self.distractors)
            for idx, opt in enumerate(options):
                mark = "*" if opt in self.correct_answers else " "
                lines.append(f"  {mark} {chr(ord('a') + idx)}) {opt}")
        else:
            lines.append("  answer: " + "; ".join(self.correct_answers))
        return "\n".join(lines)


def _iri_sorted(items: Iterable[Iri]) -> list[Iri]:
    return sorted(items, key=lambda i: i.value)


def gen_class_membership(kb: KnowledgeBase) -> list[Question]:
    questions = []
    for c in _iri_sorted(kb.concept_inst):
        for x in _iri_sorted(kb.members(c)):
            questions.append(Question(
                Strategy.CLASS_MEMBERSHIP,
                f"To which class does {kb.label(x)} belong?",
                (kb.label(c),),
                source_triples=(Triple(x, RDF_TYPE, c),),
                focus_entity=x,
            ))
    return questions


def _sorted_assertions(kb: KnowledgeBase) -> list[tuple[Iri, Iri, ObjectValue]]:
    rows = [(s, p, o) for p, pairs in kb.property_inst.items() for s, o in pairs]
    rows.sort(key=lambda r: (r[0].value, r[1].value, term_key(r[2])))
    return rows


def gen_property_based(kb: KnowledgeBase) -> list[Question]:
    return [
        Question(
            Strategy.PROPERTY_BASED,
            f"What is the {kb.label(p)} of {kb.label(x)}?",
            (kb.label(y),),
            source_triples=(Triple(x, p, y),),
            focus_entity=x,
        )
        for x, p, y in _sorted_assertions(kb)
    ]


def gen_terminology(kb: KnowledgeBase) -> list[Question]:
    pairs = sorted(kb.schema.hierarchy, key=lambda e: (e[0].value, e[1].value))
    return [
        Question(
            Strategy.TERMINOLOGY,
            f"What is the superclass of {kb.label(child)}?",
            (kb.label(parent),),
            source_triples=(Triple(child, RDFS_SUBCLASSOF, parent),),
            focus_entity=child,
        )
        for child, parent in pairs
    ]


def gen_annotation(kb: KnowledgeBase, include_instances: bool = False) -> list[Question]:
    notes = set(kb.schema.annotations)
    if include_instances:
        notes |= kb.instance_comments
    return [
        Question(
            Strategy.ANNOTATION,
            f"Which term is described as: '{text}'?",
            (kb.label(entity),),
            source_triples=(Triple(entity, RDFS_COMMENT, Literal(text)),),
            focus_entity=entity,
        )
        for entity, text in sorted(notes, key=lambda a: (a[0].value, a[1]))
    ]


def _is_member(kb: KnowledgeBase, i: Iri, target: Iri) -> bool:
    """Asserted membership of ``target`` or of any subclass of it."""
    for c in kb.types_of(i):
        if c == target or target in kb.schema.ancestors(c):
            return True
    return False


def gen_mcq(kb: KnowledgeBase, max_distractors: int = 3) -> list[Question]:
    """One "Which of these is a X?" item per populated class with populated siblings.

    The correct answer is the first instance of X (IRI order); each distractor
    comes from a different populated sibling, taking siblings and then their
    instances in ascending IRI order and skipping anything that is itself a
    member of X. Repeated stems are dropped.
    """
    if not isinstance(max_distractors, int) or max_distractors < 1:
        raise InvalidParameterError("max_distractors must be a positive integer")
    schema = kb.schema
    populated = populated_concepts(kb)
    questions: list[Question] = []
    seen_stems: set[str] = set()
    for target in _iri_sorted(populated):
        sibs = siblings_of(kb, target) & populated
        if not sibs:
            continue
        answer_inst = _iri_sorted(kb.members(target))[0]
        answer = kb.label(answer_inst)
        distractors: list[str] = []
        sources = [Triple(answer_inst, RDF_TYPE, target)]
        for sib in _iri_sorted(sibs):
            if len(distractors) >= max_distractors:
                break
            for cand in _iri_sorted(kb.members(sib)):
                text = kb.label(cand)
                if _is_member(kb, cand, target) or text == answer or text in distractors:
                    continue
                distractors.append(text)
                shared = _iri_sorted(schema.parents(target) & schema.parents(sib))[0]
                sources.append(Triple(cand, RDF_TYPE, sib))
                sources.append(Triple(sib, RDFS_SUBCLASSOF, shared))
                if Triple(target, RDFS_SUBCLASSOF, shared) not in sources:
                    sources.append(Triple(target, RDFS_SUBCLASSOF, shared))
                break
        if not distractors:
            continue
        stem = f"Which of these is a {kb.label(target)}?"
        if stem in seen_stems:
            continue
        seen_stems.add(stem)
        questions.append(Question(Strategy.MCQ, stem, (answer,), tuple(distractors),
                                  tuple(sources), target))
    return questions


def gen_multi_entity(kb: KnowledgeBase, pair_cap: int = 3) -> list[Question]:
    """Pair two facts about one instance: one is the constraint, one is asked.

    Facts are ordered by (property IRI, object); pairs are enumerated in
    lexicographic order over that list, skipping same-property pairs, and at
    most ``pair_cap`` are kept per instance. In each pair the first fact is
    asked and the second is the constraint.
    """
    if not isinstance(pair_cap, int) or pair_cap < 1:
        raise InvalidParameterError("pair_cap must be a positive integer")
    questions = []
    by_subject: dict[Iri, list[tuple[Iri, ObjectValue]]] = {}
    for x, p, o in _sorted_assertions(kb):
        by_subject.setdefault(x, []).append((p, o))
    for x in _iri_sorted(by_subject):
        facts = by_subject[x]
        if len({p for p, _ in facts}) < 2:
            continue
        emitted = 0
        for (p1, y), (p2, z) in combinations(facts, 2):
            if p1 == p2:
                continue
            questions.append(Question(
                Strategy.MULTI_ENTITY,
                f"Regarding {kb.label(x)}, which has {kb.label(p2)} = {kb.label(z)}: "
                f"what is its {kb.label(p1)}?",
                (kb.label(y),),
                source_triples=(Triple(x, p1, y), Triple(x, p2, z)),
                focus_entity=x,
            ))
            emitted += 1
            if emitted >= pair_cap:
                break
    return questions


@dataclass(frozen=True)
class QGenConfig:
    strategies: frozenset[Strategy] = frozenset(Strategy)
    max_distractors: int = 3
    pair_cap: int = 3
    instance_comments: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.max_distractors, int) or self.max_distractors < 1:
            raise InvalidParameterError("max_distractors must be a positive integer")
        if not isinstance(self.pair_cap, int) or self.pair_cap < 1:
            raise InvalidParameterError("pair_cap must be a positive integer")
        object.__setattr__(self, "strategies", frozenset(self.strategies))


def _generators(config: QGenConfig) -> list[tuple[Strategy, Callable[[KnowledgeBase], list[Question]]]]:
    return [
        (Strategy.CLASS_MEMBERSHIP, gen_class_membership),
        (Strategy.PROPERTY_BASED, gen_property_based),
        (Strategy.TERMINOLOGY, gen_terminology),
        (Strategy.ANNOTATION, lambda kb: gen_annotation(kb, config.instance_comments)),
        (Strategy.MCQ, lambda kb: gen_mcq(kb, config.max_distractors)),
        (Strategy.MULTI_ENTITY, lambda kb: gen_multi_entity(kb, config.pair_cap)),
    ]


def generate_all(kb: KnowledgeBase, config: Optional[QGenConfig] = None) -> list[Question]:
    """Run the enabled strategies in fixed order, then drop repeated questions.

    Two questions are repeats when stem and correct answers coincide, so a
    multi-valued property still yields one question per value.
    """
    config = config or QGenConfig()
    out: list[Question] = []
    seen: set[tuple[str, tuple[str, ...]]] = set()
    for strategy, gen in _generators(config):
        if strategy not in config.strategies:
            continue
        for q in gen(kb):
            key = (q.stem, q.correct_answers)
            if key in seen:
                continue
            seen.add(key)
            out.append(q)
    return out


def count_by_strategy(questions: Iterable[Question]) -> dict[Strategy, int]:
    counts = {s: 0 for s in Strategy}
    for q in questions:
        counts[q.strategy] += 1
    return counts
