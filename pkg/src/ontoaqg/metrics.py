"""Task-specific ontology metrics for question-generation fitness.

Each metric is a pure function over a :class:`KnowledgeBase`. Metrics whose
denominator can vanish raise :class:`UndefinedMetricError`, except average
connectivity and sibling fan-outness, which return 0 for an empty A-Box;
:func:`evaluate_all` turns every undefined case into a 0 plus a flag.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Literal as Choice, Mapping, Optional, Sequence

from .errors import InvalidParameterError, UndefinedMetricError
from .model import KnowledgeBase, concept_depth, out_assertions, populated_concepts, siblings_of
from .terms import Iri


class FragmentKind(str, enum.Enum):
    CONCEPT_INSTANTIATION = "ConceptInstantiation"
    PROPERTY_INSTANTIATION = "PropertyInstantiation"
    SUBSUMPTION = "Subsumption"
    ANNOTATION = "Annotation"


DEFAULT_FRAGMENTS: tuple[FragmentKind, ...] = tuple(FragmentKind)

# Metric identifiers in report order.
METRICS = ("pc", "cr", "p", "ir", "rd", "rr", "cn", "sf", "d")
BOUNDED = frozenset({"pc", "cr", "rd", "rr"})
UNBOUNDED = frozenset({"p", "ir", "cn", "sf", "d"})
METRIC_NAMES = {
    "pc": "Pattern Coverage",
    "cr": "Class Richness",
    "p": "Average Population",
    "ir": "Inheritance Richness",
    "rd": "Relationship Diversity",
    "rr": "Av. Relationship Richness",
    "cn": "Average Connectivity",
    "sf": "Sibling Fan-Outness",
    "d": "Average Depth",
}

SfDenominator = Choice["populated", "all"]


def _squash(name: str) -> str:
    return "".join(ch for ch in name.lower() if ch.isalnum())


def parse_fragments(names: Iterable[str]) -> tuple[FragmentKind, ...]:
    """Accepts ``ConceptInstantiation``, ``concept-instantiation`` or ``CONCEPT_INSTANTIATION``."""
    lookup = {_squash(k.value): k for k in FragmentKind}
    out = []
    for name in names:
        kind = lookup.get(_squash(str(name).strip()))
        if kind is None:
            raise InvalidParameterError(f"unknown fragment kind: {name!r}")
        if kind not in out:
            out.append(kind)
    if not out:
        raise InvalidParameterError("fragment inventory must not be empty")
    return tuple(out)


def used_fragments(kb: KnowledgeBase) -> frozenset[FragmentKind]:
    used = set()
    if any(kb.concept_inst.values()):
        used.add(FragmentKind.CONCEPT_INSTANTIATION)
    if any(kb.property_inst.values()):
        used.add(FragmentKind.PROPERTY_INSTANTIATION)
    if kb.schema.hierarchy:
        used.add(FragmentKind.SUBSUMPTION)
    if kb.schema.annotations:
        used.add(FragmentKind.ANNOTATION)
    return frozenset(used)


def pattern_coverage(kb: KnowledgeBase,
                     inventory: Sequence[FragmentKind] = DEFAULT_FRAGMENTS
                     ) -> tuple[float, frozenset[FragmentKind]]:
    inventory = tuple(inventory)
    if not inventory:
        raise InvalidParameterError("fragment inventory must not be empty")
    used = used_fragments(kb) & frozenset(inventory)
    return len(used) / len(inventory), used


def _require_concepts(kb: KnowledgeBase, metric: str) -> int:
    n = len(kb.schema.concepts)
    if n == 0:
        raise UndefinedMetricError(metric, "ontology has no classes")
    return n


def class_richness(kb: KnowledgeBase) -> float:
    n = _require_concepts(kb, "cr")
    return len(populated_concepts(kb)) / n


def average_population(kb: KnowledgeBase) -> float:
    n = _require_concepts(kb, "p")
    return len(kb.instances) / n


def inheritance_richness(kb: KnowledgeBase) -> float:
    n = _require_concepts(kb, "ir")
    return len(kb.schema.hierarchy) / n


def relationship_diversity(kb: KnowledgeBase) -> float:
    assertions = kb.assertion_count()
    subsumptions = len(kb.schema.hierarchy)
    if assertions + subsumptions == 0:
        raise UndefinedMetricError("rd", "no property assertions and no subsumptions")
    return assertions / (subsumptions + assertions)


def defined_properties(kb: KnowledgeBase) -> dict[Iri, frozenset[Iri]]:
    """Properties whose declared domain is each class or one of its ancestors.

    When no property anywhere declares a domain, every property counts as
    defined for every populated class.
    """
    schema = kb.schema
    by_domain: dict[Iri, set[Iri]] = {}
    any_domain = False
    for p, pairs in schema.prop_map.items():
        for d, _ in pairs:
            if d is not None:
                any_domain = True
                by_domain.setdefault(d, set()).add(p)
    result: dict[Iri, frozenset[Iri]] = {}
    if not any_domain:
        everything = frozenset(schema.properties)
        if everything:
            for c in populated_concepts(kb):
                result[c] = everything
        return result
    for c in schema.concepts:
        defined: set[Iri] = set(by_domain.get(c, ()))
        for a in schema.ancestors(c):
            defined |= by_domain.get(a, set())
        if defined:
            result[c] = frozenset(defined)
    return result


def relationship_richness_by_class(kb: KnowledgeBase) -> dict[Iri, float]:
    per_class: dict[Iri, float] = {}
    for c, defined in defined_properties(kb).items():
        used: set[Iri] = set()
        for i in kb.members(c):
            for p, _ in out_assertions(kb, i):
                if p in defined:
                    used.add(p)
        per_class[c] = len(used) / len(defined)
    return per_class


def average_relationship_richness(kb: KnowledgeBase) -> float:
    per_class = relationship_richness_by_class(kb)
    if not per_class:
        raise UndefinedMetricError("rr", "no class has a defined property")
    return sum(per_class.values()) / len(per_class)


def average_connectivity(kb: KnowledgeBase) -> float:
    if not kb.instances:
        return 0.0
    total = sum(len(out_assertions(kb, i)) for i in kb.instances)
    return total / len(kb.instances)


def populated_siblings(kb: KnowledgeBase) -> frozenset[Iri]:
    populated = populated_concepts(kb)
    return frozenset(c for c in populated if siblings_of(kb, c) & populated)


def sibling_fan_outness(kb: KnowledgeBase, denominator: SfDenominator = "populated") -> float:
    if denominator not in ("populated", "all"):
        raise InvalidParameterError(f"sf denominator must be 'populated' or 'all', not {denominator!r}")
    base = populated_concepts(kb) if denominator == "populated" else kb.schema.concepts
    if not base:
        return 0.0
    return len(populated_siblings(kb)) / len(base)


def average_depth(kb: KnowledgeBase) -> float:
    n = _require_concepts(kb, "d")
    return sum(concept_depth(kb, c) for c in kb.schema.concepts) / n


@dataclass(frozen=True)
class MetricConfig:
    fragments: tuple[FragmentKind, ...] = DEFAULT_FRAGMENTS
    sf_denominator: SfDenominator = "populated"


@dataclass(frozen=True)
class MetricReport:
    ontology_id: str
    pc: float
    cr: float
    p: float
    ir: float
    rd: float
    rr: float
    cn: float
    sf: float
    d: float
    used_fragments: frozenset[FragmentKind]
    fragment_total: int
    counts: Mapping[str, int]
    flags: Mapping[str, str] = field(default_factory=dict)

    def values(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in METRICS}

    def rounded(self, digits: int = 1) -> dict[str, float]:
        return {m: round(v, digits) for m, v in self.values().items()}


def intermediate_counts(kb: KnowledgeBase) -> dict[str, int]:
    return {
        "concepts": len(kb.schema.concepts),
        "populatedConcepts": len(populated_concepts(kb)),
        "instances": len(kb.instances),
        "subsumptions": len(kb.schema.hierarchy),
        "propertyAssertions": kb.assertion_count(),
        "populatedSiblings": len(populated_siblings(kb)),
    }


def evaluate_all(kb: KnowledgeBase, ontology_id: str,
                 config: Optional[MetricConfig] = None) -> MetricReport:
    config = config or MetricConfig()
    flags: dict[str, str] = {}
    values: dict[str, float] = {}

    pc, used = pattern_coverage(kb, config.fragments)
    values["pc"] = pc
    if not (kb.schema.concepts or kb.schema.properties or kb.instances):
        flags["pc"] = "knowledge base is empty"

    guarded = {
        "cr": class_richness,
        "p": average_population,
        "ir": inheritance_richness,
        "rd": relationship_diversity,
        "rr": average_relationship_richness,
        "d": average_depth,
    }
    for name, fn in guarded.items():
        try:
            values[name] = fn(kb)
        except UndefinedMetricError as exc:
            values[name] = 0.0
            flags[name] = exc.reason

    values["cn"] = average_connectivity(kb)
    if not kb.instances:
        flags["cn"] = "knowledge base has no instances"
    values["sf"] = sibling_fan_outness(kb, config.sf_denominator)
    if config.sf_denominator == "populated" and not populated_concepts(kb):
        flags["sf"] = "no populated classes"
    elif config.sf_denominator == "all" and not kb.schema.concepts:
        flags["sf"] = "ontology has no classes"

    return MetricReport(
        ontology_id=ontology_id,
        used_fragments=used,
        fragment_total=len(config.fragments),
        counts=intermediate_counts(kb),
        flags={k: flags[k] for k in METRICS if k in flags},
        **{m: float(values[m]) for m in METRICS},
    )


def normalize_profiles(reports: Sequence[MetricReport]) -> list[dict[str, float]]:
    """Scale unbounded metrics by their maximum across ``reports``.

    Bounded metrics pass through unchanged. A column whose maximum is 0
    stays all-zero.
    """
    if not reports:
        raise InvalidParameterError("normalize_profiles needs at least one report")
    maxima = {m: max(getattr(r, m) for r in reports) for m in UNBOUNDED}
    rows = []
    for r in reports:
        row = {}
        for m in METRICS:
            v = getattr(r, m)
            if m in UNBOUNDED:
                row[m] = v / maxima[m] if maxima[m] > 0 else 0.0
            else:
                row[m] = v
        rows.append(row)
    return rows
