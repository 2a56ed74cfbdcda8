"""Ontology fitness metrics and template question generation for AQG."""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    KnowledgeBase, OntologySchema, concept_depth, out_assertions, populated_concepts,
    siblings_of,
)
from .rdf import parse_document, parse_file, serialize_ntriples  # noqa: E402
from .rdf.ingest import build_knowledge_base  # noqa: E402
from .metrics import MetricReport, evaluate_all, normalize_profiles  # noqa: E402
from .qgen import Question, generate_all  # noqa: E402

__all__ = [
    "KnowledgeBase", "OntologySchema", "concept_depth", "out_assertions",
    "populated_concepts", "siblings_of", "parse_document", "parse_file",
    "serialize_ntriples", "build_knowledge_base", "MetricReport", "evaluate_all",
    "normalize_profiles", "Question", "generate_all",
]
