"""Exception hierarchy shared by the parser, ingest, metrics and generators."""

from __future__ import annotations


class OntologyError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OntologyError):
    """A document could not be parsed.

    ``line`` and ``column`` are 1-based and point at the offending token (or
    at the end of input when the document stops early).
    """

    def __init__(self, message: str, line: int, column: int) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class RdfSyntaxError(ParseError):
    pass


class UnsupportedConstructError(ParseError):
    """Valid in some RDF dialect (e.g. RDF-star) but not handled here."""


class ModelError(OntologyError, ValueError):
    """A schema or knowledge base violates one of its structural invariants."""


class IngestError(OntologyError):
    pass


class CycleError(IngestError):
    def __init__(self, cycle: list[str]) -> None:
        self.cycle = cycle
        super().__init__("subsumption cycle: " + " -> ".join(cycle))


class PunningError(IngestError):
    def __init__(self, iri: str, roles: list[str]) -> None:
        self.iri = iri
        self.roles = roles
        super().__init__(f"{iri} is used as more than one of {', '.join(roles)}")


class EmptyOntologyError(IngestError):
    pass


class UnknownEntityError(OntologyError, KeyError):
    def __init__(self, kind: str, iri: object) -> None:
        self.kind = kind
        self.iri = iri
        super().__init__(f"unknown {kind}: {iri}")

    def __str__(self) -> str:
        return self.args[0]


class UndefinedMetricError(OntologyError, ZeroDivisionError):
    def __init__(self, metric: str, reason: str) -> None:
        self.metric = metric
        self.reason = reason
        super().__init__(f"{metric} is undefined: {reason}")


class InvalidParameterError(OntologyError, ValueError):
    pass
