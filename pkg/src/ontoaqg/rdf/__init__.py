"""RDF parsing and serialisation."""

from .ntriples import format_term, serialize_ntriples
from .turtle import parse_document

__all__ = ["parse_document", "serialize_ntriples", "format_term", "parse_file"]


def parse_file(path, syntax=None, base=None):
    """Parse a ``.ttl`` or ``.nt`` file; syntax is inferred from the suffix."""
    from pathlib import Path

    p = Path(path)
    if syntax is None:
        syntax = "ntriples" if p.suffix.lower() in (".nt", ".ntriples") else "turtle"
    return parse_document(p.read_text(encoding="utf-8"), syntax, base=base)
