"""Canonical on-disk formats: factorization documents and profile fixtures.

Both formats are JSON with a `format` version field, serialized
canonically (sorted keys, compact separators, trailing newline) so golden
tests can compare bytes.  A factorization document stores the model block,
n, lambda and the factor list as arrays of [u, v] pairs; factors and edges
are written in canonical sorted order.
"""

from __future__ import annotations

import json

from .core import FactorError, MultiFactorization

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Document text is not a well-formed factorization document."""


def document_from_mf(mf: MultiFactorization) -> dict:
    return {
        "format": FORMAT_VERSION,
        "model": dict(mf.model),
        "n": mf.n,
        "lambda": mf.lam,
        "factors": [[[u, v] for u, v in f] for f in mf.factors],
    }


def mf_from_document(doc: dict) -> MultiFactorization:
    try:
        if doc["format"] != FORMAT_VERSION:
            raise ParseError(f"unsupported format {doc['format']!r}")
        n = doc["n"]
        lam = doc["lambda"]
        model = doc["model"]
        factors = doc["factors"]
        if not (isinstance(n, int) and isinstance(lam, int) and n >= 2 and lam >= 1):
            raise ParseError("n and lambda must be integers with n >= 2, lambda >= 1")
        if not isinstance(model, dict) or "tag" not in model:
            raise ParseError("model block must carry a tag")
        return MultiFactorization.make(n, lam, factors, model)
    except ParseError:
        raise
    except (KeyError, TypeError, FactorError) as exc:
        raise ParseError(f"malformed document: {exc}") from exc


def serialize(doc: dict) -> str:
    """Bit-exact canonical serialization."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    return doc


def write_mf(mf: MultiFactorization, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(document_from_mf(mf)))


def read_mf(path) -> MultiFactorization:
    with open(path) as fh:
        return mf_from_document(parse(fh.read()))


def profile_to_pairs(profile: dict[int, int]) -> list[list[int]]:
    return [[a, t] for a, t in sorted(profile.items())]


def fixture_document(entries: list[dict]) -> dict:
    """Profile fixture file: one entry per (family, n, lambda)."""
    return {"format": FORMAT_VERSION, "fixtures": entries}
