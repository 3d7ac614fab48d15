"""JSON documents for sequences and matrices.

Sequence documents::

    {"spreads": {"t1": 0, "t2": 0}, "kind": "geometric", "params": {"ratio": 0.5}}

Matrix documents::

    {"kind": "omega"}
    {"kind": "explicit", "params": {"rows": [[1], [1, 2]], "row_support": [1, 2]}}
    {"kind": "banded", "params": {"width": 4, "seed": 0}}
    {"kind": "derived", "params": {"op": "tilde", "of": {"kind": "cesaro"}}}
    {"kind": "derived", "params": {"op": "compose", "of": [{"kind": "omega"}, {"kind": "gamma"}]}}
    {"kind": "derived", "params": {"op": "G", "a": <sequence document>}}
"""

from __future__ import annotations

import json
from pathlib import Path

from .duals import build_G, build_H, derived_hat, derived_lambda, derived_sigma, derived_tilde
from .errors import DomainError
from .inf_matrix import BUILTINS, InfiniteMatrix, banded, builtin, compose, explicit
from .seq_spaces import FuzzySequence

__all__ = ["read_document", "sequence_from_doc", "matrix_from_doc", "load_sequence", "load_matrix"]

_UNARY_OPS = {
    "tilde": derived_tilde,
    "hat": derived_hat,
    "lambda": derived_lambda,
    "sigma": derived_sigma,
}
_BUILDERS = {"G": build_G, "H": build_H}


def read_document(ref: str) -> dict:
    """Parse inline JSON (``{...}``) or read a JSON file."""
    text = ref.strip()
    if not text.startswith("{"):
        try:
            text = Path(ref).read_text()
        except OSError as exc:
            raise DomainError(f"cannot read document {ref!r}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON in {ref!r}: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise DomainError(f"document {ref!r} must be a JSON object")
    return doc


def sequence_from_doc(doc: dict, exact: bool = False) -> FuzzySequence:
    return FuzzySequence.from_dict(doc, exact)


def matrix_from_doc(doc: dict, exact: bool = False) -> InfiniteMatrix:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DomainError("matrix document needs a 'kind'")
    kind = doc["kind"]
    params = doc.get("params") or {}
    if kind in BUILTINS:
        return builtin(kind, exact)
    try:
        if kind == "explicit":
            return explicit(params["rows"], params.get("row_support"), exact)
        if kind == "banded":
            return banded(**params)
        if kind == "derived":
            return _derived(params, exact)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed {kind} matrix document: {exc}") from exc
    raise DomainError(f"unknown matrix kind {kind!r}")


def _derived(params: dict, exact: bool) -> InfiniteMatrix:
    op = params["op"]
    if op == "compose":
        left, right = params["of"]
        return compose(matrix_from_doc(left, exact), matrix_from_doc(right, exact))
    if op in _UNARY_OPS:
        return _UNARY_OPS[op](matrix_from_doc(params["of"], exact))
    if op in _BUILDERS:
        return _BUILDERS[op](sequence_from_doc(params["a"], exact))
    raise DomainError(f"unknown derived-matrix op {op!r}")


def load_sequence(ref: str, exact: bool = False) -> FuzzySequence:
    return sequence_from_doc(read_document(ref), exact)


def load_matrix(ref: str, exact: bool = False) -> InfiniteMatrix:
    """Builtin name (``omega``, ``cesaro``, ...), inline JSON or a JSON file."""
    if ref in BUILTINS:
        return builtin(ref, exact)
    return matrix_from_doc(read_document(ref), exact)
