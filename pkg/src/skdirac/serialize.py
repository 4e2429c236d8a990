"""JSON documents for quadruples and realizations (schemaVersion "1").

Complex entries are ``[re, im]`` pairs; matrices are nested row lists. Python
writes floats with the shortest round-trip representation, so
``load(dump(x))`` reproduces every entry bit for bit.
"""

import json

import numpy as np

from .quadruple import AdmissibleQuadruple
from .realization import CONVENTIONS, StateSpaceRealization

SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Malformed or inconsistent document (a parse failure, not a domain failure)."""


class NotStrictlyProperError(ValueError):
    """Well-formed document describing a function that is not strictly proper."""


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(data, rows, cols, name):
    if not isinstance(data, list) or len(data) != rows:
        raise DocumentError(f"{name}: expected {rows} rows")
    out = np.zeros((rows, cols), dtype=complex)
    for r, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{name}: row {r} must have {cols} entries")
        for c, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            ):
                raise DocumentError(f"{name}[{r}][{c}] must be a [re, im] pair of numbers")
            if not all(np.isfinite(pair)):
                raise DocumentError(f"{name}[{r}][{c}] is not finite")
            out[r, c] = complex(pair[0], pair[1])
    return out


def _count(doc, key):
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise DocumentError(f"{key} must be a non-negative integer")
    return v


def _check_version(doc):
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("schemaVersion") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schemaVersion {doc.get('schemaVersion')!r}")


def quadruple_to_doc(q):
    return {
        "schemaVersion": SCHEMA_VERSION,
        "n": q.n,
        "m1": q.m1,
        "m2": q.m2,
        "alpha": matrix_to_json(q.alpha),
        "s0": matrix_to_json(q.s0),
        "theta1": matrix_to_json(q.theta1),
        "theta2": matrix_to_json(q.theta2),
    }


def quadruple_from_doc(doc):
    _check_version(doc)
    n, m1, m2 = _count(doc, "n"), _count(doc, "m1"), _count(doc, "m2")
    return AdmissibleQuadruple(
        matrix_from_json(doc.get("alpha"), n, n, "alpha"),
        matrix_from_json(doc.get("s0"), n, n, "s0"),
        matrix_from_json(doc.get("theta1"), n, m1, "theta1"),
        matrix_from_json(doc.get("theta2"), n, m2, "theta2"),
    )


def realization_to_doc(r):
    rows, cols = r.shape
    return {
        "schemaVersion": SCHEMA_VERSION,
        "convention": r.convention,
        "stateDim": r.state_dim,
        "inputDim": cols,
        "outputDim": rows,
        "gamma": matrix_to_json(r.gamma),
        "inputMap": matrix_to_json(r.input_map),
        "outputMap": matrix_to_json(r.output_map),
    }


def realization_from_doc(doc):
    """Parse a realization; ``stateDim``/``inputDim``/``outputDim`` may be omitted when ``n > 0``."""
    _check_version(doc)
    conv = doc.get("convention")
    if conv not in CONVENTIONS:
        raise DocumentError(f"convention must be one of {CONVENTIONS}")
    gamma = doc.get("gamma")
    if not isinstance(gamma, list):
        raise DocumentError("gamma must be a list")
    n = _count(doc, "stateDim") if "stateDim" in doc else len(gamma)
    inp, out = doc.get("inputMap"), doc.get("outputMap")
    if not isinstance(inp, list) or not isinstance(out, list):
        raise DocumentError("inputMap and outputMap must be lists")
    if "inputDim" in doc:
        cols = _count(doc, "inputDim")
    elif n and inp and isinstance(inp[0], list):
        cols = len(inp[0])
    else:
        raise DocumentError("inputDim is required when the state dimension is 0")
    if "outputDim" in doc:
        rows = _count(doc, "outputDim")
    elif n:
        rows = len(out)
    else:
        raise DocumentError("outputDim is required when the state dimension is 0")
    if "feedthrough" in doc:
        d = matrix_from_json(doc["feedthrough"], rows, cols, "feedthrough")
        if np.any(d != 0):
            raise NotStrictlyProperError("the function has a nonzero feedthrough term")
    return StateSpaceRealization(
        matrix_from_json(gamma, n, n, "gamma"),
        matrix_from_json(inp, n, cols, "inputMap"),
        matrix_from_json(out, rows, n, "outputMap"),
        conv,
    )


def dumps(doc):
    return json.dumps(doc, allow_nan=False)


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
