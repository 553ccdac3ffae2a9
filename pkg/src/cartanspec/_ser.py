"""JSON-oriented conversion helpers shared by the checkers and the CLI.

Complex scalars serialize as [re, im] pairs; canonical dumps sort keys and
drop whitespace so digests are stable across runs.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np


def complex_to_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_to_complex(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(p, (int, float)) for p in value)
    ):
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"expected a number or an [re, im] pair, got {value!r}")


def vector_to_jsonable(v) -> list:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=complex)]


def matrix_to_jsonable(m) -> list:
    return [vector_to_jsonable(row) for row in np.asarray(m, dtype=complex)]


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()
