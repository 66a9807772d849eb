"""Built-in polytope documents.

Interval family: a sphere (both normals unit), teardrop-k and rugby-k
(non-primitive normals, the rugby ball widening the quasilattice with an
extra generator), and an interval with one normal scaled by sqrt(2).
Planar family: the projective-plane triangle, its sqrt(2) skewing, the
unit square, and the regular pentagon with unit outward normals over
Q(cos(pi/10)).  Spatial family: the unit cube and a regular octahedron,
the latter kept as the canonical non-simple specimen.
"""

from __future__ import annotations

import copy

SQRT2_FIELD = {"minpoly": ["-2", "0", "1"], "root_interval": ["1", "2"]}

# theta = cos(pi/10) is a root of 16x^4 - 20x^2 + 5; over this field
# cos(2pi/5) = 2theta^2 - 3/2, sin(2pi/5) = theta,
# cos(4pi/5) = 1 - 2theta^2, sin(4pi/5) = 4theta^3 - 3theta.
COS_PI_10_FIELD = {"minpoly": ["5/16", "0", "-5/4", "0", "1"], "root_interval": ["9/10", "1"]}

_COS_2PI_5 = "2*theta^2 - 3/2"
_SIN_2PI_5 = "theta"
_COS_4PI_5 = "1 - 2*theta^2"
_SIN_4PI_5 = "4*theta^3 - 3*theta"


def _interval(left_normal: str, right_normal: str, right_offset: str, extras=None) -> dict:
    doc = {
        "dimension": 1,
        "facets": [
            {"normal": [left_normal], "offset": "0"},
            {"normal": [right_normal], "offset": right_offset},
        ],
    }
    if extras is not None:
        doc["quasilattice_extra_generators"] = extras
    return doc


def _builtins() -> dict[str, dict]:
    docs: dict[str, dict] = {}

    docs["sphere"] = _interval("1", "-1", "-1")
    for k in (2, 3, 5):
        docs[f"teardrop-{k}"] = _interval("1", str(-k), str(-k))
        docs[f"rugby-{k}"] = _interval(str(k), str(-k), str(-k), extras=[["1"]])

    docs["interval-sqrt2"] = {
        "field": SQRT2_FIELD,
        "dimension": 1,
        "facets": [
            {"normal": ["1"], "offset": "0"},
            {"normal": ["-theta"], "offset": "-theta"},
        ],
    }

    docs["cp2"] = {
        "dimension": 2,
        "facets": [
            {"normal": ["1", "0"], "offset": "0"},
            {"normal": ["0", "1"], "offset": "0"},
            {"normal": ["-1", "-1"], "offset": "-1"},
        ],
    }

    docs["triangle-sqrt2"] = {
        "field": SQRT2_FIELD,
        "dimension": 2,
        "facets": [
            {"normal": ["1", "0"], "offset": "0"},
            {"normal": ["0", "1"], "offset": "0"},
            {"normal": ["-theta", "-1"], "offset": "-theta"},
        ],
    }

    docs["square"] = {
        "dimension": 2,
        "facets": [
            {"normal": ["1", "0"], "offset": "0"},
            {"normal": ["0", "1"], "offset": "0"},
            {"normal": ["-1", "0"], "offset": "-1"},
            {"normal": ["0", "-1"], "offset": "-1"},
        ],
    }

    docs["cube"] = {
        "dimension": 3,
        "facets": [
            {"normal": ["1", "0", "0"], "offset": "0"},
            {"normal": ["0", "1", "0"], "offset": "0"},
            {"normal": ["0", "0", "1"], "offset": "0"},
            {"normal": ["-1", "0", "0"], "offset": "-1"},
            {"normal": ["0", "-1", "0"], "offset": "-1"},
            {"normal": ["0", "0", "-1"], "offset": "-1"},
        ],
    }

    docs["octahedron"] = {
        "dimension": 3,
        "facets": [
            {"normal": [sx, sy, sz], "offset": "-1"}
            for sx in ("1", "-1") for sy in ("1", "-1") for sz in ("1", "-1")
        ],
    }

    pentagon_normals = [
        ["1", "0"],
        [_COS_2PI_5, _SIN_2PI_5],
        [_COS_4PI_5, _SIN_4PI_5],
        [_COS_4PI_5, f"-({_SIN_4PI_5})"],
        [_COS_2PI_5, f"-({_SIN_2PI_5})"],
    ]
    docs["pentagon"] = {
        "field": COS_PI_10_FIELD,
        "dimension": 2,
        "facets": [
            {"normal": normal, "offset": _COS_4PI_5} for normal in pentagon_normals
        ],
    }
    return docs


_DOCS = _builtins()

DESCRIPTIONS = {
    "sphere": "unit interval, both normals primitive: the standard sphere",
    "teardrop-2": "interval with one normal scaled by 2: teardrop orbifold",
    "teardrop-3": "interval with one normal scaled by 3: teardrop orbifold",
    "teardrop-5": "interval with one normal scaled by 5: teardrop orbifold",
    "rugby-2": "both normals scaled by 2, quasilattice widened to Z: rugby-ball orbifold",
    "rugby-3": "both normals scaled by 3, quasilattice widened to Z: rugby-ball orbifold",
    "rugby-5": "both normals scaled by 5, quasilattice widened to Z: rugby-ball orbifold",
    "interval-sqrt2": "interval with normals 1 and -sqrt(2): quasifold sphere",
    "cp2": "right triangle with lattice normals: complex projective plane",
    "triangle-sqrt2": "right triangle skewed by sqrt(2): quasifold",
    "square": "unit square: product of two spheres",
    "cube": "unit cube: simple, integral",
    "octahedron": "regular octahedron: NOT simple, rejected by the construction",
    "pentagon": "regular pentagon, unit normals over Q(cos(pi/10)): quasifold",
}


def builtin_names() -> list[str]:
    return sorted(_DOCS)


def builtin_document(name: str) -> dict:
    try:
        return copy.deepcopy(_DOCS[name])
    except KeyError:
        raise KeyError(
            f"unknown builtin {name!r}; available: {', '.join(builtin_names())}"
        ) from None
