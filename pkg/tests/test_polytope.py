"""Polytope parsing, vertex enumeration, simplicity, rationality, integrality.

Vertex enumeration is cross-checked against an independent float-based
enumerator (numpy solves over all facet subsets) on every builtin.
"""

import itertools
import json

import numpy as np
import pytest

from quasifold import (
    LowerDimensional,
    NormalsDontSpan,
    NotRationalInput,
    SchemaError,
    UnboundedPolytope,
    builtin_document,
    builtin_names,
    check_delzant,
    check_rational,
    check_simple,
    parse_polytope,
)
from conftest import load_builtin


def doc(dimension, facets, field=None, extra=None):
    d = {"dimension": dimension,
         "facets": [{"normal": list(n), "offset": o} for n, o in facets]}
    if field is not None:
        d["field"] = field
    if extra is not None:
        d["quasilattice_extra_generators"] = extra
    return d


SQRT2_FIELD = {"minpoly": ["-2", "0", "1"], "root_interval": ["1", "2"]}


# --------------------------------------------------------------------------
# Parsing and validation
# --------------------------------------------------------------------------

class TestParse:
    def test_unit_square(self):
        p = load_builtin("square")
        assert p.dim == 2
        assert p.facet_count == 4

    def test_skewed_triangle(self):
        p = load_builtin("triangle-sqrt2")
        assert p.dim == 2 and p.facet_count == 3
        t = p.field.theta
        assert p.normals[2] == (-t, -p.field.one)
        assert p.offsets[2] == -t

    def test_strip_normals_do_not_span(self):
        # normals (1,0) and (-1,0) only span a line inside R^2
        with pytest.raises(NormalsDontSpan):
            parse_polytope(doc(2, [(["1", "0"], "0"), (["-1", "0"], "0")]))

    def test_unbounded_quadrant(self):
        with pytest.raises(UnboundedPolytope) as info:
            parse_polytope(doc(2, [(["1", "0"], "0"), (["0", "1"], "0")]))
        assert info.value.direction is not None

    def test_empty_feasible_set(self):
        with pytest.raises(LowerDimensional):
            parse_polytope(doc(1, [(["1"], "2"), (["-1"], "0")]))

    def test_lower_dimensional_slab(self):
        # x = 0 slab crossed with [0,1]: nonempty but affinely 1-dimensional
        with pytest.raises(LowerDimensional):
            parse_polytope(doc(2, [
                (["1", "0"], "0"), (["-1", "0"], "0"),
                (["0", "1"], "0"), (["0", "-1"], "-1"),
            ]))

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("dimension"),
        lambda d: d.pop("facets"),
        lambda d: d.update(dimension="2"),
        lambda d: d.update(dimension=0),
        lambda d: d.update(facets=[]),
        lambda d: d.update(facets="nope"),
        lambda d: d.update(unexpected=1),
        lambda d: d["facets"][0].pop("offset"),
        lambda d: d["facets"][0].update(offset=0.5),
        lambda d: d["facets"][0].update(normal=["0", "0"]),
        lambda d: d["facets"][0].update(normal=["1"]),
        lambda d: d["facets"][0].update(junk=True),
    ])
    def test_schema_errors(self, mutate):
        document = doc(2, [
            (["1", "0"], "0"), (["0", "1"], "0"),
            (["-1", "0"], "-1"), (["0", "-1"], "-1"),
        ])
        mutate(document)
        with pytest.raises(SchemaError):
            parse_polytope(document)

    def test_float_offset_rejected_even_when_integral(self):
        document = doc(1, [(["1"], 0.0), (["-1"], "-1")])
        with pytest.raises(SchemaError):
            parse_polytope(document)

    def test_bad_field_section(self):
        document = doc(1, [(["1"], "0"), (["-1"], "-1")],
                       field={"minpoly": ["-2", "0", "1"]})
        with pytest.raises(SchemaError):
            parse_polytope(document)

    def test_builtin_documents_round_trip_json(self):
        for name in builtin_names():
            parsed = json.loads(json.dumps(builtin_document(name)))
            parse_polytope(parsed)  # must not raise


# --------------------------------------------------------------------------
# Vertex enumeration
# --------------------------------------------------------------------------

def float_vertex_oracle(document, tol=1e-8):
    """Independent float enumeration over all n-subsets of facets."""
    field_spec = document.get("field")
    if field_spec is None:
        to_float = float
        field = None
    else:
        from quasifold import Field, parse_scalar
        field = Field(tuple(field_spec["minpoly"]),
                      tuple(field_spec["root_interval"]))
        to_float = lambda s: parse_scalar(str(s), field).to_float()
    n = document["dimension"]
    normals = np.array([[to_float(x) for x in f["normal"]] for f in document["facets"]])
    offsets = np.array([to_float(f["offset"]) for f in document["facets"]])
    found = []
    for subset in itertools.combinations(range(len(normals)), n):
        a = normals[list(subset)]
        if abs(np.linalg.det(a)) < tol:
            continue
        mu = np.linalg.solve(a, offsets[list(subset)])
        if np.all(normals @ mu - offsets >= -tol):
            if not any(np.linalg.norm(mu - v) < 1e-6 for v in found):
                found.append(mu)
    return found


class TestVertices:
    def test_unit_square_vertices(self):
        p = load_builtin("square")
        pts = sorted(tuple(s.as_fraction() for s in v.point) for v in p.vertices)
        assert pts == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_triangle_vertices(self):
        p = load_builtin("triangle-sqrt2")
        t, zero, one = p.field.theta, p.field.zero, p.field.one
        pts = {v.point for v in p.vertices}
        assert pts == {(zero, zero), (one, zero), (zero, t)}

    def test_pentagon_vertices_equal_norm(self):
        p = load_builtin("pentagon")
        one = p.field.one
        assert len(p.vertices) == 5
        for v in p.vertices:
            norm_sq = sum((x * x for x in v.point), p.field.zero)
            assert norm_sq == one

    def test_active_sets_are_exact(self):
        for name in ("square", "cube", "pentagon", "triangle-sqrt2"):
            p = load_builtin(name)
            for v in p.vertices:
                for j in range(p.facet_count):
                    slack = p.slack(v.point, j)
                    if j in v.active:
                        assert slack.is_zero()
                    else:
                        assert slack.sign() > 0

    @pytest.mark.parametrize("name", sorted(builtin_names()))
    def test_matches_float_oracle(self, name):
        document = builtin_document(name)
        p = parse_polytope(document)
        oracle = float_vertex_oracle(document)
        assert len(p.vertices) == len(oracle)
        exact = [np.array([s.to_float() for s in v.point]) for v in p.vertices]
        for mu in oracle:
            assert min(np.linalg.norm(mu - e) for e in exact) < 1e-6


# --------------------------------------------------------------------------
# Simplicity
# --------------------------------------------------------------------------

class TestSimple:
    def test_cube_simple(self):
        assert check_simple(load_builtin("cube")).simple

    def test_octahedron_not_simple(self):
        report = check_simple(load_builtin("octahedron"))
        assert not report.simple
        assert len(report.witness.active) == 4

    def test_interval_simple(self):
        assert check_simple(load_builtin("sphere")).simple


# --------------------------------------------------------------------------
# Rationality and the integrality condition
# --------------------------------------------------------------------------

class TestRational:
    def test_square_certificate(self):
        cert = check_rational(load_builtin("square"))
        assert cert.rational
        assert [[s.as_fraction() for s in b] for b in cert.basis] == [[1, 0], [0, 1]]
        assert cert.coords == ((1, 0), (0, 1), (-1, 0), (0, -1))

    def test_pentagon_not_rational(self):
        cert = check_rational(load_builtin("pentagon"))
        assert not cert.rational
        assert cert.rank > 2

    def test_interval_sqrt2_not_rational(self):
        cert = check_rational(load_builtin("interval-sqrt2"))
        assert not cert.rational
        assert cert.rank == 2

    @pytest.mark.parametrize("name", ["sphere", "cp2", "square", "cube",
                                      "teardrop-3", "rugby-3"])
    def test_reconstruction_exact(self, name):
        p = load_builtin(name)
        cert = check_rational(p)
        assert cert.rational
        f = p.field
        for x, coords in zip(p.normals, cert.coords):
            rebuilt = [
                sum((f.scalar(c) * b[i] for c, b in zip(coords, cert.basis)), f.zero)
                for i in range(p.dim)
            ]
            assert tuple(rebuilt) == x


class TestDelzant:
    def test_cp2_integral(self):
        p = load_builtin("cp2")
        report = check_delzant(p, check_rational(p))
        assert report.integral
        assert set(report.vertex_determinants) <= {1, -1}

    def test_teardrop_vertex_determinant(self):
        p = load_builtin("teardrop-3")
        report = check_delzant(p, check_rational(p))
        assert not report.integral
        assert -3 in report.vertex_determinants
        assert report.nonunimodular_vertices == (1,)
        assert report.nonprimitive_facets == (1,)

    def test_square_integral(self):
        p = load_builtin("square")
        assert check_delzant(p, check_rational(p)).integral

    def test_requires_rational(self):
        p = load_builtin("pentagon")
        with pytest.raises(NotRationalInput):
            check_delzant(p, check_rational(p))
