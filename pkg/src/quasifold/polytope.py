"""Simple convex polytopes in H-representation over an exact field.

A document describes Delta = {mu : <mu, X_j> >= lambda_j} through facet
normals X_j and offsets lambda_j with entries in Q(theta).  Everything
here is exact: vertex enumeration solves n-subsets of facet equations,
boundedness is a recession-cone ray test, and rationality of the normal
family is certified (or refuted) over Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    LowerDimensional,
    NormalsDontSpan,
    NotRationalInput,
    SchemaError,
    UnboundedPolytope,
)
from .lattices import SpanIrrational, SpanLattice, integer_det, span_certificate
from .linalg import Matrix, Vector
from .scalars import Field, Scalar, parse_scalar, rational_field

_DOCUMENT_KEYS = {"field", "dimension", "facets", "quasilattice_extra_generators"}
_FIELD_KEYS = {"minpoly", "root_interval"}


@dataclass(frozen=True)
class Vertex:
    """A vertex with the full set of facet indices active at it."""

    point: Vector
    active: tuple[int, ...]


@dataclass
class HPolytope:
    field: Field
    dim: int
    normals: tuple[Vector, ...]
    offsets: tuple[Scalar, ...]
    extra_generators: tuple[Vector, ...] = ()
    _vertices: tuple[Vertex, ...] | None = dc_field(default=None, repr=False, compare=False)

    @property
    def facet_count(self) -> int:
        return len(self.normals)

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        if self._vertices is None:
            self._vertices = tuple(enumerate_vertices(self))
        return self._vertices

    def slack(self, point: Sequence[Scalar], j: int) -> Scalar:
        return _dot(self.normals[j], point) - self.offsets[j]


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


# --------------------------------------------------------------------------
# Document parsing
# --------------------------------------------------------------------------

def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _exact_number(value, where: str) -> Fraction:
    # Rationals travel as strings ("5/16") or ints; floats are not exact.
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{where}: expected an exact rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: bad rational literal {value!r}") from exc
    raise SchemaError(f"{where}: expected an exact rational string, got {type(value).__name__}")


def _parse_field_section(section) -> Field:
    if section is None:
        return rational_field()
    _require(isinstance(section, dict), "field section must be an object")
    unknown = set(section) - _FIELD_KEYS
    _require(not unknown, f"unknown field keys: {sorted(unknown)}")
    _require("minpoly" in section and "root_interval" in section,
             "field section needs 'minpoly' and 'root_interval'")
    minpoly = section["minpoly"]
    _require(isinstance(minpoly, list) and len(minpoly) >= 2, "minpoly must list >= 2 coefficients")
    interval = section["root_interval"]
    _require(isinstance(interval, list) and len(interval) == 2, "root_interval must be [lo, hi]")
    coeffs = [_exact_number(c, "minpoly") for c in minpoly]
    lo = _exact_number(interval[0], "root_interval")
    hi = _exact_number(interval[1], "root_interval")
    return Field(coeffs, (lo, hi))


def _parse_entry(value, fld: Field, where: str) -> Scalar:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"{where}: expected an exact expression string, got {value!r}")
    if isinstance(value, int):
        return fld.scalar(value)
    if isinstance(value, str):
        return parse_scalar(value, fld)
    raise SchemaError(f"{where}: expected an exact expression string, got {type(value).__name__}")


def parse_polytope(document: dict) -> HPolytope:
    """Validate a polytope document and return the exact H-representation.

    Raises SchemaError for malformed documents, NormalsDontSpan when the
    normals fail to span R^n, UnboundedPolytope / LowerDimensional when
    the feasible set is not a full-dimensional polytope.
    """
    _require(isinstance(document, dict), "document must be a JSON object")
    unknown = set(document) - _DOCUMENT_KEYS
    _require(not unknown, f"unknown document keys: {sorted(unknown)}")
    _require("dimension" in document, "missing 'dimension'")
    n = document["dimension"]
    _require(isinstance(n, int) and not isinstance(n, bool) and n >= 1,
             "'dimension' must be a positive integer")
    fld = _parse_field_section(document.get("field"))

    facets = document.get("facets")
    _require(isinstance(facets, list) and len(facets) >= 1, "'facets' must be a nonempty list")
    normals: list[Vector] = []
    offsets: list[Scalar] = []
    for j, facet in enumerate(facets):
        where = f"facet {j}"
        _require(isinstance(facet, dict), f"{where} must be an object")
        _require(set(facet) == {"normal", "offset"}, f"{where} needs exactly 'normal' and 'offset'")
        normal = facet["normal"]
        _require(isinstance(normal, list) and len(normal) == n,
                 f"{where}: normal must have {n} entries")
        vec = tuple(_parse_entry(e, fld, where) for e in normal)
        if all(s.is_zero() for s in vec):
            raise SchemaError(f"{where}: zero normal vector")
        normals.append(vec)
        offsets.append(_parse_entry(facet["offset"], fld, where))

    extras: list[Vector] = []
    for k, gen in enumerate(document.get("quasilattice_extra_generators") or []):
        where = f"extra generator {k}"
        _require(isinstance(gen, list) and len(gen) == n, f"{where} must have {n} entries")
        vec = tuple(_parse_entry(e, fld, where) for e in gen)
        _require(not all(s.is_zero() for s in vec), f"{where} is zero")
        extras.append(vec)

    if Matrix(fld, normals).rank() < n:
        raise NormalsDontSpan(f"facet normals span a proper subspace of R^{n}")

    poly = HPolytope(field=fld, dim=n, normals=tuple(normals), offsets=tuple(offsets),
                     extra_generators=tuple(extras))
    poly.vertices  # enforce bounded / full-dimensional at parse time
    return poly


# --------------------------------------------------------------------------
# Vertex enumeration
# --------------------------------------------------------------------------

def _assert_bounded(p: HPolytope) -> None:
    """Recession cone test: {v : <v, X_j> >= 0 for all j} must be {0}.

    The normals span R^n, so the cone is pointed and any nonzero element
    implies an extreme ray cut out by n-1 active constraints; exhaustive
    enumeration of those candidate rays is exact and complete.
    """
    d, n = p.facet_count, p.dim
    for subset in combinations(range(d), n - 1):
        m = Matrix(p.field, [p.normals[j] for j in subset], cols=n)
        kernel = m.kernel()
        if len(kernel) != 1:
            continue
        ray = kernel[0]
        for candidate in (ray, tuple(-s for s in ray)):
            if all(_dot(p.normals[j], candidate).sign() >= 0 for j in range(d)):
                rendered = ", ".join(s.to_expr() for s in candidate)
                raise UnboundedPolytope(
                    f"recession direction ({rendered})", direction=candidate
                )


def enumerate_vertices(p: HPolytope) -> list[Vertex]:
    """All vertices, exactly, in deterministic facet-subset order.

    Candidates come from invertible n-subsets of facet equations; each is
    kept when every remaining slack is certified nonnegative.  Exactly
    equal candidate points are merged, and the recorded active set lists
    every facet with zero slack (more than n of them at a non-simple
    vertex).
    """
    if p._vertices is not None:
        return list(p._vertices)
    _assert_bounded(p)
    d, n = p.facet_count, p.dim
    seen: dict[tuple, Vertex] = {}
    order: list[tuple] = []
    for subset in combinations(range(d), n):
        m = Matrix(p.field, [p.normals[j] for j in subset])
        if m.rank() < n:
            continue
        point = m.solve([p.offsets[j] for j in subset])
        if point is None:
            continue
        key = tuple(s.coeffs for s in point)
        if key in seen:
            continue
        slacks = [p.slack(point, j) for j in range(d)]
        if any((not s.is_zero()) and s.sign() < 0 for s in slacks):
            continue
        active = tuple(j for j, s in enumerate(slacks) if s.is_zero())
        seen[key] = Vertex(point=point, active=active)
        order.append(key)

    vertices = [seen[k] for k in order]
    if not vertices:
        raise LowerDimensional("feasible set is empty")
    if len(vertices) > 1:
        base = vertices[0].point
        rows = [[a - b for a, b in zip(v.point, base)] for v in vertices[1:]]
        hull_dim = Matrix(p.field, rows).rank()
    else:
        hull_dim = 0
    if hull_dim < n:
        raise LowerDimensional(
            f"affine hull of the vertices has dimension {hull_dim} < {n}"
        )
    p._vertices = tuple(vertices)
    return vertices


# --------------------------------------------------------------------------
# Simplicity / rationality / integrality reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicityReport:
    simple: bool
    witness_index: int | None = None
    witness: Vertex | None = None


def check_simple(p: HPolytope) -> SimplicityReport:
    """Simple means exactly n facets meet at every vertex."""
    for i, v in enumerate(p.vertices):
        if len(v.active) != p.dim:
            return SimplicityReport(simple=False, witness_index=i, witness=v)
    return SimplicityReport(simple=True)


@dataclass(frozen=True)
class LatticeCertificate:
    """Outcome of the exact rationality test on the facet normals.

    ``rational`` means the normals generate a rank-n lattice; ``basis``
    then holds n generating vectors and ``coords`` one integer coordinate
    row per input vector.  Otherwise ``rank`` > n is the Q-dimension of
    the span and ``independent`` indexes a Q-linearly independent subset
    witnessing it.
    """

    rational: bool
    rank: int
    basis: tuple[Vector, ...] | None = None
    coords: tuple[tuple[int, ...], ...] | None = None
    independent: tuple[int, ...] | None = None


def certificate_for(fld: Field, vectors: Sequence[Vector], dim: int) -> LatticeCertificate:
    outcome = span_certificate(fld, vectors, dim)
    if isinstance(outcome, SpanLattice):
        return LatticeCertificate(rational=True, rank=dim, basis=outcome.basis,
                                  coords=outcome.coords)
    assert isinstance(outcome, SpanIrrational)
    return LatticeCertificate(rational=False, rank=outcome.rank,
                              independent=outcome.independent)


def check_rational(p: HPolytope) -> LatticeCertificate:
    return certificate_for(p.field, p.normals, p.dim)


@dataclass(frozen=True)
class DelzantReport:
    """Primitivity and vertex unimodularity in a certified lattice."""

    integral: bool
    facet_gcds: tuple[int, ...]
    vertex_determinants: tuple[int | None, ...]
    nonprimitive_facets: tuple[int, ...]
    nonunimodular_vertices: tuple[int, ...]


def check_delzant(p: HPolytope, certificate: LatticeCertificate) -> DelzantReport:
    """Test the integrality condition: primitive normals and determinant
    +-1 at every vertex, in the coordinates of the certified lattice.

    The certificate's coordinate rows must start with the facet normals
    (extra quasilattice generators, if any, come after and are ignored).
    """
    if not certificate.rational:
        raise NotRationalInput("no lattice certificate: the normals are not rational")
    d = p.facet_count
    coords = certificate.coords[:d]
    gcds = tuple(math.gcd(*(abs(c) for c in row)) for row in coords)
    nonprimitive = tuple(j for j, g in enumerate(gcds) if g != 1)

    dets: list[int | None] = []
    nonunimodular: list[int] = []
    for i, v in enumerate(p.vertices):
        if len(v.active) != p.dim:
            dets.append(None)
            nonunimodular.append(i)
            continue
        det = integer_det([coords[j] for j in v.active])
        dets.append(det)
        if abs(det) != 1:
            nonunimodular.append(i)

    integral = not nonprimitive and not nonunimodular
    return DelzantReport(integral=integral, facet_gcds=gcds,
                         vertex_determinants=tuple(dets),
                         nonprimitive_facets=nonprimitive,
                         nonunimodular_vertices=tuple(nonunimodular))
