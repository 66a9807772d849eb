"""Symplectic reduction data attached to a simple polytope.

From facet normals X_j the projection pi: R^d -> R^n sends the j-th
standard basis vector to X_j.  Its kernel is the Lie algebra of the
subgroup N by which C^d is reduced; the moment maps of the ambient torus
(J), of N (the level map Psi = B J), and of the quotient torus (Phi,
whose image is the polytope) are the computational surface of that
reduction.  Exact data stays exact; float renderings are certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    IllConditioned,
    InternalInconsistency,
    NotAVertex,
    NotSimple,
    OffLevelSet,
)
from .lattices import quotient_order, rational_rank
from .linalg import Matrix, Vector
from .polytope import (
    DelzantReport,
    HPolytope,
    LatticeCertificate,
    Vertex,
    certificate_for,
    check_delzant,
    check_simple,
)
from .scalars import DEFAULT_PRECISION, Scalar

MANIFOLD = "manifold"
ORBIFOLD = "orbifold"
QUASIFOLD = "quasifold"


@dataclass(frozen=True)
class Quasilattice:
    """Subgroup of R^n generated by the facet normals and any extras."""

    dim: int
    generators: tuple[Vector, ...]
    certificate: LatticeCertificate

    @property
    def is_lattice(self) -> bool:
        return self.certificate.rational


@dataclass(frozen=True)
class Classification:
    kind: str
    is_lattice: bool
    delzant: DelzantReport | None
    vertex_orders: tuple[int | None, ...]


@dataclass(frozen=True)
class VertexChart:
    """Chart data at a fixed point: squared moduli of the fiber over the
    vertex, plus quasilattice generator coordinates in the active-normal
    basis (each coordinate vector acts on the chart modulo Z^n)."""

    vertex: Vertex
    squared_moduli: tuple[Scalar, ...]
    generator_coords: tuple[Vector, ...] | None = None
    finite: bool | None = None
    order: int | None = None


@dataclass(eq=False)
class DelzantData:
    """Everything the reduction M = Psi^{-1}(0)/N is determined by."""

    polytope: HPolytope
    projection: Matrix
    offsets: tuple[Scalar, ...]
    kernel_basis: tuple[Vector, ...]
    quasilattice: Quasilattice
    n_rational_dim: int
    classification: Classification

    def __post_init__(self):
        self._float_cache: dict[float, _FloatData] = {}

    @property
    def ambient_dim(self) -> int:
        return self.polytope.facet_count

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def reduced_dim(self) -> int:
        """Real dimension of M: 2d - 2*dim(N) = 2n."""
        return 2 * (self.ambient_dim - len(self.kernel_basis))

    @property
    def n_compact(self) -> bool:
        return self.n_rational_dim == self.ambient_dim - self.dim

    def floats(self, precision: float = DEFAULT_PRECISION) -> "_FloatData":
        cached = self._float_cache.get(precision)
        if cached is None:
            cached = _FloatData.build(self, precision)
            self._float_cache[precision] = cached
        return cached


class _FloatData:
    """Certified-precision float mirror of the exact construction data."""

    def __init__(self, stack, lam, kernel, pinv_stack, lift):
        self.stack = stack          # (d, n), row j is X_j
        self.lam = lam              # (d,)
        self.kernel = kernel        # (d-n, d), rows span Lie(N)
        self.pinv_stack = pinv_stack  # (n, d), least-squares inverse of stack
        self.lift = lift            # (d, n), least-norm right inverse of pi

    @classmethod
    def build(cls, data: "DelzantData", precision: float) -> "_FloatData":
        stack = np.array(
            [[s.to_float(precision) for s in normal] for normal in data.polytope.normals],
            dtype=float,
        )
        lam = np.array([s.to_float(precision) for s in data.offsets], dtype=float)
        kernel = np.array(
            [[s.to_float(precision) for s in vec] for vec in data.kernel_basis],
            dtype=float,
        ).reshape(len(data.kernel_basis), data.polytope.facet_count)
        svals = np.linalg.svd(stack, compute_uv=False)
        if svals[-1] <= svals[0] * 1e-13:
            raise IllConditioned("facet normal matrix is numerically rank-deficient")
        pinv_stack = np.linalg.pinv(stack)
        return cls(stack, lam, kernel, pinv_stack, pinv_stack.T)


# --------------------------------------------------------------------------
# Construction
# --------------------------------------------------------------------------

def build_construction(p: HPolytope) -> DelzantData:
    """Assemble the reduction data for a simple polytope.

    Raises NotSimple when some vertex has more than n active facets, and
    InternalInconsistency when the two independent classification routes
    (global certificates vs per-vertex structure groups) disagree.
    """
    simplicity = check_simple(p)
    if not simplicity.simple:
        raise NotSimple(
            f"vertex {simplicity.witness_index} lies on "
            f"{len(simplicity.witness.active)} facets, expected {p.dim}"
        )
    n, d = p.dim, p.facet_count
    projection = Matrix(p.field, [[p.normals[j][i] for j in range(d)] for i in range(n)])
    kernel = tuple(projection.kernel())
    if len(kernel) != d - n:
        raise InternalInconsistency(
            f"kernel dimension {len(kernel)} != d - n = {d - n}"
        )
    generators = p.normals + p.extra_generators
    quasilattice = Quasilattice(
        dim=n,
        generators=generators,
        certificate=certificate_for(p.field, generators, n),
    )

    # Rational points of Lie(N): common rational kernel of every power-basis
    # coefficient layer of pi.
    layers = []
    for row in projection.rows:
        for k in range(p.field.degree):
            layers.append([Fraction(entry.coeffs[k]) for entry in row])
    n_rational_dim = d - rational_rank(layers)[0]

    data = DelzantData(
        polytope=p,
        projection=projection,
        offsets=p.offsets,
        kernel_basis=kernel,
        quasilattice=quasilattice,
        n_rational_dim=n_rational_dim,
        classification=None,  # filled below; classify needs the data object
    )
    data.classification = classify(data)
    return data


# --------------------------------------------------------------------------
# Moment maps (float side)
# --------------------------------------------------------------------------

def torus_moment(z, data: DelzantData, precision: float = DEFAULT_PRECISION):
    """Ambient-torus moment map J(z)_j = |z_j|^2 + lambda_j."""
    f = data.floats(precision)
    z = np.asarray(z, dtype=complex)
    return np.abs(z) ** 2 + f.lam


def kernel_moment(z, data: DelzantData, precision: float = DEFAULT_PRECISION):
    """Moment map of the reduced subgroup N; zero on the level set."""
    f = data.floats(precision)
    return torus_moment(z, data, precision) @ f.kernel.T


def induced_moment(z, data: DelzantData, tol: float | None = 1e-8,
                   precision: float = DEFAULT_PRECISION):
    """Moment map of the quotient torus: least-squares solution mu of
    <mu, X_j> = J(z)_j.  On the level set the system is consistent and
    the image point lies in the polytope.

    tol bounds |Psi(z)| before solving; pass None to evaluate the smooth
    extension off the level set (used by derivative checks).
    """
    f = data.floats(precision)
    j = torus_moment(z, data, precision)
    if tol is not None:
        level = j @ f.kernel.T
        worst = float(np.max(np.abs(level))) if level.size else 0.0
        if worst > tol:
            raise OffLevelSet(f"|Psi(z)| = {worst:.3e} exceeds tolerance {tol:.3e}")
    return j @ f.pinv_stack.T


# --------------------------------------------------------------------------
# Fixed points and structure groups
# --------------------------------------------------------------------------

def _squared_moduli(p: HPolytope, v: Vertex) -> tuple[Scalar, ...]:
    # Fiber over a vertex: |z_j|^2 = <mu_v, X_j> - lambda_j, zero exactly
    # on the active facets.
    return tuple(p.slack(v.point, j) for j in range(p.facet_count))


def fixed_points(data: DelzantData) -> list[VertexChart]:
    """One chart per vertex with the exact fixed-point moduli; group data
    is filled in by vertex_structure_group."""
    return [
        VertexChart(vertex=v, squared_moduli=_squared_moduli(data.polytope, v))
        for v in data.polytope.vertices
    ]


def _resolve_vertex(data: DelzantData, v) -> Vertex:
    vertices = data.polytope.vertices
    if isinstance(v, int):
        if 0 <= v < len(vertices):
            return vertices[v]
        raise NotAVertex(f"vertex index {v} out of range")
    if isinstance(v, Vertex):
        point = v.point
    else:
        point = tuple(data.polytope.field.scalar(e) for e in v)
        if len(point) != data.dim:
            raise NotAVertex(f"point has {len(point)} coordinates, expected {data.dim}")
    for candidate in vertices:
        if candidate.point == point:
            return candidate
    raise NotAVertex("point is not a vertex of the polytope")


def vertex_structure_group(data: DelzantData, v) -> VertexChart:
    """Chart group at a vertex: each quasilattice generator is written in
    the basis of the n active normals; the group is finite exactly when
    all coordinates are rational, with order computed via Smith form."""
    vertex = _resolve_vertex(data, v)
    p = data.polytope
    n = data.dim
    basis = Matrix(p.field, [[p.normals[j][i] for j in vertex.active] for i in range(n)])
    coords: list[Vector] = []
    for gen in data.quasilattice.generators:
        c = basis.solve(gen)
        if c is None:
            raise InternalInconsistency("active normals at a simple vertex are singular")
        coords.append(c)
    finite = all(entry.is_rational() for c in coords for entry in c)
    order = None
    if finite:
        order = quotient_order(
            [tuple(entry.as_fraction() for entry in c) for c in coords], n
        )
    return VertexChart(
        vertex=vertex,
        squared_moduli=_squared_moduli(p, vertex),
        generator_coords=tuple(coords),
        finite=finite,
        order=order,
    )


# --------------------------------------------------------------------------
# Classification
# --------------------------------------------------------------------------

def classify(data: DelzantData) -> Classification:
    """Manifold / orbifold / quasifold trichotomy, cross-checked.

    Route one is global: quasilattice discreteness plus the integrality
    test in the certified lattice.  Route two is local: triviality or
    finiteness of every vertex structure group.  Disagreement raises
    InternalInconsistency rather than picking a side.
    """
    cert = data.quasilattice.certificate
    delzant = check_delzant(data.polytope, cert) if cert.rational else None
    if cert.rational:
        global_kind = MANIFOLD if delzant.integral else ORBIFOLD
    else:
        global_kind = QUASIFOLD

    orders = tuple(
        vertex_structure_group(data, i).order
        for i in range(len(data.polytope.vertices))
    )
    if any(order is None for order in orders):
        local_kind = QUASIFOLD
    elif all(order == 1 for order in orders):
        local_kind = MANIFOLD
    else:
        local_kind = ORBIFOLD

    if global_kind != local_kind:
        raise InternalInconsistency(
            f"certificate route says {global_kind}, "
            f"vertex structure groups say {local_kind} (orders {orders})"
        )
    return Classification(kind=global_kind, is_lattice=cert.rational,
                          delzant=delzant, vertex_orders=orders)


# --------------------------------------------------------------------------
# Report rendering
# --------------------------------------------------------------------------

def _render_scalar(s: Scalar, precision: float) -> dict:
    return {"exact": s.to_expr(), "float": s.to_float(precision)}


def _render_vector(vec: Sequence[Scalar], precision: float) -> dict:
    return {
        "exact": [s.to_expr() for s in vec],
        "float": [s.to_float(precision) for s in vec],
    }


def construction_report(data: DelzantData, precision: float = DEFAULT_PRECISION) -> dict:
    """JSON-ready summary; exact expressions alongside certified floats."""
    p = data.polytope
    cls = data.classification
    cert = data.quasilattice.certificate
    charts = [vertex_structure_group(data, i) for i in range(len(p.vertices))]
    report = {
        "dimension": data.dim,
        "facets": data.ambient_dim,
        "reduced_space_dim": data.reduced_dim,
        "kernel_dim": len(data.kernel_basis),
        "n_rational_dim": data.n_rational_dim,
        "n_compact": data.n_compact,
        "field": {
            "degree": p.field.degree,
            "minpoly": [str(c) for c in p.field.minpoly],
            "root_interval": [str(b) for b in p.field.root_interval],
        },
        "projection": [_render_vector(row, precision) for row in data.projection.rows],
        "offsets": _render_vector(data.offsets, precision),
        "kernel_basis": [_render_vector(v, precision) for v in data.kernel_basis],
        "quasilattice": {
            "generators": [_render_vector(g, precision) for g in data.quasilattice.generators],
            "is_lattice": data.quasilattice.is_lattice,
            "rational_rank": cert.rank,
            "lattice_basis": (
                [_render_vector(b, precision) for b in cert.basis]
                if cert.rational else None
            ),
            "generator_coordinates": (
                [list(row) for row in cert.coords] if cert.rational else None
            ),
            "independent_witness": (
                list(cert.independent) if cert.independent is not None else None
            ),
        },
        "classification": {
            "kind": cls.kind,
            "is_lattice": cls.is_lattice,
            "vertex_orders": list(cls.vertex_orders),
            "delzant": (
                {
                    "integral": cls.delzant.integral,
                    "facet_gcds": list(cls.delzant.facet_gcds),
                    "vertex_determinants": list(cls.delzant.vertex_determinants),
                    "nonprimitive_facets": list(cls.delzant.nonprimitive_facets),
                    "nonunimodular_vertices": list(cls.delzant.nonunimodular_vertices),
                }
                if cls.delzant is not None else None
            ),
        },
        "charts": [
            {
                "vertex": _render_vector(chart.vertex.point, precision),
                "active_facets": list(chart.vertex.active),
                "squared_moduli": _render_vector(chart.squared_moduli, precision),
                "generator_coords": [
                    _render_vector(c, precision) for c in chart.generator_coords
                ],
                "finite": chart.finite,
                "order": chart.order,
            }
            for chart in charts
        ],
    }
    return report
