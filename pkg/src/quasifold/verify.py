"""Monte Carlo and finite-difference checks of a construction.

Samples live on the zero level set of the reduced moment map: a polytope
point mu drawn by rejection from the vertex bounding box determines the
moduli |z_j|^2 = <mu, X_j> - lambda_j, and phases are uniform.  All
randomness flows through one seeded generator per check, so reports are
bitwise reproducible for equal seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

import numpy as np

from .construction import DelzantData, fixed_points, induced_moment, kernel_moment
from .errors import DimensionUnsupported, RejectionStall, StepOutOfRange
from .scalars import DEFAULT_PRECISION

_STALL_DRAWS = 1_000_000
_STALL_RATE = 1e-4
_BATCH = 4096


@dataclass(frozen=True)
class Sample:
    mu: np.ndarray
    phases: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class SampleSet:
    """Column-stacked level-set samples (mu rows, phase rows, z rows)."""

    mu: np.ndarray      # (N, n)
    phases: np.ndarray  # (N, d)
    z: np.ndarray       # (N, d) complex

    def __len__(self) -> int:
        return self.mu.shape[0]

    def __iter__(self) -> Iterator[Sample]:
        for k in range(len(self)):
            yield Sample(self.mu[k], self.phases[k], self.z[k])

    def __getitem__(self, k: int) -> Sample:
        return Sample(self.mu[k], self.phases[k], self.z[k])


def _bounding_box(data: DelzantData, precision: float) -> tuple[np.ndarray, np.ndarray]:
    vertices = data.polytope.vertices
    lo = []
    hi = []
    for axis in range(data.dim):
        coords = [v.point[axis] for v in vertices]
        cmin = coords[0]
        cmax = coords[0]
        for c in coords[1:]:
            if c < cmin:
                cmin = c
            if c > cmax:
                cmax = c
        lo.append(cmin.floats(precision)[0])
        hi.append(cmax.floats(precision)[1])
    return np.array(lo), np.array(hi)


def sample_level_set(data: DelzantData, count: int, seed: int = 0,
                     precision: float = DEFAULT_PRECISION) -> SampleSet:
    """Draw level-set samples: mu by rejection inside the exact vertex
    bounding box, phases uniform in [0, 1).

    Raises RejectionStall when fewer than one draw in 10^4 is accepted
    over 10^6 candidates; parse-time validation guarantees the polytope
    is full-dimensional, so a stall signals an extremely thin geometry
    for which bounding-box rejection is the wrong tool.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    f = data.floats(precision)
    d = data.ambient_dim
    if count == 0:
        return SampleSet(
            mu=np.zeros((0, data.dim)), phases=np.zeros((0, d)),
            z=np.zeros((0, d), dtype=complex),
        )
    rng = np.random.default_rng(seed)
    lo, hi = _bounding_box(data, precision)
    accepted_mu: list[np.ndarray] = []
    accepted_slack: list[np.ndarray] = []
    total = 0
    have = 0
    while have < count:
        candidates = rng.uniform(lo, hi, size=(_BATCH, data.dim))
        slack = candidates @ f.stack.T - f.lam
        mask = np.all(slack >= 0.0, axis=1)
        total += _BATCH
        if mask.any():
            accepted_mu.append(candidates[mask])
            accepted_slack.append(slack[mask])
            have += int(mask.sum())
        if total >= _STALL_DRAWS and have < total * _STALL_RATE:
            raise RejectionStall(
                f"accepted {have} of {total} draws; polytope too thin for "
                "bounding-box rejection"
            )
    mu = np.concatenate(accepted_mu)[:count]
    slack = np.concatenate(accepted_slack)[:count]
    phases = rng.uniform(0.0, 1.0, size=(count, d))
    z = np.sqrt(slack) * np.exp(2j * np.pi * phases)
    return SampleSet(mu=mu, phases=phases, z=z)


# --------------------------------------------------------------------------
# Image and fixed-point checks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ImageCheck:
    max_roundtrip_error: float
    min_containment_slack: float
    vertex_gaps: tuple[float, ...]


def verify_moment_image(data: DelzantData, samples: SampleSet,
                        precision: float = DEFAULT_PRECISION) -> ImageCheck:
    """Round-trip mu -> z -> Phi(z) and containment of the image in the
    polytope; also evaluates the fiber over every vertex, whose image
    must hit the vertex itself (fixed points are exact)."""
    f = data.floats(precision)
    if len(samples):
        phi = induced_moment(samples.z, data, tol=None, precision=precision)
        roundtrip = float(np.max(np.abs(phi - samples.mu)))
        containment = float(np.min(phi @ f.stack.T - f.lam))
    else:
        roundtrip = 0.0
        containment = 0.0
    gaps = []
    for chart in fixed_points(data):
        moduli = np.array([max(s.to_float(precision), 0.0) for s in chart.squared_moduli])
        z_vertex = np.sqrt(moduli).astype(complex)
        target = np.array([s.to_float(precision) for s in chart.vertex.point])
        image = induced_moment(z_vertex, data, tol=None, precision=precision)
        gaps.append(float(np.max(np.abs(image - target))))
    return ImageCheck(max_roundtrip_error=roundtrip,
                      min_containment_slack=containment,
                      vertex_gaps=tuple(gaps))


def check_regular_value(data: DelzantData, samples: SampleSet,
                        precision: float = DEFAULT_PRECISION) -> float:
    """Smallest relative singular value of the level-map Jacobian across
    the samples.  Row k of the Jacobian at z is
    2*B_kj*(x_j, y_j) over the 2d real coordinates; a margin bounded away
    from zero certifies 0 is a regular value along the sampled set."""
    if not len(samples):
        return math.inf
    f = data.floats(precision)
    x = samples.z.real
    y = samples.z.imag
    # jac: (N, d-n, 2d)
    jac = np.concatenate([
        2.0 * f.kernel[None, :, :] * x[:, None, :],
        2.0 * f.kernel[None, :, :] * y[:, None, :],
    ], axis=2)
    svals = np.linalg.svd(jac, compute_uv=False)
    margins = svals[:, -1] / svals[:, 0]
    return float(np.min(margins))


# --------------------------------------------------------------------------
# Hamiltonian identity
# --------------------------------------------------------------------------

def _hamiltonian_residuals(data: DelzantData, z: np.ndarray, directions: np.ndarray,
                           h: float, precision: float) -> np.ndarray:
    """Max coordinatewise discrepancy between i(X_M) omega_0 and the
    central finite difference of d<Phi, X>, per (z, X) pair."""
    if not (1e-8 <= h <= 1e-3):
        raise StepOutOfRange(f"step {h} outside [1e-8, 1e-3]")
    f = data.floats(precision)
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    n_pairs, d = z.shape
    lifts = directions @ f.lift.T  # least-norm pi-preimages, (N, d)
    x, y = z.real, z.imag

    # omega_0 = (1/2*pi*i) sum dz^dzbar = c * sum dx^dy with c = -1/pi.
    # The lifted direction rotates coordinate j at speed 2*pi*lift_j, so
    # V = (-2*pi*lift*y) d/dx + (2*pi*lift*x) d/dy and
    # i(V)omega = c*(V_x dy - V_y dx).
    c = -1.0 / math.pi
    vx = -2.0 * math.pi * lifts * y
    vy = 2.0 * math.pi * lifts * x
    lhs = np.concatenate([-c * vy, c * vx], axis=1)  # dx coefficients, then dy

    def f_value(w: np.ndarray) -> np.ndarray:
        phi = induced_moment(w, data, tol=None, precision=precision)
        return np.einsum("ij,ij->i", phi, directions)

    fd = np.empty((n_pairs, 2 * d))
    for j in range(d):
        for column, step in ((j, h), (d + j, 1j * h)):
            zp = z.copy()
            zp[:, j] += step
            zm = z.copy()
            zm[:, j] -= step
            fd[:, column] = (f_value(zp) - f_value(zm)) / (2.0 * h)
    return np.max(np.abs(lhs - fd), axis=1)


def check_hamiltonian_identity(data: DelzantData, z, direction, h: float = 1e-5,
                               precision: float = DEFAULT_PRECISION) -> float:
    """Residual of i(X_M) omega_0 = d<Phi, X> at one point, one direction."""
    res = _hamiltonian_residuals(data, np.asarray(z, dtype=complex)[None, :],
                                 np.asarray(direction, dtype=float)[None, :],
                                 h, precision)
    return float(res[0])


# --------------------------------------------------------------------------
# Invariance
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InvarianceCheck:
    torus_residual: float
    kernel_group_residual: float
    effectiveness_index: int | None


def check_invariance(data: DelzantData, samples: SampleSet, seed=0,
                     precision: float = DEFAULT_PRECISION, take: int = 64) -> InvarianceCheck:
    """Psi under random full-torus elements, Phi under random elements of
    the kernel subgroup, plus a free-orbit witness (a sample with every
    modulus positive, where the torus action is effective)."""
    rng = np.random.default_rng(seed)
    k = min(take, len(samples))
    z = samples.z[:k]
    d = data.ambient_dim
    f = data.floats(precision)
    if k:
        theta = rng.uniform(0.0, 1.0, size=(k, d))
        rotated = z * np.exp(2j * np.pi * theta)
        torus = float(np.max(np.abs(
            kernel_moment(rotated, data, precision) - kernel_moment(z, data, precision)
        )))
        sigma = rng.uniform(-1.0, 1.0, size=(k, f.kernel.shape[0]))
        theta_n = (sigma @ f.kernel) % 1.0
        moved = z * np.exp(2j * np.pi * theta_n)
        kernel_res = float(np.max(np.abs(
            induced_moment(moved, data, tol=None, precision=precision)
            - induced_moment(z, data, tol=None, precision=precision)
        )))
    else:
        torus = 0.0
        kernel_res = 0.0
    effectiveness = None
    if len(samples):
        positive = np.min(np.abs(samples.z), axis=1) > 0.0
        hits = np.nonzero(positive)[0]
        if hits.size:
            effectiveness = int(hits[0])
    return InvarianceCheck(torus_residual=torus, kernel_group_residual=kernel_res,
                           effectiveness_index=effectiveness)


# --------------------------------------------------------------------------
# Aggregate run
# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    sample_count: int
    seed: int
    hamiltonian_step: float
    tolerances: dict
    max_level_residual: float = 0.0
    max_roundtrip_error: float = 0.0
    min_containment_slack: float = 0.0
    vertex_attainment_gaps: list = dc_field(default_factory=list)
    min_rank_margin: float = math.inf
    max_hamiltonian_residual: float = 0.0
    invariance: dict = dc_field(default_factory=dict)
    effectiveness_index: int | None = None
    failures: list = dc_field(default_factory=list)
    passed: bool = True

    def as_dict(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "seed": self.seed,
            "hamiltonian_step": self.hamiltonian_step,
            "tolerances": dict(self.tolerances),
            "metrics": {
                "max_level_residual": self.max_level_residual,
                "max_roundtrip_error": self.max_roundtrip_error,
                "min_containment_slack": self.min_containment_slack,
                "vertex_attainment_gaps": list(self.vertex_attainment_gaps),
                "min_rank_margin": (
                    None if math.isinf(self.min_rank_margin) else self.min_rank_margin
                ),
                "max_hamiltonian_residual": self.max_hamiltonian_residual,
                "invariance": dict(self.invariance),
            },
            "effectiveness_index": self.effectiveness_index,
            "failures": list(self.failures),
            "passed": self.passed,
        }


def run_verification(data: DelzantData, samples: int = 10_000, seed: int = 0,
                     tol_roundtrip: float = 1e-8, tol_rank: float = 1e-6,
                     h: float = 1e-5, hamiltonian_pairs: int = 100,
                     precision: float = DEFAULT_PRECISION) -> VerificationReport:
    """Run every check at its standard tolerance and collect the report.

    Thresholds: level residual 1e-9, round-trip and containment
    tol_roundtrip, rank margin tol_rank, Hamiltonian residual 1e-6 at the
    given step, torus invariance 1e-9, kernel-group invariance 1e-8,
    vertex attainment 1e-9.
    """
    tolerances = {
        "level_residual": 1e-9,
        "roundtrip": tol_roundtrip,
        "containment": tol_roundtrip,
        "rank_margin": tol_rank,
        "hamiltonian": 1e-6,
        "torus_invariance": 1e-9,
        "kernel_invariance": 1e-8,
        "vertex_attainment": 1e-9,
    }
    report = VerificationReport(sample_count=samples, seed=seed,
                                hamiltonian_step=h, tolerances=tolerances)
    sample_set = sample_level_set(data, samples, seed=seed, precision=precision)

    if len(sample_set):
        level = kernel_moment(sample_set.z, data, precision)
        report.max_level_residual = float(np.max(np.abs(level)))
    image = verify_moment_image(data, sample_set, precision)
    report.max_roundtrip_error = image.max_roundtrip_error
    report.min_containment_slack = image.min_containment_slack
    report.vertex_attainment_gaps = list(image.vertex_gaps)
    report.min_rank_margin = check_regular_value(data, sample_set, precision)

    pairs = min(hamiltonian_pairs, len(sample_set))
    if pairs:
        dir_rng = np.random.default_rng([seed, 1])
        directions = dir_rng.standard_normal((pairs, data.dim))
        residuals = _hamiltonian_residuals(data, sample_set.z[:pairs], directions,
                                           h, precision)
        report.max_hamiltonian_residual = float(np.max(residuals))
    invariance = check_invariance(data, sample_set, seed=[seed, 2], precision=precision)
    report.invariance = {
        "torus": invariance.torus_residual,
        "kernel_group": invariance.kernel_group_residual,
    }
    report.effectiveness_index = invariance.effectiveness_index

    checks = [
        ("max_level_residual", report.max_level_residual <= tolerances["level_residual"]),
        ("max_roundtrip_error", report.max_roundtrip_error <= tolerances["roundtrip"]),
        ("min_containment_slack",
         report.min_containment_slack >= -tolerances["containment"]),
        ("min_rank_margin",
         not len(sample_set) or report.min_rank_margin > tolerances["rank_margin"]),
        ("max_hamiltonian_residual",
         report.max_hamiltonian_residual <= tolerances["hamiltonian"]),
        ("torus_invariance",
         report.invariance["torus"] <= tolerances["torus_invariance"]),
        ("kernel_invariance",
         report.invariance["kernel_group"] <= tolerances["kernel_invariance"]),
        ("vertex_attainment",
         all(g <= tolerances["vertex_attainment"] for g in report.vertex_attainment_gaps)),
    ]
    if len(sample_set) and report.effectiveness_index is None:
        checks.append(("effectiveness_witness", False))
    report.failures = [name for name, ok in checks if not ok]
    report.passed = not report.failures
    return report


# --------------------------------------------------------------------------
# Planar hull distance (n = 2)
# --------------------------------------------------------------------------

def _point_to_polygon(point: np.ndarray, polygon: np.ndarray) -> float:
    """Distance from a point to a convex polygon (0 inside)."""
    m = polygon.shape[0]
    inside = True
    best = math.inf
    for i in range(m):
        a = polygon[i]
        b = polygon[(i + 1) % m]
        edge = b - a
        rel = point - a
        cross = edge[0] * rel[1] - edge[1] * rel[0]
        if cross < 0:
            inside = False
        denom = float(edge @ edge)
        t = float(np.clip((rel @ edge) / denom, 0.0, 1.0)) if denom else 0.0
        best = min(best, float(np.linalg.norm(rel - t * edge)))
    return 0.0 if inside else best


def hull_hausdorff_distance(data: DelzantData, mus: np.ndarray,
                            precision: float = DEFAULT_PRECISION) -> float:
    """Hausdorff distance between the convex hull of image points and the
    polytope itself; both polygons are convex, so vertex-to-polygon
    distances realize the supremum."""
    if data.dim != 2:
        raise DimensionUnsupported("hull distance is only defined for n = 2")
    from scipy.spatial import ConvexHull

    points = np.asarray(mus, dtype=float)
    if points.shape[0] < 3:
        raise ValueError("need at least 3 image points for a hull")
    hull = ConvexHull(points)
    hull_polygon = points[hull.vertices]  # counterclockwise

    vertex_pts = np.array(
        [[s.to_float(precision) for s in v.point] for v in data.polytope.vertices]
    )
    center = vertex_pts.mean(axis=0)
    angles = np.arctan2(vertex_pts[:, 1] - center[1], vertex_pts[:, 0] - center[0])
    delta_polygon = vertex_pts[np.argsort(angles)]

    forward = max(_point_to_polygon(pt, delta_polygon) for pt in hull_polygon)
    backward = max(_point_to_polygon(pt, hull_polygon) for pt in delta_polygon)
    return max(forward, backward)
