"""The affine Lagrangian triple model and its conformal triangle map.

The exact half constructs three affine Lagrangian subspaces of Q^{2r}
attached to a chord and a chamber element, intersects them pairwise, and
reduces to the plane through the three intersection points, where the
boundary conditions become the lines x = 0, x + y = 1, y = 0.

The numerical half solves the resulting boundary problem on the unit disk:
the map onto the triangle {0 <= x, y, x + y <= 1} with fixed prevertices
1, i, -i carrying exponents (3/4, 3/4, 1/2).  That boundary correspondence
reverses orientation (the problem is posed for minus the standard complex
structure), so the solution is conjugate-conformal: a single
Schwarz-Christoffel integral evaluated at the conjugated disk variable.
Three prevertices leave no accessory parameters; Gauss-Jacobi quadrature
absorbs the endpoint singularities.  Floating point is confined to this
half; exact rationals are converted at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import roots_jacobi

from .errors import Degenerate, InvariantViolation, QuadratureNotConverged
from .indices import MonotoneData
from .lattice import GenericShift
from .linalg import Vec, add, matrix_rank, rref, solve_unique, sub, vec, zero_vec
from .roots import RestrictedRootSystem, WeylElement

# -- exact affine geometry -------------------------------------------------


@dataclass(frozen=True)
class AffineSubspace:
    """Affine subspace given both parametrically and by normal equations."""

    point: Vec
    directions: tuple[Vec, ...]
    eq_rows: tuple[Vec, ...]
    eq_rhs: Vec

    def contains(self, p: Vec) -> bool:
        return all(
            sum(r * x for r, x in zip(row, p)) == c
            for row, c in zip(self.eq_rows, self.eq_rhs)
        )


def _sympl(gram, u: Vec, v: Vec) -> Fraction:
    """Standard form on Q^{2r}: pairs momentum and fiber halves via the metric."""
    r = len(u) // 2
    eta_u, zeta_u = u[:r], u[r:]
    eta_v, zeta_v = v[:r], v[r:]

    def g(x, y):
        return sum(a * sum(row[j] * y[j] for j in range(r)) for a, row in zip(x, gram))

    return g(eta_v, zeta_u) - g(eta_u, zeta_v)


@dataclass
class AffineLagrangianTriple:
    """The three boundary subspaces and their pairwise intersection points."""

    system: RestrictedRootSystem
    q: Vec
    w: WeylElement
    l1: AffineSubspace
    l2: AffineSubspace
    l3: AffineSubspace
    p12: Vec
    p23: Vec
    p13: Vec
    difference: Vec  # q + a - w X0, the momentum extent of the model


def _intersect(a: AffineSubspace, b: AffineSubspace) -> Vec | None:
    """Unique intersection point of two affine subspaces, or None."""
    dim = len(a.point)
    k1, k2 = len(a.directions), len(b.directions)
    rows = []
    rhs = []
    for coord in range(dim):
        rows.append(
            vec([d[coord] for d in a.directions] + [-d[coord] for d in b.directions])
        )
        rhs.append(b.point[coord] - a.point[coord])
    sol = solve_unique(rows, vec(rhs))
    if sol is None:
        return None
    out = a.point
    for c, d in zip(sol[:k1], a.directions):
        out = add(out, tuple(c * x for x in d))
    return out


def build_triple(
    q: Vec, w: WeylElement, shift: GenericShift, md: MonotoneData
) -> AffineLagrangianTriple:
    """Construct the three affine Lagrangians and intersect them exactly."""
    system = shift.system
    r = system.rank
    qa = add(q, shift.a)
    x_out = w(md.x0)
    d = sub(qa, x_out)
    if all(x == 0 for x in d):
        raise Degenerate("q + a coincides with w X0")

    def basis(j):
        return tuple(Fraction(1) if i == j else Fraction(0) for i in range(r))

    zero = zero_vec(r)
    l1 = AffineSubspace(
        point=zero + zero,
        directions=tuple(zero + basis(j) for j in range(r)),
        eq_rows=tuple(basis(j) + zero for j in range(r)),
        eq_rhs=zero,
    )
    l2 = AffineSubspace(
        point=qa + zero,
        directions=tuple(tuple(-x for x in basis(j)) + basis(j) for j in range(r)),
        eq_rows=tuple(basis(j) + basis(j) for j in range(r)),
        eq_rhs=qa,
    )
    l3 = AffineSubspace(
        point=zero + x_out,
        directions=tuple(basis(j) + zero for j in range(r)),
        eq_rows=tuple(zero + basis(j) for j in range(r)),
        eq_rhs=x_out,
    )
    for sub_ in (l1, l2, l3):
        if matrix_rank(list(sub_.directions)) != r:
            raise InvariantViolation("direction space is degenerate")
        for u in sub_.directions:
            for v in sub_.directions:
                if _sympl(system.gram, u, v) != 0:
                    raise InvariantViolation("direction space is not isotropic")
        if not sub_.contains(sub_.point):
            raise InvariantViolation("inconsistent affine representation")
    p12 = _intersect(l1, l2)
    p23 = _intersect(l2, l3)
    p13 = _intersect(l1, l3)
    if p12 is None or p23 is None or p13 is None:
        raise Degenerate("subspaces are not pairwise transverse")
    return AffineLagrangianTriple(system, q, w, l1, l2, l3, p12, p23, p13, d)


@dataclass
class PlaneModel:
    """The plane through the three intersection points, with unit coordinates.

    (x, y) embeds as (x d, w X0 + y d) where d = q + a - w X0, sending
    (0,1), (1,0), (0,0) to the pairwise intersections.
    """

    triple: AffineLagrangianTriple
    base: Vec
    u_dir: Vec
    v_dir: Vec

    def embed(self, x: Fraction, y: Fraction) -> Vec:
        return add(
            self.base,
            add(tuple(x * c for c in self.u_dir), tuple(y * c for c in self.v_dir)),
        )

    def coordinates(self, p: Vec) -> tuple[Fraction, Fraction]:
        rows = [vec([u, v]) for u, v in zip(self.u_dir, self.v_dir)]
        sol = solve_unique(rows, sub(p, self.base))
        if sol is None:
            raise Degenerate("point is not on the model plane")
        return sol[0], sol[1]


_LINE_TARGETS = (
    ((Fraction(1), Fraction(0), Fraction(0)),),  # x = 0
    ((Fraction(1), Fraction(1), Fraction(1)),),  # x + y = 1
    ((Fraction(0), Fraction(1), Fraction(0)),),  # y = 0
)


def plane_model(triple: AffineLagrangianTriple) -> PlaneModel:
    """Reduce the triple to unit plane coordinates and verify the reduction."""
    r = triple.system.rank
    d = triple.difference
    zero = zero_vec(r)
    model = PlaneModel(
        triple=triple,
        base=triple.p13,  # (0, w X0)
        u_dir=d + zero,
        v_dir=zero + d,
    )
    expected = {(0, 1): triple.p12, (1, 0): triple.p23, (0, 0): triple.p13}
    for (x, y), p in expected.items():
        if model.coordinates(p) != (Fraction(x), Fraction(y)):
            raise InvariantViolation("intersection point has wrong plane coordinates")
    for sub_, target in zip((triple.l1, triple.l2, triple.l3), _LINE_TARGETS):
        pulled = []
        for row, c in zip(sub_.eq_rows, sub_.eq_rhs):
            ax = sum(r_ * u for r_, u in zip(row, model.u_dir))
            ay = sum(r_ * v for r_, v in zip(row, model.v_dir))
            a0 = c - sum(r_ * b for r_, b in zip(row, model.base))
            pulled.append((ax, ay, a0))
        if rref(pulled) != rref(target):
            raise InvariantViolation("pulled-back boundary line is wrong")
    return model


def segment_in_closed_chamber(
    system: RestrictedRootSystem, w: WeylElement, start: Vec, end: Vec
) -> bool:
    """Whether the segment lies in the closed w-chamber (convexity: endpoints suffice)."""
    pos = system.positive_system(w(system.base_point))
    return all(
        system.pairing(al, p) >= 0 for al in pos for p in (start, end)
    )


# -- the conformal triangle map --------------------------------------------

PREVERTICES = (1.0 + 0.0j, 1.0j, -1.0j)
EXPONENTS = (0.75, 0.75, 0.5)  # 1 - angle/pi for angles (pi/4, pi/4, pi/2)
VERTEX_TARGETS = (1.0j, 1.0 + 0.0j, 0.0 + 0.0j)  # (0,1), (1,0), (0,0) as x + iy

# The required boundary correspondence runs counterclockwise on the circle
# but clockwise around the triangle, matching a problem posed for minus the
# standard complex structure.  The map is therefore conjugate-conformal: a
# plain Schwarz-Christoffel integral f with conjugated prevertex labels,
# evaluated at the conjugate of the disk variable.
_INT_PREVERTICES = (1.0 + 0.0j, 1.0j, -1.0j)
_INT_EXPONENTS = (0.75, 0.5, 0.75)
_INT_TARGETS = (1.0j, 0.0 + 0.0j, 1.0 + 0.0j)


def _sc_derivative(zeta: np.ndarray) -> np.ndarray:
    out = np.ones_like(zeta, dtype=complex)
    for zk, bk in zip(_INT_PREVERTICES, _INT_EXPONENTS):
        out = out * np.exp(-bk * np.log(1.0 - zeta / zk))
    return out


def _corner_integral(k: int, nodes: int) -> complex:
    """Integral of the map derivative from the origin to prevertex k."""
    zk = _INT_PREVERTICES[k]
    bk = _INT_EXPONENTS[k]
    x, wts = roots_jacobi(nodes, -bk, 0.0)
    t = (1.0 + x) / 2.0
    g = np.ones_like(t, dtype=complex)
    for j, (zj, bj) in enumerate(zip(_INT_PREVERTICES, _INT_EXPONENTS)):
        if j != k:
            g = g * np.exp(-bj * np.log(1.0 - (zk / zj) * t))
    return zk * 2.0 ** (bk - 1.0) * np.sum(wts * g)


def _segment_breaks(dist: float) -> np.ndarray:
    """Dyadic refinement of [0, 1] toward t = 1, tuned to the distance
    between the path endpoint and the nearest prevertex."""
    if dist >= 0.5:
        levels = 4
    else:
        levels = min(52, 4 + int(math.ceil(math.log2(2.0 / max(dist, 1e-15)))))
    pts = [0.0] + [1.0 - 0.5**j for j in range(1, levels + 1)] + [1.0]
    return np.array(pts)


class TriangleMapSolution:
    """A solved conformal map of the disk onto the unit right triangle."""

    def __init__(self, nodes: int, tol: float = 1e-8):
        if nodes < 16:
            raise ValueError("at least 16 quadrature nodes are required")
        if abs(sum(EXPONENTS) - 2.0) > 1e-15:
            raise InvariantViolation("exponent sum must be 2 for a closed triangle")
        self.nodes = nodes
        self.tolerance = tol
        self.prevertices = PREVERTICES
        self.exponents = EXPONENTS
        self._corner_integrals = tuple(_corner_integral(k, nodes) for k in range(3))
        i1, i2, i3 = self._corner_integrals
        t1, t2, t3 = _INT_TARGETS
        # Normalize on the two acute corners; the right-angle corner is the
        # convergence certificate.
        self.scale = (t3 - t1) / (i3 - i1)
        self.offset = t1 - self.scale * i1
        self.corner_residual = abs(self.offset + self.scale * i2 - t2)
        self.side_ratio_residual = abs(abs(i3 - i1) / abs(i2 - i1) - math.sqrt(2.0))
        if self.corner_residual > tol:
            raise QuadratureNotConverged(self.corner_residual, tol)
        self._gl_per_panel = max(12, nodes // 16)
        self._gl_nodes, self._gl_weights = np.polynomial.legendre.leggauss(
            self._gl_per_panel
        )
        self.cauchy_riemann_residual = self._cr_residual()

    # -- evaluation ----------------------------------------------------

    def _path_integral(self, z: complex) -> complex:
        """Integral of the derivative along the straight path from 0 to z."""
        if z == 0:
            return 0.0 + 0.0j
        dist = min(abs(z - zk) for zk in PREVERTICES)
        for k, zk in enumerate(PREVERTICES):
            if abs(z - zk) < 1e-14:
                return self._corner_integrals[k]
        breaks = _segment_breaks(dist)
        t0 = breaks[:-1]
        t1 = breaks[1:]
        half = (t1 - t0) / 2.0
        mid = (t1 + t0) / 2.0
        t = (mid[:, None] + half[:, None] * self._gl_nodes[None, :]).ravel()
        vals = _sc_derivative(z * t).reshape(len(t0), -1)
        per_panel = half * np.sum(vals * self._gl_weights[None, :], axis=1)
        return z * np.sum(per_panel)

    def map_point(self, z: complex) -> complex:
        """Image of a disk point; the real and imaginary parts are (x, y).

        The disk variable enters through its conjugate: the boundary
        correspondence reverses orientation, so the solution is
        conjugate-conformal.
        """
        if abs(z) > 1.0 + 1e-12:
            raise ValueError("point outside the closed unit disk")
        return self.offset + self.scale * self._path_integral(np.conj(z))

    def map_points(self, zs) -> np.ndarray:
        return np.array([self.map_point(z) for z in np.asarray(zs, dtype=complex)])

    def corner_images(self) -> tuple[complex, complex, complex]:
        """Images of the public prevertices 1, i, -i."""
        i1, i2, i3 = self._corner_integrals
        return (
            self.offset + self.scale * i1,
            self.offset + self.scale * i3,
            self.offset + self.scale * i2,
        )

    # -- residuals -------------------------------------------------------

    def _cr_residual(self) -> float:
        """Centered-difference residual of the structure equation on a grid
        whose spacing refines with the node count.

        The solved map is conjugate-conformal, so the operator that must
        vanish is d/dx - i d/dy applied to the map.
        """
        h = 0.5 / self.nodes
        centers = [0.0 + 0.0j] + [
            0.4 * np.exp(1j * k * math.pi / 4) for k in range(8)
        ]
        worst = 0.0
        for c in centers:
            fx = (self.map_point(c + h) - self.map_point(c - h)) / (2 * h)
            fy = (self.map_point(c + 1j * h) - self.map_point(c - 1j * h)) / (2 * h)
            worst = max(worst, abs(fx - 1j * fy))
        return worst


def solve_triangle(nodes: int = 256, tol: float = 1e-8) -> TriangleMapSolution:
    """Solve the triangle boundary problem at the given quadrature order."""
    return TriangleMapSolution(nodes, tol)


@dataclass
class HullReport:
    """Signed violations of the three half-plane constraints of the triangle."""

    samples: int
    tolerance: float
    max_violation: float
    worst_point: complex
    passed: bool


def interior_samples(count: int, radius: float = 0.98) -> np.ndarray:
    """Deterministic quasi-uniform disk samples (sunflower layout)."""
    golden = math.pi * (3.0 - math.sqrt(5.0))
    j = np.arange(count)
    r = radius * np.sqrt((j + 0.5) / count)
    return r * np.exp(1j * golden * j)


def verify_hull(sol: TriangleMapSolution, samples: int = 500, tol: float = 1e-9) -> HullReport:
    """Check that interior points map inside the triangle, within tolerance."""
    zs = interior_samples(samples)
    worst = -math.inf
    worst_z = 0j
    for z in zs:
        wpt = sol.map_point(z)
        x, y = wpt.real, wpt.imag
        violation = max(-x, -y, x + y - 1.0)
        if violation > worst:
            worst = violation
            worst_z = z
    return HullReport(samples, tol, worst, worst_z, worst <= tol)


@dataclass
class BoundaryReport:
    samples: int
    max_deviation: float
    per_arc: tuple[float, float, float]


def boundary_deviation(sol: TriangleMapSolution, samples: int = 500) -> BoundaryReport:
    """Euclidean distance from boundary-arc images to their target lines.

    Arcs (by angle): (-pi/2, 0) must land on x = 0, (0, pi/2) on
    x + y = 1, and (pi/2, 3 pi/2) on y = 0.
    """
    quarter = samples // 4
    arcs = [
        (-math.pi / 2, 0.0, quarter, lambda w: abs(w.real)),
        (0.0, math.pi / 2, quarter, lambda w: abs(w.real + w.imag - 1.0) / math.sqrt(2)),
        (math.pi / 2, 3 * math.pi / 2, samples - 2 * quarter, lambda w: abs(w.imag)),
    ]
    per_arc = []
    for th0, th1, n, dist in arcs:
        worst = 0.0
        for i in range(n):
            th = th0 + (i + 0.5) * (th1 - th0) / n
            w = sol.map_point(np.exp(1j * th))
            worst = max(worst, dist(w))
        per_arc.append(worst)
    return BoundaryReport(samples, max(per_arc), tuple(per_arc))


def _mobius_through(src: tuple[complex, complex, complex], dst: tuple[complex, complex, complex]):
    """Coefficients of the Mobius map sending the source triple to the target."""

    def ratio_matrix(z1, z2, z3):
        return np.array(
            [[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]], dtype=complex
        )

    ms = ratio_matrix(*src)
    mt = ratio_matrix(*dst)
    m = np.linalg.inv(mt) @ ms
    return m[0, 0], m[0, 1], m[1, 0], m[1, 1]


def symmetry_residual(sol: TriangleMapSolution, samples: int = 64) -> float:
    """Deviation from the x <-> y reflection symmetry of the triangle.

    The anti-conformal disk involution swapping the prevertices 1 and i
    while fixing -i must intertwine the map with (x, y) -> (y, x).
    """
    p, q, r, s = _mobius_through((1.0 + 0j, -1.0j, 1.0j), (1.0j, 1.0 + 0j, -1.0j))

    def sigma(z: complex) -> complex:
        zc = np.conj(z)
        return (p * zc + q) / (r * zc + s)

    worst = 0.0
    for z in interior_samples(samples, radius=0.85):
        lhs = sol.map_point(sigma(z))
        rhs = 1j * np.conj(sol.map_point(z))
        worst = max(worst, abs(lhs - rhs))
    return worst
