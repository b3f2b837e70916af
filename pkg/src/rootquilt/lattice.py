"""Lattice windows, generic shifts, and the chord/generator bases.

The lattice is supplied as basis data per catalog entry.  Window
enumeration uses the Gram norm, so windows are Weyl invariant and the
symmetry properties are exactly testable.  A generic shift is a rational
vector certified to avoid every wall and every floor boundary inside a
stated window.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BudgetExceeded,
    FloorBoundary,
    InvariantViolation,
    LatticeNotStable,
    NotInChamber,
    NotRegular,
    NotSmall,
)
from .linalg import Mat, Vec, add, gram_pair, inverse, is_integral, mat_mul, mat_vec, scale, transpose, vec
from .roots import RestrictedRootSystem, WeylElement

DEFAULT_POINT_CAP = 500_000


class Lattice:
    """A full-rank lattice in the Cartan space, given by a basis."""

    def __init__(self, system: RestrictedRootSystem, basis: Sequence[Vec]):
        self.system = system
        self.basis: tuple[Vec, ...] = tuple(vec(b) for b in basis)
        n = system.rank
        if len(self.basis) != n or any(len(b) != n for b in self.basis):
            raise InvariantViolation("lattice basis must be rank many vectors of full dimension")
        cols = tuple(zip(*self.basis, strict=True))  # basis vectors as columns
        self._basis_matrix: Mat = cols
        try:
            self._inv_basis: Mat = inverse(cols)
        except ValueError:
            raise InvariantViolation("lattice basis is not linearly independent") from None
        bt = self.basis  # rows are basis vectors
        self._norm_matrix: Mat = mat_mul(bt, mat_mul(system.gram, transpose(bt)))
        self._inv_norm: Mat = inverse(self._norm_matrix)

    def from_coords(self, coords: Sequence) -> Vec:
        return mat_vec(self._basis_matrix, vec(coords))

    def coords(self, v: Vec) -> Vec:
        return mat_vec(self._inv_basis, v)

    def contains(self, v: Vec) -> bool:
        return is_integral(self.coords(v))

    def check_weyl_stable(self) -> None:
        """Exact membership of every Weyl image of every basis vector."""
        for w in self.system.weyl_group():
            for b in self.basis:
                if not self.contains(w(b)):
                    raise LatticeNotStable(f"{w.name} moves basis vector {b} off the lattice")

    def points(self, radius: Fraction, cap: int = DEFAULT_POINT_CAP) -> list[Vec]:
        """All lattice points with Gram norm at most radius.

        Ordered by (norm squared, basis coordinates), so smaller windows are
        prefixes of larger ones and the order is reproducible.
        """
        radius = Fraction(radius)
        if radius < 0:
            raise ValueError("radius must be non-negative")
        r2 = radius * radius
        n = self.system.rank
        bounds = []
        for i in range(n):
            b2 = r2 * self._inv_norm[i][i]
            bounds.append(math.isqrt(math.floor(b2)))
        found: list[tuple[Fraction, tuple[int, ...]]] = []
        coords = [0] * n

        def sweep(i: int) -> None:
            if i == n:
                c = vec(coords)
                q2 = gram_pair(self._norm_matrix, c, c)
                if q2 <= r2:
                    found.append((q2, tuple(coords)))
                    if len(found) > cap:
                        raise BudgetExceeded(f"window holds more than {cap} lattice points")
                return
            for k in range(-bounds[i], bounds[i] + 1):
                coords[i] = k
                sweep(i + 1)
            coords[i] = 0

        sweep(0)
        found.sort()
        return [self.from_coords(c) for _, c in found]


def weyl_action(lattice: Lattice, w: WeylElement, q: Vec) -> Vec:
    """Apply w to a lattice point; the image must stay on the lattice."""
    if not lattice.contains(q):
        raise LatticeNotStable(f"{q} is not a lattice point")
    image = w(q)
    if not lattice.contains(image):
        raise LatticeNotStable(f"{w.name} moves {q} off the lattice")
    return image


class Mode(enum.Enum):
    REGULAR_ONLY = "regular_only"
    SMALL_IN_CHAMBER = "small_in_chamber"


@dataclass
class GenericShift:
    """A certified shift vector: regular, boundary-free in its window."""

    system: RestrictedRootSystem
    lattice: Lattice
    a: Vec
    mode: Mode
    window_radius: Fraction
    _points: list[Vec] | None = field(default=None, repr=False, compare=False)

    def window_points(self) -> list[Vec]:
        if self._points is None:
            self._points = self.lattice.points(self.window_radius)
        return self._points


def validate_generic(
    system: RestrictedRootSystem,
    lattice: Lattice,
    a: Vec,
    mode: Mode = Mode.SMALL_IN_CHAMBER,
    radius: Fraction = Fraction(0),
    cap: int = DEFAULT_POINT_CAP,
) -> GenericShift:
    """Exact finite certification of a shift over roots x window points.

    Checks, in order: regularity (no wall contains ``a``), absence of floor
    boundaries (no 2*alpha(q + a) is an integer for window points q), and in
    small-in-chamber mode that ``a`` lies in the base chamber with every
    |2*alpha(a)| < 1/2.

    The strict 1/2 matters: the filtration difference between a chamber
    element and the identity is a sum of terms m_alpha (1 - 4 alpha(a)) over
    flipped roots, so 1/2 is exactly the threshold below which the identity
    is the unique filtration minimum.
    """
    a = vec(a)
    radius = Fraction(radius)
    walls = [al for al in system.roots if system.pairing(al, a) == 0]
    if walls:
        raise NotRegular(walls)
    points = lattice.points(radius, cap=cap)
    for q in points:
        qa = add(q, a)
        for al in system.roots:
            val = 2 * system.pairing(al, qa)
            if val.denominator == 1:
                raise FloorBoundary(al, q, f"2*alpha(q+a) = {val} at alpha={al}, q={q}")
    if mode is Mode.SMALL_IN_CHAMBER:
        for beta in system.simple_roots:
            if system.pairing(beta, a) <= 0:
                raise NotInChamber(f"shift fails beta={beta}")
        for al in system.roots:
            if abs(2 * system.pairing(al, a)) >= Fraction(1, 2):
                raise NotSmall(f"|2*alpha(a)| >= 1/2 at alpha={al}")
    shift = GenericShift(system, lattice, a, mode, radius)
    shift._points = points
    return shift


def weighted_root_sum(system: RestrictedRootSystem) -> Vec:
    """Sum of the positive roots weighted by multiplicity, as a vector."""
    total = vec([0] * system.rank)
    for al in system.positive_roots:
        total = add(total, scale(system.mult[al], al))
    return total


def canonical_shift(
    system: RestrictedRootSystem,
    lattice: Lattice,
    mode: Mode = Mode.SMALL_IN_CHAMBER,
    radius: Fraction = Fraction(0),
    max_denominator_index: int = 10_000,
) -> GenericShift:
    """The reproducible default shift epsilon * rho-dual.

    Scans epsilon = 1/3, 1/5, 1/7, ... and returns the first scaling of the
    weighted root sum that passes validation at the requested radius.
    """
    rho = weighted_root_sum(system)
    for d in range(1, max_denominator_index + 1):
        eps = Fraction(1, 2 * d + 1)
        try:
            return validate_generic(system, lattice, scale(eps, rho), mode, radius)
        except (NotRegular, FloorBoundary, NotInChamber, NotSmall):
            continue
    raise InvariantViolation("no canonical shift found; data is degenerate")


@dataclass(frozen=True)
class Generator:
    """Basis element of the enlarged complex, indexed by (w, lattice point)."""

    w: WeylElement
    q: Vec

    def label(self) -> str:
        return f"y[{self.w.name};{','.join(str(x) for x in self.q)}]"


@dataclass(frozen=True)
class Chord:
    """A lattice point indexing a Hamiltonian chord."""

    q: Vec


def chords(shift: GenericShift) -> list[Chord]:
    return [Chord(q) for q in shift.window_points()]


def generators(shift: GenericShift) -> list[Generator]:
    group = shift.system.weyl_group()
    return [Generator(w, q) for w in group for q in shift.window_points()]
