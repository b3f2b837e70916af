"""Closed-form index, filtration, and area quantities.

Everything here is a finite sum over a positive system: the Fredholm index
of a quilt datum as a difference of floor sums, the positivity certificate
for the ugly class, the fractional-part filtration on the Weyl group, the
Morse indices of the height function, and the parity bookkeeping that
decides when differentials are forced to vanish.

Degrees are relative: only differences of floor sums are meaningful, so a
fixed sign convention (floor sum over the positive system of w X0) is used
throughout and no absolute grading is exposed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FloorBoundary, InvariantViolation, ModeMismatch, NotDominant, NotUgly
from .lattice import GenericShift, Mode, weighted_root_sum
from .linalg import Vec, add, gram_pair, scale, vec
from .roots import RestrictedRootSystem, WeylElement


@dataclass(frozen=True)
class MonotoneData:
    """The proportionality data tying symplectic area to the Maslov index.

    ``rho`` is the multiplicity-weighted sum of positive roots as a vector
    and ``x0`` = 2 tau rho, so that pairing with x0 equals
    2 tau * sum_alpha m_alpha alpha(-) identically.
    """

    system: RestrictedRootSystem
    tau: Fraction
    rho: Vec
    x0: Vec


def default_tau(system: RestrictedRootSystem) -> Fraction:
    """Normalization making the smallest simple value alpha(X0) equal one."""
    rho = weighted_root_sum(system)
    smallest = min(system.pairing(beta, rho) for beta in system.simple_roots)
    return Fraction(1, 2) / smallest


def monotone_data(system: RestrictedRootSystem, tau: Fraction | None = None) -> MonotoneData:
    tau = default_tau(system) if tau is None else Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    rho = weighted_root_sum(system)
    for beta in system.simple_roots:
        if system.pairing(beta, rho) <= 0:
            raise NotDominant(f"weighted root sum fails dominance at {beta}")
    x0 = scale(2 * tau, rho)
    # The defining identity, verified exactly on the coordinate basis.
    for j in range(system.rank):
        e = vec([1 if i == j else 0 for i in range(system.rank)])
        lhs = gram_pair(system.gram, e, x0)
        rhs = 2 * tau * sum(
            system.mult[al] * system.pairing(al, e) for al in system.positive_roots
        )
        if lhs != rhs:
            raise InvariantViolation("monotone identity failed on a basis vector")
    return MonotoneData(system, tau, rho, x0)


def _floor_term(system: RestrictedRootSystem, alpha: Vec, point: Vec) -> int:
    value = 2 * system.pairing(alpha, point)
    if value.denominator == 1:
        raise FloorBoundary(alpha, point)
    return math.floor(value)


def relative_degree(w: WeylElement, q: Vec, shift: GenericShift) -> int:
    """Floor sum of 2 alpha(q + a) over the positive system of w X0."""
    system = shift.system
    qa = add(q, shift.a)
    pos = system.chamber_positive_system(w)
    return sum(system.mult[al] * _floor_term(system, al, qa) for al in pos)


@dataclass(frozen=True)
class QuiltDatum:
    """Input chord, output chamber element, output chord, and the shift.

    Both chords must be lattice points inside the shift's validated window,
    which is what rules out floor boundaries in the index sums.
    """

    shift: GenericShift
    q_in: Vec
    w_out: WeylElement
    q_out: Vec

    def __post_init__(self):
        r2 = self.shift.window_radius * self.shift.window_radius
        for q in (self.q_in, self.q_out):
            if not self.shift.lattice.contains(q):
                raise InvariantViolation(f"{q} is not a lattice point")
            if self.shift.system.norm2(q) > r2:
                raise InvariantViolation(f"{q} lies outside the validated window")


def quilt_index(d: QuiltDatum) -> int:
    """Fredholm index: floor sum at the input minus floor sum at the output.

    The input chamber element is determined by the input chord, via the
    chamber containing q_in + a.
    """
    system = d.shift.system
    w_in = system.chamber_of(add(d.q_in, d.shift.a))
    return relative_degree(w_in, d.q_in, d.shift) - relative_degree(d.w_out, d.q_out, d.shift)


class QuiltClass(enum.Enum):
    BAD = "bad"
    UGLY = "ugly"


def classify(q: Vec, w: WeylElement, shift: GenericShift) -> QuiltClass:
    """Bad when q + a lies in the w-image of the base chamber, else ugly."""
    wq = shift.system.chamber_of(add(q, shift.a))
    return QuiltClass.BAD if wq == w else QuiltClass.UGLY


def ugly_index(q: Vec, w: WeylElement, shift: GenericShift) -> int:
    """Index of an ugly datum, as a sum over sign-changing roots.

    Strictly positive, and equal to the quilt index of the diagonal datum
    (q_in = q_out = q, w_out = w); both facts are re-checked here.
    """
    system = shift.system
    if classify(q, w, shift) is QuiltClass.BAD:
        raise NotUgly("datum is bad, not ugly")
    qa = add(q, shift.a)
    w_in = system.chamber_of(qa)
    x_out = w(system.base_point)
    total = 0
    for al in system.chamber_positive_system(w_in):
        if system.pairing(al, x_out) < 0:
            val = 2 * system.pairing(al, qa)
            if val.denominator == 1:
                raise FloorBoundary(al, q)
            total += system.mult[al] * (math.floor(val) - math.floor(-val))
    cross = quilt_index(QuiltDatum(shift, q, w, q))
    if total != cross:
        raise InvariantViolation("ugly index disagrees with the quilt index")
    if total <= 0:
        raise InvariantViolation("ugly index failed strict positivity")
    return total


def frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def filtration_weight(w: WeylElement, shift: GenericShift) -> Fraction:
    """Multiplicity-weighted fractional parts of 2 alpha(a) over R+ of w X0."""
    system = shift.system
    pos = system.chamber_positive_system(w)
    return sum(
        (system.mult[al] * frac(2 * system.pairing(al, shift.a)) for al in pos),
        Fraction(0),
    )


def zero_index_implication(
    d_in: tuple[Vec, WeylElement],
    d_out: tuple[Vec, WeylElement],
    shift: GenericShift,
    md: MonotoneData,
) -> bool:
    """Arithmetic form of the energy gap: index zero plus a strict action
    drop forces a strict filtration drop.

    Returns True when the implication holds for the pair of data; a False
    would expose an inconsistency between the floor sums, the fractional
    sums, and the monotone pairing.
    """
    system = shift.system
    q_in, w_in = d_in
    q_out, w_out = d_out
    x_in = w_in(md.x0)
    x_out = w_out(md.x0)
    floor_in = relative_degree(w_in, q_in, shift)
    floor_out = relative_degree(w_out, q_out, shift)
    if floor_in != floor_out:
        return True
    action_in = gram_pair(system.gram, add(q_in, shift.a), x_in)
    action_out = gram_pair(system.gram, add(q_out, shift.a), x_out)
    if action_in <= action_out:
        return True
    return filtration_weight(w_in, shift) > filtration_weight(w_out, shift)


def capping_maslov(system: RestrictedRootSystem, q: Vec) -> int:
    """Maslov index of the capping class q: minus twice the weighted sum."""
    total = -2 * sum(
        (system.mult[al] * system.pairing(al, q) for al in system.positive_roots),
        Fraction(0),
    )
    if total.denominator != 1:
        raise InvariantViolation("capping Maslov index is not an integer; lattice data invalid")
    return int(total)


def capping_area(q: Vec, md: MonotoneData) -> Fraction:
    """Symplectic area of the capping class q; equals tau times the Maslov index."""
    area = -gram_pair(md.system.gram, q, md.x0)
    if area != md.tau * capping_maslov(md.system, q):
        raise InvariantViolation("area-index proportionality failed")
    return area


def morse_index(w: WeylElement, shift: GenericShift) -> int:
    """Morse index of the critical point w X0 of the height function.

    Computed two ways (negative-root multiplicity count and a floor sum)
    which must agree under the smallness hypothesis.
    """
    if shift.mode is not Mode.SMALL_IN_CHAMBER:
        raise ModeMismatch("morse_index requires a small-in-chamber shift")
    system = shift.system
    pos = system.chamber_positive_system(w)
    by_count = sum(system.mult[al] for al in pos if system.pairing(al, shift.a) < 0)
    by_floor = -sum(
        system.mult[al] * math.floor(2 * system.pairing(al, shift.a)) for al in pos
    )
    if by_count != by_floor:
        raise InvariantViolation("the two Morse index formulas disagree")
    return by_count


def poincare_polynomial(shift: GenericShift) -> list[int]:
    """Coefficient k counts chamber elements of Morse index k."""
    system = shift.system
    top = system.dim_lambda()
    coeffs = [0] * (top + 1)
    for w in system.weyl_group():
        coeffs[morse_index(w, shift)] += 1
    return coeffs


@dataclass(frozen=True)
class ParityReport:
    """Parity census of relative degrees over a window."""

    all_multiplicities_even: bool
    even_degrees: int
    odd_degrees: int
    min_degree: int
    max_degree: int
    differential_must_vanish: bool | None  # None means undetermined

    @property
    def verdict(self) -> str:
        if self.differential_must_vanish is True:
            return "true"
        return "undetermined"


def parity_report(shift: GenericShift, coefficients: str = "Z") -> ParityReport:
    """Census of relative degrees deg(w, q) over the validated window.

    With every multiplicity even the degrees are all even and the
    differential vanishes for any coefficients.  Otherwise vanishing is
    undetermined here, unless working over the two-element field, which the
    ``coefficients`` flag selects.
    """
    system = shift.system
    all_even = all(m % 2 == 0 for m in system.mult.values())
    degrees = [
        relative_degree(w, q, shift)
        for w in system.weyl_group()
        for q in shift.window_points()
    ]
    even = sum(1 for d in degrees if d % 2 == 0)
    odd = len(degrees) - even
    if all_even:
        if odd:
            raise InvariantViolation("odd degree found although every multiplicity is even")
        vanish: bool | None = True
    elif coefficients.upper() == "Z2":
        vanish = True
    else:
        vanish = None
    return ParityReport(all_even, even, odd, min(degrees), max(degrees), vanish)
