"""Restricted root systems with multiplicities and their Weyl groups.

A system lives in Q^rank equipped with an exact symmetric positive definite
Gram matrix.  Each root is stored as its metric dual vector, so the value of
the root on v is the Gram pairing with v, and the reflection formula needs
no separate coroot bookkeeping.  Systems may be non-reduced: a root and its
double may both occur, but no other rational multiples.

All data is immutable after construction and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import BudgetExceeded, InvariantViolation, NotRegular, UnknownRoot
from .linalg import (
    Mat,
    Vec,
    gram_pair,
    identity,
    inverse,
    is_symmetric,
    leading_minors_positive,
    mat_mul,
    mat_vec,
    matrix_rank,
    vec,
)

DEFAULT_WEYL_CAP = 10**6


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An orthogonal transformation of the Cartan space with a reduced word.

    The word lists simple reflection indices (0-based); the element is the
    product s_{i1} s_{i2} ... applied left to right to vectors.  Equality
    and hashing use the matrix only, since one element admits many words.
    """

    matrix: Mat
    word: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)

    @property
    def name(self) -> str:
        if not self.word:
            return "e"
        return "*".join(f"s{i + 1}" for i in self.word)

    def __repr__(self):
        return f"WeylElement({self.name})"


class WeylGroup:
    """The full finite reflection group, enumerated with reduced words."""

    def __init__(self, elements: list[WeylElement], simple: list[WeylElement]):
        self.elements: tuple[WeylElement, ...] = tuple(elements)
        self.simple: tuple[WeylElement, ...] = tuple(simple)
        self.by_matrix: dict[Mat, WeylElement] = {w.matrix: w for w in elements}
        self.identity: WeylElement = elements[0]
        max_len = max(len(w.word) for w in elements)
        longest = [w for w in elements if len(w.word) == max_len]
        if len(longest) != 1:
            raise InvariantViolation("longest element is not unique")
        self.longest: WeylElement = longest[0]

    @property
    def order(self) -> int:
        return len(self.elements)

    def canonical(self, matrix: Mat) -> WeylElement:
        try:
            return self.by_matrix[matrix]
        except KeyError:
            raise InvariantViolation("matrix is not a group element") from None

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.canonical(mat_mul(a.matrix, b.matrix))

    def inverse(self, a: WeylElement) -> WeylElement:
        return self.canonical(inverse(a.matrix))

    def from_word(self, word: Iterable[int]) -> WeylElement:
        m = self.identity.matrix
        for i in word:
            m = mat_mul(m, self.simple[i].matrix)
        return self.canonical(m)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


class RestrictedRootSystem:
    """A finite set of metric-dual root vectors with positive multiplicities.

    Invariants checked at construction: the Gram matrix is symmetric positive
    definite, the root set is symmetric with matching multiplicities, closed
    under all root reflections (multiplicity preserved), spans the ambient
    space, and proportional roots only come in ratio two.  The base chamber
    is the one containing ``base_point``.
    """

    def __init__(
        self,
        gram: Mat,
        roots: Iterable[Vec],
        mult: Mapping[Vec, int],
        base_point: Vec,
        name: str = "",
    ):
        self.gram: Mat = tuple(tuple(Fraction(x) for x in row) for row in gram)
        self.rank: int = len(self.gram)
        self.roots: tuple[Vec, ...] = tuple(sorted(vec(r) for r in roots))
        self.mult: dict[Vec, int] = {vec(r): int(m) for r, m in mult.items()}
        self.base_point: Vec = vec(base_point)
        self.name = name
        self._weyl: WeylGroup | None = None
        self._chamber_pos: dict[Mat, tuple[Vec, ...]] = {}
        self._validate()

    # -- pairings ------------------------------------------------------

    def pairing(self, alpha: Vec, v: Vec) -> Fraction:
        """The value alpha(v), as a Gram pairing of metric duals."""
        return gram_pair(self.gram, alpha, v)

    def norm2(self, v: Vec) -> Fraction:
        return gram_pair(self.gram, v, v)

    def reflect(self, alpha: Vec, v: Vec) -> Vec:
        """Reflection of v across the wall of alpha, computed exactly."""
        if alpha not in self.mult:
            raise UnknownRoot(f"{alpha} is not a root")
        c = 2 * self.pairing(alpha, v) / self.pairing(alpha, alpha)
        return tuple(x - c * a for x, a in zip(v, alpha))

    def reflection_matrix(self, alpha: Vec) -> Mat:
        cols = [self.reflect(alpha, e) for e in (identity(self.rank))]
        return tuple(zip(*cols, strict=True))

    # -- positive systems and chambers ---------------------------------

    def positive_system(self, x: Vec) -> tuple[Vec, ...]:
        """All roots positive on a regular vector; exactly half the set."""
        walls = [a for a in self.roots if self.pairing(a, x) == 0]
        if walls:
            raise NotRegular(walls)
        return tuple(a for a in self.roots if self.pairing(a, x) > 0)

    @property
    def positive_roots(self) -> tuple[Vec, ...]:
        if not hasattr(self, "_positive"):
            self._positive = self.positive_system(self.base_point)
        return self._positive

    def chamber_positive_system(self, w: WeylElement) -> tuple[Vec, ...]:
        """Positive system of the w-image of the base chamber, cached."""
        cached = self._chamber_pos.get(w.matrix)
        if cached is None:
            cached = self.positive_system(w(self.base_point))
            self._chamber_pos[w.matrix] = cached
        return cached

    @property
    def indivisible_positive_roots(self) -> tuple[Vec, ...]:
        """Positive roots whose half is not a root."""
        if not hasattr(self, "_indivisible"):
            doubles = {tuple(2 * x for x in a) for a in self.roots}
            self._indivisible = tuple(a for a in self.positive_roots if a not in doubles)
        return self._indivisible

    @property
    def simple_roots(self) -> tuple[Vec, ...]:
        """The walls of the base chamber.

        Ordered by first nonzero coordinate, so that in simple-root
        coordinates the reflection s_i belongs to the i-th coordinate root.
        """
        if not hasattr(self, "_simple"):
            pos = set(self.positive_roots)
            sums = {tuple(b + g for b, g in zip(x, y)) for x in pos for y in pos}
            simple = [a for a in self.indivisible_positive_roots if a not in sums]
            if len(simple) != self.rank:
                raise InvariantViolation(
                    f"found {len(simple)} simple roots, expected rank {self.rank}"
                )
            simple.sort(key=lambda a: (next(i for i, x in enumerate(a) if x != 0), a))
            self._simple = tuple(simple)
        return self._simple

    def dim_lambda(self) -> int:
        """Total multiplicity over the positive system."""
        return sum(self.mult[a] for a in self.positive_roots)

    # -- Weyl group -----------------------------------------------------

    def weyl_group(self, cap: int = DEFAULT_WEYL_CAP) -> WeylGroup:
        """Breadth-first closure of the simple reflections.

        The BFS discovers each element at its minimal word length, so the
        recorded words are reduced.  Deterministic: the frontier is scanned
        in insertion order and generators in index order.
        """
        if self._weyl is not None:
            return self._weyl
        gens = [self.reflection_matrix(a) for a in self.simple_roots]
        ident = WeylElement(identity(self.rank), ())
        elements = [ident]
        seen = {ident.matrix}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for i, g in enumerate(gens):
                    m = mat_mul(w.matrix, g)
                    if m not in seen:
                        seen.add(m)
                        el = WeylElement(m, w.word + (i,))
                        elements.append(el)
                        nxt.append(el)
                        if len(elements) > cap:
                            raise BudgetExceeded(f"Weyl group larger than cap {cap}")
            frontier = nxt
        simple = [elements[0]] * len(gens)
        for i, g in enumerate(gens):
            simple[i] = next(w for w in elements if w.matrix == g)
        self._weyl = WeylGroup(elements, simple)
        return self._weyl

    def chamber_of(self, v: Vec) -> WeylElement:
        """The unique w with v in the w-image of the base chamber.

        Walks v into the base chamber by simple reflections (picking the
        smallest descent index at each step) and returns the inverse walk.
        """
        walls = [a for a in self.roots if self.pairing(a, v) == 0]
        if walls:
            raise NotRegular(walls)
        group = self.weyl_group()
        simple = self.simple_roots
        x = v
        word: list[int] = []
        guard = 4 * len(self.roots) + 8
        while True:
            i = next((k for k, a in enumerate(simple) if self.pairing(a, x) < 0), None)
            if i is None:
                break
            x = self.reflect(simple[i], x)
            word.append(i)
            guard -= 1
            if guard < 0:
                raise InvariantViolation("descent walk failed to terminate")
        return group.from_word(word)

    def length(self, w: WeylElement) -> int:
        """Number of indivisible positive roots sent to negative ones."""
        return sum(
            1
            for a in self.indivisible_positive_roots
            if self.pairing(w(a), self.base_point) < 0
        )

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        n = self.rank
        if n < 1:
            raise InvariantViolation("rank must be positive")
        if any(len(row) != n for row in self.gram):
            raise InvariantViolation("gram matrix is not square")
        if not is_symmetric(self.gram):
            raise InvariantViolation("gram matrix is not symmetric")
        if not leading_minors_positive(self.gram):
            raise InvariantViolation("gram matrix is not positive definite")
        if not self.roots:
            raise InvariantViolation("empty root set")
        if set(self.mult) != set(self.roots):
            raise InvariantViolation("multiplicity map does not match the root set")
        for a in self.roots:
            if len(a) != n:
                raise InvariantViolation("root of wrong dimension")
            if all(x == 0 for x in a):
                raise InvariantViolation("zero vector among roots")
            if self.mult[a] < 1:
                raise InvariantViolation("non-positive multiplicity")
            na = tuple(-x for x in a)
            if na not in self.mult or self.mult[na] != self.mult[a]:
                raise InvariantViolation("root set not symmetric with equal multiplicities")
        if matrix_rank(list(self.roots)) != n:
            raise InvariantViolation("roots do not span the ambient space")
        self._check_multiples()
        for a in self.roots:
            for b in self.roots:
                img = self.reflect(a, b)
                if img not in self.mult or self.mult[img] != self.mult[b]:
                    raise InvariantViolation(
                        f"reflection of {b} across {a} leaves the system"
                    )
        if any(self.pairing(a, self.base_point) == 0 for a in self.roots):
            raise InvariantViolation("base point is not regular")

    def _check_multiples(self) -> None:
        allowed = {Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                   Fraction(1, 2), Fraction(-1, 2)}
        for i, a in enumerate(self.roots):
            for b in self.roots[i + 1 :]:
                ratio = _proportionality(a, b)
                if ratio is not None and ratio not in allowed:
                    raise InvariantViolation(
                        f"roots {a} and {b} are proportional with ratio {ratio}"
                    )

    def __repr__(self):
        label = self.name or f"rank {self.rank}"
        return f"RestrictedRootSystem({label}, {len(self.roots)} roots)"


def _proportionality(a: Vec, b: Vec) -> Fraction | None:
    """Return c with b = c*a if the vectors are parallel, else None."""
    ratio: Fraction | None = None
    for x, y in zip(a, b):
        if x == 0:
            if y != 0:
                return None
            continue
        r = y / x
        if ratio is None:
            ratio = r
        elif ratio != r:
            return None
    return ratio
