"""Concrete matrix groups acting on the cubic-surface model.

Reductive elements are triples ``(A1, A2, A3)`` of 2x2 matrices with
``A1`` in GL2 and ``det(A2) * det(A3) == 1``.  Full group elements add a
unipotent 2x2 block ``u``; the pair ``(r, u)`` stands for the product ``u * r``
and the reductive part acts on ``u`` by ``A3 u A2^-1``.

On the linear forms ``x0..x3`` (``x0, x1`` vanish on the fixed line, ``x2, x3``
restrict to coordinates on it) the element ``(r, u)`` acts by the block matrix
``[[A3, u A2], [0, A2]]``, column convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

from .field import I, ONE, SQRT2, THETA, ZERO, ZETA3, CycNum, Scalar, cyc
from .linalg import ExactMatrix, det, inverse

T = TypeVar("T")


class BoundExceededError(RuntimeError):
    """Closure grew past the requested bound."""


class NotAMemberError(ValueError):
    pass


def mat2(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> ExactMatrix:
    return ExactMatrix(2, 2, (a, b, c, d))


ID2 = ExactMatrix.identity(2)
ZERO2 = ExactMatrix.zeros(2, 2)


# -- the named constants ----------------------------------------------------

A_MAT = mat2(I, 0, 0, -I)
B_MAT = mat2(0, 1, -1, 0)
TAU_MAT = mat2(THETA.inverse(), 0, 0, THETA)
SIGMA_MAT = mat2(THETA**3, THETA**7, THETA**5, THETA**5).scale(SQRT2.inverse())

HESSE_CYCLE = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
HESSE_DIAG = ExactMatrix.diag([ONE, ZETA3, ZETA3 * ZETA3])
HESSE_SWAP = ExactMatrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
HESSE_GENERATORS = (HESSE_CYCLE, HESSE_DIAG, HESSE_SWAP)


# -- elements ---------------------------------------------------------------


@dataclass(frozen=True)
class TripleElement:
    a1: ExactMatrix
    a2: ExactMatrix
    a3: ExactMatrix

    def __post_init__(self):
        for m in (self.a1, self.a2, self.a3):
            if m.shape != (2, 2):
                raise ValueError("triple blocks must be 2x2")

    @classmethod
    def identity(cls) -> "TripleElement":
        return cls(ID2, ID2, ID2)

    @classmethod
    def diagonal(cls, x: ExactMatrix) -> "TripleElement":
        return cls(x, x, x)

    @classmethod
    def scalars(cls, l1: Scalar, l2: Scalar, l3: Scalar) -> "TripleElement":
        return cls(ExactMatrix.scalar(2, l1), ExactMatrix.scalar(2, l2), ExactMatrix.scalar(2, l3))

    @classmethod
    def center(cls, lam: Scalar, mu: Scalar, sign: int = 1) -> "TripleElement":
        """Central element ``(lam I, sign*mu I, mu^-1 I)``."""
        mu = cyc(mu)
        return cls.scalars(lam, mu * sign, mu.inverse())

    def __mul__(self, other: "TripleElement") -> "TripleElement":
        return TripleElement(self.a1 @ other.a1, self.a2 @ other.a2, self.a3 @ other.a3)

    def inverse(self) -> "TripleElement":
        return TripleElement(inverse(self.a1), inverse(self.a2), inverse(self.a3))

    def __pow__(self, e: int) -> "TripleElement":
        return TripleElement(self.a1**e, self.a2**e, self.a3**e)

    def __neg__(self) -> "TripleElement":
        return TripleElement(-self.a1, -self.a2, -self.a3)

    def blocks(self) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
        return (self.a1, self.a2, self.a3)

    def is_identity(self) -> bool:
        return all(m.is_identity() for m in self.blocks())

    def is_valid(self) -> bool:
        return not det(self.a1).is_zero() and det(self.a2) * det(self.a3) == ONE

    def key(self) -> str:
        return "|".join(m.key() for m in self.blocks())

    def to_json(self) -> list:
        return [m.to_json() for m in self.blocks()]


@dataclass(frozen=True)
class GElement:
    """Element ``u * r`` of the semidirect product of reductive and unipotent parts."""

    reductive: TripleElement
    unipotent: ExactMatrix = field(default=ZERO2)

    @classmethod
    def identity(cls) -> "GElement":
        return cls(TripleElement.identity(), ZERO2)

    @classmethod
    def from_reductive(cls, r: TripleElement) -> "GElement":
        return cls(r, ZERO2)

    @classmethod
    def from_unipotent(cls, u: ExactMatrix) -> "GElement":
        return cls(TripleElement.identity(), u)

    def __mul__(self, other: "GElement") -> "GElement":
        r, u = self.reductive, self.unipotent
        return GElement(r * other.reductive, u + act_on_unipotent(r, other.unipotent))

    def inverse(self) -> "GElement":
        rinv = self.reductive.inverse()
        return GElement(rinv, -act_on_unipotent(rinv, self.unipotent))

    def form_matrix(self) -> ExactMatrix:
        """4x4 action on the linear forms x0..x3 (column convention)."""
        a2, a3 = self.reductive.a2, self.reductive.a3
        top_right = self.unipotent @ a2
        rows = [
            [a3[0, 0], a3[0, 1], top_right[0, 0], top_right[0, 1]],
            [a3[1, 0], a3[1, 1], top_right[1, 0], top_right[1, 1]],
            [ZERO, ZERO, a2[0, 0], a2[0, 1]],
            [ZERO, ZERO, a2[1, 0], a2[1, 1]],
        ]
        return ExactMatrix.from_rows(rows)

    @classmethod
    def from_matrices(cls, a1: ExactMatrix, w: ExactMatrix) -> "GElement":
        """Inverse of :meth:`form_matrix`, given the GL2 factor separately."""
        if any(not w[i, j].is_zero() for i in (2, 3) for j in (0, 1)):
            raise ValueError("form matrix must preserve the span of x0, x1")
        a3 = mat2(w[0, 0], w[0, 1], w[1, 0], w[1, 1])
        a2 = mat2(w[2, 2], w[2, 3], w[3, 2], w[3, 3])
        tr = mat2(w[0, 2], w[0, 3], w[1, 2], w[1, 3])
        return cls(TripleElement(a1, a2, a3), tr @ inverse(a2))

    def key(self) -> str:
        return self.reductive.key() + "#" + self.unipotent.key()


def act_on_unipotent(r: TripleElement, u: ExactMatrix) -> ExactMatrix:
    """Conjugation action of the reductive part on U = Hom(C^2, C^2)."""
    return r.a3 @ u @ inverse(r.a2)


# -- finite groups ----------------------------------------------------------


def _default_mul(a, b):
    return a @ b if isinstance(a, ExactMatrix) else a * b


def _default_key(x) -> Hashable:
    return x.key()


@dataclass
class FiniteMatrixGroup:
    elements: list
    generators: list
    mul: Callable = field(default=_default_mul, repr=False)
    key: Callable = field(default=_default_key, repr=False)

    def __post_init__(self):
        self._index = {self.key(x): i for i, x in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return self.key(x) in self._index

    def index(self, x) -> int:
        try:
            return self._index[self.key(x)]
        except KeyError:
            raise NotAMemberError("element is not in the group") from None

    def identity(self):
        return self.elements[0]

    def check_closed(self, sample: int = 100, pairs: int = 2000, seed: int = 0) -> bool:
        """Identity, inverses and products stay inside the group.

        Products are checked exhaustively up to ``sample`` elements and on
        ``pairs`` deterministically sampled pairs beyond that.
        """
        import random

        ident = self.elements[0]
        if any(self.key(self.mul(ident, x)) != self.key(x) for x in self.elements):
            return False
        for x in self.elements:
            inv = x.inverse()
            if inv not in self:
                return False
        if self.order <= sample:
            todo = itertools.product(self.elements, repeat=2)
        else:
            rng = random.Random(seed)
            todo = ((rng.choice(self.elements), rng.choice(self.elements)) for _ in range(pairs))
        return all(self.mul(a, b) in self for a, b in todo)

    def element_order(self, x, limit: int = 1000) -> int:
        ident_key = self.key(self.elements[0])
        p = x
        for n in range(1, limit + 1):
            if self.key(p) == ident_key:
                return n
            p = self.mul(p, x)
        raise BoundExceededError("element order exceeds limit")


def closure(
    generators: Sequence[T],
    bound: int = 10_000,
    identity: T | None = None,
    mul: Callable[[T, T], T] = _default_mul,
    key: Callable[[T], Hashable] = _default_key,
) -> FiniteMatrixGroup:
    """Smallest multiplicatively closed set containing ``generators`` and the identity.

    Elements are compared through ``key``; pass a projective normalization to
    close up modulo scalars.  Raises :class:`BoundExceededError` once more than
    ``bound`` distinct elements appear.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    generators = list(generators)
    if not generators and identity is None:
        raise ValueError("need generators or an explicit identity")
    if identity is None:
        g0 = generators[0]
        if isinstance(g0, ExactMatrix):
            identity = ExactMatrix.identity(g0.rows)
        else:
            identity = type(g0).identity()
    elements = [identity]
    seen = {key(identity)}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = mul(x, g)
                k = key(y)
                if k not in seen:
                    seen.add(k)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > bound:
                        raise BoundExceededError(f"closure exceeded {bound} elements")
        frontier = nxt
    return FiniteMatrixGroup(elements, generators, mul=mul, key=key)


def projective_key(m: ExactMatrix) -> str:
    """Key of the matrix scaled so its first nonzero entry is 1."""
    lead = next(e for e in m.entries if not e.is_zero())
    return m.scale(lead.inverse()).key()


# -- the groups used by the certificates -----------------------------------


def heisenberg_group(a: ExactMatrix = A_MAT, b: ExactMatrix = B_MAT, bound: int = 64) -> FiniteMatrixGroup:
    """Group generated by A and B inside SL2 (order 8 for the default matrices)."""
    return closure([a, b], bound=bound)


def binary_octahedral_group(tau: ExactMatrix = TAU_MAT, sigma: ExactMatrix = SIGMA_MAT, bound: int = 256) -> FiniteMatrixGroup:
    return closure([tau, sigma], bound=bound)


def hesse_group(generators: Sequence[ExactMatrix] = HESSE_GENERATORS, bound: int = 200) -> FiniteMatrixGroup:
    """Projective closure of the Hesse generators (deduplicated modulo scalars)."""
    return closure(list(generators), bound=bound, key=projective_key)


def stabilizer_group_H(htilde: FiniteMatrixGroup | None = None) -> FiniteMatrixGroup:
    """Finite part of the generic stabilizer: all triples ``(h, +-h, h)``."""
    htilde = htilde if htilde is not None else heisenberg_group()
    elements = []
    for h in htilde.elements:
        for s in (1, -1):
            elements.append(TripleElement(h, h.scale(s), h))
    gens = [TripleElement.diagonal(g) for g in htilde.generators] + [TripleElement(ID2, -ID2, ID2)]
    return FiniteMatrixGroup(elements, gens)


def normalizer_finite_part(
    s4: FiniteMatrixGroup | None = None, htilde: FiniteMatrixGroup | None = None, bound: int = 2000
) -> FiniteMatrixGroup:
    """Closure of the diagonal binary octahedral group and H~ in the middle slot."""
    s4 = s4 if s4 is not None else binary_octahedral_group()
    htilde = htilde if htilde is not None else heisenberg_group()
    gens = [TripleElement.diagonal(g) for g in s4.generators]
    gens += [TripleElement(ID2, y, ID2) for y in htilde.generators]
    return closure(gens, bound=bound)


def _scalar_of(m: ExactMatrix) -> CycNum | None:
    return m[0, 0] if m.is_scalar() and not m[0, 0].is_zero() else None


def torus_equivalent(x: TripleElement, y: TripleElement) -> bool:
    """True iff ``x y^-1`` is central of the shape ``(lam, +-mu, mu^-1)``."""
    z = x * y.inverse()
    s1, s2, s3 = (_scalar_of(m) for m in z.blocks())
    if s1 is None or s2 is None or s3 is None:
        return False
    prod = s2 * s3
    return prod == ONE or prod == -ONE


def center_class_key(x: TripleElement) -> str:
    """Canonical key of the coset of x modulo the center of the reductive group."""
    k1 = projective_key(x.a1)
    lead3 = next(e for e in x.a3.entries if not e.is_zero())
    a3n = x.a3.scale(lead3.inverse())
    a2n = x.a2.scale(lead3)
    k2 = min(a2n.key(), (-a2n).key())
    return k1 + "|" + k2 + "|" + a3n.key()


def dedup_mod_center(elements: Iterable[TripleElement]) -> list[TripleElement]:
    """One representative per coset of the center, in first-seen order."""
    seen: dict[str, TripleElement] = {}
    for x in elements:
        seen.setdefault(center_class_key(x), x)
    return list(seen.values())


def ineffectivity_generator() -> TripleElement:
    return TripleElement.scalars(I, I, I)


# -- the symmetric group quotient -----------------------------------------

Permutation = tuple  # tuple[int, ...], image of 0..3

CLASS_NAMES = ("1", "(ab)", "(ab)(cd)", "(abc)", "(abcd)")
CLASS_SIZES = (1, 6, 3, 8, 6)
_CYCLE_TYPES = {(1, 1, 1, 1): 0, (2, 1, 1): 1, (2, 2): 2, (3, 1): 3, (4,): 4}


def cycle_type(p: Permutation) -> tuple[int, ...]:
    seen, lengths = set(), []
    for start in range(len(p)):
        if start in seen:
            continue
        n, j = 0, start
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def class_index(p: Permutation) -> int:
    return _CYCLE_TYPES[cycle_type(p)]


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p after q``."""
    return tuple(p[q[i]] for i in range(len(q)))


class S4Quotient:
    """The 2-to-1 map from the binary octahedral group onto S4.

    S4 acts faithfully by conjugation on its four Sylow 3-subgroups; these lift
    to the four subgroups of order 3 upstairs, and conjugation on them gives
    the permutation image with kernel {+-I}.
    """

    def __init__(self, group: FiniteMatrixGroup):
        self.group = group
        ident = ExactMatrix.identity(2)
        subgroups = []
        for x in group.elements:
            if not x.is_identity() and (x @ x @ x).is_identity():
                sub = frozenset((ident.key(), x.key(), (x @ x).key()))
                if sub not in subgroups:
                    subgroups.append(sub)
        if len(subgroups) != 4:
            raise ValueError(f"expected 4 subgroups of order 3, found {len(subgroups)}")
        self.subgroups = sorted(subgroups, key=lambda s: sorted(s))
        self._lookup = {s: i for i, s in enumerate(self.subgroups)}
        self._cache: dict[str, Permutation] = {}

    def __call__(self, x: ExactMatrix) -> Permutation:
        k = x.key()
        if k in self._cache:
            return self._cache[k]
        if x not in self.group:
            raise NotAMemberError("element is not in the binary octahedral group")
        xinv = inverse(x)
        perm = []
        for sub in self.subgroups:
            conj = frozenset((x @ self._element(s) @ xinv).key() for s in sub)
            perm.append(self._lookup[conj])
        p = tuple(perm)
        self._cache[k] = p
        return p

    def _element(self, key: str) -> ExactMatrix:
        return self.group.elements[self.group._index[key]]

    def class_representatives(self) -> list[ExactMatrix]:
        """One lift per conjugacy class of S4, in character-table order."""
        reps: list[ExactMatrix | None] = [None] * 5
        for x in self.group.elements:
            c = class_index(self(x))
            if reps[c] is None:
                reps[c] = x
        assert all(r is not None for r in reps)
        return reps  # type: ignore[return-value]

    def image_group_order(self, generators: Sequence[ExactMatrix]) -> int:
        perms = [self(g) for g in generators]
        ident = (0, 1, 2, 3)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for q in perms:
                    r = compose(p, q)
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        return len(seen)


def quotient_to_S4(x: ExactMatrix, quotient: S4Quotient | None = None) -> Permutation:
    quotient = quotient if quotient is not None else default_s4_quotient()
    return quotient(x)


_S4_CACHE: dict[str, S4Quotient] = {}


def default_s4_quotient() -> S4Quotient:
    if "default" not in _S4_CACHE:
        _S4_CACHE["default"] = S4Quotient(binary_octahedral_group())
    return _S4_CACHE["default"]
