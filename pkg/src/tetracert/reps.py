"""Representations of the reductive group and of the full group on cubic forms.

Binary forms of degree k carry the substitution action
``x -> a x + c y, y -> b x + d y`` of ``[[a, b], [c, d]]``; on the basis
``x^k, x^(k-1) y, ..., y^k`` this gives ``Sym^k``.  Tensor products take one
2x2 block of a triple per factor and multiply out with :func:`kron`, the last
factor varying fastest.

The 32-dimensional representation ``R`` is ``C^2`` tensor the cubic forms in
``x0..x3`` that vanish on the line ``x0 = x1 = 0``.  Its grading by degree in
``x0, x1`` has pieces of dimension 12, 12, 8 for degrees 1, 2, 3; the
unipotent part raises the degree, so degree 3 is the bottom of the filtration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from .field import ONE, ZERO, CycNum, Scalar, cyc
from .groups import (
    CLASS_SIZES,
    ID2,
    ZERO2,
    GElement,
    TripleElement,
    mat2,
)
from .linalg import ExactMatrix, Subspace, block_diag, inverse, kron, stacked_kernel


class NotACharacterError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


# -- Lie algebra elements ---------------------------------------------------


@dataclass(frozen=True)
class LieElement:
    """Element of Lie(G): reductive blocks ``(x1, x2, x3)`` plus a unipotent block."""

    x1: ExactMatrix = ZERO2
    x2: ExactMatrix = ZERO2
    x3: ExactMatrix = ZERO2
    u: ExactMatrix = ZERO2
    label: str = field(default="", compare=False)

    def form_matrix(self) -> ExactMatrix:
        rows = [
            [self.x3[0, 0], self.x3[0, 1], self.u[0, 0], self.u[0, 1]],
            [self.x3[1, 0], self.x3[1, 1], self.u[1, 0], self.u[1, 1]],
            [ZERO, ZERO, self.x2[0, 0], self.x2[0, 1]],
            [ZERO, ZERO, self.x2[1, 0], self.x2[1, 1]],
        ]
        return ExactMatrix.from_rows(rows)

    @classmethod
    def from_matrices(cls, x1: ExactMatrix, w: ExactMatrix, label: str = "") -> "LieElement":
        x3 = mat2(w[0, 0], w[0, 1], w[1, 0], w[1, 1])
        x2 = mat2(w[2, 2], w[2, 3], w[3, 2], w[3, 3])
        u = mat2(w[0, 2], w[0, 3], w[1, 2], w[1, 3])
        return cls(x1, x2, x3, u, label)

    def bracket(self, other: "LieElement") -> "LieElement":
        x1 = self.x1 @ other.x1 - other.x1 @ self.x1
        w, v = self.form_matrix(), other.form_matrix()
        return LieElement.from_matrices(x1, w @ v - v @ w)

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3, self.u + other.u)

    def scale(self, s: Scalar) -> "LieElement":
        return LieElement(self.x1.scale(s), self.x2.scale(s), self.x3.scale(s), self.u.scale(s))

    def is_reductive(self) -> bool:
        return self.u.is_zero()


def _e(i: int, j: int) -> ExactMatrix:
    return mat2(*[(1 if (r, c) == (i, j) else 0) for r in range(2) for c in range(2)])


_H = mat2(1, 0, 0, -1)
_SL2_BASIS = (("e", _e(0, 1)), ("f", _e(1, 0)), ("h", _H))


def lie_gr_basis() -> list[LieElement]:
    """Basis of Lie(G_R): gl2 + sl2 + sl2 + the torus (I, -I); dimension 11."""
    basis = [LieElement(x1=_e(i, j), label=f"gl2[{i}{j}]") for i in range(2) for j in range(2)]
    basis += [LieElement(x2=m, label=f"sl2_2.{n}") for n, m in _SL2_BASIS]
    basis += [LieElement(x3=m, label=f"sl2_3.{n}") for n, m in _SL2_BASIS]
    basis.append(LieElement(x2=ID2, x3=-ID2, label="torus"))
    return basis


def lie_u_basis() -> list[LieElement]:
    return [LieElement(u=_e(i, j), label=f"u[{i}{j}]") for i in range(2) for j in range(2)]


def lie_g_basis() -> list[LieElement]:
    """Basis of Lie(G) = Lie(G_R) + u; dimension 15."""
    return lie_gr_basis() + lie_u_basis()


def center_lie_basis() -> list[LieElement]:
    """Lie algebra of the center ``(lam, mu, mu^-1)``: dimension 2."""
    return [LieElement(x1=ID2, label="center.lam"), LieElement(x2=ID2, x3=-ID2, label="center.mu")]


def torus_direction() -> LieElement:
    """Tangent to ``t -> (t I, t^-1 I, t I)``; fixes every point of Q3."""
    return LieElement(x1=ID2, x2=-ID2, x3=ID2, label="stabilizer-torus")


# -- polynomial substitution -------------------------------------------------


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree, lexicographically descending."""
    out = [a for a in itertools.product(range(degree, -1, -1), repeat=nvars) if sum(a) == degree]
    return out


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            k = tuple(i + j for i, j in zip(a, b))
            out[k] = out.get(k, ZERO) + x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _linear_image(m: ExactMatrix, j: int) -> dict:
    n = m.rows
    out = {}
    for i in range(n):
        x = m[i, j]
        if not x.is_zero():
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = x
    return out


def substitution_matrix(m: ExactMatrix, basis: Sequence[tuple[int, ...]]) -> ExactMatrix:
    """Matrix of ``x_j -> sum_i m[i, j] x_i`` on the span of ``basis`` monomials."""
    index = {a: k for k, a in enumerate(basis)}
    nvars = m.rows
    images = [_linear_image(m, j) for j in range(nvars)]
    cols = []
    for a in basis:
        poly = {tuple([0] * nvars): ONE}
        for j, e in enumerate(a):
            for _ in range(e):
                poly = _poly_mul(poly, images[j])
        col = [ZERO] * len(basis)
        for mono, c in poly.items():
            if mono not in index:
                raise ValueError(f"monomial {mono} leaves the invariant span")
            col[index[mono]] = c
        cols.append(col)
    return ExactMatrix.from_columns(cols)


def derivation_matrix(x: ExactMatrix, basis: Sequence[tuple[int, ...]]) -> ExactMatrix:
    """Infinitesimal version of :func:`substitution_matrix`."""
    index = {a: k for k, a in enumerate(basis)}
    nvars = x.rows
    cols = []
    for a in basis:
        col = [ZERO] * len(basis)
        for j, e in enumerate(a):
            if not e:
                continue
            for i in range(nvars):
                c = x[i, j]
                if c.is_zero():
                    continue
                b = list(a)
                b[j] -= 1
                b[i] += 1
                k = index.get(tuple(b))
                if k is None:
                    raise ValueError("derivation leaves the invariant span")
                col[k] = col[k] + c * e
        cols.append(col)
    return ExactMatrix.from_columns(cols)


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def monomial_label(a: tuple[int, ...], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, a):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(name + str(e).translate(_SUPERSCRIPT))
    return "".join(parts) or "1"


# -- representations ----------------------------------------------------------


class Rep:
    """Finite-dimensional representation given by action callbacks.

    ``act`` maps group elements to matrices and is memoized per element key;
    ``inf_act`` maps Lie algebra elements to matrices.
    """

    def __init__(
        self,
        dim: int,
        basis_labels: Sequence[str],
        act: Callable[[object], ExactMatrix],
        inf_act: Callable[[object], ExactMatrix] | None = None,
        name: str = "",
    ):
        if len(basis_labels) != dim:
            raise ValueError("one label per basis vector")
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self._act = act
        self._inf = inf_act
        self.name = name
        self._cache: dict[Hashable, ExactMatrix] = {}

    def act(self, g) -> ExactMatrix:
        k = g.key() if hasattr(g, "key") else g
        m = self._cache.get(k)
        if m is None:
            m = self._act(g)
            self._cache[k] = m
        return m

    def inf_act(self, x) -> ExactMatrix:
        if self._inf is None:
            raise NotImplementedError(f"{self.name or 'rep'} has no infinitesimal action")
        return self._inf(x)

    def __repr__(self) -> str:
        return f"Rep({self.name!r}, dim={self.dim})"


def sym_rep(k: int) -> Rep:
    """``Sym^k C^2`` as a representation of GL2 (acts on 2x2 matrices)."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    basis = monomials(2, k)
    labels = [monomial_label(a, ("x", "y")) for a in basis]
    if k == 0:
        return Rep(1, labels, lambda m: ExactMatrix.identity(1), lambda x: ExactMatrix.zeros(1, 1), name="Sym0")
    return Rep(
        k + 1,
        labels,
        lambda m: substitution_matrix(m, basis),
        lambda x: derivation_matrix(x, basis),
        name=f"Sym{k}",
    )


@dataclass(frozen=True)
class Slot:
    """One tensor factor: a GL2 representation fed by block ``slot`` (0, 1, 2).

    With ``dual=True`` the block acts through its inverse transpose, which
    turns ``M -> A M B^-1`` on 2x2 matrices into a tensor product.
    """

    rep: Rep
    slot: int
    dual: bool = False


def tensor_rep(factors: Sequence[Slot], name: str = "") -> Rep:
    """Tensor product of GL2 representations, each fed by one block of a triple."""
    factors = list(factors)
    dim = 1
    for f in factors:
        dim *= f.rep.dim
    labels = ["⊗".join(p) for p in itertools.product(*(f.rep.basis_labels for f in factors))] if factors else ["1"]

    def block(g: TripleElement, f: Slot) -> ExactMatrix:
        m = g.blocks()[f.slot]
        return inverse(m).T if f.dual else m

    def act(g: TripleElement) -> ExactMatrix:
        return kron(*(f.rep.act(block(g, f)) for f in factors))

    def inf_act(x: LieElement) -> ExactMatrix:
        blocks = (x.x1, x.x2, x.x3)
        total = ExactMatrix.zeros(dim, dim)
        for k, f in enumerate(factors):
            xb = blocks[f.slot]
            if f.dual:
                xb = -xb.T
            if xb.is_zero():
                continue
            mats = [ExactMatrix.identity(g.rep.dim) for g in factors]
            mats[k] = f.rep.inf_act(xb)
            total = total + kron(*mats)
        return total

    return Rep(dim, labels, act, inf_act, name=name)


C2 = sym_rep(1)
SYM2 = sym_rep(2)
SYM3 = sym_rep(3)


def q1_rep() -> Rep:
    """``C^2 (A1) x Sym^3 C^2 (A3)``: the bottom graded piece of R."""
    return tensor_rep([Slot(C2, 0), Slot(SYM3, 2)], name="Q1")


def q2_rep() -> Rep:
    """``C^2 (A1) x C^2 (A2) x Sym^2 C^2 (A3)``."""
    return tensor_rep([Slot(C2, 0), Slot(C2, 1), Slot(SYM2, 2)], name="Q2")


def q3_rep() -> Rep:
    """``C^2 (A1) x Sym^2 C^2 (A2) x C^2 (A3)``."""
    return tensor_rep([Slot(C2, 0), Slot(SYM2, 1), Slot(C2, 2)], name="Q3")


def restrict_rep(rep: Rep, sub: Subspace, name: str = "") -> Rep:
    """Sub-representation on an invariant subspace, in its echelon basis."""
    labels = [f"{rep.name or 'v'}[{i}]" for i in range(sub.dim)]

    def inf(x):
        return sub.restrict(rep.inf_act(x))

    return Rep(sub.dim, labels, lambda g: sub.restrict(rep.act(g)), inf, name=name or f"{rep.name}|sub")


def direct_sum(reps: Sequence[Rep], name: str = "") -> Rep:
    labels = [f"{r.name}:{l}" for r in reps for l in r.basis_labels]
    return Rep(
        sum(r.dim for r in reps),
        labels,
        lambda g: block_diag(*(r.act(g) for r in reps)),
        lambda x: block_diag(*(r.inf_act(x) for r in reps)),
        name=name,
    )


def invariant_subspace(rep: Rep, elements: Sequence) -> Subspace:
    """Common fixed space: kernel of the stacked ``act(g) - I``."""
    ident = ExactMatrix.identity(rep.dim)
    if not elements:
        return Subspace.full(rep.dim)
    return stacked_kernel([rep.act(g) - ident for g in elements])


# -- the 32-dimensional representation R --------------------------------------

FORM_NAMES = ("x0", "x1", "x2", "x3")


class RepR(Rep):
    """``C^2`` tensor the cubic forms vanishing on the line ``x0 = x1 = 0``.

    Basis vectors ``e_a (x) m`` are ordered with ``a`` slowest; ``grading[k]`` is
    the degree of the k-th basis monomial in ``x0, x1``.
    """

    def __init__(self):
        self.monomials = [a for a in monomials(4, 3) if a[0] + a[1] >= 1]
        labels = [f"e{a + 1}⊗{monomial_label(m, FORM_NAMES)}" for a in range(2) for m in self.monomials]
        self.grading = [m[0] + m[1] for _ in range(2) for m in self.monomials]
        super().__init__(len(labels), labels, self._act_g, self._inf_g, name="R")

    def _act_g(self, g) -> ExactMatrix:
        if isinstance(g, TripleElement):
            g = GElement.from_reductive(g)
        return kron(g.reductive.a1, substitution_matrix(g.form_matrix(), self.monomials))

    def _inf_g(self, x: LieElement) -> ExactMatrix:
        d = derivation_matrix(x.form_matrix(), self.monomials)
        return kron(x.x1, ExactMatrix.identity(len(self.monomials))) + kron(ExactMatrix.identity(2), d)

    def indices(self, degree: int) -> list[int]:
        return [k for k, d in enumerate(self.grading) if d == degree]

    def q3_ordered_indices(self) -> list[int]:
        """Degree-1 indices reordered to match the tensor basis of :func:`q3_rep`."""
        quad = [(2, 0), (1, 1), (0, 2)]
        n = len(self.monomials)

        def key(k):
            m = self.monomials[k % n]
            return (k // n, quad.index((m[2], m[3])), 0 if m[0] else 1)

        return sorted(self.indices(1), key=key)

    def graded_dims(self) -> dict[int, int]:
        return {d: len(self.indices(d)) for d in (1, 2, 3)}

    def graded_piece(self, degree: int) -> Rep:
        """The G_R-representation on one graded piece (block of the action)."""
        idx = self.indices(degree)

        def act(g):
            return submatrix(self.act(g), idx, idx)

        def inf(x):
            return submatrix(self.inf_act(x), idx, idx)

        return Rep(len(idx), [self.basis_labels[k] for k in idx], act, inf, name=f"R[d={degree}]")


def build_rep_R() -> RepR:
    return RepR()


def submatrix(m: ExactMatrix, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
    return ExactMatrix(len(rows), len(cols), (m[i, j] for i in rows for j in cols))


def sample_characters_match(a: Rep, b: Rep, samples: Sequence[TripleElement]) -> bool:
    """Equal traces on every sample element (a class-function comparison)."""
    return a.dim == b.dim and all(a.act(g).trace() == b.act(g).trace() for g in samples)


def character_samples() -> list[TripleElement]:
    """Deterministic elements separating the candidate graded pieces.

    Diagonal blocks with independent entries make traces polynomials whose
    monomials identify which block carries which symmetric power.
    """
    out = []
    for p, q, r in ((2, 3, 5), (7, 11, 13), (3, 2, 7)):
        a1 = mat2(p, 1, 0, q)
        a2 = mat2(r, 0, 1, Fraction(1, 1))
        a3 = mat2(Fraction(1, r), 0, 2, 1)
        out.append(TripleElement(a1, a2, a3))
        out.append(TripleElement(mat2(1, 2, 3, 7), mat2(2, 1, 1, 1), mat2(3, 1, 2, 1)))
    return out


def match_graded_pieces(r: RepR | None = None) -> dict[int, str]:
    """Identify each graded piece of R with one of the candidate tensor products.

    Returns ``{degree: name}``; candidates whose characters disagree on the
    sample elements are ruled out.
    """
    r = r or build_rep_R()
    candidates = {
        "Q1 = C2(A1)⊗Sym3(A3)": q1_rep(),
        "C2(A1)⊗Sym3(A2)": tensor_rep([Slot(C2, 0), Slot(SYM3, 1)], name="alt"),
        "Q2 = C2(A1)⊗C2(A2)⊗Sym2(A3)": q2_rep(),
        "Q3 = C2(A1)⊗Sym2(A2)⊗C2(A3)": q3_rep(),
    }
    samples = character_samples()
    out = {}
    for d in (1, 2, 3):
        piece = r.graded_piece(d)
        hits = [n for n, c in candidates.items() if sample_characters_match(piece, c, samples)]
        out[d] = hits[0] if len(hits) == 1 else "ambiguous:" + ",".join(hits)
    return out


# -- S4 character theory -----------------------------------------------------


@dataclass(frozen=True)
class S4CharacterTable:
    class_names: tuple[str, ...] = ("1", "(ab)", "(ab)(cd)", "(abc)", "(abcd)")
    class_sizes: tuple[int, ...] = CLASS_SIZES
    irrep_names: tuple[str, ...] = ("chi0", "eps", "theta", "psi", "epspsi")
    values: tuple[tuple[int, ...], ...] = (
        (1, 1, 1, 1, 1),
        (1, -1, 1, 1, -1),
        (2, 0, 2, -1, 0),
        (3, 1, -1, 0, -1),
        (3, -1, -1, 0, 1),
    )

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def inner(self, a: Sequence[Scalar], b: Sequence[Scalar]) -> CycNum:
        total = ZERO
        for size, x, y in zip(self.class_sizes, a, b):
            total = total + cyc(size) * cyc(x) * cyc(y).conjugate()
        return total * cyc(Fraction(1, self.group_order))

    def is_orthonormal(self) -> bool:
        return all(
            self.inner(r, s) == (ONE if i == j else ZERO)
            for i, r in enumerate(self.values)
            for j, s in enumerate(self.values)
        )

    def dims(self) -> tuple[int, ...]:
        return tuple(row[0] for row in self.values)

    def row(self, name: str) -> tuple[int, ...]:
        return self.values[self.irrep_names.index(name)]


CHARACTER_TABLE = S4CharacterTable()


def character(rep: Rep, lifted_class_reps: Sequence[TripleElement]) -> tuple[CycNum, ...]:
    """Traces at one lift per S4 class; requires -1 to act trivially."""
    minus = TripleElement.scalars(-1, -1, -1)
    if not rep.act(minus).is_identity():
        raise PreconditionError("(-I, -I, -I) acts nontrivially; the trace is not a class function of S4")
    return tuple(rep.act(g).trace() for g in lifted_class_reps)


def decompose_S4(char: Sequence[Scalar], table: S4CharacterTable = CHARACTER_TABLE) -> tuple[int, ...]:
    """Multiplicities of each irreducible, in table order."""
    out = []
    for row in table.values:
        m = table.inner(char, row)
        if not m.is_rational() or m.to_fraction().denominator != 1 or m.to_fraction() < 0:
            raise NotACharacterError(f"multiplicity {m} is not a non-negative integer")
        out.append(int(m.to_fraction()))
    return tuple(out)


def lifted_class_representatives(quotient=None) -> list[TripleElement]:
    from .groups import default_s4_quotient

    quotient = quotient if quotient is not None else default_s4_quotient()
    return [TripleElement.diagonal(x) for x in quotient.class_representatives()]


# -- the splitting of Q2 ------------------------------------------------------


def multiplication_map() -> ExactMatrix:
    """``C^2 (x) Sym^2 -> Sym^3``, ``e_a (x) f -> l_a f`` with ``l_0 = x, l_1 = y``."""
    rows = [[ZERO] * 6 for _ in range(4)]
    for a in range(2):
        for j in range(3):
            rows[j + a][a * 3 + j] = ONE
    return ExactMatrix.from_rows(rows)


def contraction_map() -> ExactMatrix:
    """``C^2 (x) Sym^2 -> C^2``, ``e_a (x) f -> D_a f`` with ``D_0 = d/dy, D_1 = -d/dx``.

    ``v -> v0 d/dy - v1 d/dx`` is the derivation dual to v under the
    SL2-invariant pairing, so the map is SL2-equivariant.
    """
    # Sym^2 basis x^2, xy, y^2 ; output basis x, y
    d_dx = [[2, 0, 0], [0, 1, 0]]  # x^2 -> 2x, xy -> y
    d_dy = [[0, 1, 0], [0, 0, 2]]  # xy -> x, y^2 -> 2y
    rows = [[ZERO] * 6 for _ in range(2)]
    for i in range(2):
        for j in range(3):
            rows[i][0 * 3 + j] = cyc(d_dy[i][j])
            rows[i][1 * 3 + j] = cyc(-d_dx[i][j])
    return ExactMatrix.from_rows(rows)


def _lift_to_q2(m: ExactMatrix) -> ExactMatrix:
    """Extend a map on slots (1, 3) of Q2 by the identity on slot 2.

    Q2 is indexed ``(a, b, s)`` with a in slot 1, b in slot 2, s in Sym^2; the
    output is indexed ``(b, t)`` with t in the target of ``m``.
    """
    out_dim = m.rows
    rows = [[ZERO] * 12 for _ in range(2 * out_dim)]
    for b in range(2):
        for t in range(out_dim):
            for a in range(2):
                for s in range(3):
                    rows[b * out_dim + t][a * 6 + b * 3 + s] = m[t, a * 3 + s]
    return ExactMatrix.from_rows(rows)


def splitting_subspaces() -> tuple[Subspace, Subspace]:
    """(C^2 (x) C^2 part, C^2 (x) Sym^3 part) of Q2, as kernels of the two maps."""
    from .linalg import kernel

    return kernel(_lift_to_q2(multiplication_map())), kernel(_lift_to_q2(contraction_map()))
