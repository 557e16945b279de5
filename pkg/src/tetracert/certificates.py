"""Named verification procedures, each producing a :class:`Certificate`.

A certificate records every sub-assertion it makes, the exact witness data
behind it, and passes only if all of them hold.  Point-dependent assertions
are flagged ``generic``; when one of those fails the runner retries once with
the alternate seed before reporting failure.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Callable, Sequence

from .field import ONE, ZERO, CycNum, I, cyc
from .groups import (
    A_MAT,
    B_MAT,
    HESSE_GENERATORS,
    ID2,
    SIGMA_MAT,
    TAU_MAT,
    BoundExceededError,
    FiniteMatrixGroup,
    GElement,
    S4Quotient,
    TripleElement,
    closure,
    dedup_mod_center,
    ineffectivity_generator,
    mat2,
    normalizer_finite_part,
    projective_key,
    stabilizer_group_H,
    torus_equivalent,
)
from .linalg import ExactMatrix, Subspace, det, eigenspace, kernel, rank, solve
from .reps import (
    C2,
    CHARACTER_TABLE,
    SYM2,
    NotACharacterError,
    PreconditionError,
    Rep,
    RepR,
    S4CharacterTable,
    Slot,
    build_rep_R,
    center_lie_basis,
    character,
    decompose_S4,
    invariant_subspace,
    lie_gr_basis,
    lie_u_basis,
    match_graded_pieces,
    monomials,
    q1_rep,
    q2_rep,
    q3_rep,
    restrict_rep,
    splitting_subspaces,
    submatrix,
    substitution_matrix,
    tensor_rep,
    torus_direction,
)

REPORT_VERSION = "1"
DEFAULT_SEED = "primes-v1"
SEEDS = {"primes-v1": 0, "primes-v2": 1}
ALTERNATE_SEED = {"primes-v1": "primes-v2", "primes-v2": "primes-v1"}


class InvalidMultiplicityError(ValueError):
    pass


class UnknownSeedError(ValueError):
    pass


# -- certificate records ---------------------------------------------------


@dataclass
class Certificate:
    id: str
    paper_anchor: str
    status: str
    witnesses: dict
    elapsed_ms: int = 0
    assertions: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def first_failure(self) -> dict | None:
        return next((a for a in self.assertions if not a["ok"]), None)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "id": self.id,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "witnesses": {**self.witnesses, "assertions": self.assertions},
            "elapsed_ms": self.elapsed_ms if timings else 0,
        }


class Checker:
    """Collects named assertions and witnesses for one certificate."""

    def __init__(self, cert_id: str, anchor: str):
        self.cert_id = cert_id
        self.anchor = anchor
        self.assertions: list[dict] = []
        self.witnesses: dict = {}

    def check(self, name: str, ok: bool, generic: bool = False, **detail) -> bool:
        entry = {"name": name, "ok": bool(ok)}
        if generic:
            entry["generic"] = True
        entry.update(detail)
        self.assertions.append(entry)
        return bool(ok)

    def witness(self, **kw) -> None:
        self.witnesses.update(kw)

    def genericity_failure(self) -> bool:
        return any(not a["ok"] and a.get("generic") for a in self.assertions)

    def certificate(self) -> Certificate:
        ok = bool(self.assertions) and all(a["ok"] for a in self.assertions)
        return Certificate(self.cert_id, self.anchor, "pass" if ok else "fail", self.witnesses, 0, self.assertions)


# -- constants and generic points --------------------------------------------


@dataclass(frozen=True)
class Constants:
    """Every hard-coded input; negative controls perturb one field at a time.

    ``lambdas=None`` means the stabilizer point is taken from the seed; an
    explicit value is used as given and never retried.
    """

    a: ExactMatrix = A_MAT
    b: ExactMatrix = B_MAT
    tau: ExactMatrix = TAU_MAT
    sigma: ExactMatrix = SIGMA_MAT
    lambdas: tuple | None = None
    table: S4CharacterTable = CHARACTER_TABLE
    hesse_generators: tuple = HESSE_GENERATORS


DEFAULT_CONSTANTS = Constants()


def primes(count: int, offset: int = 0) -> list[int]:
    out, n = [], 2
    while len(out) < count + offset:
        if all(n % p for p in out if p * p <= n):
            out.append(n)
        n += 1
    return out[offset:]


@dataclass(frozen=True)
class GenericPoint:
    rep_name: str
    coords: tuple
    seed: str

    @classmethod
    def for_rep(cls, rep_name: str, dim: int, seed: str) -> "GenericPoint":
        if seed not in SEEDS:
            raise UnknownSeedError(seed)
        return cls(rep_name, tuple(primes(dim, SEEDS[seed])), seed)

    def vector(self) -> tuple[CycNum, ...]:
        return tuple(cyc(c) for c in self.coords)

    def to_json(self) -> dict:
        return {"rep": self.rep_name, "seed": self.seed, "coords": [str(c) for c in self.coords]}


# -- shared context --------------------------------------------------------


class Context:
    """Groups and representations shared between certificates (built lazily)."""

    def __init__(self, constants: Constants = DEFAULT_CONSTANTS):
        self.constants = constants

    @cached_property
    def htilde(self) -> FiniteMatrixGroup:
        return closure([self.constants.a, self.constants.b], bound=64)

    @cached_property
    def s4(self) -> FiniteMatrixGroup:
        return closure([self.constants.tau, self.constants.sigma], bound=256)

    @cached_property
    def quotient(self) -> S4Quotient:
        return S4Quotient(self.s4)

    @cached_property
    def H(self) -> FiniteMatrixGroup:
        return stabilizer_group_H(self.htilde)

    @cached_property
    def class_reps(self) -> list[TripleElement]:
        return [TripleElement.diagonal(x) for x in self.quotient.class_representatives()]

    @cached_property
    def normalizer(self) -> FiniteMatrixGroup:
        return normalizer_finite_part(self.s4, self.htilde)

    @cached_property
    def components(self) -> list[TripleElement]:
        return dedup_mod_center(self.normalizer.elements)

    @cached_property
    def rep_R(self) -> RepR:
        return build_rep_R()

    @cached_property
    def q3(self) -> Rep:
        return q3_rep()

    @cached_property
    def q3_invariants(self) -> Subspace:
        return invariant_subspace(self.q3, self.H.elements)

    @cached_property
    def q3h(self) -> Rep:
        return restrict_rep(self.q3, self.q3_invariants, name="Q3^H")


# -- helpers -----------------------------------------------------------------


def _mat_json(m: ExactMatrix) -> list:
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _vec_str(v) -> list[str]:
    return [str(x) for x in v]


def proportionality(v: Sequence[CycNum], w: Sequence[CycNum]) -> CycNum | None:
    """The scalar c with ``v == c w``, or None (w must be nonzero)."""
    k = next(i for i, x in enumerate(w) if not x.is_zero())
    c = v[k] / w[k]
    return c if all(a == c * b for a, b in zip(v, w)) else None


def roots_of_unity() -> list[CycNum]:
    return [CycNum.zeta(k) for k in range(24)]


def square_roots(x: CycNum) -> list[CycNum]:
    """Square roots of x among the 24th roots of unity (empty if none)."""
    return [r for r in roots_of_unity() if r * r == x]


def q3_point(lambdas: Sequence) -> tuple[CycNum, ...]:
    """``sum l_i m_i (x) q_i`` in the tensor basis of Q3.

    m_i live in slots 1 and 3 (a 2x2 matrix, acted on by ``A1 M A3^T``) and
    q_i in Sym^2 of slot 2.
    """
    ms = [((1, 0), (0, 1)), ((1, 0), (0, -1)), ((0, 1), (1, 0))]
    qs = [(1, 0, 1), (1, 0, -1), (0, 1, 0)]
    v = [ZERO] * 12
    for lam, m, q in zip(lambdas, ms, qs):
        for a in range(2):
            for s in range(3):
                for c in range(2):
                    x = m[a][c] * q[s]
                    if x:
                        v[a * 6 + s * 2 + c] = v[a * 6 + s * 2 + c] + cyc(lam) * x
    return tuple(v)


def det_form(m: ExactMatrix, n: ExactMatrix) -> CycNum:
    """Polarization of the determinant on 2x2 matrices."""
    return (det(m + n) - det(m) - det(n)) * cyc(Fraction(1, 2))


def conic_form(p: Sequence, q: Sequence) -> CycNum:
    """Invariant pairing on binary quadrics ``a x^2 + b xy + c y^2``."""
    p, q = [cyc(x) for x in p], [cyc(x) for x in q]
    return p[0] * q[2] + p[2] * q[0] - p[1] * q[1] * cyc(Fraction(1, 2))


def center_elements(alpha: CycNum, beta: CycNum) -> list[TripleElement] | None:
    """All ``(lam, s mu, mu^-1)`` with ``lam mu = alpha`` and ``s lam / mu = beta``.

    ``lam^2 = s alpha beta``; returns None when a square root is not a root of
    unity (never the case for the finite components used here).
    """
    out = []
    for s in (1, -1):
        roots = square_roots(alpha * beta * s)
        if not roots:
            return None
        for lam in roots:
            out.append(TripleElement.center(lam, alpha / lam, s))
    return out


def ineffectivity_elements() -> list[TripleElement]:
    return [TripleElement.scalars(c, c, c) for c in (ONE, I, -ONE, -I)]


# -- layered finite-stabilizer solve ---------------------------------------


@dataclass
class Piece:
    """One layer of a representation for the layered solve.

    ``weight`` names the central character on the layer: ``alpha = lam mu`` or
    ``beta = s lam / mu`` for the center element ``(lam, s mu, mu^-1)``.
    ``coupling`` (optional) lists the columns ``phi(u_k) p_top`` added by the
    unipotent radical to this layer.
    """

    name: str
    weight: str
    act: Callable[[TripleElement], ExactMatrix]
    point: tuple
    coupling: list | None = None


@dataclass
class ComponentSolution:
    index: int
    alpha: CycNum
    beta: CycNum
    u: tuple = ()


def solve_component(index: int, g: TripleElement, pieces: Sequence[Piece]) -> ComponentSolution | None:
    """Find the center scalars (and u) with ``u t g`` fixing the point, if any."""
    required: dict[str, CycNum] = {}
    coupled = None
    for piece in pieces:
        if piece.coupling is not None:
            coupled = piece
            continue
        c = proportionality(piece.act(g).apply(piece.point), piece.point)
        if c is None:
            return None
        need = c.inverse()
        if piece.weight in required and required[piece.weight] != need:
            return None
        required[piece.weight] = need
    u: tuple = ()
    if coupled is not None:
        gp = coupled.act(g).apply(coupled.point)
        cols = [gp] + list(coupled.coupling)
        x, hom = solve(ExactMatrix.from_columns(cols), coupled.point)
        if x is None:
            return None
        if hom.dim:
            raise ArithmeticError("positive-dimensional solution family; the Lie stabilizer is not trivial")
        s = x[0]
        if s.is_zero():
            return None
        if coupled.weight in required and required[coupled.weight] != s:
            return None
        required[coupled.weight] = s
        u = tuple(x[1:])
    return ComponentSolution(index, required.get("alpha", ONE), required.get("beta", ONE), u)


def brute_force_top_layer(components: Sequence[TripleElement], piece: Piece) -> dict[int, CycNum]:
    """Oracle: for each component, the 24th root of unity c with ``g p = c p``."""
    out = {}
    for k, g in enumerate(components):
        v = piece.act(g).apply(piece.point)
        for c in roots_of_unity():
            if all(a == c * b for a, b in zip(v, piece.point)):
                out[k] = c
                break
    return out


# -- certificates -----------------------------------------------------------

ANCHORS = {
    "stabilizer": "generic-stabilizer/order-16",
    "normalizer": "normalizer/contains-binary-octahedral-x-heisenberg",
    "kernel": "ineffectivity-kernel/Z4",
    "decompositions": "S4-decompositions/graded-quotients",
    "freeness": "generic-freeness/two-step-quotient",
    "vprime": "generic-freeness/N(H)-mod-I",
    "hesse": "hesse-pencil/almost-free",
    "audit": "dimension-audit",
}

EXPECTED_DECOMPOSITIONS = {
    "C2⊗C2⊗Sym2": (1, 0, 1, 1, 2),
    "C2⊗Sym3": (0, 0, 1, 1, 1),
    "C2⊗C2": (1, 0, 0, 0, 1),
    "Sym2": (0, 0, 0, 0, 1),
    "Q3^H": (1, 0, 1, 0, 0),
    "epspsi⊗epspsi": (1, 0, 1, 1, 1),
}


def _lambdas(ctx: Context, seed: str) -> tuple:
    if ctx.constants.lambdas is not None:
        return tuple(ctx.constants.lambdas)
    return tuple(primes(3, SEEDS[seed]))


def verify_stabilizer_general_position(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("stabilizer", ANCHORS["stabilizer"])
    a, b = ctx.constants.a, ctx.constants.b
    lambdas = _lambdas(ctx, seed)
    ck.witness(lambdas=[str(x) for x in lambdas], seed=seed, explicit_point=ctx.constants.lambdas is not None)

    ck.check("heisenberg order 8", ctx.htilde.order == 8, order=ctx.htilde.order)
    H = ctx.H
    dedup = dedup_mod_center(H.elements)
    ck.check("H finite part has 16 elements", H.order == 16, raw=H.order, modulo_center=len(dedup))

    p = q3_point(lambdas)
    q3 = ctx.q3
    fixed = [q3.act(h).apply(p) == p for h in H.elements]
    ck.check("(A,A,A) fixes p", q3.act(TripleElement.diagonal(a)).apply(p) == p, generic=True)
    ck.check("(B,B,B) fixes p", q3.act(TripleElement.diagonal(b)).apply(p) == p, generic=True)
    ck.check("all of H fixes p", all(fixed), fixed=sum(fixed))

    # conjugation formulas on the four elementary matrices
    ok_a = ok_b = True
    for i in range(2):
        for j in range(2):
            e = [[0, 0], [0, 0]]
            e[i][j] = 1
            m = mat2(e[0][0], e[0][1], e[1][0], e[1][1])
            wa = mat2(-m[0, 0], m[0, 1], m[1, 0], -m[1, 1])
            wb = mat2(m[1, 1], -m[1, 0], -m[0, 1], m[0, 0])
            ok_a &= a @ m @ a.T == wa
            ok_b &= b @ m @ b.T == wb
    ck.check("A M A^t = (-a b; c -d)", ok_a)
    ck.check("B M B^t = (d -c; -b a)", ok_b)

    ms = [ID2, mat2(1, 0, 0, -1), mat2(0, 1, 1, 0)]
    qs = [(1, 0, 1), (1, 0, -1), (0, 1, 0)]
    ck.check(
        "m_i orthogonal for the determinant form",
        all(det_form(ms[i], ms[j]).is_zero() == (i != j) for i in range(3) for j in range(3)),
    )
    ck.check(
        "q_i orthogonal for the conic pairing",
        all(conic_form(qs[i], qs[j]).is_zero() == (i != j) for i in range(3) for j in range(3)),
    )
    sl2_samples = [a, b, ctx.constants.tau, ctx.constants.sigma, mat2(2, 3, 1, 2)]
    ck.check(
        "conic pairing is SL2-invariant",
        all(
            conic_form(SYM2.act(x).apply([cyc(c) for c in q]), SYM2.act(x).apply([cyc(c) for c in r])) == conic_form(q, r)
            for x in sl2_samples
            for q in qs
            for r in qs
        ),
    )

    basis = lie_gr_basis()
    evals = ExactMatrix.from_columns([q3.inf_act(x).apply(p) for x in basis])
    lie_stab = kernel(evals)
    torus = torus_direction()
    tvec = (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1)
    ck.check("torus direction kills p", q3.inf_act(torus).apply(p) == tuple([ZERO] * 12))
    ck.check("Lie stabilizer has dimension 1", lie_stab.dim == 1, generic=True, dim=lie_stab.dim)
    ck.check(
        "Lie stabilizer is the torus (I, -I, I)",
        lie_stab == Subspace(11, [tvec]),
        generic=True,
        basis=[_vec_str(v) for v in lie_stab.basis],
    )
    ck.check("lambdas pairwise distinct", len(set(map(Fraction, lambdas))) == 3, generic=True)
    ck.witness(
        lie_algebra_dim=len(basis),
        note="stabilizer certified at this point together with the Lie dimension count; "
        "conjugacy of stabilizers over a dense open set is not machine-checked",
    )
    return ck.certificate()


def verify_normalizer_containment(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("normalizer", ANCHORS["normalizer"])
    c = ctx.constants
    H = ctx.H
    s4 = ctx.s4

    def normalizes(g: TripleElement) -> bool:
        ginv = g.inverse()
        return all(any(torus_equivalent(g * h * ginv, k) for k in H.elements) for h in H.elements)

    gens = {
        "diag tau": TripleElement.diagonal(c.tau),
        "diag sigma": TripleElement.diagonal(c.sigma),
        "(I, A, I)": TripleElement(ID2, c.a, ID2),
        "(I, B, I)": TripleElement(ID2, c.b, ID2),
        "center (2, 3, 1/3)": TripleElement.scalars(2, 3, Fraction(1, 3)),
        "center (1/2, -5, 1/5)": TripleElement.center(Fraction(1, 2), 5, -1),
    }
    for name, g in gens.items():
        ck.check(f"{name} normalizes H", normalizes(g))

    tau_order = ctx.s4.element_order(c.tau)
    ck.check("tau has order 8", tau_order == 8, order=tau_order)
    s3 = c.sigma @ c.sigma @ c.sigma
    ck.check("sigma^3 = +-I", s3.is_identity() or (-s3).is_identity(), sigma_cubed=_mat_json(s3))
    ck.check("sigma order divides 6", (s3 @ s3).is_identity())
    ck.check("binary octahedral group has order 48", s4.order == 48, order=s4.order)
    q = ctx.quotient
    image = q.image_group_order([c.tau, c.sigma])
    ck.check("images of tau, sigma generate S4", image == 24, image_order=image)
    kern = [x for x in s4.elements if q(x) == (0, 1, 2, 3)]
    ck.check("quotient kernel is {+-I}", len(kern) == 2 and all(x.is_scalar() for x in kern))
    ck.check("tau maps to a 4-cycle", sorted(_cycle_lengths(q(c.tau))) == [4], perm=list(q(c.tau)))
    ck.check("sigma maps to a 3-cycle", sorted(_cycle_lengths(q(c.sigma))) == [1, 3], perm=list(q(c.sigma)))
    ck.check("heisenberg group inside binary octahedral", all(h in s4 for h in ctx.htilde.elements))

    ht = ctx.htilde
    commutators = {(x @ y @ x.inverse() @ y.inverse()).key() for x in ht.elements for y in ht.elements}
    ck.check("heisenberg commutator subgroup is {+-I}", commutators == {ID2.key(), (-ID2).key()})
    pimage = len({projective_key(x) for x in ht.elements})
    ck.check("heisenberg image in PSL2 has order 4", pimage == 4)

    n = ctx.normalizer
    overlap = Fraction(s4.order * ht.order, n.order)
    ck.witness(
        normalizer_finite_order=n.order,
        overlap=str(overlap),
        components_mod_center=len(ctx.components),
        note="overlap and component count are computed, not assumed",
    )
    ck.check("normalizer finite part is finite and closed", n.check_closed())
    return ck.certificate()


def _cycle_lengths(p) -> list[int]:
    from .groups import cycle_type

    return list(cycle_type(p))


def verify_ineffectivity_kernel(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("kernel", ANCHORS["kernel"])
    r = ctx.rep_R
    ck.check("R has dimension 32", r.dim == 32, dim=r.dim)
    dims = r.graded_dims()
    ck.check("graded dims 12, 12, 8", dims == {1: 12, 2: 12, 3: 8}, graded_dims={str(k): v for k, v in dims.items()})
    matching = match_graded_pieces(r)
    ck.check(
        "graded pieces match Q3, Q2, Q1 by character",
        matching[1].startswith("Q3") and matching[2].startswith("Q2") and matching[3].startswith("Q1"),
        matching={str(k): v for k, v in matching.items()},
    )
    ck.witness(
        filtration="R1 = degree 3 in x0,x1 (Q1); R2/R1 = degree 2 (Q2); R/R2 = degree 1 (Q3); "
        "three steps with one quotient each",
    )

    g = ineffectivity_generator()
    m = r.act(GElement.from_reductive(g))
    per_vector = [m.apply(col) == tuple(col) for col in ExactMatrix.identity(32).to_rows()]
    ck.check("(iI, iI, iI) fixes every basis vector", all(per_vector), fixed=sum(per_vector))
    order = next(k for k in range(1, 25) if (g**k).is_identity())
    ck.check("generator has order 4", order == 4, order=order)

    basis = lie_gr_basis() + lie_u_basis()
    stacked = ExactMatrix.from_rows([list(r.inf_act(x).entries) for x in basis])
    rk = rank(stacked)
    ck.check("Lie(G) acts with trivial kernel", rk == 15, rank=rk, lie_dim=len(basis))

    group = closure(
        [g, TripleElement.scalars(-1, 1, 1), TripleElement.scalars(1, -1, 1), TripleElement.scalars(1, 1, -1)],
        bound=64,
    )
    trivial = [x for x in group.elements if r.act(GElement.from_reductive(x)).is_identity()]
    keys = {x.key() for x in trivial}
    ck.check(
        "exactly 4 scalar triples act trivially",
        len(trivial) == 4 and keys == {x.key() for x in ineffectivity_elements()},
        group_order=group.order,
        trivial=[[str(t.a1[0, 0]), str(t.a2[0, 0]), str(t.a3[0, 0])] for t in trivial],
    )

    # grading: G_R block-diagonal, U moves degree d into degrees > d
    samples = [
        TripleElement(mat2(1, 2, 3, 5), mat2(2, 1, 1, 1), mat2(1, 1, 0, 1)),
        TripleElement.diagonal(ctx.constants.sigma),
    ]
    block = all(
        r.act(GElement.from_reductive(s))[i, j].is_zero()
        for s in samples
        for i in range(32)
        for j in range(32)
        if r.grading[i] != r.grading[j]
    )
    ck.check("G_R preserves the grading", block)
    raises = True
    for u in (mat2(1, 0, 0, 0), mat2(2, -1, 3, 1)):
        mu = r.act(GElement.from_unipotent(u)) - ExactMatrix.identity(32)
        raises &= all(mu[i, j].is_zero() for i in range(32) for j in range(32) if r.grading[i] <= r.grading[j])
    ck.check("U strictly raises the x0,x1-degree", raises)
    return ck.certificate()


def verify_S4_decompositions(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("decompositions", ANCHORS["decompositions"])
    table = ctx.constants.table
    cls = ctx.class_reps
    ck.check("character table is orthonormal", table.is_orthonormal())

    reps = {
        "C2⊗C2⊗Sym2": q2_rep(),
        "C2⊗Sym3": q1_rep(),
        "C2⊗C2": tensor_rep([Slot(C2, 0), Slot(C2, 2)], name="C2⊗C2"),
        "Sym2": tensor_rep([Slot(SYM2, 0)], name="Sym2"),
        "Q3^H": ctx.q3h,
    }
    chars = {name: character(rep, cls) for name, rep in reps.items()}
    epspsi = [cyc(x) for x in table.row("epspsi")]
    chars["epspsi⊗epspsi"] = tuple(x * x for x in epspsi)
    mults = {}
    for name, ch in chars.items():
        try:
            mults[name] = decompose_S4(ch, table)
        except NotACharacterError as exc:
            ck.check(f"{name} is a character", False, error=str(exc))
            continue
        ck.check(
            f"{name} = {EXPECTED_DECOMPOSITIONS[name]}",
            mults[name] == EXPECTED_DECOMPOSITIONS[name],
            character=_vec_str(ch),
            multiplicities=list(mults[name]),
        )
        weighted = sum(m * d for m, d in zip(mults[name], table.dims()))
        ck.check(f"{name} dimension bookkeeping", weighted == int(ch[0].to_fraction()))
    ck.witness(multiplicities={k: list(v) for k, v in mults.items()}, irreps=list(table.irrep_names))

    c2c2 = reps["C2⊗C2"]
    sym_part = Subspace(4, [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0)])
    a_cls, tau_cls = cls[2], cls[4]
    tr_a = sym_part.restrict(c2c2.act(a_cls)).trace()
    tr_t = sym_part.restrict(c2c2.act(tau_cls)).trace()
    ck.check("span(m1, m2, m3): trace -1 on the Klein class", tr_a == -ONE, trace=str(tr_a))
    ck.check("span(m1, m2, m3): trace +1 on the 4-cycle class", tr_t == ONE, trace=str(tr_t))
    s4_inv = invariant_subspace(c2c2, [TripleElement.diagonal(x) for x in ctx.s4.generators])
    ck.check(
        "S4-invariants in C2⊗C2 are the antisymmetric matrices",
        s4_inv == Subspace(4, [(0, 1, -1, 0)]),
    )
    # A alone fixes xy; the Klein group <A, B> has no invariants
    klein = [TripleElement.diagonal(ctx.constants.a), TripleElement.diagonal(ctx.constants.b)]
    k_inv = invariant_subspace(reps["Sym2"], klein)
    a_inv = invariant_subspace(reps["Sym2"], klein[:1])
    ck.check("Sym2 has no invariants under <A, B>", k_inv.dim == 0, fixed_by_A_alone=a_inv.dim)

    if all(k in chars for k in ("C2⊗C2", "Q3^H")):
        prod = tuple(x * y for x, y in zip(chars["C2⊗C2"], chars["Q3^H"]))
        q3_char = character(ctx.q3, cls)
        ck.check("(C2⊗C2)·Q3^H has the character of Q3", prod == q3_char, q3=_vec_str(q3_char))
        total = tuple(x + y for x, y in zip(chars["C2⊗C2"], chars["C2⊗Sym3"]))
        ck.check("C2⊗C2⊗Sym2 = C2⊗C2 + C2⊗Sym3 as characters", total == chars["C2⊗C2⊗Sym2"])
    return ck.certificate()


def _two_step_model(ctx: Context):
    """W = Q2 (+) Q3^H inside R/R1, coordinates ordered (degree 2, degree 1)."""
    r = ctx.rep_R
    idx = r.indices(2) + r.q3_ordered_indices()
    inv = ctx.q3_invariants
    # the degree-1 block of R is Q3 with the same basis order as q3_rep
    vectors = [tuple(ONE if k == i else ZERO for k in range(24)) for i in range(12)]
    vectors += [tuple([ZERO] * 12) + tuple(v) for v in inv.basis]
    w = Subspace(24, vectors)

    def act(g):
        if isinstance(g, TripleElement):
            g = GElement.from_reductive(g)
        return w.restrict(submatrix(r.act(g), idx, idx))

    def inf(x):
        return w.restrict(submatrix(r.inf_act(x), idx, idx))

    return w, act, inf


def _check_degree1_block_is_q3(ctx: Context) -> bool:
    r = ctx.rep_R
    idx = r.q3_ordered_indices()
    samples = [TripleElement(mat2(1, 2, 3, 5), mat2(2, 1, 1, 1), mat2(1, 1, 0, 1)), TripleElement.diagonal(ctx.constants.tau)]
    return all(submatrix(r.act(g), idx, idx) == ctx.q3.act(g) for g in samples)


def _finite_stabilizer(ck: Checker, components, pieces, act_full, point) -> list[TripleElement] | None:
    solutions = []
    for k, g in enumerate(components):
        sol = solve_component(k, g, pieces)
        if sol is not None:
            solutions.append((g, sol))
    stab: list = []
    for g, sol in solutions:
        ts = center_elements(sol.alpha, sol.beta)
        if ts is None:
            ck.check("center scalars are roots of unity", False, generic=True)
            return None
        for t in ts:
            element = GElement(t * g, mat2(*sol.u)) if sol.u else GElement.from_reductive(t * g)
            ck_ok = act_full(element).apply(point) == point
            if not ck_ok:
                ck.check("solution fixes the point", False, component=sol.index)
                return None
            stab.append(element)
    ck.witness(
        solved_components=[
            {"index": sol.index, "alpha": str(sol.alpha), "beta": str(sol.beta), "u": _vec_str(sol.u)} for _, sol in solutions
        ]
    )
    return stab


def _is_ineffectivity_set(stab: Sequence[GElement]) -> bool:
    want = {GElement.from_reductive(x).key() for x in ineffectivity_elements()}
    return {x.key() for x in stab} == want and len(stab) == 4


def _check_center_weights(ck: Checker, pieces: Sequence[Piece]) -> None:
    samples = [(cyc(2), cyc(3), 1), (cyc(Fraction(1, 5)), cyc(7), -1)]
    ok = True
    for lam, mu, s in samples:
        t = TripleElement.center(lam, mu, s)
        scal = {"alpha": lam * mu, "beta": lam / mu * s}
        for piece in pieces:
            m = piece.act(t)
            ok &= m == ExactMatrix.scalar(m.rows, scal[piece.weight])
    ck.check("center acts by the stated characters on each layer", ok)


def verify_generic_freeness_two_step(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("freeness", ANCHORS["freeness"])
    w, act, inf = _two_step_model(ctx)
    ck.check("two-step quotient has dimension 15", w.dim == 15, dim=w.dim)
    ck.check("degree-1 block of R is Q3 in the tensor basis", _check_degree1_block_is_q3(ctx))
    gp = GenericPoint.for_rep("Q2+Q3^H", w.dim, seed)
    p = gp.vector()
    ck.witness(point=gp.to_json())

    # U moves the top layer into Q2 and kills Q2
    top = list(range(12, 15))
    umats = [act(GElement.from_unipotent(x.u)) - ExactMatrix.identity(15) for x in lie_u_basis()]
    ck.check(
        "U acts trivially on Q3^H and maps it into Q2",
        all(m[i, j].is_zero() for m in umats for i in range(15) for j in range(15) if i in top or j < 12),
    )
    lie = center_lie_basis() + lie_u_basis()
    evals = ExactMatrix.from_columns([inf(x).apply(p) for x in lie])
    rk = rank(evals)
    ck.check("Lie stabilizer of center + u is zero", rk == 6, generic=True, rank=rk, lie_dim=len(lie))
    ck.check(
        "infinitesimal u matches the group action in the quotient",
        all(umats[k] == inf(x) for k, x in enumerate(lie_u_basis())),
    )

    p2, p3 = p[:12], p[12:]
    q2_layer = Piece("Q2", "beta", lambda g: submatrix(act(g), range(12), range(12)), p2)
    q3_layer = Piece("Q3^H", "alpha", lambda g: submatrix(act(g), top, top), p3)
    _check_center_weights(ck, [q2_layer, q3_layer])
    q2_layer.coupling = [m.apply(tuple([ZERO] * 12) + p3)[:12] for m in umats]

    comps = ctx.components
    ck.witness(components=len(comps), normalizer_finite_order=ctx.normalizer.order)
    stab = _finite_stabilizer(ck, comps, [q3_layer, q2_layer], act, p)
    if stab is not None:
        ck.check(
            "finite stabilizer is exactly I",
            _is_ineffectivity_set(stab),
            generic=True,
            stabilizer_size=len(stab),
        )
        layered = {k for k, g in enumerate(comps) if solve_component(k, g, [q3_layer]) is not None}
        oracle = brute_force_top_layer(comps, q3_layer)
        agree = layered == set(oracle) and all(
            proportionality(q3_layer.act(comps[k]).apply(p3), p3) == oracle[k] for k in oracle
        )
        ck.check("layered top-layer solve agrees with brute force", agree, top_layer_solutions=len(oracle))
    return ck.certificate()


def _vprime_reps(ctx: Context):
    m1 = tensor_rep([Slot(C2, 0), Slot(C2, 1, dual=True)], name="M1")
    m2 = tensor_rep([Slot(C2, 0), Slot(C2, 2, dual=True)], name="M2")
    mult_kernel, _ = splitting_subspaces()
    c2c2 = restrict_rep(q2_rep(), mult_kernel, name="C2⊗C2 in Q2")
    return {
        "V'": [("M1", "beta", m1), ("M2", "alpha", m2), ("Q3^H", "alpha", ctx.q3h)],
        "Q3^H + C2⊗C2": [("Q3^H", "alpha", ctx.q3h), ("C2⊗C2", "beta", c2c2)],
    }


def _block_act(reps: Sequence[Rep]):
    from .linalg import block_diag

    def act(g):
        r = g.reductive if isinstance(g, GElement) else g
        return block_diag(*(rep.act(r) for rep in reps))

    return act


def verify_V_prime_generically_free(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("vprime", ANCHORS["vprime"])
    comps = ctx.components
    ck.witness(components=len(comps))
    for label, parts in _vprime_reps(ctx).items():
        reps = [rep for _, _, rep in parts]
        dim = sum(r.dim for r in reps)
        gp = GenericPoint.for_rep(label, dim, seed)
        p = gp.vector()
        pieces, offset = [], 0
        for name, weight, rep in parts:
            pieces.append(Piece(name, weight, rep.act, p[offset : offset + rep.dim]))
            offset += rep.dim
        _check_center_weights(ck, pieces)
        evals = []
        for x in center_lie_basis():
            col = []
            for piece, rep in zip(pieces, reps):
                col += list(rep.inf_act(x).apply(piece.point))
            evals.append(col)
        rk = rank(ExactMatrix.from_columns(evals))
        ck.check(f"{label}: Lie stabilizer of the center is zero", rk == 2, generic=True, rank=rk, dim=dim)
        sub = Checker("", "")
        stab = _finite_stabilizer(sub, comps, pieces, _block_act(reps), p)
        ck.assertions += [dict(a, name=f"{label}: {a['name']}") for a in sub.assertions]
        ck.check(
            f"{label}: finite stabilizer is exactly I",
            stab is not None and _is_ineffectivity_set(stab),
            generic=True,
            stabilizer_size=None if stab is None else len(stab),
        )
        ck.witness(**{f"{label} point": gp.to_json(), f"{label} solved": sub.witnesses.get("solved_components")})
    ck.check("V' has dimension 11", sum(r.dim for _, _, r in _vprime_reps(ctx)["V'"]) == 11)

    mult_kernel, contr_kernel = splitting_subspaces()
    ck.check("complement C2⊗Sym3 has dimension >= 7", contr_kernel.dim >= 7, dim=contr_kernel.dim)
    c2c2 = tensor_rep([Slot(C2, 0), Slot(C2, 2)])
    klein = [x for x in ctx.htilde.elements if not x.is_scalar()]
    ck.check(
        "Klein four group acts effectively on P(C2⊗C2)",
        all(not c2c2.act(TripleElement.diagonal(x)).is_scalar() for x in klein),
        checked=len(klein),
    )
    main_c2c2 = restrict_rep(q2_rep(), mult_kernel)
    ck.check(
        "no non-central element of the heisenberg group acts as a scalar on C2⊗C2 in Q2",
        all(
            not main_c2c2.act(g).is_scalar()
            for x in klein
            for g in (TripleElement.diagonal(x), TripleElement(ID2, x, ID2))
        ),
    )
    split = check_invariant_splitting(ctx)
    ck.assertions += [dict(a, name=f"splitting: {a['name']}") for a in split.assertions]
    ck.witness(splitting=split.witnesses)
    return ck.certificate()


def check_invariant_splitting(ctx: Context | None = None) -> Certificate:
    """Q2 = (C2⊗C2) + (C2⊗Sym3) via the kernels of multiplication and contraction."""
    ctx = ctx or Context()
    ck = Checker("splitting", "invariant-splitting/Q2")
    mult_kernel, contr_kernel = splitting_subspaces()
    inter = mult_kernel.intersection(contr_kernel)
    ck.check("dimensions 4 and 8", (mult_kernel.dim, contr_kernel.dim) == (4, 8), dims=[mult_kernel.dim, contr_kernel.dim])
    ck.check("zero intersection", inter.dim == 0)
    q2 = q2_rep()
    c = ctx.constants
    gens = {
        "diag tau": TripleElement.diagonal(c.tau),
        "diag sigma": TripleElement.diagonal(c.sigma),
        "(I, A, I)": TripleElement(ID2, c.a, ID2),
        "(I, B, I)": TripleElement(ID2, c.b, ID2),
        "center (2, 3, 1/3)": TripleElement.scalars(2, 3, Fraction(1, 3)),
        "center (1/2, -5, 1/5)": TripleElement.center(Fraction(1, 2), 5, -1),
    }
    for name, g in gens.items():
        m = q2.act(g)
        ck.check(f"{name} preserves both summands", mult_kernel.is_invariant(m) and contr_kernel.is_invariant(m))
    return ck.certificate()


def verify_hesse_almost_free(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ctx = ctx or Context()
    ck = Checker("hesse", ANCHORS["hesse"])
    group = closure(list(ctx.constants.hesse_generators), bound=200, key=projective_key)
    ck.check("projective order 18", group.order == 18, order=group.order)
    nontrivial = [g for g in group.elements if not g.is_scalar()]
    ck.check("17 nontrivial elements", len(nontrivial) == 17)

    cubic_monos = monomials(3, 3)

    def hesse(lam) -> tuple:
        coeff = {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1, (1, 1, 1): -3 * lam}
        return tuple(cyc(coeff.get(m, 0)) for m in cubic_monos)

    point = (cyc(1), cyc(2), cyc(3))
    lam = Fraction(1 + 8 + 27, 3 * 6)
    ck.check("[1:2:3] lies on the Hesse cubic with lambda = 2", lam == 2, value=f"{1 + 8 + 27} - 3*{lam}*6")
    ck.check("lambda^3 != 1", lam**3 != 1)
    f = hesse(lam)

    loci = []
    fixed_point = []
    invariant = True
    for g in nontrivial:
        dims = [eigenspace(g, z).dim for z in roots_of_unity()]
        dims = [d for d in dims if d]
        loci.append(sorted(dims))
        v = g.apply(point)
        fixed_point.append(proportionality(v, point) is not None)
        image = substitution_matrix(g, cubic_monos).apply(f)
        invariant &= proportionality(image, f) is not None
    ck.check(
        "every fixed locus is a union of points and lines",
        all(sum(d) == 3 and all(x in (1, 2) for x in d) for d in loci),
        eigenspace_dims=loci,
    )
    ck.check("every element preserves the cubic up to scalar", invariant)
    ck.check("stabilizer of [1:2:3] is trivial", not any(fixed_point), fixing=sum(fixed_point))
    return ck.certificate()


def castelnuovo_severi_bound(d1: int, g1: int, d2: int, g2: int) -> int:
    return (d1 - 1) * (d2 - 1) + d1 * g1 + d2 * g2


def clebsch_genus(d: int, multiplicities: Sequence[int]) -> int:
    """Genus of a degree-d plane curve with ordinary singular points."""
    if d < 1:
        raise ValueError("degree must be positive")
    for mu in multiplicities:
        if mu < 2:
            raise InvalidMultiplicityError(f"multiplicity {mu} < 2")
    return (d - 1) * (d - 2) // 2 - sum(mu * (mu - 1) // 2 for mu in multiplicities)


def dimension_audit(ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    ck = Checker("audit", ANCHORS["audit"])
    grass = 2 * (16 - 2)
    pgl4l = 15 - 4
    ck.check("dim G(2,16) - dim PGL_{4,L} = 28 - 11 = 17", (grass, pgl4l, grass - pgl4l) == (28, 11, 17))
    ck.check("25 + n - 8 = 17 + n for n = 1..11", all(25 + n - 8 == 17 + n for n in range(1, 12)))
    dim_r, dim_g = 32, 4 + 7 + 4
    ck.check("dim R - dim G = 32 - 15 = 17", dim_r - dim_g == 17)
    two_step, group_dim, fiber = 12 + 3, 2 + 4, 8
    ck.check("15 - 6 + 8 = 17", two_step - group_dim + fiber == 17)
    ck.check("bundle rank: (8 + 12 + 3) - 15 = 8", (8 + 12 + 3) - two_step == fiber)
    ck.check("E has dimension 4 + 1 = 5", 2 * 2 + 1 == 5)
    ck.check("V' has dimension 4 + 4 + 3 = 11", 4 + 4 + 3 == 11)
    cs = castelnuovo_severi_bound(4, 0, 3, 0)
    ck.check("castelnuovo_severi_bound(4, 0, 3, 0) = 6 < 7", cs == 6, value=cs)
    g6 = clebsch_genus(6, [2, 2, 2])
    g7 = clebsch_genus(7, [2] * 8)
    ck.check("clebsch_genus(6, [2,2,2]) = 7", g6 == 7, value=g6)
    ck.check("clebsch_genus(7, [2]*8) = 7", g7 == 7, value=g7)
    try:
        clebsch_genus(4, [1])
        rejected = False
    except InvalidMultiplicityError:
        rejected = True
    ck.check("multiplicity 1 is rejected", rejected)
    return ck.certificate()


# -- runner -----------------------------------------------------------------

CERTIFICATES: dict[str, Callable[..., Certificate]] = {
    "stabilizer": verify_stabilizer_general_position,
    "normalizer": verify_normalizer_containment,
    "kernel": verify_ineffectivity_kernel,
    "decompositions": verify_S4_decompositions,
    "freeness": verify_generic_freeness_two_step,
    "vprime": verify_V_prime_generically_free,
    "hesse": verify_hesse_almost_free,
    "audit": dimension_audit,
}

EXPECTED_ERRORS = (
    BoundExceededError,
    NotACharacterError,
    PreconditionError,
    ArithmeticError,
    ValueError,
    StopIteration,
    AssertionError,
)


def run_certificate(name: str, ctx: Context | None = None, seed: str = DEFAULT_SEED) -> Certificate:
    """Run one certificate, retrying once with the alternate seed on a genericity failure."""
    if seed not in SEEDS:
        raise UnknownSeedError(seed)
    ctx = ctx or Context()
    fn = CERTIFICATES[name]
    start = time.perf_counter()
    cert = _guarded(fn, name, ctx, seed)
    point_dependent = name in ("freeness", "vprime") or (name == "stabilizer" and ctx.constants.lambdas is None)
    if not cert.passed and point_dependent and _had_genericity_failure(cert):
        retry = _guarded(fn, name, ctx, ALTERNATE_SEED[seed])
        retry.witnesses["retried_from_seed"] = seed
        cert = retry
    cert.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return cert


def _had_genericity_failure(cert: Certificate) -> bool:
    return any(not a["ok"] and a.get("generic") for a in cert.assertions)


def _guarded(fn, name: str, ctx: Context, seed: str) -> Certificate:
    try:
        return fn(ctx, seed)
    except EXPECTED_ERRORS as exc:
        return Certificate(
            name,
            ANCHORS[name],
            "fail",
            {"error": f"{type(exc).__name__}: {exc}"},
            0,
            [{"name": "certificate ran to completion", "ok": False, "error": f"{type(exc).__name__}: {exc}"}],
        )


def run_all(
    seed: str = DEFAULT_SEED, constants: Constants = DEFAULT_CONSTANTS, names: Sequence[str] | None = None
) -> list[Certificate]:
    """Run the named certificates (all by default) in dependency order."""
    ctx = Context(constants)
    names = list(CERTIFICATES) if names is None else list(names)
    return [run_certificate(n, ctx, seed) for n in names]


def build_report(certs: Sequence[Certificate], seed: str, timings: bool = False) -> dict:
    return {
        "version": REPORT_VERSION,
        "seed": seed,
        "overall": "pass" if all(c.passed for c in certs) else "fail",
        "certificates": [c.to_json(timings) for c in certs],
    }


def report_json(certs: Sequence[Certificate], seed: str, timings: bool = False) -> str:
    return json.dumps(build_report(certs, seed, timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("tetracert").joinpath("report_schema.json").read_text())


# -- negative controls --------------------------------------------------------


def perturbations() -> dict[str, Constants]:
    """The three documented single-constant perturbations."""
    bad_table = [list(r) for r in CHARACTER_TABLE.values]
    bad_table[3][1] = -1
    return {
        "A entry i -> 1": replace(DEFAULT_CONSTANTS, a=mat2(1, 0, 0, -I)),
        "lambda = (2, 2, 5)": replace(DEFAULT_CONSTANTS, lambdas=(2, 2, 5)),
        "character table psi((ab)) = -1": replace(
            DEFAULT_CONSTANTS, table=replace(CHARACTER_TABLE, values=tuple(tuple(r) for r in bad_table))
        ),
    }
