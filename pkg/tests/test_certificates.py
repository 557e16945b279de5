import json

import jsonschema
import pytest

from tetracert.certificates import (
    CERTIFICATES,
    Constants,
    Context,
    InvalidMultiplicityError,
    Piece,
    UnknownSeedError,
    brute_force_top_layer,
    build_report,
    castelnuovo_severi_bound,
    center_elements,
    check_invariant_splitting,
    clebsch_genus,
    load_schema,
    perturbations,
    primes,
    proportionality,
    q3_point,
    report_json,
    run_all,
    run_certificate,
    solve_component,
)
from tetracert.field import I, ONE, cyc
from tetracert.groups import TAU_MAT, TripleElement


@pytest.fixture(scope="module")
def ctx():
    return Context()


@pytest.fixture(scope="module")
def full_run():
    return run_all()


def test_all_certificates_pass(full_run):
    assert [c.id for c in full_run] == list(CERTIFICATES)
    failing = {c.id: c.first_failure() for c in full_run if not c.passed}
    assert not failing


def test_report_validates_against_schema(full_run):
    report = build_report(full_run, "primes-v1")
    jsonschema.validate(report, load_schema())
    assert report["overall"] == "pass"
    assert len(report["certificates"]) == 8


def test_determinism():
    a = report_json(run_all(), "primes-v1")
    b = report_json(run_all(), "primes-v1")
    assert a == b


def test_unknown_seed_rejected(ctx):
    with pytest.raises(UnknownSeedError):
        run_certificate("freeness", ctx, seed="nope")


@pytest.mark.parametrize("label,expected_failures", [
    ("A entry i -> 1", {"stabilizer"}),
    ("lambda = (2, 2, 5)", {"stabilizer"}),
    ("character table psi((ab)) = -1", {"decompositions"}),
])
def test_negative_controls(label, expected_failures):
    certs = run_all(constants=perturbations()[label])
    failed = {c.id for c in certs if not c.passed}
    assert expected_failures <= failed


def test_explicit_lambdas_are_not_retried():
    c = run_certificate("stabilizer", Context(Constants(lambdas=(2, 2, 5))))
    assert not c.passed
    assert "retried_from_seed" not in c.witnesses


def test_seed_retry_recovers_from_degenerate_point(ctx, monkeypatch):
    import tetracert.certificates as certs

    original = certs.primes

    def degenerate(count, offset=0):
        return [1] * count if offset == 0 else original(count, offset)

    monkeypatch.setattr(certs, "primes", degenerate)
    c = run_certificate("stabilizer", Context())
    assert c.passed
    assert c.witnesses["retried_from_seed"] == "primes-v1"


def test_stabilizer_point_fixed_by_diagonal_A(ctx):
    p = q3_point((2, 3, 5))
    assert ctx.q3.act(TripleElement.diagonal(ctx.constants.a)).apply(p) == p


def test_layered_top_layer_matches_brute_force(ctx):
    inv = ctx.q3_invariants
    p3 = tuple(cyc(x) for x in primes(3))
    piece = Piece("Q3^H", "alpha", ctx.q3h.act, p3)
    layered = {k for k, g in enumerate(ctx.components) if solve_component(k, g, [piece]) is not None}
    oracle = brute_force_top_layer(ctx.components, piece)
    assert layered == set(oracle)
    assert 0 in oracle and oracle[0] == ONE
    assert inv.dim == 3


def test_diagonal_tau_component_has_no_solution(ctx):
    w_cert = run_certificate("freeness", ctx)
    solved = [s["index"] for s in w_cert.witnesses["solved_components"]]
    tau = TripleElement.diagonal(TAU_MAT)
    idx = next(k for k, g in enumerate(ctx.components) if g.key() == tau.key())
    assert idx not in solved
    assert solved == [0]


def test_center_elements_for_trivial_scalars():
    elems = center_elements(ONE, ONE)
    keys = {e.key() for e in elems}
    assert keys == {TripleElement.scalars(c, c, c).key() for c in (ONE, I, -ONE, -I)}


def test_proportionality():
    v = (cyc(2), cyc(4))
    assert proportionality(v, (ONE, cyc(2))) == cyc(2)
    assert proportionality(v, (ONE, ONE)) is None


def test_invariant_splitting(ctx):
    assert check_invariant_splitting(ctx).passed


def test_castelnuovo_severi_and_clebsch():
    assert castelnuovo_severi_bound(4, 0, 3, 0) == 6
    assert clebsch_genus(6, [2, 2, 2]) == 7
    assert clebsch_genus(7, [2] * 8) == 7
    with pytest.raises(InvalidMultiplicityError):
        clebsch_genus(5, [1])


def test_primes():
    assert primes(5) == [2, 3, 5, 7, 11]
    assert primes(3, 1) == [3, 5, 7]


def test_json_witnesses_are_serializable(full_run):
    json.dumps([c.to_json(timings=True) for c in full_run])
