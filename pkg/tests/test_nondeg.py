import numpy as np
import pytest

from mixedpoly import MixedPolynomial, parse
from mixedpoly import geometry as G
from mixedpoly.nondeg import (
    DEGENERATE,
    NONDEGENERATE_TEST,
    PRESUMED,
    STRONG_TEST,
    SearchOptions,
    check_newton_nondegenerate,
    degeneracy_witness,
    quadratic,
    quadratic_margin,
    quadratic_oracle,
    slice_projector,
    strong_degeneracy_witness,
    verify_witness,
)
from mixedpoly.polynomial import DegenerateInputError
from mixedpoly._solve import pack

from oracles import EX1, EX2, dist_to_curve, ex1_param

FAST = SearchOptions(starts=300)


def test_example1_bad_face_is_strongly_degenerate():
    f = parse(EX1)
    v = strong_degeneracy_witness(f, FAST)
    assert v.status == DEGENERATE and v.mode == STRONG_TEST
    w = v.witness
    assert all(1e-3 <= abs(x) <= 1e3 for x in w.z)
    assert w.residual <= 1e-9 * (1 + 10 * np.linalg.norm(w.z) ** 3)
    assert dist_to_curve([w.value], ex1_param)[0] < 1e-6


@pytest.mark.parametrize("text", ["zb1^2*zb2^2", "zb1^2", "z1"])
def test_vertices_are_presumed_strongly_nondegenerate(text):
    v = strong_degeneracy_witness(parse(text), FAST)
    assert v.status == PRESUMED and v.witness is None
    assert v.search_budget.starts == FAST.starts and v.search_budget.seed == FAST.seed


def test_z1_presumed_nondegenerate():
    assert degeneracy_witness(parse("z1"), FAST).status == PRESUMED


def test_zero_face_polynomial_rejected():
    with pytest.raises(DegenerateInputError):
        degeneracy_witness(MixedPolynomial.zero(1), FAST)


def test_quadratic_oracle_examples():
    assert quadratic_oracle(1, 0, 0)
    assert not quadratic_oracle(1, 0, 1)
    assert quadratic_margin(1, 0, 1) == 0


def test_quadratic_inequality_holds_presumed():
    f = quadratic(1.0, 0.3 + 0.2j, 0.1j)
    assert quadratic_oracle(1.0, 0.3 + 0.2j, 0.1j)
    assert degeneracy_witness(f, FAST).status == PRESUMED
    assert strong_degeneracy_witness(f, FAST).status == PRESUMED


def test_quadratic_inequality_reversed_strong_witness():
    a, b, c = 1.0, 3.0, 0.0
    assert not quadratic_oracle(a, b, c)
    v = strong_degeneracy_witness(quadratic(a, b, c), FAST)
    assert v.status == DEGENERATE


def test_quadratic_zero_on_the_torus_gives_plain_witness():
    # -b on the ellipse {a u + c conj(u)}: f has a zero on C*, singular by homogeneity
    a, c = 1.0, 0.5
    b = -(a + c)
    v = degeneracy_witness(quadratic(a, b, c), FAST)
    assert v.status == DEGENERATE
    assert abs(quadratic(a, b, c)(np.array(v.witness.z))) <= 1e-8


def test_witnesses_reverify():
    for f, mode in [(parse(EX1), STRONG_TEST), (parse("(z1 + zb1)^2"), NONDEGENERATE_TEST)]:
        search = strong_degeneracy_witness if mode == STRONG_TEST else degeneracy_witness
        v = search(f, FAST)
        assert v.degenerate
        assert verify_witness(f, np.array(v.witness.z), mode, FAST.tol, FAST.torus_margin)


def test_search_is_deterministic():
    a = strong_degeneracy_witness(parse(EX1), FAST)
    b = strong_degeneracy_witness(parse(EX1), FAST)
    assert a == b


def test_check_examples():
    rep1 = check_newton_nondegenerate(parse(EX1), FAST)
    assert [set(F.vertices) for F in rep1.faces] == [{(2, 2)}]
    assert rep1.is_nondegenerate and rep1.is_strongly_nondegenerate
    rep2 = check_newton_nondegenerate(parse(EX2), FAST)
    assert len(rep2.faces) == 3
    assert rep2.is_nondegenerate and rep2.is_strongly_nondegenerate
    assert [F.dim for F in rep2.faces] == sorted(F.dim for F in rep2.faces)


def test_check_degenerate_square():
    rep = check_newton_nondegenerate(parse("(z1 + zb1)^2"), FAST)
    assert not rep.is_nondegenerate
    bad = [v for v in rep.nondegenerate.values() if v.degenerate]
    z = np.array(bad[0].witness.z)
    # f = 4 (Re z1)^2 is real, so nu vanishes identically; the witness sits on Re z1 = 0
    assert abs(z[0].real) < 1e-4
    assert abs(parse("(z1 + zb1)^2")(z)) <= 1e-8


def test_check_rejects_constants():
    with pytest.raises(DegenerateInputError):
        check_newton_nondegenerate(parse("5"), FAST)


def test_torus_action_invariance_on_bad_faces():
    rng = np.random.default_rng(60)
    for text in [EX1, "z1^2*zb2^2 + z1*z2 + 3*zb1*zb2", "z1*z2^2*z3 + zb1^2*zb2^4*zb3^2 + z1^3*z2^6*zb3^3"]:
        f = parse(text)
        for F in G.bad_faces(f):
            fD = G.restrict_to_face(f, F)
            a = np.array(F.witness, float)
            for _ in range(20):
                z = rng.normal(size=f.n) + 1j * rng.normal(size=f.n)
                t = rng.uniform(0.3, 3.0)
                assert abs(fD(z * t**a) - fD(z)) <= 1e-10 * (1 + abs(fD(z)))


def test_slice_projector_stays_on_orbit():
    f = parse(EX1)
    proj = slice_projector(f)
    rng = np.random.default_rng(61)
    z = rng.normal(size=(10, 2)) + 1j * rng.normal(size=(10, 2))
    X = pack(z, np.zeros(10))
    Y = proj(X)
    zs = Y[:, :2] + 1j * Y[:, 2:4]
    assert np.allclose(f(zs), f(z), rtol=1e-12, atol=1e-12)
    # log|z| ends up in span{(1, 1)}: both moduli agree
    assert np.allclose(np.abs(zs[:, 0]), np.abs(zs[:, 1]))


@pytest.mark.slow
def test_density_sanity_example2_shape():
    rng = np.random.default_rng(62)
    presumed = 0
    for k in range(100):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        f = MixedPolynomial(2, {
            ((1, 0), (0, 0)): c[0], ((0, 1), (0, 0)): c[1], ((0, 0), (2, 0)): c[2], ((0, 0), (0, 2)): c[3],
        })
        opts = SearchOptions(seed=k)
        faces = G.gamma_plus(f)
        if all(not degeneracy_witness(G.restrict_to_face(f, F), opts, F).degenerate for F in faces):
            presumed += 1
    assert presumed >= 95
