import numpy as np
import pytest

from mixedpoly import parse
from mixedpoly.polynomial import DegenerateInputError
from mixedpoly.probe import (
    DIVERGENT,
    FINITE,
    INCONCLUSIVE,
    CriticalOptions,
    Member,
    RadiusSchedule,
    _chain,
    _classify,
    bad_face_critical_values,
    critical_values,
    estimate_Kinf,
    estimate_S,
    hausdorff,
    kos_settles,
    nearest_distance,
)

from conftest import cached_bound, cached_critical, cached_probe
from oracles import EX1, EX2, dist_to_curve, ex1_curve, ex1_param, ex2_curve, ex2_param


def member_values(clusters):
    return np.array([m.value for c in clusters for m in c.members])


# -- critical values ---------------------------------------------------------


def test_critical_values_example2():
    cv = cached_critical(EX2)
    vals = member_values(cv.clusters)
    assert len(vals) >= 256
    assert np.max(dist_to_curve(vals, ex2_param)) <= 1e-6
    assert cv.max_modulus <= 1.5 + 1e-6
    assert np.max(nearest_distance(ex2_curve(256), [c.center for c in cv.clusters])) <= 1e-2


def test_critical_values_example1():
    cv = cached_critical(EX1)
    vals = member_values(cv.clusters)
    off_zero = vals[np.abs(vals) > 1e-6]
    assert np.max(dist_to_curve(off_zero, ex1_param)) <= 1e-6
    assert np.any(np.abs(vals) <= 1e-6)
    reference = np.r_[0, ex1_curve(256)]
    assert np.max(nearest_distance(reference, [c.center for c in cv.clusters])) <= 1e-2


def test_critical_values_holomorphic_linear_is_empty():
    cv = critical_values(parse("z1"), CriticalOptions(phases=32))
    assert cv.clusters == [] and cv.max_modulus == 0.0


def test_critical_values_rejects_constants():
    with pytest.raises(DegenerateInputError):
        critical_values(parse("2"))


# -- bound set -----------------------------------------------------------------


def test_bound_set_example1():
    b = cached_bound(EX1)
    assert b.includes_zero and b.shift == 0
    assert len(b.bad_face_values) == 1
    (face, clusters), = b.bad_face_values.items()
    assert set(face.vertices) == {(1, 1), (2, 2)}
    vals = np.array([c.center for c in clusters])
    # the origin is a singular point of the face function too, with value 0
    vals = vals[np.abs(vals) > 1e-6]
    assert np.max(dist_to_curve(vals, ex1_param)) <= 1e-2
    assert np.max(nearest_distance(ex1_curve(256), vals)) <= 1e-2
    assert np.min(np.abs(b.values)) == 0


def test_bound_set_example2_is_zero_only():
    b = bad_face_critical_values(parse(EX2), CriticalOptions(phases=64))
    assert b.bad_face_values == {} and np.array_equal(b.values, [0])


def test_bound_set_weighted_homogeneous():
    b = bad_face_critical_values(parse("z1^2 + zb2^2"), CriticalOptions(phases=64))
    assert np.array_equal(b.values, [0])


def test_bound_set_shift_is_added_back():
    b0 = bad_face_critical_values(parse(EX1), CriticalOptions(phases=128))
    b1 = bad_face_critical_values(parse(EX1 + " + 2 - i"), CriticalOptions(phases=128))
    assert b1.shift == 2 - 1j
    assert np.allclose(np.sort_complex(b1.values), np.sort_complex(b0.values + (2 - 1j)))
    for clusters in b1.bad_face_values.values():
        for c in clusters:
            assert all(abs(m.value - c.center) <= 1e-2 for m in c.members)


# -- schedule and classification -------------------------------------------------


def test_schedule_validation():
    with pytest.raises(ValueError):
        RadiusSchedule(radii=(10.0,))
    with pytest.raises(ValueError):
        RadiusSchedule(radii=(10.0, 5.0))
    with pytest.raises(ValueError):
        RadiusSchedule(cluster_tol=0)


def test_kos_settles():
    assert kos_settles([0.5, 0.05, 0.005])
    assert kos_settles([1e-4, 3e-4, 2e-4])  # below the numerical floor
    assert not kos_settles([0.5, 0.05, 0.02])
    assert not kos_settles([0.001, 0.002, 0.005])
    assert not kos_settles([])


def test_chain_links_nearest_and_starts_new_chains():
    vals = [np.array([0.0, 1.0]), np.array([1.001, 0.002, 5.0]), np.array([0.0025])]
    chains = _chain(vals, 1e-3)
    as_sets = sorted(tuple(ch) for ch in chains)
    assert ((0, 0), (1, 1), (2, 0)) in as_sets
    assert ((0, 1), (1, 0)) in as_sets
    assert ((1, 2),) in as_sets


def _members(values, radii, kos=None):
    kos = kos or [0.0] * len(values)
    return tuple(Member(r, (0j,), complex(v), k) for v, r, k in zip(values, radii, kos))


def test_classify():
    sched = RadiusSchedule(radii=(1e1, 1e2, 1e3, 1e4))
    radii = sched.radii
    finite = _members([0.5, 0.501, 0.5001, 0.50001], radii)
    assert _classify(finite, radii[-1], sched, "S") == FINITE
    growing = _members([20.0, 200.0, 2000.0, 20000.0], radii)
    assert _classify(growing, radii[-1], sched, "S") == DIVERGENT
    short = _members([0.5, 0.6], radii[:2])
    assert _classify(short, radii[-1], sched, "S") == INCONCLUSIVE
    kos_bad = _members([0.5, 0.501, 0.5001, 0.50001], radii, [1.0, 1.0, 1.0, 1.0])
    assert _classify(kos_bad, radii[-1], sched, "Kinf") == INCONCLUSIVE


def test_set_distances():
    a = np.array([0, 1j])
    b = np.array([0.1, 1j, 3])
    assert np.allclose(nearest_distance(a, b), [0.1, 0])
    assert hausdorff(a, b) == pytest.approx(3.0)
    assert np.isinf(nearest_distance(a, [])).all()


# -- sphere probes -----------------------------------------------------------------


@pytest.mark.slow
def test_estimate_S_example1():
    res = cached_probe(EX1, "S")
    vals = res.values
    assert len(vals) > 0
    assert np.max(dist_to_curve(vals, ex1_param)) <= 1e-2
    assert np.max(nearest_distance(ex1_curve(64), vals)) <= 1e-2
    assert np.min(np.abs(vals)) > 0.05
    for c in res.finite:
        assert [m.radius for m in c.members] == sorted(m.radius for m in c.members)
        assert c.drifts[-1] <= res.schedule.cluster_tol


@pytest.mark.slow
def test_estimate_S_example2_empty():
    assert cached_probe(EX2, "S").finite == []


@pytest.mark.slow
def test_estimate_S_linear_in_two_variables():
    res = estimate_S(parse("z1", 2))
    assert res.finite == []
    assert len(res.divergent) + len(res.inconclusive) > 0


@pytest.mark.slow
def test_estimate_Kinf_contains_S_example1():
    S = cached_probe(EX1, "S").values
    K = cached_probe(EX1, "Kinf")
    assert np.max(nearest_distance(S, K.values)) <= 1e-2
    for c in K.finite:
        assert kos_settles(c.kos_trace)


@pytest.mark.slow
def test_estimate_Kinf_linear_is_empty():
    assert estimate_Kinf(parse("z1", 2)).finite == []


def test_probes_reject_constants():
    with pytest.raises(DegenerateInputError):
        estimate_S(parse("1"))
    with pytest.raises(DegenerateInputError):
        estimate_Kinf(parse("1"))


def test_probe_is_deterministic():
    sched = RadiusSchedule(radii=(10.0, 100.0, 1000.0), starts=40)
    a = estimate_S(parse(EX1), sched)
    b = estimate_S(parse(EX1), sched)
    assert [c.center for c in a.finite] == [c.center for c in b.finite]
    assert a.accepted == b.accepted
