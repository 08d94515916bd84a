import random

import pytest
from hypothesis import given, strategies as st

from kwise import (
    ConstructionParams,
    CoverWitness,
    Family,
    GapWitness,
    Universe,
    Verdict,
    build_family,
    check_kwise,
    check_saturated,
    complement_family,
    downset_closure,
    is_maximal_kwise,
    make_star,
    maximal_elements,
    verify_witness,
)
from oracles import brute_first_unsaturated, brute_kwise_ok


def random_family(rng, n, max_members=12):
    size = 1 << n
    return Family(Universe(n), (rng.randrange(size) for _ in range(rng.randint(0, max_members))))


@st.composite
def families(draw, max_n=8, max_members=14):
    n = draw(st.integers(1, max_n))
    masks = draw(st.frozensets(st.integers(0, (1 << n) - 1), max_size=max_members))
    return Family(Universe(n), masks)


# --- check_kwise -------------------------------------------------------------


def test_kwise_complement_star_passes():
    g = complement_family(make_star(Universe(8)))
    assert check_kwise(g, 5).ok  # every member misses element 1


def test_kwise_full_set_member_fails():
    u = Universe(5)
    g = Family(u, [u.full, 3])
    for k in (2, 3, 7):
        v = check_kwise(g, k)
        assert not v.ok and v.reason == "not_kwise"
        assert isinstance(v.witness, CoverWitness)
        assert verify_witness(v, g, k)


def test_kwise_construction_k4_n9():
    f = build_family(ConstructionParams(4, 9)).f
    assert check_kwise(f, 4).ok


def test_kwise_empty_family_vacuous():
    assert check_kwise(Family(Universe(4)), 3).ok


def test_kwise_backends_equal_on_failures():
    u = Universe(4)
    g = Family(u, [0b0011, 0b1100, 0b0101])
    vd = check_kwise(g, 2, backend="dp")
    vt = check_kwise(g, 2, backend="tuples")
    assert vd == vt
    assert not vd.ok and verify_witness(vd, g, 2)


def test_kwise_requires_k_at_least_2():
    with pytest.raises(ValueError):
        check_kwise(Family(Universe(3), [1]), 1)


def test_kwise_monotone_in_k():
    rng = random.Random(9)
    seen_failure = False
    for _ in range(60):
        g = random_family(rng, 6)
        for k in (2, 3):
            if not check_kwise(g, k).ok:
                seen_failure = True
                assert not check_kwise(g, k + 1).ok
                assert not check_kwise(g, k + 3).ok
    assert seen_failure


# --- check_saturated ---------------------------------------------------------


def test_saturated_complement_star():
    for k in (2, 3, 5):
        g = complement_family(make_star(Universe(7)))
        assert check_saturated(g, k).ok


def test_saturated_construction_k3_n8():
    f = build_family(ConstructionParams(3, 8)).f
    assert check_saturated(f, 3).ok


def test_saturated_empty_family_fails_at_empty_mask():
    v = check_saturated(Family(Universe(4)), 3)
    assert not v.ok and v.witness == GapWitness(0)


def test_saturated_fails_on_singleton_empty_set():
    u = Universe(3)
    g = Family(u, [0])
    v = check_saturated(g, 3)
    assert not v.ok and v.reason == "not_saturated"
    assert isinstance(v.witness, GapWitness)
    assert verify_witness(v, g, 3)


def test_deletion_matches_naive_recheck():
    built = build_family(ConstructionParams(4, 9))
    tops = maximal_elements(built.f).members
    for removed in tops[:3]:
        g = Family(built.f.universe, set(built.f.members) - {removed})
        for backend in ("dp", "tuples"):
            v = check_saturated(g, 4, backend=backend)
            want = brute_first_unsaturated(g.members, 9, 4)
            assert v.ok == (want is None)
            if want is not None:
                assert v.witness == GapWitness(want)
                assert verify_witness(v, g, 4)


def test_saturated_rejects_large_universe():
    with pytest.raises(ValueError):
        check_saturated(Family(Universe(25), [1]), 3)


# --- is_maximal_kwise --------------------------------------------------------


def test_star_is_maximal_direct_world():
    v = is_maximal_kwise(make_star(Universe(10)), 4, "direct")
    assert v.ok and v.complement_downset


def test_construction_maximal_at_smallest_n():
    for k in (3, 4, 5):
        built = build_family(ConstructionParams(k, 2 * (k - 1)))
        v = is_maximal_kwise(built.fbar, k, "direct")
        assert v.ok and v.complement_downset


def test_full_powerset_fails_k2():
    u = Universe(4)
    f = Family(u, range(u.num_masks))
    v = is_maximal_kwise(f, 2, "direct")
    assert not v.ok and v.reason == "not_kwise"
    assert verify_witness(v, complement_family(f), 2)


def test_world_validation():
    with pytest.raises(ValueError):
        is_maximal_kwise(Family(Universe(3)), 2, "sideways")


def test_construction_passes_both_checks_up_to_n20():
    # the acceptance suite covers n <= 16 with both backends; this sweeps
    # the rest of the table-feasible band
    for k in (3, 4, 5, 6):
        for n in range(17, 21):
            built = build_family(ConstructionParams(k, n))
            v = is_maximal_kwise(built.f, k, "complement", backend="dp")
            assert v.ok, (k, n)


def test_threaded_saturation_scan_matches_sequential():
    built = build_family(ConstructionParams(4, 10))
    g = built.f
    assert check_saturated(g, 4, backend="tuples", threads=4).ok
    # remove a maximal member so the scan has a failure to locate
    top = maximal_elements(g).members[-1]
    broken = Family(g.universe, set(g.members) - {top})
    seq = check_saturated(broken, 4, backend="tuples", threads=1)
    par = check_saturated(broken, 4, backend="tuples", threads=4)
    assert seq == par
    if not seq.ok:
        assert verify_witness(seq, broken, 4)


@given(families(max_n=7))
def test_duality_of_worlds(f):
    direct = is_maximal_kwise(f, 3, "direct")
    through_complement = is_maximal_kwise(complement_family(f), 3, "complement")
    assert direct == through_complement


def test_backends_agree_on_random_downsets():
    rng = random.Random(21)
    for _ in range(25):
        g = downset_closure(random_family(rng, rng.randint(3, 8)))
        for k in (2, 3, 4):
            vd = is_maximal_kwise(g, k, "complement", backend="dp")
            vt = is_maximal_kwise(g, k, "complement", backend="tuples")
            assert vd == vt


def test_matches_brute_force_on_arbitrary_families():
    # not restricted to down-sets: exercises the superset-relaxed cover
    # queries that the general definition requires
    rng = random.Random(77)
    for _ in range(40):
        n = rng.randint(2, 6)
        g = random_family(rng, n)
        for k in (2, 3):
            want_kwise = brute_kwise_ok(g.members, n, k)
            assert check_kwise(g, k).ok == want_kwise
            if not want_kwise:
                continue
            want_first = brute_first_unsaturated(g.members, n, k)
            for backend in ("dp", "tuples"):
                v = check_saturated(g, k, backend=backend)
                assert v.ok == (want_first is None), (g.members, n, k, backend)
                if want_first is not None:
                    assert v.witness == GapWitness(want_first)


def test_every_failure_witness_verifies():
    rng = random.Random(33)
    checked = 0
    for _ in range(80):
        g = random_family(rng, rng.randint(2, 7))
        for k in (2, 3):
            v = is_maximal_kwise(g, k, "complement")
            if not v.ok:
                checked += 1
                assert verify_witness(v, g, k), (g.members, k, v)
    assert checked > 20


# --- verify_witness ----------------------------------------------------------


def test_verify_witness_cover_direct_arithmetic():
    u = Universe(4)
    g = Family(u, [0b0011, 0b1100])
    ok = Verdict(False, CoverWitness((0b0011, 0b1100)), "not_kwise")
    assert verify_witness(ok, g, 2)
    short = Verdict(False, CoverWitness((0b0011,)), "not_kwise")
    assert not verify_witness(short, g, 2)


def test_verify_witness_gap_with_completion():
    u = Universe(4)
    g = Family(u, [0b0011, 0b1100])
    w = Verdict(False, GapWitness(0b0011, (0b1100, 0b0011)), "not_saturated")
    assert not verify_witness(w, g, 3)  # the gap mask must not be a member
    w2 = Verdict(False, GapWitness(0b0101, (0b1100, 0b0011)), "not_saturated")
    assert verify_witness(w2, g, 3)
    incomplete = Verdict(False, GapWitness(0b0101, (0b0011,)), "not_saturated")
    assert not verify_witness(incomplete, g, 3)


def test_verify_witness_detects_corruption():
    u = Universe(4)
    g = Family(u, [0b0011, 0b1100])
    v = check_kwise(g, 2)
    assert not v.ok and verify_witness(v, g, 2)
    masks = v.witness.masks
    corrupted = Verdict(False, CoverWitness((masks[0] & ~1, *masks[1:])), "not_kwise")
    assert not verify_witness(corrupted, g, 2)


def test_verify_witness_requires_witness():
    with pytest.raises(ValueError):
        verify_witness(Verdict(True), Family(Universe(3)), 2)


def test_verify_witness_rejects_foreign_masks():
    u = Universe(3)
    g = Family(u, [1])
    with pytest.raises(ValueError):
        verify_witness(Verdict(False, CoverWitness((1 << 10,))), g, 2)
