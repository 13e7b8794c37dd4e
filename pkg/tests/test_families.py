from math import comb

import pytest

from onefac import families
from onefac.core import is_simple, validate_factorization


def test_family_partition_examples():
    assert families.family_for(9, 3) == "P1"
    assert families.family_for(9, 4) == "P2"
    assert families.family_for(9, 9) == "P4"
    assert families.family_for(9, 10) == "P3"
    assert families.family_for(9, 11) == "P7"
    assert families.family_for(9, 14) == "P5"
    assert families.family_for(9, 16) == "P6"
    assert families.family_for(9, 18) == "P8"


def test_family_partition_is_exact():
    for n in range(9, 15):
        for lam in range(families.lambda_floor(n), 2 * n + 1):
            claims = [f for f in families.FAMILY_IDS
                      if families.family_domain(f, n, lam)]
            assert len(claims) == 1, (n, lam, claims)


def test_no_family_outside_range():
    with pytest.raises(families.NoFamily):
        families.family_for(9, 25)
    with pytest.raises(families.NoFamily):
        families.family_for(9, 2)  # below ceil((n-2)/3)
    for n, lam in [(2, 2), (2, 5), (3, 3), (3, 7), (5, 4), (6, 6)]:
        with pytest.raises(families.NoFamily):
            families.family_for(n, lam)


def test_parity_split_covers_the_floor():
    # (10, 3) and (13, 4) sit at the shared parity floor ceil((n-2)/3);
    # the odd-parity family claims them.
    assert families.family_for(10, 3) == "P2"
    assert families.family_for(13, 4) == "P2"


def test_profiles_p1():
    assert families.family_profiles("P1", 9, 3) == [{0: 3, 1: 2, 8: 2, 2: 1, 7: 1}]
    assert families.family_profiles("P1", 5, 3) == [{0: 3, 1: 1, 4: 1}]
    assert families.family_profiles("P1", 6, 4) == [{0: 4, 1: 1, 5: 1}]


def test_profiles_p4():
    assert families.family_profiles("P4", 9, 9) == [
        {0: 7, 2: 1, 7: 1}, {0: 2, 1: 6, 3: 1}]
    assert families.family_profiles("P4", 9, 8) == [
        {0: 7, 3: 1, 6: 1}, {0: 1, 1: 7, 2: 1}]


def test_profiles_p3_n11():
    assert families.family_profiles("P3", 11, 12) == [
        {0: 9, 2: 1, 9: 1}, {0: 3, 1: 7, 4: 1}]
    assert families.family_profiles("P3", 11, 13) == [
        {0: 9, 2: 1, 9: 1}, {0: 4, 1: 6, 5: 1}]
    assert families.family_profiles("P3", 11, 14) == [
        {0: 9, 3: 1, 8: 1}, {0: 1, 1: 9, 2: 1}, {0: 4, 1: 5, 7: 1, 10: 1}]


def test_profiles_p6_small_n():
    assert families.family_profiles("P6", 9, 16) == [
        {0: 7, 2: 1, 7: 1}, {0: 7, 4: 1, 5: 1},
        {1: 7, 2: 1, 0: 1}, {1: 6, 8: 1, 4: 1, 0: 1}, {1: 3, 2: 5, 5: 1}]
    assert families.family_profiles("P6", 10, 18) == [
        {0: 8, 2: 1, 8: 1}, {0: 8, 3: 1, 7: 1},
        {1: 8, 2: 1, 0: 1}, {1: 7, 9: 1, 4: 1, 0: 1}, {1: 3, 2: 6, 5: 1}]


def test_profiles_p8_explicit_pins():
    profs = families.family_profiles("P8", 9, 18)
    assert profs[:4] == [{0: 7, 4: 1, 5: 1}, {0: 7, 3: 1, 6: 1},
                         {0: 1, 1: 7, 2: 1}, {1: 6, 2: 2, 8: 1}]
    profs = families.family_profiles("P8", 9, 17)
    assert profs[:4] == [{0: 7, 2: 1, 7: 1}, {0: 7, 3: 1, 6: 1},
                         {0: 2, 1: 6, 3: 1}, {0: 1, 1: 7, 2: 1}]


def test_profiles_out_of_domain():
    with pytest.raises(families.OutOfDomain):
        families.family_profiles("P1", 9, 4)  # parity belongs to P2
    with pytest.raises(families.OutOfDomain):
        families.family_profiles("P4", 6, 5)  # P4 needs n >= 7


def test_profile_invariants_across_catalog():
    for n in range(9, 15):
        for lam in range(families.lambda_floor(n), 2 * n + 1):
            family = families.family_for(n, lam)
            profs = families.family_profiles(family, n, lam)
            totals = {}
            for t in profs:
                assert sum(t.values()) == n
                assert sum(a * v for a, v in t.items()) % n == 0
                for a, v in t.items():
                    totals[a] = totals.get(a, 0) + v
            assert max(totals.values()) == lam
            assert all(v <= lam for v in totals.values())


def test_construct_n9_lam3():
    mf = families.construct(9, 3)
    assert len(mf.factors) == 51
    assert validate_factorization(mf).valid
    assert not is_simple(mf)[0]
    assert families.plan(9, 3).certificate().proven


def test_construct_n5_lam3():
    mf = families.construct(5, 3)
    assert len(mf.factors) == 27
    assert validate_factorization(mf).valid
    assert families.plan(5, 3).certificate().proven


def test_construct_rejects_out_of_range():
    with pytest.raises(families.NoFamily):
        families.construct(9, 25)


def test_plan_is_deterministic():
    p1 = families.plan(12, 17)
    p2 = families.plan(12, 17)
    assert p1.profiles == p2.profiles
    assert p1.starter_set == p2.starter_set


def test_upper_bound_simple():
    assert families.upper_bound(3, simple=True) == 3
    assert families.upper_bound(4, simple=True) == 60
    assert families.upper_bound(2, simple=True) == 1


def test_upper_bound_non_simple():
    assert families.upper_bound(2, simple=False) == 6 ** 6 * comb(19, 6)
    n = 3
    base = n * (2 * n - 1)
    expected = 1
    for _ in range(base):
        expected *= base
    expected *= comb(2 * n ** 3 + n ** 2 - n + 1, 2 * n ** 2 - n)
    assert families.upper_bound(3, simple=False) == expected


def test_coverage_table_s18():
    table = families.coverage_table(18)
    assert [e.lam for e in table] == list(range(2, 18))
    assert table[0].n == 5 and table[0].family == "P2"
    assert table[-1].lam == 17 and table[-1].n == 9
    for e in table:
        assert e.lam <= 2 * e.n - 1


def test_coverage_table_s36():
    table = families.coverage_table(36)
    assert table[-1].lam == 35
    # smallest admissible base is chosen
    for e in table[1:]:
        n = e.n
        assert n == 9 or not (families.lambda_floor(n - 1) <= e.lam <= 2 * (n - 1) - 1)


def test_coverage_table_rejects_small_s():
    with pytest.raises(families.STooSmall):
        families.coverage_table(17)


def test_fixture_file_matches_regeneration():
    from importlib import resources

    from onefac import docio, fixtures
    entries = fixtures.regenerate()
    text = docio.serialize(docio.fixture_document(entries))
    shipped = resources.files("onefac").joinpath("data/profiles.json").read_text()
    assert text == shipped
