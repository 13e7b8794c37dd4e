import pytest
from hypothesis import given, strategies as st

from onefac import core, cyclic, families, gf


def k4_matchings():
    return cyclic.lucas_factorization(4)


def test_canonicalize_sorts_edges_and_endpoints():
    assert core.canonicalize_factor([(1, 2), (3, 0)]) == ((0, 3), (1, 2))


def test_canonicalize_rejects_repeated_vertex():
    with pytest.raises(core.NotAMatching):
        core.canonicalize_factor([(0, 1), (1, 2)], 4)


def test_canonicalize_rejects_wrong_size_and_range():
    with pytest.raises(core.WrongSize):
        core.canonicalize_factor([(0, 1)], 4)
    with pytest.raises(core.VertexOutOfRange):
        core.canonicalize_factor([(0, 9), (1, 2)], 4)
    with pytest.raises(core.NotAMatching):
        core.canonicalize_factor([(2, 2), (0, 1)], 4)


def test_canonicalize_idempotent_on_m_factor():
    f = cyclic.m_factor(5, 2)
    assert core.canonicalize_factor(f, 10) == f


@given(st.permutations(list(range(10))), st.randoms(use_true_random=False))
def test_canonicalize_order_insensitive(vertices, rng):
    edges = [(vertices[2 * i], vertices[2 * i + 1]) for i in range(5)]
    canon = core.canonicalize_factor(edges, 10)
    shuffled = [e if rng.random() < 0.5 else (e[1], e[0]) for e in edges]
    rng.shuffle(shuffled)
    assert core.canonicalize_factor(shuffled, 10) == canon
    assert core.canonicalize_factor(canon, 10) == canon


def test_validate_three_copies_of_k4_matchings():
    mf = core.MultiFactorization.make(2, 3, k4_matchings() * 3)
    assert core.validate_factorization(mf).valid


def test_validate_detects_missing_factor():
    factors = (k4_matchings() * 3)[:-1]
    mf = core.MultiFactorization.make(2, 3, factors)
    report = core.validate_factorization(mf)
    assert not report.valid
    under = [(e, obs) for e, obs, exp in report.multiplicity_errors]
    assert len(under) == 2 and all(obs == 2 for _, obs in under)


def test_validate_agrees_with_naive_pair_loop():
    mf = gf.agl_orbit_factorization(gf.field_ctx(5, 1))
    assert mf.n == 3 and mf.lam == 2 and len(mf.factors) == 10
    report = core.validate_factorization(mf)
    # independent oracle: count every pair by looping over raw factor lists
    for u in range(6):
        for v in range(u + 1, 6):
            count = sum((u, v) in f for f in mf.factors)
            assert count == 2
    assert report.valid


def test_validate_reports_broken_factor():
    broken = ((0, 1), (1, 2))
    mf = core.MultiFactorization(2, 1, (broken, k4_matchings()[0], k4_matchings()[1]))
    report = core.validate_factorization(mf)
    assert not report.valid
    assert report.factor_errors and report.factor_errors[0][0] == 0


def test_is_simple_on_doubled_matchings():
    mf = core.MultiFactorization.make(2, 2, k4_matchings() * 2)
    simple, repeated = core.is_simple(mf)
    assert not simple
    assert sorted(repeated) == sorted((f, 2) for f in k4_matchings())


def test_is_simple_on_field_orbit():
    mf = gf.agl_orbit_factorization(gf.field_ctx(5, 1))
    assert core.is_simple(mf) == (True, [])


def test_is_simple_on_catalog_output_lists_loose_copies():
    mf = families.construct(5, 3)
    simple, repeated = core.is_simple(mf)
    assert not simple
    assert (cyclic.m_factor(5, 3), 3) in repeated


def test_edge_multiplicity_table_lucas():
    mf = core.MultiFactorization.make(2, 1, k4_matchings())
    table = core.edge_multiplicity_table(mf)
    assert set(table.values()) == {1} and len(table) == 6


def test_edge_multiplicity_table_two_copies_of_one_factor():
    f = k4_matchings()[0]
    mf = core.MultiFactorization(2, 2, (f, f))
    table = core.edge_multiplicity_table(mf)
    assert all(table[e] == 2 for e in f)
    assert table.get((0, 2), 0) == 0 or (0, 2) in f


def test_edge_multiplicity_table_catalog():
    mf = families.construct(5, 3)
    table = core.edge_multiplicity_table(mf)
    assert set(table.values()) == {3}
    assert sum(table.values()) == 3 * 5 * 9  # lam * n * (2n-1) edge slots
