from __future__ import annotations

import pytest

from hankelfrac.models.hfraction import HFraction, PartialQuotient, Tail, TailKind
from hankelfrac.models.polynomial import Polynomial
from hankelfrac.services.expansion import (
    determined_hankel_index, eval_hfrac, eval_hfrac_raw, expand_prefix, expand_super_delta, hankel_from_hfrac,
    hankel_ladder, jfrac_expand, lemma22_reduce
)
from hankelfrac.services.oracle import hankel_sequence_bruteforce
from hankelfrac.services.sequences import example_series, stern_series
from hankelfrac.services.series import RationalSeries, explicit
from hankelfrac.utils.errors import InputError, InsufficientQuotientsError

from conftest import F2, F3, F5, QQ, random_poly, random_series


def _last_ladder_index(h: HFraction) -> int:
    return hankel_ladder(h, 10 ** 6)[-1][0]


def test_geometric_series_terminates(poly):
    h = expand_super_delta(RationalSeries(poly('1', QQ), poly('1-x', QQ)))
    assert h.tail.kind == TailKind.TERMINATED
    assert [t.as_tuple() for t in h.display_terms()] == [('1', 0, '1-x')]
    assert [v.value for v in hankel_from_hfrac(h, 6)] == [1, 1, 0, 0, 0, 0, 0]


def test_rational_expansion_matches_prefix_expansion(poly):
    f = RationalSeries(poly('1+x^3', F3), poly('1+x+2*x^4', F3))
    exact = expand_super_delta(f)
    n = sum(2 * q.k + 2 for q in exact.quotients)
    approximate = expand_prefix(F3, f.prefix_raw(n))
    assert approximate.quotients == exact.quotients
    assert approximate.tail == Tail.truncated(n)


def test_hankel_determinants_agree_with_brute_force(corpus):
    for f in corpus:
        h = expand_super_delta(f, 2, depth=120)
        n_max = 24 if h.tail.kind == TailKind.TERMINATED else min(24, _last_ladder_index(h))
        assert hankel_from_hfrac(h, n_max) == hankel_sequence_bruteforce(f, n_max), f


@pytest.mark.slow
def test_hankel_determinants_agree_with_brute_force_deep(corpus):
    for f in corpus:
        h = expand_super_delta(f, 2, depth=200)
        n_max = 40 if h.tail.kind == TailKind.TERMINATED else min(40, _last_ladder_index(h))
        assert hankel_from_hfrac(h, n_max) == hankel_sequence_bruteforce(f, n_max), f


def test_hankel_determinants_over_q(rng):
    for _ in range(20):
        f = random_series(rng, QQ)
        h = expand_super_delta(f, 2, depth=60)
        n_max = 15 if h.tail.kind == TailKind.TERMINATED else min(15, _last_ladder_index(h))
        assert hankel_from_hfrac(h, n_max) == hankel_sequence_bruteforce(f, n_max)


@pytest.mark.parametrize('delta', [1, 2])
def test_expansion_round_trip(corpus, delta):
    for f in corpus[::4]:
        h = expand_super_delta(f, delta, depth=50)
        h.validate()
        if h.tail.kind == TailKind.TRUNCATED:
            n = h.tail.depth
        else:
            n = sum(2 * q.k + delta for q in h.quotients)
        prefix = eval_hfrac_raw(h, n)
        assert prefix == f.prefix_raw(n)
        assert expand_prefix(f.spec, prefix, delta).quotients == h.quotients


def test_eval_returns_field_elements(poly):
    h = expand_super_delta(RationalSeries(poly('1', F5), poly('1-x', F5)))
    values = eval_hfrac(h, 4)
    assert all(v.spec == F5 for v in values)
    assert [v.value for v in values] == [1, 1, 1, 1]


def test_truncated_tail_depth_is_honest():
    h = expand_prefix(F2, [1, 1, 0, 1, 0, 0])
    assert h.tail.kind == TailKind.TRUNCATED
    assert eval_hfrac_raw(h, h.tail.depth) == [1, 1, 0, 1, 0, 0][:h.tail.depth]
    with pytest.raises(InsufficientQuotientsError):
        eval_hfrac_raw(h, h.tail.depth + 1)


def test_zero_prefix_has_no_quotients():
    h = expand_prefix(F5, [0, 0, 0, 0])
    assert h.quotients == []
    assert h.tail == Tail.truncated(4)


def test_peel_relation_on_random_series(rng):
    for k in range(4):
        for _ in range(5):
            g = [rng.randrange(3) for _ in range(30)]
            u = random_poly(rng, F3, k)
            check = lemma22_reduce(F3, g, k, u, 12)
            assert check.rows
            assert check.holds, (k, g, u)


def test_peel_relation_rejects_high_degree_u(poly):
    with pytest.raises(InputError):
        lemma22_reduce(F3, [1] * 30, 1, poly('1+x+x^2', F3), 8)


def test_jfrac_of_stern_series():
    result = jfrac_expand(stern_series(), 3)
    assert result.ok
    assert result.v == [1, 1, -2]


def test_jfrac_of_geometric_series_terminates(poly):
    result = jfrac_expand(RationalSeries(poly('1', QQ), poly('1-x', QQ)), 5)
    assert result.terminated
    assert result.ok
    assert result.v == [1]
    assert result.u == [-1]


def test_jfrac_reports_vanishing_norm():
    result = jfrac_expand(explicit(QQ, [1, 0, 0, 1, 0, 0, 0, 0, 0]), 4)
    assert not result.terminated
    assert result.failure_index == 1


def test_jfrac_agrees_with_hfraction_when_defined():
    f = stern_series()
    h = jfrac_expand(f, 3).to_hfraction()
    assert hankel_from_hfrac(h, 3) == hankel_sequence_bruteforce(f, 3)


def test_hankel_needs_delta_two(poly):
    h = expand_super_delta(RationalSeries(poly('1', F2), poly('1+x', F2)), delta=1)
    with pytest.raises(InputError):
        hankel_from_hfrac(h, 3)


def test_hankel_beyond_truncation():
    h = expand_prefix(F2, [1, 1, 0, 1])
    with pytest.raises(InsufficientQuotientsError):
        hankel_from_hfrac(h, _last_ladder_index(h) + 1)


def test_hankel_between_ladder_points_of_truncated_fraction():
    h = expand_super_delta(example_series('ex2.1'), 2, depth=40)
    assert h.tail.kind == TailKind.TRUNCATED
    assert 15 not in [s for s, _ in hankel_ladder(h, 15)]
    values = hankel_from_hfrac(h, 15)
    assert [str(v) for v in values] == ['1', '1', '0', '0', '-1', '-1', '0', '0',
                                        '1', '1', '0', '0', '-1', '-1', '0', '0']
    assert values == hankel_sequence_bruteforce(example_series('ex2.1'), 15)


def test_known_leading_zeros_extend_truncated_range():
    h = expand_prefix(F3, [1, 1, 0, 0, 0, 0])
    assert h.tail == Tail.truncated(6)
    assert determined_hankel_index(h) == 4
    assert [v.value for v in hankel_from_hfrac(h, 4)] == [1, 1, 2, 0, 0]
    with pytest.raises(InsufficientQuotientsError):
        hankel_from_hfrac(h, 5)


def test_invalid_delta(poly):
    with pytest.raises(InputError):
        expand_super_delta(RationalSeries(poly('1', F2), poly('1+x', F2)), delta=0)


def test_fraction_validation():
    u = Polynomial(F2, (0, 1, 1))
    h = HFraction(F2, 2, [PartialQuotient(F2.element(1), 0, u)], Tail.terminated())
    with pytest.raises(InputError):
        h.validate()
    with pytest.raises(InputError):
        HFraction(F2, 2, [], Tail.periodic(0, 1))


def test_fraction_dict_round_trip(poly):
    h = expand_super_delta(RationalSeries(poly('1+x', F5), poly('1+2*x+x^3', F5)))
    assert HFraction.from_dict(h.to_dict()) == h
