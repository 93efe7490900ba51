from __future__ import annotations

import pytest

from hankelfrac.models.hfraction import TailKind
from hankelfrac.models.polynomial import Polynomial
from hankelfrac.models.triple import QuadraticCase, QuadraticTriple
from hankelfrac.services.expansion import eval_hfrac_raw
from hankelfrac.services.quadratic import dispatch_theorem11, hfrac_quadratic, next_abc, super1_quadratic
from hankelfrac.services.sequences import EXAMPLE_TRIPLES, example_series
from hankelfrac.services.series import QuadraticRootSeries, RationalSeries
from hankelfrac.utils.errors import InputError, InvalidBranchError, PreconditionError, UnsupportedCaseError

from conftest import F2, F3, F5, QQ, random_canonical_triple


def _example(example_id):
    triple, branch = EXAMPLE_TRIPLES[example_id]()
    return dispatch_theorem11(triple.A, triple.B, triple.C, triple.delta, branch)


def _display(result):
    return [list(t.as_tuple()) for t in result.fraction.display_terms()]


def test_canonical_example_over_f5():
    result = _example('i.1')
    assert result.case == QuadraticCase.CANONICAL
    assert (result.m, result.t) == (1, 7)
    assert [q.k for q in result.fraction.quotients] == [0, 0, 0, 1, 0, 0, 0, 0]
    assert _display(result) == [
        ['1', 0, '1+4*x'], ['4', 2, '1+3*x'], ['3', 2, '1+x'], ['4', 3, '1+3*x+2*x^2'],
        ['4', 3, '1+x'], ['3', 2, '1+3*x'], ['4', 2, '1+3*x'], ['4', 2, '1+3*x'],
    ]


def test_canonical_example_over_f2():
    result = _example('i.2')
    assert (result.m, result.t) == (1, 6)
    assert [q.k for q in result.fraction.quotients] == [0, 0, 2, 2, 0, 0, 0]
    assert _display(result)[:3] == [['1', 0, '1+x'], ['1', 2, '1'], ['1', 4, '1']]


@pytest.mark.parametrize('example_id', ['i.1', 'i.2', 'iii.1', 'iii.2', 'iv'])
def test_fraction_reproduces_the_root(example_id):
    result = _example(example_id)
    assert result.fraction.tail.kind == TailKind.PERIODIC
    assert eval_hfrac_raw(result.fraction, 60) == example_series(example_id).prefix_raw(60)


def test_unit_c_cases_peel_one_level():
    for example_id, case_branch in (('iii.1', 0), ('iii.2', 1)):
        result = _example(example_id)
        assert result.case == QuadraticCase.UNIT_C
        assert len(result.peel) == 1
        assert result.fraction.quotients[0] == result.peel[0].quotient
        assert result.triple_trace[1] == result.peel[0].transformed
        assert result.fraction.quotients[0].k == (1 if case_branch == 0 else 0)


def test_pure_square_case():
    result = _example('iv')
    assert result.case == QuadraticCase.PURE_SQUARE
    assert result.fraction.quotients[0].k == 1
    assert result.peel[0].transformed.B.coefficient(0) == 1


def test_linear_case(poly):
    A, B = poly('x', F5), poly('1+x', F5)
    result = dispatch_theorem11(A, B, Polynomial.zero(F5))
    assert result.case == QuadraticCase.LINEAR
    assert result.fraction.tail.kind == TailKind.TERMINATED
    assert eval_hfrac_raw(result.fraction, 20) == RationalSeries(-A, B).prefix_raw(20)


@pytest.mark.parametrize('A, B, C, spec', [
    ('x^2', '0', '1', F2),
    ('x', 'x', 'x', F3),
    ('1', '1', '1', F3),
    ('x^2', '0', '1', F3),
    ('x^3', '0', '1', F3),
    ('x', '0', 'x', F5),
    ('x', '0', '0', F5),
])
def test_unsupported_cases(poly, A, B, C, spec):
    with pytest.raises(UnsupportedCaseError):
        dispatch_theorem11(poly(A, spec), poly(B, spec), poly(C, spec))


def test_unsupported_over_rationals(poly):
    with pytest.raises(UnsupportedCaseError):
        dispatch_theorem11(poly('x', QQ), poly('1', QQ), poly('x', QQ))


def test_invalid_branch(poly):
    with pytest.raises(InvalidBranchError):
        dispatch_theorem11(poly('x', F3), poly('1', F3), poly('1', F3), branch=1)


def test_step_requires_canonical_triple(poly):
    with pytest.raises(PreconditionError):
        next_abc(QuadraticTriple(poly('1', F3), poly('2', F3), poly('x', F3)))
    with pytest.raises(PreconditionError):
        next_abc(QuadraticTriple(Polynomial.zero(F3), poly('1', F3), poly('x', F3)))


@pytest.mark.parametrize('spec', [F2, F3])
def test_random_triples_are_periodic(rng, spec):
    for _ in range(25):
        triple = random_canonical_triple(rng, spec, max_degree=3)
        result = hfrac_quadratic(triple)
        trace = result.triple_trace
        for before, after in zip(trace, trace[1:]):
            if before.A.is_zero():
                break
            step = next_abc(before)
            assert step.next == after
            assert after.d() <= before.d()
        if result.fraction.is_periodic:
            assert trace[result.m + result.t] == trace[result.m]
        else:
            assert trace[-1].A.is_zero()
        root = QuadraticRootSeries(triple.A, triple.B, triple.C, spec.neg(triple.A.coefficient(0)))
        assert eval_hfrac_raw(result.fraction, 40) == root.prefix_raw(40)


@pytest.mark.slow
@pytest.mark.parametrize('spec', [F2, F3])
def test_high_degree_triples_are_periodic(rng, spec):
    for _ in range(10):
        triple = random_canonical_triple(rng, spec, max_degree=6)
        result = hfrac_quadratic(triple)
        trace = result.triple_trace
        assert all(after.d() <= before.d() for before, after in zip(trace, trace[1:]))
        if result.fraction.is_periodic:
            assert trace[result.m + result.t] == trace[result.m]
        else:
            assert trace[-1].A.is_zero()


def test_super_one_fraction():
    triple, _ = EXAMPLE_TRIPLES['i.2']()
    result = super1_quadratic(triple)
    assert result.fraction.delta == 1
    assert result.fraction.is_periodic
    assert eval_hfrac_raw(result.fraction, 60) == example_series('i.2').prefix_raw(60)


def test_super_one_steps_keep_their_own_measure(poly):
    triple = QuadraticTriple(poly('1', F2), poly('1+x^4', F2), poly('x+x^5', F2), delta=1)
    result = hfrac_quadratic(triple)
    trace = result.triple_trace
    assert any(after.d() > before.d() for before, after in zip(trace, trace[1:]))
    assert all(after.measure() <= before.measure() for before, after in zip(trace, trace[1:]))
    assert result.fraction.delta == 1


def test_quadratic_delta_must_be_one_or_two(poly):
    with pytest.raises(InputError):
        dispatch_theorem11(poly('1', F2), poly('1+x^4', F2), poly('x+x^5', F2), delta=3)


def test_super_one_fraction_random(rng):
    for _ in range(10):
        t = random_canonical_triple(rng, F3, max_degree=3)
        result = super1_quadratic(t)
        root = QuadraticRootSeries(t.A, t.B, t.C, F3.neg(t.A.coefficient(0)))
        assert eval_hfrac_raw(result.fraction, 40) == root.prefix_raw(40)
