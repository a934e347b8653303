import random

import pytest
from hypothesis import given, settings, strategies as st

from biquadsq.biquad import make_field
from biquadsq.dyadic import (
    COMPLETELY_SPLIT,
    ONE_PLACE,
    SPLIT_INERT,
    SPLIT_RAMIFIED,
    Zsqrt5Residue,
    dyadic_case,
    dyadic_crosscheck,
    dyadic_test,
    e_approx,
    embedding_images,
    find_A,
    place_signs,
    ramified_dyadic_test,
    substitute_residue,
    unit_is_sum_q2,
    unit_is_sum_q2sqrt5,
)
from biquadsq.errors import NotApplicable
from worked_examples import ALL, element


def test_cases():
    assert dyadic_case(make_field(2, 3)).kind == ONE_PLACE
    c = dyadic_case(make_field(-3, 5))
    assert c.kind == SPLIT_INERT and c.radicands(make_field(-3, 5))[0] == -15
    assert dyadic_case(make_field(-7, 17)).kind == COMPLETELY_SPLIT
    assert dyadic_case(make_field(17, 3)).kind == SPLIT_RAMIFIED


def test_e_examples():
    assert e_approx(17) == 23
    assert e_approx(-7) == 53
    r5 = e_approx(5)
    assert isinstance(r5, Zsqrt5Residue) and (r5.u, r5.v) == (0, 1)
    assert e_approx(-3).v % 16 == 5
    with pytest.raises(NotApplicable):
        e_approx(3)


def _square_of(e, k):
    if isinstance(e, Zsqrt5Residue):
        return e * e
    return Zsqrt5Residue(e * e, 0, k)


@given(st.integers(-5000, 5000).map(lambda t: 4 * t + 1), st.sampled_from([8, 12, 16, 24]))
@settings(max_examples=200)
def test_e_squares_to_N(N, k):
    sq = _square_of(e_approx(N, k), k)
    m = 1 << (k - 1)
    assert (sq.x - N) % m == 0 and sq.y % m == 0


@given(st.sampled_from([17, -7, 5, 13, 21, 29, -3, 33, 41]), st.integers(1, 9).map(lambda s: 2 * s - 1))
def test_e_square_part(W, s):
    k = 12
    m = 1 << (k - 1)
    lhs, rhs = e_approx(s * s * W, k), e_approx(W, k)
    if isinstance(rhs, Zsqrt5Residue):
        assert (lhs.x - s * rhs.x) % m == 0 and (lhs.y - s * rhs.y) % m == 0
    else:
        assert (lhs - s * rhs) % m == 0


def test_find_A_inert_example():
    F = make_field(-3, 5)
    c = dyadic_case(F)
    assert find_A(F, c.roles, e_approx(-3), e_approx(5)) == 9


def test_find_A_sign_matters():
    # sqrt17 * sqrt(-119) = -7 sqrt(-7) in this basis, so dropping the sign of
    # the coefficient gives 23 = -9 mod 16, which is not a ring homomorphism
    F = make_field(-7, 17)
    roles = (2, 1, 3)  # sqrt17 distinguished
    assert F.basis_product(1, 3) == (-7, 2)
    eb, ec = e_approx(-7), e_approx(-119)
    A = find_A(F, roles, eb, ec)
    assert A == (-(eb * ec) * pow(7, -1, 16)) % 16
    assert (A + 23) % 16 == 0 and (23 * 23 - 17) % 16 == 0


@pytest.mark.parametrize("ab", [(-3, 5), (-7, 17), (5, 13), (-15, 17), (21, 33), (-11, 5), (17, 33)])
@pytest.mark.parametrize("k", [8, 16])
def test_embedding_is_ring_map(ab, k):
    F = make_field(*ab)
    c = dyadic_case(F)
    if c.kind not in (SPLIT_INERT, COMPLETELY_SPLIT):
        pytest.skip("no substitution")
    m = 1 << (k - 1)
    for signs in place_signs(c):
        im = embedding_images(F, c, k, signs)
        for i in (1, 2, 3):
            sq = im[i] * im[i]
            assert (sq.x - F.radicand(i)) % m == 0 and sq.y % m == 0
        for i, j in ((1, 2), (1, 3), (2, 3)):
            coef, l = F.basis_product(i, j)
            prod, want = im[i] * im[j], im[l] * coef
            assert (prod.x - want.x) % m == 0 and (prod.y - want.y) % m == 0


def test_substitution_examples():
    F = make_field(-7, 17)
    c = dyadic_case(F)
    r = substitute_residue(element(ALL["split"]), c)
    assert r.f == 0 and (r.residue + 775) % 128 == 0 and -775 % 8 == 1
    assert substitute_residue(F.one(), c).residue == 1
    F = make_field(-3, 5)
    c = dyadic_case(F)
    r = substitute_residue(element(ALL["inert"]), c)
    target = Zsqrt5Residue.from_uv(-1, 2, r.unit.k)  # 2 sqrt5 - 1
    assert r.f == 0 and r.unit.mod4() == target.mod4() == (1, 0)


def test_unit_tests_q2():
    assert unit_is_sum_q2(-775) and unit_is_sum_q2(1) and not unit_is_sum_q2(3)


def test_unit_tests_q2sqrt5_examples():
    k = 8
    assert unit_is_sum_q2sqrt5(Zsqrt5Residue.from_uv(-1, 2, k))
    assert unit_is_sum_q2sqrt5(Zsqrt5Residue(3, 0, k))
    assert unit_is_sum_q2sqrt5(Zsqrt5Residue.from_uv(3, 2, k))


def test_unit_classes_match_norm_criterion():
    # a unit h of Q_2(sqrt5) is a sum of two squares iff (-1, N h)_2 = 1
    for x in range(8):
        for y in range(8):
            h = Zsqrt5Residue(x, y, 3)
            if h.norm() % 2:
                assert unit_is_sum_q2sqrt5(h) == (h.norm() % 4 == 1)


def test_ramified_examples():
    F = make_field(17, 3)
    assert ramified_dyadic_test(F.one()) == (True, 0)
    assert ramified_dyadic_test(F.elem(2)) == (True, 1)


def test_ramified_integrality_form_rejects_a_sum():
    # -2 - 2 sqrt(-7) - 2 sqrt3 = (1 - sqrt3)^2 + (1 - sqrt(-7))^2
    F = make_field(-7, 3)
    S = F.elem(-2, -2, -2, 0)
    x, y = F.elem(1, 0, -1), F.elem(1, -1)
    assert x * x + y * y == S
    assert dyadic_case(F).kind == SPLIT_RAMIFIED
    assert ramified_dyadic_test(F.elem(-1, -1, -1, 0)) == (False, 0)
    assert dyadic_crosscheck(S) == [1, 1]
    assert dyadic_test(F.elem(-1, -1, -1, 0), 1).data["literal"]["pass"] is False


def test_dyadic_test_examples():
    for key, kind in (("real", ONE_PLACE), ("inert", SPLIT_INERT), ("split", COMPLETELY_SPLIT)):
        c = dyadic_test(element(ALL[key]))
        assert c.passed and c.data["case"] == kind
        assert not c.data.get("divergence")


def test_crosscheck_examples():
    assert dyadic_crosscheck(element(ALL["split"])) == [1, 1, 1, 1]
    assert dyadic_crosscheck(element(ALL["inert"])) == [1, 1]
    with pytest.raises(ValueError):
        dyadic_crosscheck(element(ALL["split"]), k=8)


def test_single_substitution_divergence():
    F = make_field(-7, 17)
    S = F.elem(0, 0, -1, 0)  # -sqrt17
    assert dyadic_crosscheck(S) == [-1, 1, -1, 1]
    literal = dyadic_test(S, mode="literal")
    sound = dyadic_test(S)
    assert literal.passed and not sound.passed and sound.data["divergence"]


FIELDS = [(-7, 17), (-3, 5), (17, 3), (17, -1), (-7, 3), (5, 13), (-15, 17), (21, 33), (2, 3), (-1, 2)]


def _elements(F, n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        s = [rng.randint(-9, 9) for _ in range(4)]
        if any(s):
            out.append(F.elem(*s))
    return out


@pytest.mark.parametrize("ab", FIELDS)
def test_precision_stability_and_agreement(ab):
    F = make_field(*ab)
    for S in _elements(F, 40, sum(ab)):
        sym = dyadic_crosscheck(S)
        assert dyadic_crosscheck(S, k=24) == sym
        if S.is_primitive() and dyadic_case(F).kind != ONE_PLACE:
            assert dyadic_test(S).passed == all(s == 1 for s in sym)


@pytest.mark.parametrize("ab", FIELDS)
def test_sums_of_squares_have_trivial_symbols(ab):
    F = make_field(*ab)
    xs = _elements(F, 30, 7)
    for x, y in zip(xs, xs[1:]):
        S = x * x + y * y
        if S:
            assert all(s == 1 for s in dyadic_crosscheck(S))
