from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from biquadsq.arith import sqrt_mod_p, v_p
from biquadsq.quad import (
    QuadElem,
    conj,
    norm,
    quad_sqrt,
    splitting_type,
    val_ramified,
    val_ramified_closed_form,
    val_split,
)
from ideal_oracle import Ring, prime_ideal, valuations


def test_conj_norm_examples():
    assert conj(QuadElem(2, 1, 1)) == QuadElem(2, 1, -1)
    assert conj(QuadElem(2, 5)) == QuadElem(2, 5)
    assert norm(QuadElem(2, 3, 1)) == 7
    assert norm(QuadElem(3, 0, 1)) == -3
    assert norm(QuadElem(5, 1)) == 1


def test_splitting_examples():
    t = splitting_type(2, 7)
    assert t.kind == "split" and t.root == 3
    assert splitting_type(3, 3).kind == "ramified"
    assert splitting_type(5, 7).kind == "inert"


def test_val_split_examples():
    r = QuadElem(2, 3, 1)
    assert val_split(r, 7, 4) == 1
    assert val_split(r, 7, 3) == 0
    assert val_split(QuadElem(2, 7), 7, 3) == val_split(QuadElem(2, 7), 7, 4) == 1
    with pytest.raises(ValueError):
        val_split(r, 7, 2)


def test_val_split_rational_coordinates():
    r = QuadElem(2, Fraction(3, 7), Fraction(1, 7))
    assert val_split(r, 7, 4) == 0 and val_split(r, 7, 3) == -1


def test_val_ramified_examples():
    assert val_ramified(QuadElem(3, 0, 1), 3) == 1
    assert val_ramified(QuadElem(3, 3), 3) == 2
    assert val_ramified(QuadElem(3, 1, 1), 3) == 0


def test_closed_form_disagrees_on_p():
    # the content-corrected closed form gives v(3) = 1, the prime-ideal count is 2
    r = QuadElem(3, 3)
    assert val_ramified_closed_form(r, 3) == 1
    R = Ring(3)
    assert int(valuations(R, prime_ideal(R, 3), [3], [0])[0]) == 2 == val_ramified(r, 3)


nonzero_pairs = st.tuples(st.integers(-60, 60), st.integers(-60, 60)).filter(any)


@given(nonzero_pairs, nonzero_pairs, st.sampled_from([(2, 7), (2, 23), (-1, 5), (3, 11), (-7, 11)]))
@settings(max_examples=150)
def test_val_split_additive_and_exhaustive(r, s, dp):
    d, p = dp
    A = sqrt_mod_p(d, p)
    x, y = QuadElem(d, *r), QuadElem(d, *s)
    for root in (A, p - A):
        assert val_split(x * y, p, root) == val_split(x, p, root) + val_split(y, p, root)
    assert val_split(x, p, A) + val_split(x, p, p - A) == v_p(x.norm(), p)


@given(nonzero_pairs, nonzero_pairs, st.sampled_from([(3, 3), (-3, 3), (7, 7), (21, 7), (-15, 5)]))
@settings(max_examples=150)
def test_val_ramified_additive(r, s, dp):
    d, p = dp
    x, y = QuadElem(d, *r), QuadElem(d, *s)
    assert val_ramified(x * y, p) == val_ramified(x, p) + val_ramified(y, p)


def _grid(bound):
    xs, ys = np.meshgrid(np.arange(-bound, bound + 1), np.arange(-bound, bound + 1))
    keep = (xs != 0) | (ys != 0)
    return [int(v) for v in xs[keep]], [int(v) for v in ys[keep]]


@pytest.mark.parametrize("d,p", [(2, 7), (2, 17), (-1, 5), (3, 13), (-7, 11), (5, 11), (-3, 7)])
def test_val_split_matches_ideal_oracle(d, p):
    R = Ring(d)
    xs, ys = _grid(40)
    A = sqrt_mod_p(d, p)
    for root in (A, p - A):
        want = valuations(R, prime_ideal(R, p, root), xs, ys)
        got = [val_split(QuadElem(d, x, y), p, root) for x, y in zip(xs, ys)]
        assert got == list(want)


@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from([2, 3, -1, 5, -7, 6, -15]))
def test_quad_sqrt(x, y, d):
    r = QuadElem(d, x, y)
    s = quad_sqrt(r * r)
    assert s is not None and s * s == r * r
    root = quad_sqrt(r)
    if root is not None:
        assert root * root == r
