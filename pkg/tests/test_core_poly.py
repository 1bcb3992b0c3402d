from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from binwaring import linalg, upoly
from binwaring.algebraic import RealAlgebraic, root_profile
from binwaring.forms import BinaryForm, FormSyntaxError, apply_apolar, parse_form, power_of_linear
from binwaring.roots import (ZeroFormError, count_distinct_real_roots, gcd_forms, is_hyperbolic,
                             isolate_real_roots, rational_roots, resultant)

from helpers import (X, Y, forms, linear_product, small_rats, sympy_apolar, sympy_hyperbolic,
                     sympy_real_root_count, to_sympy)

P = BinaryForm.parse


# -- arithmetic ----------------------------------------------------------------


def test_difference_of_squares():
    assert P("x+y") * P("x-y") == P("x^2-y^2")


def test_zero_product_keeps_degree():
    z = BinaryForm.zero(2) * P("x+y")
    assert z.is_zero() and z.degree == 3


def test_binomial_square():
    assert P("x+2y") * P("x+2y") == P("x^2+4xy+4y^2")


def test_coefficients_are_exact():
    with pytest.raises(TypeError):
        BinaryForm((0.5, 1))
    a = Fraction(7, 3)
    assert a * (1 / a) == 1


def test_parse_factored_syntax():
    assert parse_form("(x-2y)^3*(x+y)") == P("x-2y") ** 3 * P("x+y")
    assert parse_form("3/2 x y") == BinaryForm.of([0, Fraction(3, 2), 0])
    with pytest.raises(FormSyntaxError):
        parse_form("x^2 + y")
    with pytest.raises(FormSyntaxError):
        parse_form("x + z")


@given(forms(), forms())
def test_product_matches_sympy(f, g):
    prod = f * g
    assert prod.degree == f.degree + g.degree
    assert sympy.expand(to_sympy(prod) - to_sympy(f) * to_sympy(g)) == 0


# -- apolar operator -----------------------------------------------------------


def test_apolar_examples():
    assert apply_apolar(P("x-y"), P("(x+y)^3")).is_zero()
    assert apply_apolar(P("x"), P("x^2*y")) == P("2xy")
    assert apply_apolar(P("y^2"), P("x^2*y^2")) == P("2x^2")


def test_apolar_degree_too_large():
    with pytest.raises(ValueError):
        apply_apolar(P("x^3"), P("x^2"))


@given(forms(max_degree=3), forms(min_degree=4, max_degree=8))
def test_apolar_matches_literal_differentiation(h, f):
    assert apply_apolar(h, f) == sympy_apolar(h, f)


@given(st.data())
def test_composition_law(data):
    f = data.draw(forms(min_degree=2, max_degree=8))
    g = data.draw(forms(max_degree=f.degree // 2))
    h = data.draw(forms(max_degree=f.degree - g.degree))
    assert apply_apolar(g * h, f) == apply_apolar(g, apply_apolar(h, f))


# -- resultants ----------------------------------------------------------------


def test_resultant_examples():
    assert abs(resultant(P("x"), P("y"))) == 1
    assert resultant(P("x^2"), P("x*y")) == 0
    oracle = sympy.resultant(to_sympy(P("x^2+y^2")).subs(Y, 1), to_sympy(P("x^2-y^2")).subs(Y, 1), X)
    assert resultant(P("x^2+y^2"), P("x^2-y^2")) == Fraction(int(oracle))
    assert resultant(P("x^2+y^2"), P("x^2-y^2")) != 0


def test_resultant_of_zero_raises():
    with pytest.raises(ZeroFormError):
        resultant(BinaryForm.zero(2), P("x"))


@given(forms(max_degree=4), forms(max_degree=4), st.booleans())
def test_resultant_vanishes_iff_common_factor(p, q, share):
    if share:
        common = P("x - 2y")
        p, q = p * common, q * common
    oracle = sympy.gcd(to_sympy(p), to_sympy(q))
    has_common = sympy.Poly(oracle, X, Y).total_degree() > 0
    assert (resultant(p, q) == 0) == has_common
    assert (gcd_forms(p, q).degree > 0) == has_common


# -- real roots ----------------------------------------------------------------


def test_count_examples():
    assert count_distinct_real_roots(P("x^2-y^2")) == 2
    assert count_distinct_real_roots(P("x^2+y^2")) == 0
    assert count_distinct_real_roots(P("x^2*y")) == 2


def test_hyperbolic_examples():
    assert is_hyperbolic(P("x*y*(x-y)*(x+y)")).hyperbolic
    c = is_hyperbolic(P("x^2*y"))
    assert not c.hyperbolic and c.reason == "repeated_root"
    c = is_hyperbolic(P("x^3+y^3"))
    assert not c.hyperbolic and c.reason == "nonreal_roots"
    assert sympy.Poly(X**3 + 1).count_roots() == 1  # the Sturm-count oracle


def test_hyperbolic_certificate_counts_roots():
    c = is_hyperbolic(P("x*y*(x-y)*(x+y)"))
    assert c.isolation.count == 4
    assert len(c.isolation.intervals) + c.isolation.infinity_multiplicity == 4


def test_isolation_examples():
    iso = isolate_real_roots(P("x^2-2y^2"))
    assert len(iso.intervals) == 2 and iso.infinity_multiplicity == 0
    for lo, hi in iso.intervals:
        assert lo < hi and (lo * lo - 2) * (hi * hi - 2) < 0
    assert isolate_real_roots(P("x^2+y^2")).intervals == ()
    iso = isolate_real_roots(P("x*y"))
    assert len(iso.intervals) == 1 and iso.infinity_multiplicity == 1
    lo, hi = iso.intervals[0]
    assert lo <= 0 <= hi
    with pytest.raises(ValueError):
        isolate_real_roots(P("x^2*y"))


def test_zero_form_predicates_raise():
    for fn in (count_distinct_real_roots, is_hyperbolic, isolate_real_roots):
        with pytest.raises(ZeroFormError):
            fn(BinaryForm.zero(3))


@st.composite
def known_factorisations(draw):
    pts = draw(st.lists(small_rats, max_size=5, unique=True))
    q = draw(st.integers(0, 2))
    with_y = draw(st.booleans())
    repeat = bool(pts) and draw(st.booleans())
    f = linear_product([(t, 1) for t in pts]) * P("x^2+x*y+y^2") ** q
    if with_y:
        f = f * P("y")
    if repeat:
        f = f * linear_product([(pts[0], 1)])
    assume(f.degree > 0)
    return f, len(pts) + with_y, q == 0 and not repeat


@given(known_factorisations())
def test_sturm_soundness(case):
    f, expected, hyperbolic = case
    assert count_distinct_real_roots(f) == expected
    assert is_hyperbolic(f).hyperbolic == hyperbolic


@given(forms(max_degree=7))
def test_root_counts_match_sympy(f):
    assert count_distinct_real_roots(f) == sympy_real_root_count(f)
    assert is_hyperbolic(f).hyperbolic == sympy_hyperbolic(f)


def test_rational_roots():
    pts, irr = rational_roots(P("(2x-y)*(x^2-2y^2)*y"))
    assert sorted(pts) == [(1, 0), (1, 2)] and irr == 2


# -- univariate engine ---------------------------------------------------------


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=8))
def test_isolate_matches_sympy(cs):
    p = upoly.squarefree_part(cs)
    if len(p) <= 1:
        return
    ivs = upoly.isolate(p)
    assert len(ivs) == sympy.Poly(list(reversed(p)), X).count_roots()
    seq = upoly.sturm_sequence(p)
    for lo, hi in ivs:
        if lo == hi:
            assert upoly.evaluate(p, lo) == 0
        else:
            assert upoly.count_real_roots(seq, lo, hi) == 1
            nlo, nhi = upoly.refine(p, (lo, hi), Fraction(1, 1000))
            assert nhi - nlo <= Fraction(1, 1000) and lo <= nlo and nhi <= hi


@given(st.lists(st.fractions(max_denominator=5), min_size=1, max_size=6))
def test_interpolation_reproduces_values(ys):
    xs = [Fraction(i) for i in range(len(ys))]
    p = upoly.interpolate(xs, ys)
    assert all(upoly.evaluate(p, x) == y for x, y in zip(xs, ys))


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_linalg_matches_sympy(r, c, data):
    rows = [data.draw(st.lists(st.integers(-3, 3), min_size=c, max_size=c)) for _ in range(r)]
    M = sympy.Matrix(rows)
    assert linalg.rank(rows, c) == M.rank()
    for v in linalg.nullspace(rows, c):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
    assert len(linalg.nullspace(rows, c)) == c - M.rank()
    if r == c:
        assert linalg.determinant(rows) == Fraction(int(M.det()))


def test_solve_inconsistent():
    with pytest.raises(linalg.InconsistentSystem):
        linalg.solve([[1, 1], [2, 2]], [1, 3])


def test_power_of_linear():
    assert power_of_linear(1, 1, 3) == P("(x+y)^3")
    assert power_of_linear(2, -1, 2) == P("(2x-y)^2")


# -- real algebraic parameters -------------------------------------------------


def test_root_profile_at_sqrt_two():
    # tau = sqrt 2; u^2 - tau^2 = u^2 - 2 has two real roots, u^2 - tau u + 1 none
    tau = RealAlgebraic([-2, 0, 1], Fraction(1), Fraction(2))
    assert root_profile(tau, [[-2], [], [1]]) == (2, 2)
    assert root_profile(tau, [[1], [0, -1], [1]]) == (0, 2)
    # (u - tau)^2 = u^2 - 2 tau u + 2: one double root
    assert root_profile(tau, [[2], [0, -2], [1]]) == (1, 1)


def test_root_profile_against_sympy_oracle():
    rng = random.Random(5)
    tau = RealAlgebraic([-3, 0, 1], Fraction(1), Fraction(2))
    t = sympy.sqrt(3)
    for _ in range(30):
        coeffs = [[rng.randint(-3, 3), rng.randint(-3, 3)] for _ in range(4)]
        coeffs[-1] = [1, 0]
        if rng.random() < 0.3:  # force a repeated root at u = tau
            coeffs = [[3, 0], [0, -2], [1, 0]]
        poly = sympy.expand(sum((c[0] + c[1] * t) * X**i for i, c in enumerate(coeffs)))
        sqf = sympy.quo(poly, sympy.gcd(poly, sympy.diff(poly, X), extension=True), X,
                        extension=True)
        roots = sympy.Poly(sqf, X).nroots(n=40)
        real = sum(1 for r in roots if abs(sympy.im(r)) < 1e-30)
        assert root_profile(tau, [upoly.trim(c) for c in coeffs]) == (real, len(roots))
