from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from binwaring.forms import BinaryForm
from binwaring.pencil import (DependentPencilError, discriminant_in_parameter, form_discriminant,
                              member, pencil_contains_hyperbolic, pencil_contains_real_rooted)
from binwaring.roots import is_hyperbolic, is_real_rooted

from helpers import X, Y, forms, to_sympy

P = BinaryForm.parse


def test_quadratic_pencil_example():
    dec = pencil_contains_hyperbolic(P("x^2+y^2"), P("x*y"))
    assert dec.found and dec.parameter == 3
    assert dec.witness == P("x^2+3xy+y^2")
    assert 3 ** 2 - 4 > 0  # discriminant t^2 - 4 of the member at t = 3


def test_one_real_root_pencil_is_empty():
    dec = pencil_contains_hyperbolic(P("x*(x^2+y^2)"), P("y*(x^2+y^2)"))
    assert not dec.found and dec.witness is None
    tr = dec.trace
    assert tr.samples and all(not s.hyperbolic for s in tr.samples)
    assert tr.samples[-1].t is None  # the member at infinity was tested too


def test_hyperbolic_first_member():
    dec = pencil_contains_hyperbolic(P("x^2-y^2"), P("x^2+3xy-7y^2"))
    assert dec.found and dec.parameter == 0


def test_x3_y3_pencil():
    dec = pencil_contains_hyperbolic(P("x^3"), P("y^3"))
    assert not dec.found


def test_dependent_pencil():
    with pytest.raises(DependentPencilError):
        pencil_contains_hyperbolic(P("x*y"), P("2x*y"))
    with pytest.raises(ValueError):
        pencil_contains_hyperbolic(P("x*y"), P("x"))


@given(forms(min_degree=2, max_degree=6))
def test_discriminant_vanishes_iff_repeated_root(f):
    # Euler: a repeated projective root is a common zero of both partials
    F = to_sympy(f)
    g = sympy.gcd(sympy.diff(F, X), sympy.diff(F, Y))
    repeated = g != 0 and sympy.Poly(g, X, Y).total_degree() > 0
    assert (form_discriminant(f) == 0) == repeated


def test_discriminant_in_parameter_interpolates():
    a, b = P("x^3-x*y^2"), P("x^2*y+y^3")
    disc = discriminant_in_parameter(a, b)
    for t in (Fraction(-3), Fraction(1, 2), Fraction(7)):
        assert sum(c * t**i for i, c in enumerate(disc)) == form_discriminant(member(a, b, t))


def _numeric_hyperbolic(desc: np.ndarray, d: int) -> bool:
    c = np.trim_zeros(desc, "f")  # each leading zero is a root at infinity
    if len(c) < d:
        return False
    r = np.roots(c)
    if np.any(np.abs(r.imag) > 1e-7):
        return False
    r = np.sort(r.real)
    return len(r) < 2 or float(np.min(np.diff(r))) > 1e-6


def _sampled_hyperbolic(a: BinaryForm, b: BinaryForm, n: int = 2000) -> bool:
    """Sample the pencil on the projective circle; confirm hits exactly."""
    A = np.array([float(c) for c in reversed(a.coeffs)])
    B = np.array([float(c) for c in reversed(b.coeffs)])
    for th in np.linspace(0, np.pi, n, endpoint=False):
        if not _numeric_hyperbolic(np.cos(th) * A + np.sin(th) * B, a.degree):
            continue
        t = Fraction(float(np.tan(th))).limit_denominator(10**6)
        if is_hyperbolic(member(a, b, t)).hyperbolic:
            return True
    return False


@given(forms(min_degree=2, max_degree=5), forms(min_degree=2, max_degree=5))
def test_decision_against_sampling(a, b):
    d = max(a.degree, b.degree)
    a, b = a * P("x+y") ** (d - a.degree), b * P("x-2y") ** (d - b.degree)
    try:
        dec = pencil_contains_hyperbolic(a, b)
    except DependentPencilError:
        return
    if dec.found:
        assert is_hyperbolic(dec.witness).hyperbolic
    else:
        assert not _sampled_hyperbolic(a, b)


# -- real-rooted members (repeats allowed) -------------------------------------


def test_weak_examples():
    assert pencil_contains_real_rooted(P("x^3"), P("y^3")).found
    assert not pencil_contains_real_rooted(P("x*(x^2+y^2)"), P("y*(x^2+y^2)")).found
    dec = pencil_contains_real_rooted(P("x^3+x*y^2"), P("x^2*y"))
    assert dec.found


def test_weak_multiple_discriminant_root():
    # x^3 + t y (x^2 + y^2) is real-rooted at t = 0 only through a triple root
    a, b = P("x^3"), P("y*(x^2+y^2)")
    dec = pencil_contains_real_rooted(a, b)
    assert dec.found and is_real_rooted(a)
    assert not dec.hyperbolic.found and not dec.infinity_real_rooted
    crit = dec.critical[0]
    assert crit.lo <= 0 <= crit.hi
    assert crit.distinct_real_roots == crit.distinct_roots == 1


@given(forms(min_degree=1, max_degree=4), st.fractions(-3, 3, max_denominator=2),
       st.integers(2, 3))
def test_weak_finds_planted_repeated_root(b, r, k):
    # the member a = (x - r y)^k * x^(d - k) is real-rooted but not hyperbolic
    d = max(b.degree, k)
    a = BinaryForm.from_roots([(r, 1)] * k) * P("x") ** (d - k)
    b = b * P("x-y") ** (d - b.degree)
    try:
        dec = pencil_contains_real_rooted(a, b)
    except DependentPencilError:
        return
    assert dec.found


@given(forms(min_degree=1, max_degree=3), forms(min_degree=1, max_degree=3))
def test_weak_rejects_definite_common_factor(a, b):
    if a.degree != b.degree:
        return
    q = P("x^2+x*y+y^2")
    try:
        dec = pencil_contains_real_rooted(a * q, b * q)
    except DependentPencilError:
        return
    assert not dec.found and not dec.common_factor_real_rooted
