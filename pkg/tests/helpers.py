"""Shared strategies and independent oracles (sympy) for the test-suite."""

from __future__ import annotations

import copy
import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from binwaring.forms import BinaryForm

X, Y = sympy.symbols("x y")

small_rats = st.fractions(min_value=-9, max_value=9, max_denominator=4)


@st.composite
def forms(draw, min_degree=1, max_degree=6, nonzero=True):
    d = draw(st.integers(min_degree, max_degree))
    cs = draw(st.lists(small_rats, min_size=d + 1, max_size=d + 1))
    if nonzero and not any(cs):
        cs[draw(st.integers(0, d))] = Fraction(1)
    return BinaryForm(tuple(cs))


def random_form(rng: random.Random, d: int, lo: int = -9, hi: int = 9) -> BinaryForm:
    while True:
        f = BinaryForm(tuple(Fraction(rng.randint(lo, hi)) for _ in range(d + 1)))
        if not f.is_zero():
            return f


def to_sympy(f: BinaryForm):
    d = f.degree
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i * Y**(d - i)
               for i, c in enumerate(f.coeffs))


def sympy_real_root_count(f: BinaryForm) -> int:
    """Distinct real projective roots, via sympy factorisation."""
    d = f.degree
    fin = sympy.Poly(to_sympy(f).subs(Y, 1), X) if d else None
    n = len(set(sympy.real_roots(fin))) if fin is not None and fin.degree() > 0 else 0
    at_inf = fin is None or fin.degree() < d
    return n + (1 if at_inf else 0)


def sympy_hyperbolic(f: BinaryForm) -> bool:
    d = f.degree
    fin = sympy.Poly(to_sympy(f).subs(Y, 1), X)
    inf = d - fin.degree()
    if inf > 1:
        return False
    roots = sympy.real_roots(fin)
    return len(roots) == fin.degree() and len(set(roots)) == len(roots)


def sympy_apolar(h: BinaryForm, f: BinaryForm) -> BinaryForm:
    """Apply the operator of h to f by literal differentiation."""
    e, d = h.degree, f.degree
    F = to_sympy(f)
    out = 0
    for j, b in enumerate(h.coeffs):
        if b:
            out += sympy.Rational(b.numerator, b.denominator) * sympy.diff(F, X, j, Y, e - j)
    return from_sympy(out, d - e)


def from_sympy(expr, d: int) -> BinaryForm:
    cs = [Fraction(0)] * (d + 1)
    expr = sympy.expand(expr)
    if expr != 0:
        for (i, _), c in sympy.Poly(expr, X, Y).terms():
            cs[i] = Fraction(int(c.p), int(c.q))
    return BinaryForm(tuple(cs))


def linear_product(points) -> BinaryForm:
    return BinaryForm.from_roots(points)


# -- document mutation -----------------------------------------------------------


def leaves(node, path=()):
    """Paths to every scalar in a JSON tree."""
    if isinstance(node, dict):
        for k, v in node.items():
            yield from leaves(v, path + (k,))
    elif isinstance(node, list):
        for i, v in enumerate(node):
            yield from leaves(v, path + (i,))
    else:
        yield path


def mutate_value(v):
    """One deterministic single-field edit: rationals +1, ints +1, bools negated, strings +'x'."""
    if isinstance(v, bool):
        return not v
    if isinstance(v, int):
        return v + 1
    if isinstance(v, str):
        try:
            x = Fraction(v) + 1
        except (ValueError, ZeroDivisionError):
            return v + "x"
        return f"{x.numerator}/{x.denominator}" if "/" in v else v + "x"
    if v is None:
        return "0/1"
    raise TypeError(type(v))


def mutated(doc, path):
    out = copy.deepcopy(doc)
    node = out
    for k in path[:-1]:
        node = node[k]
    node[path[-1]] = mutate_value(node[path[-1]])
    return out
