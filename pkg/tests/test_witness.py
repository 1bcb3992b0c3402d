from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binwaring.apolarity import (annihilates, apolar_generators, apolar_graded_piece, in_ideal,
                                 is_generic_degrees)
from binwaring.forms import BinaryForm
from binwaring.rank import Rigor, real_rank_search, typicality_certificate
from binwaring.roots import is_hyperbolic, resultant
from binwaring.witness import (EVEN_GENERAL, EVEN_MINIMAL, ODD, admissible, admissible_pairs,
                               affine_points, atlas, base_attempt, base_degree,
                               induct_even_minimal, induct_odd, induction_step, make_base,
                               max_rank_base, minimal_rank_base, pencil_base, witness)

P = BinaryForm.parse


# -- point orders ----------------------------------------------------------------


def test_farey_order():
    from binwaring.witness import farey_points

    head = list(itertools.islice(farey_points(), 8))
    assert head == [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2)]
    pts = list(farey_points(2000))
    assert len(pts) == len(set(pts)) == 2000
    assert all(math.gcd(a, b) == 1 for a, b in pts)
    # projectively distinct: no point is the negative of another
    assert not any((-a, -b) in set(pts) for a, b in pts)
    heights = [max(abs(a), abs(b)) for a, b in pts]
    assert heights == sorted(heights)


def test_affine_points_order():
    head = list(itertools.islice(affine_points(), 7))
    assert head == [0, 1, -1, 2, Fraction(1, 2), -2, Fraction(-1, 2)]


def test_admissible_pairs():
    assert admissible_pairs(2) == [(2, 2)]
    assert len(admissible_pairs(5)) == 8
    assert len(admissible_pairs(10)) == 29
    assert not admissible(4, 2) and not admissible(1, 1) and admissible(4, 3)


# -- bases ---------------------------------------------------------------------


@pytest.mark.parametrize("m, level", [(2, Rigor.EXACT), (3, Rigor.EXACT), (4, Rigor.EXACT),
                                      (5, Rigor.THEOREM_BACKED)])
def test_max_rank_base(m, level):
    b = max_rank_base(m)
    assert b.form.degree == m and b.level is level
    assert b.witness.degree == m and is_hyperbolic(b.witness).hyperbolic
    assert annihilates(b.witness, b.form)
    if level is Rigor.EXACT:
        assert real_rank_search(b.form).rank == m


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_minimal_rank_base(m):
    b = minimal_rank_base(m)
    assert b.form.degree == 2 * m - 2 and b.level is Rigor.EXACT
    assert is_generic_degrees(b.form)
    c = real_rank_search(b.form, hints=(b.witness,))
    assert c.rank == m
    assert typicality_certificate(b.form, c).typical


def test_pencil_base():
    b = pencil_base(5)
    assert b.form.degree == 6 and b.level is Rigor.EXACT and b.lower_dimension == 2
    assert real_rank_search(b.form, hints=(b.witness,)).rank == 5


def test_base_attempt_is_deterministic():
    b = make_base("pencil", 5, 6, seed=3)
    again = base_attempt("pencil", 5, 6, 3, b.attempt)
    assert again == b
    with pytest.raises(ValueError):
        make_base("no-such-kind", 3, 3)


def test_base_degree_policy():
    assert base_degree(4, 3) == ("minimal_rank", 4)
    assert base_degree(5, 4) == ("max_rank", 4)
    assert base_degree(7, 5) == ("pencil", 6)
    assert base_degree(7, 7) == ("max_rank", 7)


# -- induction steps -----------------------------------------------------------


def test_even_minimal_step_from_xy():
    f, s = P("x*y"), P("x^2-y^2")
    step = induct_even_minimal(f, 2, s)
    assert step.case == EVEN_MINIMAL and step.g.degree == 3
    assert apolar_generators(step.g).degrees == (2, 3)
    assert real_rank_search(step.g).rank == 2


def test_even_minimal_skips_roots_of_s():
    # c = 1 is a root of s = x^2 - y^2, so the next candidate is used
    step = induct_even_minimal(P("x*y"), 2, P("x^2-y^2"), cs=[1, 3])
    assert step.point == (3, 1)


def test_even_general_alpha_paths():
    _, chain = witness(3, 2)
    assert chain.steps[0].case == EVEN_MINIMAL
    _, chain = witness(5, 4)
    st_ = chain.steps[0]
    assert st_.case == EVEN_GENERAL and st_.alpha != 0
    a, b = st_.point
    # q2 - alpha q1 vanishes at the chosen point
    assert (st_.q2 - st_.q1.scale(st_.alpha))(a, b) == 0
    _, chain = witness(7, 5)
    assert chain.steps[0].case == EVEN_GENERAL and chain.steps[0].alpha == 0


def test_odd_step_with_rational_root():
    f = P("x^3+y^3")
    p2 = apolar_generators(f).g2
    s = P("x*y*(x-2y)") + p2.scale(Fraction(1, 100))
    step = induct_odd(f, 3, s)
    assert step.case == ODD and step.ell_hat.is_zero() and step.point == (2, 1)
    assert step.shift == 0


def test_odd_step_nudges_s_off_p1():
    # s = x y (x - y) is a multiple of p1 = x y, so it must be tilted first
    step = induct_odd(P("x^3+y^3"), 3, P("x*y*(x-y)"))
    assert step.shift > 0 and step.s != step.s_in
    assert is_hyperbolic(step.s).hyperbolic and not step.q2.is_zero()


def test_odd_step_with_linear_correction():
    _, chain = witness(8, 7)
    assert chain.steps[0].case == ODD and not chain.steps[0].ell_hat.is_zero()


def test_step_input_validation():
    with pytest.raises(ValueError):
        induct_even_minimal(P("x^3"), 2, P("x^2-y^2"))
    with pytest.raises(ValueError):
        induct_even_minimal(P("x*y"), 2, P("x^2+y^2"))  # not hyperbolic
    with pytest.raises(ValueError):
        induct_odd(P("x^2*y"), 2, P("x^2-y^2"))


def _check_step(step, m):
    f, g = step.f, step.g
    assert g.degree == f.degree + 1
    assert sorted((step.out1.degree, step.out2.degree)) == list(apolar_generators(g).degrees)
    assert is_generic_degrees(g)
    assert resultant(step.out1, step.out2) == step.resultant != 0
    assert annihilates(step.out1, f) and annihilates(step.out2, f)
    assert in_ideal(step.s, step.out1, step.out2) and is_hyperbolic(step.s).hyperbolic
    assert all(annihilates(h, f) for h in apolar_graded_piece(g, m - 1).basis)


@pytest.mark.parametrize("d, m", [(5, 4), (7, 4), (7, 5), (8, 7), (9, 6)])
def test_chain_steps(d, m):
    g, chain = witness(d, m)
    assert g.degree == d and chain.form == g
    for step in chain.steps:
        _check_step(step, m)
    assert chain.rank.rank == m and chain.typicality.typical


def test_witness_5_4():
    g, chain = witness(5, 4)
    assert apolar_generators(g).degrees == (3, 4)
    assert chain.rigor is Rigor.EXACT


def test_witness_7_4_is_exact():
    _, chain = witness(7, 4)
    assert chain.rigor is Rigor.EXACT
    assert chain.base.level is chain.lower_level is chain.typicality_level is Rigor.EXACT


@given(st.sampled_from(admissible_pairs(6)), st.integers(0, 3))
def test_witness_is_deterministic(pair, seed):
    d, m = pair
    a, ca = witness(d, m, seed)
    b, cb = witness(d, m, seed)
    assert a == b and ca.base.attempt == cb.base.attempt
    assert ca.rank.rank == m


def test_witness_rejects_inadmissible():
    with pytest.raises(ValueError):
        witness(6, 2)
    with pytest.raises(ValueError):
        witness(3, 4)


def test_induction_step_dispatch():
    for (d, m), case in [((4, 3), EVEN_MINIMAL), ((4, 4), EVEN_GENERAL), ((3, 3), ODD)]:
        _, chain = witness(d, m)
        assert induction_step(chain.form, m, chain.witness).case == case


def test_small_atlases():
    assert [(c.d, c.m) for c in atlas(2).chains] == [(2, 2)]
    a = atlas(5)
    assert len(a.chains) == 8
    assert a.summary() == {"EXACT": 7, "THEOREM_BACKED": 1, "EMPIRICAL": 0}
    with pytest.raises(ValueError):
        atlas(1)
