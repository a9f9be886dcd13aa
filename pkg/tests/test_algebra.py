import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscrep.algebra import (
    AlgebraSpec,
    DeformationChain,
    brute_force_structure,
    chain_extend,
    commutator_transform,
    solve_structure,
)
from oscrep.errors import DomainError
from oscrep.exppoly import ExpPolynomial, parse_exppoly

BASES = [Fraction(b) for b in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3)]


def recurrence(f, q, n):
    """F(0) = 0, F(k+1) = q F(k) + f(k), iterated."""
    F = Fraction(0)
    for k in range(n):
        F = q * F + f(k)
    return F


@st.composite
def problems(draw):
    terms = draw(
        st.lists(
            st.tuples(
                st.fractions(-9, 9, max_denominator=5).filter(lambda c: c != 0),
                st.sampled_from(BASES),
                st.integers(0, 3),
            ),
            min_size=1,
            max_size=4,
        )
    )
    f = ExpPolynomial(terms)
    # bias q onto the bases of f to exercise resonance
    q = draw(st.sampled_from(BASES + [b for _, b, _ in terms] * 2))
    return f, q


@settings(max_examples=150, deadline=None)
@given(problems())
def test_solver_matches_recurrence(problem):
    f, q = problem
    F = solve_structure(f, q)
    assert F(0) == 0
    for n in range(16):
        assert F(n) == recurrence(f, q, n) == brute_force_structure(f, q, n)
    assert F.shift(1) - F * q == f


@pytest.mark.parametrize(
    "f, q, n, expected",
    [
        ("1", 1, 5, 5),
        ("1", 2, 3, 7),
        ("1", 3, 4, 40),
        ("(1/2)^n", Fraction(1, 2), 4, Fraction(1, 2)),
        ("2^n", 1, 3, 7),
    ],
)
def test_known_structure_values(f, q, n, expected):
    assert solve_structure(parse_exppoly(f), Fraction(q))(n) == expected


def test_resonance_lifts_degree():
    q = Fraction(1, 2)
    F = solve_structure(ExpPolynomial.exponential(q), q)
    assert F == ExpPolynomial([(2, q, 1)])  # n q^(n-1)


def test_float_structure():
    F = solve_structure(ExpPolynomial.constant(1.0), 2.0)
    assert F(10) == pytest.approx(1023.0, rel=1e-14)


def test_zero_q_rejected():
    with pytest.raises(DomainError):
        solve_structure(ExpPolynomial.constant(1), 0)
    with pytest.raises(DomainError):
        AlgebraSpec(0, ExpPolynomial.constant(1))


def test_brute_force_rejects_negative_n():
    with pytest.raises(ValueError):
        brute_force_structure(ExpPolynomial.constant(1), 2, -1)


def test_spec_normalises_and_caches():
    spec = AlgebraSpec(2, ExpPolynomial.constant(1))
    assert spec.q == Fraction(2) and spec.mode == "exact"
    assert spec.F is spec.F
    assert spec.coerce("float").mode == "float"
    lam = spec.casimir_poly(Fraction(0))
    assert lam == spec.F


def test_commutator_transform():
    F = parse_exppoly("n*3^n + n^2")
    d = commutator_transform(F)
    for n in range(-3, 4):
        assert d(n) == F(n + 1) - F(n)


def test_chain_steps():
    chain = DeformationChain.start(ExpPolynomial.constant(1))
    assert chain.F(0) == ExpPolynomial.monomial(1)
    chain = chain_extend(chain, Fraction(3))
    assert chain.F(1)(4) == 40
    assert chain.f(1) == ExpPolynomial.exponential(3)
    assert chain.commutator_algebra(1).q == 1
    assert chain.quommutator_algebra(0).q == 3
    with pytest.raises(DomainError):
        chain_extend(chain, 0)


def test_random_chains_stay_consistent():
    rng = random.Random(11)
    for _ in range(20):
        chain = DeformationChain.start(ExpPolynomial.constant(1))
        for _ in range(3):
            chain = chain_extend(chain, Fraction(rng.choice([-3, -2, -1, 2, 3]), rng.choice([1, 2])))
        for k in range(chain.depth + 1):
            assert chain.F(k)(0) == 0
            assert commutator_transform(chain.F(k)) == chain.f(k)
        for k in range(chain.depth):
            # F_(k+1) solves the quommutator recurrence driven by f_k
            q = chain.steps[k]
            assert chain.F(k + 1).shift(1) - chain.F(k + 1) * q == chain.f(k)
