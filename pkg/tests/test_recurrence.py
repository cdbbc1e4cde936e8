import json
import random
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from pvseq.algebra import RatFunc
from pvseq.recurrence import (Equation, InsufficientData, InvalidEquation, LinSystem, SingularSystem,
                              companion_matrix, guess_recurrence, holdout_size, is_bell_case_equation,
                              is_bell_case_system)
from pvseq.sequences import solve_equation

from generators import random_bell_equation, random_rational_system, random_unimodular

FIB = Equation.parse(["-1", "-1"])


def test_equation_rejects_zero_h0():
    with pytest.raises(InvalidEquation):
        Equation.parse(["0", "1"])


def test_companion_fibonacci():
    A = companion_matrix(FIB)
    assert A.A == ((RatFunc(0), RatFunc(1)), (RatFunc(1), RatFunc(1)))
    assert A.det() == RatFunc(-1)


def test_companion_det_is_signed_h0():
    E = Equation.parse(["z+1", "z^2", "3"])
    assert companion_matrix(E).det() == RatFunc.parse("-(z+1)")  # (-1)^n h_0 with n = 3


def test_companion_order_one():
    E = Equation.parse(["-(z+1)"])
    assert companion_matrix(E).A == ((RatFunc.parse("z+1"),),)


def test_singular_system_rejected():
    with pytest.raises(SingularSystem):
        LinSystem(((RatFunc(1), RatFunc(2)), (RatFunc(2), RatFunc(4))))


def test_bell_case():
    assert is_bell_case_equation(FIB)
    assert is_bell_case_equation(Equation.parse(["2", "z^3 - z"]))
    assert not is_bell_case_equation(Equation.parse(["z", "1"]))
    assert not is_bell_case_equation(Equation.parse(["1", "1/z"]))
    assert is_bell_case_system(companion_matrix(FIB))
    assert not is_bell_case_system(LinSystem(((RatFunc.parse("z"),),)))


def test_bell_equation_gives_bell_companion():
    rng = random.Random(3)
    for _ in range(20):
        E = random_bell_equation(rng, rng.randint(1, 4), 3)
        assert is_bell_case_system(companion_matrix(E))


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_companion_det_matches_sympy(seed):
    rng = random.Random(seed)
    A = random_rational_system(rng, rng.randint(1, 3))
    M = sympy.Matrix([[sympy.sympify(str(h).replace("^", "**")) for h in row] for row in A.A])
    assert sympy.simplify(M.det() - sympy.sympify(str(A.det()).replace("^", "**"))) == 0


def test_json_round_trips():
    E = Equation.parse(["-(z+1)", "(z^2+1)/(z-3)"])
    assert Equation.from_json(json.loads(json.dumps(E.to_json()))) == E
    A = LinSystem(((RatFunc.parse("z"), RatFunc(1)), (RatFunc(1), RatFunc(0))))
    assert LinSystem.from_json(json.loads(json.dumps(A.to_json()))) == A
    with pytest.raises(InvalidEquation):
        Equation.from_json({"order": 3, "coeffs": ["1", "2"]})


def test_guess_fibonacci():
    f = solve_equation(FIB, [0, 1], horizon=60)
    assert guess_recurrence(f.values, 3, 2) == FIB


def test_guess_factorial():
    vals = [factorial(i) for i in range(40)]
    assert guess_recurrence(vals, 3, 2) == Equation.parse(["-(z+1)"])


def test_guess_returns_none_without_fit():
    rng = random.Random(11)
    vals = [rng.randint(-10**6, 10**6) for _ in range(80)]
    assert guess_recurrence(vals, 2, 1) is None


def test_guess_insufficient_data():
    with pytest.raises(InsufficientData):
        guess_recurrence([1, 1, 2, 3, 5], 2, 1)


def test_holdout_size():
    assert holdout_size(1, 1) == 10
    assert holdout_size(4, 6) == 20


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10_000))
def test_guess_recovers_random_bell_equation(seed):
    rng = random.Random(seed)
    E = random_bell_equation(rng, 2, 1)
    init = [rng.randint(-3, 3) for _ in range(2)]
    if not any(init):
        init[0] = 1
    f = solve_equation(E, init, horizon=80)
    G = guess_recurrence(f.values, 2, 1)
    assert G is not None
    assert G.order <= E.order
    # the guessed relation generates the same data from the same start
    g = solve_equation(G, f.values[:G.order], horizon=80)
    assert g.values == f.values


def test_unimodular_generator_is_bell():
    rng = random.Random(5)
    for _ in range(10):
        A = random_unimodular(rng, rng.randint(1, 4), 2)
        assert is_bell_case_system(A)
        assert A.det().is_constant()
