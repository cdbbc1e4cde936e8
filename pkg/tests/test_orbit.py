import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pvseq.algebra import RatFunc
from pvseq.linalg import identity, mat_mul
from pvseq.orbit import (OrbitState, RegularFunction, Subvariety, UndefinedOrbit, evaluate_along_orbit,
                         evaluate_regular, orbit_defined_prefix, orbit_membership_set, orbit_step,
                         orbit_trace, parse_regular, rebase_problem, sigma_action)
from pvseq.recurrence import Equation, LinSystem, companion_matrix
from pvseq.sequences import seq_shift, start_index

from generators import random_rational_system, random_regular, random_unimodular

FIBA = companion_matrix(Equation.parse(["-1", "-1"]))
R = lambda text: parse_regular(text, 2)


def test_sigma_examples():
    assert sigma_action(R("Z[1][1]"), FIBA) == R("Z[2][1]")
    assert sigma_action(RegularFunction.det(2), FIBA) == -RegularFunction.det(2)
    assert sigma_action(RegularFunction.z(2), FIBA) == RegularFunction.z(2) + 1
    assert sigma_action(R("detZ^-1"), FIBA) == -R("detZ^-1")


def test_psi_fibonacci():
    x = OrbitState.identity_at(0, 2)
    psi = evaluate_along_orbit(R("Z[1][1]"), FIBA, x, 12)
    assert [int(v) for v in psi.values] == [1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_membership_examples():
    x = OrbitState.identity_at(0, 2)
    odd = orbit_membership_set(FIBA, x, Subvariety((R("detZ + 1"),)), 40)
    assert odd == set(range(1, 41, 2))
    assert orbit_membership_set(FIBA, x, Subvariety((R("Z[1][1]"),)), 40) == {1}


def test_defined_prefix_examples():
    A = LinSystem(((RatFunc.parse("(z-4)/(z-5)"),),))
    assert orbit_defined_prefix(A, OrbitState.identity_at(0, 1), 30) == 3
    assert orbit_defined_prefix(A, OrbitState.identity_at(6, 1), 30) == 30
    with pytest.raises(UndefinedOrbit) as exc:
        orbit_trace(A, OrbitState.identity_at(0, 1), 30)
    assert exc.value.index == 4


def test_state_must_be_invertible():
    with pytest.raises(ValueError):
        OrbitState(0, ((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))))


def test_canonical_forms():
    assert R("Z[1][1]*Z[2][2] - Z[1][2]*Z[2][1]") == RegularFunction.det(2)
    assert R("detZ * detZ^-1") == RegularFunction.const(2, 1)
    assert R("(Z[1][1]*Z[2][2] - Z[1][2]*Z[2][1]) * Z[1][1] * detZ^-2") == R("Z[1][1]*detZ^-1")
    assert R("z*(Z[1][2] + 1) - z*Z[1][2]") == RegularFunction.z(2)


@pytest.mark.parametrize("text", ["Z[1][1]*detZ^-1 + z", "(z^2+1)/(z-3)*Z[2][1]^2 - Z[1][2]",
                                  "detZ^-2 * Z[1][1]", "7/2"])
def test_format_round_trip(text):
    f = R(text)
    assert R(str(f)) == f
    assert RegularFunction.from_json(json.loads(json.dumps(f.to_json())), 2) == f


def test_state_and_subvariety_json():
    x = OrbitState(3, ((Fraction(1, 2), Fraction(0)), (Fraction(5), Fraction(-1))))
    assert OrbitState.from_json(json.loads(json.dumps(x.to_json()))) == x
    Y = Subvariety((R("Z[1][1] - 1"), R("detZ + z")))
    assert Subvariety.from_json(json.loads(json.dumps(Y.to_json())), 2) == Y


def test_orbit_step_matches_trace():
    A = FIBA
    x = OrbitState.identity_at(0, 2)
    trace = orbit_trace(A, x, 5)
    s = x
    for k in range(1, 6):
        s = orbit_step(A, s)
        assert s == trace[k]
        assert s.B == mat_mul(A.at(k - 1), trace[k - 1].B)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_sigma_is_ring_homomorphism(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    A = random_unimodular(rng, n, 1) if rng.random() < 0.5 else random_rational_system(rng, n)
    f, g = random_regular(rng, n), random_regular(rng, n)
    assert sigma_action(f * g, A) == sigma_action(f, A) * sigma_action(g, A)
    assert sigma_action(f + g, A) == sigma_action(f, A) + sigma_action(g, A)


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10_000))
def test_psi_intertwines_sigma_with_shift(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    A = random_rational_system(rng, n)
    b = start_index(A) + rng.randint(0, 3)
    x = OrbitState(b, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))
    H = b + 60
    f = random_regular(rng, n)
    trace = orbit_trace(A, x, H)
    lhs = evaluate_along_orbit(sigma_action(f, A), A, x, H - 1, trace[:-1])
    rhs = seq_shift(evaluate_along_orbit(f, A, x, H, trace), 1)
    lo = max(lhs.start, rhs.start)
    assert all(lhs[i] == rhs[i] for i in range(lo, lhs.horizon + 1))


def test_psi_is_ring_homomorphism():
    rng = random.Random(21)
    A = random_unimodular(rng, 2, 1)
    x = OrbitState.identity_at(0, 2)
    trace = orbit_trace(A, x, 50)
    f, g = random_regular(rng, 2), random_regular(rng, 2)
    pf, pg = (evaluate_along_orbit(h, A, x, 50, trace) for h in (f, g))
    assert evaluate_along_orbit(f * g, A, x, 50, trace).values == (pf * pg).values
    assert evaluate_along_orbit(f + g, A, x, 50, trace).values == (pf + pg).values


def test_rebasing_shifts_membership():
    rng = random.Random(8)
    for _ in range(10):
        A = random_rational_system(rng, 2)
        b = start_index(A) + rng.randint(0, 5)
        x = OrbitState(b, identity(2))
        H = b + 40
        for Y in (Subvariety((R("Z[1][1] - Z[2][2]"),)), Subvariety((R("(z - 9)*Z[1][1]"),))):
            direct = orbit_membership_set(A, x, Y, H)
            A0, x0, Y0 = rebase_problem(A, x, Y)
            assert x0.b == 0
            rebased = orbit_membership_set(A0, x0, Y0, H - b)
            assert {i + b for i in rebased} == direct


def test_evaluate_regular_uses_det_power():
    x = OrbitState(0, ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(3))))
    assert evaluate_regular(R("Z[1][1]*detZ^-1"), x) == Fraction(1, 3)
