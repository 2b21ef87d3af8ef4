from fractions import Fraction

import pytest
import sympy

import blocksolve


def dense(n, triplets):
    M = sympy.zeros(n, n)
    for i, j, v in triplets:
        M[i, j] += v
    return M


def test_small_system():
    x = blocksolve.solve_fractions(2, [(0, 0, 2), (0, 1, 1), (1, 0, 1), (1, 1, 1)], [3, 2])
    assert x == [1, 1]
    assert blocksolve.solve_fractions(2, [(0, 0, 2), (1, 1, 3)], [1, 1]) == [Fraction(1, 2), Fraction(1, 3)]


@pytest.mark.parametrize("algo", blocksolve.ALGORITHMS)
def test_generated_system_matches_sympy(algo):
    n = 24
    triplets, b = blocksolve.generate(n, 6, 100, seed=4)
    rep = blocksolve.solve(n, triplets, b, algo=algo, seed=1)
    assert rep["algorithm"] == algo
    assert blocksolve.verify(n, triplets, b, rep["numerators"], rep["denominator"])
    expect = dense(n, triplets).LUsolve(sympy.Matrix(b))
    got = [Fraction(x, rep["denominator"]) for x in rep["numerators"]]
    assert got == [Fraction(int(e.p), int(e.q)) for e in expect]


def test_big_integers_round_trip():
    big = 10**40 + 7
    x = blocksolve.solve_fractions(1, [(0, 0, 3)], [big])
    assert x == [Fraction(big, 3)]


def test_errors():
    with pytest.raises(blocksolve.Singular):
        blocksolve.solve(2, [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)], [1, 3], algo="dixon")
    with pytest.raises(blocksolve.InvalidParams):
        blocksolve.solve(2, [(0, 0, 1), (1, 1, 1)], [1, 1], algo="nope")
    with pytest.raises(blocksolve.DimensionMismatch):
        blocksolve.solve(2, [(0, 0, 1), (1, 1, 1)], [1])
