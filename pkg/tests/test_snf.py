"""Tests for Smith normal form and the invariant-factor counting route."""

import math
import random

import pytest

from congruences import (
    CongruenceSystem,
    UnsupportedShapeError,
    butson_stewart_count,
    enumerate_solutions,
    lift_to_common_modulus,
    smith_normal_form,
    system_count,
)


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in mat[1:])
        total += (-1) ** j * mat[0][j] * det(minor)
    return total


def ref_rank(mat):
    from sympy import Matrix

    return Matrix([list(row) for row in mat]).rank()


def check_snf(matrix):
    result = smith_normal_form(matrix)
    u, v = result.transforms
    s = mat_mul(mat_mul(u, matrix), v)
    k, n = len(matrix), len(matrix[0])
    for i in range(k):
        for j in range(n):
            if i == j and i < result.rank:
                assert s[i][j] == result.invariant_factors[i]
            else:
                assert s[i][j] == 0
    assert abs(det(u)) == 1
    assert abs(det(v)) == 1
    for e1, e2 in zip(result.invariant_factors, result.invariant_factors[1:]):
        assert e2 % e1 == 0
    assert result.rank == ref_rank(matrix)
    return result


def test_snf_reference_examples():
    result = check_snf(((70, 70), (60, 84)))
    assert result.invariant_factors == (2, 840)
    result = check_snf(((240, 480, 240), (45, 810, 405), (288, 432, 144)))
    # Divisibility chain and exact diagonalization checked in check_snf.
    assert result.rank == 3


def test_snf_small_cases():
    assert smith_normal_form(((1,),)).invariant_factors == (1,)
    assert smith_normal_form(((0,),)).invariant_factors == ()
    assert smith_normal_form(((4, 6),)).invariant_factors == (2,)
    assert smith_normal_form(((2, 0), (0, 3))).invariant_factors == (1, 6)
    assert smith_normal_form(((0, 0), (0, 0))).invariant_factors == ()


def test_snf_validation():
    with pytest.raises(ValueError):
        smith_normal_form(())
    with pytest.raises(ValueError):
        smith_normal_form(((1, 2), (3,)))


def test_snf_random_matrices():
    rng = random.Random(41)
    for _ in range(250):
        k = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        matrix = tuple(
            tuple(rng.randrange(-30, 31) for _ in range(n)) for _ in range(k)
        )
        check_snf(matrix)


def test_snf_deterministic():
    matrix = ((12, 8, 6), (4, 10, 2))
    assert smith_normal_form(matrix) == smith_normal_form(matrix)


def test_lift_to_common_modulus():
    system = CongruenceSystem(((2, 2), (5, 7)), (12, 35), (2, 1))
    matrix, rhs, m = lift_to_common_modulus(system)
    assert m == 420
    assert matrix == ((70, 70), (60, 84))
    assert rhs == (70, 12)


def test_butson_stewart_reference_counts():
    system = CongruenceSystem(((2, 2), (5, 7)), (12, 35), (2, 1))
    report = butson_stewart_count(system)
    assert report.count == 840
    assert report.theorem == "butson_stewart"
    assert report.details["invariant_factors"] == [2, 840]
    assert report.details["factor_gcds"] == [2, 420]
    assert report.details["modulus"] == 420

    system = CongruenceSystem(
        ((3, 6, 3), (4, 2, 8), (2, 3, 1)), (9, 16, 5), (3, 4, 2)
    )
    report = butson_stewart_count(system)
    assert report.count == 3110400
    assert report.details["invariant_factors"] == [6, 720, 3600]


def test_butson_stewart_agrees_with_coprime_formula():
    rng = random.Random(42)
    checked = 0
    while checked < 120:
        k = rng.randrange(1, 3)
        n = rng.randrange(k, 4)
        moduli = [rng.randrange(2, 40) for _ in range(k)]
        if any(
            math.gcd(moduli[i], moduli[j]) != 1
            for i in range(k)
            for j in range(i + 1, k)
        ):
            continue
        system = CongruenceSystem(
            tuple(
                tuple(rng.randrange(-10, 11) for _ in range(n)) for _ in range(k)
            ),
            tuple(moduli),
            tuple(rng.randrange(50) for _ in range(k)),
        )
        try:
            via_snf = butson_stewart_count(system)
        except UnsupportedShapeError:
            continue
        assert via_snf.count == system_count(system).count
        checked += 1


def test_butson_stewart_vs_enumeration_non_coprime():
    rng = random.Random(43)
    checked = 0
    while checked < 120:
        k = rng.randrange(1, 3)
        n = rng.randrange(k, 4)
        moduli = tuple(rng.randrange(2, 13) for _ in range(k))
        if math.lcm(*moduli) ** n > 3 * 10**5:
            continue
        system = CongruenceSystem(
            tuple(
                tuple(rng.randrange(-12, 13) for _ in range(n)) for _ in range(k)
            ),
            moduli,
            tuple(rng.randrange(-12, 13) for _ in range(k)),
        )
        try:
            via_snf = butson_stewart_count(system)
        except UnsupportedShapeError:
            continue
        count, _ = enumerate_solutions(system)
        assert via_snf.count == count
        checked += 1


def test_butson_stewart_guards():
    overdetermined = CongruenceSystem(((1,), (1,)), (2, 3), (0, 0))
    with pytest.raises(UnsupportedShapeError):
        butson_stewart_count(overdetermined)
    deficient = CongruenceSystem(((0, 0), (1, 1)), (2, 3), (0, 0))
    with pytest.raises(UnsupportedShapeError):
        butson_stewart_count(deficient)
    duplicate_rows = CongruenceSystem(((1, 1), (1, 1)), (2, 2), (0, 0))
    with pytest.raises(UnsupportedShapeError):
        butson_stewart_count(duplicate_rows)
