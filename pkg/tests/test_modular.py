from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from arrkit._modular import (
    DixonSolver,
    PrimeContext,
    UnluckyPrimeError,
    _rational_reconstruct,
    echelon_modp,
    inverse_modp,
    prime_count,
    rank_modp,
    reduce_against,
)
from arrkit.linalg import rank as exact_rank
from arrkit import FieldElement


def test_prime_table_properties():
    assert prime_count() >= 8
    seen = set()
    for idx in range(prime_count()):
        ctx = PrimeContext(idx)
        p, s = ctx.p, ctx.sqrt3
        assert p % 12 == 11
        assert p < 2 ** 26
        assert (s * s) % p == 3
        assert (2 * ctx.inv2) % p == 1
        assert (2 * s * ctx.inv2s) % p == 1
        assert p not in seen
        seen.add(p)


def test_prime_context_next():
    ctx = PrimeContext(0)
    nxt = ctx.next()
    assert nxt.index == 1
    with pytest.raises(UnluckyPrimeError):
        PrimeContext(prime_count() - 1).next()


def test_echelon_pivot_rows_are_original_indices():
    p = PrimeContext(0).p
    mat = np.array([[0, 0, 0], [2, 4, 6], [1, 2, 3], [0, 0, 5]], dtype=np.int64)
    rank, pivot_rows, pivot_cols, reduced = echelon_modp(mat, p)
    assert rank == 2
    assert pivot_cols == [0, 2]
    # chosen rows must themselves span rank-many dimensions
    assert rank_modp(mat[pivot_rows], p) == 2
    # forward elimination: unit pivots, zeros below each pivot
    for i, col in enumerate(pivot_cols):
        assert reduced[i, col] == 1
        for j in range(i + 1, rank):
            assert reduced[j, col] == 0


def test_reduce_against_zeroes_span_members():
    p = PrimeContext(0).p
    mat = np.array([[1, 2, 0], [0, 1, 1]], dtype=np.int64)
    rank, rows, cols, reduced = echelon_modp(mat, p)
    member = (3 * mat[0] + 5 * mat[1]) % p
    assert not np.any(reduce_against(reduced, cols, member, p))
    outside = np.array([0, 0, 7], dtype=np.int64)
    assert np.any(reduce_against(reduced, cols, outside, p))


def test_inverse_modp_round_trip():
    p = PrimeContext(0).p
    rng = random.Random(3)
    k = 20
    mat = np.array([[rng.randrange(p) for _ in range(k)] for _ in range(k)], dtype=np.int64)
    inv = inverse_modp(mat, p)
    prod = (inv.astype(object) @ mat.astype(object)) % p
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(k) for j in range(k))


def test_inverse_modp_singular_raises():
    p = PrimeContext(0).p
    mat = np.array([[1, 2], [2, 4]], dtype=np.int64)
    with pytest.raises(UnluckyPrimeError):
        inverse_modp(mat, p)


def test_rational_reconstruction_round_trip():
    p = PrimeContext(0).p
    modulus = p ** 40
    from math import isqrt

    bound = isqrt((modulus - 1) // 2)
    rng = random.Random(11)
    for _ in range(200):
        num = rng.getrandbits(100) - (1 << 99)
        den = rng.getrandbits(100) | 1
        f = Fraction(num, den)
        u = f.numerator * pow(f.denominator, -1, modulus) % modulus
        rec = _rational_reconstruct(u, modulus, bound)
        assert rec == f


def _check_solution(matrix, rhs, solution):
    k = len(matrix)
    for i in range(k):
        for j in range(len(rhs[0])):
            acc_a = Fraction(0)
            acc_b = Fraction(0)
            for t in range(k):
                ma, mb = matrix[i][t]
                xa, xb = solution[t][j]
                acc_a += ma * xa + 3 * mb * xb
                acc_b += ma * xb + mb * xa
            ra, rb = rhs[i][j]
            assert acc_a == ra and acc_b == rb


def _random_system(rng, k, bits, cols=1, rational_only=False, irrational_only=False):
    def pair():
        a = rng.getrandbits(bits) - (1 << (bits - 1))
        b = rng.getrandbits(bits) - (1 << (bits - 1))
        if rational_only:
            b = 0
        if irrational_only:
            a = 0
        return (a, b)

    matrix = [[pair() for _ in range(k)] for _ in range(k)]
    rhs = [[pair() for _ in range(cols)] for _ in range(k)]
    return matrix, rhs


def test_dixon_solver_small_known():
    ctx = PrimeContext(0)
    # x + sqrt(3) y over the pair encoding: [[ (1,0),(0,1) ], [ (0,1),(1,0) ]]
    matrix = [[(1, 0), (0, 1)], [(0, 1), (1, 0)]]
    rhs = [[(4, 0)], [(0, 2)]]
    sol = DixonSolver(matrix, ctx).solve(rhs)
    _check_solution(matrix, rhs, sol)


def test_dixon_random_round_trips():
    rng = random.Random(5)
    ctx = PrimeContext(0)
    for k, bits in ((3, 16), (8, 40), (20, 90)):
        matrix, rhs = _random_system(rng, k, bits, cols=2)
        sol = DixonSolver(matrix, ctx).solve(rhs)
        _check_solution(matrix, rhs, sol)


def test_dixon_rational_only_matrix():
    # components of different limb depth must not be truncated against
    # each other: a purely rational matrix with wide entries once lifted
    # only its lowest limb, corrupting every deep solve
    rng = random.Random(6)
    ctx = PrimeContext(0)
    matrix, rhs = _random_system(rng, 12, 80, rational_only=True)
    sol = DixonSolver(matrix, ctx).solve(rhs)
    _check_solution(matrix, rhs, sol)
    # rational matrix, mixed rhs
    matrix2, _ = _random_system(rng, 10, 70, rational_only=True)
    _, rhs2 = _random_system(rng, 10, 70)
    sol2 = DixonSolver(matrix2, ctx).solve(rhs2)
    _check_solution(matrix2, rhs2, sol2)


def test_dixon_irrational_only_matrix():
    rng = random.Random(7)
    ctx = PrimeContext(0)
    matrix, rhs = _random_system(rng, 10, 75, irrational_only=True)
    sol = DixonSolver(matrix, ctx).solve(rhs)
    _check_solution(matrix, rhs, sol)


def test_dixon_integer_solution_fast_path():
    ctx = PrimeContext(0)
    rng = random.Random(9)
    k = 6
    matrix, _ = _random_system(rng, k, 30)
    ints = [[(rng.randrange(-50, 50), rng.randrange(-50, 50))] for _ in range(k)]
    rhs = []
    for i in range(k):
        acc_a, acc_b = 0, 0
        for t in range(k):
            ma, mb = matrix[i][t]
            xa, xb = ints[t][0]
            acc_a += ma * xa + 3 * mb * xb
            acc_b += ma * xb + mb * xa
        rhs.append([(acc_a, acc_b)])
    sol = DixonSolver(matrix, ctx).solve(rhs)
    assert sol == [[(Fraction(a), Fraction(b))] for (a, b), in ints]


def test_dixon_singular_raises_unlucky():
    ctx = PrimeContext(0)
    matrix = [[(1, 0), (2, 0)], [(2, 0), (4, 0)]]
    with pytest.raises(UnluckyPrimeError):
        DixonSolver(matrix, ctx)


def test_modp_rank_matches_exact_rank():
    rng = random.Random(13)
    ctx = PrimeContext(0)
    for _ in range(20):
        rows = [[FieldElement(rng.randrange(-6, 7), rng.randrange(-6, 7))
                 for _ in range(5)] for _ in range(4)]
        mat = np.array(
            [[(int(c.rat) + ctx.sqrt3 * int(c.irr)) % ctx.p for c in row] for row in rows],
            dtype=np.int64,
        )
        # mod-p rank can only undershoot the exact rank, and with random
        # small entries against a 26-bit prime it matches
        assert rank_modp(mat, ctx.p) == exact_rank(rows, 5)
