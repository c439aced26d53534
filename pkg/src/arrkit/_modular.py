"""Certified modular linear algebra.

Mod-p computations are used only as guides (pivot selection) and as one-sided
bounds; every value reported upward is reconstructed over Q and re-verified by
exact integer arithmetic.  Primes p = 11 (mod 12) keep 3 a quadratic residue
while 2 and 3 stay invertible, so Q(sqrt(3)) embeds into GF(p) two ways.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

Pair = Tuple[int, int]

# Primes p < 2**26 with p = 11 (mod 12), descending, paired with s = sqrt(3)
# mod p (s = 3**((p+1)//4)).  p**2 < 2**52 keeps pivot updates inside int64.
_PRIME_TABLE: Tuple[Tuple[int, int], ...] = (
    (67108859, 57567370),
    (67108763, 52364098),
    (67108739, 58005220),
    (67108667, 9929416),
    (67108511, 20176048),
    (67108463, 34106856),
    (67108439, 452194),
    (67108331, 2759988),
    (67108271, 59065185),
    (67108199, 2032316),
    (67108187, 519334),
    (67108127, 16050417),
)

_LIMB_BITS = 26
_LIMB_BASE = 1 << _LIMB_BITS


class UnluckyPrimeError(Exception):
    """The current prime produced a mod-p picture that exact checks refuted."""


class ExactSolveError(Exception):
    """No exact solution was recovered within the lifting budget."""


class PrimeContext:
    """One prime together with the two embeddings of Q(sqrt(3)) into GF(p)."""

    __slots__ = ("index", "p", "sqrt3", "inv2", "inv2s")

    def __init__(self, index: int) -> None:
        if not 0 <= index < len(_PRIME_TABLE):
            raise UnluckyPrimeError("prime table exhausted")
        p, s = _PRIME_TABLE[index]
        self.index = index
        self.p = p
        self.sqrt3 = s
        self.inv2 = pow(2, p - 2, p)
        self.inv2s = pow(2 * s % p, p - 2, p)

    def next(self) -> "PrimeContext":
        return PrimeContext(self.index + 1)

    def embed_pair(self, pair: Pair) -> Tuple[int, int]:
        a, b = pair
        return (a + b * self.sqrt3) % self.p, (a - b * self.sqrt3) % self.p


def prime_count() -> int:
    return len(_PRIME_TABLE)


def embed_pair_matrix(rows: Sequence[Sequence[Pair]], ctx: PrimeContext) -> Tuple[np.ndarray, np.ndarray]:
    """Both GF(p) images of a matrix with entries a + b*sqrt(3)."""
    p, s = ctx.p, ctx.sqrt3
    m = len(rows)
    n = len(rows[0]) if m else 0
    plus = np.zeros((m, n), dtype=np.int64)
    minus = np.zeros((m, n), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, (a, b) in enumerate(row):
            bs = b * s
            plus[i, j] = (a + bs) % p
            minus[i, j] = (a - bs) % p
    return plus, minus


def echelon_modp(mat: np.ndarray, p: int) -> Tuple[int, List[int], List[int], np.ndarray]:
    """Forward elimination over GF(p).

    Returns (rank, pivot_rows, pivot_cols, reduced) where pivot_rows are
    indices into the ORIGINAL row order (the square submatrix of the original
    matrix on pivot_rows x pivot_cols is invertible mod p) and reduced holds
    the rank echelon rows with unit pivots, zero at earlier pivot columns.
    """
    work = np.array(mat, dtype=np.int64, copy=True) % p
    m, n = work.shape
    order = list(range(m))
    pivot_cols: List[int] = []
    r = 0
    for col in range(n):
        if r == m:
            break
        block = work[r:, col]
        nz = np.nonzero(block)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            work[[r, k]] = work[[k, r]]
            order[r], order[k] = order[k], order[r]
        inv = pow(int(work[r, col]), p - 2, p)
        work[r, col:] = work[r, col:] * inv % p
        below = work[r + 1:, col]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = hit + r + 1
            factors = work[rows, col][:, None]
            work[rows, col:] = (work[rows, col:] - factors * work[r, col:][None, :]) % p
        pivot_cols.append(col)
        r += 1
    return r, order[:r], pivot_cols, work[:r]


def rank_modp(mat: np.ndarray, p: int) -> int:
    return echelon_modp(mat, p)[0]


def reduce_against(reduced: np.ndarray, pivot_cols: Sequence[int], vec: np.ndarray, p: int) -> np.ndarray:
    """Residual of vec against echelon rows (unit pivots, ascending columns)."""
    res = np.array(vec, dtype=np.int64, copy=True) % p
    for i, col in enumerate(pivot_cols):
        c = int(res[col])
        if c:
            res = (res - c * reduced[i]) % p
    return res


def inverse_modp(mat: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over GF(p); raises UnluckyPrimeError if singular."""
    k = mat.shape[0]
    aug = np.concatenate([np.array(mat, dtype=np.int64) % p, np.eye(k, dtype=np.int64)], axis=1)
    for col in range(k):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise UnluckyPrimeError("singular square system mod p")
        r = col + int(nz[0])
        if r != col:
            aug[[col, r]] = aug[[r, col]]
        inv = pow(int(aug[col, col]), p - 2, p)
        aug[col] = aug[col] * inv % p
        factors = aug[:, col].copy()
        factors[col] = 0
        aug = (aug - np.outer(factors, aug[col])) % p
    return aug[:, k:]


def _to_object_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = np.empty((m, n), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = int(v)
    return out


def _limbs(mat: np.ndarray) -> List[np.ndarray]:
    """Signed base-2**26 limb decomposition of an object integer matrix."""
    work = mat.copy()
    limbs: List[np.ndarray] = []
    half = _LIMB_BASE >> 1
    while True:
        if not np.any(work != 0):
            break
        low = work % _LIMB_BASE
        adjust = low > half
        low = low - adjust * _LIMB_BASE
        limbs.append(low.astype(np.int64))
        work = (work - low) // _LIMB_BASE
    if not limbs:
        limbs.append(np.zeros(mat.shape, dtype=np.int64))
    return limbs


def _combine_digits(digits: List[Tuple[np.ndarray, np.ndarray]], p: int) -> Tuple[np.ndarray, np.ndarray]:
    """Binary-tree evaluation of sum digits[i] * p**i as object matrices."""
    level = [(d[0].astype(object), d[1].astype(object)) for d in digits]
    step = p
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            a0, b0 = level[i]
            a1, b1 = level[i + 1]
            nxt.append((a0 + step * a1, b0 + step * b1))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        step = step * step
    return level[0]


def _rational_reconstruct(u: int, modulus: int, bound: int) -> Optional[Fraction]:
    """Smallest a/b with a = u*b (mod modulus), |a|,b <= bound, or None."""
    u %= modulus
    if u == 0:
        return Fraction(0)
    r_prev, r_cur = modulus, u
    t_prev, t_cur = 0, 1
    while r_cur > bound:
        q = r_prev // r_cur
        r_prev, r_cur = r_cur, r_prev - q * r_cur
        t_prev, t_cur = t_cur, t_prev - q * t_cur
    if t_cur == 0 or abs(t_cur) > bound:
        return None
    if gcd(r_cur, abs(t_cur)) != 1:
        return None
    if t_cur < 0:
        return Fraction(-r_cur, -t_cur)
    return Fraction(r_cur, t_cur)


def _reconstruct_matrix(values: np.ndarray, modulus: int) -> Optional[List[List[Fraction]]]:
    """Entrywise rational reconstruction with a shared-denominator fast path."""
    bound = isqrt((modulus - 1) // 2)
    den = 1
    out: List[List[Fraction]] = []
    for row in values:
        out_row: List[Fraction] = []
        for u in row:
            v = int(u) * den % modulus
            w = v if v <= modulus - v else v - modulus
            if abs(w) <= bound:
                out_row.append(Fraction(w, den))
                continue
            f = _rational_reconstruct(v, modulus, bound)
            if f is None:
                return None
            out_row.append(Fraction(f.numerator, f.denominator * den))
            den *= f.denominator
        out.append(out_row)
    return out


class DixonSolver:
    """Exact solver for square systems over Z[sqrt(3)] via p-adic lifting.

    The matrix must be invertible mod ctx.p (callers pick pivot submatrices
    from a mod-p echelon, so this holds by construction).  Solutions are
    reconstructed over Q(sqrt(3)) and verified exactly by the caller or via
    verify=True, which replays M*x = rhs in exact integer arithmetic.
    """

    def __init__(self, matrix: Sequence[Sequence[Pair]], ctx: PrimeContext) -> None:
        self.ctx = ctx
        self.k = len(matrix)
        self._ma = _to_object_matrix([[e[0] for e in row] for row in matrix])
        self._mb = _to_object_matrix([[e[1] for e in row] for row in matrix])
        p, s = ctx.p, ctx.sqrt3
        ma_p = (self._ma % p).astype(np.int64)
        mb_p = (self._mb % p).astype(np.int64)
        plus = (ma_p + s * mb_p) % p
        minus = (ma_p - s * mb_p) % p
        self._inv_plus = inverse_modp(plus, p)
        self._inv_minus = inverse_modp(minus, p)
        self._limbs_a = _limbs(self._ma)
        self._limbs_b = _limbs(self._mb)
        # zip over the two limb lists must not truncate either component
        depth = max(len(self._limbs_a), len(self._limbs_b))
        zero = np.zeros((self.k, self.k), dtype=np.int64)
        self._limbs_a += [zero] * (depth - len(self._limbs_a))
        self._limbs_b += [zero] * (depth - len(self._limbs_b))

    def _exact_product(self, da: np.ndarray, db: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """M * digit as exact object matrices, via int64 limb matmuls."""
        prod_a: Optional[np.ndarray] = None
        prod_b: Optional[np.ndarray] = None
        shift = 1
        for la, lb in zip(self._limbs_a, self._limbs_b):
            part_a = la @ da + 3 * (lb @ db)
            part_b = la @ db + lb @ da
            if prod_a is None:
                prod_a = part_a.astype(object) * shift
                prod_b = part_b.astype(object) * shift
            else:
                prod_a += part_a.astype(object) * shift
                prod_b += part_b.astype(object) * shift
            shift <<= _LIMB_BITS
        assert prod_a is not None and prod_b is not None
        return prod_a, prod_b

    def solve(self, rhs: Sequence[Sequence[Pair]], max_digits: int = 65536) -> List[List[Tuple[Fraction, Fraction]]]:
        """Solve M*x = rhs for a k x c right-hand side of Z[sqrt(3)] pairs.

        Lifting always converges for a matrix invertible mod p; the returned
        solution is exactly verified (or exact by construction when the
        residual vanishes).  ExactSolveError only on digit budget exhaustion.
        """
        ctx = self.ctx
        p = ctx.p
        ra = _to_object_matrix([[e[0] for e in row] for row in rhs])
        rb = _to_object_matrix([[e[1] for e in row] for row in rhs])
        digits: List[Tuple[np.ndarray, np.ndarray]] = []
        attempt = 8
        produced = 0
        while produced < max_digits:
            if not (np.any(ra != 0) or np.any(rb != 0)):
                if not digits:
                    return [[(Fraction(0), Fraction(0))] * ra.shape[1] for _ in range(self.k)]
                xa, xb = _combine_digits(digits, p)
                k, c = xa.shape
                return [[(Fraction(int(xa[i, j])), Fraction(int(xb[i, j]))) for j in range(c)] for i in range(k)]
            ra_p = (ra % p).astype(np.int64)
            rb_p = (rb % p).astype(np.int64)
            rp_plus = (ra_p + ctx.sqrt3 * rb_p) % p
            rp_minus = (ra_p - ctx.sqrt3 * rb_p) % p
            y_plus = self._inv_plus @ rp_plus % p
            y_minus = self._inv_minus @ rp_minus % p
            da = (y_plus + y_minus) * ctx.inv2 % p
            db = (y_plus - y_minus) % p * ctx.inv2s % p
            half = p >> 1
            da = da - p * (da > half)
            db = db - p * (db > half)
            digits.append((da, db))
            produced += 1
            prod_a, prod_b = self._exact_product(da, db)
            ra = (ra - prod_a) // p
            rb = (rb - prod_b) // p
            if produced >= attempt:
                attempt *= 2
                solution = self._try_reconstruct(digits, rhs)
                if solution is not None:
                    return solution
        solution = self._try_reconstruct(digits, rhs)
        if solution is not None:
            return solution
        raise ExactSolveError("p-adic digit budget exhausted")

    def _try_reconstruct(self, digits: List[Tuple[np.ndarray, np.ndarray]],
                         rhs: Sequence[Sequence[Pair]]) -> Optional[List[List[Tuple[Fraction, Fraction]]]]:
        p = self.ctx.p
        xa, xb = _combine_digits(digits, p)
        modulus = p ** len(digits)
        flat = np.concatenate([xa.reshape(-1, 1), xb.reshape(-1, 1)], axis=1)
        recon = _reconstruct_matrix(flat, modulus)
        if recon is None:
            return None
        k, c = xa.shape
        result = [[(recon[i * c + j][0], recon[i * c + j][1]) for j in range(c)] for i in range(k)]
        if not self.verify_solution(rhs, result):
            return None
        return result

    def verify_solution(self, rhs: Sequence[Sequence[Pair]], solution: List[List[Tuple[Fraction, Fraction]]]) -> bool:
        """Exact replay of M*x = rhs over Q(sqrt(3)) using integer arithmetic."""
        k = self.k
        c = len(solution[0]) if solution else 0
        den = 1
        for row in solution:
            for fa, fb in row:
                den = den * fa.denominator // gcd(den, fa.denominator)
                den = den * fb.denominator // gcd(den, fb.denominator)
        num_a = np.empty((k, c), dtype=object)
        num_b = np.empty((k, c), dtype=object)
        for i, row in enumerate(solution):
            for j, (fa, fb) in enumerate(row):
                num_a[i, j] = int(fa * den)
                num_b[i, j] = int(fb * den)
        prod_a = self._ma @ num_a + 3 * (self._mb @ num_b)
        prod_b = self._ma @ num_b + self._mb @ num_a
        for i in range(k):
            row = rhs[i]
            for j in range(c):
                ta, tb = row[j]
                if prod_a[i, j] != ta * den or prod_b[i, j] != tb * den:
                    return False
        return True
