"""Fat-point ideals over Q(sqrt(3)): graded pieces, generators, containment.

Strategy: mod-p linear algebra (fast, numpy int64) picks pivot structure and
supplies dimension upper bounds; every reported object is then reconstructed
and re-verified in exact arithmetic.  A dimension is accepted only when an
exhibited set of exact kernel vectors meets the mod-p bound (sandwich
s <= dim_Q <= dim_p), so no result depends on a prime being lucky.  Unlucky
primes are detected by failed exact verification and retried deterministically
from a fixed prime table.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _modular
from ._modular import DixonSolver, PrimeContext, UnluckyPrimeError, ExactSolveError
from .arrangement import Arrangement
from .field import FieldElement
from .forms import HomogeneousForm, Monomial, format_form, monomial_index, monomials_of_degree
from .linalg import ReducedEchelon, kernel_basis, to_pair_row
from .projective import ProjectivePoint

Pair = Tuple[int, int]


class DegreeCapExceeded(Exception):
    """Generator search hit the degree cap before stabilizing.

    Carries the partial data found so far: .partial_generators (tuple of
    forms) and .dimensions (degree -> certified dimension).
    """

    def __init__(self, message: str, partial_generators: Tuple[HomogeneousForm, ...],
                 dimensions: Dict[int, int]) -> None:
        super().__init__(message)
        self.partial_generators = partial_generators
        self.dimensions = dict(dimensions)


class FatPointScheme:
    """Finite set of distinct projective points with multiplicities >= 1."""

    __slots__ = ("points", "multiplicities")

    def __init__(self, assignments: Iterable[Tuple[ProjectivePoint, int]]) -> None:
        points: List[ProjectivePoint] = []
        mults: List[int] = []
        seen = set()
        for point, multiplicity in assignments:
            if not isinstance(multiplicity, int) or multiplicity < 1:
                raise ValueError("multiplicity must be a positive integer")
            if point in seen:
                raise ValueError(f"duplicate point {point}")
            seen.add(point)
            points.append(point)
            mults.append(multiplicity)
        self.points: Tuple[ProjectivePoint, ...] = tuple(points)
        self.multiplicities: Tuple[int, ...] = tuple(mults)

    @classmethod
    def uniform(cls, points: Iterable[ProjectivePoint], multiplicity: int) -> "FatPointScheme":
        return cls((p, multiplicity) for p in points)

    def thickened(self, multiplicity: int) -> "FatPointScheme":
        """Same support, every multiplicity replaced by the given value."""
        return FatPointScheme.uniform(self.points, multiplicity)

    @property
    def conditions_count(self) -> int:
        return sum(comb(m + 1, 2) for m in self.multiplicities)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FatPointScheme):
            return NotImplemented
        return self.points == other.points and self.multiplicities == other.multiplicities

    def __repr__(self) -> str:
        return f"FatPointScheme({len(self.points)} points, {self.conditions_count} conditions)"


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    forms: Tuple[HomogeneousForm, ...]

    @property
    def dimension(self) -> int:
        return len(self.forms)


def _neg_mono(m: Monomial) -> Tuple[int, int, int]:
    return (-m[0], -m[1], -m[2])


def _form_sort_key(f: HomogeneousForm) -> Tuple[int, Tuple[int, int, int]]:
    return (f.degree, _neg_mono(f.leading_monomial()))


@dataclass(frozen=True)
class GeneratorSet:
    forms: Tuple[HomogeneousForm, ...]

    def degrees(self) -> Tuple[int, ...]:
        return tuple(f.degree for f in self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


@dataclass(frozen=True)
class ContainmentReport:
    contained: bool
    witnesses: Tuple[HomogeneousForm, ...]
    witness_degrees: Tuple[int, ...]
    degrees_scanned: Tuple[int, ...]
    wall_time_ms: int
    line_factor_counts: Optional[Tuple[int, ...]] = None

    def to_payload(self) -> dict:
        return {
            "contained": self.contained,
            "witness_degrees": list(self.witness_degrees),
            "witnesses": [format_form(w) for w in self.witnesses],
            "line_factor_counts": None if self.line_factor_counts is None else list(self.line_factor_counts),
            "degrees_scanned": list(self.degrees_scanned),
            "wall_time_ms": self.wall_time_ms,
        }


def _falling_factorial_table(max_order: int, max_exp: int) -> List[List[int]]:
    """table[a][e] = e * (e-1) * ... * (e-a+1); zero when e < a."""
    table = [[1] * (max_exp + 1)]
    for a in range(1, max_order + 1):
        prev = table[a - 1]
        table.append([prev[e] * (e - a + 1) if e >= a else 0 for e in range(max_exp + 1)])
    return table


class _PointData:
    """Chart data for one fat point: the chart coordinate is 1, conditions are
    partial derivatives in the two remaining variables."""

    __slots__ = ("point", "multiplicity", "chart", "u", "v", "u_val", "v_val", "_u_pows", "_v_pows")

    def __init__(self, point: ProjectivePoint, multiplicity: int) -> None:
        self.point = point
        self.multiplicity = multiplicity
        coords = point.coords
        self.chart = next(i for i in range(3) if coords[i])
        others = [i for i in range(3) if i != self.chart]
        self.u, self.v = others
        self.u_val = coords[self.u]
        self.v_val = coords[self.v]
        self._u_pows: List[FieldElement] = [FieldElement(1)]
        self._v_pows: List[FieldElement] = [FieldElement(1)]

    def u_pow(self, e: int) -> FieldElement:
        pows = self._u_pows
        while len(pows) <= e:
            pows.append(pows[-1] * self.u_val)
        return pows[e]

    def v_pow(self, e: int) -> FieldElement:
        pows = self._v_pows
        while len(pows) <= e:
            pows.append(pows[-1] * self.v_val)
        return pows[e]


def _embed_fraction(f: Fraction, p: int) -> int:
    den = f.denominator % p
    if den == 0:
        raise UnluckyPrimeError("prime divides a coordinate denominator")
    return f.numerator % p * pow(den, p - 2, p) % p


def _embed_field(x: FieldElement, ctx: PrimeContext) -> int:
    return (_embed_fraction(x.rat, ctx.p) + ctx.sqrt3 * _embed_fraction(x.irr, ctx.p)) % ctx.p


class _SchemeData:
    """Condition-row machinery shared by the exact and mod-p paths."""

    def __init__(self, scheme: FatPointScheme) -> None:
        self.scheme = scheme
        self.points = [_PointData(pt, m) for pt, m in zip(scheme.points, scheme.multiplicities)]
        self.row_meta: List[Tuple[int, int, int]] = []
        for pi, pd in enumerate(self.points):
            for a in range(pd.multiplicity):
                for b in range(pd.multiplicity - a):
                    self.row_meta.append((pi, a, b))
        self.max_order = max((m - 1 for m in scheme.multiplicities), default=0)

    @property
    def nrows(self) -> int:
        return len(self.row_meta)

    def exact_entry(self, meta: Tuple[int, int, int], mono: Monomial, ff: List[List[int]]) -> FieldElement:
        pi, a, b = meta
        pd = self.points[pi]
        eu, ev = mono[pd.u], mono[pd.v]
        if eu < a or ev < b:
            return FieldElement(0)
        scale = ff[a][eu] * ff[b][ev]
        return pd.u_pow(eu - a) * pd.v_pow(ev - b) * FieldElement(scale)

    def exact_row(self, meta: Tuple[int, int, int], monos: Sequence[Monomial], ff: List[List[int]]) -> List[FieldElement]:
        return [self.exact_entry(meta, mono, ff) for mono in monos]

    def exact_apply(self, meta: Tuple[int, int, int], form: HomogeneousForm, ff: List[List[int]]) -> FieldElement:
        """The condition functional evaluated exactly on a form."""
        pi, a, b = meta
        pd = self.points[pi]
        total = FieldElement(0)
        for mono, coef in form.terms.items():
            eu, ev = mono[pd.u], mono[pd.v]
            if eu < a or ev < b:
                continue
            scale = ff[a][eu] * ff[b][ev]
            total = total + coef * pd.u_pow(eu - a) * pd.v_pow(ev - b) * FieldElement(scale)
        return total

    def modp_matrix(self, degree: int, ctx: PrimeContext) -> np.ndarray:
        """All condition rows at the given degree, embedded via sqrt(3) -> +s."""
        p = ctx.p
        monos = monomials_of_degree(degree)
        exps = np.array(monos, dtype=np.int64) if monos else np.zeros((0, 3), dtype=np.int64)
        ff = _falling_factorial_table(self.max_order, degree)
        ff_arrays = [np.array(row, dtype=np.int64) for row in ff]
        out = np.zeros((self.nrows, len(monos)), dtype=np.int64)
        point_pows: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
        for pi, pd in enumerate(self.points):
            u_emb = _embed_field(pd.u_val, ctx)
            v_emb = _embed_field(pd.v_val, ctx)
            u_pows = np.ones(degree + 1, dtype=np.int64)
            v_pows = np.ones(degree + 1, dtype=np.int64)
            for e in range(1, degree + 1):
                u_pows[e] = u_pows[e - 1] * u_emb % p
                v_pows[e] = v_pows[e - 1] * v_emb % p
            point_pows[pi] = (u_pows, v_pows)
        for ri, (pi, a, b) in enumerate(self.row_meta):
            pd = self.points[pi]
            u_pows, v_pows = point_pows[pi]
            eu = exps[:, pd.u]
            ev = exps[:, pd.v]
            valid = (eu >= a) & (ev >= b)
            row = ff_arrays[a][eu] * ff_arrays[b][ev] % p
            row = row * u_pows[np.where(valid, eu - a, 0)] % p
            row = row * v_pows[np.where(valid, ev - b, 0)] % p
            out[ri] = row * valid
        return out

    def ff_table(self, degree: int) -> List[List[int]]:
        return _falling_factorial_table(self.max_order, degree)


def vanishing_matrix(scheme: FatPointScheme, degree: int) -> List[List[FieldElement]]:
    """Exact condition matrix: one row per derivative functional, one column
    per degree-d monomial in graded-lex order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    data = _SchemeData(scheme)
    monos = monomials_of_degree(degree)
    ff = data.ff_table(degree)
    return [data.exact_row(meta, monos, ff) for meta in data.row_meta]


def _forms_from_vectors(vectors: Sequence[Sequence[FieldElement]], degree: int) -> List[HomogeneousForm]:
    monos = monomials_of_degree(degree)
    forms = []
    for vec in vectors:
        terms = {mono: coef for mono, coef in zip(monos, vec) if coef}
        forms.append(HomogeneousForm(degree, terms))
    return forms


def _form_pair_vector(form: HomogeneousForm) -> List[Pair]:
    """Primitive integer-pair coefficient vector in graded-lex column order."""
    prim = form.primitive()
    vec: List[Pair] = [(0, 0)] * comb(form.degree + 2, 2)
    for mono, coef in prim.terms.items():
        vec[monomial_index(mono)] = (int(coef.rat), int(coef.irr))
    return vec


_EXACT_CELL_LIMIT = 20_000


def symbolic_graded_piece(scheme: FatPointScheme, degree: int) -> GradedBasis:
    """Exact basis of the degree-d piece of the ideal of the fat points."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    ncols = comb(degree + 2, 2)
    if scheme.conditions_count * ncols <= _EXACT_CELL_LIMIT:
        rows = vanishing_matrix(scheme, degree)
        vectors = kernel_basis(rows, ncols)
        return GradedBasis(degree, tuple(_forms_from_vectors(vectors, degree)))
    scan = _IdealScan(scheme)
    result = scan.run(max_degree=degree, need_basis_at=degree, stop_at=degree)
    return GradedBasis(degree, tuple(result.basis))


def hilbert_function(scheme: FatPointScheme, degree: int) -> int:
    """dim of the degree-d graded piece, certified exactly.

    Fast path: when the mod-p condition rank is full (rows or columns), the
    exact rank is pinned by rank_p <= rank_Q <= min(rows, cols).  Otherwise
    the generator scan certifies the dimension by exhibiting kernel vectors.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    data = _SchemeData(scheme)
    ncols = comb(degree + 2, 2)
    if data.nrows == 0:
        return ncols
    ctx = PrimeContext(0)
    mat = data.modp_matrix(degree, ctx)
    rank_p = _modular.rank_modp(mat, ctx.p)
    if rank_p == data.nrows:
        return ncols - data.nrows
    if rank_p == ncols:
        return 0
    scan = _IdealScan(scheme)
    result = scan.run(max_degree=degree, stop_at=degree)
    return result.dims[degree]


@dataclass
class _ScanResult:
    generators: List[HomogeneousForm]
    dims: Dict[int, int]
    last_degree: int
    stable: bool
    basis: List[HomogeneousForm] = field(default_factory=list)


class _GenScatter:
    """Per-prime scatter data for one generator: exponent arrays plus the
    embedded coefficient vector."""

    __slots__ = ("degree", "ea", "eb", "ec", "values")

    def __init__(self, form: HomogeneousForm, ctx: PrimeContext) -> None:
        self.degree = form.degree
        items = sorted(form.terms.items())
        self.ea = np.array([m[0] for m, _ in items], dtype=np.int64)
        self.eb = np.array([m[1] for m, _ in items], dtype=np.int64)
        self.ec = np.array([m[2] for m, _ in items], dtype=np.int64)
        self.values = np.array([_embed_field(c, ctx) for _, c in items], dtype=np.int64)


def _scatter_multiple(gen: _GenScatter, shift: Monomial, degree: int, row: np.ndarray) -> None:
    """Write the coefficient row of monomial*generator into a zeroed buffer."""
    A = gen.ea + shift[0]
    B = gen.eb + shift[1]
    da = degree - A
    cols = da * (da + 1) // 2 + (da - B)
    row[cols] = gen.values


def _monomial_form(mono: Monomial) -> HomogeneousForm:
    return HomogeneousForm.monomial(mono, FieldElement(1))


class _IdealScan:
    """Degree-by-degree certified computation of minimal generators.

    Per degree d with condition matrix M:
      rank_p, pivots  <- mod-p echelon of M (pivot submatrix invertible mod p)
      s, covered      <- mod-p echelon of known-generator multiples projected
                         onto the free columns
    If s equals the mod-p kernel dimension, the multiples certify the piece
    (their selected rows are exact kernel members and mod-p independent).
    Otherwise each uncovered free column yields one candidate: the unique
    kernel vector supported on pivot columns plus that free column, recovered
    by an exact p-adic solve and then verified against every condition row in
    exact arithmetic.  Failure of any exact check restarts with the next prime.
    """

    def __init__(self, scheme: FatPointScheme) -> None:
        self.scheme = scheme
        self.data = _SchemeData(scheme)

    def run(self, max_degree: int, *, stop_at: Optional[int] = None,
            need_basis_at: Optional[int] = None) -> _ScanResult:
        last: Optional[Exception] = None
        for idx in range(_modular.prime_count()):
            ctx = PrimeContext(idx)
            try:
                return self._run_with(ctx, max_degree, stop_at, need_basis_at)
            except UnluckyPrimeError as exc:
                last = exc
                continue
        raise ExactSolveError(f"prime table exhausted during generator scan: {last}")

    def _run_with(self, ctx: PrimeContext, max_degree: int, stop_at: Optional[int],
                  need_basis_at: Optional[int]) -> _ScanResult:
        data = self.data
        expected_offset = self.scheme.conditions_count
        gens: List[HomogeneousForm] = []
        scatters: List[_GenScatter] = []
        dims: Dict[int, int] = {}
        basis: List[HomogeneousForm] = []
        stable_run = 0
        degree = -1
        while True:
            degree += 1
            if degree > max_degree:
                if stop_at is not None:
                    break
                raise DegreeCapExceeded(
                    f"generator scan did not stabilize by degree {max_degree}",
                    tuple(gens), dims)
            ncols = comb(degree + 2, 2)
            new_gens, piece = self._process_degree(ctx, degree, ncols, gens, scatters,
                                                   dims, need_basis_at == degree)
            if need_basis_at == degree:
                basis = piece
            for g in new_gens:
                gens.append(g)
                scatters.append(_GenScatter(g, ctx))
            expected = ncols - expected_offset
            if not new_gens and dims[degree] == expected:
                stable_run += 1
            else:
                stable_run = 0
            if stop_at is not None:
                if degree >= stop_at:
                    break
            elif stable_run >= 2:
                break
        return _ScanResult(gens, dims, degree, stable_run >= 2, basis)

    def _process_degree(self, ctx: PrimeContext, degree: int, ncols: int,
                        gens: List[HomogeneousForm], scatters: List[_GenScatter],
                        dims: Dict[int, int], want_basis: bool,
                        ) -> Tuple[List[HomogeneousForm], List[HomogeneousForm]]:
        data = self.data
        p = ctx.p
        conditions = data.modp_matrix(degree, ctx)
        rank_p, pivot_rows, pivot_cols, _ = _modular.echelon_modp(conditions, p)
        dim_p = ncols - rank_p
        if dim_p == 0:
            dims[degree] = 0
            return [], []
        free_cols = [c for c in range(ncols) if c not in set(pivot_cols)]
        shifts: List[Tuple[int, Monomial]] = []
        for gi, g in enumerate(scatters):
            if g.degree < degree:
                for mono in monomials_of_degree(degree - g.degree):
                    shifts.append((gi, mono))
        W = np.zeros((len(shifts), ncols), dtype=np.int64)
        for ri, (gi, mono) in enumerate(shifts):
            _scatter_multiple(scatters[gi], mono, degree, W[ri])
        Wf = W[:, free_cols] if shifts else np.zeros((0, len(free_cols)), dtype=np.int64)
        s, sel_rows, covered_idx, _ = _modular.echelon_modp(Wf, p)
        covered = {free_cols[i] for i in covered_idx}
        candidates = [c for c in free_cols if c not in covered]
        dims[degree] = dim_p
        new_gens: List[HomogeneousForm] = []
        if candidates:
            new_gens = self._lift_candidates(ctx, degree, conditions, pivot_rows,
                                             pivot_cols, candidates)
        piece: List[HomogeneousForm] = []
        if want_basis:
            monos = monomials_of_degree(degree)
            for ri in sel_rows:
                gi, mono = shifts[ri]
                piece.append(gens[gi] * _monomial_form(mono))
            piece.extend(new_gens)
        return new_gens, piece

    def _lift_candidates(self, ctx: PrimeContext, degree: int, conditions: np.ndarray,
                         pivot_rows: Sequence[int], pivot_cols: Sequence[int],
                         candidates: Sequence[int]) -> List[HomogeneousForm]:
        data = self.data
        monos = monomials_of_degree(degree)
        ff = data.ff_table(degree)
        k = len(pivot_cols)
        forms: List[HomogeneousForm] = []
        if k == 0:
            solutions: List[List[Tuple[Fraction, Fraction]]] = [[] for _ in candidates]
        else:
            wanted = list(pivot_cols) + list(candidates)
            matrix_rows: List[List[Pair]] = []
            for ri in pivot_rows:
                meta = data.row_meta[ri]
                entries = [data.exact_entry(meta, monos[c], ff) for c in wanted]
                matrix_rows.append(to_pair_row(entries))
            A = [row[:k] for row in matrix_rows]
            rhs = [[(-a, -b) for (a, b) in row[k:]] for row in matrix_rows]
            solver = DixonSolver(A, ctx)
            solution = solver.solve(rhs)
            solutions = [[solution[i][j] for i in range(k)] for j in range(len(candidates))]
        for cj, cand in enumerate(candidates):
            terms: Dict[Monomial, FieldElement] = {monos[cand]: FieldElement(1)}
            for i, col in enumerate(pivot_cols):
                fa, fb = solutions[cj][i]
                if fa or fb:
                    terms[monos[col]] = FieldElement(fa, fb)
            form = HomogeneousForm(degree, terms).primitive()
            for meta in data.row_meta:
                if data.exact_apply(meta, form, ff):
                    raise UnluckyPrimeError("candidate generator failed an exact condition")
            forms.append(form)
        return forms


def minimal_generators(scheme: FatPointScheme, max_degree: int = 60) -> GeneratorSet:
    """Minimal generating set of the ideal of the fat-point scheme.

    Scans degrees upward; stops after two consecutive degrees with no new
    generators and Hilbert function equal to C(d+2,2) minus the condition
    count.  Raises DegreeCapExceeded (with partial data) past max_degree.
    """
    scan = _IdealScan(scheme)
    result = scan.run(max_degree=max_degree)
    return GeneratorSet(tuple(sorted(result.generators, key=_form_sort_key)))


def _product_forms(generators: Sequence[HomogeneousForm], r: int) -> List[HomogeneousForm]:
    products = []
    for combo in itertools.combinations_with_replacement(range(len(generators)), r):
        prod = generators[combo[0]]
        for i in combo[1:]:
            prod = prod * generators[i]
        products.append(prod.primitive())
    products.sort(key=_form_sort_key)
    return products


def power_graded_span(generators: Sequence[HomogeneousForm] | GeneratorSet, r: int,
                      degree: int) -> GradedBasis:
    """Exact basis of the degree-d piece of the r-th ordinary power."""
    gens = list(generators.forms if isinstance(generators, GeneratorSet) else generators)
    if r < 1:
        raise ValueError("power must be a positive integer")
    ncols = comb(degree + 2, 2)
    ech = ReducedEchelon(ncols)
    basis: List[HomogeneousForm] = []
    for q in _product_forms(gens, r):
        if q.degree > degree:
            continue
        for mono in monomials_of_degree(degree - q.degree):
            form = q * _monomial_form(mono)
            row = [FieldElement(0)] * ncols
            for t_mono, coef in form.terms.items():
                row[monomial_index(t_mono)] = coef
            if ech.add_row(row):
                basis.append(form)
    return GradedBasis(degree, tuple(basis))


class _SpanMembership:
    """Membership in the degree-d piece of an ideal power, with exact
    certificates in both directions.

    Member: an exact linear combination of monomial multiples of r-fold
    generator products equal to the form.  Non-member: an exact functional
    vanishing on every multiple but not on the form.  Mod-p pictures only
    select pivots; a wrong picture fails exact verification and the prime is
    retried.
    """

    def __init__(self, generators: Sequence[HomogeneousForm], r: int) -> None:
        self.products = _product_forms(list(generators), r)
        self._state: Dict[Tuple[int, int], dict] = {}
        self._functionals: Dict[int, List[Dict[int, FieldElement]]] = {}

    def _handles(self, degree: int) -> List[Tuple[int, Monomial]]:
        handles = []
        for qi, q in enumerate(self.products):
            if q.degree <= degree:
                for mono in monomials_of_degree(degree - q.degree):
                    handles.append((qi, mono))
        return handles

    def _degree_state(self, degree: int, ctx: PrimeContext) -> dict:
        key = (degree, ctx.index)
        state = self._state.get(key)
        if state is not None:
            return state
        ncols = comb(degree + 2, 2)
        handles = self._handles(degree)
        scatters = [_GenScatter(q, ctx) for q in self.products]
        W = np.zeros((len(handles), ncols), dtype=np.int64)
        for ri, (qi, mono) in enumerate(handles):
            _scatter_multiple(scatters[qi], mono, degree, W[ri])
        rank, sel, pcols, reduced = _modular.echelon_modp(W, ctx.p)
        state = {
            "ncols": ncols,
            "handles": handles,
            "rank": rank,
            "sel": sel,
            "pcols": pcols,
            "reduced": reduced,
            "solver": None,
        }
        self._state[key] = state
        return state

    def _exact_handle_entry(self, handle: Tuple[int, Monomial], mono: Monomial) -> Pair:
        qi, shift = handle
        q = self.products[qi]
        inner = (mono[0] - shift[0], mono[1] - shift[1], mono[2] - shift[2])
        if min(inner) < 0:
            return (0, 0)
        coef = q.terms.get(inner)
        if coef is None:
            return (0, 0)
        return (int(coef.rat), int(coef.irr))

    def _square_solver(self, state: dict, degree: int, ctx: PrimeContext) -> DixonSolver:
        if state["solver"] is None:
            monos = monomials_of_degree(degree)
            handles = state["handles"]
            matrix = [
                [self._exact_handle_entry(handles[si], monos[c]) for si in state["sel"]]
                for c in state["pcols"]
            ]
            state["solver"] = DixonSolver(matrix, ctx)
        return state["solver"]

    def member(self, form: HomogeneousForm) -> bool:
        if form.is_zero():
            return True
        last: Optional[Exception] = None
        for idx in range(_modular.prime_count()):
            ctx = PrimeContext(idx)
            try:
                return self._member_with(form, ctx)
            except UnluckyPrimeError as exc:
                last = exc
                continue
        raise ExactSolveError(f"prime table exhausted during membership test: {last}")

    def _member_with(self, form: HomogeneousForm, ctx: PrimeContext) -> bool:
        degree = form.degree
        state = self._degree_state(degree, ctx)
        prim = form.primitive()
        w_pairs = _form_pair_vector(prim)
        w_p = np.array([(a + ctx.sqrt3 * b) % ctx.p for a, b in w_pairs], dtype=np.int64)
        residual = _modular.reduce_against(state["reduced"], state["pcols"], w_p, ctx.p)
        nz = np.nonzero(residual)[0]
        if nz.size == 0:
            return self._certify_member(prim, w_pairs, state, degree, ctx)
        return not self._certify_non_member(prim, w_pairs, state, degree, int(nz[0]), ctx)

    def _certify_member(self, prim: HomogeneousForm, w_pairs: List[Pair], state: dict,
                        degree: int, ctx: PrimeContext) -> bool:
        if state["rank"] == 0:
            raise UnluckyPrimeError("empty span cannot contain a nonzero form")
        solver = self._square_solver(state, degree, ctx)
        rhs = [[w_pairs[c]] for c in state["pcols"]]
        solution = solver.solve(rhs)
        handles = state["handles"]
        combo: Dict[Monomial, FieldElement] = {}
        for i, si in enumerate(state["sel"]):
            fa, fb = solution[i][0]
            if not (fa or fb):
                continue
            coef = FieldElement(fa, fb)
            qi, shift = handles[si]
            for t_mono, t_coef in self.products[qi].terms.items():
                mono = (t_mono[0] + shift[0], t_mono[1] + shift[1], t_mono[2] + shift[2])
                acc = combo.get(mono, FieldElement(0)) + coef * t_coef
                if acc:
                    combo[mono] = acc
                else:
                    combo.pop(mono, None)
        if combo != prim.terms:
            raise UnluckyPrimeError("membership combination failed exact verification")
        return True

    def _certify_non_member(self, prim: HomogeneousForm, w_pairs: List[Pair], state: dict,
                            degree: int, free_col: int, ctx: PrimeContext) -> bool:
        """True when a verified functional separates the form from the span."""
        for phi in self._functionals.get(degree, []):
            if self._apply_functional(phi, w_pairs):
                return True
        phi = self._build_functional(state, degree, free_col, ctx)
        self._verify_functional(phi, state, degree)
        self._functionals.setdefault(degree, []).append(phi)
        if self._apply_functional(phi, w_pairs):
            return True
        raise UnluckyPrimeError("separating functional vanished on the form")

    def _apply_functional(self, phi: Dict[int, FieldElement], w_pairs: List[Pair]) -> bool:
        total = FieldElement(0)
        for col, value in phi.items():
            a, b = w_pairs[col]
            if a or b:
                total = total + value * FieldElement(a, b)
        return bool(total)

    def _build_functional(self, state: dict, degree: int, free_col: int,
                          ctx: PrimeContext) -> Dict[int, FieldElement]:
        handles = state["handles"]
        monos = monomials_of_degree(degree)
        phi: Dict[int, FieldElement] = {free_col: FieldElement(1)}
        if state["rank"]:
            matrix = [
                [self._exact_handle_entry(handles[si], monos[c]) for c in state["pcols"]]
                for si in state["sel"]
            ]
            rhs = []
            for si in state["sel"]:
                a, b = self._exact_handle_entry(handles[si], monos[free_col])
                rhs.append([(-a, -b)])
            solver = DixonSolver(matrix, ctx)
            solution = solver.solve(rhs)
            for i, col in enumerate(state["pcols"]):
                fa, fb = solution[i][0]
                if fa or fb:
                    phi[col] = FieldElement(fa, fb)
        return phi

    def _verify_functional(self, phi: Dict[int, FieldElement], state: dict, degree: int) -> None:
        """Exact check that the functional kills every monomial multiple of
        every product, i.e. the whole graded piece of the power."""
        phi_by_mono: Dict[Monomial, FieldElement] = {}
        monos = monomials_of_degree(degree)
        for col, value in phi.items():
            phi_by_mono[monos[col]] = value
        for q in self.products:
            if q.degree > degree:
                continue
            items = list(q.terms.items())
            for shift in monomials_of_degree(degree - q.degree):
                total = FieldElement(0)
                for t_mono, t_coef in items:
                    mono = (t_mono[0] + shift[0], t_mono[1] + shift[1], t_mono[2] + shift[2])
                    value = phi_by_mono.get(mono)
                    if value is not None and t_coef:
                        total = total + value * t_coef
                if total:
                    raise UnluckyPrimeError("functional failed exact span verification")


def membership(form: HomogeneousForm, generators: Sequence[HomogeneousForm] | GeneratorSet,
               r: int) -> bool:
    """Exact test: does the form lie in the degree-matching piece of the r-th
    power of the ideal generated by the given forms?"""
    gens = list(generators.forms if isinstance(generators, GeneratorSet) else generators)
    if r < 1:
        raise ValueError("power must be a positive integer")
    if form.is_zero():
        return True
    degree = form.degree
    ncols = comb(degree + 2, 2)
    nrows = 0
    for combo in itertools.combinations_with_replacement([g.degree for g in gens], r):
        total = sum(combo)
        if total <= degree:
            nrows += comb(degree - total + 2, 2)
    if nrows * ncols <= _EXACT_CELL_LIMIT:
        span = power_graded_span(gens, r, degree)
        ech = ReducedEchelon(ncols)
        for q in span.forms:
            row = [FieldElement(0)] * ncols
            for mono, coef in q.terms.items():
                row[monomial_index(mono)] = coef
            ech.add_row(row)
        row = [FieldElement(0)] * ncols
        for mono, coef in form.terms.items():
            row[monomial_index(mono)] = coef
        return ech.contains(row)
    return _SpanMembership(gens, r).member(form)


def containment_check(scheme: FatPointScheme, m: int, r: int, *, max_degree: int = 60,
                      threads: int = 1) -> ContainmentReport:
    """Decide whether the m-th symbolic power of the radical ideal of the
    scheme's points lies in the r-th ordinary power.

    The symbolic power is the ideal of the points taken with multiplicity m;
    containment holds iff every minimal generator of it lies in the ordinary
    power, which is checked degree by degree with exact certificates.
    """
    if m < 1:
        raise ValueError("symbolic exponent must be a positive integer")
    if r < 1:
        raise ValueError("ordinary exponent must be a positive integer")
    if threads < 1:
        raise ValueError("threads must be a positive integer")
    if any(mult != 1 for mult in scheme.multiplicities):
        raise ValueError("containment expects a radical scheme (all multiplicities 1)")
    start = time.perf_counter()
    radical_gens = minimal_generators(scheme, max_degree=max_degree)
    if m == 1:
        symbolic_gens = radical_gens
    else:
        symbolic_gens = minimal_generators(scheme.thickened(m), max_degree=max_degree)
    span = _SpanMembership(list(radical_gens.forms), r)
    witnesses: List[HomogeneousForm] = []
    degrees_tested: List[int] = []
    for gen in symbolic_gens.forms:
        if gen.degree not in degrees_tested:
            degrees_tested.append(gen.degree)
        if not span.member(gen):
            witnesses.append(gen)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return ContainmentReport(
        contained=not witnesses,
        witnesses=tuple(witnesses),
        witness_degrees=tuple(w.degree for w in witnesses),
        degrees_scanned=tuple(sorted(degrees_tested)),
        wall_time_ms=elapsed_ms,
    )


def witness_line_factors(form: HomogeneousForm, arrangement: Arrangement,
                         ) -> Tuple[Tuple[int, ...], HomogeneousForm]:
    """Split off all linear factors coming from the arrangement.

    Returns (sorted multiset of line indices, quotient form): the form equals
    the product of the listed lines times the quotient, and the quotient is
    divisible by no arrangement line.
    """
    factors: List[int] = []
    current = form
    for idx, line in enumerate(arrangement.lines):
        divisor = line.form()
        while True:
            quotient = current.exact_divide(divisor)
            if quotient is None:
                break
            factors.append(idx)
            current = quotient
            if current.degree == 0:
                break
    return tuple(sorted(factors)), current


def containment_oracle(scheme: FatPointScheme, m: int, r: int, max_degree: int,
                       ) -> Tuple[bool, Optional[int]]:
    """Brute-force degreewise containment check, independent of the engine.

    For every degree up to the cap, the symbolic piece (exact kernel) must lie
    in the span of all r-fold products of radical kernel pieces over degree
    compositions.  Returns (contained up to cap, first failing degree).
    Intended for small schemes; cost grows quickly with the cap.
    """
    if any(mult != 1 for mult in scheme.multiplicities):
        raise ValueError("oracle expects a radical scheme")
    thick = scheme.thickened(m)
    radical_pieces: Dict[int, List[HomogeneousForm]] = {}

    def radical_piece(d: int) -> List[HomogeneousForm]:
        if d not in radical_pieces:
            rows = vanishing_matrix(scheme, d)
            vectors = kernel_basis(rows, comb(d + 2, 2))
            radical_pieces[d] = _forms_from_vectors(vectors, d)
        return radical_pieces[d]

    alpha = next((d for d in range(max_degree + 1) if radical_piece(d)), None)
    if alpha is None:
        return True, None
    for d in range(max_degree + 1):
        ncols = comb(d + 2, 2)
        sym_rows = vanishing_matrix(thick, d)
        sym_vectors = kernel_basis(sym_rows, ncols)
        if not sym_vectors:
            continue
        ech = ReducedEchelon(ncols)
        for parts in _compositions(d, r, alpha):
            factor_lists = [radical_piece(part) for part in parts]
            for choice in itertools.product(*factor_lists):
                prod = choice[0]
                for extra in choice[1:]:
                    prod = prod * extra
                row = [FieldElement(0)] * ncols
                for mono, coef in prod.terms.items():
                    row[monomial_index(mono)] = coef
                ech.add_row(row)
        for vec in sym_vectors:
            if not ech.contains(vec):
                return False, d
    return True, None


def _compositions(total: int, parts: int, minimum: int) -> List[Tuple[int, ...]]:
    """Nondecreasing integer tuples of the given length and sum."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(minimum, total // parts + 1):
        for rest in _compositions(total - first, parts - 1, first):
            out.append((first,) + rest)
    return out
