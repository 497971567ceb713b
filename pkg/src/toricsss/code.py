"""Toric evaluation codes on the points of the torus (F_q^*)^r."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .errors import BudgetExceeded, InvalidCode, NotFullSupport, RankMismatch, SizeOverflow
from .gf import GF
from .lattice import PointSet, dual_support, is_inside_h, reduce_mod

MAX_SUPPORT = 2**20
EXHAUSTIVE_BUDGET = 2**26
COLUMN_BUDGET = 2**20
DEFAULT_SAMPLES = 20000


@dataclass(frozen=True, eq=False)
class TorusSupport:
    """Ordered torus points, each stored as its exponent tuple w.r.t. ``field.g``.

    ``full`` is False for restrictions to a proper subset of the torus.
    """

    field: GF
    rank: int
    points: np.ndarray
    p0_index: int = 0
    full: bool = True

    def __len__(self):
        return len(self.points)

    def coordinates(self) -> np.ndarray:
        """Field coordinates ``g**i`` of every point."""
        return self.field.exp[self.points]

    def restrict(self, indices) -> "TorusSupport":
        idx = np.asarray(indices, dtype=np.int64)
        pts = self.points[idx]
        where = np.flatnonzero(~pts.any(axis=1))
        if where.size == 0:
            raise ValueError("restricted support must contain P0 = (1, ..., 1)")
        return TorusSupport(self.field, self.rank, pts, int(where[0]), full=False)


def torus_support(field: GF, rank: int, cap: int = MAX_SUPPORT) -> TorusSupport:
    q = field.q
    if q < 3:
        raise SizeOverflow("the torus over GF(2) has a single point; need q >= 3")
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if (q - 1) ** rank > cap:
        raise SizeOverflow(f"torus of size {(q - 1) ** rank} exceeds cap {cap}")
    pts = np.array(list(itertools.product(range(q - 1), repeat=rank)), dtype=np.int64)
    pts.setflags(write=False)
    return TorusSupport(field, rank, pts, 0, True)


@dataclass(frozen=True)
class DistanceResult:
    value: int
    exact: bool
    method: str  # "exhaustive" | "dependent-columns" | "randomized-lower-bound-on-max-zeros"

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact, "method": self.method}


@dataclass(frozen=True, eq=False)
class EvalCode:
    """Row ``u`` of ``matrix`` is the monomial ``X^u`` evaluated on ``support``."""

    support: TorusSupport
    exponents: PointSet
    matrix: np.ndarray
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> GF:
        return self.support.field

    @property
    def length(self) -> int:
        return len(self.support)

    @cached_property
    def _rref(self):
        R, piv = kernels.rref(self.matrix, self.field)
        return R[: len(piv)], piv

    @property
    def dimension(self) -> int:
        return len(self._rref[1])

    def basis(self) -> np.ndarray:
        """Row-reduced generator matrix with ``dimension`` rows."""
        return self._rref[0]

    def to_json(self) -> dict:
        out = {
            "field": self.field.spec.to_json(),
            "exponents": self.exponents.to_json(),
            "support_size": self.length,
            "generator_matrix": self.matrix.tolist(),
            "dimension": self.dimension,
        }
        for key in ("min_distance", "max_zeros"):
            if key in self._cache:
                out[key] = self._cache[key].to_json()
        return out


def evaluation_matrix(U: PointSet, S: TorusSupport, reduce: bool = True) -> EvalCode:
    """Build the evaluation code of ``U`` on ``S``.

    With ``reduce`` the exponent set is first reduced modulo q-1, which does
    not change the code; without it every point of ``U`` keeps its own row.
    """
    if U.rank != S.rank:
        raise RankMismatch(f"exponent rank {U.rank} against support rank {S.rank}")
    F = S.field
    if reduce:
        U = reduce_mod(U, F.q)
    E = np.array(U.points, dtype=np.int64).reshape(len(U), S.rank)
    logs = (E @ S.points.T) % (F.q - 1)
    M = F.exp[logs] if len(U) else np.zeros((0, len(S)), dtype=np.int64)
    M = np.asarray(M, dtype=np.int64)
    M.setflags(write=False)
    return EvalCode(S, U, M)


def weight_distribution(C: EvalCode, budget: int = EXHAUSTIVE_BUDGET) -> np.ndarray:
    """Number of codewords of each Hamming weight, including the zero word."""
    F = C.field
    k = C.dimension
    if F.q**k > budget:
        raise BudgetExceeded(f"q^k = {F.q}^{k} exceeds exhaustive budget {budget}")
    if "hist" not in C._cache:
        C._cache["hist"] = kernels.weight_histogram(C.basis(), F)
    dist = C._cache["hist"] * (F.q - 1)
    dist[0] += 1
    return dist


def min_distance_exact(
    C: EvalCode, budget: int = EXHAUSTIVE_BUDGET, column_budget: int = COLUMN_BUDGET
) -> DistanceResult:
    """Exact minimum distance.

    Enumerates all codewords when ``q^k <= budget``. Otherwise, when the
    dual is small, finds the fewest linearly dependent columns of a
    parity-check matrix, scanning at most ``column_budget`` column subsets.
    """
    if C.dimension == 0:
        raise InvalidCode("the zero code has no minimum distance")
    if "min_distance" in C._cache:
        return C._cache["min_distance"]
    if C.field.q ** C.dimension <= budget:
        dist = weight_distribution(C, budget)
        res = DistanceResult(int(np.flatnonzero(dist[1:])[0]) + 1, True, "exhaustive")
    else:
        w = _fewest_dependent_columns(dual_by_nullspace(C), C.field, column_budget)
        res = DistanceResult(w, True, "dependent-columns")
    C._cache["min_distance"] = res
    return res


def _fewest_dependent_columns(H, F: GF, budget: int) -> int:
    N = H.shape[1]
    r = H.shape[0]
    if r == 0:
        # full space: unit vectors are codewords
        return 1
    spent = 0
    for w in range(1, r + 2):
        spent += comb(N, w)
        if spent > budget:
            raise BudgetExceeded(
                f"dependent-column search needs more than {budget} column subsets"
            )
        it = itertools.combinations(range(N), w)
        while True:
            block = list(itertools.islice(it, 8192))
            if not block:
                break
            ranks = kernels.batch_rank(H, np.array(block, dtype=np.int64), F)
            if (ranks < w).any():
                return w
    raise AssertionError("r + 1 columns are always dependent")  # unreachable


def max_zeros(
    C: EvalCode,
    budget: int = EXHAUSTIVE_BUDGET,
    seed: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
) -> DistanceResult:
    """Maximum number of zeros of a nonzero codeword.

    Exact whenever ``min_distance_exact`` fits its budgets; otherwise the
    best count found over ``samples`` seeded random codewords, which is only
    a lower bound.
    """
    if C.dimension == 0:
        return DistanceResult(0, True, "exhaustive")
    try:
        d = min_distance_exact(C, budget)
        res = DistanceResult(C.length - d.value, True, d.method)
    except BudgetExceeded:
        if seed is None:
            raise ValueError("randomized max-zeros search needs an explicit seed")
        res = _max_zeros_random(C, seed, samples)
    C._cache["max_zeros"] = res
    return res


def _max_zeros_random(C: EvalCode, seed: int, samples: int) -> DistanceResult:
    F = C.field
    G = C.basis()
    rng = np.random.Generator(np.random.Philox(seed))
    best = 0
    for lo in range(0, samples, 4096):
        n = min(4096, samples - lo)
        msgs = rng.integers(0, F.q, size=(n, G.shape[0]))
        words = F.matmul(msgs, G)
        nz = words.any(axis=1)
        if nz.any():
            best = max(best, int((words[nz] == 0).sum(axis=1).max()))
    return DistanceResult(best, False, "randomized-lower-bound-on-max-zeros")


def dual_by_support(C: EvalCode) -> EvalCode:
    """Dual code as the evaluation code of ``-H \\ -U`` (full torus only)."""
    if not C.support.full:
        raise NotFullSupport("the combinatorial dual needs the full torus as support")
    q = C.field.q
    U = C.exponents
    if not is_inside_h(U, q):
        U = reduce_mod(U, q)
    return evaluation_matrix(dual_support(U, q), C.support)


def dual_by_nullspace(C: EvalCode) -> np.ndarray:
    """Basis of the orthogonal complement under sum(a_l * b_l)."""
    return nullspace(C.matrix, C.field)


def nullspace(M, F: GF) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = kernels.rref(M, F)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for i, fc in enumerate(free):
        N[i, fc] = 1
        for r, pc in enumerate(piv):
            N[i, pc] = F.neg(int(R[r, fc]))
    return N


def same_row_space(A, B, F: GF) -> bool:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    ra = kernels.rank(A, F) if A.size else 0
    rb = kernels.rank(B, F) if B.size else 0
    if ra != rb:
        return False
    stacked = np.vstack([A.reshape(-1, A.shape[-1]), B.reshape(-1, B.shape[-1])])
    return (kernels.rank(stacked, F) if stacked.size else 0) == ra
