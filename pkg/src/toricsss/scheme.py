"""Massey secret sharing from a toric code on the full torus.

The secret sits at P0 = (1, ..., 1), which is coordinate 0 of the support;
player ``i`` (0-based) owns coordinate ``i + 1``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb
from typing import Optional, Sequence, Union

import numpy as np

from . import kernels
from .code import (
    EXHAUSTIVE_BUDGET,
    DistanceResult,
    EvalCode,
    dual_by_support,
    evaluation_matrix,
    max_zeros,
    torus_support,
)
from .errors import BudgetExceeded, DegenerateScheme, ProductNotDetermined, UnqualifiedSet
from .gf import GF
from .lattice import PointSet, minkowski_sum, reduce_mod

SUBSET_BUDGET = 200_000
BATCH = 4096


@dataclass(frozen=True, eq=False)
class MasseyScheme:
    code: EvalCode
    p0: int = 0
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self) -> GF:
        return self.code.field

    @property
    def n(self) -> int:
        return self.code.length - 1

    @property
    def exponents(self) -> PointSet:
        return self.code.exponents

    @property
    def player_points(self) -> list[tuple[int, ...]]:
        """Exponent tuple of each player's torus point."""
        pts = self.code.support.points
        return [tuple(int(c) for c in pts[i]) for i in range(len(pts)) if i != self.p0]

    def columns(self, players) -> np.ndarray:
        """Support coordinates owned by ``players``."""
        idx = np.asarray(players, dtype=np.int64)
        return idx + (idx >= self.p0)

    @cached_property
    def generator(self) -> np.ndarray:
        return self.code.basis()

    @cached_property
    def product_code(self) -> EvalCode:
        """Evaluation code of the reduced Minkowski sum U + U."""
        V = reduce_mod(minkowski_sum(self.exponents, self.exponents), self.field.q)
        return evaluation_matrix(V, self.code.support)


@dataclass
class ShareVector:
    secret: int
    shares: np.ndarray
    dealer_witness: Optional[np.ndarray] = None

    def to_json(self, scheme: MasseyScheme, include_secret: bool = False) -> dict:
        F = scheme.field
        out = {
            "field": {"p": F.p, "k": F.k, "modulus": list(F.modulus) if F.k > 1 else []},
            "scheme": {
                "U": scheme.exponents.to_json(),
                "p0": "(" + ",".join(["1"] * scheme.code.support.rank) + ")",
            },
            "secret_present": include_secret,
            "shares": [
                {"player": list(pt), "value": int(v)}
                for pt, v in zip(scheme.player_points, self.shares)
            ],
        }
        if include_secret:
            out["secret"] = int(self.secret)
        return out


@dataclass(frozen=True)
class Qualification:
    qualified: bool
    recon_coeffs: Optional[np.ndarray] = None


@dataclass
class SchemeReport:
    n: int
    k: int
    d: Optional[DistanceResult]
    d_dual: Optional[DistanceResult]
    r_threshold: Optional[int]
    t_threshold: Optional[int]
    strong_t: Union[int, str, None]
    provenance: dict

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d.to_json() if self.d else None,
            "d_dual": self.d_dual.to_json() if self.d_dual else None,
            "r_threshold": self.r_threshold,
            "t_threshold": self.t_threshold,
            "strong_t": self.strong_t,
            "provenance": dict(self.provenance),
        }


def build_scheme(U: PointSet, field: GF, rank: Optional[int] = None) -> MasseyScheme:
    if rank is None:
        rank = U.rank
    if len(U) == 0:
        raise ValueError("U must be nonempty")
    S = torus_support(field, rank)
    code = evaluation_matrix(U, S)
    scheme = MasseyScheme(code, S.p0_index)
    others = np.arange(scheme.n)[None, :]
    G = scheme.generator
    if not kernels.batch_in_span(G, G[:, scheme.p0], scheme.columns(others), field)[0]:
        raise DegenerateScheme("the secret coordinate is independent of all shares")
    return scheme


def deal(scheme: MasseyScheme, s0: int, seed: int) -> ShareVector:
    """Sample f uniformly with f(P0) = s0 and evaluate it at every player."""
    F = scheme.field
    M = scheme.code.matrix
    rng = np.random.Generator(np.random.Philox(seed))
    f = rng.integers(0, F.q, size=M.shape[0]).astype(np.int64)
    col = M[:, scheme.p0]
    rest = F.vsum(F.vmul(f[1:], col[1:])) if len(f) > 1 else 0
    f[0] = F.div(F.sub(int(s0), int(rest)), int(col[0]))
    word = F.matmul(f[None, :], M)[0]
    shares = np.delete(word, scheme.p0)
    return ShareVector(int(s0), shares, f)


def _solve_in_span(A, target, F):
    """Coefficients c with A @ c = target, or None if target is not in the column span."""
    A = np.asarray(A, dtype=np.int64)
    k, m = A.shape
    if m == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(target) else None
    R, piv = kernels.rref(np.column_stack([A, target]), F)
    if m in piv:
        return None
    c = np.zeros(m, dtype=np.int64)
    for r, pc in enumerate(piv):
        c[pc] = R[r, m]
    return c


def is_qualified(scheme: MasseyScheme, A: Sequence[int]) -> Qualification:
    G = scheme.generator
    cols = scheme.columns(list(A))
    c = _solve_in_span(G[:, cols], G[:, scheme.p0], scheme.field)
    return Qualification(c is not None, c)


def reconstruct(scheme: MasseyScheme, A: Sequence[int], shares) -> int:
    """Recover the secret from the shares of players ``A`` (in that order)."""
    qual = is_qualified(scheme, A)
    if not qual.qualified:
        raise UnqualifiedSet(f"players {list(A)} do not determine the secret")
    F = scheme.field
    return int(F.vsum(F.vmul(qual.recon_coeffs, np.asarray(shares, dtype=np.int64))))


# subset enumeration

def _subsets(n: int, size: int, budget: int, samples: Optional[int], seed: Optional[int]):
    """Yield batches of player subsets of the given size."""
    total = comb(n, size)
    if total <= budget:
        it = itertools.combinations(range(n), size)
        while True:
            block = list(itertools.islice(it, BATCH))
            if not block:
                return
            yield np.array(block, dtype=np.int64).reshape(len(block), size)
    elif samples is None or seed is None:
        raise BudgetExceeded(f"C({n},{size}) = {total} subsets exceeds budget {budget}")
    else:
        rng = np.random.Generator(np.random.Philox(seed))
        for lo in range(0, samples, BATCH):
            cnt = min(BATCH, samples - lo)
            keys = rng.random((cnt, n))
            yield np.sort(np.argsort(keys, axis=1)[:, :size], axis=1)


def _map_batches(fn, batches, threads: int):
    if threads <= 1:
        return [fn(b) for b in batches]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(fn, batches))


def qualified_mask(scheme: MasseyScheme, subsets) -> np.ndarray:
    G = scheme.generator
    return kernels.batch_in_span(G, G[:, scheme.p0], scheme.columns(subsets), scheme.field)


def verify_privacy(
    scheme: MasseyScheme,
    t: int,
    budget: int = SUBSET_BUDGET,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> bool:
    """True iff no set of ``t`` players is qualified (sampled when over budget)."""
    if t <= 0:
        return True
    if t > scheme.n:
        return False
    batches = _subsets(scheme.n, t, budget, samples, seed)
    results = _map_batches(lambda b: not qualified_mask(scheme, b).any(), batches, threads)
    return all(results)


def verify_reconstruction(
    scheme: MasseyScheme,
    r: int,
    budget: int = SUBSET_BUDGET,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> bool:
    """True iff every set of ``r`` players is qualified (vacuous for r > n)."""
    if r > scheme.n:
        return True
    if r < 0:
        r = 0
    batches = _subsets(scheme.n, r, budget, samples, seed)
    results = _map_batches(lambda b: bool(qualified_mask(scheme, b).all()), batches, threads)
    return all(results)


# thresholds

def thresholds(
    scheme: MasseyScheme,
    budget: int = EXHAUSTIVE_BUDGET,
    seed: Optional[int] = None,
    samples: int = 20000,
    subset_budget: int = 5000,
) -> SchemeReport:
    """Reconstruction and privacy thresholds from the code and dual distances.

    With exact distances, r = n - d + 2 and t = d' - 2. Otherwise a
    randomized max-zeros search gives a lower bound on r and an upper bound
    on t. ``strong_t`` is the largest t <= t(U) passing the direct rank
    check, searched while the subset count stays within ``subset_budget``.
    """
    n = scheme.n
    N = scheme.code.length
    prov = {}
    Z = max_zeros(scheme.code, budget, seed, samples)
    d = DistanceResult(N - Z.value, Z.exact, Z.method)
    r = n - d.value + 2
    prov["d"] = prov["r_threshold"] = "exact" if Z.exact else "randomized-bound"
    prov["r_threshold_kind"] = "exact" if Z.exact else "lower-bound"

    dual = dual_by_support(scheme.code)
    if dual.dimension == 0:
        d_dual = None
        t = n  # nothing constrains the secret: no set is ever qualified
        prov["d_dual"] = prov["t_threshold"] = "exact"
    else:
        Zd = max_zeros(dual, budget, seed, samples)
        d_dual = DistanceResult(N - Zd.value, Zd.exact, Zd.method)
        t = d_dual.value - 2
        prov["d_dual"] = prov["t_threshold"] = "exact" if Zd.exact else "randomized-bound"
    prov["t_threshold_kind"] = "exact" if prov["t_threshold"] == "exact" else "upper-bound"

    strong_t: Union[int, str, None]
    if t < 0:
        strong_t = "vacuous"
        prov["strong_t"] = "exact"
    else:
        strong_t = None
        complete = False
        for cand in range(0, t + 1):
            if comb(n, cand) > subset_budget:
                break
            if strong_mult_direct_check(scheme, cand, subset_budget):
                strong_t = cand
            else:
                complete = True
                break
        else:
            complete = True
        if strong_t is None and complete:
            strong_t = "vacuous"
        exact_t = prov["t_threshold"] == "exact"
        prov["strong_t"] = "exact" if complete and exact_t else "lower-bound"
    return SchemeReport(n, scheme.code.dimension, d, d_dual, r, t, strong_t, prov)


# strong multiplication

def strong_mult_bound_check(
    scheme: MasseyScheme,
    t: int,
    budget: int = EXHAUSTIVE_BUDGET,
    seed: Optional[int] = None,
    samples: int = 20000,
) -> Union[bool, str]:
    """Sufficient condition: t <= n - 1 - maxzeros(U + U code).

    Returns "unknown" when only a randomized lower bound on the maximum
    number of zeros is available and it does not refute the condition.
    """
    if t >= scheme.n:
        return False
    V = scheme.product_code
    try:
        Z = max_zeros(V, budget, seed, samples)
    except ValueError:
        return "unknown"
    holds = t <= scheme.n - 1 - Z.value
    if Z.exact or not holds:
        return holds
    return "unknown"


def _survivor_sets(n: int, removed: np.ndarray) -> np.ndarray:
    """Complements of each row of ``removed`` within range(n)."""
    keep = np.ones((len(removed), n), dtype=bool)
    if removed.shape[1]:
        keep[np.arange(len(removed))[:, None], removed] = False
    return np.nonzero(keep)[1].reshape(len(removed), n - removed.shape[1])


def strong_mult_direct_check(
    scheme: MasseyScheme,
    t: int,
    budget: int = SUBSET_BUDGET,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> bool:
    """For every set A of ``t`` players and B the rest: the U + U code restricted
    to B is injective and its P0 column lies in the span of B's columns."""
    if t < 0 or t >= scheme.n:
        return False
    V = scheme.product_code
    F = scheme.field
    GV = V.basis()
    kV = GV.shape[0]
    if kV > scheme.n - t:
        return False
    target = GV[:, scheme.p0]

    def check(removed):
        cols = scheme.columns(_survivor_sets(scheme.n, removed))
        ok_rank = kernels.batch_rank(GV, cols, F) == kV
        ok_span = kernels.batch_in_span(GV, target, cols, F)
        return bool((ok_rank & ok_span).all())

    batches = _subsets(scheme.n, t, budget, samples, seed)
    return all(_map_batches(check, batches, threads))


def product_coefficients(scheme: MasseyScheme, B: Sequence[int]) -> np.ndarray:
    """Recombination vector for pointwise share products held by ``B``."""
    key = ("prodcoef", tuple(B))
    if key not in scheme._cache:
        V = scheme.product_code
        GV = V.basis()
        c = _solve_in_span(GV[:, scheme.columns(list(B))], GV[:, scheme.p0], scheme.field)
        if c is None:
            raise ProductNotDetermined(f"products held by {list(B)} do not fix s * s~")
        scheme._cache[key] = c
    return scheme._cache[key]


def multiply_and_reconstruct(scheme: MasseyScheme, shares1, shares2, B: Sequence[int]) -> int:
    """Product of the two secrets from the pointwise share products of ``B``.

    ``shares1`` and ``shares2`` are full share vectors (length n) or
    ShareVectors; only the entries of ``B`` are read.
    """
    F = scheme.field
    a = np.asarray(getattr(shares1, "shares", shares1), dtype=np.int64)
    b = np.asarray(getattr(shares2, "shares", shares2), dtype=np.int64)
    B = list(B)
    c = product_coefficients(scheme, B)
    prods = F.vmul(a[B], b[B])
    return int(F.vsum(F.vmul(c, prods)))
