"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they also appear in the terminal summary.
"""

import itertools
import time

import numpy as np
import pytest
from click.testing import CliRunner

from toricsss.cli import main
from toricsss.code import (
    dual_by_nullspace,
    dual_by_support,
    evaluation_matrix,
    min_distance_exact,
    same_row_space,
    torus_support,
)
from toricsss.gf import GF
from toricsss.lattice import Hirzebruch, PointSet, Trapezoid, family_points, hypercube, reduce_mod
from toricsss.scheme import (
    build_scheme,
    deal,
    is_qualified,
    multiply_and_reconstruct,
    strong_mult_direct_check,
    verify_reconstruction,
)
from toricsss.surfaces import MATCHES, valid_hirzebruch, validate_family

FIELDS = {4: GF(2, 2), 5: GF(5), 8: GF(2, 3)}
LINES = []


def report(label, ok, detail, elapsed, limit):
    ok = bool(ok) and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'}  {label:<58} {detail}  [{elapsed:.1f}s < {limit}s]"
    LINES.append(line)
    print(line)
    assert ok, line


def all_codewords(G, F):
    """Every codeword of the row space of G, by enumeration of coefficients."""
    coeffs = np.array(list(itertools.product(range(F.q), repeat=G.shape[0])), dtype=np.int64)
    return F.matmul(coeffs, G)


def exhaustive_max_zeros(G, F, chunk=1 << 14):
    best = 0
    it = itertools.product(range(F.q), repeat=G.shape[0])
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return best
        W = F.matmul(np.array(block, dtype=np.int64), G)
        nz = W.any(axis=1)
        if nz.any():
            best = max(best, int((W[nz] == 0).sum(axis=1).max()))


def random_subsets(q, count, seed, max_size=None):
    rng = np.random.default_rng(seed)
    H = list(hypercube(q, 2))
    out = []
    while len(out) < count:
        size = int(rng.integers(1, (max_size or len(H) - 1) + 1))
        idx = rng.choice(len(H), size=size, replace=False)
        out.append(PointSet(2, [H[i] for i in idx]))
    return out


def test_c1_duality():
    t0 = time.perf_counter()
    ok = True
    checked = 0
    for q in (4, 5):
        F = FIELDS[q]
        S = torus_support(F, 2)
        for U in random_subsets(q, 50, seed=100 + q):
            C = evaluation_matrix(U, S)
            D = dual_by_support(C)
            ok &= not F.matmul(C.matrix, D.matrix.T).any()
            ok &= C.dimension + D.dimension == (q - 1) ** 2
            ok &= same_row_space(D.matrix, dual_by_nullspace(C), F)
            checked += 1
    report("1 duality G_U G_dual^T = 0, dims, row spaces", ok, f"{checked} codes", time.perf_counter() - t0, 5)


def test_c2_hirzebruch_exact():
    t0 = time.perf_counter()
    F = FIELDS[5]
    U = family_points(Hirzebruch(1, 1, 1))
    sc = build_scheme(U, F)
    mz = exhaustive_max_zeros(sc.code.matrix, F)
    d = min_distance_exact(sc.code).value
    r = sc.n - d + 2
    ok = len(U) == 5 and mz == 8 == max(7, 8) and r == 9
    ok &= verify_reconstruction(sc, 9) and not verify_reconstruction(sc, 8)
    rows = 0
    for h in valid_hirzebruch(5):
        if max(h.d, h.e, h.twist) > 2:
            continue
        rep = validate_family(5, h)
        for row in rep.rows:
            if row.quantity in ("count_U", "max_zeros", "r_threshold"):
                ok &= row.status == MATCHES
                rows += 1
    report("2 Hirzebruch q=5 exact max zeros and r", ok, f"|U|={len(U)} maxzeros={mz} r={r} rows={rows}",
           time.perf_counter() - t0, 60)


def test_c3_trapezoid_bounds():
    t0 = time.perf_counter()
    F = FIELDS[5]
    sc = build_scheme(family_points(Trapezoid(1, 1, 5)), F)
    mz = exhaustive_max_zeros(sc.code.matrix, F)
    dual = dual_by_support(sc.code)
    d_dual = min_distance_exact(dual).value
    d_dual_enum = dual.length - exhaustive_max_zeros(dual.basis(), F)
    t = d_dual - 2
    ok = mz <= 13 and d_dual == d_dual_enum and t >= 0 and verify_reconstruction(sc, 14)
    report("3 trapezoid (1,1) q=5 bounds", ok, f"maxzeros={mz}<=13 t={t}>=0 r<=14",
           time.perf_counter() - t0, 120)


def test_c4_threshold_oracle():
    t0 = time.perf_counter()
    F = FIELDS[4]
    ok = True
    for U in random_subsets(4, 20, seed=44, max_size=4):
        sc = build_scheme(U, F)
        n = sc.n
        words = all_codewords(sc.code.matrix, F)
        # A is qualified iff no codeword vanishes on A but not at P0
        secret_nz = words[:, 0] != 0
        qualified = {}
        for mask in range(1 << n):
            A = [i for i in range(n) if mask >> i & 1]
            cols = [i + 1 for i in A]
            vanish = ~words[:, cols].any(axis=1) if cols else np.ones(len(words), bool)
            qualified[mask] = not (vanish & secret_nz).any()
            ok &= qualified[mask] == is_qualified(sc, A).qualified
        by_size = {m: [qualified[x] for x in qualified if bin(x).count("1") == m] for m in range(n + 1)}
        r = min(m for m in range(n + 1) if all(by_size[m]))
        t = max([m for m in range(n + 1) if not any(by_size[m])], default=-1)
        d = min_distance_exact(sc.code).value
        dual = dual_by_support(sc.code)
        dd = dual.length - exhaustive_max_zeros(dual.basis(), F) if dual.dimension else None
        ok &= r == n - d + 2
        ok &= t == (dd - 2 if dd is not None else n)
    report("4 Massey thresholds q=4, 20 sets, all 2^8 player sets", ok, "r=n-d+2 t=d'-2",
           time.perf_counter() - t0, 60)


def test_c5_perfect_privacy():
    t0 = time.perf_counter()
    F = FIELDS[4]
    U = PointSet(2, [(0, 0), (1, 0), (0, 1)])
    sc = build_scheme(U, F)
    M = sc.code.matrix
    ok = sc.code.dimension == 3
    polys = np.array(list(itertools.product(range(4), repeat=3)), dtype=np.int64)
    words = F.matmul(polys, M)
    unqualified = 0
    for mask in range(1 << sc.n):
        A = [i for i in range(sc.n) if mask >> i & 1]
        if is_qualified(sc, A).qualified:
            continue
        unqualified += 1
        cols = [i + 1 for i in A]
        counts = {}
        for w in words:
            key = tuple(w[cols])
            counts.setdefault(key, [0] * 4)[w[0]] += 1
        ok &= all(len(set(c)) == 1 for c in counts.values())
    report("5 perfect privacy q=4 k=3", ok, f"{unqualified} unqualified sets", time.perf_counter() - t0, 60)


def test_c6_strong_multiplication():
    t0 = time.perf_counter()
    F = FIELDS[8]
    sc = build_scheme(family_points(Trapezoid(2, 2, 8)), F)
    ok = sc.n == 48 and sc.product_code.dimension == 35
    ok &= strong_mult_direct_check(sc, 1)
    rng = np.random.default_rng(6)
    runs = 0
    for pair in range(100):
        s1, s2 = (int(x) for x in rng.integers(0, 8, size=2))
        a = deal(sc, s1, 2 * pair)
        b = deal(sc, s2, 2 * pair + 1)
        want = F.mul(s1, s2)
        for removed in range(48):
            B = [i for i in range(48) if i != removed]
            ok &= multiply_and_reconstruct(sc, a, b, B) == want
            runs += 1
    report("6 strong multiplication q=8 trapezoid (2,2)", ok, f"{runs} products", time.perf_counter() - t0, 120)


def test_c7_translation_reduction():
    t0 = time.perf_counter()
    q = 5
    F = FIELDS[5]
    S = torus_support(F, 2)
    coords = S.coordinates()
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(100):
        pts = rng.integers(0, 13, size=(int(rng.integers(1, 8)), 2))
        U = PointSet(2, pts.tolist())
        raw = evaluation_matrix(U, S, reduce=False).matrix
        oracle = np.array([[F.mul(F.pow(int(x), u[0]), F.pow(int(y), u[1])) for x, y in coords] for u in U])
        ok &= np.array_equal(raw, oracle)
        shift = rng.integers(-3, 4, size=2) * (q - 1)
        moved = PointSet(2, [(x + shift[0], y + shift[1]) for x, y in U])
        moved = PointSet(2, [(x + 8, y + 8) for x, y in moved])  # keep exponents nonnegative
        ok &= np.array_equal(evaluation_matrix(moved, S, reduce=False).matrix, raw)
        red = evaluation_matrix(reduce_mod(U, q), S, reduce=False).matrix
        ok &= same_row_space(raw, red, F)
    report("7 translation and reduction invariance q=5", ok, "100 sets", time.perf_counter() - t0, 10)


def test_c8_no_violation_sweep():
    t0 = time.perf_counter()
    runner = CliRunner()
    outputs = [
        runner.invoke(main, ["verify", "--q", "4,5", "--family", "hirzebruch", "--all-valid-dims", "--format", "csv"]),
        runner.invoke(main, ["verify", "--q", "4,5,7", "--family", "trapezoid", "--all-valid-dims", "--format", "csv"]),
    ]
    rows = [line for res in outputs for line in res.output.splitlines()[1:]]
    violations = sum(line.endswith(",VIOLATION") for line in rows)
    ok = all(res.exit_code == 0 for res in outputs) and violations == 0 and len(rows) > 0
    report("8 no-violation sweep", ok, f"{len(rows)} rows, {violations} violations", time.perf_counter() - t0, 600)


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None and LINES:
        tr.write_line("")
        tr.write_line("acceptance summary")
        for line in LINES:
            tr.write_line(line)
