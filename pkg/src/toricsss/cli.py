"""Command-line front end.

Exit codes: 0 ok, 1 verify found a VIOLATION, 2 usage or
configuration error, 3 protocol failure (unqualified set or undetermined
product).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import kernels
from .errors import ProductNotDetermined, ToricError, UnqualifiedSet
from .gf import GF, prime_power
from .lattice import (
    Explicit,
    Hirzebruch,
    Hypercube,
    PointSet,
    Trapezoid,
    family_points,
)
from .scheme import (
    build_scheme,
    deal,
    multiply_and_reconstruct,
    reconstruct,
    strong_mult_direct_check,
    thresholds,
    verify_privacy,
)
from .surfaces import (
    family_params,
    reports_to_csv,
    trapezoid_params,
    hirzebruch_params,
    valid_hirzebruch,
    valid_trapezoids,
    validate_family,
)

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_PROTOCOL = 3


class Fail(click.ClickException):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.exit_code = code


def _parse_ints(text: str | None) -> list[int]:
    if text is None or text.strip() in ("", "none"):
        return []
    return [int(x) for x in text.split(",") if x.strip()]


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return _parse_ints(text)


def field_options(f):
    f = click.option("--q", "q", type=int, help="Field size (a prime power).")(f)
    f = click.option("--p", "p", type=int, help="Characteristic (with --k instead of --q).")(f)
    f = click.option("--k", "k", type=int, default=None, help="Extension degree.")(f)
    f = click.option("--modulus", default=None, help="Comma-separated modulus coefficients, lowest first.")(f)
    return f


def scheme_options(f):
    f = field_options(f)
    f = click.option(
        "--family",
        type=click.Choice(["hirzebruch", "trapezoid", "hypercube", "explicit", "points"]),
        default="trapezoid",
        show_default=True,
    )(f)
    for name in ("d", "e", "twist", "a", "b"):
        f = click.option(f"--{name}", type=int, default=None)(f)
    f = click.option("--vertices", default=None, help="Explicit polygon as JSON [[x,y],...].")(f)
    f = click.option("--points", "points_src", default=None, help="PointSet JSON file or inline JSON.")(f)
    f = click.option("--rank", type=int, default=2, show_default=True)(f)
    return f


def budget_options(f):
    f = click.option("--seed", type=int, default=0, show_default=True)(f)
    f = click.option("--budget", type=int, default=2**26, show_default=True, help="Cap on q^k for exhaustive search.")(f)
    f = click.option("--subset-budget", type=int, default=200_000, show_default=True)(f)
    f = click.option("--samples", type=int, default=20000, show_default=True)(f)
    f = click.option("--threads", type=int, default=1, show_default=True)(f)
    return f


def output_options(f):
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="text")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None)(f)
    return f


def make_field(q, p, k, modulus) -> GF:
    mod = _parse_ints(modulus) or None
    if q is not None:
        p_, k_ = prime_power(q)
        if p is not None and p != p_:
            raise Fail(f"--p {p} disagrees with --q {q}")
        return GF(p_, k_, mod)
    if p is None:
        raise Fail("give --q or --p")
    return GF(p, k or 1, mod)


def make_family(opts, F: GF):
    fam = opts["family"]
    if fam == "hirzebruch":
        vals = [opts[x] for x in ("d", "e", "twist")]
        if None in vals:
            raise Fail("hirzebruch needs --d, --e and --twist")
        return Hirzebruch(*vals)
    if fam == "trapezoid":
        if opts["a"] is None or opts["b"] is None:
            raise Fail("trapezoid needs --a and --b")
        return Trapezoid(opts["a"], opts["b"], F.q)
    if fam == "hypercube":
        return Hypercube(F.q, opts["rank"])
    if fam == "explicit":
        if not opts["vertices"]:
            raise Fail("explicit needs --vertices")
        return Explicit(tuple(tuple(v) for v in json.loads(opts["vertices"])))
    return None


def make_points(opts, F: GF) -> tuple[PointSet, object]:
    if opts["family"] == "points":
        src = opts["points_src"]
        if not src:
            raise Fail("--family points needs --points")
        text = Path(src).read_text() if Path(src).exists() else src
        return PointSet.from_json(text), None
    fam = make_family(opts, F)
    return family_points(fam), fam


def emit(payload, fmt: str, out: str | None, text: str | None = None, csv_text: str | None = None):
    if fmt == "json":
        body = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        body = csv_text if csv_text is not None else json.dumps(payload) + "\n"
    else:
        body = text if text is not None else json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(body)
    else:
        click.echo(body, nl=False)


def _header(F: GF) -> str:
    mod = f" modulus={list(F.modulus)}" if F.k > 1 else ""
    return f"# field GF({F.p}^{F.k}) q={F.q} g={F.g}{mod}\n"


def _wrap(fn):
    """Map package errors to exit codes."""

    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (UnqualifiedSet, ProductNotDetermined) as exc:
            raise Fail(f"{type(exc).__name__}: {exc}", EXIT_PROTOCOL)
        except ToricError as exc:
            raise Fail(f"{type(exc).__name__}: {exc}", EXIT_USAGE)
        except (ValueError, KeyError, json.JSONDecodeError) as exc:
            raise Fail(f"{type(exc).__name__}: {exc}", EXIT_USAGE)

    inner.__name__ = fn.__name__
    inner.__doc__ = fn.__doc__
    return inner


@click.group()
@click.option("--backend", type=click.Choice(["auto", "python", "cython"]), default="auto", help="Kernel backend.")
def main(backend):
    """Secret sharing schemes from toric codes."""
    try:
        kernels.use_backend(None if backend == "auto" else backend)
    except RuntimeError as exc:
        raise Fail(str(exc))


@main.command()
@scheme_options
@budget_options
@output_options
@_wrap
def params(fmt, out, seed, budget, subset_budget, samples, threads, q, p, k, modulus, **opts):
    """Scheme parameters with provenance, merged with the family formulas."""
    F = make_field(q, p, k, modulus)
    U, fam = make_points(opts, F)
    predicted = None
    if isinstance(fam, (Hirzebruch, Trapezoid)):
        predicted = family_params(F.q, fam)
    scheme = build_scheme(U, F, opts["rank"] if opts["family"] in ("points", "hypercube") else None)
    report = thresholds(scheme, budget, seed, samples, subset_budget)
    payload = {
        "field": F.spec.to_json(),
        "U_size": len(U),
        "report": report.to_json(),
        "predicted": predicted.to_json() if predicted else None,
    }
    lines = [_header(F), f"n = {report.n}\nk = {report.k}\n"]
    for key in ("d", "d_dual"):
        dr = getattr(report, key)
        lines.append(f"{key} = {dr.value if dr else '-'} ({dr.method if dr else 'zero code'})\n")
    lines.append(f"r = {report.r_threshold} [{report.provenance['r_threshold_kind']}]\n")
    lines.append(f"t = {report.t_threshold} [{report.provenance['t_threshold_kind']}]\n")
    lines.append(f"strong_t = {report.strong_t} [{report.provenance['strong_t']}]\n")
    if predicted:
        for name in ("max_zeros", "r_threshold", "t_threshold_lb", "strong_t"):
            pr = getattr(predicted, name)
            lines.append(f"formula {name} = {pr.value} [{pr.kind}]\n")
    csv_text = "quantity,value\n" + "".join(
        f"{k_},{v}\n" for k_, v in [("n", report.n), ("k", report.k), ("r", report.r_threshold), ("t", report.t_threshold), ("strong_t", report.strong_t)]
    )
    emit(payload, fmt, out, "".join(lines), csv_text)


@main.command("deal")
@scheme_options
@click.option("--secret", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--include-secret", is_flag=True, help="Store the secret in the shares file.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_wrap
def cmd_deal(secret, seed, include_secret, out, q, p, k, modulus, **opts):
    """Deal shares of SECRET and write the shares JSON."""
    F = make_field(q, p, k, modulus)
    if not 0 <= secret < F.q:
        raise Fail(f"secret must be a field element in [0, {F.q})")
    U, _ = make_points(opts, F)
    scheme = build_scheme(U, F)
    sv = deal(scheme, secret, seed)
    emit(sv.to_json(scheme, include_secret), "json", out)


def _load_shares(path):
    data = json.loads(Path(path).read_text())
    fd = data["field"]
    F = GF(int(fd["p"]), int(fd["k"]), fd.get("modulus") or None)
    U = PointSet.from_json(data["scheme"]["U"])
    scheme = build_scheme(U, F)
    index = {pt: i for i, pt in enumerate(scheme.player_points)}
    players, values = [], []
    for entry in data["shares"]:
        pt = tuple(int(c) for c in entry["player"])
        if pt not in index:
            raise ValueError(f"unknown player {pt}")
        v = int(entry["value"])
        if not 0 <= v < F.q:
            raise ValueError(f"share value {v} is not a field element")
        players.append(index[pt])
        values.append(v)
    return scheme, players, values, data


@main.command("reconstruct")
@click.option("--shares", "shares_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--players", default=None, help="Comma-separated positions in the shares list; default all.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@_wrap
def cmd_reconstruct(shares_path, players, fmt):
    """Recover the secret from a shares file."""
    scheme, ids, values, _ = _load_shares(shares_path)
    if players is not None:
        pick = _parse_ints(players)
        ids = [ids[i] for i in pick]
        values = [values[i] for i in pick]
    s = reconstruct(scheme, ids, values)
    if fmt == "json":
        emit({"secret": s, "players": len(ids)}, "json", None)
    else:
        click.echo(_header(scheme.field) + f"secret = {s}")


@main.command("mpc-demo")
@scheme_options
@click.option("--s", "s1", type=int, required=True)
@click.option("--s-tilde", "s2", type=int, required=True)
@click.option("--remove", default="", help="Comma-separated player indices to drop.")
@click.option("--force", is_flag=True, help="Skip the strong-multiplication precheck.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--threads", type=int, default=1)
@output_options
@_wrap
def cmd_mpc_demo(s1, s2, remove, force, seed, threads, fmt, out, q, p, k, modulus, **opts):
    """Share two secrets, multiply shares pointwise, rebuild the product."""
    F = make_field(q, p, k, modulus)
    for s in (s1, s2):
        if not 0 <= s < F.q:
            raise Fail(f"secret {s} is not in [0, {F.q})")
    U, _ = make_points(opts, F)
    scheme = build_scheme(U, F)
    removed = sorted(set(_parse_ints(remove)))
    if any(not 0 <= i < scheme.n for i in removed):
        raise Fail(f"player indices must be in [0, {scheme.n})")
    t = len(removed)
    trace = [f"scheme: n={scheme.n} k={scheme.code.dimension} |U+U|={len(scheme.product_code.exponents)}"]
    if not force:
        ok = verify_privacy(scheme, t, threads=threads) and strong_mult_direct_check(scheme, t, threads=threads)
        trace.append(f"precheck: {t}-strong multiplication {'holds' if ok else 'fails'}")
        if not ok:
            raise Fail(
                f"removing {t} players exceeds the verified strong-multiplication level; use --force",
                EXIT_USAGE,
            )
    a = deal(scheme, s1, seed)
    b = deal(scheme, s2, seed + 1)
    B = [i for i in range(scheme.n) if i not in set(removed)]
    trace.append(f"dealt s={s1} and s~={s2}; {len(B)} surviving players")
    prod = multiply_and_reconstruct(scheme, a, b, B)
    expected = F.mul(s1, s2)
    trace.append(f"reconstructed s*s~ = {prod} (field product {expected})")
    payload = {
        "field": F.spec.to_json(),
        "removed": removed,
        "s": s1,
        "s_tilde": s2,
        "product": prod,
        "expected": expected,
        "trace": trace,
    }
    emit(payload, fmt, out, _header(F) + "\n".join(trace) + "\n")
    if prod != expected:
        raise Fail("reconstructed product does not match", EXIT_PROTOCOL)


def _verify_instances(family, q, all_valid_dims, opts):
    if family == "hirzebruch":
        if all_valid_dims or None in (opts["d"], opts["e"], opts["twist"]):
            return list(valid_hirzebruch(q))
        return [Hirzebruch(opts["d"], opts["e"], opts["twist"])]
    if all_valid_dims or opts["a"] is None or opts["b"] is None:
        return list(valid_trapezoids(q))
    return [Trapezoid(opts["a"], opts["b"], q)]


@main.command("verify")
@click.option("--q", "qs", required=True, help="Field size(s): 5, 4,5,7 or 4..7.")
@click.option("--family", type=click.Choice(["hirzebruch", "trapezoid"]), required=True)
@click.option("--all-valid-dims", is_flag=True)
@click.option("--d", type=int)
@click.option("--e", type=int)
@click.option("--twist", type=int)
@click.option("--a", type=int)
@click.option("--b", type=int)
@budget_options
@output_options
@_wrap
def cmd_verify(qs, family, all_valid_dims, seed, budget, subset_budget, samples, threads, fmt, out, **opts):
    """Compare closed-form parameters with brute-force measurements."""
    reports = []
    for q in _parse_range(qs):
        try:
            prime_power(q)
        except ToricError:
            continue
        if q < 3:
            continue
        for inst in _verify_instances(family, q, all_valid_dims, opts):
            reports.append(validate_family(q, inst, budget, subset_budget, seed, samples))
    if not reports:
        click.echo("warning: no valid instances in range", err=True)
    violations = sum(len(r.violations) for r in reports)
    csv_text = reports_to_csv(reports)
    text = "".join(
        f"{row[0]:>3} {row[1]:<10} {row[2]:<18} {row[3]:<13} pred={row[4]!s:<6} meas={row[5]!s:<6} {row[7]}\n"
        for r in reports
        for row in r.csv_rows()
    ) + f"violations: {violations}\n"
    emit({"reports": [r.to_json() for r in reports], "violations": violations}, fmt, out, text, csv_text)
    if violations:
        sys.exit(EXIT_VIOLATION)


@main.command("table")
@click.option("--family", type=click.Choice(["hirzebruch", "trapezoid"]), required=True)
@click.option("--q", "qs", required=True, help="Field sizes, e.g. 5..9.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_wrap
def cmd_table(family, qs, out):
    """CSV of the closed-form parameters over a range of field sizes."""
    rows = []
    for q in _parse_range(qs):
        try:
            prime_power(q)
        except ToricError:
            continue
        if q < 3:
            continue
        if family == "trapezoid":
            for f in valid_trapezoids(q):
                fp = trapezoid_params(q, f.a, f.b)
                rows.append([q, f"a={f.a};b={f.b}", (q - 1) ** 2 - 1, fp.max_zeros.value, fp.r_threshold.value, fp.t_threshold_lb.value, fp.strong_t.value, fp.strong_t.kind])
        else:
            for f in valid_hirzebruch(q):
                fp = hirzebruch_params(q, f.d, f.e, f.twist)
                rows.append([q, f"d={f.d};e={f.e};twist={f.twist}", (q - 1) ** 2 - 1, fp.max_zeros.value, fp.r_threshold.value, "", "", fp.count_U])
    if not rows:
        click.echo("warning: no valid instances in range", err=True)
    last = "strong_t_kind" if family == "trapezoid" else "count_U"
    header = ["q", "params", "n", "max_zeros", "r_threshold", "t_threshold_lb", "strong_t", last]
    body = ",".join(header) + "\n" + "".join(",".join("" if v is None else str(v) for v in r) + "\n" for r in rows)
    emit(None, "csv", out, csv_text=body)


if __name__ == "__main__":
    main()
