"""``asnp`` command line.

Exit codes: 0 ran, 1 usage error or refused parameters, 2 verification
mismatch (verify and sweep commands).
"""

import os
import sys
from functools import wraps
from pathlib import Path

import click

from ..errors import AsnpError, FeasibilityError
from ..polygon import to_csv, to_svg
from . import experiments as ex
from .records import ExperimentRecord, ResultCache, encode

EXIT_USAGE = 1
EXIT_MISMATCH = 2


class Mismatch(Exception):
    pass


def _emit(ctx, record):
    line = record.to_json()
    click.echo(line)
    out = ctx.obj.get("out")
    if out:
        with open(out, "a") as fh:
            fh.write(line + "\n")


def _run(ctx, kind, params, fn, verify=False):
    """Run fn() through the cache and emit one record."""
    cache = None if ctx.obj.get("no_cache") else ResultCache()
    hit = cache.get(kind, params) if cache else None
    if hit is not None:
        record = ExperimentRecord(kind, params, hit["result"], ok=hit["ok"])
        result = hit["result"]
    else:
        result, ok = fn()
        record = ExperimentRecord(kind, params, encode(result), ok=ok)
        if cache:
            cache.put(record)
    _emit(ctx, record)
    if verify and not record.ok:
        raise Mismatch(kind)
    return result


def _write_polygon(np_, csv_path, svg_path, title):
    if csv_path:
        Path(csv_path).write_text(to_csv(np_))
    if svg_path:
        Path(svg_path).write_text(to_svg(np_, title=title))


def _diagnostic(kind, exc):
    body = {"kind": "diagnostic", "error": type(exc).__name__, "message": str(exc),
            "command": kind}
    if isinstance(exc, FeasibilityError) and exc.cost is not None:
        body["cost_estimate"] = exc.cost
    return body


def common(fn):
    @click.option("--out", type=click.Path(dir_okay=False), help="Append JSON lines here too.")
    @click.option("--no-cache", is_flag=True, help="Recompute instead of replaying cached records.")
    @click.option("--threads", type=int, default=None, help="Worker threads for histogram sums.")
    @click.pass_context
    @wraps(fn)
    def wrapper(ctx, out, no_cache, threads, **kw):
        ctx.ensure_object(dict)
        ctx.obj.update(out=out, no_cache=no_cache, threads=threads or os.cpu_count() or 1)
        return fn(ctx, **kw)
    return wrapper


@click.group()
def cli():
    """Newton polygons of Artin-Schreier curves and exponential sums."""


@cli.command()
@click.option("--d", "d", type=int, required=True)
@click.option("--p", "p", type=int, help="A single prime.")
@click.option("--p-range", help="Primes in lo:hi (inclusive).")
@click.option("--family", type=click.Choice(["full", "one-param"]), default="full")
@click.option("--sweep", is_flag=True, help="Check GNP = HP iff p = 1 mod d over the range.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False))
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False))
@common
def gnp(ctx, d, p, p_range, family, sweep, csv_path, svg_path):
    """Asymptotic generic Newton polygons and epsilon tables."""
    if (p is None) == (p_range is None):
        raise click.UsageError("give exactly one of --p and --p-range")
    primes = [p] if p is not None else ex.primes_in(*ex.parse_range(p_range))
    primes = [q for q in primes if q % d and d % q]
    if sweep:
        _run(ctx, "gnp", {"d": d, "primes": primes, "family": family, "sweep": True},
             lambda: ex.run_gnp_sweep(d, primes, family), verify=True)
        return
    for q in primes:
        _run(ctx, "gnp", {"d": d, "p": q, "family": family},
             lambda q=q: ex.run_gnp(d, q, family))
        if p is not None and (csv_path or svg_path):
            _write_polygon(ex.run_gnp(d, q, family)[0]["polygon"], csv_path, svg_path,
                           f"GNP d={d} p={q}")


@cli.command()
@click.argument("theorem", type=click.Choice(["sameNP", "main", "one-param", "counterexample2"]))
@click.option("--d", "d", type=int)
@click.option("--p", "p", type=int)
@click.option("--p-range", help="Run every prime in lo:hi.")
@click.option("--b", "b", type=int, default=1)
@click.option("--ell", type=int, default=1)
@click.option("--f", "f", help="Coefficients a1,...,ad (sameNP, main) or a (one-param).")
@common
def verify(ctx, theorem, d, p, p_range, b, ell, f):
    """Check a theorem instance; exit code 2 on mismatch."""
    th = ctx.obj["threads"]
    if theorem == "counterexample2":
        _run(ctx, "verify", {"theorem": theorem}, lambda: ex.run_counterexample2(threads=th),
             verify=True)
        return
    if d is None or f is None or (p is None) == (p_range is None):
        raise click.UsageError("need --d, --f and exactly one of --p / --p-range")
    primes = [p] if p is not None else ex.primes_in(*ex.parse_range(p_range))
    failures = 0
    for q in primes:
        params = {"theorem": theorem, "d": d, "p": q, "b": b, "ell": ell, "f": f}
        if theorem == "sameNP":
            fn = lambda q=q: ex.run_same_np(d, ex.parse_coeffs(f), q, b, threads=th)
        elif theorem == "main":
            fn = lambda q=q: ex.run_main(d, ex.parse_coeffs(f), q, ell, b, threads=th)
        else:
            fn = lambda q=q: ex.run_one_param(d, ex.parse_coeffs(f)[0], q, b, threads=th)
        try:
            _run(ctx, "verify", params, fn, verify=True)
        except Mismatch:
            failures += 1
    if failures:
        raise Mismatch(theorem)


@cli.command()
@click.option("--d", "d", type=int, required=True)
@click.option("--f", "f", required=True)
@common
def membership(ctx, d, f):
    """Membership in U and the height bound."""
    coeffs = ex.parse_coeffs(f)
    if len(coeffs) != d:
        raise click.UsageError(f"--f must have {d} entries")
    _run(ctx, "membership", {"d": d, "f": f}, lambda: ex.run_membership(coeffs))


@cli.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--b", "b", type=int, default=1)
@click.option("--f", "f", required=True)
@click.option("--alpha", type=int, default=None, help="Integer code of alpha in F_{p^b}.")
@click.option("--alpha-scan", is_flag=True, help="All alpha in F_{p^b}^*.")
@click.option("--method", type=click.Choice(["fast", "naive"]), default="fast")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False))
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False))
@common
def lfun(ctx, p, b, f, alpha, alpha_scan, method, csv_path, svg_path):
    """L-polynomials of alpha*f and their Newton polygons."""
    coeffs = ex.parse_coeffs(f)
    params = {"p": p, "b": b, "f": f, "alpha": alpha, "scan": alpha_scan, "method": method}
    _run(ctx, "lfun", params,
         lambda: ex.run_lfun(p, b, coeffs, alpha, alpha_scan, method,
                             threads=ctx.obj["threads"]))
    if csv_path or svg_path:
        L = ex.run_lfun(p, b, coeffs, alpha, False, method)[0]["lfunctions"][0]
        _write_polygon(L["polygon"], csv_path, svg_path, f"NP(L) p={p} b={b}")


@cli.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--ell", type=int, default=1)
@click.option("--b", "b", type=int, default=1)
@click.option("--f", "f", required=True)
@click.option("--method", type=click.Choice(["direct", "product", "both"]), default="product")
@common
def zeta(ctx, p, ell, b, f, method):
    """Zeta function slopes of y^{p^ell} - y = f(x) over F_{p^b}."""
    coeffs = ex.parse_coeffs(f)
    params = {"p": p, "ell": ell, "b": b, "f": f, "method": method}
    _run(ctx, "zeta", params,
         lambda: ex.run_zeta(p, ell, b, coeffs, method, threads=ctx.obj["threads"]),
         verify=method == "both")


@cli.command()
@click.argument("check", type=click.Choice(["key2", "transform", "leading"]))
@click.option("--d", "d", type=int, default=3)
@click.option("--p", "p", type=int, required=True)
@click.option("--t", "t", type=int, default=3, help="Truncation size (transform).")
@click.option("--count", type=int, default=100, help="Generated matrices (transform).")
@click.option("--seed", type=int, default=0)
@common
def dwork(ctx, check, d, p, t, count, seed):
    """Mod-p congruences and the polygon-transform check."""
    if check == "key2":
        _run(ctx, "dwork-check", {"check": check, "d": d, "p": p},
             lambda: ex.run_key2(d, p), verify=True)
    elif check == "leading":
        _run(ctx, "dwork-check", {"check": check, "d": d, "p": p},
             lambda: ex.run_leading(d, p), verify=True)
    else:
        _run(ctx, "dwork-check", {"check": check, "p": p, "t": t, "count": count, "seed": seed},
             lambda: ex.run_transform(p, t, count, seed), verify=True)


def main(argv=None):
    """Console entry point with the documented exit codes."""
    try:
        cli.main(args=argv, prog_name="asnp", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except Mismatch as exc:
        click.echo(f"verification mismatch: {exc}", err=True)
        return EXIT_MISMATCH
    except (AsnpError, ValueError) as exc:
        import json
        click.echo(json.dumps(_diagnostic(" ".join(argv or sys.argv[1:]), exc)))
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
