"""Command line front end.

Every compute command prints one JSON document with sorted keys, so byte
output is deterministic for a given request.  Exact values are rendered
as numerator/denominator coefficient tables plus a readable string; any
decimal field is display-only and says so.

Exit codes: 0 success, 1 internal failure or failed verification checks,
2 invalid request, 3 brute-force budget exceeded.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from fractions import Fraction

import click

from . import __version__
from .errors import BudgetError
from .reps import MonomialHermitian, WeightProfile, parse_monomial
from .symb import SignedLaurent, SignedRational

ARTIFACT_VERSION = __version__

_REGION_NAMES = {"O": "O", "unit": "O_unit", "O_unit": "O_unit",
                 "pi": "piO", "piO": "piO"}

_CONFIG_KEYS = ("cache", "decimal", "jobs", "json")


# ---------------------------------------------------------------------------
# rendering

def to_doc(x):
    """Recursively convert result values into JSON-ready structures."""
    if isinstance(x, SignedRational):
        d = x.to_json()
        d["str"] = str(x)
        return d
    if isinstance(x, SignedLaurent):
        return {"num": x.to_json(), "den": {"0": "1"}, "str": str(x)}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or isinstance(x, int) or isinstance(x, float):
        return x
    if isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): to_doc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_doc(v) for v in x]
    if x is None:
        return None
    raise TypeError(f"cannot render {type(x).__name__}")


def _decimal_str(value, places: int) -> str:
    return format(float(value), f".{places}g")


def _emit(ctx, doc: dict):
    compact = ctx.obj["json"]
    if compact:
        text = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    else:
        text = json.dumps(doc, sort_keys=True, indent=2)
    click.echo(text)


# ---------------------------------------------------------------------------
# cache: append-only JSON lines

def _request_key(request: dict) -> str:
    canon = json.dumps(request, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(f"{canon}|v{ARTIFACT_VERSION}".encode()).hexdigest()


def _cache_scan(path: str):
    """Yield (key, value) for well-formed lines; warn and skip the rest."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for ln, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                    key, value = row["key"], row["value"]
                except (json.JSONDecodeError, KeyError, TypeError):
                    click.echo(f"cache: skipping corrupt line {ln}", err=True)
                    continue
                if row.get("version") != ARTIFACT_VERSION:
                    continue
                yield key, value
    except FileNotFoundError:
        return


def _cache_get(path: str, key: str):
    found = None
    for k, v in _cache_scan(path):
        if k == key:
            found = v
    return found


def _cache_put(path: str, key: str, value) -> None:
    row = json.dumps({"key": key, "version": ARTIFACT_VERSION, "value": value},
                     sort_keys=True, separators=(",", ":"))
    data = (row + "\n").encode()
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
    try:
        os.write(fd, data)
    finally:
        os.close(fd)


def _deliver(ctx, request: dict, build):
    """Cache-aware result path shared by the compute commands."""
    key = _request_key(request)
    path = ctx.obj["cache"]
    if path:
        hit = _cache_get(path, key)
        if hit is not None:
            click.echo(f"cache: hit {key[:12]}", err=True)
            _emit(ctx, hit)
            return
    doc = {"request": request}
    doc.update(build())
    doc = to_doc(doc)
    if path:
        _cache_put(path, key, doc)
        click.echo(f"cache: store {key[:12]}", err=True)
    _emit(ctx, doc)


# ---------------------------------------------------------------------------
# config file: KEY=VALUE lines, flags win

def _load_config(path) -> dict:
    out = {}
    if not path:
        path = os.environ.get("HERMDENS_CONFIG")
    if not path or not os.path.exists(path):
        return out
    with open(path, "r", encoding="utf-8") as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                click.echo(f"config: ignoring malformed line {ln}", err=True)
                continue
            key, _, value = line.partition("=")
            key = key.strip().lower()
            value = value.strip()
            if key not in _CONFIG_KEYS:
                click.echo(f"config: unknown key {key!r}", err=True)
                continue
            if key in ("decimal", "jobs"):
                try:
                    out[key] = int(value)
                except ValueError:
                    click.echo(f"config: bad integer for {key}", err=True)
            elif key == "json":
                out[key] = value.lower() in ("1", "true", "yes")
            else:
                out[key] = value
    return out


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise click.UsageError(f"expected comma separated integers, got {text!r}")


def _form(text: str) -> MonomialHermitian:
    try:
        return parse_monomial(text)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _guard(ctx, fn):
    """Map library errors onto the documented exit codes."""
    try:
        return fn()
    except click.ClickException:
        raise
    except BudgetError as exc:
        click.echo(f"budget: {exc}", err=True)
        ctx.exit(3)
    except ValueError as exc:
        click.echo(f"invalid request: {exc}", err=True)
        ctx.exit(2)
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc}", err=True)
        ctx.exit(1)


# ---------------------------------------------------------------------------
# command group

@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="KEY=VALUE settings file (HERMDENS_CONFIG is the fallback).")
@click.option("--cache", "cache_path", type=click.Path(), default=None,
              help="Append-only JSON lines result cache.")
@click.option("--json", "compact", is_flag=True, default=None,
              help="Compact single-line JSON output.")
@click.option("--decimal", type=int, default=None, metavar="K",
              help="Attach K significant digit decimals (display only).")
@click.option("--jobs", type=int, default=None, metavar="N",
              help="Worker processes for oracle sweeps.")
@click.version_option(version=__version__)
@click.pass_context
def main(ctx, config_path, cache_path, compact, decimal, jobs):
    """Exact densities, correction constants and tree intersections."""
    settings = {"cache": None, "decimal": 0, "jobs": 1, "json": False}
    settings.update(_load_config(config_path))
    if cache_path is not None:
        settings["cache"] = cache_path
    if compact is not None:
        settings["json"] = compact
    if decimal is not None:
        settings["decimal"] = decimal
    if jobs is not None:
        settings["jobs"] = jobs
    if settings["jobs"] < 1:
        raise click.UsageError("--jobs must be at least 1")
    if settings["decimal"] < 0:
        raise click.UsageError("--decimal must be nonnegative")
    ctx.obj = settings


@main.command()
@click.option("--kind", type=click.Choice(["norm", "trace_pair", "trace_j1"]),
              required=True)
@click.option("--region", "regions", multiple=True,
              type=click.Choice(sorted(_REGION_NAMES)),
              help="One region for norm, two for trace_pair, none for trace_j1.")
@click.option("--e", "e", type=int, required=True)
@click.option("--oracle", is_flag=True, help="Cross-check by direct character sums.")
@click.option("--p", type=int, default=3, show_default=True)
@click.option("--depth", type=int, default=None)
@click.pass_context
def integral(ctx, kind, regions, e, oracle, p, depth):
    """Entry integrals over one or two coordinate regions."""
    from .locint import charsum_oracle, norm_integral, trace_integral_J1, trace_pair_integral

    regs = tuple(_REGION_NAMES[r] for r in regions)
    want = {"norm": 1, "trace_pair": 2, "trace_j1": 0}[kind]
    if len(regs) != want:
        raise click.UsageError(f"kind {kind} takes exactly {want} --region options")
    if oracle and kind == "trace_j1":
        raise click.UsageError("the indicator integral has no character sum oracle")
    request = {"command": "integral", "kind": kind, "regions": list(regs), "e": e,
               "oracle": bool(oracle), "p": p if oracle else None,
               "depth": depth if oracle else None,
               "decimal": ctx.obj["decimal"]}

    def build():
        if kind == "norm":
            value = norm_integral(regs[0], e)
        elif kind == "trace_pair":
            value = trace_pair_integral(regs[0], regs[1], e)
        else:
            value = trace_integral_J1(e)
        out = {"value": value}
        if ctx.obj["decimal"]:
            out["decimal"] = {"value": _decimal_str(value.evaluate(3), ctx.obj["decimal"]),
                              "at_q": 3, "note": "display only, exact fields are authoritative"}
        if oracle:
            d = depth if depth is not None else abs(e) + 2
            got = charsum_oracle(p, kind, regs if kind == "trace_pair" else regs[0], e, d)
            out["oracle"] = {"p": p, "depth": d, "value": got,
                             "matches": got == value.evaluate(p)}
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--n", type=int, default=1, show_default=True)
@click.option("--h", type=int, required=True)
@click.option("--t", type=int, required=True)
@click.option("--B", "b_text", required=True, metavar="FORM",
              help="diag:e1,e2 or mono:sigma=[..];e=[..]")
@click.option("--symbolic", is_flag=True)
@click.option("--q", type=int, default=None)
@click.option("--emin", type=int, default=None)
@click.option("--emax", type=int, default=None)
@click.option("--r", type=int, default=0, show_default=True,
              help="Lattice scaling exponent (symbolic mode).")
@click.option("--derivative", is_flag=True)
@click.pass_context
def wdens(ctx, n, h, t, b_text, symbolic, q, emin, emax, r, derivative):
    """Weighted density of a rank one form, exact or truncated numeric."""
    from .whit import w_density_n1, w_density_truncated

    if n != 1:
        raise click.UsageError("only n=1 carries the summed density")
    numeric = q is not None or emin is not None or emax is not None
    if symbolic == numeric:
        raise click.UsageError("choose either --symbolic or --q with --emin/--emax")
    if numeric and (q is None or emin is None or emax is None):
        raise click.UsageError("numeric mode needs --q, --emin and --emax")
    B = _form(b_text)
    mode = "symbolic" if symbolic else "numeric"
    request = {"command": "wdens", "n": n, "h": h, "t": t, "B": b_text.strip(),
               "mode": mode, "q": q, "emin": emin, "emax": emax, "r": r,
               "derivative": bool(derivative), "decimal": ctx.obj["decimal"]}

    def build():
        if symbolic:
            value, prime = w_density_n1(B, h, t, r)
            out = {"value": value}
            if derivative:
                out["derivative"] = prime
            if ctx.obj["decimal"]:
                dec = {"value": _decimal_str(value.evaluate(3), ctx.obj["decimal"]),
                       "at_q": 3, "note": "display only, exact fields are authoritative"}
                if derivative:
                    dec["derivative"] = _decimal_str(prime.evaluate(3), ctx.obj["decimal"])
                out["decimal"] = dec
            return out
        window = max(abs(emin), abs(emax))
        got = w_density_truncated(B, WeightProfile(1, h, t, r), q, window)
        out = {"value": got["value"], "tail_report": got["tail_report"]}
        if derivative:
            out["derivative"] = got["derivative"]
        if ctx.obj["decimal"]:
            dec = {"value": _decimal_str(got["value"], ctx.obj["decimal"]),
                   "at_q": q, "note": "display only, exact fields are authoritative"}
            if derivative:
                dec["derivative"] = _decimal_str(got["derivative"], ctx.obj["decimal"])
            out["decimal"] = dec
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--h", type=int, required=True)
@click.option("--closed", is_flag=True,
              help="Compare the top constant against its closed form (h = n-1).")
@click.option("--verify", "check", is_flag=True,
              help="Check the derivative correction identity on --B.")
@click.option("--B", "b_text", default=None, metavar="FORM")
@click.option("--q", type=int, default=None,
              help="Also evaluate both identity sides at this prime.")
@click.pass_context
def beta(ctx, n, h, closed, check, b_text, q):
    """Correction constants from the exact linear system."""
    from .beta import beta_closed_last, solve_constants, verify_thm314

    if closed and h != n - 1:
        raise click.UsageError("--closed applies to the h = n-1 system")
    if check and (n != 1 or b_text is None):
        raise click.UsageError("--verify needs n=1 and a --B form")
    request = {"command": "beta", "n": n, "h": h, "closed": bool(closed),
               "verify": bool(check), "B": b_text, "q": q,
               "decimal": ctx.obj["decimal"]}

    def build():
        sol = solve_constants(n, h)
        out = {"beta_h": list(sol.beta_h), "beta_dual": list(sol.beta_dual),
               "delta": sol.delta}
        if closed:
            cf = beta_closed_last(n)
            out["closed_last"] = cf
            out["closed_matches"] = sol.beta_h[n - 1] == cf
        if check:
            res = verify_thm314(_form(b_text), h)
            block = {"lhs": res["lhs"], "rhs": res["rhs"], "match": res["match"]}
            if q is not None:
                block["lhs_at_q"] = res["lhs"].evaluate(q)
                block["rhs_at_q"] = res["rhs"].evaluate(q)
            out["identity"] = block
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--xi", required=True, metavar="E1,E2,..",
              help="Ambient diagonal exponents, sorted decreasing.")
@click.option("--lam", required=True, metavar="E1,E2,..",
              help="Target diagonal exponents, sorted decreasing.")
@click.option("--prime", "with_prime", is_flag=True)
@click.option("--pad", type=int, default=0, show_default=True,
              help="Even number of unimodular slots appended to the ambient form.")
@click.option("--brute", is_flag=True, help="Corroborate by direct counting.")
@click.option("--q", type=int, default=3, show_default=True)
@click.option("--d", type=int, default=2, show_default=True)
@click.pass_context
def alpha(ctx, xi, lam, with_prime, pad, brute, q, d):
    """Classical density of one diagonal form in another."""
    from .cdens import alpha_brute, alpha_prime, alpha_value, hironaka_coeffs

    if pad % 2 or pad < 0:
        raise click.UsageError("--pad must be an even nonnegative count")
    xi_t, lam_t = _ints(xi), _ints(lam)
    request = {"command": "alpha", "xi": list(xi_t), "lam": list(lam_t),
               "prime": bool(with_prime), "pad": pad, "brute": bool(brute),
               "q": q if brute else None, "d": d if brute else None,
               "decimal": ctx.obj["decimal"]}

    def build():
        coeffs = hironaka_coeffs(xi_t, lam_t)
        value = alpha_value(coeffs, r=pad // 2)
        out = {"coefficients": list(coeffs), "value": value}
        if with_prime:
            out["prime"] = alpha_prime(coeffs)
        if ctx.obj["decimal"]:
            out["decimal"] = {"value": _decimal_str(value.evaluate(3), ctx.obj["decimal"]),
                              "at_q": 3, "note": "display only, exact fields are authoritative"}
        if brute:
            counted = alpha_brute(xi_t + (0,) * pad, lam_t, q, d)
            out["brute"] = {"p": q, "d": d, "value": counted,
                            "matches": counted == value.evaluate(q)}
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--t", type=int, required=True)
@click.option("--B", "b_text", required=True, metavar="FORM")
@click.pass_context
def jfun(ctx, t, b_text):
    """Normalized derivative functional of a rank one form."""
    from .cdens import jfun_n1

    B = _form(b_text)
    request = {"command": "jfun", "t": t, "B": b_text.strip(),
               "decimal": ctx.obj["decimal"]}

    def build():
        value = jfun_n1(t, B)
        out = {"value": value}
        if ctx.obj["decimal"]:
            out["decimal"] = {"value": _decimal_str(value.evaluate(3), ctx.obj["decimal"]),
                              "at_q": 3, "note": "display only, exact fields are authoritative"}
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--B1", "b1", required=True, metavar="E1,..,E(N+1)",
              help="Diagonal exponents of the top block, nonnegative.")
@click.pass_context
def appendix(ctx, n, b1):
    """Bottom-rank compatibility identity on split forms."""
    from .cdens import appendix_compat

    exps = _ints(b1)
    request = {"command": "appendix", "n": n, "B1": list(exps),
               "decimal": ctx.obj["decimal"]}

    def build():
        return appendix_compat(n, exps)

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--mx", type=int, required=True)
@click.option("--my", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--vdet", type=int, default=None,
              help="Determinant valuation; inferred in the overlapping case.")
@click.option("--per-f", "per_f", is_flag=True,
              help="Split the vertical pairing by bucket.")
@click.pass_context
def tree(ctx, q, mx, my, d, vdet, per_f):
    """Intersection number of the two-ball configuration."""
    from .tree import TreeInstance, fk_buckets, intersect_zy

    request = {"command": "tree", "q": q, "mx": mx, "my": my, "d": d,
               "vdet": vdet, "per_f": bool(per_f), "decimal": ctx.obj["decimal"]}

    def build():
        inst = TreeInstance(q, mx, my, d) if vdet is None \
            else TreeInstance(q, mx, my, d, vdet=vdet)
        res = intersect_zy(inst)
        out = {"case": res["case"], "r": inst.r, "vdet": inst.vdet,
               "intersection": res["total"]}
        for extra in ("vertical", "horizontal", "diff_sum"):
            if extra in res:
                out[extra] = res[extra]
        if per_f:
            buckets = fk_buckets(inst)
            out["f_components"] = {str(k): v for k, v in sorted(buckets.items())}
        return out

    _guard(ctx, lambda: _deliver(ctx, request, build))


@main.command()
@click.option("--suite", required=True, metavar="NAME")
@click.option("--q", type=int, default=3, show_default=True)
@click.pass_context
def verify(ctx, suite, q):
    """Run an identity suite and report each check."""
    from .verify import run_suite

    def run():
        report = run_suite(suite, q=q, jobs=ctx.obj["jobs"])
        if ctx.obj["json"]:
            _emit(ctx, to_doc(report))
        else:
            for c in report["checks"]:
                line = f"[{c['status']:4s}] {c['anchor']:32s} {c['id']} ({c['elapsed']:.3f}s)"
                if c["status"] != "pass":
                    line += f"\n       lhs={c['lhs']}\n       rhs={c['rhs']}"
                click.echo(line)
            click.echo(f"suite {report['suite']}: {report['passed']} passed, "
                       f"{report['failed']} failed ({report['elapsed']:.2f}s)")
        if report["failed"]:
            ctx.exit(1)

    _guard(ctx, run)


@main.group()
def cache():
    """Inspect or edit the result cache."""


@cache.command("stats")
@click.pass_context
def cache_stats(ctx):
    path = ctx.obj["cache"]
    if not path:
        raise click.UsageError("no cache file configured (use --cache)")
    entries = 0
    keys = set()
    for k, _ in _cache_scan(path):
        entries += 1
        keys.add(k)
    _emit(ctx, {"path": path, "entries": entries, "distinct_keys": len(keys),
                "version": ARTIFACT_VERSION})


@cache.command("get")
@click.option("--key", required=True)
@click.pass_context
def cache_get(ctx, key):
    path = ctx.obj["cache"]
    if not path:
        raise click.UsageError("no cache file configured (use --cache)")
    value = _cache_get(path, key)
    if value is None:
        click.echo("key not found", err=True)
        ctx.exit(2)
    _emit(ctx, value)


@cache.command("put")
@click.option("--key", required=True)
@click.option("--value", "value_text", required=True, metavar="JSON")
@click.pass_context
def cache_put(ctx, key, value_text):
    path = ctx.obj["cache"]
    if not path:
        raise click.UsageError("no cache file configured (use --cache)")
    try:
        value = json.loads(value_text)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"--value is not valid JSON: {exc}")
    _cache_put(path, key, value)
    click.echo(f"stored {key[:12]}", err=True)


if __name__ == "__main__":
    main()
