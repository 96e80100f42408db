"""Command-line interface.

Exit codes: 0 success, 1 malformed input or violated precondition,
2 winner iteration budget exhausted without a verdict, 3 explicit
budget/iteration cap exceeded.
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import random
import sys
import time
from fractions import Fraction

import click

from . import cex as cexmod
from . import entropy as ent
from . import stochastic as smpg
from .iteration import (
    SUB,
    Certificate,
    Exhausted,
    IterationCapExceeded,
    WinnerVerdict,
)
from .numeric import NEG_INF

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EXHAUSTED = 2
EXIT_BUDGET = 3


def _frac_str(v) -> str:
    if v is NEG_INF:
        return "-inf"
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _parse_frac(s):
    if s == "-inf":
        return NEG_INF
    return Fraction(s)


def _load_game(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read {path}: {exc}")
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind == "smpg":
        return "smpg", smpg.parse_smpg(obj)
    if kind == "entropy":
        return "entropy", ent.parse_entropy(obj)
    raise smpg.GameFormatError(f'unsupported or missing "type" in {path}')


def _cert_record(cert: Certificate, states=None) -> dict:
    rec = {
        "lam": _frac_str(cert.lam),
        "vec": [_frac_str(v) for v in cert.vec],
        "direction": cert.direction,
        "multiplicative": cert.multiplicative,
    }
    if states is not None:
        rec["states"] = states
    return rec


def _cert_from_record(rec) -> Certificate:
    return Certificate(
        Fraction(rec["lam"]),
        tuple(_parse_frac(v) for v in rec["vec"]),
        rec["direction"],
        bool(rec.get("multiplicative", False)),
    )


def _dec_str(value: Fraction, digits: int = 12) -> str:
    scaled = value * 10**digits
    whole = (scaled.numerator // scaled.denominator
             if scaled >= 0 else -((-scaled.numerator) // scaled.denominator))
    sign = "-" if whole < 0 else ""
    whole = abs(whole)
    return f"{sign}{whole // 10**digits}.{whole % 10**digits:0{digits}d}"


def _interval_record(iv) -> dict:
    return {
        "lo": _frac_str(iv.lo),
        "hi": _frac_str(iv.hi),
        "approx": f"[{_dec_str(iv.lo)}, {_dec_str(iv.hi)}]",
    }


def _emit(report: dict, as_json: bool):
    if as_json:
        click.echo(json.dumps(report, indent=2, sort_keys=True))
        return
    def render(value):
        if isinstance(value, dict):
            if "approx" in value:
                return value["approx"]
            return {k: render(v) for k, v in value.items()}
        if isinstance(value, list):
            return [render(v) for v in value]
        return value

    for key, value in report.items():
        if key == "certificates":
            click.echo(f"certificates: {len(value)} (use --json to inspect)")
        else:
            click.echo(f"{key}: {render(value)}")


@click.group()
def main():
    """Solvers for stochastic mean-payoff and matrix-multiplicative games."""


# ---------------------------------------------------------------------------
# solve


def _solve_smpg(game, mode, budget):
    if mode == "winner":
        verdict = smpg.winner(game)
        if isinstance(verdict, Exhausted):
            return EXIT_EXHAUSTED, {
                "result": "Exhausted",
                "iterations": verdict.iterations,
                "witness": [_frac_str(v) for v in verdict.witness],
            }
        return EXIT_OK, {
            "result": verdict.outcome,
            "iterations": verdict.iterations,
            "witness": [_frac_str(v) for v in verdict.witness],
        }
    if mode == "value":
        sol = smpg.solve_constant_value(game)
        return EXIT_OK, {
            "value": _frac_str(sol.value),
            "interval": _interval_record(sol.interval),
            "iterations": sol.iterations,
            "oracle_calls": sol.oracle_calls,
            "min_strategy": sol.strategies.sigma,
            "max_strategy": sol.strategies.tau,
            "certificates": [
                _cert_record(sol.sub),
                _cert_record(sol.sup),
            ],
        }
    if mode == "topclass":
        sol = smpg.solve_top_class(game)
        return EXIT_OK, {
            "top_class": sorted(sol.states),
            "oracle_calls": sol.oracle_calls,
        }
    # full: top class, then the constant value of its restriction
    tc = smpg.solve_top_class(game)
    sub = smpg.induced_subgame(game, sorted(tc.indices))
    if sub is None:
        raise RuntimeError("top class is not a dominion")
    val = smpg.solve_constant_value(sub)
    return EXIT_OK, {
        "top_class": sorted(tc.states),
        "top_value": _frac_str(val.value),
        "interval": _interval_record(val.interval),
        "oracle_calls": tc.oracle_calls + val.oracle_calls,
        "min_strategy": val.strategies.sigma,
        "max_strategy": val.strategies.tau,
        "certificates": [
            _cert_record(val.sub, _sub_states(sub)),
            _cert_record(val.sup, _sub_states(sub)),
        ],
    }


def _sub_states(game) -> dict:
    if isinstance(game, ent.EntropyGame):
        return {
            "d_states": list(game.d_ids),
            "t_states": list(game.t_ids),
            "p_states": list(game.p_ids),
        }
    return {
        "min_states": list(game.min_ids),
        "max_states": list(game.max_ids),
        "nat_states": list(game.nat_ids),
    }


def _solve_entropy(game, mode, budget):
    if mode == "winner":
        raise smpg.GameFormatError(
            "winner mode is not defined for matrix-multiplicative games"
        )
    sol = ent.solve_entropy_game(game, budget=budget)
    if mode == "topclass":
        return EXIT_OK, {
            "top_class": sorted(sol.blocks[0].d_ids),
            "oracle_calls": sol.blocks[0].oracle_calls,
        }
    report = {
        "values": {d: _interval_record(iv) for d, iv in sol.values.items()},
        "despot_strategy": sol.sigma,
        "tribune_strategy": sol.tau,
        "blocks": [sorted(b.d_ids) for b in sol.blocks],
        "oracle_calls": sum(b.oracle_calls for b in sol.blocks),
        "certificates": [
            _cert_record(c, _sub_states(b.subgame))
            for b in sol.blocks
            for c in (b.sub, b.sup)
        ],
    }
    return EXIT_OK, report


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--mode",
    type=click.Choice(["winner", "value", "topclass", "full"]),
    default="full",
    show_default=True,
)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
@click.option("--budget", type=int, default=10**6, show_default=True,
              help="strategy-enumeration budget for auxiliary brute force")
@click.option("--tol", type=str, default=None,
              help="unused for exact modes; accepted for interface parity")
def solve(input_path, mode, as_json, budget, tol):
    """Solve a game file (winner / value / top class / full analysis)."""
    try:
        kind, game = _load_game(input_path)
        if kind == "smpg":
            code, report = _solve_smpg(game, mode, budget)
        else:
            code, report = _solve_entropy(game, mode, budget)
    except (smpg.GameFormatError, ent.GameFormatError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except IterationCapExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    _emit(report, as_json)
    sys.exit(code)


# ---------------------------------------------------------------------------
# certify


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("cert_path", type=click.Path(exists=True, dir_okay=False))
def certify(input_path, cert_path):
    """Re-verify the certificates of a solve report against a game file,
    in exact arithmetic with zero tolerance."""
    try:
        kind, game = _load_game(input_path)
        with open(cert_path, "r", encoding="utf-8") as fh:
            report = json.load(fh)
        records = report.get("certificates", [])
        if not records:
            raise smpg.GameFormatError("report carries no certificates")
        ok = True
        for rec in records:
            cert = _cert_from_record(rec)
            states = rec.get("states")
            if kind == "smpg":
                target = game
                if states is not None:
                    idx = {s: j for j, s in enumerate(game.min_ids)}
                    target = smpg.induced_subgame(
                        game, [idx[s] for s in states["min_states"]]
                    )
                    if target is None:
                        ok = False
                        continue
                ok = ok and smpg.check_certificate(target, cert)
            else:
                target = game
                if states is not None:
                    target = ent.subgraph_on(
                        game,
                        states["d_states"],
                        states["t_states"],
                        states["p_states"],
                    )
                ok = ok and ent.check_entropy_certificate(target, cert)
    except (smpg.GameFormatError, ent.GameFormatError, ValueError, KeyError,
            json.JSONDecodeError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if ok:
        click.echo("all certificates verified")
        sys.exit(EXIT_OK)
    click.echo("certificate verification FAILED", err=True)
    sys.exit(EXIT_INPUT)


# ---------------------------------------------------------------------------
# brute


@main.command()
@click.argument("input_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget", type=int, default=10**6, show_default=True)
@click.option("--pairs", "pairs_path", type=click.Path(dir_okay=False),
              default=None, help="write the per-pair value table as CSV")
@click.option("--json", "as_json", is_flag=True)
def brute(input_path, budget, pairs_path, as_json):
    """Reference values by strategy enumeration (exact for stochastic games,
    certified brackets for matrix-multiplicative ones)."""
    try:
        kind, game = _load_game(input_path)
        if kind == "smpg":
            res = smpg.brute_force_values(game, budget=budget)
            report = {
                "values": {
                    s: _frac_str(v) for s, v in zip(game.min_ids, res.chi)
                },
                "pairs": len(res.pair_gains),
            }
            if pairs_path:
                with open(pairs_path, "w", encoding="utf-8", newline="") as fh:
                    writer = csv.writer(fh)
                    writer.writerow(["min_strategy", "max_strategy", "state",
                                     "value"])
                    for sigma, tau, gains in res.pair_gains:
                        for s, v in zip(game.min_ids, gains):
                            writer.writerow([" ".join(map(str, sigma)),
                                             " ".join(map(str, tau)),
                                             s, _frac_str(v)])
        else:
            res = ent.brute_force_entropy_values(game, budget=budget)
            report = {
                "values": {
                    s: _interval_record(iv)
                    for s, iv in zip(game.d_ids, res.chi)
                },
                "pairs": res.pair_count,
            }
            if pairs_path:
                with open(pairs_path, "w", encoding="utf-8", newline="") as fh:
                    writer = csv.writer(fh)
                    writer.writerow(["pair_matrix", "state", "lo", "hi"])
                    for key in res.registry.keys():
                        vals = res.registry.values(key, res.fine_tol)
                        for s, iv in zip(game.d_ids, vals):
                            writer.writerow([
                                ";".join(
                                    " ".join(map(str, row)) for row in key
                                ),
                                s, _frac_str(iv.lo), _frac_str(iv.hi),
                            ])
    except (smpg.GameFormatError, ent.GameFormatError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    _emit(report, as_json)
    sys.exit(EXIT_OK)


# ---------------------------------------------------------------------------
# generators


@main.command("gen-random")
@click.option("--kind", type=click.Choice(["smpg", "entropy"]), default="smpg",
              show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write to file instead of stdout")
def gen_random(kind, seed, out):
    """Emit a random small game instance as JSON."""
    rng = random.Random(seed)
    if kind == "smpg":
        obj = smpg.game_to_json(smpg.random_smpg(rng))
    else:
        obj = ent.entropy_to_json(ent.random_entropy_game(rng))
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    sys.exit(EXIT_OK)


@main.command("gen-cex")
@click.option("--n", type=int, required=True, help="length of the fast chain")
@click.option("--w", type=int, required=True, help="matrix weight")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--flip", "flip_max", type=int, default=None,
              help="emit a horizon trace CSV up to this horizon")
@click.option("--flip-out", type=click.Path(dir_okay=False), default=None,
              help="trace CSV path (default: stdout)")
@click.option("--json", "as_json", is_flag=True)
def gen_cex(n, w, out, flip_max, flip_out, as_json):
    """Emit the two-branch slow-flip instance and its metadata."""
    try:
        inst = cexmod.build_cex_game(n, w)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    obj = ent.entropy_to_json(inst.game)
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    meta = {
        "n": inst.n,
        "w": inst.w,
        "k_star": _interval_record(inst.k_star),
        "flip_horizon": cexmod.flip_horizon(n, w),
        "significant_people": inst.significant_people,
        "expansion_factor": inst.expansion_factor,
    }
    if not out:
        meta["game"] = obj
    if flip_max is not None:
        rows = []
        for k in range(flip_max + 1):
            left, right = cexmod.branch_weights(n, w, k)
            rows.append([k, left, right,
                         "left" if left > right else "right"])
        if flip_out:
            with open(flip_out, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["k", "left", "right", "winner"])
                writer.writerows(rows)
        else:
            click.echo("k,left,right,winner")
            for row in rows:
                click.echo(",".join(map(str, row)))
    _emit(meta, as_json)
    sys.exit(EXIT_OK)


# ---------------------------------------------------------------------------
# bench


def _bench_one(args):
    path, budget = args
    start = time.perf_counter()
    kind, game = _load_game(path)
    if kind == "smpg":
        sol = smpg.solve_top_class(game)
        calls = sol.oracle_calls
        n = len(game.min_ids)
    else:
        sol = ent.solve_entropy_game(game, budget=budget)
        calls = sum(b.oracle_calls for b in sol.blocks)
        n = len(game.d_ids)
    return {
        "path": path,
        "kind": kind,
        "states": n,
        "oracle_calls": calls,
        "seconds": round(time.perf_counter() - start, 6),
    }


@main.command()
@click.argument("inputs", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--budget", type=int, default=10**6, show_default=True)
@click.option("--trace", type=click.Path(dir_okay=False), default=None,
              help="write a CSV trace instead of plain text")
def bench(inputs, jobs, budget, trace):
    """Time the solver on one or more game files."""
    tasks = [(path, budget) for path in inputs]
    try:
        if jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
                rows = list(ex.map(_bench_one, tasks))
        else:
            rows = [_bench_one(t) for t in tasks]
    except (smpg.GameFormatError, ent.GameFormatError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    if trace:
        with open(trace, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
    else:
        for row in rows:
            click.echo(
                f"{row['path']}: kind={row['kind']} states={row['states']} "
                f"calls={row['oracle_calls']} seconds={row['seconds']}"
            )
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
