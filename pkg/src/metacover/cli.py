"""Command line front end.

Exit codes: 0 ok / match, 1 verification mismatch, 2 invalid input,
3 I/O failure, 4 integrity error (an assumption behind the formulas failed).
"""

from __future__ import annotations

import functools
import json
import math
import sys

import click
import numpy as np

from . import counting, oracle, report
from .errors import DomainError, IntegrityError
from .matrices import identity
from .poly import eigenvalue_traces, geometric_poly, multiplicative_order, split_linear_factors
from .symplectic import adapt_basis

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_IO, EXIT_INTEGRITY = 0, 1, 2, 3, 4


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            _fail(str(exc), EXIT_INVALID)
        except IntegrityError as exc:
            _fail(f"integrity check failed: {exc}", EXIT_INTEGRITY)
    return wrapper


def emit(text: str, out: str | None):
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(f"cannot write {out}: {exc}", EXIT_IO)


def _check_counts(g: int, m: int, n: int):
    if g < 2:
        raise DomainError(f"--g must be >= 2, got {g}")
    if m < 2 or n < 2:
        raise DomainError(f"--m and --n must be >= 2, got m={m}, n={n}")
    if math.gcd(m, n) != 1:
        raise DomainError(f"m and n must be coprime, but gcd({m}, {n}) = {math.gcd(m, n)}")


out_option = click.option("--out", type=click.Path(dir_okay=False), default=None,
                          help="Write output to PATH instead of stdout.")
budget_option = click.option("--budget", type=int, default=oracle.DEFAULT_BUDGET, show_default=True,
                             help="Largest m^dim searched by exhaustive enumeration.")


@click.group()
def main():
    """Count metacyclic étale covers Z/m ⋊ Z/n of a genus-g curve."""


@main.command("count")
@click.option("--g", "g", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.option("--verify", "do_verify", is_flag=True, help="Also run the oracles.")
@budget_option
@out_option
@handle_errors
def count_cmd(g, m, n, fmt, do_verify, budget, out):
    """Print T, N_cyclic and C_total with a per-prime breakdown."""
    _check_counts(g, m, n)
    rep = counting.count_total(g, m, n)
    result = oracle.verify(g, m, n, budget) if do_verify else None
    if result is not None:
        rep.oracle_checked = True
        rep.oracle_value = result.values.get("enumeration", result.kernel.direction_count)
        rep.oracle_method = result.method
    if fmt == "json":
        text = json.dumps(report.count_report_dict(rep, result), indent=2) + "\n"
    elif fmt == "csv":
        status = report.verified_status(result) if result else "skipped"
        text = report.rows_to_csv([report.CensusRow.from_report(rep, status)])
    else:
        text = report.count_report_text(rep)
        if result is not None:
            text += f"verification: {'MATCH' if result.match else 'MISMATCH'} {result.values}\n"
    emit(text, out)
    if result is not None and not result.match:
        sys.exit(EXIT_MISMATCH)


@main.command("census")
@click.option("--g", "g", type=int, required=True)
@click.option("--m-max", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--verify", "do_verify", is_flag=True, help="Run the oracles on every row.")
@budget_option
@out_option
@handle_errors
def census_cmd(g, m_max, n_max, fmt, do_verify, budget, out):
    """Tabulate every coprime pair 2 <= m <= M_MAX, 2 <= n <= N_MAX."""
    if g < 2:
        raise DomainError(f"--g must be >= 2, got {g}")
    if m_max < 2 or n_max < 2:
        raise DomainError(f"empty grid: --m-max and --n-max must be >= 2 (got {m_max}, {n_max})")
    rows = []
    for m in range(2, m_max + 1):
        for n in range(2, n_max + 1):
            if math.gcd(m, n) != 1:
                continue
            status = report.verified_status(oracle.verify(g, m, n, budget)) if do_verify else "skipped"
            rows.append(report.CensusRow.from_report(counting.count_total(g, m, n), status))
    emit(report.rows_to_csv(rows) if fmt == "csv" else report.rows_to_json(rows), out)


@main.command("verify")
@click.option("--g", "g", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--corrupt", type=click.Choice(["none", "enumeration", "kernel"]), default="none",
              hidden=True, help="Test hook: feed the identity matrix to one oracle.")
@budget_option
@out_option
@handle_errors
def verify_cmd(g, m, n, fmt, corrupt, budget, out):
    """Compare the closed form with the kernel and enumeration oracles."""
    _check_counts(g, m, n)
    dim = 2 * (n * (g - 1) + 1)
    hooks = {}
    if corrupt == "enumeration":
        hooks["enum_matrix"] = identity(dim)
    elif corrupt == "kernel":
        hooks["kernel_matrix"] = identity(dim)
    result = oracle.verify(g, m, n, budget, **hooks)
    if fmt == "json":
        rep = counting.count_total(g, m, n)
        text = json.dumps(report.count_report_dict(rep, result), indent=2) + "\n"
    else:
        lines = []
        if result.match:
            lines.append(f"MATCH {result.formula}")
        else:
            lines.append("MISMATCH " + " ".join(f"{k}={v}" for k, v in result.values.items()))
            why = result.explain()
            if why:
                lines.append(f"note: {why}")
        if result.enumeration is None:
            lines.append(f"enumeration skipped: {result.skipped_reason}")
        k = result.kernel
        lines.append(f"kernel: directions={k.direction_count} all-eigenvalue directions={k.all_direction_count} "
                     f"fixed ranks={list(k.fixed_ranks)}")
        for r in k.per_eigenvalue:
            lines.append(f"  lambda={r.eigenvalue} primitive={r.primitive_count} ranks={list(r.ranks)}"
                         f"{'' if r.pure else ' (congruent to 1 modulo some prime power)'}")
        if result.enumeration is not None:
            e = result.enumeration
            lines.append(f"enumeration: directions={e.direction_count} pure={e.pure_direction_count} "
                         f"orbit sizes={e.orbit_sizes}")
        text = "\n".join(lines) + "\n"
    emit(text, out)
    sys.exit(EXIT_OK if result.match else EXIT_MISMATCH)


@main.command("factor")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=int, required=True)
@click.option("--e", "e", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@out_option
@handle_errors
def factor_cmd(n, p, e, fmt, out):
    """Roots of 1 + x + ... + x^(n-1) mod p^e with their Hensel lifts."""
    traces = eigenvalue_traces(n, p, e)
    q = p**e
    f = geometric_poly(n, q)
    _, cofactor = split_linear_factors(n, p, e)
    rows = []
    for t in sorted(traces, key=lambda t: t.lifted):
        rows.append({
            "root_mod_p": t.root,
            "lifted": t.lifted,
            "order": multiplicative_order(t.lifted, q),
            "f_value": f(t.lifted),
            "trace": " -> ".join(f"{val} mod {p}^{k}" for k, val in t.steps),
        })
    if fmt == "json":
        payload = {"n": str(n), "p": str(p), "e": str(e), "modulus": str(q),
                   "roots": [{k: str(v) for k, v in r.items()} for r in rows],
                   "cofactor": [str(c) for c in cofactor.coeffs]}
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        text = "root_mod_p,lifted,order,f_value\n" + "".join(
            f"{r['root_mod_p']},{r['lifted']},{r['order']},{r['f_value']}\n" for r in rows)
    else:
        lines = [f"f(x) = 1 + x + ... + x^{n - 1} over Z/{q}Z: {len(rows)} linear factor(s)",
                 "root mod p | lifted | order d | f(lifted) mod p^e | Hensel trace"]
        lines += [f"{r['root_mod_p']} | {r['lifted']} | {r['order']} | {r['f_value']} | {r['trace']}"
                  for r in rows]
        lines.append(f"cofactor degree {cofactor.degree}: {cofactor}")
        text = "\n".join(lines) + "\n"
    emit(text, out)


def _parse_delta(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"--delta must be comma-separated integers, got {text!r}") from None


@main.command("symplectic")
@click.option("--g", "g", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--delta", "delta_csv", required=True, help="2g comma-separated residues mod n.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@out_option
@handle_errors
def symplectic_cmd(g, n, delta_csv, fmt, out):
    """Symplectic basis adapted to a surjection Z^2g -> Z/nZ."""
    cert = adapt_basis(_parse_delta(delta_csv), g, n)
    checks = cert.checks()
    P = np.asarray(cert.change_of_basis).tolist()
    if fmt == "json":
        payload = {
            "g": str(g), "n": str(n),
            "basis": [[str(x) for x in vec] for vec in cert.basis],
            "change_of_basis": [[str(x) for x in row] for row in P],
            "delta_values": [str(v) for v in cert.delta_values],
            "checks": checks,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        names = [f"x{i + 1}" for i in range(g)] + [f"y{i + 1}" for i in range(g)]
        lines = [f"{name} = {list(vec)}  delta = {val}"
                 for name, vec, val in zip(names, cert.basis, cert.delta_values)]
        lines.append("change of basis:")
        lines += ["  " + " ".join(f"{int(x):>4}" for x in row) for row in P]
        lines += [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in checks.items()]
        text = "\n".join(lines) + "\n"
    emit(text, out)
    if not all(checks.values()):
        sys.exit(EXIT_INTEGRITY)


if __name__ == "__main__":
    main()
