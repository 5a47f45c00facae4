"""Command line surface: single-instance reports, grid scans, verification
suites, and JSON export of the algebra and its modules.

Exit codes: 0 success, 1 verification failure (or internal solver-route
disagreement), 2 usage error.  Scans distribute independent (a, b) cells over
worker processes and always emit rows in lexicographic (a, b) order, so the
output bytes never depend on the worker count.
"""

from __future__ import annotations

import json
import sys
from dataclasses import asdict, dataclass
from multiprocessing import Pool

import click
import numpy as np

from .cohomology import (
    RouteDisagreement,
    cartan_values_annihilated,
    derivation_residual,
    h1,
    inner_space,
    outer_cocycles,
    predictor_clauses,
    report_to_json,
    weight_plus_inner_equals_der,
)
from .linalg import check_odd_prime
from .modules import (
    basis_module_weights,
    build_kac_module,
    build_simple_module,
    case_table_weight_space,
    gmodule_to_json,
    residue,
    residue_comparisons,
    residue_shift_table,
    root_target_weights,
    target_weight_space,
)
from .superalgebra import (
    Weight,
    build_p_tilde_2,
    grade_zero_subalgebra,
    p_tilde_2_matrices,
    root_decomposition,
    superalgebra_to_json,
    supercommutator,
    validate_superalgebra,
)

CSV_HEADER = "a,b,phi_b_minus_a,dim_K,der_even,der_odd,ider,h1,predicted,agrees"


@dataclass(frozen=True)
class ScanRow:
    a: int
    b: int
    phi_b_minus_a: int
    dim_K: int
    dim_der_even: int
    dim_der_odd: int
    dim_ider: int
    h1_total: int
    predicted: int
    agrees: bool

    def csv(self) -> str:
        vals = [
            self.a,
            self.b,
            self.phi_b_minus_a,
            self.dim_K,
            self.dim_der_even,
            self.dim_der_odd,
            self.dim_ider,
            self.h1_total,
            self.predicted,
            str(self.agrees).lower(),
        ]
        return ",".join(str(v) for v in vals)


def _odd_prime_option(ctx, param, value):
    try:
        return check_odd_prime(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _scan_cell(args: tuple[int, int, int]) -> ScanRow:
    p, a, b = args
    g = _algebra_cache(p)
    km = build_kac_module(g, a, b)
    rep = h1(g, km)
    return ScanRow(
        a=a,
        b=b,
        phi_b_minus_a=km.top_index,
        dim_K=km.dim,
        dim_der_even=rep.dims.der_even,
        dim_der_odd=rep.dims.der_odd,
        dim_ider=rep.dims.ider_even + rep.dims.ider_odd,
        h1_total=rep.dims.h1_total,
        predicted=rep.predicted,
        agrees=rep.agrees,
    )


_ALGEBRAS: dict[int, object] = {}


def _algebra_cache(p: int):
    if p not in _ALGEBRAS:
        _ALGEBRAS[p] = build_p_tilde_2(p)
    return _ALGEBRAS[p]


def scan_rows(p: int, jobs: int = 1) -> list[ScanRow]:
    """One row per (a, b) in lexicographic order, identical for any job count."""
    cells = [(p, a, b) for a in range(p) for b in range(p)]
    if jobs > 1:
        with Pool(jobs) as pool:
            return pool.map(_scan_cell, cells)
    return [_scan_cell(c) for c in cells]


def scan_summary(p: int, rows: list[ScanRow]) -> dict:
    counts: dict[str, int] = {}
    for row in rows:
        counts[str(row.h1_total)] = counts.get(str(row.h1_total), 0) + 1
    disagreements = [[r.a, r.b] for r in rows if not r.agrees]
    overlaps = [
        [a, b]
        for a in range(p)
        for b in range(p)
        if len(predictor_clauses(p, a, b)) > 1
    ]
    return {"h1_counts": counts, "disagreements": disagreements, "clause_overlaps": overlaps}


@click.group()
def main():
    """Exact H1 computations for the gl(2,2) supermatrix algebra (A B; C -A^T)."""


@main.command("h1")
@click.option("--p", required=True, type=int, callback=_odd_prime_option, help="odd prime modulus")
@click.option("--a", required=True, type=int, help="highest weight value on h1")
@click.option("--b", required=True, type=int, help="highest weight value on h2")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def cmd_h1(p, a, b, fmt):
    """Compute dim H1 for the Kac module with highest weight (a, b)."""
    g = _algebra_cache(p)
    km = build_kac_module(g, a, b)
    try:
        rep = h1(g, km)
    except RouteDisagreement as exc:
        click.echo(f"internal solver-route disagreement: {exc}", err=True)
        sys.exit(1)
    if fmt == "json":
        click.echo(json.dumps(report_to_json(rep, g, km), indent=2))
        return
    d = rep.dims
    click.echo(f"p = {p}, lambda = ({residue(a, p)}, {residue(b, p)}), dim K = {km.dim}")
    click.echo(f"der_even = {d.der_even}  der_odd = {d.der_odd}")
    click.echo(f"ider_even = {d.ider_even}  ider_odd = {d.ider_odd}")
    click.echo(f"h1_even = {d.h1_even}  h1_odd = {d.h1_odd}  h1_total = {d.h1_total}")
    click.echo(f"predicted = {rep.predicted}  agrees = {str(rep.agrees).lower()}")
    for i, c in enumerate(rep.representatives):
        nz = {
            g.labels[j]: {km.labels[r]: int(c.values[r, j]) for r in np.nonzero(c.values[:, j])[0]}
            for j in range(g.dim)
            if np.any(c.values[:, j])
        }
        click.echo(f"representative {i} (parity {c.parity}): {nz}")


@main.command("scan")
@click.option("--p", required=True, type=int, callback=_odd_prime_option)
@click.option("--out", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--jobs", type=int, default=1, show_default=True)
def cmd_scan(p, out, jobs):
    """Scan the full (a, b) grid; emit one row per weight plus a summary."""
    try:
        rows = scan_rows(p, jobs)
    except RouteDisagreement as exc:
        click.echo(f"internal solver-route disagreement: {exc}", err=True)
        sys.exit(1)
    summary = scan_summary(p, rows)
    if out == "csv":
        click.echo(CSV_HEADER)
        for row in rows:
            click.echo(row.csv())
        click.echo(f"# summary: {json.dumps(summary, sort_keys=True)}", err=True)
    else:
        payload = {"p": p, "rows": [asdict(r) for r in rows], "summary": summary}
        click.echo(json.dumps(payload, indent=2))


def suite_algebra(p: int) -> list[str]:
    """Axioms, the root table, and the bracket round-trip of the realization."""
    failures = []
    g = _algebra_cache(p)
    report = validate_superalgebra(g)
    if report:
        failures.append(f"axiom violations: {report[:5]}")
    expected_roots = {
        Weight(0, 0): ("h1", "h2"),
        Weight(residue(-2, p), 0): ("e13",),
        Weight(residue(-1, p), residue(-1, p)): ("e14+e23",),
        Weight(residue(-1, p), 1): ("alpha",),
        Weight(0, residue(-2, p)): ("e24",),
        Weight(1, residue(-1, p)): ("beta",),
        Weight(1, 1): ("gamma",),
    }
    decomp = root_decomposition(g)
    if set(decomp) != set(expected_roots):
        failures.append(f"root set {sorted(decomp)} != expected {sorted(expected_roots)}")
    else:
        for w, labels in expected_roots.items():
            idx = [g.index(lab) for lab in labels]
            if decomp[w].dim != len(idx) or not all(
                decomp[w].contains(np.eye(g.dim, dtype=np.int64)[i]) for i in idx
            ):
                failures.append(f"root space at {w} is not spanned by {labels}")
    mats = p_tilde_2_matrices(p)
    basis = [mats[lab] for lab in g.labels]
    flat = np.stack([m.reshape(-1) for m in basis], axis=1)
    for i in range(g.dim):
        for j in range(g.dim):
            direct = supercommutator(basis[i], basis[j], p).reshape(-1)
            from_tensor = (flat @ g.structure[i, j]) % p
            if np.any((direct - from_tensor) % p):
                failures.append(f"bracket round-trip fails at ({g.labels[i]}, {g.labels[j]})")
    plus = [i for i in range(g.dim) if g.zgrade[i] == 1]
    for i in plus:
        for j in plus:
            if np.any(g.structure[i, j]):
                failures.append(f"positive-grade part not abelian at ({i}, {j})")
    gi = g.index("gamma")
    if np.any(g.structure[gi, gi]):
        failures.append("[gamma, gamma] != 0")
    return failures


def suite_module(p: int) -> list[str]:
    """Representation law for every Kac module and the highest-weight laws."""
    failures = []
    g = _algebra_cache(p)
    g0 = grade_zero_subalgebra(g)
    for a in range(p):
        for b in range(p):
            try:
                km = build_kac_module(g, a, b)
            except Exception as exc:
                failures.append(f"K({a},{b}) failed: {exc}")
                continue
            simple = build_simple_module(g0, a, b)
            v0 = np.zeros(simple.dim, dtype=np.int64)
            v0[0] = 1
            if np.any(simple.act(g0.index("alpha"), v0)):
                failures.append(f"alpha v0 != 0 at ({a},{b})")
            if not np.array_equal(simple.act(g0.index("h1"), v0), (a % p) * v0 % p):
                failures.append(f"h1 v0 != a v0 at ({a},{b})")
            if not np.array_equal(simple.act(g0.index("h2"), v0), (b % p) * v0 % p):
                failures.append(f"h2 v0 != b v0 at ({a},{b})")
            if km.dim != 2 * (km.top_index + 1):
                failures.append(f"dim K({a},{b}) = {km.dim}")
    return failures


def suite_weights(p: int) -> list[str]:
    """Closed-form basis weights and the root-weight case-table oracle."""
    failures = []
    g = _algebra_cache(p)
    for a in range(p):
        for b in range(p):
            km = build_kac_module(g, a, b)
            wts = basis_module_weights(km)
            t = km.top_index
            for k in range(t + 1):
                if wts[k] != (residue(a + k, p), residue(b - k, p)):
                    failures.append(f"weight of even basis {k} wrong at ({a},{b})")
                if wts[t + 1 + k] != (residue(a + k + 1, p), residue(b - k + 1, p)):
                    failures.append(f"weight of odd basis {k} wrong at ({a},{b})")
            for w in root_target_weights(p):
                if target_weight_space(km, w) != case_table_weight_space(p, a, b, w):
                    failures.append(f"case-table mismatch at (p={p}, a={a}, b={b}, w={w})")
    return failures


def suite_lemmas(p: int) -> list[str]:
    """Residue-comparison equivalences, the shift table, and the derivation lemmas."""
    failures = []
    for b in range(p):
        for name, (lhs, rhs) in residue_comparisons(p, b).items():
            if lhs != rhs:
                failures.append(f"residue comparison {name} fails at b={b}")
        for name, (direct, tabulated) in residue_shift_table(p, b).items():
            if direct != tabulated:
                failures.append(f"shift table row {name} fails at b={b}")
    g = _algebra_cache(p)
    for a in range(p):
        for b in range(p):
            km = build_kac_module(g, a, b)
            try:
                h1(g, km)
            except RouteDisagreement as exc:
                failures.append(str(exc))
            if not weight_plus_inner_equals_der(g, km):
                failures.append(f"WDer + Ider != Der at ({a},{b})")
            bad = cartan_values_annihilated(g, km)
            if bad:
                failures.append(f"Cartan values not annihilated at ({a},{b}): {bad[:3]}")
            try:
                cocycles = outer_cocycles(p, a, b)
            except ValueError:
                continue
            ie, io = inner_space(g, km)
            inner_total = ie + io
            for pos, c in enumerate(cocycles):
                residuals = [
                    (i, j)
                    for i in range(g.dim)
                    for j in range(g.dim)
                    if np.any(derivation_residual(g, km, c, i, j))
                ]
                if residuals:
                    failures.append(f"cocycle {pos} at ({a},{b}) has residuals {residuals[:3]}")
                if inner_total.contains(c.flat()):
                    failures.append(f"cocycle {pos} at ({a},{b}) is inner")
    return failures


_SUITES = {
    "algebra": suite_algebra,
    "module": suite_module,
    "weights": suite_weights,
    "lemmas": suite_lemmas,
}


@main.command("check")
@click.option("--p", required=True, type=int, callback=_odd_prime_option)
@click.option(
    "--suite",
    type=click.Choice(["algebra", "module", "weights", "lemmas", "all"]),
    default="all",
)
def cmd_check(p, suite):
    """Run verification suites across the whole (a, b) grid."""
    names = list(_SUITES) if suite == "all" else [suite]
    any_failed = False
    for name in names:
        failures = _SUITES[name](p)
        if failures:
            any_failed = True
            click.echo(f"suite {name}: FAIL ({len(failures)} findings)")
            for f in failures[:10]:
                click.echo(f"  {f}")
        else:
            click.echo(f"suite {name}: PASS")
    sys.exit(1 if any_failed else 0)


@main.command("export")
@click.option("--p", required=True, type=int, callback=_odd_prime_option)
@click.option("--a", type=int, default=0, show_default=True)
@click.option("--b", type=int, default=0, show_default=True)
@click.option("--what", type=click.Choice(["algebra", "module"]), default="algebra")
def cmd_export(p, a, b, what):
    """Emit the JSON form of the algebra, or of the Kac module at (a, b)."""
    g = _algebra_cache(p)
    if what == "algebra":
        click.echo(json.dumps(superalgebra_to_json(g), indent=2))
    else:
        km = build_kac_module(g, a, b)
        click.echo(json.dumps(gmodule_to_json(km), indent=2))


if __name__ == "__main__":
    main()
