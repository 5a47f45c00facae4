"""Derivation spaces, inner derivations and first cohomology H1 = Der/Ider.

A cochain is a linear map from the algebra into the module, stored as a
dim(M) x dim(g) matrix whose column j is the value on basis element x_j.  A
parity-f cochain phi is a derivation when, for all homogeneous x, y,

    phi([x, y]) = (-1)^{f|x|} x phi(y) - (-1)^{|y|(f+|x|)} y phi(x).

Derivation spaces are kernels of one linear block per ordered basis pair (all
64 pairs are generated; the redundancy is free at this scale and guards
against sign slips).  All subspaces live in the flattened coordinate space of
cochain matrices, flat index (row r, column j) -> r * dim(g) + j, so sums,
intersections and membership tests compose across solver routes.

h1 always runs two independent routes, dim Der - dim Ider and
dim WDer - dim(WDer meet Ider) over weight-constrained cochains, and treats
any disagreement as a fatal internal error.  The closed-form predictor is a
third value; predictor disagreement is reported, not raised, since the
validated solver is the oracle of record.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import FpMatrix, Subspace, check_odd_prime
from .modules import GModule, basis_module_weights, build_kac_module, residue
from .superalgebra import P2_LABELS, Superalgebra, basis_root_weights, build_p_tilde_2

__all__ = [
    "Cochain",
    "CochainSpace",
    "H1Dims",
    "CohomologyReport",
    "RouteDisagreement",
    "derivation_residual",
    "derivation_space",
    "weight_derivation_space",
    "inner_derivation",
    "inner_space",
    "module_invariants",
    "outer_cocycles",
    "predict_h1",
    "predictor_clauses",
    "h1",
    "cartan_values_annihilated",
    "weight_plus_inner_equals_der",
    "report_to_json",
    "analyze",
]


class RouteDisagreement(RuntimeError):
    """The full-derivation route and the weight-derivation route disagreed."""

    def __init__(self, p, weight, der_route, weight_route):
        self.p = p
        self.weight = weight
        self.der_route = der_route
        self.weight_route = weight_route
        super().__init__(
            f"solver routes disagree at p={p}, lambda={weight}: "
            f"der-ider={der_route} vs wder-(wder^ider)={weight_route}"
        )


@dataclass(frozen=True, eq=False)
class Cochain:
    """A homogeneous linear map algebra -> module; column j = value on basis j."""

    p: int
    parity: int
    values: np.ndarray  # dim(M) x dim(g)

    def __post_init__(self):
        check_odd_prime(self.p)
        arr = np.mod(np.asarray(self.values, dtype=np.int64), self.p)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def value_on(self, j: int) -> np.ndarray:
        return self.values[:, j].copy()

    def check_coherent(self, g: Superalgebra, m: GModule) -> None:
        """Every value must land in the module parity block |x_j| + parity."""
        for r, j in zip(*np.nonzero(self.values)):
            if m.parity[r] != (g.parity[j] + self.parity) % 2:
                raise ValueError(
                    f"parity-incoherent cochain: entry ({r}, {j}) outside its block"
                )


@dataclass(frozen=True, eq=False)
class CochainSpace:
    """One parity part of a derivation-type space, with its canonical basis."""

    parity: int
    basis: tuple[Cochain, ...]
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def _sign(bit: int) -> int:
    return -1 if bit % 2 else 1


def derivation_residual(g: Superalgebra, m: GModule, phi: Cochain, i: int, j: int) -> np.ndarray:
    """Defect of the derivation identity on the ordered pair (i, j); zero iff it holds."""
    phi.check_coherent(g, m)
    p = g.p
    f = phi.parity
    s1 = _sign(f * g.parity[i])
    s2 = _sign(g.parity[j] * (f + g.parity[i]))
    lhs = phi.values @ g.structure[i, j]
    r = lhs - s1 * (m.actions[i] @ phi.values[:, j]) + s2 * (m.actions[j] @ phi.values[:, i])
    return r % p


def _coherent_columns(g: Superalgebra, m: GModule, parity: int) -> np.ndarray:
    mp = np.asarray(m.parity)
    ap = np.asarray(g.parity)
    mask = mp[:, None] == (ap[None, :] + parity) % 2
    return np.nonzero(mask.reshape(-1))[0]


def _weight_matched_columns(g: Superalgebra, m: GModule) -> np.ndarray:
    roots = basis_root_weights(g)
    wts = basis_module_weights(m)
    mask = np.array([[wts[r] == roots[j] for j in range(g.dim)] for r in range(m.dim)])
    return np.nonzero(mask.reshape(-1))[0]


def _derivation_system(g: Superalgebra, m: GModule, parity: int) -> np.ndarray:
    """Coefficient matrix of the identity over all 64 ordered pairs, full coordinates."""
    dm, dg, p = m.dim, g.dim, g.p
    acts = np.stack(m.actions)
    c = g.structure
    eye = np.eye(dm, dtype=np.int64)
    rows = np.zeros((dg * dg * dm, dm * dg), dtype=np.int64)
    blk = 0
    for i in range(dg):
        s1 = _sign(parity * g.parity[i])
        for j in range(dg):
            s2 = _sign(g.parity[j] * (parity + g.parity[i]))
            block = rows[blk * dm : (blk + 1) * dm]
            for k in np.nonzero(c[i, j])[0]:
                block[:, k::dg] += int(c[i, j, k]) * eye
            block[:, j::dg] -= s1 * acts[i]
            block[:, i::dg] += s2 * acts[j]
            blk += 1
    return np.mod(rows, p)


def _solve_constrained(
    g: Superalgebra, m: GModule, parity: int, columns: np.ndarray
) -> CochainSpace:
    """Kernel of the derivation system restricted to the given free coordinates."""
    p = g.p
    n = m.dim * g.dim
    if columns.size == 0:
        return CochainSpace(parity=parity, basis=(), space=Subspace.zero(p, n))
    system = _derivation_system(g, m, parity)[:, columns]
    kernel = FpMatrix(p, system).nullspace()
    full = np.zeros((kernel.dim, n), dtype=np.int64)
    full[:, columns] = kernel.basis
    space = Subspace.from_spanning(p, n, full)
    basis = tuple(Cochain(p, parity, row.reshape(m.dim, g.dim)) for row in space.basis)
    return CochainSpace(parity=parity, basis=basis, space=space)


def derivation_space(g: Superalgebra, m: GModule, parity: int) -> CochainSpace:
    """Canonical basis of the parity part of Der(g, M)."""
    return _solve_constrained(g, m, parity, _coherent_columns(g, m, parity))


def weight_derivation_space(g: Superalgebra, m: GModule, parity: int) -> CochainSpace:
    """Derivations that map every root space into the matching module weight space.

    Implemented as the derivation system with every coordinate that leaves its
    target weight space pinned to zero, i.e. the free coordinates are those
    both parity-coherent and weight-matched.
    """
    cols = np.intersect1d(
        _coherent_columns(g, m, parity), _weight_matched_columns(g, m)
    )
    return _solve_constrained(g, m, parity, cols)


def inner_derivation(g: Superalgebra, m: GModule, v) -> Cochain:
    """The cochain x -> (-1)^{|x||v|} x v attached to a homogeneous module vector."""
    vec = np.mod(np.asarray(v, dtype=np.int64).reshape(-1), m.p)
    if vec.size != m.dim:
        raise ValueError(f"vector length {vec.size} != module dim {m.dim}")
    support = {m.parity[r] for r in np.nonzero(vec)[0]}
    if len(support) > 1:
        raise ValueError("inner derivations require a homogeneous vector")
    pv = support.pop() if support else 0
    cols = np.zeros((m.dim, g.dim), dtype=np.int64)
    for j in range(g.dim):
        cols[:, j] = _sign(g.parity[j] * pv) * (m.actions[j] @ vec)
    return Cochain(m.p, pv, cols)


def inner_space(g: Superalgebra, m: GModule) -> tuple[Subspace, Subspace]:
    """(even, odd) spans of the inner derivations of all module basis vectors."""
    n = m.dim * g.dim
    rows = {0: [], 1: []}
    for r in range(m.dim):
        v = np.zeros(m.dim, dtype=np.int64)
        v[r] = 1
        d = inner_derivation(g, m, v)
        rows[m.parity[r]].append(d.flat())
    out = []
    for parity in (0, 1):
        if rows[parity]:
            out.append(Subspace.from_spanning(m.p, n, np.stack(rows[parity])))
        else:
            out.append(Subspace.zero(m.p, n))
    return out[0], out[1]


def module_invariants(m: GModule) -> Subspace:
    """{v : x v = 0 for all x}, the kernel of the map v -> inner derivation of v."""
    stacked = np.concatenate(m.actions, axis=0)
    return FpMatrix(m.p, stacked).nullspace()


def predict_h1(p: int, a, b) -> int:
    """Closed-form dimension of H1 for the Kac module with highest weight (a, b)."""
    p = check_odd_prime(p)
    s = residue(a + b, p)
    x = residue(b, p)
    if s == residue(-2, p) and x == p - 2:
        return 2
    if x == p - 1 and s in (residue(-2, p), residue(-4, p)):
        return 1
    return 0


def predictor_clauses(p: int, a, b) -> tuple[str, ...]:
    """Which closed-form clauses match; more than one would flag an overlap."""
    p = check_odd_prime(p)
    s = residue(a + b, p)
    x = residue(b, p)
    matched = []
    if s == residue(-2, p) and x == p - 2:
        matched.append("dim2:a+b=-2,res(b)=p-2")
    if s == residue(-2, p) and x == p - 1:
        matched.append("dim1:a+b=-2,res(b)=p-1")
    if s == residue(-4, p) and x == p - 1:
        matched.append("dim1:a+b=-4,res(b)=p-1")
    return tuple(matched)


def outer_cocycles(p: int, a, b) -> list[Cochain]:
    """The distinguished outer cocycles of the regime containing (a, b).

    Three regimes exist: a+b = -2 with residue(b) = p-2 carries two odd
    cocycles (supported on alpha/e13 and on beta/e24), a+b = -2 with
    residue(b) = p-1 carries one odd cocycle valued on the Cartan pair, and
    a+b = -4 with residue(b) = p-1 carries one even cocycle supported on the
    positive-grade part.  Outside all regimes this raises ValueError.
    """
    p = check_odd_prime(p)
    s = residue(a + b, p)
    x = residue(b, p)
    t = residue(b - a, p)
    n = 2 * (t + 1)
    idx = {lab: i for i, lab in enumerate(P2_LABELS)}

    def even_row(k: int) -> int:
        return k

    def odd_row(k: int) -> int:
        return t + 1 + k

    def blank() -> np.ndarray:
        return np.zeros((n, 8), dtype=np.int64)

    if s == residue(-2, p) and x == p - 2:
        c1 = blank()
        c1[odd_row(p - 2), idx["alpha"]] = 1
        c1[even_row(p - 2), idx["e13"]] = p - 1
        c2 = blank()
        c2[odd_row(0), idx["beta"]] = 1
        c2[even_row(0), idx["e24"]] = 1
        return [Cochain(p, 1, c1), Cochain(p, 1, c2)]
    if s == residue(-2, p) and x == p - 1:
        c3 = blank()
        c3[odd_row(0), idx["h1"]] = 1
        c3[odd_row(0), idx["h2"]] = 1
        return [Cochain(p, 1, c3)]
    if s == residue(-4, p) and x == p - 1:
        c4 = blank()
        c4[odd_row(0), idx["e13"]] = 2
        c4[odd_row(2), idx["e24"]] = 1
        c4[odd_row(1), idx["e14+e23"]] = p - 2
        return [Cochain(p, 0, c4)]
    raise ValueError(
        f"(a, b) = ({a}, {b}) mod {p} lies outside the three outer-cocycle regimes"
    )


@dataclass(frozen=True)
class H1Dims:
    der_even: int
    der_odd: int
    ider_even: int
    ider_odd: int
    h1_even: int
    h1_odd: int
    h1_total: int


@dataclass(frozen=True, eq=False)
class CohomologyReport:
    p: int
    weight: tuple[int, int]
    dims: H1Dims
    representatives: tuple[Cochain, ...]
    predicted: int
    agrees: bool


def _coset_representatives(ider: Subspace, der: CochainSpace) -> list[Cochain]:
    """Greedy completion of the inner span to the derivation span, canonical order."""
    span = ider
    reps = []
    for cochain, row in zip(der.basis, der.space.basis):
        if not span.contains(row):
            reps.append(cochain)
            span = span + Subspace.from_spanning(span.p, span.ambient_dim, row[None, :])
    return reps


def h1(g: Superalgebra, m: GModule) -> CohomologyReport:
    """Full H1 report with the dual-route consistency check.

    Raises RouteDisagreement if the weight-derivation route yields different
    dimensions than Der/Ider (which would signal a solver bug, since every
    derivation decomposes as a weight-derivation plus an inner one).
    """
    if m.highest_weight is None:
        raise ValueError("module must carry its highest weight")
    der = {s: derivation_space(g, m, s) for s in (0, 1)}
    wder = {s: weight_derivation_space(g, m, s) for s in (0, 1)}
    ider_even, ider_odd = inner_space(g, m)
    ider = {0: ider_even, 1: ider_odd}

    for s in (0, 1):
        if not ider[s].is_subspace_of(der[s].space):
            raise RuntimeError(f"inner derivations escaped the derivation space (parity {s})")
        if not wder[s].space.is_subspace_of(der[s].space):
            raise RuntimeError(f"weight-derivations escaped the derivation space (parity {s})")

    h1_even = der[0].dim - ider[0].dim
    h1_odd = der[1].dim - ider[1].dim
    w_even = wder[0].dim - wder[0].space.intersection(ider[0]).dim
    w_odd = wder[1].dim - wder[1].space.intersection(ider[1]).dim
    if (w_even, w_odd) != (h1_even, h1_odd):
        raise RouteDisagreement(g.p, m.highest_weight, (h1_even, h1_odd), (w_even, w_odd))

    reps = _coset_representatives(ider[0], der[0]) + _coset_representatives(ider[1], der[1])
    dims = H1Dims(
        der_even=der[0].dim,
        der_odd=der[1].dim,
        ider_even=ider[0].dim,
        ider_odd=ider[1].dim,
        h1_even=h1_even,
        h1_odd=h1_odd,
        h1_total=h1_even + h1_odd,
    )
    a, b = m.highest_weight
    predicted = predict_h1(g.p, a, b)
    return CohomologyReport(
        p=g.p,
        weight=(a, b),
        dims=dims,
        representatives=tuple(reps),
        predicted=predicted,
        agrees=(dims.h1_total == predicted),
    )


def cartan_values_annihilated(
    g: Superalgebra, m: GModule, cochains=None
) -> list[tuple[int, int, int]]:
    """Violations of x . phi(h) = 0 over weight-derivation basis cochains.

    Returns (cochain position, algebra index of x, Cartan index of h) triples;
    an empty list certifies the annihilation property.
    """
    if cochains is None:
        cochains = list(weight_derivation_space(g, m, 0).basis) + list(
            weight_derivation_space(g, m, 1).basis
        )
    bad = []
    for pos, phi in enumerate(cochains):
        for h_idx in g.cartan:
            val = phi.values[:, h_idx]
            for x_idx in range(g.dim):
                if np.any((m.actions[x_idx] @ val) % m.p):
                    bad.append((pos, x_idx, h_idx))
    return bad


def weight_plus_inner_equals_der(g: Superalgebra, m: GModule) -> bool:
    """Whether WDer + Ider = Der holds in each parity."""
    ider_even, ider_odd = inner_space(g, m)
    ider = {0: ider_even, 1: ider_odd}
    for s in (0, 1):
        der = derivation_space(g, m, s)
        wder = weight_derivation_space(g, m, s)
        if (wder.space + ider[s]) != der.space:
            return False
    return True


def report_to_json(report: CohomologyReport, g: Superalgebra, m: GModule) -> dict:
    return {
        "p": report.p,
        "lambda": list(report.weight),
        "dims": {
            "der_even": report.dims.der_even,
            "der_odd": report.dims.der_odd,
            "ider_even": report.dims.ider_even,
            "ider_odd": report.dims.ider_odd,
            "h1_even": report.dims.h1_even,
            "h1_odd": report.dims.h1_odd,
            "h1_total": report.dims.h1_total,
        },
        "predicted": report.predicted,
        "agrees": report.agrees,
        "representatives": [
            {
                "parity": c.parity,
                "algebra_labels": list(g.labels),
                "module_labels": list(m.labels),
                "values": c.values.tolist(),
            }
            for c in report.representatives
        ],
    }


def analyze(p: int, a, b) -> CohomologyReport:
    """Convenience wrapper: build the algebra and Kac module, then run h1."""
    g = build_p_tilde_2(p)
    return h1(g, build_kac_module(g, a, b))
