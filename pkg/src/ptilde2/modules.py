"""Modules over the superalgebra: action matrices, highest-weight
construction, the induced module on the odd generator, and all weight-space
machinery including the canonical-residue case analysis for the seven root
weights.

A module is a list of action matrices, one per algebra basis element, checked
against the representation law

    action([x, y]) = action(x) action(y) - (-1)^{|x||y|} action(y) action(x)

with the bracket expanded through the structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Subspace, check_odd_prime
from .superalgebra import P2_LABELS, Superalgebra, Weight

__all__ = [
    "RepresentationError",
    "GModule",
    "KacModule",
    "residue",
    "residue_comparisons",
    "residue_shift_table",
    "build_simple_module",
    "build_kac_module",
    "basis_module_weights",
    "weight_decomposition",
    "target_weight_space",
    "root_target_weights",
    "case_table_weight_space",
    "gmodule_to_json",
    "gmodule_from_json",
]


class RepresentationError(ValueError):
    """Raised when action matrices fail the representation law or parity blocks."""


def residue(c, p: int) -> int:
    """Canonical integer representative of c mod p, in {0, ..., p-1}."""
    return int(c) % p


@dataclass(eq=False)
class GModule:
    """A module given by one action matrix per algebra basis element."""

    algebra: Superalgebra
    labels: tuple[str, ...]
    parity: tuple[int, ...]
    actions: list[np.ndarray]
    highest_weight: tuple[int, int] | None = None

    def __post_init__(self):
        p = self.algebra.p
        acts = []
        for m in self.actions:
            a = np.mod(np.asarray(m, dtype=np.int64), p)
            if a.shape != (self.dim, self.dim):
                raise ValueError(f"action matrix shape {a.shape}, expected square of {self.dim}")
            a.setflags(write=False)
            acts.append(a)
        if len(acts) != self.algebra.dim:
            raise ValueError("need one action matrix per algebra basis element")
        self.actions = acts

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return len(self.labels)

    def act(self, i: int, v) -> np.ndarray:
        return (self.actions[i] @ np.asarray(v, dtype=np.int64)) % self.p

    def representation_violations(self) -> list[tuple[int, int]]:
        """Ordered algebra basis pairs where the representation law fails."""
        g = self.algebra
        a = np.stack(self.actions)
        par = np.asarray(g.parity, dtype=np.int64)
        sign = np.where((par[:, None] * par[None, :]) % 2 == 1, -1, 1).astype(np.int64)
        lhs = np.einsum("ijk,kab->ijab", g.structure, a) % self.p
        prod = np.einsum("iab,jbc->ijac", a, a)
        rhs = (prod - sign[:, :, None, None] * prod.transpose(1, 0, 2, 3)) % self.p
        bad = np.nonzero((lhs - rhs) % self.p)
        return sorted({(int(i), int(j)) for i, j in zip(bad[0], bad[1])})

    def parity_violations(self) -> list[tuple[int, int, int]]:
        """Entries (i, r, c) where action i does not respect the parity split."""
        g = self.algebra
        out = []
        for i, m in enumerate(self.actions):
            for r, c in zip(*np.nonzero(m)):
                if self.parity[r] != (self.parity[c] + g.parity[i]) % 2:
                    out.append((i, int(r), int(c)))
        return out

    def validate(self) -> None:
        bad = self.representation_violations()
        if bad:
            raise RepresentationError(f"representation law fails on pairs {bad[:6]}")
        badp = self.parity_violations()
        if badp:
            raise RepresentationError(f"parity blocks violated at {badp[:6]}")


@dataclass(eq=False)
class KacModule(GModule):
    """Induced module with even part {1*v_k} and odd part {g*v_k}, k <= top_index."""

    top_index: int = 0

    def even_index(self, k: int) -> int:
        return k

    def odd_index(self, k: int) -> int:
        return self.top_index + 1 + k


def _interval(lo: int, hi: int) -> range:
    # inclusive integer interval, empty when lo > hi
    return range(lo, hi + 1)


def residue_comparisons(p: int, b) -> dict[str, tuple[bool, bool]]:
    """Both sides of the ten residue-comparison equivalences, for one b.

    Each entry maps a comparison "residue(b+s) <= residue(2b+t)" to the pair
    (comparison holds, interval condition on residue(b) holds); a correct
    table makes the two booleans equal for every b.
    """
    check_odd_prime(p)
    x = residue(b, p)

    def phi(c: int) -> int:
        return residue(c, p)

    return {
        "b<=2b+2": (phi(x) <= phi(2 * x + 2), x in _interval(0, (p - 3) // 2) or x == p - 2),
        "b+1<=2b+2": (phi(x + 1) <= phi(2 * x + 2), x in _interval(0, (p - 3) // 2) or x == p - 1),
        "b+2<=2b+2": (phi(x + 2) <= phi(2 * x + 2), x in _interval(0, (p - 3) // 2) or x == p - 2),
        "b<=2b": (phi(x) <= phi(2 * x), x in _interval(0, (p - 1) // 2)),
        "b-1<=2b": (phi(x - 1) <= phi(2 * x), x in _interval(1, (p - 1) // 2) or x == p - 1),
        "b+1<=2b": (phi(x + 1) <= phi(2 * x), x in _interval(1, (p - 1) // 2) or x == p - 1),
        "b+1<=2b+4": (
            phi(x + 1) <= phi(2 * x + 4),
            x in _interval(0, (p - 5) // 2) or x in (p - 1, p - 3),
        ),
        "b+2<=2b+4": (
            phi(x + 2) <= phi(2 * x + 4),
            x in _interval(0, (p - 5) // 2) or x in (p - 1, p - 2),
        ),
        "b+3<=2b+4": (
            phi(x + 3) <= phi(2 * x + 4),
            x in _interval(0, (p - 5) // 2) or x in (p - 1, p - 3),
        ),
        "b-1<=2b-2": (phi(x - 1) <= phi(2 * x - 2), x in _interval(1, (p + 1) // 2)),
    }


def residue_shift_table(p: int, b) -> dict[str, tuple[int, int]]:
    """Direct vs tabulated values of residue(b+1), residue(b+2), residue(2b+2).

    The tabulated value is the piecewise closed form in terms of x = residue(b):
    shifts wrap once past p-1, and 2x+2 wraps on the upper half of the range.
    """
    check_odd_prime(p)
    x = residue(b, p)
    direct = {
        "b": residue(b, p),
        "b+1": residue(b + 1, p),
        "b+2": residue(b + 2, p),
        "2b+2": residue(2 * b + 2, p),
    }
    if x <= (p - 3) // 2:
        two = 2 * x + 2
    elif x <= p - 3:
        two = 2 * x + 2 - p
    elif x == p - 2:
        two = p - 2
    else:
        two = 0
    tabulated = {
        "b": x,
        "b+1": x + 1 if x <= p - 2 else 0,
        "b+2": x + 2 if x <= p - 3 else x + 2 - p,
        "2b+2": two,
    }
    return {k: (direct[k], tabulated[k]) for k in direct}


def build_simple_module(g0: Superalgebra, a, b) -> GModule:
    """Highest-weight module of the grade-zero subalgebra with weight (a, b).

    Basis v_0, ..., v_t with t = residue(b-a):  h1 v_k = (a+k) v_k,
    h2 v_k = (b-k) v_k, alpha v_k = k(b-a-k+1) v_{k-1}, beta v_k = v_{k+1}
    and beta v_t = 0 (truncated at the maximal submodule).
    """
    if g0.labels != ("h1", "h2", "alpha", "beta"):
        raise ValueError("expected the grade-zero subalgebra (h1, h2, alpha, beta)")
    p = g0.p
    a, b = residue(a, p), residue(b, p)
    t = residue(b - a, p)
    n = t + 1
    ks = np.arange(n, dtype=np.int64)
    mats = {
        "h1": np.diag((a + ks) % p),
        "h2": np.diag((b - ks) % p),
        "alpha": np.zeros((n, n), dtype=np.int64),
        "beta": np.zeros((n, n), dtype=np.int64),
    }
    for k in range(1, n):
        mats["alpha"][k - 1, k] = (k * (b - a - k + 1)) % p
    for k in range(n - 1):
        mats["beta"][k + 1, k] = 1
    m = GModule(
        algebra=g0,
        labels=tuple(f"v{k}" for k in range(n)),
        parity=tuple(0 for _ in range(n)),
        actions=[mats[label] for label in g0.labels],
        highest_weight=(a, b),
    )
    m.validate()
    return m


def build_kac_module(g: Superalgebra, a, b) -> KacModule:
    """Kac module K(a, b): even basis 1*v_k, odd basis g*v_k, k = 0..residue(b-a).

    Transcribes the explicit action list (positive-grade part kills the even
    half, the odd generator maps 1*v_k to g*v_k and squares to zero) and
    validates the representation law for all 64 ordered basis pairs; failures
    raise RepresentationError rather than being suppressed.
    """
    if g.labels != P2_LABELS:
        raise ValueError("expected the full 8-dimensional supermatrix algebra")
    p = g.p
    a, b = residue(a, p), residue(b, p)
    t = residue(b - a, p)
    n = 2 * (t + 1)

    def ev(k: int) -> int:
        return k

    def od(k: int) -> int:
        return t + 1 + k

    def blank() -> np.ndarray:
        return np.zeros((n, n), dtype=np.int64)

    mats = {lab: blank() for lab in g.labels}
    for k in range(t + 1):
        mats["h1"][ev(k), ev(k)] = (a + k) % p
        mats["h1"][od(k), od(k)] = (a + k + 1) % p
        mats["h2"][ev(k), ev(k)] = (b - k) % p
        mats["h2"][od(k), od(k)] = (b - k + 1) % p
        mats["gamma"][od(k), ev(k)] = 1
        mats["e14+e23"][ev(k), od(k)] = (b - a - 2 * k) % p
        if k > 0:
            coeff = (k * (b - a - k + 1)) % p
            mats["alpha"][ev(k - 1), ev(k)] = coeff
            mats["alpha"][od(k - 1), od(k)] = coeff
            mats["e13"][ev(k - 1), od(k)] = coeff
        if k < t:
            mats["beta"][ev(k + 1), ev(k)] = 1
            mats["beta"][od(k + 1), od(k)] = 1
            mats["e24"][ev(k + 1), od(k)] = p - 1

    labels = tuple(f"1*v{k}" for k in range(t + 1)) + tuple(f"g*v{k}" for k in range(t + 1))
    km = KacModule(
        algebra=g,
        labels=labels,
        parity=tuple(0 for _ in range(t + 1)) + tuple(1 for _ in range(t + 1)),
        actions=[mats[label] for label in g.labels],
        highest_weight=(a, b),
        top_index=t,
    )
    km.validate()
    return km


def basis_module_weights(m: GModule) -> list[Weight]:
    """Weight of each module basis vector; requires diagonal Cartan action."""
    g = m.algebra
    if len(g.cartan) != 2:
        raise ValueError("expected a rank-2 Cartan index set")
    diags = []
    for c_idx in g.cartan:
        act = m.actions[c_idx]
        off = act.copy()
        np.fill_diagonal(off, 0)
        if np.any(off):
            raise ValueError(f"action of {g.labels[c_idx]} is not diagonal on the module basis")
        diags.append(np.diagonal(act).copy())
    return [Weight(int(diags[0][r]), int(diags[1][r])) for r in range(m.dim)]


def weight_decomposition(m: GModule) -> dict[Weight, Subspace]:
    """Group module basis vectors by their simultaneous Cartan eigenvalue pair."""
    weights = basis_module_weights(m)
    grouped: dict[Weight, list[int]] = {}
    for r, w in enumerate(weights):
        grouped.setdefault(w, []).append(r)
    out = {}
    for w, idx in grouped.items():
        rows = np.zeros((len(idx), m.dim), dtype=np.int64)
        for r, j in enumerate(idx):
            rows[r, j] = 1
        out[w] = Subspace.from_spanning(m.p, m.dim, rows)
    return out


def target_weight_space(m: GModule, w: Weight) -> Subspace:
    """The weight space at w by direct eigenvalue matching (any w permitted)."""
    w = Weight(residue(w[0], m.p), residue(w[1], m.p))
    return weight_decomposition(m).get(w, Subspace.zero(m.p, m.dim))


def root_target_weights(p: int) -> list[Weight]:
    """The seven root weights of the algebra, canonicalized mod p."""
    raw = [(-2, 0), (-1, -1), (-1, 1), (0, -2), (1, -1), (1, 1), (0, 0)]
    return [Weight(residue(x, p), residue(y, p)) for x, y in raw]


# Case table for the weight space of K(a, b) at each root weight.  Per weight:
# an even branch and an odd branch, each a triple (offset, condition, s) with
#   basis index k = residue(b + offset),
#   condition (lo, half, extras): lo <= residue(b) <= (p+half)//2, or
#     residue(b) in {p+e for e in extras},
#   branch applies only when a+b = s mod p.
_CASE_TABLE: dict[tuple[int, int], tuple[tuple, tuple]] = {
    (-2, 0): ((0, (0, -3, (-2,)), -2), (1, (0, -5, (-1, -3)), -4)),
    (-1, -1): ((1, (0, -3, (-1,)), -2), (2, (0, -5, (-1, -2)), -4)),
    (-1, 1): ((-1, (1, -1, (-1,)), 0), (0, (0, -3, (-2,)), -2)),
    (0, -2): ((2, (0, -3, (-2,)), -2), (3, (0, -5, (-1, -3)), -4)),
    (1, -1): ((1, (1, -1, (-1,)), 0), (2, (0, -3, (-2,)), -2)),
    (1, 1): ((-1, (1, 1, ()), 2), (0, (0, -1, ()), 0)),
    (0, 0): ((0, (0, -1, ()), 0), (1, (0, -3, (-1,)), -2)),
}


def _condition_holds(p: int, x: int, cond: tuple) -> bool:
    lo, half, extras = cond
    if lo <= x <= (p + half) // 2:
        return True
    return any(x == p + e for e in extras)


def case_table_weight_space(p: int, a, b, w: Weight) -> Subspace:
    """Predicted weight space at a root weight, from the residue case table.

    Independent of the eigenvalue scan: the only inputs are the residue of b,
    the value of a+b mod p, and the tabulated interval conditions.  Basis
    indices past the top index denote vectors that are zero in the quotient,
    contributing nothing.
    """
    p = check_odd_prime(p)
    a, b = residue(a, p), residue(b, p)
    key = None
    for raw in _CASE_TABLE:
        if (residue(raw[0], p), residue(raw[1], p)) == (residue(w[0], p), residue(w[1], p)):
            key = raw
            break
    if key is None:
        raise KeyError(f"{w} is not one of the seven root weights mod {p}")
    t = residue(b - a, p)
    n = 2 * (t + 1)
    x = residue(b, p)
    s = residue(a + b, p)
    even_branch, odd_branch = _CASE_TABLE[key]
    rows = []
    off, cond, ab = even_branch
    if s == residue(ab, p) and _condition_holds(p, x, cond):
        k = residue(b + off, p)
        if k <= t:
            row = np.zeros(n, dtype=np.int64)
            row[k] = 1
            rows.append(row)
    off, cond, ab = odd_branch
    if s == residue(ab, p) and _condition_holds(p, x, cond):
        k = residue(b + off, p)
        if k <= t:
            row = np.zeros(n, dtype=np.int64)
            row[t + 1 + k] = 1
            rows.append(row)
    if not rows:
        return Subspace.zero(p, n)
    return Subspace.from_spanning(p, n, np.stack(rows))


def gmodule_to_json(m: GModule) -> dict:
    return {
        "p": m.p,
        "lambda": list(m.highest_weight) if m.highest_weight else None,
        "labels": list(m.labels),
        "parity": list(m.parity),
        "actions": [a.tolist() for a in m.actions],
    }


def gmodule_from_json(data: dict, algebra: Superalgebra) -> GModule:
    """Rebuild a module over the given algebra; the representation law is re-checked."""
    lam = data.get("lambda")
    m = GModule(
        algebra=algebra,
        labels=tuple(data["labels"]),
        parity=tuple(int(x) for x in data["parity"]),
        actions=[np.asarray(a, dtype=np.int64) for a in data["actions"]],
        highest_weight=tuple(int(x) for x in lam) if lam else None,
    )
    m.validate()
    return m
