"""Bounded-variable revised simplex for the spanning-tree relaxations.

Models are ``min c.x`` over box bounds with a list of sparse ``<=`` / ``=``
rows. Each ``<=`` row gets a slack in ``[0, inf)``. Phase 1 adds one
artificial per row that the all-at-lower-bound start violates (and one per
equality row), minimises their sum, and then pins them to zero for Phase 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

FEAS_TOL = 1e-5
PIVOT_TOL = 1e-9
COST_TOL = 1e-9
STALL_LIMIT = 50
REFACTOR_EVERY = 64

LE, EQ = "<=", "="


class NumericalFailure(RuntimeError):
    pass


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"


@dataclass
class Row:
    indices: tuple[int, ...]
    coefs: tuple[float, ...]
    sense: str
    rhs: float


@dataclass
class LpModel:
    objective: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    rows: list[Row] = field(default_factory=list)

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        n = len(self.objective)
        self.lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.ones(n) if self.upper is None else np.asarray(self.upper, dtype=float)
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound above upper bound")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def add_row(self, indices, coefs, sense: str, rhs: float) -> None:
        if sense not in (LE, EQ):
            raise ValueError(f"unsupported sense {sense!r}")
        indices = tuple(int(i) for i in indices)
        if any(not 0 <= i < self.n_vars for i in indices):
            raise IndexError("row references a missing variable")
        self.rows.append(Row(indices, tuple(float(a) for a in coefs), sense, float(rhs)))

    def dense(self) -> tuple[np.ndarray, np.ndarray, list[str]]:
        a = np.zeros((len(self.rows), self.n_vars))
        for i, row in enumerate(self.rows):
            for j, coef in zip(row.indices, row.coefs):
                a[i, j] += coef
        b = np.array([row.rhs for row in self.rows], dtype=float)
        return a, b, [row.sense for row in self.rows]


def add_rows(model: LpModel, cuts) -> LpModel:
    """Append each cut as a ``<=`` row with unit coefficients."""
    for cut in cuts:
        model.add_row(cut.support, [1.0] * len(cut.support), LE, cut.rhs)
    return model


@dataclass
class LpSolution:
    status: LpStatus
    objective_value: float | None
    values: np.ndarray | None
    iterations: int = 0


class _Simplex:
    """Primal simplex on ``A x = b, lo <= x <= hi`` from a given feasible basis."""

    def __init__(self, a, b, lo, hi, basis, x):
        self.a, self.b = a, b
        self.lo, self.hi = lo, hi
        self.basis = list(basis)
        self.x = x
        self.is_basic = np.zeros(a.shape[1], dtype=bool)
        self.is_basic[self.basis] = True
        self.iterations = 0
        self.refactor()

    def refactor(self) -> None:
        bmat = self.a[:, self.basis]
        try:
            self.binv = np.linalg.inv(bmat)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure("singular basis") from exc
        nonbasic = ~self.is_basic
        rhs = self.b - self.a[:, nonbasic] @ self.x[nonbasic]
        self.x[self.basis] = self.binv @ rhs
        self.since_refactor = 0

    def run(self, c, max_iter: int) -> None:
        stall = 0
        while True:
            if self.iterations >= max_iter:
                raise NumericalFailure(f"no convergence in {max_iter} iterations")
            y = c[self.basis] @ self.binv
            d = c - y @ self.a
            movable = (~self.is_basic) & (self.hi > self.lo)
            at_lo = self.x <= self.lo
            up = movable & at_lo & (d < -COST_TOL)
            down = movable & ~at_lo & (d > COST_TOL)
            cand = np.flatnonzero(up | down)
            if cand.size == 0:
                return
            if stall >= STALL_LIMIT:
                q = int(cand[0])  # Bland
            else:
                q = int(cand[np.argmax(np.abs(d[cand]))])
            direction = 1.0 if up[q] else -1.0
            alpha = self.binv @ self.a[:, q]
            step = self.pivot(q, direction, alpha)
            stall = stall + 1 if step <= PIVOT_TOL else 0
            self.iterations += 1

    def pivot(self, q: int, direction: float, alpha: np.ndarray) -> float:
        delta = -direction * alpha  # change of basic values per unit step
        xb = self.x[self.basis]
        lob, hib = self.lo[self.basis], self.hi[self.basis]
        ratios = np.full(len(self.basis), np.inf)
        dec = delta < -PIVOT_TOL
        inc = delta > PIVOT_TOL
        ratios[dec] = (xb[dec] - lob[dec]) / -delta[dec]
        fin = inc & np.isfinite(hib)
        ratios[fin] = (hib[fin] - xb[fin]) / delta[fin]
        ratios = np.maximum(ratios, 0.0)
        flip = self.hi[q] - self.lo[q]
        best = ratios.min() if ratios.size else np.inf
        if flip <= best:
            if not np.isfinite(flip):
                raise NumericalFailure("unbounded direction")
            self.x[self.basis] = xb + delta * flip
            self.x[q] = self.hi[q] if direction > 0 else self.lo[q]
            return flip
        ties = np.flatnonzero(ratios <= best + 1e-12)
        r = int(min(ties, key=lambda i: self.basis[i]))
        t = ratios[r]
        leaving = self.basis[r]
        self.x[self.basis] = xb + delta * t
        self.x[q] += direction * t
        self.x[leaving] = self.lo[leaving] if delta[r] < 0 else self.hi[leaving]
        self.is_basic[leaving] = False
        self.is_basic[q] = True
        self.basis[r] = q
        # eta update of the explicit inverse
        piv = alpha[r]
        row = self.binv[r] / piv
        self.binv -= np.outer(alpha, row)
        self.binv[r] = row
        self.since_refactor += 1
        if self.since_refactor >= REFACTOR_EVERY:
            self.refactor()
        return t


def solve_lp(model: LpModel, lower=None, upper=None, max_iter: int | None = None) -> LpSolution:
    """Optimal basic solution of ``model``, optionally with replacement bounds."""
    lower = model.lower if lower is None else np.asarray(lower, dtype=float)
    upper = model.upper if upper is None else np.asarray(upper, dtype=float)
    nv = model.n_vars
    if np.any(lower > upper + 1e-12):
        return LpSolution(LpStatus.INFEASIBLE, None, None)
    a_rows, b, senses = model.dense()
    m = len(b)
    if m == 0:
        x = np.where(model.objective < 0, upper, lower).astype(float)
        return LpSolution(LpStatus.OPTIMAL, float(model.objective @ x), x)

    le_rows = [i for i, s in enumerate(senses) if s == LE]
    x0 = lower.copy()
    resid = b - a_rows @ x0
    art_rows = [i for i in range(m) if senses[i] == EQ or resid[i] < 0]
    n_slack, n_art = len(le_rows), len(art_rows)
    total = nv + n_slack + n_art

    a = np.zeros((m, total))
    a[:, :nv] = a_rows
    for k, i in enumerate(le_rows):
        a[i, nv + k] = 1.0
    basis = [0] * m
    slack_of = {i: nv + k for k, i in enumerate(le_rows)}
    for i in le_rows:
        basis[i] = slack_of[i]
    for k, i in enumerate(art_rows):
        col = nv + n_slack + k
        a[i, col] = 1.0 if resid[i] >= 0 else -1.0
        basis[i] = col
    lo = np.concatenate([lower, np.zeros(n_slack + n_art)])
    hi = np.concatenate([upper, np.full(n_slack, np.inf), np.full(n_art, np.inf)])
    x = np.concatenate([x0, np.zeros(n_slack + n_art)])

    limit = max_iter or 50 * (total + m) + 1000
    spx = _Simplex(a, b, lo, hi, basis, x)
    if n_art:
        c1 = np.zeros(total)
        c1[nv + n_slack:] = 1.0
        spx.run(c1, limit)
        if spx.x[nv + n_slack:].sum() > FEAS_TOL * 0.01:
            return LpSolution(LpStatus.INFEASIBLE, None, None, spx.iterations)
        spx.hi[nv + n_slack:] = 0.0
        spx.x[nv + n_slack:] = np.clip(spx.x[nv + n_slack:], 0.0, 0.0)
        spx.refactor()
    c2 = np.concatenate([model.objective, np.zeros(n_slack + n_art)])
    spx.run(c2, limit)

    values = spx.x[:nv].copy()
    _certify(a_rows, b, senses, values, lower, upper)
    return LpSolution(LpStatus.OPTIMAL, float(model.objective @ values), values, spx.iterations)


def _certify(a, b, senses, x, lower, upper) -> None:
    lhs = a @ x
    for i, sense in enumerate(senses):
        gap = lhs[i] - b[i]
        if gap > FEAS_TOL or (sense == EQ and gap < -FEAS_TOL):
            raise NumericalFailure(f"row {i} violated by {gap:.3g}")
    if np.any(x < lower - FEAS_TOL) or np.any(x > upper + FEAS_TOL):
        raise NumericalFailure("bound violated")
