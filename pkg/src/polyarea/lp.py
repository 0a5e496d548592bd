"""Bounded-variable dual simplex for LPs whose structural variables are boxed.

Rows are stored as ``lo <= a.x <= hi`` and turned into equalities with one
bounded slack each (``a.x - s = 0``). Because every structural variable has
finite bounds, the all-slack basis is dual feasible after putting each
variable on the bound its cost prefers, so the dual simplex needs no phase 1.
Row additions and bound changes keep a previous basis dual feasible, which
is what makes warm starts across branch-and-cut nodes cheap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PRIMAL_TOL = 1e-7
DUAL_TOL = 1e-7
PIVOT_TOL = 1e-9
REFACTOR_EVERY = 64
DEGENERATE_BUDGET = 200


class LPError(RuntimeError):
    pass


@dataclass
class Basis:
    is_basic: np.ndarray  # over structurals then slacks
    at_upper: np.ndarray  # per variable, meaningful for nonbasic ones
    n_rows: int


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible"
    x: np.ndarray | None
    value: float  # objective at x, in the caller's sense and scale
    bound: float  # Lagrangian bound valid for the LP, caller's sense and scale
    iterations: int
    basis: Basis | None


class DualSimplex:
    """LP ``min/max c.x  s.t. lo_r <= a_r.x <= hi_r, l <= x <= u`` with finite l, u."""

    def __init__(self, c, lb, ub, sense: str = "min"):
        c = np.asarray(c, dtype=float)
        self.n = len(c)
        self.sense = sense
        sign = 1.0 if sense == "min" else -1.0
        self.scale = float(np.max(np.abs(c))) if self.n and np.any(c) else 1.0
        self.c_orig = c.copy()
        self.cost = sign * c / self.scale
        self.lb = np.asarray(lb, dtype=float).copy()
        self.ub = np.asarray(ub, dtype=float).copy()
        if not (np.all(np.isfinite(self.lb)) and np.all(np.isfinite(self.ub))):
            raise LPError("structural variables must be boxed")
        self.m = 0
        self._cap = 16
        self.A = np.zeros((self._cap, self.n))
        self.A_pos = np.zeros((self._cap, self.n))
        self.A_neg = np.zeros((self._cap, self.n))
        self.row_lo = np.zeros(self._cap)
        self.row_hi = np.zeros(self._cap)
        self.total_iterations = 0

    # -- rows --------------------------------------------------------------

    def add_row(self, idx, coef, lo: float, hi: float) -> int:
        if self.m == self._cap:
            self._cap *= 2
            self.A, self.A_pos, self.A_neg = (self._grown(M) for M in (self.A, self.A_pos, self.A_neg))
            self.row_lo = np.resize(self.row_lo, self._cap)
            self.row_hi = np.resize(self.row_hi, self._cap)
        self.A[self.m] = 0.0
        np.add.at(self.A[self.m], np.asarray(idx, dtype=int), np.asarray(coef, dtype=float))
        np.maximum(self.A[self.m], 0.0, out=self.A_pos[self.m])
        np.minimum(self.A[self.m], 0.0, out=self.A_neg[self.m])
        self.row_lo[self.m] = lo
        self.row_hi[self.m] = hi
        self.m += 1
        return self.m - 1

    def _grown(self, M: np.ndarray) -> np.ndarray:
        out = np.zeros((self._cap, self.n))
        out[: self.m] = M[: self.m]
        return out

    def tighten_row(self, r: int, lo: float, hi: float) -> None:
        self.row_lo[r] = max(self.row_lo[r], lo)
        self.row_hi[r] = min(self.row_hi[r], hi)

    # -- solve -------------------------------------------------------------

    def solve(self, lb=None, ub=None, basis: Basis | None = None, max_iter: int | None = None) -> LPResult:
        lb = self.lb if lb is None else np.asarray(lb, dtype=float)
        ub = self.ub if ub is None else np.asarray(ub, dtype=float)
        if np.any(lb > ub + PRIMAL_TOL):
            return LPResult("infeasible", None, math.nan, math.inf * self._sign, 0, None)
        st = _State(self, lb, ub)
        if basis is None or not st.load(basis):
            st.cold()
        limit = max_iter or 50 * (self.m + self.n) + 1000
        status = st.run(limit)
        if status in ("limit", "singular"):
            st.cold()
            status = st.run(limit, bland=True)
            if status in ("limit", "singular"):
                raise LPError(f"dual simplex failed ({status})")
        self.total_iterations += st.iters
        if status == "infeasible":
            return LPResult("infeasible", None, math.nan, math.inf * self._sign, st.iters, st.snapshot())
        x = st.primal()
        value = float(self.c_orig @ x)
        return LPResult("optimal", x, value, st.lagrangian_bound(), st.iters, st.snapshot())

    @property
    def _sign(self) -> float:
        return 1.0 if self.sense == "min" else -1.0


class _State:
    """Working arrays of one dual simplex run.

    The basis matrix of ``[A, -I]`` is block triangular: with ``T`` the rows
    whose slack is nonbasic ("tight") and ``C`` the basic structurals,
    ``B = [[A_TC, 0], [A_SC, -I]]``. Only the k x k block ``A_TC`` is kept
    inverted (``N``); basic slacks are row activities. Pivots update ``N``
    with one of four rank-one or bordering formulas, so an iteration costs
    O(m n + k^2) instead of O(m^2).
    """

    def __init__(self, lp: DualSimplex, lb, ub):
        self.lp = lp
        n, m = lp.n, lp.m
        self.n, self.m = n, m
        self.A = lp.A[:m]
        self.l = np.concatenate([lb, lp.row_lo[:m]])
        self.u = np.concatenate([ub, lp.row_hi[:m]])
        self.cost = np.concatenate([lp.cost, np.zeros(m)])
        self.iters = 0

    # -- basis management --------------------------------------------------

    def cold(self) -> None:
        n, m = self.n, self.m
        self.is_basic = np.zeros(n + m, dtype=bool)
        self.is_basic[n:] = True
        self.at_upper = np.zeros(n + m, dtype=bool)
        self.at_upper[:n] = self.cost[:n] < 0
        self._refactor()

    def load(self, basis: Basis) -> bool:
        n, m = self.n, self.m
        if basis.n_rows > m:
            return False
        k = n + basis.n_rows
        is_basic = np.ones(n + m, dtype=bool)
        is_basic[:k] = basis.is_basic[:k]
        at_upper = np.zeros(n + m, dtype=bool)
        at_upper[:k] = basis.at_upper[:k]
        # one-sided slacks sit on their finite side
        at_upper |= ~np.isfinite(self.l)
        at_upper &= np.isfinite(self.u)
        self.is_basic, self.at_upper = is_basic, at_upper
        try:
            self._refactor()
        except np.linalg.LinAlgError:
            return False
        return self._repair_dual()

    def snapshot(self) -> Basis:
        return Basis(self.is_basic.copy(), self.at_upper.copy(), self.m)

    def _positions(self) -> None:
        self.posC = np.full(self.n, -1)
        self.posC[self.C] = np.arange(len(self.C))
        self.posT = np.full(self.m, -1)
        self.posT[self.T] = np.arange(len(self.T))

    def _refactor(self) -> None:
        n = self.n
        self.C = np.nonzero(self.is_basic[:n])[0]
        self.T = np.nonzero(~self.is_basic[n:])[0]
        if len(self.C) != len(self.T):
            raise np.linalg.LinAlgError("basis shape mismatch")
        if len(self.C):
            N = np.linalg.inv(self.A[np.ix_(self.T, self.C)])
            if not np.all(np.isfinite(N)):
                raise np.linalg.LinAlgError("ill-conditioned basis")
        else:
            N = np.zeros((0, 0))
        self.N = N
        self._positions()
        self._recompute()

    def _try_refactor(self) -> bool:
        try:
            self._refactor()
        except np.linalg.LinAlgError:
            return False
        return True

    def _recompute(self) -> None:
        n = self.n
        x = np.where(self.at_upper, self.u, self.l)
        x[self.is_basic] = 0.0
        xs = x[:n]
        if len(self.C):
            rhs = x[n + self.T] - self.A[self.T] @ xs
            xs[self.C] = self.N @ rhs
        act = self.A @ xs
        slack_basic = self.is_basic[n:]
        x[n:][slack_basic] = act[slack_basic]
        self.x = x
        self.y = self._duals()
        d = self.cost.copy()
        d[:n] -= self.y @ self.A
        d[n:] += self.y
        d[self.is_basic] = 0.0
        self.d = d

    def _duals(self) -> np.ndarray:
        y = np.zeros(self.m)
        if len(self.C):
            y[self.T] = self.cost[self.C] @ self.N
        return y

    def _repair_dual(self) -> bool:
        """Flip boxed nonbasics to the bound their reduced cost prefers."""
        d = self.d
        nb = ~self.is_basic
        fixed = self.l == self.u
        finite_l = np.isfinite(self.l)
        finite_u = np.isfinite(self.u)
        want_upper = d < 0
        bad = nb & ~fixed & (
            (want_upper & ~finite_u & (d < -DUAL_TOL)) | (~want_upper & ~finite_l & (d > DUAL_TOL))
        )
        if np.any(bad):
            return False
        flip = nb & ~fixed & finite_l & finite_u & (want_upper != self.at_upper) & (np.abs(d) > 0)
        if np.any(flip):
            self.at_upper[flip] = want_upper[flip]
            self._recompute()
        return True

    # -- tableau pieces --------------------------------------------------------

    def _rho(self, p: int) -> tuple[np.ndarray, np.ndarray]:
        """Row of B^-1 for basic variable ``p`` (full length) and its T part."""
        rho = np.zeros(self.m)
        if p < self.n:
            w = self.N[self.posC[p]]
        else:
            i = p - self.n
            w = self.A[i, self.C] @ self.N if len(self.C) else np.zeros(0)
            rho[i] = -1.0
        rho[self.T] = w
        return rho, w

    def _entering_column(self, q: int) -> np.ndarray:
        """B^-1 a_q spread over all variables (zero on nonbasics)."""
        n = self.n
        col = np.zeros(n + self.m)
        if q < n:
            col_c = self.N @ self.A[self.T, q] if len(self.C) else np.zeros(0)
        else:
            col_c = -self.N[:, self.posT[q - n]]
        v = np.zeros(n)
        v[self.C] = col_c
        act = self.A @ v
        if q < n:
            act -= self.A[:, q]
        slack_basic = self.is_basic[n:]
        col[n:][slack_basic] = act[slack_basic]
        col[self.C] = col_c
        return col

    def _update_kernel(self, p: int, q: int, col: np.ndarray, w: np.ndarray) -> None:
        n = self.n
        N = self.N
        if p < n and q < n:
            c = self.posC[p]
            wc = col[self.C]
            row = N[c] / wc[c]
            N -= np.outer(wc, row)
            N[c] = row
            self.C[c] = q
        elif p >= n and q < n:
            i = p - n
            nu = col[self.C]
            s = self.A[i, q] - self.A[i, self.C] @ nu
            k = len(self.C)
            M = np.empty((k + 1, k + 1))
            M[:k, :k] = N + np.outer(nu, w) / s
            M[:k, k] = -nu / s
            M[k, :k] = -w / s
            M[k, k] = 1.0 / s
            self.N = M
            self.C = np.append(self.C, q)
            self.T = np.append(self.T, i)
        elif p < n and q >= n:
            c = self.posC[p]
            r = self.posT[q - n]
            N -= np.outer(N[:, r], N[c]) / N[c, r]
            self.N = np.delete(np.delete(N, c, axis=0), r, axis=1)
            self.C = np.delete(self.C, c)
            self.T = np.delete(self.T, r)
        else:
            r = self.posT[q - n]
            e = w.copy()
            e[r] -= 1.0
            N -= np.outer(N[:, r], e) / w[r]
            self.T[r] = p - n
        self._positions()

    # -- iterations ----------------------------------------------------------

    def run(self, limit: int, bland: bool = False) -> str:
        n, m = self.n, self.m
        degenerate = 0
        since_refactor = 0
        while True:
            if self.iters >= limit:
                return "limit"
            below = self.l - self.x
            above = self.x - self.u
            infeas = np.maximum(below, above)
            infeas[~self.is_basic] = 0.0
            if m == 0 or infeas.max() <= PRIMAL_TOL:
                return "optimal"
            if bland or degenerate > DEGENERATE_BUDGET:
                p = int(np.nonzero(infeas > PRIMAL_TOL)[0][0])
                use_bland = True
            else:
                p = int(np.argmax(infeas))
                use_bland = False
            to_lower = below[p] > above[p]
            rho, w = self._rho(p)
            alpha = np.empty(n + m)
            alpha[:n] = rho @ self.A
            alpha[n:] = -rho
            alpha[self.is_basic] = 0.0
            s = -1.0 if to_lower else 1.0
            movable = (~self.is_basic) & (self.l < self.u)
            sa = s * alpha
            tol = PIVOT_TOL * max(1.0, float(np.abs(alpha).max()))
            elig = movable & (((~self.at_upper) & (sa > tol)) | (self.at_upper & (sa < -tol)))
            cand = np.nonzero(elig)[0]
            if len(cand) == 0:
                return "infeasible"
            absd = np.abs(self.d[cand])
            absa = np.abs(alpha[cand])
            ratios = absd / absa
            if use_bland:
                tmin = ratios.min()
                q = int(cand[ratios <= tmin + 1e-12].min())
            else:
                # Harris two-pass
                tmax = ((absd + DUAL_TOL) / absa).min()
                ok = ratios <= tmax
                q = int(cand[ok][np.argmax(absa[ok])])
            alpha_q = alpha[q]
            col = self._entering_column(q)
            if abs(col[p] - alpha_q) > 1e-6 * max(1.0, abs(alpha_q)) and since_refactor > 0:
                if not self._try_refactor():
                    return "singular"
                since_refactor = 0
                continue
            theta_d = self.d[q] / alpha_q
            degenerate = degenerate + 1 if abs(theta_d) <= 1e-12 else 0
            # dual update
            nb = ~self.is_basic
            self.d[nb] -= theta_d * alpha[nb]
            self.d[q] = 0.0
            self.d[p] = -theta_d
            # primal update
            bound = self.l[p] if to_lower else self.u[p]
            t = (self.x[p] - bound) / col[p]
            self.x -= t * col
            self.x[q] += t
            self.x[p] = bound
            self.at_upper[p] = not to_lower
            self.is_basic[p] = False
            self.is_basic[q] = True
            self._update_kernel(p, q, col, w)
            self.iters += 1
            since_refactor += 1
            if since_refactor >= REFACTOR_EVERY:
                if not self._try_refactor():
                    return "singular"
                since_refactor = 0

    # -- results -------------------------------------------------------------

    def primal(self) -> np.ndarray:
        return np.clip(self.x[: self.n], self.l[: self.n], self.u[: self.n])

    def lagrangian_bound(self) -> float:
        """Valid objective bound from the current duals, whatever their accuracy."""
        n = self.n
        y = self._duals()
        d = self.cost[:n] - y @ self.A
        lo, hi = self.l[:n], self.u[:n]
        total = np.where(d >= 0, d * lo, d * hi).sum()
        if self.m:
            act_lo, act_hi = self._activity_range_at(lo, hi)
            s_lo = np.maximum(self.l[n:], act_lo)
            s_hi = np.minimum(self.u[n:], act_hi)
            total += np.where(y >= 0, y * s_lo, y * s_hi).sum()
        bound = total * self.lp.scale
        return float(bound if self.lp.sense == "min" else -bound)

    def _activity_range_at(self, lo, hi):
        m = self.m
        Ap, An = self.lp.A_pos[:m], self.lp.A_neg[:m]
        return Ap @ lo + An @ hi, Ap @ hi + An @ lo


def solve_lp(c, rows, lb, ub, sense: str = "min") -> LPResult:
    """One-shot helper: ``rows`` is a list of ``(idx, coef, lo, hi)``."""
    lp = DualSimplex(c, lb, ub, sense)
    for idx, coef, lo, hi in rows:
        lp.add_row(idx, coef, lo, hi)
    return lp.solve()
