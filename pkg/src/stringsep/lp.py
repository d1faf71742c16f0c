"""Self-contained dense linear-program solver.

Two-phase primal simplex on the standard-form conversion.  The entering rule
is Dantzig's (most negative reduced cost) while the objective is moving, with
a fallback to Bland's rule (lowest eligible index, ratio ties broken by the
lowest basis variable index) whenever the objective stalls; Bland steps rule
out cycling, so every solve terminates, and both rules are index-deterministic.
All variables are implicitly nonnegative.

Solutions expose dual values per constraint, read off the reduced costs of
each row's identity column in the final tableau.  Convention: duals satisfy
value = sum_i b_i * y_i, with y_i >= 0 on binding ">=" rows of a
minimization (and the sign map mirrored for maximization), i.e. the same
convention as the mechanically constructed dual of `dual_of`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-12
MAX_ITERS = 500_000

Relation = str  # "<=", "=", ">="


@dataclass
class LpProblem:
    objective: np.ndarray
    sense: str = "max"  # "max" | "min"
    rows: list[tuple[np.ndarray, Relation, float]] = field(default_factory=list)

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")

    @property
    def n_vars(self) -> int:
        return len(self.objective)

    def add(self, coeffs, rel: Relation, rhs: float) -> None:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.n_vars,):
            raise ValueError("coefficient vector length mismatch")
        if rel not in ("<=", "=", ">="):
            raise ValueError(f"bad relation {rel!r}")
        if not np.isfinite(rhs):
            raise ValueError("bounds must be finite")
        self.rows.append((coeffs, rel, float(rhs)))


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded | numerical_failure
    value: float
    x: np.ndarray
    iterations: int
    duals: np.ndarray  # one per constraint row, canonical-dual convention


def lp_solve(problem: LpProblem) -> LpSolution:
    m = len(problem.rows)
    n = problem.n_vars
    minimize = problem.sense == "min"
    c_struct = problem.objective if minimize else -problem.objective

    A = np.zeros((m, n))
    b = np.zeros(m)
    rels = []
    sign = np.ones(m)
    for i, (coeffs, rel, rhs) in enumerate(problem.rows):
        A[i] = coeffs
        b[i] = rhs
        rels.append(rel)
        if rhs < 0:
            A[i] = -A[i]
            b[i] = -rhs
            sign[i] = -1.0
            rels[i] = {"<=": ">=", ">=": "<=", "=": "="}[rel]

    n_slack = sum(1 for r in rels if r in ("<=", ">="))
    n_art = sum(1 for r in rels if r in ("=", ">="))
    ncols = n + n_slack + n_art
    T = np.zeros((m, ncols + 1))
    T[:, :n] = A
    T[:, -1] = b

    slack_at = n
    art_at = n + n_slack
    identity_col = np.zeros(m, dtype=int)
    art_cols = []
    basis = np.zeros(m, dtype=int)
    for i, rel in enumerate(rels):
        if rel == "<=":
            T[i, slack_at] = 1.0
            identity_col[i] = slack_at
            basis[i] = slack_at
            slack_at += 1
        elif rel == ">=":
            T[i, slack_at] = -1.0
            slack_at += 1
            T[i, art_at] = 1.0
            identity_col[i] = art_at
            basis[i] = art_at
            art_cols.append(art_at)
            art_at += 1
        else:
            T[i, art_at] = 1.0
            identity_col[i] = art_at
            basis[i] = art_at
            art_cols.append(art_at)
            art_at += 1
    art_mask = np.zeros(ncols, dtype=bool)
    art_mask[art_cols] = True

    iterations = 0

    buf = np.empty_like(T)

    def run(cost: np.ndarray, eligible: np.ndarray, protect_arts: bool = False) -> str:
        nonlocal iterations
        r = cost - cost[basis] @ T[:, :-1]
        obj = float(cost[basis] @ T[:, -1])
        stall = 0
        bland = False
        while True:
            neg = (r < -FEAS_TOL) & eligible
            if not neg.any():
                return "optimal"
            if bland:
                j = int(np.flatnonzero(neg)[0])  # Bland: lowest index enters
            else:
                j = int(np.where(neg, r, 0.0).argmin())  # Dantzig: steepest
            col = T[:, j]
            leave = -1
            if protect_arts:
                # a zero-level basic artificial whose row meets the entering
                # column must leave first, else the equality it stands for
                # could be silently violated
                guard = np.flatnonzero(
                    art_mask[basis] & (np.abs(col) > 1e-9) & (T[:, -1] <= 1e-9)
                )
                if guard.size:
                    leave = int(guard[np.argmin(basis[guard])])
            if leave < 0:
                rows = np.flatnonzero(col > PIVOT_TOL)
                if rows.size == 0:
                    return "unbounded"
                ratios = T[rows, -1] / col[rows]
                rmin = ratios.min()
                tie = rows[ratios <= rmin + 1e-12]
                leave = int(tie[np.argmin(basis[tie])])  # lowest basis index leaves
            piv = T[leave, j]
            T[leave] /= piv
            factor = T[:, j].copy()
            factor[leave] = 0.0
            np.multiply(factor[:, None], T[leave][None, :], out=buf)
            T[:, :] -= buf
            r = r - r[j] * T[leave, :-1]
            r[j] = 0.0
            basis[leave] = j
            rhs = T[:, -1]
            rhs[(rhs < 0.0) & (rhs > -1e-9)] = 0.0
            iterations += 1
            if iterations > MAX_ITERS:
                return "stalled"
            new_obj = float(cost[basis] @ rhs)
            if new_obj < obj - 1e-12:
                obj = new_obj
                stall = 0
                bland = False
            else:
                stall += 1
                if stall > 30:
                    bland = True  # degenerate run: Bland's rule breaks the cycle

    dummy_duals = np.zeros(m)

    status = "optimal"
    if art_cols:
        cost1 = np.zeros(ncols)
        cost1[art_cols] = 1.0
        outcome = run(cost1, np.ones(ncols, dtype=bool))
        if outcome == "stalled":
            return LpSolution("numerical_failure", np.nan, np.zeros(n), iterations, dummy_duals)
        phase1_obj = cost1[basis] @ T[:, -1]
        if phase1_obj > 1e-7:
            return LpSolution("infeasible", np.nan, np.zeros(n), iterations, dummy_duals)
        # pivot zero-level artificials out of the basis where possible
        for i in range(m):
            if art_mask[basis[i]]:
                choices = np.flatnonzero((np.abs(T[i, :-1]) > 1e-9) & ~art_mask)
                if choices.size:
                    j = int(choices[0])
                    piv = T[i, j]
                    T[i] /= piv
                    factor = T[:, j].copy()
                    factor[i] = 0.0
                    T -= np.outer(factor, T[i])
                    basis[i] = j

    cost2 = np.zeros(ncols)
    cost2[:n] = c_struct
    outcome = run(cost2, ~art_mask, protect_arts=bool(art_cols))
    if outcome == "stalled":
        return LpSolution("numerical_failure", np.nan, np.zeros(n), iterations, dummy_duals)
    if outcome == "unbounded":
        return LpSolution("unbounded", np.nan, np.zeros(n), iterations, dummy_duals)

    x = np.zeros(ncols)
    x[basis] = T[:, -1]
    xs = x[:n]
    r_final = cost2 - cost2[basis] @ T[:, :-1]
    y_norm = -r_final[identity_col]
    duals = sign * y_norm
    value = float(c_struct @ xs)
    if not minimize:
        value = -value
        duals = -duals

    # residual check on the original rows
    for (coeffs, rel, rhs) in problem.rows:
        lhs = float(coeffs @ xs)
        bad = (
            (rel == "<=" and lhs > rhs + 1e-6)
            or (rel == ">=" and lhs < rhs - 1e-6)
            or (rel == "=" and abs(lhs - rhs) > 1e-6)
        )
        if bad:
            return LpSolution("numerical_failure", value, xs, iterations, duals)

    return LpSolution("optimal", value, xs, iterations, duals)


def dual_of(problem: LpProblem) -> LpProblem:
    """Mechanically constructed dual, for duality spot-checks.

    Free dual variables (from equality rows) are split into differences of
    two nonnegatives; sign-restricted ones are negated where needed so that
    every dual variable is nonnegative.
    """
    m = len(problem.rows)
    n = problem.n_vars
    A = np.array([row[0] for row in problem.rows]) if m else np.zeros((0, n))
    b = np.array([row[2] for row in problem.rows])
    rels = [row[1] for row in problem.rows]

    # columns of the dual LP: one var per sign-restricted row, two per free row
    cols = []  # (row index, multiplier)
    for i, rel in enumerate(rels):
        if problem.sense == "min":
            mult = {"<=": -1.0, ">=": 1.0}.get(rel)
        else:
            mult = {"<=": 1.0, ">=": -1.0}.get(rel)
        if mult is None:
            cols.append((i, 1.0))
            cols.append((i, -1.0))
        else:
            cols.append((i, mult))

    obj = np.array([b[i] * mult for i, mult in cols])
    dual = LpProblem(obj, "min" if problem.sense == "max" else "max", [])
    for j in range(n):
        coeffs = np.array([A[i, j] * mult for i, mult in cols])
        if problem.sense == "min":
            dual.add(coeffs, "<=", problem.objective[j])
        else:
            dual.add(coeffs, ">=", problem.objective[j])
    return dual
