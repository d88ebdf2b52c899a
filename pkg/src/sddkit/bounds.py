"""Inequality certificates for SDD positive matrices.

Each operation evaluates one inequality on a concrete matrix and returns a
:class:`BoundReport` with both sides, a holds flag, the signed slack, and
the parameters that entered the bound.  Reports never pass silently: a
violated precondition yields an inapplicable report, and a vacuous bound
(no information) is flagged rather than dropped.

Comparisons use tol = 1e-9 * max(1, |rhs|), recorded in the report context.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matcore import (
    DominanceReport,
    MatrixError,
    SingularMatrixError,
    SymMatrix,
    classify,
    delta,
    det_dense,
    eigen_sym,
    inf_norm,
    inverse_dense,
)
from .sform import SForm, sform_dense, sform_inf_norm_inverse, sform_inverse
from .graphlimit import signless_laplacian
from . import randmat

__all__ = [
    "BoundReport",
    "XiResult",
    "SingularBlockError",
    "varah_bound",
    "main_bound",
    "lower_bound_trivial",
    "spectral_route_bound",
    "condition_bound",
    "eig_interval_check",
    "block_det_ratio",
    "det_ratio_lu",
    "det_lower_bound",
    "det_upper_bound_balanced",
    "adjugate_bound",
    "xi_functional",
    "conjecture_search",
    "ConjectureRecord",
    "ConjectureLedger",
    "SuiteRecord",
    "verify_suite",
    "SUITES",
    "CONJECTURES",
]


class SingularBlockError(MatrixError):
    """A trailing block in the determinant factorization is singular."""

    def __init__(self, message: str, block_index: int):
        super().__init__(message)
        self.block_index = block_index


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: lhs <= rhs up to the recorded tolerance.

    ``vacuous`` marks bounds that carry no information (trivially true or a
    non-positive lower bound); ``applicable`` is False when a precondition
    failed, in which case lhs/rhs/slack are NaN and holds is False.
    """

    name: str
    lhs: float
    rhs: float
    holds: bool
    slack: float
    vacuous: bool
    applicable: bool
    context: dict = field(default_factory=dict)


def _tol(rhs: float) -> float:
    return 1e-9 * max(1.0, abs(rhs))


def _report(name: str, lhs: float, rhs: float, vacuous: bool = False,
            **context) -> BoundReport:
    tol = _tol(rhs)
    context = dict(context)
    context["tol"] = tol
    return BoundReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        holds=bool(lhs <= rhs + tol),
        slack=float(rhs - lhs),
        vacuous=vacuous,
        applicable=True,
        context=context,
    )


def _inapplicable(name: str, reason: str, **context) -> BoundReport:
    context = dict(context)
    context["reason"] = reason
    nan = float("nan")
    return BoundReport(
        name=name, lhs=nan, rhs=nan, holds=False, slack=nan,
        vacuous=True, applicable=False, context=context,
    )


def varah_bound(J: SymMatrix) -> BoundReport:
    """inf_norm(J^{-1}) <= max_i 1/margin_i for strictly dominant J.

    Inapplicable when any dominance margin is <= 0 (in particular for
    balanced matrices).
    """
    d = delta(J)
    if d.min() <= 0:
        return _inapplicable("varah", "not strictly diagonally dominant", n=J.n,
                             min_delta=float(d.min()))
    lhs = inf_norm(inverse_dense(J))
    rhs = float(1.0 / d.min())
    return _report("varah", lhs, rhs, n=J.n, min_delta=float(d.min()))


def main_bound(J: SymMatrix, S: SForm) -> BoundReport:
    """inf_norm(J^{-1}) <= (alpha + 2 ell (n-1))/(alpha (alpha + ell n)).

    Requires J symmetric diagonally dominant with J >= dense(S) entrywise
    and S dominant; equality holds exactly when J equals dense(S).
    """
    if J.n != S.n:
        return _inapplicable("main", f"dimension mismatch {J.n} vs {S.n}")
    if not S.is_dominant:
        return _inapplicable("main", "reference family not diagonally dominant",
                             n=S.n, alpha=S.alpha, ell=S.ell)
    rep = classify(J)
    if not rep.is_dominant:
        return _inapplicable("main", "J not diagonally dominant", n=J.n)
    gap = float((J.entries - sform_dense(S).entries).min())
    if gap < -1e-12 * max(1.0, inf_norm(J)):
        return _inapplicable("main", "J not entrywise >= reference matrix",
                             n=J.n, worst_gap=gap)
    lhs = inf_norm(inverse_dense(J))
    rhs = sform_inf_norm_inverse(S)
    return _report("main", lhs, rhs, n=J.n, alpha=S.alpha, ell=S.ell)


def lower_bound_trivial(J: SymMatrix) -> BoundReport:
    """1/(2 m (n-1) + delta_max) <= inf_norm(J^{-1}).

    m is the largest off-diagonal entry and delta_max the largest dominance
    margin; follows from submultiplicativity of the infinity norm.
    """
    rep = classify(J)
    if J.n < 2 or rep.min_offdiag is None or rep.min_offdiag <= 0:
        return _inapplicable("lower", "needs positive off-diagonal entries", n=J.n)
    if not rep.is_dominant:
        return _inapplicable("lower", "J not diagonally dominant", n=J.n)
    m_hat = rep.max_offdiag
    d_hat = max(rep.max_delta, 0.0)
    lhs = 1.0 / (2.0 * m_hat * (J.n - 1) + d_hat)
    rhs = inf_norm(inverse_dense(J))
    return _report("lower", lhs, rhs, n=J.n, m=m_hat, delta=d_hat)


def spectral_route_bound(J: SymMatrix, ell: float | None = None) -> BoundReport:
    """inf_norm(J^{-1}) <= sqrt(n) / ((n-2) ell) via the spectral norm.

    The context records the intermediate sqrt(n)/lambda_min and, for
    comparison, the sharper O(1/n) bound (3n-4)/(2 ell (n-2)(n-1)); the gap
    between the two is why the spectral route is too weak for large n.
    """
    rep = classify(J)
    if ell is None:
        ell = rep.min_offdiag if rep.min_offdiag is not None else 0.0
    n = J.n
    if n < 3:
        return _inapplicable("spectral", "needs n >= 3", n=n)
    if not ell > 0 or rep.min_offdiag is None or rep.min_offdiag < ell - 1e-12:
        return _inapplicable("spectral", "off-diagonal entries not >= ell > 0",
                             n=n, ell=float(ell))
    if not rep.is_dominant:
        return _inapplicable("spectral", "J not diagonally dominant", n=n)
    lams = eigen_sym(J)
    lhs = inf_norm(inverse_dense(J))
    rhs = math.sqrt(n) / ((n - 2) * ell)
    intermediate = math.sqrt(n) / lams[0]
    sharp = (3 * n - 4) / (2.0 * ell * (n - 2) * (n - 1))
    return _report("spectral", lhs, rhs, n=n, ell=float(ell),
                   intermediate=float(intermediate), sharp_rhs=float(sharp))


def condition_bound(J: SymMatrix, ell: float | None = None) -> BoundReport:
    """cond_inf(J) <= (2 m (n-1) + delta_max)(3n-4) / (2 ell (n-2)(n-1)).

    For large n the right side approaches 3 m / ell.
    """
    rep = classify(J)
    if ell is None:
        ell = rep.min_offdiag if rep.min_offdiag is not None else 0.0
    n = J.n
    if n < 3:
        return _inapplicable("cond", "needs n >= 3", n=n)
    if not ell > 0 or rep.min_offdiag is None or rep.min_offdiag < ell - 1e-12:
        return _inapplicable("cond", "off-diagonal entries not >= ell > 0",
                             n=n, ell=float(ell))
    if not rep.is_dominant:
        return _inapplicable("cond", "J not diagonally dominant", n=n)
    m_hat = rep.max_offdiag
    d_hat = max(rep.max_delta, 0.0)
    lhs = inf_norm(J) * inf_norm(inverse_dense(J))
    rhs = (2.0 * m_hat * (n - 1) + d_hat) * (3 * n - 4) / (2.0 * ell * (n - 2) * (n - 1))
    return _report("cond", lhs, rhs, n=n, ell=float(ell), m=m_hat, delta=d_hat)


def eig_interval_check(J: SymMatrix, ell: float | None = None,
                       m: float | None = None, i: int = 1) -> BoundReport:
    """Eigenvalue intervals for the trailing (n-i+1)-dimensional block.

    For balanced J with off-diagonal entries in [ell, m], the block's
    eigenvalues satisfy (n-2) ell <= lam_j <= (n-2) m for all but the
    largest, and (2n-i-1) ell <= lam_max <= (2n-i-1) m.  For dominant
    (non-balanced) J only the lower bounds are asserted.

    The report compresses all interval constraints into one comparison:
    lhs is the largest violation across constraints and rhs is 0, so
    slack is the worst margin by which the eigenvalues clear the intervals.
    """
    rep = classify(J)
    n = J.n
    if not 1 <= i <= n - 1:
        return _inapplicable("eig", f"block index {i} outside 1..{n - 1}", n=n, i=i)
    if n < 3:
        return _inapplicable("eig", "needs n >= 3", n=n, i=i)
    if rep.min_offdiag is None:
        return _inapplicable("eig", "no off-diagonal entries", n=n, i=i)
    if ell is None:
        ell = rep.min_offdiag
    if m is None:
        m = rep.max_offdiag
    if not (0 < ell <= rep.min_offdiag + 1e-12 and rep.max_offdiag <= m + 1e-12):
        return _inapplicable("eig", "[ell, m] does not bracket the off-diagonals",
                             n=n, i=i, ell=float(ell), m=float(m))
    if not rep.is_dominant:
        return _inapplicable("eig", "J not diagonally dominant", n=n, i=i)
    balanced = rep.is_balanced
    block = SymMatrix(J.entries[i - 1:, i - 1:])
    lams = eigen_sym(block)
    size = block.n
    low = np.full(size, (n - 2) * ell)
    low[-1] = (2 * n - i - 1) * ell
    worst = float((low - lams).max())
    if balanced:
        high = np.full(size, (n - 2) * m)
        high[-1] = (2 * n - i - 1) * m
        worst = max(worst, float((lams - high).max()))
    return _report("eig", worst, 0.0, n=n, i=i, ell=float(ell), m=float(m),
                   balanced=balanced, lambda_min=float(lams[0]),
                   lambda_max=float(lams[-1]))


def block_det_ratio(J: SymMatrix) -> tuple[np.ndarray, float]:
    """det(J) / prod(J_ii) by the trailing-block factorization.

    Factor i is 1 - b' B^{-1} b / J_ii where B is the trailing block one
    past row i and b the off-diagonal stub of row i; the product of the
    n-1 factors equals the determinant ratio.  Raises
    :class:`SingularBlockError` naming the first singular trailing block.
    """
    a = J.entries
    n = J.n
    factors = np.empty(max(n - 1, 0))
    for i in range(n - 1):
        b = a[i, i + 1:]
        block = SymMatrix(a[i + 1:, i + 1:])
        try:
            binv = inverse_dense(block)
        except SingularMatrixError as exc:
            raise SingularBlockError(
                f"trailing block starting at row {i + 2} is singular "
                f"(pivot {exc.pivot:.3e})",
                block_index=i + 2,
            ) from exc
        factors[i] = 1.0 - float(b @ (binv.entries @ b)) / a[i, i]
    return factors, float(np.prod(factors)) if n > 1 else 1.0


def det_ratio_lu(J: SymMatrix) -> float:
    """det(J) / prod(J_ii) via the LU determinant (log-scaled for safety)."""
    diag = J.entries.diagonal()
    if (diag <= 0).any():
        raise MatrixError("determinant ratio needs positive diagonal entries")
    sign, logabs = np.linalg.slogdet(J.entries)
    if sign == 0:
        return 0.0
    return float(sign * np.exp(logabs - np.log(diag).sum()))


def _bracket(rep: DominanceReport, ell, m, name, n):
    """Resolve caller-supplied [ell, m] against observed off-diagonals."""
    if rep.min_offdiag is None:
        return None, None, _inapplicable(name, "no off-diagonal entries", n=n)
    if ell is None:
        ell = rep.min_offdiag
    if m is None:
        m = rep.max_offdiag
    if not (0 < ell <= rep.min_offdiag + 1e-12 and rep.max_offdiag <= m + 1e-12):
        return None, None, _inapplicable(
            name, "[ell, m] does not bracket the off-diagonals",
            n=n, ell=float(ell), m=float(m))
    return float(ell), float(m), None


def det_lower_bound(J: SymMatrix, ell: float | None = None,
                    m: float | None = None) -> BoundReport:
    """det ratio >= (1 - sqrt(m/ell)(1 + m/ell)/(2(n-2)))^{n-1} for SDD J.

    When the base is <= 0 the bound carries no information: the report is
    flagged vacuous and the left side degrades to -inf rather than an
    oscillating power of a negative number.
    """
    rep = classify(J)
    n = J.n
    if n < 3:
        return _inapplicable("det_lower", "needs n >= 3", n=n)
    ell, m, bad = _bracket(rep, ell, m, "det_lower", n)
    if bad is not None:
        return bad
    if not rep.is_dominant:
        return _inapplicable("det_lower", "J not diagonally dominant", n=n)
    base = 1.0 - math.sqrt(m / ell) * (1.0 + m / ell) / (2.0 * (n - 2))
    _, ratio = block_det_ratio(J)
    if base <= 0:
        return _report("det_lower", float("-inf"), ratio, vacuous=True,
                       n=n, ell=ell, m=m, base=base)
    lhs = base ** (n - 1)
    return _report("det_lower", lhs, ratio, n=n, ell=ell, m=m, base=base)


def det_upper_bound_balanced(J: SymMatrix, ell: float | None = None,
                             m: float | None = None) -> BoundReport:
    """det ratio <= exp(-ell^2 / (4 m^2)) for balanced J."""
    rep = classify(J)
    n = J.n
    if n < 3:
        return _inapplicable("det_upper", "needs n >= 3", n=n)
    ell, m, bad = _bracket(rep, ell, m, "det_upper", n)
    if bad is not None:
        return bad
    if not rep.is_balanced:
        return _inapplicable("det_upper", "J not diagonally balanced", n=n)
    _, ratio = block_det_ratio(J)
    rhs = math.exp(-ell * ell / (4.0 * m * m))
    return _report("det_upper", ratio, rhs, n=n, ell=ell, m=m)


def adjugate_bound(J: SymMatrix, ell: float | None = None,
                   m: float | None = None) -> BoundReport:
    """inf_norm(adjugate)/prod(J_ii) <= (3n-4)/(2 ell (n-2)(n-1)) e^{-ell^2/4m^2}.

    The adjugate is computed as det(J) * J^{-1}; balanced J only.
    """
    rep = classify(J)
    n = J.n
    if n < 3:
        return _inapplicable("adjugate", "needs n >= 3", n=n)
    ell, m, bad = _bracket(rep, ell, m, "adjugate", n)
    if bad is not None:
        return bad
    if not rep.is_balanced:
        return _inapplicable("adjugate", "J not diagonally balanced", n=n)
    adj = det_dense(J) * inverse_dense(J).entries
    lhs = float(np.abs(adj).sum(axis=1).max() / np.prod(J.entries.diagonal()))
    rhs = ((3 * n - 4) / (2.0 * ell * (n - 2) * (n - 1))) * math.exp(
        -ell * ell / (4.0 * m * m))
    return _report("adjugate", lhs, rhs, n=n, ell=ell, m=m)


def hadamard_sanity(J: SymMatrix) -> BoundReport:
    """det ratio <= 1 for any positive semidefinite J (classical)."""
    _, ratio = block_det_ratio(J)
    return _report("hadamard", ratio, 1.0, n=J.n)


@dataclass(frozen=True)
class XiResult:
    """Row-wise positivity functional of Q = S^{-1} P S^{-1}.

    ``xi`` is min_i (Q_ii - sum_{j != i} Q_ij); ``per_row`` the direct
    row values, ``per_row_closed`` the closed-form evaluation they are
    checked against.  ``zero_input`` marks P == 0, where the functional is
    identically zero (positivity needs a nonzero P).
    """

    xi: float
    per_row: np.ndarray
    per_row_closed: np.ndarray
    zero_input: bool


def xi_functional(S: SForm, P: SymMatrix) -> XiResult:
    """Evaluate the positivity functional two ways and cross-check.

    Direct route: form Q = S^{-1} P S^{-1} densely and take row functionals
    Q_ii - sum_{j != i} Q_ij.  Closed route, with rho = alpha/ell and
    b = ell/(alpha(alpha + ell n)):

        b^2 [ ((rho+n-2)(rho+4)+4) margin_i(P)
              + (2(rho+n-1)(n-3)+rho) P_ii
              + (rho+2) sum_{j,k != i} P_jk ].

    The two evaluations must agree to 1e-10 relative; disagreement raises,
    since it can only come from a coding error.
    """
    if P.n != S.n:
        raise ValueError(f"dimension mismatch: sform n={S.n}, P n={P.n}")
    if not S.is_dominant:
        raise ValueError("reference family must be diagonally dominant")
    if float(P.entries.min()) < 0:
        raise ValueError("P must be entrywise nonnegative")
    dP = delta(P)
    if dP.min() < -1e-12 * max(1.0, inf_norm(P)):
        raise ValueError("P must be diagonally dominant")
    n = S.n
    if not P.entries.any():
        zeros = np.zeros(n)
        return XiResult(xi=0.0, per_row=zeros, per_row_closed=zeros.copy(),
                        zero_input=True)
    Sinv = sform_inverse(S).entries
    Q = Sinv @ P.entries @ Sinv
    direct = 2.0 * Q.diagonal() - Q.sum(axis=1)
    rho = S.alpha / S.ell
    b = S.ell / (S.alpha * (S.alpha + S.ell * n))
    diag = P.entries.diagonal()
    rowsum = P.entries.sum(axis=1)
    total = float(P.entries.sum())
    rest = total - 2.0 * rowsum + diag
    closed = (b * b) * (
        ((rho + n - 2) * (rho + 4) + 4) * dP
        + (2 * (rho + n - 1) * (n - 3) + rho) * diag
        + (rho + 2) * rest
    )
    scale = max(float(np.abs(closed).max()), np.finfo(float).tiny)
    if not np.allclose(direct, closed, rtol=1e-10, atol=1e-10 * scale):
        worst = float(np.abs(direct - closed).max())
        raise ArithmeticError(
            f"positivity functional routes disagree by {worst:.3e} "
            f"(scale {scale:.3e}); direct and closed form should match"
        )
    return XiResult(xi=float(direct.min()), per_row=direct,
                    per_row_closed=closed, zero_input=False)


# ---------------------------------------------------------------------------
# Seeded searches over the two conjectured extremal inequalities.

CONJECTURES = ("lower_norm", "det_upper")
_MODE_TAG = {"lower_norm": 101, "det_upper": 102}


@dataclass(frozen=True)
class ConjectureRecord:
    trial: int
    n: int
    params: dict
    lhs: float
    rhs: float
    slack: float
    violation: bool


@dataclass(frozen=True)
class ConjectureLedger:
    """Outcome of a seeded random search; violations are findings, not errors."""

    mode: str
    trials: int
    seed: int
    records: list
    min_slack: float
    violations: list


def _lower_norm_record(trial: int, J: SymMatrix, alpha: float, m: float) -> ConjectureRecord:
    # Conjectured: inf_norm(J^{-1}) >= inf_norm(S(alpha, m)^{-1}) whenever
    # 0 < J <= alpha*I + m*ones entrywise and J is SDD.
    n = J.n
    lhs = (alpha + 2.0 * m * (n - 1)) / (alpha * (alpha + m * n))
    rhs = inf_norm(inverse_dense(J))
    slack = rhs - lhs
    tol = _tol(lhs)
    return ConjectureRecord(trial=trial, n=n,
                            params={"alpha": alpha, "m": m},
                            lhs=lhs, rhs=rhs, slack=slack,
                            violation=bool(slack < -tol))


def _det_upper_record(trial: int, J: SymMatrix) -> ConjectureRecord:
    # Conjectured: det ratio of a positive balanced J is at most
    # 2 (1 - 1/(n-1))^{n-1}, the ratio of the balanced reference matrix.
    n = J.n
    _, ratio = block_det_ratio(J)
    bound = 2.0 * (1.0 - 1.0 / (n - 1)) ** (n - 1)
    slack = bound - ratio
    tol = _tol(bound)
    return ConjectureRecord(trial=trial, n=n, params={},
                            lhs=ratio, rhs=bound, slack=slack,
                            violation=bool(slack < -tol))


def conjecture_search(mode: str, trials: int, seed: int) -> ConjectureLedger:
    """Deterministic seeded random search over a conjectured inequality.

    mode "lower_norm": SDD matrices 0 < J <= alpha*I + m*ones, testing
    whether the family member is the norm minimizer (trial 0 probes the
    conjectured equality case J = alpha*I + m*ones exactly).
    mode "det_upper": positive balanced matrices, testing the determinant
    ratio against the balanced reference value.

    A violated inequality is recorded as a finding in the ledger, never
    raised.
    """
    if mode not in CONJECTURES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {CONJECTURES}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    records = []
    for t in range(trials):
        rng = randmat.trial_rng(seed, _MODE_TAG[mode], t)
        n = int(rng.integers(3, 11))
        if mode == "lower_norm":
            m = float(rng.uniform(0.5, 2.0))
            margin_cap = float(rng.uniform(0.0, 2.0 * m))
            alpha = (n - 2) * m + margin_cap
            if t == 0:
                J = sform_dense(SForm(n, alpha, m))
            else:
                off = rng.uniform(0.05 * m, m, size=(n, n))
                off = np.triu(off, 1)
                off = off + off.T
                a = off.copy()
                np.fill_diagonal(a, off.sum(axis=1) + rng.uniform(0.0, margin_cap, size=n))
                J = SymMatrix(a)
            records.append(_lower_norm_record(t, J, alpha, m))
        else:
            J = randmat.random_balanced(rng, n, lo=0.2, hi=3.0)
            records.append(_det_upper_record(t, J))
    min_slack = min(r.slack for r in records)
    violations = [r.trial for r in records if r.violation]
    return ConjectureLedger(mode=mode, trials=trials, seed=seed,
                            records=records, min_slack=float(min_slack),
                            violations=violations)


# ---------------------------------------------------------------------------
# Randomized verification suites (one inequality family per suite).

SUITES = ("varah", "main", "lower", "spectral", "cond", "eig", "det",
          "adjugate", "xi")
_SUITE_TAG = {name: 200 + k for k, name in enumerate(SUITES)}


@dataclass(frozen=True)
class SuiteRecord:
    suite: str
    trial: int
    n: int
    params: dict
    report: BoundReport


def _suite_records(suite: str, trial: int, rng, n: int) -> list[SuiteRecord]:
    if suite == "varah":
        J = randmat.random_strictly_dominant(rng, n)
        return [SuiteRecord(suite, trial, n, {}, varah_bound(J))]
    if suite == "main":
        ell = float(rng.uniform(0.5, 2.0))
        alpha = (n - 2) * ell + float(rng.uniform(0.0, 2.0 * ell))
        S = SForm(n, alpha, ell)
        J = randmat.random_geq_sform(rng, S, bump_hi=2.0 * ell)
        return [SuiteRecord(suite, trial, n, {"alpha": alpha, "ell": ell},
                            main_bound(J, S))]
    if suite == "lower":
        J = randmat.random_dominant(rng, n)
        return [SuiteRecord(suite, trial, n, {}, lower_bound_trivial(J))]
    if suite == "spectral":
        ell = float(rng.uniform(0.3, 1.5))
        J = randmat.random_dominant(rng, n, lo=ell, hi=3.0 * ell)
        return [SuiteRecord(suite, trial, n, {"ell": ell},
                            spectral_route_bound(J, ell))]
    if suite == "cond":
        J = randmat.random_dominant(rng, n)
        return [SuiteRecord(suite, trial, n, {}, condition_bound(J))]
    if suite == "eig":
        balanced = trial % 2 == 0
        J = (randmat.random_balanced(rng, n) if balanced
             else randmat.random_dominant(rng, n))
        return [SuiteRecord(suite, trial, n, {"i": i, "balanced": balanced},
                            eig_interval_check(J, i=i))
                for i in range(1, n)]
    if suite == "det":
        if trial % 2 == 0:
            J = randmat.random_balanced(rng, n)
            return [
                SuiteRecord(suite, trial, n, {"balanced": True}, det_lower_bound(J)),
                SuiteRecord(suite, trial, n, {"balanced": True},
                            det_upper_bound_balanced(J)),
            ]
        J = randmat.random_dominant(rng, n)
        return [SuiteRecord(suite, trial, n, {"balanced": False}, det_lower_bound(J))]
    if suite == "adjugate":
        J = randmat.random_balanced(rng, n)
        return [SuiteRecord(suite, trial, n, {}, adjugate_bound(J))]
    if suite == "xi":
        ell = float(rng.uniform(0.5, 2.0))
        alpha = (n - 2) * ell * (1.0 + float(rng.uniform(0.0, 1.0)))
        S = SForm(n, alpha, ell)
        G = randmat.random_loop_graph(rng, n, p_edge=0.4, p_loop=0.15)
        if G.num_edges == 0:
            G = type(G)(n, [(1, 2)])
        P = signless_laplacian(G)
        res = xi_functional(S, P)
        agreement = float(np.abs(res.per_row - res.per_row_closed).max())
        report = _report("xi", -res.xi, 0.0, n=n, alpha=alpha, ell=ell,
                         edges=G.num_edges, route_gap=agreement)
        return [SuiteRecord(suite, trial, n,
                            {"alpha": alpha, "ell": ell, "edges": G.num_edges},
                            report)]
    raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")


def verify_suite(suite: str, n_range: tuple[int, int], trials: int,
                 seed: int) -> list[SuiteRecord]:
    """Run one randomized inequality suite; deterministic in (suite, seed).

    Each trial draws its dimension uniformly from ``n_range`` and its
    instance from a per-trial generator keyed by (seed, suite, trial), so
    results do not depend on scheduling or on other suites.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    lo, hi = n_range
    if not (3 <= lo <= hi):
        raise ValueError(f"need 3 <= n_lo <= n_hi, got {n_range}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    out = []
    for t in range(trials):
        rng = randmat.trial_rng(seed, _SUITE_TAG[suite], t)
        n = int(rng.integers(lo, hi + 1))
        out.extend(_suite_records(suite, t, rng, n))
    return out
