"""Registry of exact identity and inequality checks behind ``qpartitions verify``.

Every entry of ``MANIFEST`` names a statement; ``run_suite`` executes one
registered check per entry and reports a failure for any entry left
without an executed check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from qpartitions import bounds, growth, measures, permstats
from qpartitions.partitions import colsq_sum, enumerate_partitions, n_lambda
from qpartitions.qarith import as_rational, euler_convergence_report, euler_coeff

MANIFEST: dict[str, str] = {
    "euler": "Euler product coefficients 1/(q^n (1/q)_n)",
    "pform": "P_{n,q} closed form normalises",
    "first_column_finite": "first-column law of P_{n,q}",
    "first_column_tilde": "first-column law of the all-sizes P measure",
    "rogers_selberg": "first-row tail expansion of P_{n,q}",
    "pbound": "two-sided bound on P^r_{n,q}",
    "path": "Young-lattice path sums equal P weights",
    "monotone": "P^r_{n,q} >= P^r_{n+1,q}",
    "hook_rewrite": "hook rewrite of the all-sizes P weights",
    "construction1": "Schur specialisation description of Q_{n,q}",
    "construction2": "RSK pushforward of the maj-biased measure is Q_{n,q}",
    "construction3": "column-square and n(lam) exponents agree for Q",
    "symmetry": "Q_{n,q}(lam) = Q_{n,1/q}(lam')",
    "z_recurrence": "recurrence for the Q normalising constant",
    "neumann": "(1-1/q)^2 <= prod (1-q^-i) <= 1-1/q",
    "prelim": "double product >= (1-1/q)^4",
    "boundconst": "two-sided bound on z(n,q)",
    "compare": "pointwise comparison of Q_{n,q} with P_{n,q}",
    "qbound": "two-sided bound on Q^r_{n,q}",
    "corollary": "bounds on the first-column law of Q_{n,q}",
}


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    statement: str
    passed: bool
    detail: str
    seconds: float


Check = Callable[[int, Fraction], tuple[bool, str]]
REGISTRY: dict[str, Check] = {}


def check(check_id: str):
    def register(fn: Check) -> Check:
        if check_id not in MANIFEST:
            raise KeyError(f"{check_id} is not in the manifest")
        REGISTRY[check_id] = fn
        return fn

    return register


def _first_failure(cases, predicate) -> tuple[bool, str]:
    count = 0
    for case in cases:
        count += 1
        if not predicate(*case):
            return False, f"fails at {case}"
    return True, f"{count} cases"


@check("euler")
def _euler(n_max, q):
    def ok(n):
        rep = euler_convergence_report(n, q, n + 50)
        weights = sum((measures.p_weight(lam, q) for lam in enumerate_partitions(n)), Fraction(0))
        return weights == euler_coeff(n, q) and rep.gap < rep.limit / 2**40

    return _first_failure(((n,) for n in range(n_max + 1)), ok)


@check("pform")
def _pform(n_max, q):
    return _first_failure(
        ((n,) for n in range(n_max + 1)),
        lambda n: measures.p_pmf(n, q).total() == 1 and measures.q_pmf(n, q).total() == 1,
    )


@check("first_column_finite")
def _first_column_finite(n_max, q):
    def ok(n):
        marg = measures.first_column_marginal(measures.p_pmf(n, q))
        return all(marg.get(k, 0) == measures.p_first_column(n, q, k) for k in range(1, n + 1))

    return _first_failure(((n,) for n in range(1, n_max + 1)), ok)


@check("first_column_tilde")
def _first_column_tilde(n_max, q):
    return _first_failure(
        ((k,) for k in range(5)), lambda k: measures.tilde_first_column_check(k, q, 40, 40)
    )


@check("rogers_selberg")
def _rogers_selberg(n_max, q):
    cases = ((n, r) for n in range(n_max + 1) for r in range(1, n + 3))
    return _first_failure(
        cases, lambda n, r: measures.p_row_tail_rs(n, q, r) == measures.p_row_tail_direct(n, q, r)
    )


@check("pbound")
def _pbound(n_max, q):
    rows = bounds.bounds_report(range(2, n_max + 1), "all", [q], "P")
    bad = [r for r in rows if not r.ok]
    return not bad, f"{len(rows)} rows" if not bad else f"fails at n={bad[0].n}, r={bad[0].r_or_k}"


@check("path")
def _path(n_max, q):
    cases = [(lam,) for n in range(n_max + 1) for lam in enumerate_partitions(n)]
    return _first_failure(
        cases,
        lambda lam: growth.path_sum(lam, q) == measures.p_weight(lam, q)
        and (not lam or growth.outflow(lam, q) == growth.outflow_direct(lam, q)),
    )


@check("monotone")
def _monotone(n_max, q):
    cases = ((n, r) for n in range(n_max + 1) for r in range(1, n + 3))
    return _first_failure(cases, lambda n, r: growth.monotone_check(n, r, q))


@check("hook_rewrite")
def _hook_rewrite(n_max, q):
    cases = ((lam,) for n in range(n_max + 1) for lam in enumerate_partitions(n))
    return _first_failure(cases, lambda lam: measures.tilde_p_hook_identity(lam, q))


@check("construction1")
def _construction1(n_max, q):
    return _first_failure(((n,) for n in range(n_max + 1)), lambda n: measures.construction1_check(n, q))


@check("construction2")
def _construction2(n_max, q):
    cap = min(n_max, 7)
    return _first_failure(
        ((n,) for n in range(1, cap + 1)),
        lambda n: dict(permstats.shape_pushforward(n, q).entries) == dict(measures.q_pmf(n, q).entries),
    )


@check("construction3")
def _construction3(n_max, q):
    cases = ((lam,) for n in range(n_max + 1) for lam in enumerate_partitions(n))
    return _first_failure(cases, lambda lam: sum(lam) + 2 * n_lambda(lam) == colsq_sum(lam))


@check("symmetry")
def _symmetry(n_max, q):
    return _first_failure(((n,) for n in range(n_max + 1)), lambda n: measures.symmetry_check(n, q))


@check("z_recurrence")
def _z_recurrence(n_max, q):
    table = measures.z_table(n_max, q)
    return _first_failure(((n,) for n in range(n_max + 1)), lambda n: table[n] == measures.z_direct(n, q))


@check("neumann")
def _neumann(n_max, q):
    return bounds.neumann_check(q, 50), "d <= 50"


@check("prelim")
def _prelim(n_max, q):
    return bounds.prelim_check(q, 40), "M = 40"


@check("boundconst")
def _boundconst(n_max, q):
    return _first_failure(((n,) for n in range(1, n_max + 1)), lambda n: bounds.boundconst_check(n, q))


@check("compare")
def _compare(n_max, q):
    return _first_failure(((n,) for n in range(1, n_max + 1)), lambda n: bounds.compare_sandwich_check(n, q))


@check("qbound")
def _qbound(n_max, q):
    rows = bounds.bounds_report(range(2, n_max + 1), "all", [q], "Q")
    bad = [r for r in rows if not (r.ok and bounds.qbound_upper_literal(r.n, r.r_or_k, q, r.exact))]
    return not bad, f"{len(rows)} rows" if not bad else f"fails at n={bad[0].n}, r={bad[0].r_or_k}"


@check("corollary")
def _corollary(n_max, q):
    cases = ((n, k) for n in range(1, n_max + 1) for k in range(1, n + 1))
    return _first_failure(cases, lambda n, k: bounds.corollary_check(n, q, k))


def run_suite(n_max: int, q) -> list[CheckResult]:
    q = as_rational(q)
    if q < 2:
        raise ValueError("the verification suite runs at q >= 2")
    results = []
    for check_id, statement in MANIFEST.items():
        fn = REGISTRY.get(check_id)
        if fn is None:
            results.append(CheckResult(check_id, statement, False, "no registered check", 0.0))
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn(n_max, q)
        except AssertionError as exc:
            passed, detail = False, f"assertion: {exc}"
        results.append(CheckResult(check_id, statement, passed, detail, time.perf_counter() - start))
    return results
