import math
from fractions import Fraction

import numpy as np
import pytest

from dualperron.collatz import CollatzTrace, bracket_step, collatz_solve, estimate_rate, order_violation
from dualperron.config import SolverConfig
from dualperron.errors import InsufficientDataError, NonAppreciableError, NotPrimitiveError, PreconditionError
from dualperron.experiments import generate_primitive
from dualperron.linalg import DualMatrix, DualVector
from dualperron.perron import perron_eigenpair
from dualperron.scalar import DualNumber
from dualperron.spectral import real_perron, second_modulus

HALF = [[0.5, 0.5], [0.5, 0.5]]
FIB = [[1.0, 1.0], [1.0, 0.0]]
O2 = np.zeros((2, 2))


def classical_collatz(M, x0, steps):
    """Textbook real Collatz-Wielandt iteration, written out independently."""
    x = x0 / np.linalg.norm(x0)
    lows, highs = [], []
    for _ in range(steps):
        y = M @ x
        lows.append(np.min(y / x))
        highs.append(np.max(y / x))
        x = y / np.linalg.norm(y)
    return np.array(lows), np.array(highs)


def test_hand_example():
    A = DualMatrix(HALF, [[1, 0], [0, 0]])
    trace = collatz_solve(A, [1, 1])
    assert trace.converged
    assert trace.final_lambda.s == pytest.approx(1.0, abs=1e-12)
    assert trace.final_lambda.d == pytest.approx(0.5, abs=1e-12)
    small = np.nonzero((trace.gap[:, 0] <= 1e-12) & (np.abs(trace.gap[:, 1]) <= 1e-12))[0]
    assert small.size and small[0] <= 3


def test_fibonacci_against_direct():
    A = DualMatrix(FIB, [[0, 1], [1, 0]])
    trace = collatz_solve(A, [1, 1])
    ref = perron_eigenpair(A).lam
    assert abs(trace.final_lambda.s - ref.s) <= 1e-8
    assert abs(trace.final_lambda.d - ref.d) <= 1e-8


def test_fibonacci_rate_within_eta():
    trace = collatz_solve(DualMatrix(FIB, [[0, 1], [1, 0]]), [1, 1])
    eta = second_modulus(np.array(FIB), real_perron(FIB)).eta
    assert trace.eta_theoretical == pytest.approx(eta, abs=1e-12)
    assert eta == pytest.approx(math.sqrt((math.sqrt(5) - 1) / (math.sqrt(5) + 1)), abs=1e-8)
    assert trace.fitted_rate_s <= eta + 0.05


def test_real_start_matches_classical_method():
    for seed in range(10):
        A = generate_primitive(3 + seed, 0.5, "zero", 40 + seed)
        trace = collatz_solve(A)
        assert not trace.lower[:, 1].any() and not trace.upper[:, 1].any()
        assert not trace.iterates_d.any()
        assert trace.final_lambda.d == 0.0
        lows, highs = classical_collatz(A.s, np.ones(A.n), trace.iterations)
        np.testing.assert_allclose(trace.lower[:, 0], lows, rtol=0, atol=1e-12)
        np.testing.assert_allclose(trace.upper[:, 0], highs, rtol=0, atol=1e-12)


def test_trace_invariants_on_random_matrices():
    for i in range(40):
        A = generate_primitive(2 + i % 15, (0.3, 0.7, 1.0)[i % 3], "signed", 600 + i)
        trace = collatz_solve(A)
        lam = perron_eigenpair(A).lam
        assert trace.converged
        for k in range(trace.iterations):
            lo, hi = trace.lower[k], trace.upper[k]
            assert not order_violation(lo, hi, 1e-12)
            assert not order_violation(lo, (lam.s, lam.d), 1e-10)
            assert not order_violation((lam.s, lam.d), hi, 1e-10)
            if k:
                # standard parts: the classical monotone chain
                assert trace.lower[k - 1, 0] - lo[0] <= 1e-12
                assert hi[0] - trace.upper[k - 1, 0] <= 1e-12
        assert np.all(trace.iterates_s > 0)
        np.testing.assert_allclose(np.linalg.norm(trace.iterates_s, axis=1), 1.0, atol=1e-12)
        assert np.max(np.abs(np.einsum("ij,ij->i", trace.iterates_s, trace.iterates_d))) <= 1e-10


def exact_brackets(S, D, steps):
    """Brackets in exact rational dual arithmetic from x0 = (1, ..., 1).

    Ratios are invariant under scaling x by a dual number, so the iterate is
    left unnormalised.
    """
    n = len(S)
    xs, xd = [Fraction(1)] * n, [Fraction(0)] * n
    out = []
    for _ in range(steps):
        ys = [sum(Fraction(S[i][j]) * xs[j] for j in range(n)) for i in range(n)]
        yd = [sum(Fraction(S[i][j]) * xd[j] + Fraction(D[i][j]) * xs[j] for j in range(n)) for i in range(n)]
        ratios = [(ys[i] / xs[i], yd[i] / xs[i] - ys[i] * xd[i] / xs[i] ** 2) for i in range(n)]
        out.append((min(ratios), max(ratios)))
        xs, xd = ys, yd
    return out


def test_dual_chain_breaks_at_exact_standard_ties():
    # Row 2 of A_s has a single entry, so its standard ratio at step k+1 equals
    # row 1's at step k exactly. The dual parts then decide, and here the upper
    # bracket moves up: 2 + 1 eps, then 2 + 2 eps.
    S, D = FIB, [[1, 0], [0, -1]]
    exact = exact_brackets(S, D, 3)
    assert exact[0][1] == (2, 1)
    assert exact[1][1] == (2, 2)
    trace = collatz_solve(DualMatrix(S, D), [1, 1])
    assert trace.upper[0, 0] == trace.upper[1, 0] == 2.0
    assert trace.upper[1, 1] > trace.upper[0, 1]
    assert order_violation(trace.upper[1], trace.upper[0], 1e-12)
    # the standard chain and the enclosure of lambda are unaffected
    lam = perron_eigenpair(DualMatrix(S, D)).lam
    assert np.all(np.diff(trace.upper[:, 0]) <= 1e-12)
    assert all(not order_violation((lam.s, lam.d), trace.upper[k], 1e-10) for k in range(trace.iterations))


def test_dual_chain_holds_where_standard_parts_separate():
    for i in range(40):
        A = generate_primitive(2 + i % 15, (0.3, 0.7, 1.0)[i % 3], "signed", 600 + i)
        trace = collatz_solve(A)
        for k in range(1, trace.iterations):
            if trace.lower[k, 0] != trace.lower[k - 1, 0]:
                assert not order_violation(trace.lower[k - 1], trace.lower[k], 1e-12)
            if trace.upper[k, 0] != trace.upper[k - 1, 0]:
                assert not order_violation(trace.upper[k], trace.upper[k - 1], 1e-12)


def test_records_view():
    trace = collatz_solve(DualMatrix(FIB, [[0, 1], [1, 0]]))
    recs = trace.records()
    assert len(recs) == len(trace) == trace.iterations
    r = trace.record(0)
    assert r.gap == DualNumber(*(trace.upper[0] - trace.lower[0]))
    assert isinstance(r.iterate, DualVector)


def test_max_iter_reached():
    trace = collatz_solve(generate_primitive(10, 0.3, "signed", 1), cfg=SolverConfig(max_iter=2))
    assert not trace.converged


def test_start_vector_scaling_is_irrelevant():
    A = generate_primitive(6, 0.5, "signed", 2)
    a = collatz_solve(A, np.ones(6))
    b = collatz_solve(A, 1000 * np.ones(6))
    np.testing.assert_allclose(a.lower, b.lower, atol=1e-13)


def test_errors():
    A = DualMatrix(HALF, O2)
    with pytest.raises(NotPrimitiveError):
        collatz_solve(DualMatrix([[0, 1], [1, 0]], O2))
    with pytest.raises(PreconditionError):
        collatz_solve(A, [1, 0])
    with pytest.raises(PreconditionError):
        collatz_solve(A, [1, 1, 1])
    with pytest.raises(PreconditionError):
        collatz_solve(A, [1, 1], x0_dual=[0.1, 0])


def test_dual_start_opt_in():
    A = DualMatrix(FIB, [[0, 1], [1, 0]])
    trace = collatz_solve(A, [1, 2], x0_dual=[0.3, -0.2], allow_dual_start=True)
    ref = perron_eigenpair(A).lam
    assert trace.converged
    assert abs(trace.final_lambda.s - ref.s) <= 1e-8
    assert abs(trace.final_lambda.d - ref.d) <= 1e-8


def test_bracket_step_examples():
    lo, hi = bracket_step(DualMatrix(FIB, O2), DualVector([1, 1], [0, 0]))
    assert lo == DualNumber(1, 0) and hi == DualNumber(2, 0)
    # equal standard ratios, dual parts decide
    lo, hi = bracket_step(DualMatrix(np.eye(2), [[1, 0], [0, -1]]), DualVector([1, 1], [0, 0]))
    assert lo == DualNumber(1, -1) and hi == DualNumber(1, 1)
    A = DualMatrix(HALF, [[1, 0], [0, 0]])
    res = perron_eigenpair(A)
    lo, hi = bracket_step(A, res.x)
    assert abs(lo.s - hi.s) <= 1e-12 and abs(lo.d - hi.d) <= 1e-12
    with pytest.raises(NonAppreciableError):
        bracket_step(A, DualVector([1, 0], [0, 1]))


def test_order_violation():
    assert not order_violation(DualNumber(1, 5), DualNumber(1.5, -9), 0)
    assert order_violation(DualNumber(1, 5), DualNumber(1, 4), 1e-12)
    assert not order_violation((1 + 1e-13, 0), (1, 0), 1e-12)
    assert order_violation((2, 0), (1, 0), 1e-12)


def test_estimate_rate_synthetic():
    k = np.arange(30)
    gaps = np.column_stack([0.5**k, 0.25**k])
    rs, rd = estimate_rate(gaps, 15)
    assert rs == pytest.approx(0.5, abs=1e-6)
    assert rd == pytest.approx(0.25, abs=1e-6)
    rs, rd = estimate_rate(np.full((20, 2), 3.0), 15)
    assert rs == pytest.approx(1.0, abs=1e-12) and rd == pytest.approx(1.0, abs=1e-12)
    # underflowed entries are skipped; an all-zero column has no rate
    rs, rd = estimate_rate(np.column_stack([0.5**k, np.zeros(30)]), 15)
    assert rs == pytest.approx(0.5, abs=1e-6) and math.isnan(rd)


def test_estimate_rate_errors():
    with pytest.raises(InsufficientDataError):
        estimate_rate(np.ones((5, 2)), 15)
    with pytest.raises(ValueError):
        estimate_rate(np.ones((5, 2)), 1)


def test_estimate_rate_accepts_trace():
    trace = collatz_solve(generate_primitive(7, 0.5, "signed", 3))
    assert isinstance(trace, CollatzTrace)
    w = min(10, trace.iterations)
    rs, rd = estimate_rate(trace, w)
    assert 0 < rs < 1
