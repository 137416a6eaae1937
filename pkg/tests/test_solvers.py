# -*- coding: UTF-8 -*-

import math

import numpy as np
import pytest

from lib.core.common import SRKError
from lib.core.common import PARAMETER_ERROR
from lib.core.common import DIMENSION_ERROR
from lib.core.kaczmarz import RowMatrix
from lib.core.kaczmarz import SupportSet
from lib.core.kaczmarz import UNIFORM
from lib.core.kaczmarz import hard_threshold_support
from lib.core.kaczmarz import make_rng
from lib.core.solvers import OnlineSchedule
from lib.core.solvers import SrkParams
from lib.core.solvers import TallyVector
from lib.core.solvers import cmmv_srk
from lib.core.solvers import mmv_srk
from lib.core.solvers import row_norm_support
from lib.core.solvers import srk
from lib.core.solvers import tally_update
from lib.core.problems import gen_joint_support
from lib.core.problems import gen_matrix
from lib.core.problems import gen_signals
from lib.core.problems import synthesize


def _sparse_system(seed, m, n, k, J=1):
	rng = make_rng(seed)
	matrix = gen_matrix(m, n, 'gaussian', rng)
	support = gen_joint_support(n, k, rng)
	X = gen_signals(n, J, support, rng)
	return (matrix, X, synthesize(matrix, X), support)


# ----------------------------------------------------------
# --------------------------- SRK --------------------------
# ----------------------------------------------------------


def test_srk_single_projection_lands_on_solution(rng):
	x, trace = srk(RowMatrix.from_array([[2.0]]), [4.0], SrkParams(k_hat=1, tau=1), rng)

	np.testing.assert_allclose(x, [2.0])
	assert trace.projections == [1]


def test_srk_identity_rows(rng):
	matrix = RowMatrix.from_array(np.eye(2))
	x, _ = srk(matrix, [3.0, 5.0], SrkParams(k_hat=2, tau=50), rng)

	assert np.linalg.norm(np.array([3.0, 5.0]) - matrix.entries @ x) < 1e-6
	np.testing.assert_allclose(x, np.linalg.solve(matrix.entries, [3.0, 5.0]), atol=1e-6)


def test_srk_recovers_one_sparse_support():
	hits = 0
	for seed in range(100):
		matrix, X, y, support = _sparse_system(seed, 50, 10, 1)
		x, _ = srk(matrix, y[:, 0], SrkParams(k_hat=2, tau=300), make_rng(10_000 + seed))

		reference = np.linalg.lstsq(matrix.entries, y[:, 0], rcond=None)[0]
		assert hard_threshold_support(reference, 1) == support
		hits += hard_threshold_support(x, 1) == support

	assert hits >= 95


def test_srk_trace_shape(rng):
	matrix, _, y, _ = _sparse_system(3, 40, 12, 3)
	_, trace = srk(matrix, y[:, 0], SrkParams(k_hat=5, tau=60), rng)

	assert trace.projections == list(range(1, 61))
	assert all(len(s) == 5 for s in trace.supports)
	assert trace.skipped == 0


def test_srk_residual_shrinks():
	early, late = [], []
	for seed in range(50):
		matrix, _, y, _ = _sparse_system(500 + seed, 100, 20, 3)
		for tau, bucket in ((50, early), (500, late)):
			x, _ = srk(matrix, y[:, 0], SrkParams(k_hat=5, tau=tau), make_rng(seed))
			bucket.append(np.linalg.norm(y[:, 0] - matrix.entries @ x))

	assert np.median(late) < np.median(early)


def test_srk_dimension_mismatch(rng):
	with pytest.raises(SRKError) as excinfo:
		srk(RowMatrix.from_array(np.eye(3)), [1.0, 2.0], SrkParams(k_hat=1, tau=5), rng)
	assert excinfo.value.errors['errcode'] == DIMENSION_ERROR


def test_srk_invalid_params(rng):
	matrix = RowMatrix.from_array(np.eye(3))
	for params in (SrkParams(k_hat=0, tau=5), SrkParams(k_hat=4, tau=5), SrkParams(k_hat=1, tau=0)):
		with pytest.raises(SRKError) as excinfo:
			srk(matrix, [1.0, 2.0, 3.0], params, rng)
		assert excinfo.value.errors['errcode'] == PARAMETER_ERROR


def test_srk_counts_zero_rows_as_skipped():
	matrix = RowMatrix.from_array([[1.0, 0.0], [0.0, 0.0]])
	x, trace = srk(matrix, [2.0, 0.0], SrkParams(k_hat=1, tau=40, sampling=UNIFORM), make_rng(5))

	assert trace.skipped > 0
	assert trace.projections[-1] == 40
	np.testing.assert_allclose(x, [2.0, 0.0])


# ----------------------------------------------------------
# ------------------------- MMV-SRK ------------------------
# ----------------------------------------------------------


@pytest.mark.parametrize('X, k_hat, expected', [
	([[1.0, 0.0], [0.0, 0.0], [0.0, 2.0]], 1, (2,)),
	(np.zeros((3, 2)), 2, (0, 1)),
	([[3.0, 4.0], [5.0, 0.0], [0.0, 0.0]], 2, (0, 1)),
])
def test_row_norm_support_examples(X, k_hat, expected):
	assert row_norm_support(np.array(X), k_hat).indices == expected


def test_row_norm_support_range():
	with pytest.raises(SRKError):
		row_norm_support(np.zeros((3, 2)), 4)


def test_mmv_single_column_matches_srk():
	matrix, _, y, _ = _sparse_system(11, 60, 15, 3)
	params = SrkParams(k_hat=5, tau=80)

	_, srk_trace = srk(matrix, y[:, 0], params, make_rng(99))
	_, mmv_trace = mmv_srk(matrix, y, params, make_rng(99))

	assert mmv_trace.projections == srk_trace.projections
	assert mmv_trace.supports == srk_trace.supports


def test_mmv_identity_rows(rng):
	matrix = RowMatrix.from_array(np.eye(2))
	Y = np.array([[3.0, 3.0], [5.0, 5.0]])
	X, _ = mmv_srk(matrix, Y, SrkParams(k_hat=2, tau=50), rng)

	np.testing.assert_allclose(X, Y, atol=1e-6)
	assert np.linalg.norm(Y - matrix.entries @ X) < 1e-6


def test_mmv_shares_row_and_weights_across_columns(rng):
	matrix, _, Y, _ = _sparse_system(4, 30, 10, 2, J=6)
	calls = []

	def observer(t, i, weights):
		calls.append((t, i, weights.copy()))

	X, trace = mmv_srk(matrix, Y, SrkParams(k_hat=3, tau=25), rng, observer=observer)

	assert [t for t, _, _ in calls] == list(range(1, 26))
	assert trace.projections == [t * 6 for t in range(1, 26)]
	assert all(len(s) == 3 for s in trace.supports)
	for t, _, weights in calls:
		assert set(weights.tolist()) <= {1.0, 1.0 / math.sqrt(t)}

	# Replay: one row and one weight vector per outer iteration reproduce every column
	replay = np.zeros_like(X)
	for _, i, weights in calls:
		a = weights * matrix.row(i)
		replay += np.outer(a, (Y[i] - a @ replay) / np.dot(a, a))
	np.testing.assert_allclose(replay, X, rtol=1e-12, atol=1e-12)


def test_mmv_dimension_mismatch(rng):
	with pytest.raises(SRKError) as excinfo:
		mmv_srk(RowMatrix.from_array(np.eye(3)), np.zeros((2, 4)), SrkParams(k_hat=1, tau=5), rng)
	assert excinfo.value.errors['errcode'] == DIMENSION_ERROR


# ----------------------------------------------------------
# ------------------------ cMMV-SRK ------------------------
# ----------------------------------------------------------


def test_cmmv_single_signal_votes_once(rng):
	matrix, _, Y, _ = _sparse_system(21, 40, 12, 2)
	joint, tallies, trace = cmmv_srk(matrix, Y, 4, OnlineSchedule.from_budgets([30]), rng)

	voted = np.flatnonzero(tallies.values)
	assert len(voted) == 4
	np.testing.assert_array_equal(tallies.values[voted], 1.0)
	assert joint.indices == tuple(voted)
	assert tallies.signals_seen == 1
	assert trace.projections == [30]


def test_cmmv_tallies_weighted_by_budget(rng):
	matrix, _, Y, _ = _sparse_system(22, 40, 12, 2, J=2)
	_, tallies, _ = cmmv_srk(matrix, Y, 4, OnlineSchedule.from_budgets([40, 20]), rng)

	assert set(np.round(tallies.values, 12).tolist()) <= {0.0, 0.5, 1.0, 1.5}
	assert tallies.values.sum() == pytest.approx(4 * 1.5)


def test_cmmv_tally_mass_and_bound():
	matrix, _, Y, _ = _sparse_system(23, 50, 20, 3, J=30)
	budgets = make_rng(1).integers(1, 25, size=30)
	schedule = OnlineSchedule.from_budgets(budgets)

	_, tallies, trace = cmmv_srk(matrix, Y, 6, schedule, make_rng(2))

	votes = schedule.total / schedule.tau_max
	assert tallies.values.sum() == pytest.approx(6 * votes, rel=1e-12)
	assert tallies.values.max() <= votes + 1e-12
	assert trace.projections == np.cumsum(budgets).tolist()
	assert all(len(s) == 6 for s in trace.supports)
	assert trace.final_estimate.shape == (20, 30)


def test_cmmv_starts_each_signal_from_zero(rng):
	# Identity rows with k_hat = n make every weight 1, so each signal solves exactly
	matrix = RowMatrix.from_array(np.eye(3))
	Y = np.array([[1.0, 4.0], [2.0, 5.0], [3.0, 6.0]])
	_, _, trace = cmmv_srk(matrix, Y, 3, OnlineSchedule.from_budgets([60, 60]), rng)

	np.testing.assert_allclose(trace.final_estimate, Y, atol=1e-12)


def test_cmmv_carry_joint_estimate():
	matrix, _, Y, _ = _sparse_system(24, 40, 12, 2, J=3)
	schedule = OnlineSchedule.from_budgets([50, 1, 1])

	joint_on, carried, _ = cmmv_srk(matrix, Y, 4, schedule, make_rng(3), carry_joint_estimate=True)
	_, literal, _ = cmmv_srk(matrix, Y, 4, schedule, make_rng(3), carry_joint_estimate=False)

	first = literal.values.copy()
	first[:4] -= 2 / 50
	assert np.all(first >= -1e-12)
	first_vote = np.flatnonzero(first > 0.5)

	# Carried: the short signals re-vote the first signal's estimate
	np.testing.assert_allclose(carried.values[first_vote], 1 + 2 / 50)
	assert joint_on.indices == tuple(first_vote)
	# Literal: thresholding a zero iterate votes {0, ..., k_hat - 1}
	np.testing.assert_allclose(first.sum(), 4.0)


def test_cmmv_deterministic():
	matrix, _, Y, _ = _sparse_system(25, 50, 15, 3, J=8)
	schedule = OnlineSchedule.constant(20, 8)

	first = cmmv_srk(matrix, Y, 5, schedule, make_rng(17))
	second = cmmv_srk(matrix, Y, 5, schedule, make_rng(17))

	assert first[0] == second[0]
	np.testing.assert_array_equal(first[1].values, second[1].values)
	assert first[2].samples == second[2].samples
	np.testing.assert_array_equal(first[2].final_estimate, second[2].final_estimate)


def test_srk_and_mmv_deterministic():
	matrix, _, Y, _ = _sparse_system(26, 50, 15, 3, J=4)
	params = SrkParams(k_hat=5, tau=40)

	x1, t1 = srk(matrix, Y[:, 0], params, make_rng(5))
	x2, t2 = srk(matrix, Y[:, 0], params, make_rng(5))
	assert t1.samples == t2.samples
	np.testing.assert_array_equal(x1, x2)

	X1, m1 = mmv_srk(matrix, Y, params, make_rng(6))
	X2, m2 = mmv_srk(matrix, Y, params, make_rng(6))
	assert m1.samples == m2.samples
	np.testing.assert_array_equal(X1, X2)


def test_cmmv_schedule_errors(rng):
	matrix, _, Y, _ = _sparse_system(27, 20, 8, 2, J=3)

	with pytest.raises(SRKError) as excinfo:
		cmmv_srk(matrix, Y, 3, OnlineSchedule.from_budgets([5, 5]), rng)
	assert excinfo.value.errors['errcode'] == DIMENSION_ERROR

	with pytest.raises(SRKError) as excinfo:
		cmmv_srk(matrix, Y, 3, [], rng)
	assert excinfo.value.errors['errcode'] == PARAMETER_ERROR

	with pytest.raises(SRKError):
		cmmv_srk(matrix, Y, 9, [5, 5, 5], rng)


def test_online_schedule_cap():
	assert OnlineSchedule.from_budgets([3, 9, 4]).tau_max == 9
	assert OnlineSchedule.from_budgets([3, 9, 4], tau_max=12).tau_max == 12

	with pytest.raises(SRKError):
		OnlineSchedule.from_budgets([3, 9, 4], tau_max=8)
	with pytest.raises(SRKError):
		OnlineSchedule.from_budgets([3, 0])


def test_cmmv_tiny_scale_matches_least_squares_support():
	hits = 0
	for seed in range(20):
		matrix, X, Y, support = _sparse_system(300 + seed, 30, 8, 2, J=20)
		joint, _, _ = cmmv_srk(matrix, Y, 3, OnlineSchedule.constant(200, 20), make_rng(seed))

		exact = np.linalg.lstsq(matrix.entries, Y, rcond=None)[0]
		oracle = {int(i) for i in np.flatnonzero(np.any(np.abs(exact) > 1e-8, axis=1))}

		hits += oracle == set(support) and oracle <= set(joint)

	assert hits >= 19


# ----------------------------------------------------------
# ------------------------- Tallies ------------------------
# ----------------------------------------------------------


def test_tally_update_examples():
	b = tally_update(TallyVector.zeros(6), SupportSet.from_indices([2, 5], 6), 10, 10)
	np.testing.assert_array_equal(b.values, [0, 0, 1, 0, 0, 1])
	assert b.signals_seen == 1

	b = tally_update(TallyVector(np.array([1.0, 0.0]), 1), SupportSet.from_indices([0], 2), 5, 10)
	np.testing.assert_array_equal(b.values, [1.5, 0.0])
	assert b.signals_seen == 2


def test_tally_update_accumulates():
	b = TallyVector.zeros(5)
	estimate = SupportSet.from_indices([1, 3], 5)
	for _ in range(40):
		b = tally_update(b, estimate, 7, 7)

	assert b.values[3] == 40.0
	assert b.signals_seen == 40


def test_tally_update_rejects_budget_over_cap():
	with pytest.raises(SRKError) as excinfo:
		tally_update(TallyVector.zeros(3), SupportSet.from_indices([0], 3), 11, 10)
	assert excinfo.value.errors['errcode'] == PARAMETER_ERROR
