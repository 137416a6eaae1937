#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file solvers.py
@author srkit contributors
@date 2026-10

@brief Sparse Randomized Kaczmarz solvers: single vector (SRK), multiple
       measurement vectors (MMV-SRK) and corrupted/online MMV (cMMV-SRK).

@license
Copyright (C) 2026 srkit contributors

This file is part of srkit.

srkit is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

srkit is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
GNU General Public License for more details.

You should have received a copy of the GNU General Public License
along with srkit.  If not, see <http://www.gnu.org/licenses/>.
@endlicense
"""

"""
Aggarwal, Majumdar - Extension of sparse randomized Kaczmarz algorithm for multiple measurement vectors
	https://arxiv.org/abs/1401.2288
"""

from dataclasses import dataclass, field

import numpy as np

from lib.core.kaczmarz import SupportSet
from lib.core.kaczmarz import NORM_PROPORTIONAL
from lib.core.kaczmarz import SAMPLING_SCHEMES
from lib.core.kaczmarz import hard_threshold_support
from lib.core.kaczmarz import kaczmarz_project
from lib.core.kaczmarz import row_weights
from lib.core.kaczmarz import sample_row_index
from lib.core.kaczmarz import top_k_indices
from lib.core.kaczmarz import weighted_row
from lib.core.kaczmarz import _check_k_hat
from lib.core.common import SRKError
from lib.core.common import DEGENERATE_ROW_ERROR
from lib.core.common import parameter_error
from lib.core.common import dimension_error


# ----------------------------------------------------------
# ------------------------- Types --------------------------
# ----------------------------------------------------------


@dataclass(frozen=True)
class SrkParams:
	k_hat: int
	tau: int
	sampling: str = NORM_PROPORTIONAL

	def validate(self, n):
		_check_k_hat(self.k_hat, n)
		if self.tau < 1:
			raise parameter_error('Projection budget tau must be positive, got {}'.format(self.tau))
		if self.sampling not in SAMPLING_SCHEMES:
			raise parameter_error('Unknown sampling scheme: \'{}\''.format(self.sampling))


@dataclass(frozen=True)
class OnlineSchedule:
	"""Per-signal projection budgets and the cap that normalizes tally votes."""

	budgets: tuple
	tau_max: int

	@classmethod
	def from_budgets(cls, budgets, tau_max=None):
		budgets = tuple(int(b) for b in budgets)
		if not budgets:
			raise parameter_error('Online schedule is empty')
		if any(b < 1 for b in budgets):
			raise parameter_error('Every per-signal budget must be positive')

		if tau_max is None:
			tau_max = max(budgets)
		elif tau_max < max(budgets):
			raise parameter_error(
				'tau_max = {} is smaller than the largest budget {}'.format(tau_max, max(budgets))
			)

		return cls(budgets, int(tau_max))

	@classmethod
	def constant(cls, budget, J):
		return cls.from_budgets([budget] * J)

	def __len__(self):
		return len(self.budgets)

	@property
	def total(self):
		return sum(self.budgets)


@dataclass
class TallyVector:
	values: np.ndarray
	signals_seen: int = 0

	@classmethod
	def zeros(cls, n):
		return cls(np.zeros(n, dtype=np.float64), 0)

	@property
	def n(self):
		return self.values.shape[0]


@dataclass
class SolveTrace:
	samples: list = field(default_factory=list)
	final_estimate: np.ndarray = None
	skipped: int = 0

	def record(self, projection_index, support):
		self.samples.append((int(projection_index), support))

	@property
	def projections(self):
		return [p for p, _ in self.samples]

	@property
	def supports(self):
		return [s for _, s in self.samples]


# ----------------------------------------------------------
# ------------------------- Solvers ------------------------
# ----------------------------------------------------------


def srk(matrix, y, params, rng):
	"""
	Sparse Randomized Kaczmarz on a single measurement vector.

	Starts from the zero iterate and performs exactly params.tau projections; the
	trace holds supp(x^t restricted to k_hat) after every projection.
	"""
	y = np.asarray(y, dtype=np.float64)
	if y.shape != (matrix.m,):
		raise dimension_error('Measurement vector of shape {} does not match m = {}'.format(y.shape, matrix.m))
	params.validate(matrix.n)

	trace = SolveTrace()
	x = np.zeros(matrix.n)

	for t in range(1, params.tau + 1):
		i = sample_row_index(matrix, params.sampling, rng)
		estimate = hard_threshold_support(x, params.k_hat)
		a = weighted_row(matrix.row(i), row_weights(estimate, t, matrix.n))
		x = _project_or_skip(x, a, y[i], trace)
		trace.record(t, hard_threshold_support(x, params.k_hat))

	trace.final_estimate = x
	return (x, trace)


def mmv_srk(matrix, Y, params, rng, *, observer=None):
	"""
	MMV extension of SRK: every outer iteration samples one row and one weight
	vector (support from the row norms of the current iterate) and projects all
	J columns with it. observer(t, i, weights) is called once per outer iteration.
	"""
	Y = _as_measurements(matrix, Y)
	params.validate(matrix.n)
	J = Y.shape[1]

	trace = SolveTrace()
	X = np.zeros((matrix.n, J))

	for t in range(1, params.tau + 1):
		i = sample_row_index(matrix, params.sampling, rng)
		estimate = row_norm_support(X, params.k_hat)
		w = row_weights(estimate, t, matrix.n)
		a = weighted_row(matrix.row(i), w)
		if observer is not None:
			observer(t, i, w.weights)

		a_sq = float(np.dot(a, a))
		if a_sq == 0.0:
			trace.skipped += J
		else:
			X += np.outer(a, (Y[i] - a @ X) / a_sq)

		trace.record(t * J, row_norm_support(X, params.k_hat))

	trace.final_estimate = X
	return (X, trace)


def row_norm_support(X, k_hat):
	X = np.asarray(X, dtype=np.float64)
	if X.ndim != 2:
		raise dimension_error('Signal matrix must be two-dimensional, got shape {}'.format(X.shape))
	_check_k_hat(k_hat, X.shape[0])

	# Squared norms rank identically to norms
	row_sq = np.einsum('ij,ij->i', X, X)
	return SupportSet._trusted(top_k_indices(row_sq, k_hat), X.shape[0])


def cmmv_srk(matrix, Y, k_hat, schedule, rng, *, sampling=NORM_PROPORTIONAL, carry_joint_estimate=True):
	"""
	Sparse Randomized Kaczmarz for corrupted MMV, processing signals in column
	order as they would arrive in a stream.

	Signal j gets schedule.budgets[j] SRK projections from a fresh zero iterate,
	with its own 1/sqrt(t) clock. The support estimate in force at the last
	projection votes tau_j / tau_max into the tally vector, whose top-k_hat
	entries form the joint support estimate. With carry_joint_estimate the
	joint estimate seeds the t = 1 support of the next signal.

	Returns (joint_support, tallies, trace); trace.final_estimate is the n x J
	matrix of per-signal final iterates.
	"""
	Y = _as_measurements(matrix, Y)
	_check_k_hat(k_hat, matrix.n)
	if not isinstance(schedule, OnlineSchedule):
		schedule = OnlineSchedule.from_budgets(schedule)
	if len(schedule) != Y.shape[1]:
		raise dimension_error(
			'Schedule has {} budgets but there are {} signals'.format(len(schedule), Y.shape[1])
		)
	if sampling not in SAMPLING_SCHEMES:
		raise parameter_error('Unknown sampling scheme: \'{}\''.format(sampling))

	n = matrix.n
	tallies = TallyVector.zeros(n)
	trace = SolveTrace()
	X_final = np.zeros((n, Y.shape[1]))

	joint = None
	projections = 0

	for j, tau_j in enumerate(schedule.budgets):
		x = np.zeros(n)
		estimate = None

		for t in range(1, tau_j + 1):
			i = sample_row_index(matrix, sampling, rng)
			if t == 1 and carry_joint_estimate and joint is not None:
				estimate = joint
			else:
				estimate = hard_threshold_support(x, k_hat)
			a = weighted_row(matrix.row(i), row_weights(estimate, t, n))
			x = _project_or_skip(x, a, Y[i, j], trace)

		projections += tau_j
		X_final[:, j] = x

		tallies = tally_update(tallies, estimate, tau_j, schedule.tau_max)
		joint = hard_threshold_support(tallies.values, k_hat)
		trace.record(projections, joint)

	trace.final_estimate = X_final
	return (joint, tallies, trace)


def tally_update(b, estimate, tau_j, tau_max):
	if tau_j > tau_max:
		raise parameter_error('Signal budget {} exceeds tau_max = {}'.format(tau_j, tau_max))
	if tau_j < 1:
		raise parameter_error('Signal budget must be positive, got {}'.format(tau_j))
	if estimate.n != b.n:
		raise dimension_error('Support ambient dimension {} does not match tally length {}'.format(estimate.n, b.n))

	values = b.values.copy()
	values[list(estimate.indices)] += tau_j / tau_max
	return TallyVector(values, b.signals_seen + 1)


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def _project_or_skip(x, a, y_i, trace):
	try:
		return kaczmarz_project(x, a, y_i)
	except SRKError as e:
		if e.errors['errcode'] != DEGENERATE_ROW_ERROR:
			raise
		trace.skipped += 1
		return x


def _as_measurements(matrix, Y):
	Y = np.asarray(Y, dtype=np.float64)
	if Y.ndim != 2 or Y.shape[0] != matrix.m:
		raise dimension_error(
			'Measurements of shape {} do not match a matrix with m = {}'.format(Y.shape, matrix.m)
		)
	if Y.shape[1] < 1:
		raise dimension_error('At least one measurement vector is required')
	return Y
