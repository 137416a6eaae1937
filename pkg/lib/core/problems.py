#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file problems.py
@author srkit contributors
@date 2026-10

@brief Random problem instances: jointly sparse signals, per-signal corruptions,
       measurement ensembles, online schedules and the plain-text instance dump.

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

import os

from dataclasses import dataclass

import numpy as np

import lib.core.config as cfg

from lib.core.kaczmarz import RowMatrix
from lib.core.kaczmarz import SupportSet
from lib.core.solvers import OnlineSchedule
from lib.core.common import SRKError
from lib.core.common import IO_ERROR
from lib.core.common import os_makedirs
from lib.core.common import print_info
from lib.core.common import parameter_error
from lib.core.common import dimension_error


GAUSSIAN = 'gaussian'
UNIFORM01 = 'uniform01'

ENSEMBLES = (GAUSSIAN, UNIFORM01)

RANDOM_LAYOUT = 'random'
BLOCK_LAYOUT = 'block'

SUPPORT_LAYOUTS = (RANDOM_LAYOUT, BLOCK_LAYOUT)

INSTANCE_FILES = {
	'matrix':      'matrix.txt',
	'signals':     'signals.txt',
	'measurements': 'measurements.txt',
	'support':     'support.txt',
	'corruptions': 'corruptions.txt'
}


# ----------------------------------------------------------
# ------------------------- Types --------------------------
# ----------------------------------------------------------


@dataclass(frozen=True)
class CorruptionSpec:
	"""
	Number and law of the corrupt entries of every signal.

	means/stds, when given, hold one value per signal and override mean/std.
	"""

	count_min: int = 0
	count_max: int = 0
	mean: float = 0.0
	std: float = 1.0
	means: tuple = None
	stds: tuple = None

	def validate(self, n, k, J=None):
		if self.count_min < 0 or self.count_min > self.count_max:
			raise parameter_error(
				'Corruption counts must satisfy 0 <= min <= max, got {}..{}'.format(self.count_min, self.count_max)
			)
		if self.count_max > n - k:
			raise parameter_error(
				'Up to {} corruptions requested but only {} indices lie off the support'.format(self.count_max, n - k)
			)

		for name, values in (('means', self.means), ('stds', self.stds)):
			if values is not None and J is not None and len(values) != J:
				raise dimension_error('Per-signal corruption {} has {} entries, expected {}'.format(name, len(values), J))

		stds = self.stds if self.stds is not None else (self.std,)
		if any(s < 0 for s in stds):
			raise parameter_error('Corruption standard deviation must be non-negative')

		# A point mass at 0 can never produce a nonzero corruption
		means = self.means if self.means is not None else (self.mean,)
		if self.count_max > 0 and any(s == 0 for s in stds) and any(m == 0 for m in means):
			raise parameter_error('Corruption law N(0, 0) cannot produce nonzero entries')

	def law(self, j):
		mean = self.means[j] if self.means is not None else self.mean
		std = self.stds[j] if self.stds is not None else self.std
		return (float(mean), float(std))

	def describe(self):
		if self.means is not None or self.stds is not None:
			dist = 'per-signal'
		else:
			dist = 'N({:g},{:g})'.format(self.mean, self.std ** 2)
		return 'corruptions={}..{} dist={}'.format(self.count_min, self.count_max, dist)


@dataclass(frozen=True, eq=False)
class ProblemInstance:
	matrix: RowMatrix
	X_true: np.ndarray
	Y: np.ndarray
	joint_support: SupportSet
	corruption_sets: tuple

	@property
	def J(self):
		return self.X_true.shape[1]

	def validate(self, *, rtol=1e-10):
		m, n = self.matrix.m, self.matrix.n
		if self.X_true.shape[0] != n or self.Y.shape != (m, self.J):
			raise dimension_error('Instance shapes are inconsistent')
		if len(self.corruption_sets) != self.J:
			raise dimension_error('Expected one corruption set per signal')

		product = self.matrix.entries @ self.X_true
		scale = max(1.0, float(np.max(np.abs(product))) if product.size else 1.0)
		if np.max(np.abs(product - self.Y), initial=0.0) > rtol * scale:
			raise SRKError('Measurements do not equal matrix times signals')

		S = set(self.joint_support)
		for j, corrupt in enumerate(self.corruption_sets):
			if S.intersection(corrupt):
				raise SRKError('Corruption set of signal {} meets the joint support'.format(j))
			nonzero = set(np.flatnonzero(self.X_true[:, j]).tolist())
			if nonzero != S.union(corrupt):
				raise SRKError('Support of signal {} is not S united with its corruption set'.format(j))

		return True


# ----------------------------------------------------------
# ----------------------- Generators -----------------------
# ----------------------------------------------------------


def gen_joint_support(n, k, rng, *, layout=RANDOM_LAYOUT):
	if not 1 <= k <= n:
		raise parameter_error('Support size k must lie in [1, {}], got {}'.format(n, k))

	if layout == RANDOM_LAYOUT:
		indices = rng.choice(n, size=k, replace=False)
	elif layout == BLOCK_LAYOUT:
		start = int(rng.integers(n - k + 1))
		indices = range(start, start + k)
	else:
		raise parameter_error('Unknown support layout: \'{}\''.format(layout))

	return SupportSet.from_indices(indices, n)


def gen_signals(n, J, support, rng):
	if support.n != n:
		raise dimension_error('Support ambient dimension {} does not match n = {}'.format(support.n, n))
	if J < 1:
		raise parameter_error('Number of signals J must be positive, got {}'.format(J))

	X = np.zeros((n, J))
	rows = support.as_array()
	if rows.size:
		X[rows, :] = _nonzero_normal(rng, 0.0, 1.0, (rows.size, J))
	return X


def add_corruptions(X, support, spec, rng):
	"""Return a corrupted copy of X and the per-signal corruption sets."""
	X = np.array(X, dtype=np.float64, copy=True)
	n, J = X.shape
	spec.validate(n, len(support), J)

	complement = np.flatnonzero(~support.mask())
	corruption_sets = []

	for j in range(J):
		count = int(rng.integers(spec.count_min, spec.count_max + 1))
		chosen = _partial_shuffle(complement, count, rng)
		if count:
			mean, std = spec.law(j)
			X[chosen, j] = _nonzero_normal(rng, mean, std, count)
		corruption_sets.append(SupportSet.from_indices(chosen, n))

	return (X, tuple(corruption_sets))


def gen_matrix(m, n, ensemble, rng):
	if m < 1 or n < 1:
		raise parameter_error('Matrix dimensions must be positive, got {} x {}'.format(m, n))

	if ensemble == GAUSSIAN:
		entries = rng.standard_normal((m, n))
	elif ensemble == UNIFORM01:
		entries = rng.random((m, n))
	else:
		raise parameter_error('Unknown matrix ensemble: \'{}\''.format(ensemble))

	return RowMatrix.from_array(entries)


def gen_online_schedule(J, p_stall, short_range, long_range, rng):
	if J < 1:
		raise parameter_error('Number of signals J must be positive, got {}'.format(J))
	if not 0.0 <= p_stall <= 1.0:
		raise parameter_error('Stall probability must lie in [0, 1], got {}'.format(p_stall))
	for lo, hi in (short_range, long_range):
		if lo < 1 or lo > hi:
			raise parameter_error('Budget range [{}, {}] is empty or not positive'.format(lo, hi))

	budgets = []
	for _ in range(J):
		lo, hi = long_range if rng.random() < p_stall else short_range
		budgets.append(int(rng.integers(lo, hi + 1)))

	return OnlineSchedule.from_budgets(budgets)


def synthesize(matrix, X):
	X = np.asarray(X, dtype=np.float64)
	if X.ndim != 2 or X.shape[0] != matrix.n:
		raise dimension_error('Signals of shape {} do not match a matrix with n = {}'.format(X.shape, matrix.n))

	return matrix.entries @ X


def spectral_corruption(healthy, tumor, *, count_min=1, count_max=3):
	"""
	Per-signal corruption law from healthy/abnormal absorption levels (one per
	signal): the mean is the abnormal level, the standard deviation a quarter of
	its distance to the healthy level.
	"""
	healthy = np.asarray(healthy, dtype=np.float64)
	tumor = np.asarray(tumor, dtype=np.float64)
	if healthy.shape != tumor.shape:
		raise dimension_error('Healthy and abnormal levels must have the same length')

	return CorruptionSpec(
		count_min=count_min,
		count_max=count_max,
		means=tuple(tumor.tolist()),
		stds=tuple((np.abs(tumor - healthy) / 4.0).tolist())
	)


# ----------------------------------------------------------
# ---------------------- Instance dump ---------------------
# ----------------------------------------------------------


def dump_instance(instance, out_dir):
	try:
		os_makedirs(out_dir)

		_write_text_matrix(os.path.join(out_dir, INSTANCE_FILES['matrix']), instance.matrix.entries)
		_write_text_matrix(os.path.join(out_dir, INSTANCE_FILES['signals']), instance.X_true)
		_write_text_matrix(os.path.join(out_dir, INSTANCE_FILES['measurements']), instance.Y)
		_write_text_supports(os.path.join(out_dir, INSTANCE_FILES['support']), [instance.joint_support])
		_write_text_supports(os.path.join(out_dir, INSTANCE_FILES['corruptions']), instance.corruption_sets)
	except OSError as e:
		raise SRKError(
			'Failed to write instance to \'{}\''.format(out_dir),
			errors={'errcode': IO_ERROR, 'initial_error': str(e)}
		)

	print_info('New instance: \'{}\''.format(os.path.abspath(out_dir)))


def read_text_matrix(path):
	with open(path, 'r', encoding='utf-8') as f:
		rows, cols = (int(v) for v in f.readline().split())

	values = np.loadtxt(path, dtype=np.float64, skiprows=1, ndmin=2)
	if values.shape != (rows, cols):
		raise dimension_error('\'{}\' declares {} x {} but holds {} x {}'.format(path, rows, cols, *values.shape))
	return values


def read_text_supports(path):
	with open(path, 'r', encoding='utf-8') as f:
		count, n = (int(v) for v in f.readline().split())
		return [SupportSet.from_indices(f.readline().split(), n) for _ in range(count)]


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def _nonzero_normal(rng, mean, std, size):
	values = rng.normal(mean, std, size)
	zeros = values == 0.0
	while np.any(zeros):
		values[zeros] = rng.normal(mean, std, int(zeros.sum()))
		zeros = values == 0.0
	return values


def _partial_shuffle(pool, count, rng):
	# Fisher-Yates over the first `count` slots only
	pool = pool.copy()
	for i in range(count):
		r = int(rng.integers(i, pool.size))
		pool[i], pool[r] = pool[r], pool[i]
	return np.sort(pool[:count])


def _write_text_matrix(path, values):
	values = np.atleast_2d(values)
	np.savetxt(
		path,
		values,
		fmt='%.{}g'.format(cfg.CSV_PRECISION),
		header='{} {}'.format(*values.shape),
		comments=''
	)


def _write_text_supports(path, supports):
	n = supports[0].n if supports else 0
	with open(path, 'w', encoding='utf-8', newline='\n') as f:
		f.write('{} {}\n'.format(len(supports), n))
		for support in supports:
			f.write(' '.join(str(i) for i in support) + '\n')
