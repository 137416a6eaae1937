#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file kaczmarz.py
@author srkit contributors
@date 2026-10

@brief Numeric primitives shared by the solvers: row-access matrix, support sets,
       hard thresholding, SRK row weights, the Kaczmarz projection and row sampling.

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
Strohmer, Vershynin - A randomized Kaczmarz algorithm with exponential convergence
	https://arxiv.org/abs/math/0610053
Mansour, Yilmaz - A sparse randomized Kaczmarz algorithm
	https://doi.org/10.1109/GlobalSIP.2013.6737042
"""

import math

from dataclasses import dataclass, field

import numpy as np

from lib.core.common import SRKError
from lib.core.common import DEGENERATE_ROW_ERROR
from lib.core.common import DEGENERATE_MATRIX_ERROR
from lib.core.common import parameter_error
from lib.core.common import dimension_error


NORM_PROPORTIONAL = 'norm'
UNIFORM = 'uniform'

SAMPLING_SCHEMES = (NORM_PROPORTIONAL, UNIFORM)

_SEED_MASK = (1 << 64) - 1


# ----------------------------------------------------------
# ------------------------ RowMatrix -----------------------
# ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RowMatrix:
	"""
	Dense m x n measurement matrix accessed one row at a time.

	Squared row norms, their prefix sums (the inverse-CDF table of the
	norm-proportional sampler) and the squared Frobenius norm are computed once
	at construction; the entries are frozen afterwards.
	"""

	entries: np.ndarray
	row_sq_norms: np.ndarray = field(repr=False)
	cumulative: np.ndarray = field(repr=False)
	frob_sq: float

	@classmethod
	def from_array(cls, entries):
		entries = np.array(entries, dtype=np.float64, copy=True)
		if entries.ndim != 2:
			raise dimension_error('Measurement matrix must be two-dimensional, got shape {}'.format(entries.shape))
		if entries.shape[0] < 1 or entries.shape[1] < 1:
			raise dimension_error('Measurement matrix must have at least one row and one column')
		if not np.all(np.isfinite(entries)):
			raise parameter_error('Measurement matrix has non-finite entries')

		row_sq_norms = np.einsum('ij,ij->i', entries, entries)
		cumulative = np.cumsum(row_sq_norms)
		for arr in (entries, row_sq_norms, cumulative):
			arr.flags.writeable = False

		return cls(entries, row_sq_norms, cumulative, float(row_sq_norms.sum()))

	@property
	def m(self):
		return self.entries.shape[0]

	@property
	def n(self):
		return self.entries.shape[1]

	def row(self, i):
		return self.entries[i]

	def check_norms(self, *, rtol=1e-12):
		recomputed = np.sum(self.entries ** 2, axis=1)
		return (np.allclose(recomputed, self.row_sq_norms, rtol=rtol, atol=0.0) and
                math.isclose(self.frob_sq, float(self.row_sq_norms.sum()), rel_tol=rtol))


# ----------------------------------------------------------
# ----------------------- SupportSet -----------------------
# ----------------------------------------------------------


@dataclass(frozen=True)
class SupportSet:
	"""Ascending set of column indices in [0, n)."""

	indices: tuple
	n: int

	@classmethod
	def from_indices(cls, indices, n):
		indices = sorted(int(i) for i in indices)
		if any(i < 0 or i >= n for i in indices):
			raise parameter_error('Support indices must lie in [0, {})'.format(n))
		if any(a == b for a, b in zip(indices, indices[1:])):
			raise parameter_error('Support indices must be unique')
		return cls(tuple(indices), int(n))

	@classmethod
	def _trusted(cls, sorted_indices, n):
		return cls(tuple(int(i) for i in sorted_indices), int(n))

	def __len__(self):
		return len(self.indices)

	def __iter__(self):
		return iter(self.indices)

	def __contains__(self, item):
		return item in self.indices

	def as_array(self):
		return np.asarray(self.indices, dtype=np.intp)

	def mask(self):
		mask = np.zeros(self.n, dtype=bool)
		mask[list(self.indices)] = True
		return mask

	def intersection_size(self, other):
		return len(set(self.indices).intersection(other.indices))


# ----------------------------------------------------------
# ---------------------- WeightVector ----------------------
# ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeightVector:
	weights: np.ndarray
	t: int

	def __len__(self):
		return len(self.weights)


# ----------------------------------------------------------
# -------------------------- Rng ---------------------------
# ----------------------------------------------------------


def make_rng(seed):
	return np.random.Generator(np.random.PCG64(int(seed) & _SEED_MASK))


def trial_seed(seed_base, trial_index):
	return (int(seed_base) + int(trial_index)) & _SEED_MASK


# ----------------------------------------------------------
# ----------------------- Operations -----------------------
# ----------------------------------------------------------


def top_k_indices(values, k_hat):
	# Stable sort on -|v| keeps equal magnitudes in ascending index order
	order = np.argsort(-values, kind='stable')
	return np.sort(order[:k_hat])


def hard_threshold_support(x, k_hat):
	x = np.asarray(x, dtype=np.float64)
	n = x.shape[0]
	_check_k_hat(k_hat, n)

	return SupportSet._trusted(top_k_indices(np.abs(x), k_hat), n)


def row_weights(support, t, n):
	if t < 1:
		raise parameter_error('Iteration index t must be positive, got {}'.format(t))
	if support.n != n:
		raise dimension_error('Support ambient dimension {} does not match n = {}'.format(support.n, n))

	weights = np.full(n, 1.0 / math.sqrt(t))
	weights[list(support.indices)] = 1.0
	return WeightVector(weights, int(t))


def weighted_row(row, w):
	row = np.asarray(row, dtype=np.float64)
	weights = w.weights if isinstance(w, WeightVector) else np.asarray(w, dtype=np.float64)
	if row.shape != weights.shape:
		raise parameter_error('Row of length {} does not match weights of length {}'.format(row.shape[0], weights.shape[0]))

	return weights * row


def kaczmarz_project(x, a, y_i):
	"""
	Orthogonal projection of x onto the hyperplane <a, x> = y_i.

	Raises SRKError(DEGENERATE_ROW_ERROR) when <a, a> is 0.0, which includes a
	nonzero row whose squared norm underflows; the solvers catch it and count
	the projection as skipped.
	"""
	a_sq = float(np.dot(a, a))
	if a_sq == 0.0:
		raise SRKError('Degenerate row: weighted row has zero norm', errors={'errcode': DEGENERATE_ROW_ERROR})

	return x + ((y_i - float(np.dot(a, x))) / a_sq) * a


def sample_row_index(matrix, scheme, rng):
	if scheme == UNIFORM:
		return int(rng.integers(matrix.m))

	if scheme != NORM_PROPORTIONAL:
		raise parameter_error('Unknown sampling scheme: \'{}\''.format(scheme))

	if matrix.frob_sq <= 0.0:
		raise SRKError(
			'Degenerate matrix: every row has zero norm',
			errors={'errcode': DEGENERATE_MATRIX_ERROR}
		)

	u = rng.random() * matrix.frob_sq
	i = int(np.searchsorted(matrix.cumulative, u, side='right'))
	if i >= matrix.m:  # u rounded up to frob_sq
		i = int(np.flatnonzero(matrix.row_sq_norms)[-1])
	return i


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def _check_k_hat(k_hat, n):
	if not 1 <= k_hat <= n:
		raise parameter_error('Estimated support size k_hat must lie in [1, {}], got {}'.format(n, k_hat))
