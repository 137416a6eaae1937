#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file harness.py
@author srkit contributors
@date 2026-10

@brief Monte-Carlo support-recovery experiments: configurations and presets,
       single trials, curve aggregation across trials and CSV emission.

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

import csv
import os

from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

import lib.core.config as cfg

from lib.core.kaczmarz import SAMPLING_SCHEMES
from lib.core.kaczmarz import make_rng
from lib.core.kaczmarz import trial_seed
from lib.core.solvers import SrkParams
from lib.core.solvers import OnlineSchedule
from lib.core.solvers import cmmv_srk
from lib.core.solvers import mmv_srk
from lib.core.problems import CorruptionSpec
from lib.core.problems import ProblemInstance
from lib.core.problems import ENSEMBLES
from lib.core.problems import GAUSSIAN
from lib.core.problems import UNIFORM01
from lib.core.problems import RANDOM_LAYOUT
from lib.core.problems import BLOCK_LAYOUT
from lib.core.problems import SUPPORT_LAYOUTS
from lib.core.problems import add_corruptions
from lib.core.problems import gen_joint_support
from lib.core.problems import gen_matrix
from lib.core.problems import gen_online_schedule
from lib.core.problems import gen_signals
from lib.core.problems import synthesize
from lib.core.common import SRKError
from lib.core.common import IO_ERROR
from lib.core.common import format_real
from lib.core.common import os_makedirs
from lib.core.common import print_info
from lib.core.common import print_progress
from lib.core.common import print_warning
from lib.core.common import parameter_error
from lib.utils.debug import time_it
from lib.utils.debug import time_it_if_debug


MMV = 'mmv'
CMMV = 'cmmv'
BOTH = 'both'

ALGORITHMS = (MMV, CMMV, BOTH)

CSV_HEADER = ('label', 'projection', 'mean', 'std')


# ----------------------------------------------------------
# ------------------------- Types --------------------------
# ----------------------------------------------------------


@dataclass(frozen=True)
class OnlineParams:
	p_stall: float = 0.1
	short_range: tuple = (5, 15)
	long_range: tuple = (95, 100)

	def describe(self):
		return 'online=p{:g}:[{},{}]/[{},{}]'.format(self.p_stall, *self.short_range, *self.long_range)


@dataclass(frozen=True)
class ExperimentConfig:
	m: int
	n: int
	k: int
	k_hat: int
	J: int
	ensemble: str = GAUSSIAN
	corruption: CorruptionSpec = field(default_factory=CorruptionSpec)
	algorithm: str = BOTH
	budget: int = None
	online: OnlineParams = None
	trials: int = cfg.DEFAULT_TRIALS
	seed: int = cfg.DEFAULT_SEED
	sampling: str = cfg.DEFAULT_SAMPLING
	carry_joint_estimate: bool = True
	support_layout: str = RANDOM_LAYOUT

	def validate(self):
		for name in ('m', 'n', 'k', 'J'):
			if getattr(self, name) < 1:
				raise parameter_error('{} must be positive, got {}'.format(name, getattr(self, name)))
		if self.k > self.n:
			raise parameter_error('Support size k = {} exceeds n = {}'.format(self.k, self.n))
		if not 1 <= self.k_hat <= self.n:
			raise parameter_error('k_hat must lie in [1, {}], got {}'.format(self.n, self.k_hat))
		if self.trials < 1:
			raise parameter_error('trials must be positive, got {}'.format(self.trials))
		if self.ensemble not in ENSEMBLES:
			raise parameter_error('Unknown matrix ensemble: \'{}\''.format(self.ensemble))
		if self.algorithm not in ALGORITHMS:
			raise parameter_error('Unknown algorithm: \'{}\''.format(self.algorithm))
		if self.sampling not in SAMPLING_SCHEMES:
			raise parameter_error('Unknown sampling scheme: \'{}\''.format(self.sampling))
		if self.support_layout not in SUPPORT_LAYOUTS:
			raise parameter_error('Unknown support layout: \'{}\''.format(self.support_layout))

		if (self.budget is None) == (self.online is None):
			raise parameter_error('Exactly one of a fixed budget or an online schedule is required')
		if self.budget is not None and self.budget < 1:
			raise parameter_error('budget must be positive, got {}'.format(self.budget))
		if self.online is not None and self.algorithm == MMV:
			raise parameter_error('MMV-SRK cannot run with an online schedule')

		self.corruption.validate(self.n, self.k, self.J)

	def algorithms(self):
		if self.algorithm == BOTH:
			return (CMMV,) if self.online is not None else (MMV, CMMV)
		return (self.algorithm,)

	def describe(self):
		budget = 'budget={}'.format(self.budget) if self.online is None else self.online.describe()
		return 'm={} n={} k={} k_hat={} J={} ensemble={} {} {}'.format(
			self.m, self.n, self.k, self.k_hat, self.J, self.ensemble, self.corruption.describe(), budget
		)


@dataclass
class RecoveryCurve:
	points: list
	trials: int
	label: str
	precision: float = None
	skipped: int = 0

	@property
	def projections(self):
		return np.array([p for p, _, _ in self.points], dtype=np.int64)

	@property
	def means(self):
		return np.array([mu for _, mu, _ in self.points], dtype=np.float64)

	@property
	def stds(self):
		return np.array([sd for _, _, sd in self.points], dtype=np.float64)

	@property
	def final(self):
		if not self.points:
			raise parameter_error('Curve \'{}\' has no samples'.format(self.label))
		return self.points[-1]

	def value_at(self, projection):
		"""Step-interpolated mean at a projection count inside the recorded range."""
		index = int(np.searchsorted(self.projections, projection, side='right')) - 1
		if index < 0:
			raise parameter_error('Projection {} precedes the first sample of \'{}\''.format(projection, self.label))
		return self.points[index][1]


# ----------------------------------------------------------
# ------------------------ Metrics -------------------------
# ----------------------------------------------------------


def support_recovery_fraction(estimate, truth):
	if len(truth) == 0:
		raise parameter_error('Recovery fraction is undefined for an empty true support')
	return estimate.intersection_size(truth) / len(truth)


def support_precision(estimate, truth):
	if len(estimate) == 0:
		raise parameter_error('Precision is undefined for an empty estimate')
	return estimate.intersection_size(truth) / len(estimate)


# ----------------------------------------------------------
# ------------------------- Trials -------------------------
# ----------------------------------------------------------


def make_instance(config, rng):
	matrix = gen_matrix(config.m, config.n, config.ensemble, rng)
	support = gen_joint_support(config.n, config.k, rng, layout=config.support_layout)
	X = gen_signals(config.n, config.J, support, rng)
	X, corruption_sets = add_corruptions(X, support, config.corruption, rng)

	return ProblemInstance(matrix, X, synthesize(matrix, X), support, corruption_sets)


def make_schedule(config, rng):
	if config.online is None:
		return OnlineSchedule.constant(config.budget, config.J)

	online = config.online
	return gen_online_schedule(config.J, online.p_stall, online.short_range, online.long_range, rng)


def run_trial(config, trial_index):
	"""
	Generate one instance from seed + trial_index and run the configured
	algorithm(s) on it. Each returned curve holds that single trial (std = 0).
	"""
	config.validate()
	rng = make_rng(trial_seed(config.seed, trial_index))

	instance = make_instance(config, rng)
	schedule = make_schedule(config, rng)
	truth = instance.joint_support

	curves = []
	for algorithm in config.algorithms():
		# Own stream per algorithm so adding one never shifts the other's draws
		solver_rng = make_rng(trial_seed(config.seed, trial_index) ^ _ALGORITHM_SALT[algorithm])

		if algorithm == MMV:
			params = SrkParams(config.k_hat, config.budget, config.sampling)
			_, trace = mmv_srk(instance.matrix, instance.Y, params, solver_rng)
		else:
			_, _, trace = cmmv_srk(
				instance.matrix,
				instance.Y,
				config.k_hat,
				schedule,
				solver_rng,
				sampling=config.sampling,
				carry_joint_estimate=config.carry_joint_estimate
			)

		points = [(p, support_recovery_fraction(s, truth), 0.0) for p, s in trace.samples]
		curves.append(RecoveryCurve(
			points,
			1,
			algorithm,
			precision=support_precision(trace.samples[-1][1], truth),
			skipped=trace.skipped
		))

	return curves


@time_it_if_debug(cfg.DEBUG, time_it)
def run_experiment(config, *, threads=1):
	"""
	Run config.trials independent trials (fanned out over `threads` worker
	processes) and aggregate them per algorithm into mean/std curves on a common
	projection grid.
	"""
	config.validate()
	if config.online is not None and config.algorithm == BOTH:
		print_warning('MMV-SRK cannot run with an online schedule, running cMMV-SRK only')

	print_info('Running {} trials: {}'.format(config.trials, config.describe()))

	indices = range(config.trials)
	if threads > 1 and config.trials > 1:
		with ProcessPoolExecutor(max_workers=min(threads, config.trials)) as pool:
			results = []
			for trial_index, curves in zip(indices, pool.map(run_trial, [config] * config.trials, indices)):
				print_progress('Trial {}/{} done'.format(trial_index + 1, config.trials))
				results.append(curves)
	else:
		results = []
		for trial_index in indices:
			results.append(run_trial(config, trial_index))
			print_progress('Trial {}/{} done'.format(trial_index + 1, config.trials))

	aggregated = []
	for position, label in enumerate(config.algorithms()):
		curve = aggregate_curves([curves[position] for curves in results], label)
		if curve.skipped:
			print_warning('{}: skipped {} projections on zero rows'.format(label, curve.skipped))
		aggregated.append(curve)

	return aggregated


def aggregate_curves(curves, label):
	"""
	Pointwise mean and (population) standard deviation of single-trial curves,
	step-interpolated onto the union of their sample positions between the
	latest first sample and the earliest last sample.
	"""
	if not curves:
		raise parameter_error('No curves to aggregate')

	if any(not c.points for c in curves):
		raise parameter_error('Cannot aggregate \'{}\': a trial recorded no samples'.format(label))

	start = max(int(c.projections[0]) for c in curves)
	stop = min(int(c.projections[-1]) for c in curves)
	if start > stop:
		raise parameter_error(
			'Cannot aggregate \'{}\': one trial finished after {} projections, before another '
			'completed its first signal at {} (raise J or narrow the online budget ranges)'.format(label, stop, start)
		)

	grid = np.unique(np.concatenate([c.projections for c in curves]))
	grid = grid[(grid >= start) & (grid <= stop)]

	values = np.empty((len(curves), grid.size))
	for row, curve in enumerate(curves):
		positions = np.searchsorted(curve.projections, grid, side='right') - 1
		values[row] = curve.means[positions]

	mean = np.clip(values.mean(axis=0), 0.0, 1.0)
	std = values.std(axis=0)
	points = [(int(p), float(mu), float(sd)) for p, mu, sd in zip(grid, mean, std)]

	precisions = [c.precision for c in curves if c.precision is not None]
	return RecoveryCurve(
		points,
		sum(c.trials for c in curves),
		label,
		precision=float(np.mean(precisions)) if precisions else None,
		skipped=sum(c.skipped for c in curves)
	)


# ----------------------------------------------------------
# ------------------------- Presets ------------------------
# ----------------------------------------------------------


def _overdetermined(**overrides):
	base = ExperimentConfig(m=1000, n=100, k=10, k_hat=15, J=300)
	return replace(base, **overrides)


_ONE_LARGE = CorruptionSpec(count_min=1, count_max=1, mean=7.0, std=1.0)
_ONE_STANDARD = CorruptionSpec(count_min=1, count_max=1, mean=0.0, std=1.0)
_SEVERAL_LARGE = CorruptionSpec(count_min=1, count_max=3, mean=7.0, std=1.0)

PRESETS = OrderedDict([
	('fig1a', _overdetermined(ensemble=GAUSSIAN, corruption=_ONE_LARGE, budget=40, J=300)),
	('fig1b', _overdetermined(ensemble=UNIFORM01, corruption=_ONE_LARGE, budget=80, J=600)),
	('fig2a', _overdetermined(ensemble=GAUSSIAN, corruption=_ONE_STANDARD, budget=40, J=300)),
	('fig2b', _overdetermined(ensemble=UNIFORM01, corruption=_ONE_STANDARD, budget=80, J=600)),
	('fig3',  _overdetermined(ensemble=GAUSSIAN, corruption=_SEVERAL_LARGE, budget=50, J=300)),
	('fig4',  _overdetermined(ensemble=GAUSSIAN, corruption=_SEVERAL_LARGE, online=OnlineParams(), J=800)),
	('fig5',  _overdetermined(ensemble=GAUSSIAN, corruption=_SEVERAL_LARGE, online=OnlineParams(),
                              m=100, n=500, J=1500)),
	# Stand-in for the tomography experiment: Gaussian matrix of the mesh's shape,
	# contiguous support block for the abnormal region
	('fig7',  _overdetermined(ensemble=GAUSSIAN, corruption=_SEVERAL_LARGE, budget=150,
                              m=248, n=541, J=200, support_layout=BLOCK_LAYOUT)),
])


def preset(name):
	try:
		return PRESETS[name]
	except KeyError:
		raise parameter_error('Unknown preset: \'{}\' (options: {})'.format(name, ', '.join(PRESETS)))


# ----------------------------------------------------------
# -------------------------- CSV ---------------------------
# ----------------------------------------------------------


def write_csv(curves, path):
	if not curves:
		raise parameter_error('No curves to write')

	try:
		os_makedirs(os.path.dirname(path))
		with open(path, 'w', encoding='utf-8', newline='') as f:
			writer = csv.writer(f, lineterminator='\n')
			writer.writerow(CSV_HEADER)
			for curve in curves:
				for projection, mean, std in curve.points:
					writer.writerow((curve.label, int(projection), format_real(mean), format_real(std)))
	except OSError as e:
		raise SRKError(
			'Failed to write curves to \'{}\''.format(path),
			errors={'errcode': IO_ERROR, 'initial_error': str(e)}
		)

	print_info('New curve file: \'{}\''.format(os.path.abspath(path)))


def read_csv(path):
	curves = OrderedDict()

	try:
		with open(path, 'r', encoding='utf-8', newline='') as f:
			reader = csv.reader(f)
			header = next(reader, None)
			if tuple(header or ()) != CSV_HEADER:
				raise SRKError('Not a curve file: \'{}\''.format(path), errors={'errcode': IO_ERROR})
			for label, projection, mean, std in reader:
				curves.setdefault(label, []).append((int(projection), float(mean), float(std)))
	except OSError as e:
		raise SRKError(
			'Failed to read curves from \'{}\''.format(path),
			errors={'errcode': IO_ERROR, 'initial_error': str(e)}
		)

	# Trial counts are not part of the file format
	return [RecoveryCurve(points, 0, label) for label, points in curves.items()]


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


_ALGORITHM_SALT = {
	MMV:  0x6d6d76,
	CMMV: 0x636d6d76
}
