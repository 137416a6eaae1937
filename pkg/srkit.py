#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file srkit.py
@author srkit contributors
@date 2026-10

@brief srkit project's driver program.

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
import sys

from dataclasses import replace

import lib.core.config as cfg
cfg.DEBUG = '--debug' in sys.argv

import lib.utils.timing as timing

from terminaltables import AsciiTable, SingleTable
from termcolor import colored

from lib.core.common import BANNER
from lib.core.common import SRKError
from lib.core.common import print_critical
from lib.core.harness import ALGORITHMS
from lib.core.harness import PRESETS
from lib.core.harness import ExperimentConfig
from lib.core.harness import OnlineParams
from lib.core.harness import make_instance
from lib.core.harness import run_experiment
from lib.core.harness import write_csv
from lib.core.kaczmarz import SAMPLING_SCHEMES
from lib.core.kaczmarz import make_rng
from lib.core.kaczmarz import trial_seed
from lib.core.problems import CorruptionSpec
from lib.core.problems import ENSEMBLES
from lib.core.problems import GAUSSIAN
from lib.core.problems import RANDOM_LAYOUT
from lib.core.problems import SUPPORT_LAYOUTS
from lib.core.problems import dump_instance
from lib.parse.cliopts import cmd_line_options


# ----------------------------------------------------------
# -------------------------- Main --------------------------
# ----------------------------------------------------------


def main(argv=None):
	argv = sys.argv[1:] if argv is None else argv
	if not argv:
		print(BANNER + '\n')
		srkit_arg_error()

	parser = cmd_line_options()
	args = parser.parse_args(argv)

	cfg.QUIET = bool(getattr(args, 'quiet', False))
	cfg.VERBOSE = bool(getattr(args, 'verbose', False))
	if not cfg.QUIET and args.subparser != 'list-presets':
		print(BANNER + '\n')

	# ----------------------------------------------------------
	# -------------------------- Run ---------------------------
	# ----------------------------------------------------------

	if args.subparser == 'run':
		config = validate_run_args(args)
		timing.begin()
		return cmd_run(config, args.out, threads=args.threads)

	# ----------------------------------------------------------
	# ---------------------- List Presets ----------------------
	# ----------------------------------------------------------

	elif args.subparser == 'list-presets':
		return cmd_list_presets()

	# ----------------------------------------------------------
	# ---------------------- Gen Instance ----------------------
	# ----------------------------------------------------------

	elif args.subparser == 'gen-instance':
		config = validate_gen_instance_args(args)
		timing.begin()
		return cmd_gen_instance(config, args.out_dir)

	else:
		srkit_arg_error('Choose one of the srkit actions: run, list-presets, gen-instance')


# ----------------------------------------------------------
# ----------------------- Subcommands ----------------------
# ----------------------------------------------------------


def cmd_run(config, out, *, threads=1):
	try:
		curves = run_experiment(config, threads=threads)
		write_csv(curves, out)
	except SRKError as e:
		print_critical(str(e), errcode=e.errors['errcode'], initial_error=e.errors['initial_error'])
		srkit_internal_error()

	for curve in curves:
		projection, mean, std = curve.final
		print('{}: final recovery {:.4f} +/- {:.4f} after {} projections ({} trials)'.format(
			curve.label, mean, std, projection, curve.trials
		))

	if cfg.VERBOSE:
		_print_summary_table(curves)

	return 0


def cmd_list_presets():
	for name, config in PRESETS.items():
		label = colored(name, 'yellow', attrs=['bold']) if cfg.ISATTY else name
		print('{}  {}'.format(label, config.describe()))

	return 0


def cmd_gen_instance(config, out_dir):
	rng = make_rng(trial_seed(config.seed, 0))

	try:
		instance = make_instance(config, rng)
		instance.validate()
		dump_instance(instance, out_dir)
	except SRKError as e:
		print_critical(str(e), errcode=e.errors['errcode'], initial_error=e.errors['initial_error'])
		srkit_internal_error()

	return 0


# ----------------------------------------------------------
# ------------------ Argument validation -------------------
# ----------------------------------------------------------

# -------------------------- Run ---------------------------


def validate_run_args(args):
	base = _validate_preset_args(args)
	config = _validate_instance_args(args, base)
	config = _validate_budget_args(args, base, config)
	config = _validate_solver_args(args, base, config)
	_validate_io_args(args)

	if args.threads < 1:
		srkit_arg_error('--threads: must be at least 1, got {}'.format(args.threads))

	try:
		config.validate()
	except SRKError as e:
		srkit_arg_error(str(e))

	return config


# ---------------------- Gen Instance ----------------------


def validate_gen_instance_args(args):
	base = _validate_preset_args(args)
	config = _validate_instance_args(args, base, require_k_hat=False)

	if os.path.isfile(args.out_dir):
		srkit_arg_error('--out-dir: {}: Path exists and it is not a directory'.format(args.out_dir))

	return config


# ----------------------------------------------------------
# ---------------- Error Message Generators ----------------
# ----------------------------------------------------------


def srkit_arg_error(message=None):
	prog = sys.argv[0].rsplit('/', 1)[-1]
	if message:
		print('usage: python3 {} [-h]\n'.format(prog), file=sys.stderr)
		print(prog + ': argument error: ' + message, file=sys.stderr)
	else:
		print('usage: python3 {} [-h]'.format(prog), file=sys.stderr)

	sys.exit(2)


def srkit_internal_error():
	print(sys.argv[0].rsplit('/', 1)[-1] + ': Internal error occured', file=sys.stderr)
	sys.exit(1)


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def _validate_preset_args(args):
	if args.preset is None:
		return None

	if args.preset not in PRESETS:
		srkit_arg_error('--preset: {}: Unknown preset (options: {})'.format(args.preset, ', '.join(PRESETS)))

	return PRESETS[args.preset]


def _validate_instance_args(args, base, *, require_k_hat=True):
	dims = {}
	for flag, attr, field_name in (('--m', 'm', 'm'),
                                   ('--n', 'n', 'n'),
                                   ('--k', 'k', 'k'),
                                   ('--k-hat', 'k_hat', 'k_hat'),
                                   ('--j', 'j', 'J')):
		value = _pick(args, attr, base, field_name)
		if value is None and field_name == 'k_hat' and not require_k_hat:
			# Instances never use k_hat
			value = _pick(args, 'k', base, 'k')
		if value is None:
			srkit_arg_error('{}: required unless --preset is given'.format(flag))
		if value < 1:
			srkit_arg_error('{}: must be positive, got {}'.format(flag, value))
		dims[field_name] = value

	if dims['k'] > dims['n']:
		srkit_arg_error('--k: {} exceeds --n {}'.format(dims['k'], dims['n']))
	if dims['k_hat'] > dims['n']:
		srkit_arg_error('--k-hat: {} exceeds --n {}'.format(dims['k_hat'], dims['n']))

	ensemble = _pick(args, 'ensemble', base, 'ensemble', GAUSSIAN)
	if ensemble not in ENSEMBLES:
		srkit_arg_error('--ensemble: {}: Invalid ensemble (options: {})'.format(ensemble, ', '.join(ENSEMBLES)))

	layout = _pick(args, 'support_layout', base, 'support_layout', RANDOM_LAYOUT)
	if layout not in SUPPORT_LAYOUTS:
		srkit_arg_error('--support-layout: {}: Invalid layout (options: {})'.format(layout, ', '.join(SUPPORT_LAYOUTS)))

	seed = args.seed if args.seed is not None else (base.seed if base else cfg.DEFAULT_SEED)
	if seed < 0:
		srkit_arg_error('--seed: must be non-negative, got {}'.format(seed))

	corruption = _validate_corruption_args(args, base, dims['n'], dims['k'])

	if base is not None:
		return replace(base, ensemble=ensemble, corruption=corruption, seed=seed, support_layout=layout, **dims)

	return ExperimentConfig(ensemble=ensemble, corruption=corruption, seed=seed, support_layout=layout, **dims)


def _validate_corruption_args(args, base, n, k):
	spec = base.corruption if base is not None else None

	values = {}
	for flag, attr in (('--corrupt-count-min', 'count_min'),
                       ('--corrupt-count-max', 'count_max'),
                       ('--corrupt-mean', 'mean'),
                       ('--corrupt-std', 'std')):
		value = getattr(args, 'corrupt_' + attr)
		if value is None and spec is not None:
			value = getattr(spec, attr)
		if value is None:
			srkit_arg_error('{}: required unless --preset is given'.format(flag))
		values[attr] = value

	if values['count_min'] < 0:
		srkit_arg_error('--corrupt-count-min: must be non-negative, got {}'.format(values['count_min']))
	if values['count_max'] < values['count_min']:
		srkit_arg_error('--corrupt-count-max: {} is below --corrupt-count-min {}'.format(values['count_max'], values['count_min']))
	if values['count_max'] > n - k:
		srkit_arg_error('--corrupt-count-max: {} exceeds n - k = {}'.format(values['count_max'], n - k))
	if values['std'] < 0:
		srkit_arg_error('--corrupt-std: must be non-negative, got {}'.format(values['std']))
	if values['count_max'] > 0 and values['std'] == 0 and values['mean'] == 0:
		srkit_arg_error('--corrupt-std: N(0, 0) corruptions would all be zero')

	return CorruptionSpec(**values)


def _validate_budget_args(args, base, config):
	if args.budget is not None:
		if args.budget < 1:
			srkit_arg_error('--budget: must be positive, got {}'.format(args.budget))
		return replace(config, budget=args.budget, online=None)

	if args.online is not None:
		return replace(config, budget=None, online=_parse_online(args.online))

	if base is None:
		srkit_arg_error('--budget: one of --budget or --online is required unless --preset is given')

	return config


def _validate_solver_args(args, base, config):
	algorithm = _pick(args, 'algorithm', base, 'algorithm', config.algorithm)
	if algorithm not in ALGORITHMS:
		srkit_arg_error('--algorithm: {}: Invalid algorithm (options: {})'.format(algorithm, ', '.join(ALGORITHMS)))
	if algorithm == 'mmv' and config.online is not None:
		srkit_arg_error('--algorithm: mmv cannot run with an --online schedule')

	sampling = _pick(args, 'sampling', base, 'sampling', config.sampling)
	if sampling not in SAMPLING_SCHEMES:
		srkit_arg_error('--sampling: {}: Invalid scheme (options: {})'.format(sampling, ', '.join(SAMPLING_SCHEMES)))

	trials = args.trials if args.trials is not None else config.trials
	if trials < 1:
		srkit_arg_error('--trials: must be at least 1, got {}'.format(trials))

	return replace(
		config,
		algorithm=algorithm,
		sampling=sampling,
		trials=trials,
		carry_joint_estimate=config.carry_joint_estimate and not args.no_carry
	)


def _validate_io_args(args):
	if os.path.isdir(args.out):
		srkit_arg_error('--out: {}: Path is a directory'.format(args.out))


def _parse_online(value):
	try:
		p, lo1, hi1, lo2, hi2 = value.split(',')
		online = OnlineParams(float(p), (int(lo1), int(hi1)), (int(lo2), int(hi2)))
	except ValueError:
		srkit_arg_error('--online: {}: Expected \'p,lo1,hi1,lo2,hi2\''.format(value))

	if not 0.0 <= online.p_stall <= 1.0:
		srkit_arg_error('--online: stall probability must lie in [0, 1], got {}'.format(online.p_stall))
	for lo, hi in (online.short_range, online.long_range):
		if lo < 1 or lo > hi:
			srkit_arg_error('--online: budget range [{}, {}] is empty or not positive'.format(lo, hi))

	return online


def _pick(args, attr, base, field_name, default=None):
	value = getattr(args, attr, None)
	if value is None and base is not None:
		value = getattr(base, field_name)
	return default if value is None else value


def _print_summary_table(curves):
	TableClass = SingleTable if cfg.ISATTY else AsciiTable

	table_data = [['Curve', 'Trials', 'Projections', 'Final mean', 'Std', 'Precision', 'Skipped']]
	for curve in curves:
		projection, mean, std = curve.final
		precision = '{:.4f}'.format(curve.precision) if curve.precision is not None else '-'
		table_data.append([
			curve.label,
			str(curve.trials),
			str(projection),
			'{:.4f}'.format(mean),
			'{:.4f}'.format(std),
			precision,
			str(curve.skipped)
		])

	table = TableClass(table_data)
	table.title = 'Support-Recovery'
	for i in range(1, len(table_data[0])):
		table.justify_columns[i] = 'right'

	print('\n' + table.table)


# ----------------------------------------------------------
# ------------------------- Start --------------------------
# ----------------------------------------------------------


if __name__ == '__main__':
	sys.exit(main())
