#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file cliopts.py
@author srkit contributors
@date 2026-10

@brief Command line options parser.

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

from argparse import ArgumentParser

import lib.core.config as cfg

from lib.core.harness import ALGORITHMS
from lib.core.harness import PRESETS
from lib.core.problems import ENSEMBLES
from lib.core.problems import SUPPORT_LAYOUTS


def cmd_line_options():
    parser = ArgumentParser(prog='srkit')
    subparsers = parser.add_subparsers(dest='subparser')

    # ----------------------------------------------------------
    # -------------------------- Run ---------------------------
    # ----------------------------------------------------------

    build_run_parser(subparsers)

    # ----------------------------------------------------------
    # ---------------------- List Presets ----------------------
    # ----------------------------------------------------------

    build_list_presets_parser(subparsers)

    # ----------------------------------------------------------
    # ---------------------- Gen Instance ----------------------
    # ----------------------------------------------------------

    build_gen_instance_parser(subparsers)

    return parser


# ----------------------------------------------------------
# -------------------------- Run ---------------------------
# ----------------------------------------------------------


def build_run_parser(subparsers):
    run_parser = subparsers.add_parser(
        'run',
        help='run a Monte-Carlo support recovery experiment and write its curves (CSV)'
    )

    run_parser.add_argument(
        '--preset',
        type=str,
        default=None,
        help='start from a preset configuration (options: {}); '
             'any other flag given overrides the preset'
             .format(', '.join('\'{}\''.format(name) for name in PRESETS))
    )

    run_parser.add_argument(
        '--algorithm',
        type=str,
        default=None,
        help='algorithm(s) to run (options: {}; default is \'both\')'
             .format(', '.join('\'{}\''.format(name) for name in ALGORITHMS))
    )

    run_parser.add_argument(
        '--trials',
        type=int,
        default=None,
        help='number of trials (default is {})'.format(cfg.DEFAULT_TRIALS)
    )

    run_parser.add_argument(
        '--threads',
        type=int,
        default=cfg.DEFAULT_THREADS,
        help='maximum number of trials run in parallel (default is {})'.format(cfg.DEFAULT_THREADS)
    )

    run_parser.add_argument(
        '-o',
        '--out',
        type=str,
        required=True,
        help='output path for the recovery curves (CSV)'
    )

    run_parser.add_argument(
        '-v',
        '--verbose',
        action='store_true',
        help='print a summary table with support precision and skipped projections'
    )

    _parse_debug_args(run_parser)
    _parse_quiet_args(run_parser)
    _parse_seed_args(run_parser)
    _parse_dimension_args(run_parser)
    _parse_corruption_args(run_parser)
    _parse_budget_args(run_parser)
    _parse_solver_args(run_parser)


# ----------------------------------------------------------
# ---------------------- List Presets ----------------------
# ----------------------------------------------------------


def build_list_presets_parser(subparsers):
    list_parser = subparsers.add_parser(
        'list-presets',
        help='list preset experiment configurations'
    )

    _parse_debug_args(list_parser)
    _parse_quiet_args(list_parser)


# ----------------------------------------------------------
# ---------------------- Gen Instance ----------------------
# ----------------------------------------------------------


def build_gen_instance_parser(subparsers):
    gen_parser = subparsers.add_parser(
        'gen-instance',
        help='dump one random problem instance as plain-text files'
    )

    gen_parser.add_argument(
        '--preset',
        type=str,
        default=None,
        help='take dimensions and corruption law from a preset'
    )

    gen_parser.add_argument(
        '--out-dir',
        type=str,
        required=True,
        help='output directory for matrix, signals, measurements, support and corruption files'
    )

    _parse_debug_args(gen_parser)
    _parse_quiet_args(gen_parser)
    _parse_seed_args(gen_parser)
    _parse_dimension_args(gen_parser)
    _parse_corruption_args(gen_parser)


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def _parse_debug_args(parser):
    parser.add_argument(
        '--debug',
        action='store_true',
        help='DEBUG mode'
    )


def _parse_quiet_args(parser):
    parser.add_argument(
        '-q',
        '--quiet',
        action='store_true',
        help='supress banner, info messages, progress lines and time capture'
    )


def _parse_seed_args(parser):
    parser.add_argument(
        '--seed',
        type=int,
        default=None,
        help='base seed; trial i uses seed + i (default is {})'.format(cfg.DEFAULT_SEED)
    )


def _parse_dimension_args(parser):
    parser.add_argument('--m', type=int, default=None, help='number of measurements (rows)')
    parser.add_argument('--n', type=int, default=None, help='signal dimension (columns)')
    parser.add_argument('--k', type=int, default=None, help='joint support size')
    parser.add_argument('--k-hat', type=int, default=None, help='estimated support size')
    parser.add_argument('--j', type=int, default=None, help='number of signals')

    parser.add_argument(
        '--ensemble',
        type=str,
        default=None,
        help='measurement matrix ensemble (options: {})'
             .format(', '.join('\'{}\''.format(name) for name in ENSEMBLES))
    )

    parser.add_argument(
        '--support-layout',
        type=str,
        default=None,
        help='joint support layout (options: {}; default is \'random\')'
             .format(', '.join('\'{}\''.format(name) for name in SUPPORT_LAYOUTS))
    )


def _parse_corruption_args(parser):
    parser.add_argument('--corrupt-count-min', type=int, default=None, help='fewest corruptions per signal')
    parser.add_argument('--corrupt-count-max', type=int, default=None, help='most corruptions per signal')
    parser.add_argument('--corrupt-mean', type=float, default=None, help='mean of the corruption values')
    parser.add_argument('--corrupt-std', type=float, default=None, help='standard deviation of the corruption values')


def _parse_budget_args(parser):
    group_budget = parser.add_mutually_exclusive_group()

    group_budget.add_argument(
        '--budget',
        type=int,
        default=None,
        help='fixed number of projections per signal'
    )

    group_budget.add_argument(
        '--online',
        type=str,
        default=None,
        help='online schedule \'p,lo1,hi1,lo2,hi2\': with probability p a budget '
             'from [lo2, hi2], else from [lo1, hi1]'
    )


def _parse_solver_args(parser):
    parser.add_argument(
        '--sampling',
        type=str,
        default=None,
        help='row sampling (options: \'norm\', \'uniform\'; default is \'{}\')'.format(cfg.DEFAULT_SAMPLING)
    )

    parser.add_argument(
        '--no-carry',
        action='store_true',
        help='do not seed each signal with the current joint support estimate'
    )
