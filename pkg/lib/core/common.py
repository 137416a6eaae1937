#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file common.py
@author srkit contributors
@date 2026-10

@brief Common constants, the project exception and message printers.

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

import lib.core.config as cfg

from termcolor import colored, cprint


# ----------------------------------------------------------
# ------------------------- Banner -------------------------
# ----------------------------------------------------------


VERSION = '1.0'

if cfg.ISATTY:
	BANNER = colored('srkit', 'yellow', attrs=['bold']) + ' ' + \
             colored('{v%s}' % VERSION, 'blue', attrs=['bold']) + \
             ' sparse randomized Kaczmarz for corrupted MMV'
else:
	BANNER = 'srkit {v%s} sparse randomized Kaczmarz for corrupted MMV' % VERSION


# ----------------------------------------------------------
# -------------------- Exception class ---------------------
# ----------------------------------------------------------


PARAMETER_ERROR         = -1
DIMENSION_ERROR         = -2
DEGENERATE_ROW_ERROR    = -3
DEGENERATE_MATRIX_ERROR = -4
IO_ERROR                = -5


class SRKError(Exception):
	def __init__(self, message, *, errors=None):
		super().__init__(message)
		if not errors:
			errors = {}
		self.errors = errors
		self.errors.setdefault('errcode', 0)
		self.errors.setdefault('initial_error', '')


def parameter_error(message):
	return SRKError(message, errors={'errcode': PARAMETER_ERROR})


def dimension_error(message):
	return SRKError(message, errors={'errcode': DIMENSION_ERROR})


# ----------------------------------------------------------
# ----------------------- Utilities ------------------------
# ----------------------------------------------------------


def os_makedirs(dirname):
	if not dirname:
		return

	try:
		os.makedirs(dirname)
	except PermissionError as e:
		raise SRKError(
			'Permission denied: \'{}\''.format(dirname),
			errors={'errcode': IO_ERROR, 'initial_error': str(e)}
		)
	except OSError as e:  # exists
		if not os.path.isdir(dirname):
			raise SRKError(
				'Path exists and it is not a directory: \'{}\''.format(dirname),
				errors={'errcode': IO_ERROR, 'initial_error': str(e)}
			)


def format_real(value):
	return '{:.{}g}'.format(float(value), cfg.CSV_PRECISION)


# ----------------------------------------------------------
# ------------------------ Messages ------------------------
# ----------------------------------------------------------


def print_info(message):
	if cfg.QUIET:
		return

	if cfg.ISATTY:
		cprint('[INFO] {}'.format(message), 'green')
	else:
		print('[INFO] {}'.format(message))


def print_warning(message, *, errcode=0, initial_error=''):
	if cfg.QUIET:
		return

	if cfg.DEBUG:
		if errcode:
			print('ERRCODE: {}'.format(errcode))
		if initial_error:
			print(initial_error, file=sys.stderr)

	if cfg.ISATTY:
		cprint('[WARNING] {}'.format(message), 'yellow')
	else:
		print('[WARNING] {}'.format(message))


def print_critical(message, *, errcode=0, initial_error=''):
	if cfg.DEBUG:
		if errcode:
			print('ERRCODE: {}'.format(errcode))
		if initial_error:
			print(initial_error, file=sys.stderr)

	if cfg.ISATTY:
		cprint('[CRITICAL] {}'.format(message), 'white', 'on_red', attrs=['bold'], file=sys.stderr)
	else:
		print('[CRITICAL] {}'.format(message), file=sys.stderr)


def print_progress(message):
	if cfg.QUIET:
		return

	print('[*] {}'.format(message), file=sys.stderr)
