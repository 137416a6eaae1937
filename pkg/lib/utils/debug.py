#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file debug.py
@author srkit contributors
@date 2026-10

@brief Debug timers for the solver and experiment entry points.

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

import functools
import sys
import time

import lib.core.config as cfg


def time_it(func):
	@functools.wraps(func)
	def wrapper(*args, **kwargs):
		start = time.perf_counter()
		result = func(*args, **kwargs)
		elapsed = time.perf_counter() - start
		print('[DEBUG] {}: {:.3f} seconds'.format(func.__qualname__, elapsed), file=sys.stderr)
		return result

	return wrapper


class time_it_if_debug:
	"""
	Apply `decorator` only when debug mode is on at decoration time. The driver
	sets cfg.DEBUG from sys.argv before importing the package.
	"""

	def __init__(self, condition, decorator):
		self._condition = condition or cfg.DEBUG
		self._decorator = decorator

	def __call__(self, func):
		if not self._condition:
			return func

		return self._decorator(func)
