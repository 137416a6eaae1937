#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file timing.py
@author srkit contributors
@date 2026-10

@brief Wall-clock meter for a whole srkit run.

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

import atexit
import datetime
import sys
import time

import lib.core.config as cfg

START = None


def tick(msg, fmt='%H:%M:%S', taken=None):
	now = time.strftime(fmt, time.localtime())
	print('%s %s' % (msg, now), file=sys.stderr)
	if taken is not None:
		taken = datetime.timedelta(seconds=round(taken, 3))
		print('[*] Time taken: %s' % taken, file=sys.stderr)


def final():
	tick('[*] Shut down at', taken=time.time() - START)


def begin():
	global START
	START = time.time()

	if not cfg.QUIET:
		atexit.register(final)
		tick('[*] Started at')
