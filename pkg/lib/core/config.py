#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
@file config.py
@author srkit contributors
@date 2026-10

@brief Process-wide switches and numeric defaults.

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

DEBUG = False

QUIET = False

VERBOSE = False

# Enable colored text when terminal output (True), else (| or > for example) no color (False)
ISATTY = True if sys.stdout.isatty() else False

DEFAULT_TRIALS = 40

DEFAULT_SEED = 20190217

DEFAULT_SAMPLING = 'norm'

DEFAULT_THREADS = os.cpu_count() or 1

# Significant digits for CSV and instance dumps (enough for an exact float64 round-trip)
CSV_PRECISION = 17
