# -*- coding: UTF-8 -*-

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir)))

from lib.core.kaczmarz import make_rng


@pytest.fixture
def rng():
	return make_rng(1234)
