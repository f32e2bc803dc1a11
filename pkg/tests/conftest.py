
from tempfile import mktemp, mkdtemp
import os
import pytest
import shutil

import numpy


@pytest.fixture
def temp_file(request):
	filename = mktemp('-pytest-wasp-hypowalk')

	def fin():
		if os.path.exists(filename):
			os.unlink(filename)
	request.addfinalizer(fin)
	return filename


@pytest.fixture
def temp_dir(request):
	dir_name = mkdtemp('-pytest-wasp-hypowalk')

	def fin():
		if os.path.exists(dir_name):
			shutil.rmtree(dir_name)
	request.addfinalizer(fin)
	return dir_name


@pytest.fixture
def stream():
	return numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence(20260117)))


@pytest.fixture
def out_env(request, temp_dir):
	previous = os.environ.get('HYPOWALK_OUT')
	os.environ['HYPOWALK_OUT'] = temp_dir

	def fin():
		if previous is None:
			os.environ.pop('HYPOWALK_OUT', None)
		else:
			os.environ['HYPOWALK_OUT'] = previous
	request.addfinalizer(fin)
	return temp_dir
