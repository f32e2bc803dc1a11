# -*- coding: utf-8 -*-

import logging
import os
from inspect import isfunction

import numpy
import pytest

from wasp_hypowalk.verify import Verifier, TypeVerifier, ValueVerifier, verify_type, verify_value


@pytest.fixture
def verifier_env(request):
	env_value = os.environ.get(Verifier.__environment_var__)
	os.environ.pop(Verifier.__environment_var__, None)

	def fin():
		if env_value is None:
			os.environ.pop(Verifier.__environment_var__, None)
		else:
			os.environ[Verifier.__environment_var__] = env_value

	request.addfinalizer(fin)


class FNameChecker:
	@staticmethod
	def foo():
		pass

	@classmethod
	def bar(cls):
		pass

	def zzz(self):
		pass


@pytest.mark.usefixtures('verifier_env')
class TestVerifier:

	def test_decorate_disabled(self):
		assert(Verifier.__environment_var__ == 'HYPOWALK_ENABLE_CHECKS')
		assert(Verifier().decorate_disabled() is False)
		assert(Verifier('strict').decorate_disabled() is True)
		assert(Verifier('strict', 'paranoid').decorate_disabled() is True)

		os.environ[Verifier.__environment_var__] = 'foo:strict'
		assert(Verifier().decorate_disabled() is False)
		assert(Verifier('strict').decorate_disabled() is False)
		assert(Verifier('paranoid').decorate_disabled() is True)
		assert(Verifier('strict', 'paranoid').decorate_disabled() is False)

		os.environ[Verifier.__environment_var__] = 'foo:*'
		assert(Verifier('paranoid').decorate_disabled() is False)

		assert(Verifier('strict', env_var='HYPOWALK_TEST_UNSET_VARIABLE').decorate_disabled() is True)

	def test_check(self):
		check = Verifier().check(None, '', lambda x: None)
		assert(isfunction(check) is True)

	def test_decorator(self):

		def foo(a, b, c, d=None, **kwargs):
			pass

		verifier = Verifier()
		assert(verifier.decorator()(foo) != foo)
		verifier.decorate_disabled = lambda: True
		assert(verifier.decorator()(foo) == foo)
		verifier = Verifier()

		def exc():
			raise TypeError('text exception')

		default_check = lambda x: None
		exc_check = lambda x: exc() if x == 3 else None
		verifier.check = lambda s, n, f: exc_check if n in ('a', 'd', 'e') else default_check
		decorated_foo = verifier.decorator(a=None, c=1, d=1, e=1)(foo)

		decorated_foo(1, 2, 3, d=4)
		pytest.raises(TypeError, decorated_foo, 3, 2, 3, d=4)
		pytest.raises(TypeError, decorated_foo, 1, 2, 3, d=3)
		decorated_foo(1, 2, 3, d=4, e=5)
		pytest.raises(TypeError, decorated_foo, 1, 2, 3, d=4, e=3)

	def test_function_name(self):
		assert(Verifier.function_name(FNameChecker.foo) == 'FNameChecker.foo')
		assert(Verifier.function_name(FNameChecker.bar) == 'FNameChecker.bar')
		assert(Verifier.function_name(FNameChecker.zzz) == 'FNameChecker.zzz')

		c = FNameChecker()
		assert(Verifier.function_name(c.foo) == 'FNameChecker.foo')
		assert(Verifier.function_name(c.bar) == 'FNameChecker.bar')
		assert(Verifier.function_name(c.zzz) == 'FNameChecker.zzz')

	def test_help_info(self, caplog):

		@verify_value(h=lambda x: 0 < x <= 0.5)
		def assemble(h):
			return h

		with caplog.at_level(logging.DEBUG, logger='wasp_hypowalk.verify'):
			pytest.raises(ValueError, assemble, 0.7)
		assert(any('"h"' in x.getMessage() for x in caplog.records))


class TestTypeVerifier:

	def test_check(self):

		def foo(a, b, c, d=None, **kwargs):
			pass

		verifier = TypeVerifier()

		with pytest.raises(RuntimeError):
			verifier.decorator(a=None)(foo)

		with pytest.raises(RuntimeError):
			verifier.decorator(a=(str, None, 1))(foo)

		decorated_foo = verifier.decorator(a=int, b=(str, None), c=[str, int], d=(str, int, None), e=float)(foo)
		decorated_foo(1, None, 'f')
		decorated_foo(1, None, 1, d='o')
		decorated_foo(1, None, 'o', d=5, e=.1)

		pytest.raises(TypeError, decorated_foo, 'b', None, 'f')
		pytest.raises(TypeError, decorated_foo, 1, 4, 'o')
		pytest.raises(TypeError, decorated_foo, 1, None, None)
		pytest.raises(TypeError, decorated_foo, 1, None, 'o', d=.1)
		pytest.raises(TypeError, decorated_foo, 1, None, 'b', e='a')

		def foo(*args):
			pass

		decorated_foo = verifier.decorator(args=int)(foo)
		decorated_foo()
		decorated_foo(1, 2, 3)
		pytest.raises(TypeError, decorated_foo, 0.1)
		pytest.raises(TypeError, decorated_foo, 1, 0.1, 4)


class TestValueVerifier:

	def test_check(self):

		def foo(a, b, c, d=None, **kwargs):
			pass

		verifier = ValueVerifier()

		with pytest.raises(RuntimeError):
			verifier.decorator(a=1)(foo)

		with pytest.raises(RuntimeError):
			verifier.decorator(a=(1,))(foo)

		decorated_foo = verifier.decorator(
			a=(lambda x: x > 5, lambda x: x < 10),
			c=lambda x: x[:3] == 'foo', d=lambda x: x is not None, e=lambda x: x == 1
		)(foo)
		decorated_foo(6, 1, 'foo-asdaads', d=7)
		decorated_foo(6, 1, 'foo-asdaads', d=0.1, e=1)

		pytest.raises(ValueError, decorated_foo, 6, None, 'foo-aaa')
		pytest.raises(ValueError, decorated_foo, 5, None, 'foo-aaa', d=5)
		pytest.raises(ValueError, decorated_foo, 10, None, 'foo-aaa', d=5)
		pytest.raises(ValueError, decorated_foo, 6, None, 'foo-aaa', d=5, e=7)

	def test_numpy(self):

		@verify_value(x=lambda x: numpy.all(x > 0))
		def foo(x):
			return x

		foo(numpy.array([1.0, 2.0]))
		pytest.raises(ValueError, foo, numpy.array([1.0, -2.0]))


@pytest.mark.usefixtures('verifier_env')
def test_verify():

	@verify_type(p=int, r=int, eps=(float, None))
	@verify_value(p=lambda x: 1 <= x <= 4, r=lambda x: 1 <= x <= 5, eps=lambda x: x is None or x > 0)
	def foo(p, r, eps=None):
		return p * r

	assert(foo(2, 3) == 6)
	assert(foo(2, 3, eps=0.5) == 6)

	pytest.raises(TypeError, foo, 2.0, 3)
	pytest.raises(TypeError, foo, 2, 3, eps=1)
	pytest.raises(ValueError, foo, 0, 3)
	pytest.raises(ValueError, foo, 2, 6)
	pytest.raises(ValueError, foo, 2, 3, eps=-0.1)

	@verify_type('strict', x=int)
	def bar(x):
		return x

	assert(bar('not checked') == 'not checked')
