# -*- coding: utf-8 -*-
# wasp_hypowalk/verify.py
#
# Copyright (C) 2026 the wasp-hypowalk authors and contributors
# <see AUTHORS file>
#
# This file is part of wasp-hypowalk.
#
# Wasp-hypowalk is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Wasp-hypowalk is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with wasp-hypowalk.  If not, see <http://www.gnu.org/licenses/>.

import logging
import os
from inspect import getfullargspec, isclass, isfunction
from decorator import decorator

logger = logging.getLogger(__name__)


class Verifier:
	""" Base class for runtime argument checks. A verifier produces decorators, each decorator checks the named
	arguments of a target function before the function is called.

	A statement may be tagged. Untagged statements are always active (they guard preconditions of numerical
	operations), tagged statements are active only if one of their tags is listed in the environment variable
	:attr:`.Verifier.__environment_var__`

	Example: ::

		@verify_type('strict', p=int, r=int)
		@verify_value(p=lambda x: 1 <= x <= 4, r=lambda x: 1 <= x <= 5)
		def build_free_nilpotent(p, r):
			pass
	"""

	__environment_var__ = 'HYPOWALK_ENABLE_CHECKS'
	""" Environment variable with tags (separated by :attr:`.Verifier.__tags_delimiter__`) that enable tagged
	checks. Tags in use:
		'strict' - type checks of public arguments
		'paranoid' - checks of arguments that are checked again deeper in a call chain
		'*' - every check
	"""

	__tags_delimiter__ = ':'
	""" Tags separator inside :attr:`.Verifier.__environment_var__` """

	def __init__(self, *tags, env_var=None):
		""" Create a new verifier

		:param tags: tags of this statement
		:type tags: str

		:param env_var: environment variable to look tags up in (default is
		:attr:`.Verifier.__environment_var__`)
		:type env_var: str | None
		"""
		self._tags = list(tags)
		self._env_var = env_var if env_var is not None else self.__class__.__environment_var__

	def decorate_disabled(self):
		""" Return True if decoration must be omitted (statement is tagged and no tag is enabled)

		:rtype: bool
		"""
		if len(self._tags) == 0:
			return False

		env_value = os.environ.get(self._env_var)
		if env_value is None:
			return True

		env_tags = env_value.split(self.__class__.__tags_delimiter__)
		if '*' in env_tags:
			return False
		return not any(tag in env_tags for tag in self._tags)

	def check(self, arg_spec, arg_name, decorated_function):
		""" Return a callable that accepts a single argument value and raises an exception if the value does
		not suit the specification

		:param arg_spec: specification of a single argument
		:param arg_name: argument name
		:param decorated_function: function that is being decorated

		:rtype: callable
		"""
		return lambda x: None

	def decorator(self, **arg_specs):
		""" Return decorator that checks the specified arguments

		:param arg_specs: argument names and theirs specifications. Specification is passed as is to the
		:meth:`.Verifier.check` method

		:rtype: callable
		"""

		if self.decorate_disabled() is True:
			def empty_decorator(decorated_function):
				return decorated_function
			return empty_decorator

		def first_level_decorator(decorated_function):
			function_spec = getfullargspec(decorated_function)
			checks = {
				name: self.check(spec, name, decorated_function) for name, spec in arg_specs.items()
			}
			positional = [(i, x) for i, x in enumerate(function_spec.args) if x in checks]
			varargs_name = function_spec.varargs if function_spec.varargs in checks else None

			def second_level_decorator(original_function, *args, **kwargs):
				for i, name in positional:
					if i < len(args):
						self.__run_check(checks[name], args[i], original_function, name, arg_specs)

				if varargs_name is not None:
					for value in args[len(function_spec.args):]:
						self.__run_check(checks[varargs_name], value, original_function, varargs_name, arg_specs)

				for name, value in kwargs.items():
					if name in checks:
						self.__run_check(checks[name], value, original_function, name, arg_specs)

				return original_function(*args, **kwargs)
			return decorator(second_level_decorator)(decorated_function)
		return first_level_decorator

	def __run_check(self, check, value, original_function, arg_name, arg_specs):
		try:
			check(value)
		except Exception as e:
			self.help_info(e, original_function, arg_name, arg_specs[arg_name])
			raise

	def help_info(self, exc, decorated_function, arg_name, arg_spec):
		""" Log details of a failed check with the DEBUG level

		:param exc: raised exception
		:param decorated_function: decorated function
		:param arg_name: argument name
		:param arg_spec: argument specification

		:rtype: None
		"""
		logger.debug(
			'Check of the "%s" argument of "%s" failed (%s). Specification: %s',
			arg_name, Verifier.function_name(decorated_function), str(exc),
			arg_spec.__qualname__ if isfunction(arg_spec) else str(arg_spec)
		)

	@staticmethod
	def function_name(fn):
		""" Return qualified function name

		:param fn: source function
		:rtype: str
		"""
		if hasattr(fn, '__qualname__'):
			return fn.__qualname__
		if hasattr(fn, '__self__'):
			owner = fn.__self__
			if isclass(owner) is False:
				owner = owner.__class__
			return '%s.%s' % (owner.__name__, fn.__name__)
		return fn.__name__


class TypeVerifier(Verifier):
	""" Checks that an argument is an instance of the specified type (or one of the specified types). None
	inside a tuple of types allows None value

	Example: ::

		@verify_type(h=float, field=(int, None))
		def assemble(h, field=None):
			pass
	"""

	def check(self, type_spec, arg_name, decorated_function):
		""" :meth:`.Verifier.check` implementation
		"""
		if isinstance(type_spec, (tuple, list, set)):
			if any((x is not None and isclass(x) is False) for x in type_spec):
				raise RuntimeError('Invalid specification. Must be type or tuple/list/set of types')
			allow_none = None in type_spec
			types = tuple(x for x in type_spec if x is not None)
		elif isclass(type_spec):
			allow_none = False
			types = (type_spec, )
		else:
			raise RuntimeError('Invalid specification. Must be type or tuple/list/set of types')

		def type_check(x):
			if (allow_none is True and x is None) or isinstance(x, types) is True:
				return
			raise TypeError(
				'Argument "%s" for function "%s" has invalid type (%s should be %s)' %
				(arg_name, Verifier.function_name(decorated_function), str(type(x)), str(type_spec))
			)
		return type_check


class ValueVerifier(Verifier):
	""" Checks that an argument value passes restrictions. Each restriction is a function that accepts a value and
	returns True if the value is acceptable

	Example: ::

		@verify_value(h=lambda x: 0 < x <= 0.5, q=lambda x: x >= 8)
		def assemble(h, q):
			pass

	A restriction result is treated as a boolean
	"""

	def check(self, value_spec, arg_name, decorated_function):
		""" :meth:`.Verifier.check` implementation
		"""
		if isinstance(value_spec, (tuple, list, set)):
			restrictions = tuple(value_spec)
		else:
			restrictions = (value_spec, )

		if any(isfunction(x) is False for x in restrictions):
			raise RuntimeError('Invalid specification. Must be function or tuple/list/set of functions')

		def value_check(x):
			for restriction in restrictions:
				if not restriction(x):  # numpy comparisons return numpy.bool_
					raise ValueError(
						'Argument "%s" for function "%s" has invalid value (%s)' %
						(arg_name, Verifier.function_name(decorated_function), str(x))
					)
		return value_check


def verify_type(*tags, **type_kwargs):
	""" Shortcut for :class:`.TypeVerifier`

	:param tags: verification tags. See :meth:`.Verifier.__init__`
	:param type_kwargs: verifier specification. See :meth:`.TypeVerifier.check`
	:rtype: callable
	"""
	return TypeVerifier(*tags).decorator(**type_kwargs)


def verify_value(*tags, **value_kwargs):
	""" Shortcut for :class:`.ValueVerifier`

	:param tags: verification tags. See :meth:`.Verifier.__init__`
	:param value_kwargs: verifier specification. See :meth:`.ValueVerifier.check`
	:rtype: callable
	"""
	return ValueVerifier(*tags).decorator(**value_kwargs)
