# -*- coding: utf-8 -*-
# wasp_hypowalk/command/enhanced.py
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

from abc import abstractmethod

from wasp_hypowalk.verify import verify_type, verify_value
from wasp_hypowalk.command.proto import WCommandProto


class WCommandArgumentParsingError(ValueError):
	""" This exception is raised when command line arguments can not be parsed
	"""
	pass


class WCommandArgumentDescriptor:
	""" Description of a single "--name [value]" argument
	"""

	class ArgumentCastingHelper:

		@verify_type('paranoid', error_message=(str, None))
		@verify_value(casting_fn=lambda x: x is None or callable(x))
		@verify_value(validate_fn=lambda x: x is None or callable(x))
		def __init__(self, casting_fn=None, validate_fn=None, error_message=None):
			self.__casting_fn = casting_fn
			self.__validate_fn = validate_fn
			self.__error_message = error_message

		def casting_function(self):
			return self.__casting_fn

		def validate_function(self):
			return self.__validate_fn

		def error_message(self):
			return self.__error_message

		@verify_type('paranoid', argument_name=str, argument_value=str)
		@verify_value('paranoid', argument_name=lambda x: len(x) > 0)
		def cast(self, argument_name, argument_value):
			casting_fn = self.casting_function()
			try:
				casted_argument_value = casting_fn(argument_value) if casting_fn is not None else argument_value
			except ValueError:
				raise WCommandArgumentParsingError(
					'Argument "%s" has malformed value: "%s"' % (argument_name, argument_value)
				)
			validate_fn = self.validate_function()
			if validate_fn is not None and validate_fn(casted_argument_value) is not True:
				error_message = self.error_message()
				if error_message is None:
					error_message = 'Argument "%s" has invalid value: "%s"' % (argument_name, argument_value)
				raise WCommandArgumentParsingError(error_message)
			return casted_argument_value

	class FlagArgumentCastingHelper(ArgumentCastingHelper):

		@verify_type('paranoid', argument_name=str, argument_value=bool)
		def cast(self, argument_name, argument_value):
			return argument_value

	class IntegerArgumentCastingHelper(ArgumentCastingHelper):

		@verify_type('paranoid', error_message=(str, None))
		def __init__(self, validate_fn=None, error_message=None):
			WCommandArgumentDescriptor.ArgumentCastingHelper.__init__(
				self, casting_fn=lambda x: int(x, base=10), validate_fn=validate_fn, error_message=error_message
			)

	@verify_type('paranoid', argument_name=str, required=bool, flag_mode=bool, help_info=(str, None))
	@verify_type('paranoid', meta_var=(str, None))
	@verify_value(argument_name=lambda x: len(x) > 0)
	def __init__(
		self, argument_name, required=False, flag_mode=False, help_info=None, meta_var=None, casting_helper=None
	):
		""" Create a new descriptor

		:param argument_name: argument name like "--config"
		:param required: whether the argument must be specified ("required" is useless for flags)
		:param flag_mode: whether the argument has no value
		:param help_info: description for help
		:param meta_var: value name for help
		:param casting_helper: value converter (string values by default)
		"""
		if casting_helper is None:
			if flag_mode is True:
				casting_helper = WCommandArgumentDescriptor.FlagArgumentCastingHelper()
			else:
				casting_helper = WCommandArgumentDescriptor.ArgumentCastingHelper()
		elif flag_mode is True and isinstance(casting_helper, self.FlagArgumentCastingHelper) is False:
			raise TypeError('Flag arguments require WCommandArgumentDescriptor.FlagArgumentCastingHelper')

		self.__argument_name = argument_name
		self.__required = required
		self.__flag_mode = flag_mode
		self.__help_info = help_info
		self.__meta_var = meta_var
		self.__casting_helper = casting_helper

	def argument_name(self):
		return self.__argument_name

	def required(self):
		return self.__required

	def flag_mode(self):
		return self.__flag_mode

	def help_info(self):
		return self.__help_info

	def meta_var(self):
		return self.__meta_var

	def casting_helper(self):
		return self.__casting_helper

	def cast(self, argument_name, argument_value):
		return self.casting_helper().cast(argument_name, argument_value)


class WCommandArgumentParser:
	""" Parser of "--name value" and "--flag" tokens. Absent flags are parsed as False, absent optional arguments
	are omitted. Conflicting arguments are pairs that may not be specified together
	"""

	@verify_type('paranoid', argument_descriptors=WCommandArgumentDescriptor, conflicts=(list, tuple, None))
	def __init__(self, *argument_descriptors, conflicts=None):
		self.__descriptors = argument_descriptors
		self.__conflicts = tuple(tuple(x) for x in conflicts) if conflicts is not None else tuple()
		names = set(x.argument_name() for x in argument_descriptors)
		for conflict in self.__conflicts:
			if len(conflict) < 2 or any(x not in names for x in conflict):
				raise ValueError('Conflict with unknown argument was specified')

	def descriptors(self):
		return self.__descriptors

	def conflicts(self):
		return self.__conflicts

	@verify_type('paranoid', command_tokens=str)
	def parse(self, *command_tokens):
		""" Parse tokens

		:param command_tokens: argument tokens (without the command name)

		:raise WCommandArgumentParsingError: if tokens are malformed

		:return: dict
		"""
		descriptors = {x.argument_name(): x for x in self.descriptors()}
		command_tokens = list(command_tokens)
		result = {}
		while len(command_tokens) > 0:
			argument_name = command_tokens.pop(0)
			descriptor = descriptors.get(argument_name)
			if descriptor is None:
				raise WCommandArgumentParsingError('Unknown argument: "%s"' % argument_name)
			if argument_name in result:
				raise WCommandArgumentParsingError('Multiple argument ("%s") values found' % argument_name)

			if descriptor.flag_mode() is True:
				result[argument_name] = descriptor.cast(argument_name, True)
				continue
			if len(command_tokens) == 0:
				raise WCommandArgumentParsingError('Argument "%s" requires value' % argument_name)
			result[argument_name] = descriptor.cast(argument_name, command_tokens.pop(0))

		for conflict in self.conflicts():
			found = [x for x in conflict if result.get(x) not in (None, False)]
			if len(found) > 1:
				raise WCommandArgumentParsingError('Conflict arguments was found: %s' % ', '.join(found))

		for descriptor in self.descriptors():
			argument_name = descriptor.argument_name()
			if descriptor.flag_mode() is True and argument_name not in result:
				result[argument_name] = descriptor.cast(argument_name, False)
			if descriptor.required() is True and argument_name not in result:
				raise WCommandArgumentParsingError("Required argument wasn't found: %s" % argument_name)
		return result

	def arguments_help(self):
		""" Return (argument, description) pairs

		:rtype: tuple
		"""
		result = []
		for argument in self.descriptors():
			argument_name = argument.argument_name()
			if argument.flag_mode() is not True:
				value_name = argument.meta_var() if argument.meta_var() is not None else 'value'
				argument_name = '%s [%s]' % (argument_name, value_name)

			description = argument.help_info()
			if description is None:
				description = 'argument description unavailable'
			if argument.required() is True:
				description += ' (required)'
			result.append((argument_name, description))
		return tuple(result)


class WEnhancedCommand(WCommandProto):
	""" Command that is called by its name and parses the rest of tokens with :class:`.WCommandArgumentParser`
	"""

	@verify_type('paranoid', argument_descriptors=WCommandArgumentDescriptor, conflicts=(list, tuple, None))
	@verify_type(command=str)
	@verify_value(command=lambda x: len(x) > 0)
	def __init__(self, command, *argument_descriptors, conflicts=None):
		WCommandProto.__init__(self)
		self.__command = command
		self.__parser = WCommandArgumentParser(*argument_descriptors, conflicts=conflicts)

	def command_token(self):
		return self.__command

	def parser(self):
		return self.__parser

	def match(self, *command_tokens, **command_env):
		""" :meth:`.WCommandProto.match` implementation
		"""
		return len(command_tokens) > 0 and command_tokens[0] == self.command_token()

	def exec(self, *command_tokens, **command_env):
		""" :meth:`.WCommandProto.exec` implementation
		"""
		if self.match(*command_tokens, **command_env) is False:
			raise RuntimeError('Command mismatch: %s' % self.join_tokens(*command_tokens))
		return self._exec(self.parser().parse(*command_tokens[1:]), **command_env)

	@abstractmethod
	@verify_type('paranoid', command_arguments=dict)
	def _exec(self, command_arguments, **command_env):
		""" Do the real command work

		:param command_arguments: parsed arguments
		:param command_env: command environment
		:return: WCommandResultProto
		"""
		raise NotImplementedError('This method is abstract')

	def command_help(self):
		""" Return help text of arguments

		:rtype: str
		"""
		arguments_help = self.parser().arguments_help()
		if len(arguments_help) == 0:
			return 'Command does not have arguments\n'

		info = 'Command arguments:\n'
		for argument_name, argument_description in arguments_help:
			info += '\t%s - %s\n' % (argument_name, argument_description)
		return info
