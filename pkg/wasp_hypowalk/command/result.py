# -*- coding: utf-8 -*-
# wasp_hypowalk/command/result.py
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

from wasp_hypowalk.verify import verify_type
from wasp_hypowalk.command.proto import WCommandResultProto


class WPlainCommandResult(WCommandResultProto):
	""" Text result (like help) with the zero exit code
	"""

	@verify_type('paranoid', result=str)
	def __init__(self, result):
		WCommandResultProto.__init__(self)
		self.__result = result

	def __str__(self):
		return self.__result

	def exit_code(self):
		return 0


class WExperimentResult(WCommandResultProto):
	""" Outcome of an experiment: named checks and written artifacts. The exit code is 0 if every check passed and
	1 otherwise
	"""

	@verify_type('paranoid', subcommand=str, checks=dict, artifacts=(list, tuple), output_dir=str)
	def __init__(self, subcommand, checks, artifacts, output_dir):
		WCommandResultProto.__init__(self)
		self.__subcommand = subcommand
		self.__checks = {x: bool(y) for x, y in checks.items()}
		self.__artifacts = tuple(artifacts)
		self.__output_dir = output_dir

	def subcommand(self):
		return self.__subcommand

	def checks(self):
		return self.__checks.copy()

	def artifacts(self):
		return self.__artifacts

	def output_dir(self):
		return self.__output_dir

	def passed(self):
		return all(self.__checks.values())

	def exit_code(self):
		return 0 if self.passed() else 1

	def __str__(self):
		lines = ['%s: %s' % (self.__subcommand, 'passed' if self.passed() else 'FAILED')]
		for name in sorted(self.__checks):
			lines.append('\t%s: %s' % (name, 'ok' if self.__checks[name] else 'failed'))
		lines.append('artifacts in %s: %s' % (self.__output_dir, ', '.join(self.__artifacts)))
		return '\n'.join(lines)
