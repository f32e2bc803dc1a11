# -*- coding: utf-8 -*-
# wasp_hypowalk/cli.py
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

""" The "hypowalk" console script: "hypowalk <subcommand> [--config PATH] [--out DIR] [--seed N] [--threads N]"

Exit codes are 0 when every asserted check passed, 1 when a check failed and 2 for usage or configuration errors
"""

import logging
import os
import sys

from wasp_hypowalk.command.enhanced import WCommandArgumentParsingError
from wasp_hypowalk.command.experiment import experiment_commands
from wasp_hypowalk.command.proto import WCommandSelector
from wasp_hypowalk.config import WConfigError, options_reference
from wasp_hypowalk.version import __version__

import wasp_hypowalk.command.lie  # noqa: F401 subcommands registration
import wasp_hypowalk.command.spectral  # noqa: F401
import wasp_hypowalk.command.walk  # noqa: F401

logger = logging.getLogger(__name__)

__log_format__ = '%(asctime)s %(levelname)s %(name)s: %(message)s'

__usage_exit_code__ = 2


def commands_selector():
	""" Return a selector with every registered subcommand

	:rtype: WCommandSelector
	"""
	selector = WCommandSelector()
	for command in experiment_commands():
		selector.add(command)
	return selector


def usage(selector):
	""" Return the list of subcommands and their common flags

	:rtype: str
	"""
	lines = [
		'hypowalk %s' % __version__, 'usage: hypowalk <subcommand> [arguments]',
		'       hypowalk --options (configuration keys)', '', 'subcommands:'
	]
	commands = list(selector)
	for command in commands:
		lines.append('\t%s - %s' % (command.command_token(), command.description()))
	if len(commands) > 0:
		lines.append('')
		lines.append(commands[0].command_help().rstrip('\n'))
	return '\n'.join(lines)


def main(argv=None, environ=None):
	""" Run a subcommand and return the exit code

	:param argv: tokens without the program name (sys.argv[1:] by default)
	:type argv: list of str | None

	:param environ: environment variables (os.environ by default)
	:type environ: dict | None

	:rtype: int
	"""
	argv = list(argv) if argv is not None else sys.argv[1:]
	environ = environ if environ is not None else os.environ
	logging.basicConfig(format=__log_format__, stream=sys.stderr, level=logging.WARNING)

	selector = commands_selector()
	if len(argv) == 0 or argv[0] in ('--help', '-h'):
		print(usage(selector))
		return 0 if len(argv) > 0 else __usage_exit_code__
	if argv[0] == '--options':
		print(options_reference().rstrip('\n'))
		return 0

	command = selector.select(*argv)
	if command is None:
		print('Unknown subcommand "%s"\n\n%s' % (argv[0], usage(selector)), file=sys.stderr)
		return __usage_exit_code__

	try:
		result = command.exec(*argv, environ=environ)
	except (WConfigError, WCommandArgumentParsingError) as e:
		print('hypowalk %s: %s' % (argv[0], str(e)), file=sys.stderr)
		return __usage_exit_code__
	except ValueError as e:
		logger.error('"%s" was rejected: %s', argv[0], str(e))
		return __usage_exit_code__
	except Exception:
		logger.exception('"%s" failed', argv[0])
		return __usage_exit_code__

	print(str(result))
	return result.exit_code()


if __name__ == '__main__':
	sys.exit(main())
