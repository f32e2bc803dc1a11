# -*- coding: utf-8 -*-
# wasp_hypowalk/command/experiment.py
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

""" Base of the experiment subcommands. A subcommand computes everything first and writes its artifacts (CSV
tables, JSON documents and manifest.json) only when the computation completed, so usage and configuration errors
leave no files behind
"""

import json
import logging
import os
import platform
import time
from abc import abstractmethod
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy
import scipy
import sympy

from wasp_hypowalk.command.enhanced import WEnhancedCommand, WCommandArgumentDescriptor
from wasp_hypowalk.command.result import WPlainCommandResult, WExperimentResult
from wasp_hypowalk.config import WConfigError, WExperimentConfig
from wasp_hypowalk.csv import write_csv
from wasp_hypowalk.registry import WRegistry
from wasp_hypowalk.thread import WOrderedPool
from wasp_hypowalk.version import __version__

logger = logging.getLogger(__name__)

__commands_registry__ = WRegistry('subcommand')

__default_output_dir__ = 'hypowalk-out'


def json_ready(value):
	""" Convert numpy scalars, arrays and tuples into JSON types

	:rtype: any
	"""
	if isinstance(value, dict):
		return {str(x): json_ready(y) for x, y in value.items()}
	if isinstance(value, (list, tuple, numpy.ndarray)):
		return [json_ready(x) for x in value]
	if isinstance(value, (bool, numpy.bool_)):
		return bool(value)
	if isinstance(value, numpy.integer):
		return int(value)
	if isinstance(value, (float, numpy.floating)):
		value = float(value)
		return value if numpy.isfinite(value) else None
	return value


@dataclass
class WExperimentOutcome:
	""" Named checks, CSV tables and JSON documents of a computed experiment
	"""
	checks: dict = field(default_factory=dict)
	tables: list = field(default_factory=list)
	documents: dict = field(default_factory=dict)

	def check(self, name, value):
		""" Record an asserted check
		"""
		self.checks[name] = bool(value)
		if self.checks[name] is False:
			logger.warning('Check "%s" failed', name)

	def add_table(self, file_name, columns, rows):
		self.tables.append((file_name, tuple(columns), list(rows)))

	def add_document(self, file_name, document):
		self.documents[file_name] = json_ready(document)


def versions():
	""" Return versions of the package and of its numerical stack

	:rtype: dict
	"""
	return {
		'wasp-hypowalk': __version__,
		'python': platform.python_version(),
		'numpy': numpy.__version__,
		'scipy': scipy.__version__,
		'sympy': sympy.__version__,
	}


def _write_json(path, document):
	with open(path, 'w') as f:
		json.dump(document, f, indent=2, sort_keys=True)
		f.write('\n')


class WExperimentCommand(WEnhancedCommand):
	""" Subcommand that runs a configured experiment. Derived classes set "__registry_id__" (the subcommand name)
	and "__description__" and implement :meth:`.WExperimentCommand.run`
	"""

	__registry_id__ = None
	__description__ = None

	def __init__(self):
		WEnhancedCommand.__init__(
			self, self.__registry_id__,
			WCommandArgumentDescriptor(
				'--config', meta_var='PATH', help_info='INI file or manifest.json of a previous run'
			),
			WCommandArgumentDescriptor(
				'--out', meta_var='DIR', help_info='output directory (HYPOWALK_OUT or ./hypowalk-out by default)'
			),
			WCommandArgumentDescriptor(
				'--seed', meta_var='N', help_info='seed that overrides the configuration one',
				casting_helper=WCommandArgumentDescriptor.IntegerArgumentCastingHelper(
					validate_fn=lambda x: x >= 0
				)
			),
			WCommandArgumentDescriptor(
				'--threads', meta_var='N', help_info='workers limit (available cores by default)',
				casting_helper=WCommandArgumentDescriptor.IntegerArgumentCastingHelper(
					validate_fn=lambda x: x >= 1
				)
			),
			WCommandArgumentDescriptor('--verbose', flag_mode=True, help_info='log debug messages'),
			WCommandArgumentDescriptor('--quiet', flag_mode=True, help_info='log errors only'),
			WCommandArgumentDescriptor('--help', flag_mode=True, help_info='show this help'),
			conflicts=[('--verbose', '--quiet')]
		)

	def description(self):
		return self.__description__

	@abstractmethod
	def run(self, config, pool):
		""" Compute the experiment

		:param config: validated configuration
		:type config: WExperimentConfig

		:param pool: pool for independent tasks
		:type pool: WOrderedPool

		:rtype: WExperimentOutcome
		"""
		raise NotImplementedError('This method is abstract')

	@staticmethod
	def output_dir(command_arguments, environ):
		""" Return the directory for artifacts

		:rtype: str
		"""
		if command_arguments.get('--out') is not None:
			return command_arguments['--out']
		return environ.get('HYPOWALK_OUT', __default_output_dir__)

	@staticmethod
	def log_level(command_arguments):
		if command_arguments.get('--verbose') is True:
			return logging.DEBUG
		if command_arguments.get('--quiet') is True:
			return logging.ERROR
		return logging.WARNING

	def _exec(self, command_arguments, **command_env):
		""" :meth:`.WEnhancedCommand._exec` implementation

		:param command_env: "environ" is the environment variables mapping (os.environ by default)
		"""
		if command_arguments['--help'] is True:
			return WPlainCommandResult('%s - %s\n%s' % (self.command_token(), self.description(), self.command_help()))
		logging.getLogger().setLevel(self.log_level(command_arguments))

		config = WExperimentConfig.load(
			command_arguments.get('--config'), seed=command_arguments.get('--seed'),
			threads=command_arguments.get('--threads')
		)
		if config['subcommand'] not in (None, self.command_token()):
			raise WConfigError(
				'The configuration is written for "%s", not for "%s"' % (config['subcommand'], self.command_token())
			)
		output_dir = self.output_dir(command_arguments, command_env.get('environ', os.environ))
		pool = WOrderedPool(config['threads'] if config['threads'] > 0 else None)

		logger.info('Running "%s" with %i threads', self.command_token(), pool.threads())
		started_at = datetime.now(timezone.utc).isoformat()
		started = time.monotonic()
		outcome = self.run(config, pool)
		wall_time = time.monotonic() - started

		os.makedirs(output_dir, exist_ok=True)
		artifacts = []
		for file_name, columns, rows in outcome.tables:
			write_csv(os.path.join(output_dir, file_name), columns, rows)
			artifacts.append(file_name)
		for file_name, document in outcome.documents.items():
			_write_json(os.path.join(output_dir, file_name), document)
			artifacts.append(file_name)

		result = WExperimentResult(self.command_token(), outcome.checks, artifacts + ['manifest.json'], output_dir)
		_write_json(os.path.join(output_dir, 'manifest.json'), {
			'subcommand': self.command_token(),
			'config': config.ini_text(),
			'config_sha256': config.digest(),
			'versions': versions(),
			'started_at': started_at,
			'wall_time': wall_time,
			'checks': outcome.checks,
			'artifacts': artifacts,
			'exit_code': result.exit_code()
		})
		logger.info('"%s" finished in %.3fs, artifacts are in %s', self.command_token(), wall_time, output_dir)
		return result


def experiment_commands():
	""" Return instances of every registered subcommand in the name order

	:rtype: list of WExperimentCommand
	"""
	return [__commands_registry__.get(x)() for x in __commands_registry__.ids()]
