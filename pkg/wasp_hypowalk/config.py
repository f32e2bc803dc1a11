# -*- coding: utf-8 -*-
# wasp_hypowalk/config.py
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

import hashlib
import io
import json
import logging
import os
from configparser import ConfigParser, Error as ConfigParserError

from wasp_hypowalk.fourier import WTrigPolynomial
from wasp_hypowalk.models import model_names
from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)

__defaults_file__ = os.path.join(os.path.dirname(__file__), 'defaults.ini')


class WConfigError(ValueError):
	""" This exception is raised when an experiment configuration can not be read, has an unknown key or a value
	out of its range
	"""
	pass


class WConfig(ConfigParser):
	""" ConfigParser that keeps the case of option names and does no interpolation. Has a single method to merge
	config data (see :meth:`.WConfig.merge` method) and a method that splits a comma-separated option value (see
	:meth:`.WConfig.split_option` method)
	"""

	def __init__(self):
		ConfigParser.__init__(self, interpolation=None)
		self.optionxform = str

	@verify_type(section=str, option=str)
	def split_option(self, section, option):
		""" Return list of strings that are made by splitting comma-separated option value. Method returns
		empty list if option value is empty string

		:param section: option section name
		:param option: option name
		:return: list of strings
		"""
		value = self[section][option].strip()
		if value == "":
			return []
		return [x.strip() for x in (value.split(","))]

	@verify_type(config=(str, ConfigParser))
	@verify_value(config=lambda x: isinstance(x, ConfigParser) or os.path.isfile(x))
	def merge(self, config):
		""" Load configuration from given configuration.

		:param config: config to load. If config is a string type, then it's treated as .ini filename
		:return: None
		"""
		if isinstance(config, ConfigParser) is True:
			self.update(config)
		elif isinstance(config, str):
			self.read(config)

	@verify_type(config=ConfigParser, section_to=str, section_from=(str, None))
	def merge_section(self, config, section_to, section_from=None):
		""" Load configuration section from other configuration. If specified section doesn't exist in current
		configuration, then it will be added automatically.

		:param config: source configuration
		:param section_to: destination section name
		:param section_from: source section name (if it is None, then section_to is used as source section name)
		:return: None
		"""
		section_from = section_from if section_from is not None else section_to
		if section_from not in config.sections():
			raise ValueError('There is no such section "%s" in config' % section_from)

		if section_to not in self.sections():
			self.add_section(section_to)

		for option in config[section_from].keys():
			self.set(section_to, option, config[section_from][option])


class WOptionRange:
	""" Cast of a single option value and its range check
	"""

	@verify_type('paranoid', description=str, multiple=bool, allow_empty=bool)
	@verify_value(cast=lambda x: callable(x), check=lambda x: x is None or callable(x))
	def __init__(self, cast, check=None, description='', multiple=False, allow_empty=False):
		""" Create a new option description

		:param cast: function that converts a text (a single item for multiple options) into a value
		:type cast: callable

		:param check: function that returns True for valid values (checked for every item)
		:type check: callable | None

		:param description: what this option is
		:type description: str

		:param multiple: whether the value is a comma separated list
		:type multiple: bool

		:param allow_empty: whether an empty text is valid (gives None or an empty list)
		:type allow_empty: bool
		"""
		self.__cast = cast
		self.__check = check
		self.__description = description
		self.__multiple = multiple
		self.__allow_empty = allow_empty

	def description(self):
		return self.__description

	def multiple(self):
		return self.__multiple

	def __single(self, option, text):
		try:
			value = self.__cast(text)
		except (TypeError, ValueError) as e:
			raise WConfigError('Option "%s" has malformed value "%s": %s' % (option, text, str(e)))
		if self.__check is not None and self.__check(value) is not True:
			raise WConfigError('Option "%s" is out of range: "%s" (%s)' % (option, text, self.__description))
		return value

	@verify_type('paranoid', option=str, text=str)
	def cast(self, option, text):
		""" Return the typed value of an option

		:param option: option name (for error messages)
		:type option: str

		:param text: raw value
		:type text: str

		:raise WConfigError: if the value is malformed or out of range

		:rtype: any
		"""
		text = text.strip()
		if len(text) == 0:
			if self.__allow_empty is False:
				raise WConfigError('Option "%s" requires a value' % option)
			return [] if self.__multiple is True else None
		if self.__multiple is True:
			return tuple(self.__single(option, x.strip()) for x in text.split(','))
		return self.__single(option, text)


class WSupportedOptions:
	""" Schema of a configuration section
	"""

	def __init__(self, **options):
		""" Create a schema

		:param options: option names and theirs descriptions
		:type options: WOptionRange
		"""
		for name, option in options.items():
			if isinstance(option, WOptionRange) is False:
				raise TypeError('Option "%s" must be described by WOptionRange' % name)
		self.__options = options

	def names(self):
		""" Return supported option names

		:rtype: tuple of str
		"""
		return tuple(sorted(self.__options.keys()))

	def option(self, name):
		""" Return description of an option

		:rtype: WOptionRange
		"""
		return self.__options[name]

	def validate(self, section):
		""" Cast every option of the section. Unknown and missing options are rejected

		:param section: section to check
		:type section: configparser.SectionProxy | dict

		:raise WConfigError: if the section does not match the schema

		:rtype: dict
		"""
		unknown = sorted(set(section.keys()).difference(self.__options.keys()))
		if len(unknown) > 0:
			raise WConfigError('Unknown configuration keys: %s' % ', '.join(unknown))
		missing = sorted(set(self.__options.keys()).difference(section.keys()))
		if len(missing) > 0:
			raise WConfigError('Missing configuration keys: %s' % ', '.join(missing))
		return {x: self.__options[x].cast(x, section[x]) for x in self.names()}


def _boolean(text):
	states = ConfigParser.BOOLEAN_STATES
	if text.lower() not in states:
		raise ValueError('boolean expected')
	return states[text.lower()]


def _choice(*values):
	return lambda x: x in values


__subcommands__ = (
	'lie-check', 'lie-dump', 'spectrum', 'gap-scan', 'cluster', 'walk-tv', 'diffuse', 'minorize', 'consistency'
)

__experiment_options__ = WSupportedOptions(
	subcommand=WOptionRange(
		str, _choice(*__subcommands__), 'subcommand this file is written for', allow_empty=True
	),
	model=WOptionRange(str, lambda x: x in model_names(), 'one of the built-in model names'),
	h=WOptionRange(float, lambda x: 0 < x <= 0.5, 'step scales in (0, 0.5]', multiple=True),
	M=WOptionRange(int, lambda x: 2 <= x <= 256, 'frequency cutoff in [2, 256]'),
	q=WOptionRange(int, lambda x: 2 <= x <= 512, 'Gauss-Legendre order in [2, 512]'),
	R=WOptionRange(float, lambda x: x > 0, 'positive rescaled level'),
	C4=WOptionRange(float, lambda x: 0 < x < 1, 'low band constant in (0, 1)'),
	eps=WOptionRange(float, lambda x: x > 0, 'positive half width'),
	drift_factor=WOptionRange(float, lambda x: x > 0, 'positive window width in drifts'),
	cluster_method=WOptionRange(str, _choice('levels', 'blocks'), '"levels" or "blocks"'),
	seed=WOptionRange(int, lambda x: x >= 0, 'non-negative integer'),
	threads=WOptionRange(int, lambda x: x >= 0, 'worker count (0 for every available core)'),
	chunk_size=WOptionRange(int, lambda x: x > 0, 'positive walkers per chunk'),
	N_w=WOptionRange(int, lambda x: x > 1, 'walker count greater than 1'),
	N_s=WOptionRange(int, lambda x: x > 0, 'positive sample count'),
	B=WOptionRange(int, lambda x: 2 <= x <= 4096, 'bins per axis in [2, 4096]'),
	checkpoints=WOptionRange(
		int, lambda x: x >= 0, 'non-negative step counts (empty for the default)', multiple=True, allow_empty=True
	),
	tv_subtract_floor=WOptionRange(_boolean, None, 'boolean'),
	t=WOptionRange(float, lambda x: x > 0, 'positive times', multiple=True),
	f=WOptionRange(WTrigPolynomial.parse, None, 'trigonometric polynomial "m:n:c, ..."'),
	x0=WOptionRange(float, None, 'start point "x, y"', multiple=True),
	deltas=WOptionRange(float, lambda x: 0 < x <= 1, 'time scales in (0, 1]', multiple=True),
	lambdas=WOptionRange(float, lambda x: x > 0, 'positive counting levels', multiple=True),
	consistency_parts=WOptionRange(
		str, _choice('generator', 'chapman', 'projectors'), 'generator, chapman or projectors', multiple=True
	),
	projector_exp=WOptionRange(_boolean, None, 'boolean'),
	p=WOptionRange(int, lambda x: 1 <= x <= 4, 'generator count in [1, 4]'),
	r=WOptionRange(int, lambda x: 1 <= x <= 5, 'step in [1, 5]'),
	lie_samples=WOptionRange(int, lambda x: x > 0, 'positive sample count'),
	gap_tolerance=WOptionRange(float, lambda x: x > 0, 'positive relative tolerance'),
	raw_tolerance=WOptionRange(float, lambda x: x > 0, 'positive relative tolerance'),
	c_min=WOptionRange(float, lambda x: x >= 0, 'non-negative minorization bound'),
)


class WExperimentConfig:
	""" Validated values of the [hypowalk] section. The canonical INI text (sorted keys, raw values) identifies
	a run and is embedded into manifests
	"""

	__section__ = 'hypowalk'

	def __init__(self, config):
		""" Validate a merged configuration

		:param config: configuration with the [hypowalk] section
		:type config: WConfig

		:raise WConfigError: if the configuration does not match the schema
		"""
		section = self.__section__
		if config.has_section(section) is False:
			raise WConfigError('Configuration has no [%s] section' % section)
		extra = [x for x in config.sections() if x != section]
		if len(extra) > 0:
			raise WConfigError('Unknown configuration sections: %s' % ', '.join(extra))

		raw = {x: config[section][x] for x in config[section].keys()}
		self.__values = __experiment_options__.validate(raw)
		if len(self.__values['x0']) != 2:
			raise WConfigError('Option "x0" must have two coordinates')
		hs = self.__values['h']
		if any(b >= a for a, b in zip(hs, hs[1:])):
			raise WConfigError('Option "h" must be a decreasing list')

		self.__text = ''.join('%s = %s\n' % (x, raw[x].strip()) for x in sorted(raw.keys()))
		self.__text = '[%s]\n' % section + self.__text

	def __getitem__(self, item):
		return self.__values[item]

	def values(self):
		""" Return every typed value

		:rtype: dict
		"""
		return self.__values.copy()

	def ini_text(self):
		""" Return the canonical INI text

		:rtype: str
		"""
		return self.__text

	def digest(self):
		""" Return SHA-256 of the canonical INI text

		:rtype: str
		"""
		return hashlib.sha256(self.__text.encode('utf-8')).hexdigest()

	@classmethod
	def defaults(cls):
		""" Return the shipped defaults

		:rtype: WConfig
		"""
		result = WConfig()
		result.read(__defaults_file__)
		return result

	@classmethod
	@verify_type('paranoid', text=str, seed=(int, None), threads=(int, None))
	def from_text(cls, text, seed=None, threads=None):
		""" Merge INI text over the defaults and apply overrides

		:param text: INI text
		:type text: str

		:param seed: seed that overrides the configuration one
		:type seed: int | None

		:param threads: thread count that overrides the configuration one
		:type threads: int | None

		:rtype: WExperimentConfig
		"""
		user = WConfig()
		try:
			user.read_string(text)
		except ConfigParserError as e:
			raise WConfigError('Malformed configuration: %s' % str(e))

		config = cls.defaults()
		for section in user.sections():
			config.merge_section(user, section)
		if seed is not None:
			config.set(cls.__section__, 'seed', str(seed))
		if threads is not None:
			config.set(cls.__section__, 'threads', str(threads))
		return cls(config)

	@classmethod
	@verify_type('paranoid', path=(str, None), seed=(int, None), threads=(int, None))
	def load(cls, path=None, seed=None, threads=None):
		""" Load an INI file or the configuration embedded into a manifest.json

		:param path: file to load (the defaults only if it is None)
		:type path: str | None

		:rtype: WExperimentConfig
		"""
		if path is None:
			text = ''
		else:
			try:
				with open(path) as f:
					text = f.read()
			except OSError as e:
				raise WConfigError('Unable to read the configuration "%s": %s' % (path, str(e)))
			if path.endswith('.json'):
				try:
					text = json.loads(text)['config']
				except (ValueError, KeyError, TypeError) as e:
					raise WConfigError('"%s" is not a manifest with an embedded configuration: %s' % (path, str(e)))
		logger.debug('Configuration is loaded from %s', path if path is not None else 'the defaults')
		return cls.from_text(text, seed=seed, threads=threads)


def options_reference():
	""" Return (name, description) of every supported option in the INI form

	:rtype: str
	"""
	output = io.StringIO()
	for name in __experiment_options__.names():
		option = __experiment_options__.option(name)
		output.write('%s - %s%s\n' % (name, option.description(), ' (list)' if option.multiple() else ''))
	return output.getvalue()
