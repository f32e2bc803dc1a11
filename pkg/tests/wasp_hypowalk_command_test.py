# -*- coding: utf-8 -*-

import json
import os

import pytest

from wasp_hypowalk.command.proto import WCommandProto, WCommandResultProto, WCommandSelector
from wasp_hypowalk.command.enhanced import WCommandArgumentParsingError, WCommandArgumentDescriptor
from wasp_hypowalk.command.enhanced import WCommandArgumentParser, WEnhancedCommand
from wasp_hypowalk.command.result import WPlainCommandResult, WExperimentResult
from wasp_hypowalk.command.experiment import WExperimentCommand, WExperimentOutcome, json_ready, versions
from wasp_hypowalk.command.experiment import experiment_commands
from wasp_hypowalk.config import WConfigError

import wasp_hypowalk.command.lie  # noqa: F401
import wasp_hypowalk.command.spectral  # noqa: F401
import wasp_hypowalk.command.walk  # noqa: F401

import numpy


def test_exceptions():
	assert(issubclass(WCommandArgumentParsingError, ValueError) is True)


def test_abstract():
	pytest.raises(TypeError, WCommandProto)
	pytest.raises(NotImplementedError, WCommandProto.match, None)
	pytest.raises(NotImplementedError, WCommandProto.exec, None)

	pytest.raises(TypeError, WCommandResultProto)
	pytest.raises(NotImplementedError, WCommandResultProto.__str__, None)
	pytest.raises(NotImplementedError, WCommandResultProto.exit_code, None)

	pytest.raises(TypeError, WEnhancedCommand, 'cmd')
	pytest.raises(NotImplementedError, WEnhancedCommand._exec, None, {})
	pytest.raises(NotImplementedError, WExperimentCommand.run, None, None, None)


class TestWCommandProto:

	def test(self):
		tokens = ('spectrum', '--config', 'my configs/a.ini', '--seed', '1')
		join_result = WCommandProto.join_tokens(*tokens)
		assert(join_result == "spectrum --config 'my configs/a.ini' --seed 1")


class TestWCommandArgumentParser:

	def test(self):
		parser = WCommandArgumentParser(
			WCommandArgumentDescriptor('--config', meta_var='PATH', help_info='config file'),
			WCommandArgumentDescriptor(
				'--seed', casting_helper=WCommandArgumentDescriptor.IntegerArgumentCastingHelper(
					validate_fn=lambda x: x >= 0
				)
			),
			WCommandArgumentDescriptor('--out', required=True),
			WCommandArgumentDescriptor('--verbose', flag_mode=True),
			WCommandArgumentDescriptor('--quiet', flag_mode=True),
			conflicts=[('--verbose', '--quiet')]
		)

		result = parser.parse('--out', 'dir', '--seed', '12', '--verbose')
		assert(result == {'--out': 'dir', '--seed': 12, '--verbose': True, '--quiet': False})

		result = parser.parse('--config', 'a.ini', '--out', 'dir')
		assert(result == {'--config': 'a.ini', '--out': 'dir', '--verbose': False, '--quiet': False})

		pytest.raises(WCommandArgumentParsingError, parser.parse, '--seed', '1')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out', 'a', '--seed', 'x')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out', 'a', '--seed', '-1')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out', 'a', '--out', 'b')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out', 'a', '--unknown')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out')
		pytest.raises(WCommandArgumentParsingError, parser.parse, '--out', 'a', '--verbose', '--quiet')

		help_info = dict(parser.arguments_help())
		assert(help_info['--config [PATH]'] == 'config file')
		assert(help_info['--seed [value]'] == 'argument description unavailable')
		assert(help_info['--out [value]'].endswith('(required)'))
		assert('--verbose' in help_info)

	def test_errors(self):
		descriptor = WCommandArgumentDescriptor('--a')
		pytest.raises(ValueError, WCommandArgumentParser, descriptor, conflicts=[('--a', '--b')])
		pytest.raises(ValueError, WCommandArgumentDescriptor, '')
		pytest.raises(
			TypeError, WCommandArgumentDescriptor, '--a', flag_mode=True,
			casting_helper=WCommandArgumentDescriptor.IntegerArgumentCastingHelper()
		)

	def test_error_message(self):
		helper = WCommandArgumentDescriptor.IntegerArgumentCastingHelper(
			validate_fn=lambda x: x > 0, error_message='positive threads expected'
		)
		assert(helper.cast('--threads', '4') == 4)
		with pytest.raises(WCommandArgumentParsingError) as e:
			helper.cast('--threads', '0')
		assert(str(e.value) == 'positive threads expected')


class TestWEnhancedCommand:

	class Command(WEnhancedCommand):

		def __init__(self):
			WEnhancedCommand.__init__(self, 'echo', WCommandArgumentDescriptor('--text', required=True))

		def _exec(self, command_arguments, **command_env):
			return WPlainCommandResult(command_arguments['--text'] + command_env.get('suffix', ''))

	def test(self):
		command = TestWEnhancedCommand.Command()
		assert(command.command_token() == 'echo')
		assert(command.match('echo', '--text', 'a') is True)
		assert(command.match('print') is False)
		assert(command.match() is False)

		result = command.exec('echo', '--text', 'hello', suffix='!')
		assert(str(result) == 'hello!')
		assert(result.exit_code() == 0)

		pytest.raises(RuntimeError, command.exec, 'print', '--text', 'a')
		pytest.raises(WCommandArgumentParsingError, command.exec, 'echo')
		assert('--text [value]' in command.command_help())

	def test_selector(self):
		selector = WCommandSelector()
		assert(len(selector) == 0)
		command = TestWEnhancedCommand.Command()
		selector.add(command)
		assert(len(selector) == 1)
		assert(selector.select('echo', '--text', 'a') is command)
		assert(selector.select('print') is None)
		assert(list(selector) == [command])


class TestWExperimentResult:

	def test(self):
		result = WExperimentResult('spectrum', {'a': True, 'b': numpy.bool_(True)}, ['x.csv'], 'out')
		assert(result.subcommand() == 'spectrum')
		assert(result.checks() == {'a': True, 'b': True})
		assert(result.artifacts() == ('x.csv', ))
		assert(result.output_dir() == 'out')
		assert(result.passed() is True)
		assert(result.exit_code() == 0)
		assert(str(result).splitlines()[0] == 'spectrum: passed')

		result = WExperimentResult('spectrum', {'a': True, 'b': False}, [], 'out')
		assert(result.passed() is False)
		assert(result.exit_code() == 1)
		assert('\tb: failed' in str(result))

		assert(WExperimentResult('lie-dump', {}, [], 'out').exit_code() == 0)


def test_json_ready():
	document = json_ready({
		'a': numpy.float64(0.5), 'b': numpy.arange(3), 'c': (numpy.bool_(True), None), 1: float('nan'),
		'd': [numpy.int32(4), 'x']
	})
	assert(document == {'a': 0.5, 'b': [0, 1, 2], 'c': [True, None], '1': None, 'd': [4, 'x']})
	json.dumps(document)


class TestWExperimentOutcome:

	def test(self):
		outcome = WExperimentOutcome()
		outcome.check('a', numpy.float64(1.0) < 2)
		outcome.check('b', False)
		assert(outcome.checks == {'a': True, 'b': False})
		outcome.add_table('t.csv', ['x'], zip([1, 2]))
		assert(outcome.tables == [('t.csv', ('x', ), [(1, ), (2, )])])
		outcome.add_document('r.json', {'v': numpy.float32(0.5)})
		assert(outcome.documents == {'r.json': {'v': 0.5}})


def test_versions():
	result = versions()
	assert(set(result.keys()) == {'wasp-hypowalk', 'python', 'numpy', 'scipy', 'sympy'})


class TestWExperimentCommand:

	def test_commands(self):
		names = [x.command_token() for x in experiment_commands()]
		assert(names == sorted([
			'cluster', 'consistency', 'diffuse', 'gap-scan', 'lie-check', 'lie-dump', 'minorize', 'spectrum',
			'walk-tv'
		]))
		for command in experiment_commands():
			assert(isinstance(command, WExperimentCommand) is True)
			assert(len(command.description()) > 0)

	def test_output_dir(self):
		assert(WExperimentCommand.output_dir({'--out': 'a'}, {'HYPOWALK_OUT': 'b'}) == 'a')
		assert(WExperimentCommand.output_dir({}, {'HYPOWALK_OUT': 'b'}) == 'b')
		assert(WExperimentCommand.output_dir({}, {}) == 'hypowalk-out')

	def test_help(self):
		command = [x for x in experiment_commands() if x.command_token() == 'spectrum'][0]
		result = command.exec('spectrum', '--help')
		assert(isinstance(result, WPlainCommandResult) is True)
		assert('--config [PATH]' in str(result))
		assert('--threads [N]' in str(result))

	def test_lie_dump(self, temp_dir):
		command = [x for x in experiment_commands() if x.command_token() == 'lie-dump'][0]
		result = command.exec('lie-dump', '--out', temp_dir, '--threads', '1', environ={})
		assert(result.exit_code() == 0)
		assert(set(result.artifacts()) == {'basis.csv', 'structure_constants.csv', 'manifest.json'})

		with open(os.path.join(temp_dir, 'basis.csv')) as f:
			assert(f.read().splitlines()[0] == 'index,label,layer')
		with open(os.path.join(temp_dir, 'manifest.json')) as f:
			manifest = json.load(f)
		assert(manifest['subcommand'] == 'lie-dump')
		assert(manifest['exit_code'] == 0)
		assert(manifest['checks'] == {})
		assert(manifest['config'].startswith('[hypowalk]\n'))
		assert(len(manifest['config_sha256']) == 64)
		assert(manifest['wall_time'] >= 0)

	def test_subcommand_mismatch(self, temp_dir, temp_file):
		with open(temp_file, 'w') as f:
			f.write('[hypowalk]\nsubcommand = spectrum\n')
		command = [x for x in experiment_commands() if x.command_token() == 'lie-dump'][0]
		out = os.path.join(temp_dir, 'out')
		pytest.raises(WConfigError, command.exec, 'lie-dump', '--config', temp_file, '--out', out)
		assert(os.path.exists(out) is False)
