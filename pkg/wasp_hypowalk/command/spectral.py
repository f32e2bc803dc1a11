# -*- coding: utf-8 -*-
# wasp_hypowalk/command/spectral.py
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

import numpy

from wasp_hypowalk.command.experiment import WExperimentCommand, WExperimentOutcome, __commands_registry__
from wasp_hypowalk.models import model_by_name
from wasp_hypowalk.operator import assemble_transfer, assemble_generator, eigen, markov_checks
from wasp_hypowalk.registry import register_entry
from wasp_hypowalk.spectra import spectral_gap, rescaled_values, rescaled_low_spectrum, cluster_match
from wasp_hypowalk.spectra import generator_levels, block_cluster_match, gap_scaling_fit, weyl_count
from wasp_hypowalk.spectra import generator_consistency, chapman_taylor_check, spectral_projectors, spectrum_rows

logger = logging.getLogger(__name__)

__oracle_tolerance__ = 1e-10
__hill_tolerance__ = 1e-10
__zero_tail__ = 1e-12

__spectrum_columns__ = ('block_n', 'index_in_block', 'eigenvalue', 'rescaled_value')


def report_document(h=None, gap=None, nu_hat=None, order=None, clusters=None, weyl=None, **extra):
	""" Return the spectral report with its fixed fields

	:rtype: dict
	"""
	result = {
		'h': h, 'gap': gap, 'nu_hat': nu_hat, 'order': order,
		'clusters': clusters if clusters is not None else [], 'weyl': weyl if weyl is not None else []
	}
	result.update(extra)
	return result


def reference_nu(model, M, pool=None):
	""" Return the smallest non-zero generator eigenvalue

	:rtype: float
	"""
	values = eigen(assemble_generator(model, M, pool=pool), pool=pool).values
	return float(values[values > 1e-10][0])


def oracle_deviation(model, decomposition, h=None):
	""" Return the largest difference between computed eigenvalues and closed-form ones, None if the model has no
	suitable oracle. Transfer spectra are compared with the flat multipliers, generator blocks with the Hill blocks
	(relative to the largest block value)

	:rtype: float | None
	"""
	oracle = model.oracle()
	M = decomposition.basis.M()
	if decomposition.kind == 'transfer' and hasattr(oracle, 'transfer_multiplier'):
		m, n = numpy.meshgrid(numpy.arange(-M, M + 1), numpy.arange(-M, M + 1))
		expected = numpy.sort(oracle.transfer_multiplier(m, n, h).ravel())[::-1]
		return float(numpy.max(numpy.abs(decomposition.values - expected)))
	if decomposition.kind == 'generator' and hasattr(oracle, 'hill_spectrum'):
		deviations = [
			float(numpy.max(numpy.abs(numpy.sort(values) - oracle.hill_spectrum(n, M))) / max(1.0, numpy.max(values)))
			for n, values in zip(decomposition.block_ids, decomposition.block_values)
		]
		return max(deviations)
	return None


@register_entry(__commands_registry__)
class WSpectrumCommand(WExperimentCommand):
	""" Assemble T_h for every configured step and L, solve and dump spectra
	"""

	__registry_id__ = 'spectrum'
	__description__ = 'assemble T_h and L, solve eigenproblems, run Markov and oracle checks'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		M, q = config['M'], config['q']
		outcome = WExperimentOutcome()
		gaps = []

		generator = eigen(assemble_generator(model, M, pool=pool), pool=pool)
		outcome.add_table('spectrum_generator.csv', __spectrum_columns__, spectrum_rows(generator))
		deviation = oracle_deviation(model, generator)
		if deviation is not None:
			outcome.check('generator_oracle', deviation <= __hill_tolerance__)

		rescaled = None
		for h in config['h']:
			transfer = assemble_transfer(model, h, M, q=q, pool=pool)
			decomposition = eigen(transfer, pool=pool)
			outcome.add_table('spectrum_h%g.csv' % h, __spectrum_columns__, spectrum_rows(decomposition, h))
			outcome.check('markov_h%g' % h, markov_checks(transfer, decomposition).passed())
			deviation = oracle_deviation(model, decomposition, h)
			if deviation is not None:
				outcome.check('transfer_oracle_h%g' % h, deviation <= __oracle_tolerance__)
			gaps.append(spectral_gap(decomposition))
			rescaled = rescaled_values(decomposition, h)

		weyl = weyl_count(rescaled, config['lambdas'])
		outcome.add_document('report.json', report_document(
			h=list(config['h']), gap=gaps, nu_hat=gaps[-1] / config['h'][-1] ** 2, weyl=weyl.rows(),
			weyl_exponent=weyl.exponent
		))
		return outcome


@register_entry(__commands_registry__)
class WGapScanCommand(WExperimentCommand):
	""" g(h) / h^2 sweep with the Richardson limit against the smallest non-zero eigenvalue of L
	"""

	__registry_id__ = 'gap-scan'
	__description__ = 'spectral gaps over decreasing steps and the extrapolated limit of g(h) / h^2'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		scan = gap_scaling_fit(model, config['h'], M=config['M'], q=config['q'], pool=pool)
		nu = reference_nu(model, config['M'], pool=pool)

		outcome = WExperimentOutcome()
		outcome.check('nu_hat', abs(scan.nu_hat - nu) <= config['gap_tolerance'] * nu)
		outcome.check('raw_ratio', abs(scan.ratios[-1] - nu) <= config['raw_tolerance'] * nu)
		outcome.check('monotone', scan.monotone)
		outcome.add_table('gapscan.csv', ('h', 'gap', 'gap_over_h2'), scan.rows())
		outcome.add_document('report.json', report_document(
			h=scan.hs, gap=scan.gaps, nu_hat=scan.nu_hat, order=scan.order, nu=nu, band_ok=scan.band_ok
		))
		return outcome


@register_entry(__commands_registry__)
class WClusterCommand(WExperimentCommand):
	""" Clustering of rescaled eigenvalues around generator eigenvalues with multiplicities. The "levels" method
	uses the closed-form levels of the model (or grouped generator eigenvalues), the "blocks" method pairs
	y-frequency blocks and derives eps from the observed drift
	"""

	__registry_id__ = 'cluster'
	__description__ = 'match rescaled T_h eigenvalues below R with generator eigenvalues and multiplicities'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		h, M, R = config['h'][0], config['M'], config['R']
		transfer = eigen(assemble_transfer(model, h, M, q=config['q'], pool=pool), pool=pool)
		rescaled_low_spectrum(transfer, h, R, C=config['C4'])

		if config['cluster_method'] == 'blocks':
			generator = eigen(assemble_generator(model, M, pool=pool), pool=pool)
			report = block_cluster_match(transfer, generator, h, R, drift_factor=config['drift_factor'])
		else:
			eps = config['eps']
			oracle = model.oracle()
			if hasattr(oracle, 'generator_levels'):
				levels = oracle.generator_levels(R + eps)
			else:
				generator = eigen(assemble_generator(model, M, pool=pool), pool=pool)
				levels = [(x[0], x[1]) for x in generator_levels(generator, R + eps, eps)]
			report = cluster_match(rescaled_low_spectrum(transfer, h, R, C=config['C4']), levels, eps, R=R)

		outcome = WExperimentOutcome()
		outcome.check('clusters', report.passed())
		outcome.add_table(
			'clusters.csv', ('nu', 'm_expected', 'm_found', 'boundary'),
			[(x.nu, x.m_expected, x.m_found, x.boundary) for x in report.clusters]
		)
		outcome.add_document('report.json', report_document(
			h=h, gap=spectral_gap(transfer), clusters=report.rows(), eps=report.eps, drift=report.drift,
			unmatched=report.unmatched, R=R
		))
		return outcome


def _test_function(config, basis):
	coefficients = config['f'].coefficients(basis)
	if config['projector_exp'] is True:
		return basis.project(numpy.exp(basis.evaluate_grid(coefficients).real))
	return coefficients


@register_entry(__commands_registry__)
class WConsistencyCommand(WExperimentCommand):
	""" (1 - T_h) / h^2 against L, the Chapman-Taylor defects and the spectral projector tails
	"""

	__registry_id__ = 'consistency'
	__description__ = 'generator consistency, Chapman-Taylor defects and projector tails over steps'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		hs, M, q = config['h'], config['M'], config['q']
		parts = config['consistency_parts']
		outcome = WExperimentOutcome()
		document = {}

		if 'generator' in parts:
			report = generator_consistency(model, config['f'], hs, q=q, pool=pool)
			outcome.check('generator_consistency', report.passed())
			outcome.add_table('consistency.csv', ('h', 'error'), zip(report.hs, report.errors))
			document['consistency_ratios'] = report.ratios

		if 'chapman' in parts:
			h = hs[-1]
			transfer = assemble_transfer(model, h, M, q=q, pool=pool)
			report = chapman_taylor_check(transfer, h, config['f'].coefficients(transfer.basis()), config['deltas'])
			outcome.check('chapman_taylor', report.variation() <= 2)
			outcome.add_table(
				'chapman_taylor.csv', ('delta', 'defect', 'defect_over_delta2'),
				zip(report.deltas, report.defects, report.scaled)
			)
			document['chapman_taylor_variation'] = report.variation()

		if 'projectors' in parts:
			tails = []
			for h in hs:
				transfer = assemble_transfer(model, h, M, q=q, pool=pool)
				f = _test_function(config, transfer.basis())
				decomposition = eigen(transfer, pool=pool)
				tails.append(spectral_projectors(transfer, h, f, C4=config['C4'], decomposition=decomposition).tail)
			ratios = [b / a if a > __zero_tail__ else 0.0 for a, b in zip(tails, tails[1:])]
			outcome.check('projector_tail', all(x <= 0.3 for x in ratios))
			outcome.add_table('projectors.csv', ('h', 'tail'), zip(hs, tails))
			document['projector_tail_ratios'] = ratios

		outcome.add_document('report.json', report_document(h=list(hs), **document))
		return outcome
