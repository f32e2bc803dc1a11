# -*- coding: utf-8 -*-
# wasp_hypowalk/command/walk.py
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
import math

from wasp_hypowalk.command.experiment import WExperimentCommand, WExperimentOutcome, __commands_registry__
from wasp_hypowalk.models import model_by_name
from wasp_hypowalk.registry import register_entry
from wasp_hypowalk.sampler import tv_decay_rate, diffusion_limit_test, diffusion_moment_test, minorization_ratio

logger = logging.getLogger(__name__)

__slope_tolerance__ = 1e-6
__order_band__ = (3.5 / 4, 4.5 / 4)


@register_entry(__commands_registry__)
class WWalkTVCommand(WExperimentCommand):
	""" Monte Carlo TV decay to the uniform measure against the spectral gap
	"""

	__registry_id__ = 'walk-tv'
	__description__ = 'TV distance to equilibrium over checkpoints and its exponential rate against g(h)'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		checkpoints = config['checkpoints'] if len(config['checkpoints']) > 0 else None
		decay = tv_decay_rate(
			model, config['h'][0], config['N_w'], config['seed'], B=config['B'], x0=tuple(config['x0']),
			checkpoints=checkpoints, subtract_floor=config['tv_subtract_floor'], M=config['M'], q=config['q'],
			pool=pool, chunk_size=config['chunk_size']
		)
		expected_slope = math.log(1 - decay.gap)

		outcome = WExperimentOutcome()
		outcome.check('tv_rate', decay.passed(0.15))
		outcome.check('deterministic_slope', abs(decay.deterministic_slope - expected_slope) <= __slope_tolerance__)
		outcome.add_table('tv.csv', ('n', 'tv_hat', 'stderr', 'floor'), decay.rows)
		outcome.add_document('tv_fit.json', {
			'h': decay.h, 'gap': decay.gap, 'rate': decay.rate, 'ratio': decay.ratio, 'floor': decay.floor,
			'window': decay.window, 'envelope_violations': decay.envelope_violations,
			'deterministic_slope': decay.deterministic_slope, 'log_one_minus_gap': expected_slope,
			'subtract_floor': config['tv_subtract_floor']
		})
		return outcome


@register_entry(__commands_registry__)
class WDiffuseCommand(WExperimentCommand):
	""" Diffusion limit: Monte Carlo means of f(X_n(t,h)) against T_h^n f(x0) and exp(-t L) f(x0) for every
	configured step and time. Consecutive steps also check that the semigroup error decays as h^2. With more
	than one time the moment test runs at the smallest step
	"""

	__registry_id__ = 'diffuse'
	__description__ = 'Monte Carlo diffusion limit against T_h^n and the semigroup, with the h^2 error order'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		f, x0 = config['f'], tuple(config['x0'])
		outcome = WExperimentOutcome()
		reports = []
		for h in config['h']:
			for t in config['t']:
				report = diffusion_limit_test(
					model, h, t, f, x0, config['N_w'], config['seed'], M=config['M'], q=config['q'], pool=pool,
					chunk_size=config['chunk_size']
				)
				outcome.check('mc_h%g_t%g' % (h, t), report.passed(3))
				reports.append(report)

		orders = []
		for t in config['t']:
			errors = [(x.h, abs(x.matrix_value - x.semigroup_value)) for x in reports if x.t == t]
			for (h1, e1), (h2, e2) in zip(errors, errors[1:]):
				scaled = (e1 / e2) / (h1 / h2) ** 2 if e2 > 0 else math.inf
				orders.append({'t': t, 'h': h1, 'h_next': h2, 'ratio': e1 / e2 if e2 > 0 else None})
				outcome.check('order_h%g_t%g' % (h2, t), __order_band__[0] <= scaled <= __order_band__[1])

		document = {'orders': orders, 'n': [x.n for x in reports], 'z_scores': [x.z_score for x in reports]}
		if len(config['t']) > 1:
			times = sorted(config['t'])
			moments = diffusion_moment_test(
				model, config['h'][-1], times, [f] * len(times), x0, config['N_w'], config['seed'], M=config['M'],
				q=config['q'], pool=pool, chunk_size=config['chunk_size']
			)
			outcome.check('moments', abs(moments.z_score) <= 3)
			document['moments'] = {
				'times': moments.times, 'steps': moments.steps, 'mc_mean': moments.mc_mean,
				'mc_stderr': moments.mc_stderr, 'matrix_value': moments.matrix_value,
				'semigroup_value': moments.semigroup_value
			}

		outcome.add_table(
			'diffusion.csv', ('h', 't', 'mc_mean', 'mc_stderr', 'matrix_value', 'semigroup_value'),
			[x.row() for x in reports]
		)
		outcome.add_document('diffusion.json', document)
		return outcome


@register_entry(__commands_registry__)
class WMinorizeCommand(WExperimentCommand):
	""" Empirical lower bound of the P-step kernel against the box measure S_h^eps
	"""

	__registry_id__ = 'minorize'
	__description__ = 'empirical minorization constant of the P-step kernel and the S-measure mass'

	def run(self, config, pool):
		model = model_by_name(config['model'])
		h, eps = config['h'][0], config['eps']
		report = minorization_ratio(
			model, h, eps, tuple(config['x0']), config['N_s'], config['B'], config['seed'], pool=pool,
			chunk_size=config['chunk_size']
		)

		outcome = WExperimentOutcome()
		outcome.check('c_hat', report.c_hat >= config['c_min'])
		outcome.check('s_mass', report.s_mass_consistent())
		outcome.check('support', report.support_violations == 0)
		document = report.summary()
		document.update({
			'h': h, 'eps': eps, 'P': report.P, 'bins': report.bins, 's_mass_stderr': report.s_mass_stderr,
			's_mass_exact': report.s_mass_exact, 'support_violations': report.support_violations,
			'c_min': config['c_min']
		})
		outcome.add_document('minorization.json', document)
		return outcome
