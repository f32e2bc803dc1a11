# -*- coding: utf-8 -*-
# wasp_hypowalk/command/lie.py
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

from fractions import Fraction

import numpy

from wasp_hypowalk.command.experiment import WExperimentCommand, WExperimentOutcome, __commands_registry__
from wasp_hypowalk.nilpotent_lie import build_free_nilpotent, witt_dimension, group_product, dilate, walk_constants
from wasp_hypowalk.nilpotent_lie import commutator_word, evaluate_word, word_remainder_ratios
from wasp_hypowalk.registry import register_entry

__residual_tolerance__ = 1e-12
__remainder_words__ = ((1, 2), (1, 1, 2), (2, 1, 2))


def lie_invariants(s, samples, stream):
	""" Run the invariant suite of a Lie structure

	:param s: Lie structure
	:type s: WLieStructure

	:param samples: number of random triples
	:type samples: int

	:param stream: random stream
	:type stream: numpy.random.Generator

	:rtype: dict
	"""
	dimension = s.dimension()
	a, b, c = (stream.uniform(-1.0, 1.0, size=(samples, dimension)) for _ in range(3))
	left = group_product(s, group_product(s, a, b), c)
	right = group_product(s, a, group_product(s, b, c))
	associativity = float(numpy.max(numpy.abs(left - right)))

	scales = stream.uniform(0.5, 2.0, size=samples)
	dilation = 0.0
	for i in range(samples):
		product = dilate(s, scales[i], group_product(s, a[i], b[i]))
		dilated = group_product(s, dilate(s, scales[i], a[i]), dilate(s, scales[i], b[i]))
		dilation = max(dilation, float(numpy.max(numpy.abs(product - dilated))))

	constants = walk_constants(s)
	word_exact = None
	if s.p() >= 2 and s.r() >= 2:
		alpha = (1, ) * (s.r() - 1) + (2, )
		t = tuple(Fraction(k + 1, k + 2) for k in range(s.r()))
		product = Fraction(1)
		for x in t:
			product *= x
		value = evaluate_word(s, commutator_word(s, alpha), t)
		word_exact = all(x == y * product for x, y in zip(value, s.nested_bracket(alpha)))

	remainders = None
	if s.p() >= 2:
		t = (Fraction(3, 4), Fraction(-2, 3), Fraction(5, 6))
		remainders = {
			','.join(str(k) for k in alpha): word_remainder_ratios(s, alpha, t[:len(alpha)])
			for alpha in __remainder_words__ if len(alpha) < s.r()
		}

	return {
		'p': s.p(), 'r': s.r(), 'D': constants.D, 'Q': constants.Q,
		'layer_dims': list(s.layer_dims()),
		'witt_dims': [witt_dimension(s.p(), j) for j in range(1, s.r() + 1)],
		'b': list(constants.b),
		'b_closed_form': [3 * 2 ** (n - 1) - 2 for n in range(1, s.r() + 1)],
		'P': constants.P,
		'jacobi_defects': len(s.jacobi_defects()),
		'associativity_residual': associativity,
		'dilation_residual': dilation,
		'top_word_exact': word_exact,
		'word_remainders': remainders if remainders else None
	}


@register_entry(__commands_registry__)
class WLieCheckCommand(WExperimentCommand):
	""" Invariant suite of every free nilpotent structure (p', r') with p' <= p and r' <= r of the configuration
	"""

	__registry_id__ = 'lie-check'
	__description__ = 'Witt dimensions, Jacobi identity, BCH associativity, dilations, b_n, P and commutator words'

	def run(self, config, pool):
		stream = numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence(config['seed'])))
		outcome = WExperimentOutcome()
		reports = []
		for p in range(1, config['p'] + 1):
			for r in range(1, config['r'] + 1):
				report = lie_invariants(build_free_nilpotent(p, r), config['lie_samples'], stream)
				suffix = '_p%i_r%i' % (p, r)
				outcome.check('witt_dimensions' + suffix, report['layer_dims'] == report['witt_dims'])
				outcome.check('jacobi' + suffix, report['jacobi_defects'] == 0)
				outcome.check('associativity' + suffix, report['associativity_residual'] <= __residual_tolerance__)
				outcome.check('dilation_homomorphism' + suffix, report['dilation_residual'] <= __residual_tolerance__)
				outcome.check('b_closed_form' + suffix, report['b'] == report['b_closed_form'])
				outcome.check('P' + suffix, report['P'] == sum(x * y for x, y in zip(report['layer_dims'], report['b'])))
				if report['top_word_exact'] is not None:
					outcome.check('top_layer_word' + suffix, report['top_word_exact'])
				if report['word_remainders'] is not None:
					outcome.check('word_remainder' + suffix, all(
						all(y <= x for x, y in zip(ratios, ratios[1:])) for ratios in report['word_remainders'].values()
					))
				reports.append(report)
		outcome.add_document('lie_check.json', {'structures': reports})
		return outcome


@register_entry(__commands_registry__)
class WLieDumpCommand(WExperimentCommand):
	""" Basis and structure constants of the structure (p, r) of the configuration
	"""

	__registry_id__ = 'lie-dump'
	__description__ = 'dump the Hall basis and exact structure constants as CSV'

	def run(self, config, pool):
		s = build_free_nilpotent(config['p'], config['r'])
		outcome = WExperimentOutcome()
		outcome.add_table(
			'basis.csv', ('index', 'label', 'layer'),
			[(i, x, int(d)) for i, (x, d) in enumerate(zip(s.labels(), s.degrees()))]
		)
		outcome.add_table(
			'structure_constants.csv', ('alpha', 'beta', 'gamma', 'numerator', 'denominator'),
			s.structure_constant_rows()
		)
		return outcome
