# -*- coding: utf-8 -*-
# wasp_hypowalk/spectra.py
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

""" Spectral checks of T_h against the generator L: the gap and its h^-2 scaling, the rescaled low spectrum and
its clusters, Weyl counts, Dirichlet forms, spectral projectors, eigenfunction sup-norms and the generator and
Chapman-Taylor expansions
"""

import logging
import math
from dataclasses import dataclass, field

import numpy

from wasp_hypowalk.operator import TRANSFER, GENERATOR, WOperatorError, WEigenDecomposition
from wasp_hypowalk.operator import assemble_transfer, assemble_generator, eigen, quadratic_form, bilinear_form
from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)

__zero_tolerance__ = 1e-10
__linkage_tolerance__ = 1e-12
__range_constant__ = 0.25


class WConnectivityError(ValueError):
	""" This exception is raised when the top eigenvalue 1 of a transfer operator is not simple (the fields do not
	connect the manifold or the step is too coarse)
	"""
	pass


class WClusterWindowError(ValueError):
	""" This exception is raised when cluster windows [nu - eps, nu + eps] are empty or overlap
	"""
	pass


class WSpectralRangeError(ValueError):
	""" This exception is raised when a rescaled level R leaves the regime R <= C h^-2
	"""
	pass


def _values(spectrum):
	if isinstance(spectrum, WEigenDecomposition):
		return numpy.asarray(spectrum.values, dtype=float)
	return numpy.asarray(spectrum, dtype=float)


def spectral_gap(spectrum):
	""" Return 1 - (second largest eigenvalue) of a transfer operator

	:param spectrum: transfer eigenvalues or decomposition
	:type spectrum: WEigenDecomposition | list | numpy.ndarray

	:raise WConnectivityError: if the eigenvalue 1 is not simple

	:rtype: float
	"""
	values = numpy.sort(_values(spectrum))[::-1]
	if len(values) < 2:
		raise ValueError('At least two eigenvalues are required')
	if abs(values[0] - 1) > __zero_tolerance__:
		raise ValueError('Top eigenvalue %.12f is not 1' % values[0])
	if values[1] >= 1 - __zero_tolerance__:
		raise WConnectivityError('Top eigenvalue is degenerate (second eigenvalue %.12f)' % values[1])
	return float(1 - values[1])


def rescaled_values(spectrum, h):
	""" Return (1 - eigenvalue) / h^2 in the ascending order

	:rtype: numpy.ndarray
	"""
	return numpy.sort((1 - _values(spectrum)) / h ** 2)


@verify_value(h=lambda x: x > 0, R=lambda x: x > 0)
def rescaled_low_spectrum(spectrum, h, R, C=__range_constant__):
	""" Return rescaled eigenvalues in (0, R]

	:param spectrum: transfer eigenvalues or decomposition
	:type spectrum: WEigenDecomposition | list | numpy.ndarray

	:param h: step scale
	:type h: float

	:param R: rescaled level
	:type R: float

	:param C: the level must not exceed C h^-2
	:type C: float

	:rtype: numpy.ndarray
	"""
	if R > C / h ** 2:
		raise WSpectralRangeError('Level R=%g is above %g h^-2 = %g' % (R, C, C / h ** 2))
	values = rescaled_values(spectrum, h)
	return values[(values > __zero_tolerance__) & (values <= R)]


@dataclass
class WCluster:
	""" Generator eigenvalue (or a group of close generator eigenvalues) and rescaled values matched to it
	"""
	nu: float
	m_expected: int
	low: float
	high: float
	members: list = field(default_factory=list)
	boundary: bool = False

	@property
	def m_found(self):
		return len(self.members)

	def passed(self):
		""" Exact count inside the window, at most the expected count for a window that crosses the level R
		"""
		if self.boundary:
			return self.m_found <= self.m_expected
		return self.m_found == self.m_expected


@dataclass
class WClusterReport:
	""" Result of matching rescaled eigenvalues to generator clusters
	"""
	eps: float
	clusters: list
	unmatched: list
	drift: float = None

	def passed(self):
		return len(self.unmatched) == 0 and all(x.passed() for x in self.clusters)

	def total(self):
		""" Return number of matched and unmatched values

		:rtype: int
		"""
		return sum(x.m_found for x in self.clusters) + len(self.unmatched)

	def rows(self):
		""" Return JSON-ready cluster descriptions

		:rtype: list of dict
		"""
		return [
			{'nu': x.nu, 'm_expected': x.m_expected, 'm_found': x.m_found, 'members': [float(y) for y in x.members]}
			for x in self.clusters
		]


def _match(values, clusters, eps, R):
	ordered = sorted(clusters, key=lambda x: x.low)
	for previous, current in zip(ordered, ordered[1:]):
		if current.low - eps <= previous.high + eps:
			raise WClusterWindowError(
				'Cluster windows around %g and %g overlap at eps=%g' % (previous.nu, current.nu, eps)
			)
	unmatched = []
	for value in sorted(values):
		for cluster in ordered:
			if cluster.low - eps <= value <= cluster.high + eps:
				cluster.members.append(float(value))
				break
		else:
			unmatched.append(float(value))
	if R is not None:
		for cluster in ordered:
			cluster.boundary = cluster.high + eps > R
	return WClusterReport(eps=eps, clusters=ordered, unmatched=unmatched)


def cluster_match(rescaled, levels, eps, R=None):
	""" Assign rescaled eigenvalues to windows [nu_j - eps, nu_j + eps]

	:param rescaled: rescaled eigenvalues
	:type rescaled: list | numpy.ndarray

	:param levels: generator eigenvalues nu_j with multiplicities m_j
	:type levels: list of (float, int)

	:param eps: half width of a window
	:type eps: float

	:param R: level up to which values were collected. A window that reaches above R needs at most m_j members
	:type R: float | None

	:raise WClusterWindowError: if eps is not positive or windows overlap

	:rtype: WClusterReport
	"""
	if not (eps > 0):
		raise WClusterWindowError('Cluster half width must be positive')
	clusters = [
		WCluster(nu=float(nu), m_expected=int(m), low=float(nu), high=float(nu))
		for nu, m in levels if R is None or nu - eps <= R
	]
	report = _match(rescaled, clusters, eps, R)
	logger.debug(
		'%i values matched to %i clusters at eps=%g, %i unmatched',
		report.total() - len(report.unmatched), len(clusters), eps, len(report.unmatched)
	)
	return report


def _nonzero(values):
	return numpy.sort(values[values > __zero_tolerance__])


def generator_levels(spectrum, R, eps):
	""" Group generator eigenvalues up to R by single linkage at 2 eps

	:rtype: list of (float, int, float, float)
	"""
	values = _nonzero(_values(spectrum))
	values = values[values <= R]
	groups = []
	for value in values:
		if len(groups) > 0 and value - groups[-1][-1] <= 2 * eps * (1 + __linkage_tolerance__):
			groups[-1].append(value)
		else:
			groups.append([value])
	return [(float(numpy.mean(x)), len(x), float(x[0]), float(x[-1])) for x in groups]


def block_cluster_match(transfer, generator, h, R, drift_factor=5.0):
	""" Match rescaled eigenvalues of every y-frequency block with generator eigenvalues of the same block. The
	k-th rescaled value of a block is paired with the k-th generator value, the largest difference is the drift,
	windows are eps = drift_factor * drift wide around single linkage groups (at 2 eps) of generator values

	:param transfer: decomposition of a blocked transfer operator
	:type transfer: WEigenDecomposition

	:param generator: decomposition of a blocked generator with the same blocks
	:type generator: WEigenDecomposition

	:param h: step scale
	:type h: float

	:param R: rescaled level
	:type R: float

	:param drift_factor: window width in drifts
	:type drift_factor: float

	:rtype: WClusterReport
	"""
	if transfer.kind != TRANSFER or generator.kind != GENERATOR:
		raise WOperatorError('Transfer and generator decompositions expected')
	if tuple(transfer.block_ids) != tuple(generator.block_ids) or transfer.block_ids[0] is None:
		raise WOperatorError('Both operators must be blocked over the same y-frequencies')

	drift = 0.0
	rescaled = []
	for t_values, g_values in zip(transfer.block_values, generator.block_values):
		block_rescaled = _nonzero((1 - t_values) / h ** 2)
		block_generator = _nonzero(g_values)
		pairs = max(int(numpy.sum(block_rescaled <= R)), int(numpy.sum(block_generator <= R)))
		pairs = min(pairs, len(block_rescaled), len(block_generator))
		if pairs > 0:
			drift = max(drift, float(numpy.max(numpy.abs(block_rescaled[:pairs] - block_generator[:pairs]))))
		rescaled.extend(block_rescaled[block_rescaled <= R])

	eps = max(drift_factor * drift, __zero_tolerance__)
	clusters = [
		WCluster(nu=nu, m_expected=m, low=low, high=high)
		for nu, m, low, high in generator_levels(generator, R + 2 * eps, eps)
	]
	report = _match(rescaled, clusters, eps, R)
	report.drift = drift
	logger.info(
		'Block cluster match at R=%g: drift %.4g, eps %.4g, %i clusters, %i unmatched',
		R, drift, eps, len(clusters), len(report.unmatched)
	)
	return report


@dataclass
class WGapScan:
	""" Gaps over a decreasing sequence of steps
	"""
	hs: list
	gaps: list
	ratios: list
	nu_hat: float
	order: float
	band_ok: bool
	monotone: bool

	def rows(self):
		""" Return (h, gap, gap_over_h2) rows

		:rtype: list of tuple
		"""
		return list(zip(self.hs, self.gaps, self.ratios))


def richardson(hs, ratios):
	""" Return limit estimates from consecutive pairs assuming an h^2 leading error

	:rtype: list of float
	"""
	result = []
	for (h1, q1), (h2, q2) in zip(zip(hs, ratios), zip(hs[1:], ratios[1:])):
		s = (h1 / h2) ** 2
		result.append((s * q2 - q1) / (s - 1))
	return result


def gap_scan(gaps, hs):
	""" Fit gaps that are already computed. See :func:`.gap_scaling_fit`

	:rtype: WGapScan
	"""
	hs = [float(x) for x in hs]
	if len(hs) < 2:
		raise ValueError('At least two step scales are required')
	if any(b >= a for a, b in zip(hs, hs[1:])):
		raise ValueError('Step scales must decrease')
	ratios = [g / h ** 2 for g, h in zip(gaps, hs)]
	estimates = richardson(hs, ratios)
	nu_hat = estimates[-1]

	order = None
	if len(hs) >= 3:
		first, second = ratios[-3] - ratios[-2], ratios[-2] - ratios[-1]
		if first != 0 and second != 0 and first / second > 0:
			order = math.log(first / second) / math.log(hs[-3] / hs[-2])

	band_ok = all(0.5 * nu_hat <= x <= 1.5 * nu_hat for x in ratios)
	monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
	if monotone is False:
		logger.warning('Gap sequence %s is not monotone', str(gaps))
	if band_ok is False:
		logger.warning('Rescaled gaps %s leave the band [0.5, 1.5] * %g', str(ratios), nu_hat)
	return WGapScan(
		hs=hs, gaps=list(gaps), ratios=ratios, nu_hat=nu_hat, order=order, band_ok=band_ok, monotone=monotone
	)


@verify_type('paranoid', M=int, q=int)
def gap_scaling_fit(model, hs, M=16, q=48, pool=None):
	""" Compute g(h) for every step and extrapolate lim g(h) / h^2 (Richardson over the two smallest steps). The
	observed order is estimated when three steps are given

	:param model: torus model
	:type model: WTorusModel

	:param hs: decreasing step scales (at least two)
	:type hs: list of float

	:param M: frequency cutoff
	:type M: int

	:param q: quadrature order
	:type q: int

	:param pool: pool for block tasks
	:type pool: WOrderedPool | None

	:rtype: WGapScan
	"""
	hs = list(hs)
	if len(hs) < 2:
		raise ValueError('At least two step scales are required')
	gaps = [spectral_gap(eigen(assemble_transfer(model, h, M, q=q, pool=pool), pool=pool)) for h in hs]
	result = gap_scan(gaps, hs)
	logger.info('Gap scan of "%s": nu_hat=%.10g, order=%s', model.name(), result.nu_hat, str(result.order))
	return result


@dataclass
class WWeylReport:
	""" Counting function N(lambda) of rescaled eigenvalues and its log-log slope against 1 + lambda
	"""
	lambdas: list
	counts: list
	exponent: float

	def rows(self):
		return [{'lambda': float(x), 'count': int(y)} for x, y in zip(self.lambdas, self.counts)]


def weyl_count(rescaled, lambdas):
	""" Count rescaled eigenvalues (the zero mode excluded) that do not exceed every lambda

	:rtype: WWeylReport
	"""
	values = _nonzero(numpy.asarray(rescaled, dtype=float))
	lambdas = numpy.asarray(lambdas, dtype=float)
	counts = numpy.searchsorted(values, lambdas, side='right')
	positive = counts > 0
	exponent = None
	if numpy.sum(positive) >= 2:
		exponent = float(numpy.polyfit(numpy.log1p(lambdas[positive]), numpy.log(counts[positive]), 1)[0])
	return WWeylReport(lambdas=list(lambdas), counts=[int(x) for x in counts], exponent=exponent)


def _check_pair(transfer, generator):
	if transfer.kind() != TRANSFER or generator.kind() != GENERATOR:
		raise WOperatorError('Transfer operator and generator expected')
	if transfer.basis().M() != generator.basis().M():
		raise WOperatorError('Operators must share a basis')


def dirichlet_forms(transfer, generator, h, u):
	""" Return E_h(u) = ((1 - T_h) u | u) / h^2 and E(u) = (L u | u)

	:rtype: tuple of float
	"""
	_check_pair(transfer, generator)
	norm = float(numpy.vdot(u, u).real)
	return (norm - quadratic_form(transfer, u)) / h ** 2, quadratic_form(generator, u)


def dirichlet_bilinear(transfer, generator, h, f, g):
	""" Return B_h(f, g) = (f | (1 - T_h) g) / h^2 and B(f, g) = (f | L g)

	:rtype: tuple of complex
	"""
	_check_pair(transfer, generator)
	return (complex(numpy.vdot(f, g)) - bilinear_form(transfer, f, g)) / h ** 2, bilinear_form(generator, f, g)


@dataclass
class WConsistencyReport:
	""" Sup-norm errors of (1 - T_h) g / h^2 - L g over steps and theirs successive ratios
	"""
	hs: list
	errors: list
	ratios: list

	def passed(self, low=3.5, high=4.5):
		return all(low <= x <= high for x in self.ratios)


def generator_consistency(model, g, hs, M=None, q=48, pool=None):
	""" Measure max |(1 - T_h) g / h^2 - L g| on the evaluation grid

	:param model: torus model
	:type model: WTorusModel

	:param g: test function
	:type g: WTrigPolynomial

	:param hs: step scales
	:type hs: list of float

	:param M: frequency cutoff (bandwidth of g plus 8 by default)
	:type M: int | None

	:rtype: WConsistencyReport
	"""
	M = g.bandwidth() + 8 if M is None else M
	generator = assemble_generator(model, M, pool=pool)
	basis = generator.basis()
	coefficients = g.coefficients(basis)
	target = generator.matvec(coefficients)

	errors = []
	for h in hs:
		transfer = assemble_transfer(model, h, M, q=q, pool=pool)
		difference = (coefficients - transfer.matvec(coefficients)) / h ** 2 - target
		errors.append(float(numpy.max(numpy.abs(basis.evaluate_grid(difference)))))
	ratios = [a / b if b > 0 else math.inf for a, b in zip(errors, errors[1:])]
	logger.info('Generator consistency of "%s": errors %s, ratios %s', model.name(), str(errors), str(ratios))
	return WConsistencyReport(hs=list(hs), errors=errors, ratios=ratios)


@dataclass
class WProjection:
	""" Split of a function by the eigenvalue threshold 1 - C4
	"""
	low: numpy.ndarray
	high: numpy.ndarray
	tail: float


def spectral_projectors(transfer, h, f, C4=__range_constant__, decomposition=None, grid_size=None):
	""" Split f into the low band (eigenvalues >= 1 - C4, rescaled values <= C4 h^-2) and the rest

	:param transfer: transfer operator
	:type transfer: WGalerkinOperator

	:param h: step scale
	:type h: float

	:param f: function coefficients
	:type f: numpy.ndarray

	:param C4: band constant
	:type C4: float

	:rtype: WProjection
	"""
	decomposition = decomposition if decomposition is not None else eigen(transfer)
	weights = decomposition.coordinates(f)
	in_band = decomposition.values >= 1 - C4
	low = decomposition.synthesize(numpy.where(in_band, weights, 0))
	high = decomposition.synthesize(numpy.where(in_band, 0, weights))
	tail = float(numpy.max(numpy.abs(transfer.basis().evaluate_grid(high, grid_size))))
	logger.debug('Projector tail at h=%g: %.3e', h, tail)
	return WProjection(low=low, high=high, tail=tail)


@dataclass
class WSupNormScan:
	""" Grid sup-norms of normalized real eigenfunctions of the low band
	"""
	rescaled: list
	supnorms: list
	exponent: float


def real_eigenfunction_supnorm(basis, coefficients, block_n, grid_size=None):
	""" Return the grid sup-norm of a normalized real eigenfunction built from an eigenvector. A vector of the
	y-frequency n != 0 gives exp(2 pi i n y) g(x) with real coefficients of g, so sqrt(2) Re(...) is a unit real
	eigenfunction with the sup-norm sqrt(2) max |g|. Otherwise the larger of the real and the imaginary parts is
	normalized

	:rtype: float
	"""
	values = basis.evaluate_grid(coefficients, grid_size)
	if block_n is not None and block_n != 0:
		return math.sqrt(2) * float(numpy.max(numpy.abs(values)))
	real, imaginary = values.real, values.imag
	real_norm, imaginary_norm = numpy.sqrt(numpy.mean(real ** 2)), numpy.sqrt(numpy.mean(imaginary ** 2))
	if real_norm >= imaginary_norm:
		return float(numpy.max(numpy.abs(real)) / real_norm)
	return float(numpy.max(numpy.abs(imaginary)) / imaginary_norm)


def eigenfunction_supnorm_scan(transfer, h, C4=__range_constant__, decomposition=None, grid_size=None):
	""" Return sup-norms of low band eigenfunctions and the log-log slope of sup-norms against <lambda>

	:rtype: WSupNormScan
	"""
	decomposition = decomposition if decomposition is not None else eigen(transfer)
	basis = transfer.basis()
	indices = numpy.nonzero(decomposition.values >= 1 - C4)[0]
	if len(indices) == 0:
		raise WSpectralRangeError('Low band is empty')

	rescaled, supnorms = [], []
	for j in indices:
		rescaled.append(float((1 - decomposition.values[j]) / h ** 2))
		supnorms.append(
			real_eigenfunction_supnorm(basis, decomposition.vector(j), decomposition.block_n(j), grid_size)
		)
	brackets = numpy.log(numpy.sqrt(1 + numpy.asarray(rescaled) ** 2))
	exponent = None
	if len(indices) >= 2 and numpy.ptp(brackets) > 0:
		exponent = float(numpy.polyfit(brackets, numpy.log(supnorms), 1)[0])
	return WSupNormScan(rescaled=rescaled, supnorms=supnorms, exponent=exponent)


@dataclass
class WChapmanTaylorReport:
	""" Sup defects D(delta) = max over n h^2 <= delta of |T^n f - f + n (1 - T) f|
	"""
	deltas: list
	defects: list
	scaled: list

	def variation(self):
		""" Return max / min of D(delta) / delta^2

		:rtype: float
		"""
		positive = [x for x in self.scaled if x > 0]
		return max(positive) / min(positive) if len(positive) > 0 else math.inf


def steps_count(t, h):
	""" Return the greatest n with n h^2 <= t. Binary rounding of t / h^2 is absorbed by a relative guard

	:rtype: int
	"""
	return int(math.floor(t / h ** 2 * (1 + 1e-12)))


def chapman_taylor_check(transfer, h, f, deltas, grid_size=None):
	""" Compute the Chapman-Taylor defects for every delta

	:param transfer: transfer operator
	:type transfer: WGalerkinOperator

	:param h: step scale
	:type h: float

	:param f: function coefficients
	:type f: numpy.ndarray

	:param deltas: time scales (n h^2 <= delta <= 1)
	:type deltas: list of float

	:rtype: WChapmanTaylorReport
	"""
	if any(not (0 < x <= 1) for x in deltas):
		raise ValueError('Every delta must be in (0, 1]')
	basis = transfer.basis()
	f = numpy.asarray(f, dtype=complex)
	increment = f - transfer.matvec(f)
	limit = max(steps_count(x, h) for x in deltas)

	sup_defects = [0.0]
	power = f
	for n in range(1, limit + 1):
		power = transfer.matvec(power)
		defect = power - f + n * increment
		sup_defects.append(float(numpy.max(numpy.abs(basis.evaluate_grid(defect, grid_size)))))
	cumulative = numpy.maximum.accumulate(sup_defects)

	defects = [float(cumulative[steps_count(x, h)]) for x in deltas]
	scaled = [d / x ** 2 for d, x in zip(defects, deltas)]
	return WChapmanTaylorReport(deltas=list(deltas), defects=defects, scaled=scaled)


def spectrum_rows(decomposition, h=None):
	""" Return (block_n, index_in_block, eigenvalue, rescaled_value) rows in the merged order. The rescaled value
	is (1 - eigenvalue) / h^2 for transfer operators and the eigenvalue itself for generators

	:rtype: list of tuple
	"""
	counters = {}
	rows = []
	for j, value in enumerate(decomposition.values):
		block = int(decomposition.block_of[j])
		index = counters.get(block, 0)
		counters[block] = index + 1
		rescaled = (1 - value) / h ** 2 if decomposition.kind == TRANSFER else value
		rows.append((decomposition.block_n(j), index, float(value), float(rescaled)))
	return rows
