# -*- coding: utf-8 -*-
# wasp_hypowalk/sampler.py
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

""" Monte Carlo side of the random walk: x_(n+1) = exp(t X_k) x_n with k uniform in {1, ..., p} and t uniform in
[-h, h].

Walkers are processed in chunks. The chunk c draws from Generator(Philox(SeedSequence([seed, c]))), so results
depend on the seed and the chunk size only and never on the number of threads
"""

import logging
import math
import time
from dataclasses import dataclass, field

import numpy
import scipy.stats

from wasp_hypowalk.fourier import WFourierBasis
from wasp_hypowalk.models import WModelError
from wasp_hypowalk.nilpotent_lie import walk_constants, sample_box, box_volume_estimate, dilate
from wasp_hypowalk.operator import assemble_transfer, assemble_generator, eigen, apply_power, semigroup
from wasp_hypowalk.spectra import spectral_gap, steps_count
from wasp_hypowalk.thread import WCriticalResource, WOrderedPool
from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)

__default_chunk_size__ = 8192
__histogram_memory_limit__ = 2 ** 30
__min_bin_count__ = 50
__min_walkers__ = 10 ** 4


class WWalkDiagnosticError(ValueError):
	""" This exception is raised when a Monte Carlo diagnostic can not be computed: the TV fit window has too few
	checkpoints or histograms would not fit into memory
	"""
	pass


def chunk_stream(seed, chunk):
	""" Return the random stream of a walker chunk

	:rtype: numpy.random.Generator
	"""
	return numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence([int(seed), int(chunk)])))


def _check_step(h):
	if not (0 < h <= 0.5):
		raise ValueError('Step scale h must be in (0, 0.5], got %s' % str(h))


def advance(model, h, positions, stream):
	""" Make one step for every walker. Field indices are drawn before times

	:param model: model to walk on
	:type model: WModelProto

	:param h: step scale
	:type h: float

	:param positions: walker positions (N, 2)
	:type positions: numpy.ndarray

	:param stream: random stream
	:type stream: numpy.random.Generator

	:rtype: numpy.ndarray
	"""
	size = positions.shape[0]
	k = stream.integers(1, model.fields_count() + 1, size=size)
	t = stream.uniform(-h, h, size=size)
	return model.flow(k, t, positions)


@dataclass
class WWalkState:
	""" Position of a single walker, its step count and its random stream
	"""
	position: numpy.ndarray
	n: int
	stream: numpy.random.Generator


def start(model, x0, seed):
	""" Return a walker at x0 with a fresh stream

	:rtype: WWalkState
	"""
	return WWalkState(position=model.canonicalize(numpy.asarray(x0, dtype=float)), n=0, stream=chunk_stream(seed, 0))


def step(model, h, state, forced=None):
	""" Make a single step

	:param model: model to walk on
	:type model: WModelProto

	:param h: step scale (0 < h <= 0.5)
	:type h: float

	:param state: current state
	:type state: WWalkState

	:param forced: (k, t) pair to use instead of random draws
	:type forced: tuple | None

	:rtype: WWalkState
	"""
	_check_step(h)
	if forced is not None:
		k, t = forced
	else:
		k = int(state.stream.integers(1, model.fields_count() + 1))
		t = float(state.stream.uniform(-h, h))
	return WWalkState(position=model.flow(k, t, state.position), n=state.n + 1, stream=state.stream)


def _chunks(total, chunk_size):
	return [(c, c * chunk_size, min(chunk_size, total - c * chunk_size)) for c in range(-(-total // chunk_size))]


def _run_chunks(model, h, x0, total, seed, stops, visit, pool=None, chunk_size=None):
	""" Walk every chunk up to the last stop and call visit(offset, n, positions) at every stop
	"""
	_check_step(h)
	chunk_size = __default_chunk_size__ if chunk_size is None else chunk_size
	stops = sorted(set(int(x) for x in stops))
	if len(stops) == 0 or stops[0] < 0:
		raise ValueError('Non-negative step counts expected')
	x0 = model.canonicalize(numpy.asarray(x0, dtype=float))
	pool = pool if pool is not None else WOrderedPool(1)

	def chunk_task(task):
		chunk, offset, size = task
		stream = chunk_stream(seed, chunk)
		positions = numpy.tile(x0, (size, 1))
		stop_index = 0
		for n in range(stops[-1] + 1):
			if n > 0:
				positions = advance(model, h, positions, stream)
			if n == stops[stop_index]:
				visit(offset, n, positions)
				stop_index += 1
		return size

	started = time.monotonic()
	tasks = _chunks(total, chunk_size)
	pool.map(chunk_task, tasks)
	logger.debug(
		'%i walkers (%i chunks) made %i steps on "%s" in %.3fs',
		total, len(tasks), stops[-1], model.name(), time.monotonic() - started
	)


@dataclass
class WHistogram:
	""" B x B uniform bins over the torus, counts[iy, ix]
	"""
	B: int
	counts: numpy.ndarray
	total: int

	def frequencies(self):
		return self.counts / self.total


def bin_counts(positions, B):
	""" Return the B x B histogram counts of torus points

	:rtype: numpy.ndarray
	"""
	cells = numpy.minimum((positions * B).astype(int), B - 1)
	flat = numpy.bincount(cells[:, 1] * B + cells[:, 0], minlength=B * B)
	return flat.reshape(B, B)


class WHistogramAccumulator(WCriticalResource):
	""" Histograms of every checkpoint. Chunk counts are merged as soon as a chunk reaches a checkpoint
	"""

	def __init__(self, checkpoints, B, binning=None):
		""" Create empty histograms

		:param checkpoints: step counts
		:type checkpoints: list of int

		:param B: bins per axis
		:type B: int

		:param binning: function that returns (B, B) counts of walker positions (uniform torus bins by default)
		:type binning: callable | None
		"""
		WCriticalResource.__init__(self)
		self.__B = B
		self.__binning = binning if binning is not None else (lambda x: bin_counts(x, B))
		self.__counts = {int(x): numpy.zeros((B, B), dtype=numpy.int64) for x in checkpoints}

	@WCriticalResource.critical_section()
	def add(self, n, counts):
		""" Merge chunk counts of the checkpoint n
		"""
		self.__counts[n] += counts.astype(numpy.int64)

	def visit(self, offset, n, positions):
		""" Callback of a chunk walk
		"""
		self.add(n, self.__binning(positions))

	@WCriticalResource.critical_section()
	def counts(self, n):
		""" Return merged counts of the checkpoint n

		:rtype: numpy.ndarray
		"""
		return self.__counts[n].copy()

	def histograms(self):
		""" Return merged histograms in the checkpoint order

		:rtype: list of WHistogram
		"""
		result = []
		for n in sorted(self.__counts):
			counts = self.counts(n)
			result.append(WHistogram(B=self.__B, counts=counts, total=int(counts.sum())))
		return result


@dataclass
class WEnsemble:
	""" Histograms of a walker ensemble at checkpoints
	"""
	checkpoints: list
	histograms: list


@verify_type('paranoid', N_w=int, seed=int, B=int)
@verify_value(N_w=lambda x: x >= __min_walkers__, B=lambda x: x > 0)
def run_ensemble(model, h, checkpoints, N_w, x0, seed, B=32, pool=None, chunk_size=None):
	""" Walk N_w walkers from x0 and build histograms at checkpoints

	:param model: torus model
	:type model: WTorusModel

	:param h: step scale
	:type h: float

	:param checkpoints: step counts at which histograms are taken
	:type checkpoints: list of int

	:param N_w: number of walkers (at least 10^4, TV estimates are dominated by noise otherwise)
	:type N_w: int

	:param x0: start point
	:type x0: numpy.ndarray

	:param seed: ensemble seed
	:type seed: int

	:param B: bins per axis
	:type B: int

	:param pool: pool for chunk tasks (serial by default)
	:type pool: WOrderedPool | None

	:param chunk_size: walkers per chunk
	:type chunk_size: int | None

	:rtype: WEnsemble
	"""
	if model.is_compact() is False:
		raise WModelError('Histograms are defined for torus models only ("%s" is not)' % model.name())
	checkpoints = sorted(set(int(x) for x in checkpoints))
	if B * B * len(checkpoints) * 8 > __histogram_memory_limit__:
		raise WWalkDiagnosticError(
			'Histograms of %i bins for %i checkpoints exceed the memory limit' % (B * B, len(checkpoints))
		)

	accumulator = WHistogramAccumulator(checkpoints, B)
	_run_chunks(model, h, x0, N_w, seed, checkpoints, accumulator.visit, pool=pool, chunk_size=chunk_size)
	return WEnsemble(checkpoints=checkpoints, histograms=accumulator.histograms())


def tv_to_uniform(histogram):
	""" Return 1/2 sum_b |count_b / N - 1 / B^2|. The estimate is biased upwards by the multinomial noise, see
	:func:`.tv_noise_floor`

	:rtype: float
	"""
	uniform = 1.0 / histogram.B ** 2
	return float(0.5 * numpy.sum(numpy.abs(histogram.frequencies() - uniform)))


def tv_stderr(histogram):
	""" Return the delta-method standard error of :func:`.tv_to_uniform` under the multinomial model

	:rtype: float
	"""
	frequencies = histogram.frequencies()
	signs = numpy.sign(frequencies - 1.0 / histogram.B ** 2)
	variance = (numpy.sum(signs ** 2 * frequencies) - numpy.sum(signs * frequencies) ** 2) / histogram.total
	return float(0.5 * math.sqrt(max(variance, 0.0)))


def tv_noise_floor(N_w, B):
	""" Return the expected TV estimate at equilibrium: (B^2 / 2) sqrt(2 / pi) sqrt(q (1 - q) / N_w), q = 1 / B^2.
	The floor scales as N_w^(-1/2)

	:rtype: float
	"""
	q = 1.0 / B ** 2
	return 0.5 * B ** 2 * math.sqrt(2 / math.pi) * math.sqrt(q * (1 - q) / N_w)


@dataclass
class WTVDecay:
	""" TV decay measurement and its rate fit
	"""
	h: float
	gap: float
	floor: float
	rows: list
	window: list
	rate: float
	ratio: float
	envelope_violations: list = field(default_factory=list)
	deterministic_slope: float = None

	def passed(self, tolerance=0.15):
		""" Return True if the fitted rate is within the tolerance of the spectral gap

		:rtype: bool
		"""
		return abs(self.ratio - 1) <= tolerance


def deterministic_decay_slope(transfer, ns, decomposition=None):
	""" Return the slope of log |T^n e| over ns, where e is the eigenvector of the second eigenvalue. The slope
	is log(1 - g(h)) exactly

	:rtype: float
	"""
	decomposition = decomposition if decomposition is not None else eigen(transfer)
	vector = decomposition.vector(1)
	ns = sorted(int(x) for x in ns)
	norms, power, current = [], vector, 0
	for n in ns:
		power = apply_power(transfer, n - current, power)
		current = n
		norms.append(WFourierBasis.norm(power))
	return float(numpy.polyfit(ns, numpy.log(norms), 1)[0])


@verify_type('paranoid', N_w=int, seed=int, B=int, M=int)
def tv_decay_rate(
	model, h, N_w, seed, B=32, x0=(0.0, 0.0), checkpoints=None, subtract_floor=False, M=16, q=48, pool=None,
	chunk_size=None
):
	""" Measure TV(n) to the uniform measure and fit log TV over checkpoints with TV in [3.5 floor, 0.3]

	:param model: torus model
	:type model: WTorusModel

	:param h: step scale
	:type h: float

	:param N_w: number of walkers
	:type N_w: int

	:param seed: ensemble seed
	:type seed: int

	:param B: bins per axis
	:type B: int

	:param x0: start point
	:type x0: tuple

	:param checkpoints: step counts (every step up to log(1 / floor) / g(h) by default)
	:type checkpoints: list of int | None

	:param subtract_floor: fit log(TV - floor) instead of log(TV)
	:type subtract_floor: bool

	:param M: frequency cutoff of the spectral gap computation
	:type M: int

	:param q: quadrature order of the spectral gap computation
	:type q: int

	:raise WWalkDiagnosticError: if fewer than three checkpoints are in the fit window

	:rtype: WTVDecay
	"""
	transfer = assemble_transfer(model, h, M, q=q, pool=pool)
	decomposition = eigen(transfer, pool=pool)
	gap = spectral_gap(decomposition)
	floor = tv_noise_floor(N_w, B)
	if checkpoints is None:
		checkpoints = range(0, min(int(math.ceil(math.log(1 / floor) / gap)), 10 ** 4) + 1)

	ensemble = run_ensemble(model, h, checkpoints, N_w, x0, seed, B=B, pool=pool, chunk_size=chunk_size)
	rows = [
		(n, tv_to_uniform(x), tv_stderr(x), floor) for n, x in zip(ensemble.checkpoints, ensemble.histograms)
	]
	window = [x for x in rows if 3.5 * floor <= x[1] <= 0.3]
	if len(window) < 3:
		raise WWalkDiagnosticError(
			'TV fit window [%.4g, 0.3] holds %i checkpoints only (at least 3 are required)' % (3.5 * floor, len(window))
		)

	ns = numpy.array([x[0] for x in window], dtype=float)
	values = numpy.array([x[1] - floor if subtract_floor else x[1] for x in window])
	rate = -float(numpy.polyfit(ns, numpy.log(values), 1)[0])

	violations = [
		b[0] for a, b in zip(window, window[1:]) if b[1] > a[1] + 3 * math.sqrt(a[2] ** 2 + b[2] ** 2)
	]
	if len(violations) > 0:
		logger.warning('TV sequence grows beyond 3 sigma at steps %s', str(violations))

	slope = deterministic_decay_slope(transfer, [int(x) for x in ns], decomposition=decomposition)
	result = WTVDecay(
		h=h, gap=gap, floor=floor, rows=rows, window=[x[0] for x in window], rate=rate, ratio=rate / gap,
		envelope_violations=violations, deterministic_slope=slope
	)
	logger.info(
		'TV decay on "%s" (h=%g): rate %.6g, gap %.6g, ratio %.4f over %i checkpoints',
		model.name(), h, rate, gap, result.ratio, len(window)
	)
	return result


def _function_values(model, h, x0, N_w, seed, stops, functions, pool, chunk_size):
	""" Return values of functions[i] at the stop stops[i] for every walker, shape (len(stops), N_w)
	"""
	values = numpy.zeros((len(stops), N_w))
	positions_of = {}
	for i, n in enumerate(stops):
		positions_of.setdefault(int(n), []).append(i)

	def visit(offset, n, positions):
		for i in positions_of[n]:
			values[i, offset:offset + positions.shape[0]] = numpy.real(functions[i](positions))

	_run_chunks(model, h, x0, N_w, seed, positions_of.keys(), visit, pool=pool, chunk_size=chunk_size)
	return values


def _mean_stderr(samples):
	return float(numpy.mean(samples)), float(numpy.std(samples, ddof=1) / math.sqrt(len(samples)))


def _z_score(mean, stderr, target):
	if stderr > 0:
		return (mean - target) / stderr
	return 0.0 if mean == target else math.inf


@dataclass
class WDiffusionReport:
	""" Monte Carlo mean of f(X_n) with n = n(t, h) against T_h^n f(x0) and exp(-t L) f(x0)
	"""
	h: float
	t: float
	n: int
	mc_mean: float
	mc_stderr: float
	matrix_value: float
	semigroup_value: float
	z_score: float

	def row(self):
		""" Return a (h, t, mc_mean, mc_stderr, matrix_value, semigroup_value) row

		:rtype: tuple
		"""
		return self.h, self.t, self.mc_mean, self.mc_stderr, self.matrix_value, self.semigroup_value

	def passed(self, sigmas=3.0):
		return abs(self.z_score) <= sigmas


def _cutoff(f, M):
	return max(16, f.bandwidth() + 8) if M is None else M


@verify_type('paranoid', N_w=int, seed=int)
@verify_value(t=lambda x: x > 0, N_w=lambda x: x > 1)
def diffusion_limit_test(model, h, t, f, x0, N_w, seed, M=None, q=48, pool=None, chunk_size=None):
	""" Compare (1/N_w) sum f(X_n(t,h)) with the matrix value T_h^n(t,h) f(x0) and the semigroup value
	exp(-t L) f(x0)

	:param model: torus model
	:type model: WTorusModel

	:param h: step scale
	:type h: float

	:param t: time
	:type t: float

	:param f: test function
	:type f: WTrigPolynomial

	:param x0: start point
	:type x0: tuple

	:param N_w: number of walkers
	:type N_w: int

	:param seed: ensemble seed
	:type seed: int

	:param M: frequency cutoff (16 or the bandwidth of f plus 8 by default)
	:type M: int | None

	:rtype: WDiffusionReport
	"""
	n = steps_count(t, h)
	M = _cutoff(f, M)
	transfer = assemble_transfer(model, h, M, q=q, pool=pool)
	generator = assemble_generator(model, M, pool=pool)
	basis = transfer.basis()
	coefficients = f.coefficients(basis)
	point = numpy.asarray(x0, dtype=float)
	matrix_value = float(basis.evaluate(apply_power(transfer, n, coefficients), point).real)
	semigroup_value = float(basis.evaluate(semigroup(generator, t, coefficients), point).real)

	samples = _function_values(model, h, x0, N_w, seed, [n], [f], pool, chunk_size)[0]
	mean, stderr = _mean_stderr(samples)
	report = WDiffusionReport(
		h=h, t=t, n=n, mc_mean=mean, mc_stderr=stderr, matrix_value=matrix_value, semigroup_value=semigroup_value,
		z_score=_z_score(mean, stderr, matrix_value)
	)
	logger.info('Diffusion test on "%s": %s', model.name(), str(report))
	return report


@dataclass
class WMomentReport:
	""" Monte Carlo mean of f_1(X_n1) ... f_k(X_nk) against the nested matrix and semigroup values
	"""
	times: list
	steps: list
	mc_mean: float
	mc_stderr: float
	matrix_value: float
	semigroup_value: float
	z_score: float


def _grid_product(basis, f, g):
	size = basis.grid_size()
	return basis.project(basis.evaluate_grid(f, size) * basis.evaluate_grid(g, size))


def diffusion_moment_test(model, h, times, functions, x0, N_w, seed, M=None, q=48, pool=None, chunk_size=None):
	""" Check the finite-dimensional moment E[f_1(X_n(t_1)) ... f_k(X_n(t_k))] against
	exp(-t_1 L)(f_1 exp(-(t_2 - t_1) L)(f_2 ...))(x0). Products are formed on the evaluation grid and projected
	back onto the basis

	:param times: non-decreasing positive times
	:type times: list of float

	:param functions: test functions, one per time
	:type functions: list of WTrigPolynomial

	:rtype: WMomentReport
	"""
	if len(times) == 0 or len(times) != len(functions):
		raise ValueError('One test function per time is required')
	if times[0] <= 0 or any(b < a for a, b in zip(times, times[1:])):
		raise ValueError('Times must be positive and non-decreasing')
	steps = [steps_count(x, h) for x in times]
	M = max(_cutoff(x, M) for x in functions)
	transfer = assemble_transfer(model, h, M, q=q, pool=pool)
	generator = assemble_generator(model, M, pool=pool)
	decomposition = eigen(generator, pool=pool)
	basis = transfer.basis()
	coefficients = [x.coefficients(basis) for x in functions]

	matrix = coefficients[-1].astype(complex)
	flow = coefficients[-1].astype(complex)
	for i in range(len(times) - 2, -1, -1):
		matrix = _grid_product(basis, coefficients[i], apply_power(transfer, steps[i + 1] - steps[i], matrix))
		flow = _grid_product(
			basis, coefficients[i], semigroup(generator, times[i + 1] - times[i], flow, decomposition=decomposition)
		)
	point = numpy.asarray(x0, dtype=float)
	matrix_value = float(basis.evaluate(apply_power(transfer, steps[0], matrix), point).real)
	semigroup_value = float(
		basis.evaluate(semigroup(generator, times[0], flow, decomposition=decomposition), point).real
	)

	values = _function_values(model, h, x0, N_w, seed, steps, functions, pool, chunk_size)
	mean, stderr = _mean_stderr(numpy.prod(values, axis=0))
	return WMomentReport(
		times=list(times), steps=steps, mc_mean=mean, mc_stderr=stderr, matrix_value=matrix_value,
		semigroup_value=semigroup_value, z_score=_z_score(mean, stderr, matrix_value)
	)


@dataclass
class WMarkovConsistency:
	""" Monte Carlo mean of f(X_n) against T_h^n f(x0)
	"""
	n: int
	mc_mean: float
	mc_stderr: float
	matrix_value: float
	z_score: float

	def passed(self, sigmas=4.0):
		return abs(self.z_score) <= sigmas


@verify_type('paranoid', n=int, N_w=int, seed=int)
@verify_value(n=lambda x: x >= 0, N_w=lambda x: x > 1)
def markov_consistency(model, transfer, f, x0, n, N_w, seed, pool=None, chunk_size=None):
	""" Compare the ensemble mean of f after n steps with apply_power(transfer, n, f) at x0

	:param transfer: transfer operator of the model
	:type transfer: WGalerkinOperator

	:rtype: WMarkovConsistency
	"""
	if transfer.model_name() != model.name():
		raise WModelError('Transfer operator was assembled for the "%s" model' % transfer.model_name())
	basis = transfer.basis()
	matrix_value = float(
		basis.evaluate(apply_power(transfer, n, f.coefficients(basis)), numpy.asarray(x0, dtype=float)).real
	)
	samples = _function_values(model, transfer.h(), x0, N_w, seed, [n], [f], pool, chunk_size)[0]
	mean, stderr = _mean_stderr(samples)
	return WMarkovConsistency(
		n=n, mc_mean=mean, mc_stderr=stderr, matrix_value=matrix_value, z_score=_z_score(mean, stderr, matrix_value)
	)


class WWalkPath:
	""" Continuous path that flows along X_(k_j) with the speed s_j / h during the time slot [j h^2, (j + 1) h^2]
	"""

	def __init__(self, model, h, x0, draws):
		""" Build slot start points

		:param model: model to walk on
		:type model: WModelProto

		:param h: step scale
		:type h: float

		:param x0: start point
		:type x0: numpy.ndarray

		:param draws: (k_j, s_j) of every slot, s_j in [-1, 1]
		:type draws: list of tuple
		"""
		self.__model = model
		self.__h = h
		self.__fields = numpy.array([int(x[0]) for x in draws], dtype=int)
		self.__speeds = numpy.array([float(x[1]) for x in draws])
		nodes = [model.canonicalize(numpy.asarray(x0, dtype=float))]
		for k, s in zip(self.__fields, self.__speeds):
			nodes.append(model.flow(int(k), h * s, nodes[-1]))
		self.__nodes = numpy.array(nodes)

	def h(self):
		return self.__h

	def slots(self):
		return len(self.__fields)

	def duration(self):
		""" Return the time n h^2 covered by the path

		:rtype: float
		"""
		return self.slots() * self.__h ** 2

	def nodes(self):
		""" Return the discrete chain x_0, ..., x_n

		:rtype: numpy.ndarray
		"""
		return self.__nodes.copy()

	def at(self, times):
		""" Return path positions at times in [0, n h^2]

		:rtype: numpy.ndarray
		"""
		times = numpy.asarray(times, dtype=float)
		if numpy.any(times < 0) or numpy.any(times > self.duration() * (1 + 1e-12)):
			raise ValueError('Path is defined on [0, %g]' % self.duration())
		h2 = self.__h ** 2
		slot = numpy.minimum(numpy.floor(times / h2 * (1 + 1e-12)).astype(int), self.slots() - 1)
		inner = times - slot * h2
		return self.__model.flow(
			self.__fields[slot], (inner / h2) * self.__h * self.__speeds[slot], self.__nodes[slot]
		)

	def continuity_defect(self):
		""" Return the largest gap between the end of a slot and the start of the next one

		:rtype: float
		"""
		ends = self.__model.flow(self.__fields, self.__h * self.__speeds, self.__nodes[:-1])
		return float(numpy.max(numpy.abs(self.__model.displacement(ends, self.__nodes[1:])), initial=0.0))


def path_sample(model, h, T_final, x0, stream, draws=None):
	""" Sample a continuous path on [0, T_final] (the path covers ceil(T_final / h^2) slots)

	:param draws: (k_j, s_j) pairs to use instead of random draws
	:type draws: list of tuple | None

	:rtype: WWalkPath
	"""
	_check_step(h)
	if T_final < 0:
		raise ValueError('Path duration must be non-negative')
	if draws is None:
		slots = max(1, int(math.ceil(T_final / h ** 2 * (1 - 1e-12))))
		draws = []
		for _ in range(slots):
			k = int(stream.integers(1, model.fields_count() + 1))
			draws.append((k, float(stream.uniform(-1.0, 1.0))))
	return WWalkPath(model, h, x0, draws)


@dataclass
class WMinorizationReport:
	""" Bin-level lower bound c of t_h^P(x0, .) >= c S_h^eps(x0, .)
	"""
	c_hat: float
	s_mass: float
	s_mass_stderr: float
	s_mass_exact: float
	excluded_bins: int
	support_violations: int
	P: int
	bins: int

	def s_mass_consistent(self, sigmas=3.0):
		""" Return True if the estimated S-mass is within sigmas standard errors of (2 eps)^D

		:rtype: bool
		"""
		return bool(abs(self.s_mass - self.s_mass_exact) <= sigmas * max(self.s_mass_stderr, 1e-15))

	def summary(self):
		""" Return JSON-ready fields

		:rtype: dict
		"""
		return {'c_hat': self.c_hat, 's_mass': self.s_mass, 'excluded_bins': self.excluded_bins}


@verify_type('paranoid', N_s=int, B=int, seed=int)
@verify_value(eps=lambda x: x > 0, N_s=lambda x: x > 0, B=lambda x: x > 1)
def minorization_ratio(model, h, eps, x0, N_s, B, seed, lie=None, pool=None, chunk_size=None):
	""" Estimate the largest c with t_h^P(x0, .) >= c S_h^eps(x0, .) bin by bin. S_h^eps(x0, .) is the image of
	h^-Q du on I_(eps,h) under u -> exp(lambda(u)) x0, its mass is (2 eps)^D. Both measures are binned on a
	B x B grid of displacements from x0 over the window of the half width max(P h, S extent). Bins with less than
	50 S samples are excluded, S bins that no walker reached are support violations

	:param model: model with a nilpotent lift
	:type model: WModelProto

	:param h: step scale
	:type h: float

	:param eps: box size
	:type eps: float

	:param x0: start point
	:type x0: tuple

	:param N_s: samples of each measure
	:type N_s: int

	:param B: bins per axis
	:type B: int

	:param seed: seed (walkers use chunk streams, the S samples use a separate stream)
	:type seed: int

	:param lie: Lie structure of the lift (the model one by default)
	:type lie: WLieStructure | None

	:rtype: WMinorizationReport
	"""
	if model.has_lift() is False:
		raise WModelError('The "%s" model has no nilpotent lift' % model.name())
	lie = lie if lie is not None else model.lie_structure()
	constants = walk_constants(lie)
	x0 = model.canonicalize(numpy.asarray(x0, dtype=float))
	stream = numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence([int(seed), 2 ** 32])))

	u = sample_box(lie, eps, h, stream, size=N_s)
	s_points = model.displacement(x0, model.lift_flow(u, x0))
	half = numpy.maximum(constants.P * h, numpy.max(numpy.abs(s_points), axis=0)) * (1 + 1e-9)
	edges = [numpy.linspace(-half[0], half[0], B + 1), numpy.linspace(-half[1], half[1], B + 1)]
	s_counts, _, _ = numpy.histogram2d(s_points[:, 0], s_points[:, 1], bins=edges)

	def binning(positions):
		delta = model.displacement(x0, positions)
		return numpy.histogram2d(delta[:, 0], delta[:, 1], bins=edges)[0]

	accumulator = WHistogramAccumulator([constants.P], B, binning=binning)
	_run_chunks(model, h, x0, N_s, seed, [constants.P], accumulator.visit, pool=pool, chunk_size=chunk_size)
	t_counts = accumulator.counts(constants.P)

	s_mass_exact = (2.0 * eps) ** constants.D
	estimate, stderr, _ = box_volume_estimate(lie, eps, h, N_s, stream)
	scale = float(h) ** constants.Q

	occupied = s_counts > 0
	eligible = s_counts >= __min_bin_count__
	excluded = int(numpy.count_nonzero(occupied & ~eligible))
	violations = int(numpy.count_nonzero(eligible & (t_counts == 0)))
	ratios = (t_counts[eligible] / N_s) / (s_mass_exact * s_counts[eligible] / N_s)
	c_hat = float(numpy.min(ratios)) if ratios.size > 0 else 0.0

	if excluded > 0:
		logger.warning('%i undersampled bins are excluded from the minorization estimate', excluded)
	if violations > 0:
		logger.warning('%i bins of the S-measure support are not reached in %i steps', violations, constants.P)
	report = WMinorizationReport(
		c_hat=c_hat, s_mass=estimate / scale, s_mass_stderr=stderr / scale, s_mass_exact=s_mass_exact,
		excluded_bins=excluded, support_violations=violations, P=constants.P, bins=B
	)
	logger.info('Minorization on "%s" (h=%g, eps=%g, P=%i): %s', model.name(), h, eps, constants.P, str(report))
	return report


@dataclass
class WDilationReport:
	""" Two-sample Kolmogorov-Smirnov statistics of dilated box coordinates at h and h / 2
	"""
	statistics: list
	pvalues: list

	def passed(self, level=0.0027):
		""" Return True if no coordinate rejects the common shape at the three-sigma level

		:rtype: bool
		"""
		return all(x >= level for x in self.pvalues)


@verify_value(eps=lambda x: x > 0, h=lambda x: 0 < x <= 1, n=lambda x: x > 1)
def dilation_collapse(s, eps, h, n, seed):
	""" Sample I_(eps,h) and I_(eps,h/2), map both by delta_(1/h) and delta_(2/h) and compare every coordinate

	:param s: Lie structure
	:type s: WLieStructure

	:rtype: WDilationReport
	"""
	statistics, pvalues = [], []
	coarse = dilate(s, 1.0 / h, sample_box(s, eps, h, chunk_stream(seed, 0), size=n))
	fine = dilate(s, 2.0 / h, sample_box(s, eps, h / 2, chunk_stream(seed, 1), size=n))
	for i in range(s.dimension()):
		result = scipy.stats.ks_2samp(coarse[:, i], fine[:, i])
		statistics.append(float(result.statistic))
		pvalues.append(float(result.pvalue))
	return WDilationReport(statistics=statistics, pvalues=pvalues)
