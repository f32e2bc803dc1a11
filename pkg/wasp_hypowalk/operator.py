# -*- coding: utf-8 -*-
# wasp_hypowalk/operator.py
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

""" Fourier-Galerkin matrices of the averaged-flow operator T_h (and of the single-field operators T_(k,h)) and
of the generator L = -(1/6p) sum X_k^2 on torus models.

Models whose fields commute with y-translations give block diagonal matrices, one (2M + 1) x (2M + 1) block per
y-frequency n. Any torus model may be assembled densely over all (2M + 1)^2 modes
"""

import logging
import math
import time
from dataclasses import dataclass

import numpy
import scipy.linalg
import scipy.special

from wasp_hypowalk.fourier import WFourierBasis
from wasp_hypowalk.models import WModelError, WModelProto
from wasp_hypowalk.thread import WOrderedPool
from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)


class WOperatorError(ValueError):
	""" This exception is raised when an operator can not be assembled or processed: a step or a cutoff is out of
	range, quadrature is too coarse, a matrix is not symmetric, an operation does not suit the operator kind
	"""
	pass


TRANSFER = 'transfer'
GENERATOR = 'generator'

__imaginary_tolerance__ = 1e-9
__residual_tolerance__ = 1e-9
__constant_tolerance__ = 1e-12


class WGalerkinOperator:
	""" Real symmetric matrix of an operator in a truncated Fourier basis. A blocked operator keeps one block per
	y-frequency, a dense operator keeps a single block in the flattened mode order
	"""

	def __init__(
		self, kind, basis, blocks, block_ids, model_name, h=None, field=None, asymmetry=0.0, constant_defect=0.0
	):
		""" Create an operator

		:param kind: TRANSFER or GENERATOR
		:type kind: str

		:param basis: Fourier basis
		:type basis: WFourierBasis

		:param blocks: symmetric real matrices
		:type blocks: list of numpy.ndarray

		:param block_ids: y-frequency of every block (None for a dense operator)
		:type block_ids: list of int | list of None

		:param model_name: model this operator was assembled for
		:type model_name: str

		:param h: step scale (transfer kind only)
		:type h: float | None

		:param field: field index of a single-field transfer operator
		:type field: int | None

		:param asymmetry: largest |A - A^T| entry before symmetrization
		:type asymmetry: float

		:param constant_defect: largest deviation of the constant-mode column from the unit vector before it was
		pinned
		:type constant_defect: float
		"""
		if kind not in (TRANSFER, GENERATOR):
			raise WOperatorError('Unknown operator kind: %s' % kind)
		if len(blocks) != len(block_ids):
			raise WOperatorError('Every block must have an id')
		self.__kind = kind
		self.__basis = basis
		self.__blocks = tuple(blocks)
		self.__block_ids = tuple(block_ids)
		self.__model_name = model_name
		self.__h = h
		self.__field = field
		self.__asymmetry = asymmetry
		self.__constant_defect = constant_defect

	def kind(self):
		return self.__kind

	def basis(self):
		return self.__basis

	def blocks(self):
		return self.__blocks

	def block_ids(self):
		return self.__block_ids

	def is_blocked(self):
		""" Return True if blocks are y-frequency blocks

		:rtype: bool
		"""
		return self.__block_ids[0] is not None

	def model_name(self):
		return self.__model_name

	def h(self):
		return self.__h

	def field(self):
		return self.__field

	def asymmetry(self):
		return self.__asymmetry

	def constant_defect(self):
		return self.__constant_defect

	def matvec(self, coefficients):
		""" Apply the matrix to function coefficients

		:param coefficients: coefficients (2M + 1, 2M + 1)
		:type coefficients: numpy.ndarray

		:rtype: numpy.ndarray
		"""
		coefficients = numpy.asarray(coefficients)
		size = self.__basis.size()
		if coefficients.shape != (size, size):
			raise WOperatorError('Coefficients of the shape (%i, %i) expected' % (size, size))
		if self.is_blocked():
			return numpy.stack([block @ coefficients[i] for i, block in enumerate(self.__blocks)])
		return (self.__blocks[0] @ coefficients.ravel()).reshape(size, size)

	def dense_matrix(self):
		""" Return the full matrix in the flattened mode order

		:rtype: numpy.ndarray
		"""
		if self.is_blocked():
			return scipy.linalg.block_diag(*self.__blocks)
		return self.__blocks[0].copy()

	def norm(self):
		""" Return the largest absolute row sum

		:rtype: float
		"""
		return max(float(numpy.max(numpy.sum(numpy.abs(x), axis=1))) for x in self.__blocks)


@dataclass
class WEigenDecomposition:
	""" Eigenpairs of every block and theirs merged order (descending for transfer operators, ascending for
	generators, ties are broken by block position and then by the position inside the block)
	"""
	kind: str
	basis: WFourierBasis
	block_ids: tuple
	block_values: tuple
	block_vectors: tuple
	values: numpy.ndarray
	block_of: numpy.ndarray
	local_of: numpy.ndarray

	def __len__(self):
		return len(self.values)

	def block_n(self, j):
		""" Return y-frequency of the j-th eigenpair (None for dense operators)
		"""
		return self.block_ids[int(self.block_of[j])]

	def vector(self, j):
		""" Return coefficients (2M + 1, 2M + 1) of the j-th normalized eigenvector

		:rtype: numpy.ndarray
		"""
		block, local = int(self.block_of[j]), int(self.local_of[j])
		column = self.block_vectors[block][:, local]
		size = self.basis.size()
		if self.block_ids[block] is None:
			return column.reshape(size, size).astype(complex)
		result = self.basis.zeros()
		result[block] = column
		return result

	def coordinates(self, coefficients):
		""" Return expansion coefficients (f | e_j) of a function in the merged eigenbasis order

		:rtype: numpy.ndarray
		"""
		per_block = []
		for i, vectors in enumerate(self.block_vectors):
			if self.block_ids[i] is None:
				per_block.append(vectors.T @ coefficients.ravel())
			else:
				per_block.append(vectors.T @ coefficients[i])
		return numpy.array([per_block[int(b)][int(x)] for b, x in zip(self.block_of, self.local_of)])

	def synthesize(self, weights):
		""" Return coefficients of sum_j weights[j] e_j

		:rtype: numpy.ndarray
		"""
		size = self.basis.size()
		result = self.basis.zeros()
		flat = result.ravel()
		for i, vectors in enumerate(self.block_vectors):
			selected = self.block_of == i
			local_weights = numpy.zeros(vectors.shape[1], dtype=complex)
			local_weights[self.local_of[selected]] = weights[selected]
			if self.block_ids[i] is None:
				flat += vectors @ local_weights
			else:
				result[i] += vectors @ local_weights
		return flat.reshape(size, size) if self.block_ids[0] is None else result


def _gauss_legendre(q):
	nodes, weights = scipy.special.roots_legendre(q)
	return nodes, weights / 2


def _check_torus(model):
	if isinstance(model, WModelProto) is False:
		raise TypeError('Model expected')
	if model.is_compact() is False:
		raise WModelError('Galerkin operators are assembled for torus models only ("%s" is not)' % model.name())


def _fields(model, field):
	if field is None:
		return tuple(range(1, model.fields_count() + 1))
	model.check_field(field)
	return (field, )


def _real_symmetric(matrix, what):
	""" Return the symmetrized real part of a matrix and its raw asymmetry
	"""
	scale = max(1.0, float(numpy.max(numpy.abs(matrix), initial=0.0)))
	imaginary = float(numpy.max(numpy.abs(matrix.imag), initial=0.0)) if numpy.iscomplexobj(matrix) else 0.0
	if imaginary > __imaginary_tolerance__ * scale:
		raise WOperatorError('%s is not real (imaginary part %.3e)' % (what, imaginary))
	real = numpy.real(matrix)
	asymmetry = float(numpy.max(numpy.abs(real - real.T), initial=0.0))
	return (real + real.T) / 2, asymmetry


def _pin_constant(matrix, position, target):
	""" Set the row and the column of the constant mode to the exact value and return the former deviation
	"""
	column = matrix[:, position].copy()
	column[position] -= target
	defect = float(numpy.max(numpy.abs(column)))
	matrix[:, position] = 0.0
	matrix[position, :] = 0.0
	matrix[position, position] = target
	return defect


def _check_quadrature(h, M, q):
	phase = 2 * math.pi * M * h
	if q < phase / 2 + 8:
		logger.warning(
			'Quadrature order q=%i may be insufficient for h=%g and M=%i (phase range %.1f)', q, h, M, phase
		)


def _transfer_block(model, h, basis, n, fields, q):
	""" Return the (m', m) block of the y-frequency n
	"""
	nodes, weights = _gauss_legendre(q)
	grid_size = basis.grid_size()
	xs = numpy.arange(grid_size) / grid_size
	freq = basis.frequencies()
	averaged = numpy.zeros((basis.size(), grid_size), dtype=complex)
	for k in fields:
		for node, weight in zip(nodes, weights):
			new_x, shift = numpy.broadcast_arrays(*model.shear_flow(numpy.array(k), h * node, xs))
			phase = numpy.exp(2j * math.pi * (freq[:, None] * new_x[None, :] + n * shift[None, :]))
			averaged += weight * phase
	averaged /= len(fields)
	spectrum = numpy.fft.fft(averaged, axis=1) / grid_size
	return spectrum[:, freq % grid_size].T


def _dense_transfer(model, h, basis, fields, q):
	nodes, weights = _gauss_legendre(q)
	grid_size = basis.grid_size()
	points = basis.grid(grid_size).reshape(-1, 2)
	freq = basis.frequencies()
	m_all, n_all = numpy.tile(freq, basis.size()), numpy.repeat(freq, basis.size())
	averaged = numpy.zeros((basis.dim(), grid_size * grid_size), dtype=complex)
	for k in fields:
		for node, weight in zip(nodes, weights):
			moved = model.flow(k, h * node, points)
			averaged += weight * numpy.exp(
				2j * math.pi * (m_all[:, None] * moved[None, :, 0] + n_all[:, None] * moved[None, :, 1])
			)
	averaged /= len(fields)
	spectrum = numpy.fft.fft2(averaged.reshape(basis.dim(), grid_size, grid_size)) / grid_size ** 2
	k = freq % grid_size
	return spectrum[:, k[:, None], k[None, :]].reshape(basis.dim(), basis.dim()).T


@verify_type('paranoid', M=int, q=int, field=(int, None), dense=(bool, None))
def assemble_transfer(model, h, M, q=48, field=None, pool=None, dense=None):
	""" Assemble T_h = (1/p) sum_k T_(k,h), where T_(k,h) f(x) = (1/2h) int_(-h)^h f(exp(t X_k) x) dt. The time
	integral is computed by Gauss-Legendre quadrature with q nodes, x-frequencies are computed by FFT on
	4 (2M + 1) points per axis

	:param model: torus model
	:type model: WModelProto

	:param h: step scale (0 < h <= 0.5)
	:type h: float

	:param M: frequency cutoff (M >= 2)
	:type M: int

	:param q: quadrature order (q >= 8)
	:type q: int

	:param field: assemble the single-field operator T_(k,h) instead
	:type field: int | None

	:param pool: pool for block tasks (serial by default)
	:type pool: WOrderedPool | None

	:param dense: force dense (True) or blocked (False) assembly. Blocked assembly is used for y-invariant models
	by default
	:type dense: bool | None

	:rtype: WGalerkinOperator
	"""
	if not (0 < h <= 0.5):
		raise WOperatorError('Step scale h must be in (0, 0.5], got %s' % str(h))
	if M < 2:
		raise WOperatorError('Frequency cutoff M must be at least 2, got %i' % M)
	if q < 8:
		raise WOperatorError('Quadrature order q must be at least 8, got %i' % q)
	_check_torus(model)
	fields = _fields(model, field)
	dense = (model.y_invariant() is False) if dense is None else dense
	if dense is False and model.y_invariant() is False:
		raise WOperatorError('Blocked assembly requires a y-invariant model')
	_check_quadrature(h, M, q)

	basis = WFourierBasis(M)
	pool = pool if pool is not None else WOrderedPool(1)
	started = time.monotonic()
	if dense is False:
		raw = pool.map(lambda n: _transfer_block(model, h, basis, int(n), fields, q), basis.frequencies())
		block_ids = [int(x) for x in basis.frequencies()]
	else:
		raw = [_dense_transfer(model, h, basis, fields, q)]
		block_ids = [None]

	blocks, asymmetry = [], 0.0
	for matrix in raw:
		block, block_asymmetry = _real_symmetric(matrix, 'Transfer block')
		blocks.append(block)
		asymmetry = max(asymmetry, block_asymmetry)

	if dense is False:
		constant_defect = _pin_constant(blocks[M], M, 1.0)
	else:
		constant_defect = _pin_constant(blocks[0], basis.index(0, 0), 1.0)
	if constant_defect > __constant_tolerance__:
		logger.warning('Constant mode of the transfer operator deviates by %.3e before pinning', constant_defect)

	logger.debug(
		'Transfer operator for "%s" (h=%g, M=%i, q=%i, field=%s, dense=%s) assembled in %.3fs, asymmetry %.3e',
		model.name(), h, M, q, str(field), str(dense), time.monotonic() - started, asymmetry
	)
	return WGalerkinOperator(
		TRANSFER, basis, blocks, block_ids, model.name(), h=h, field=field, asymmetry=asymmetry,
		constant_defect=constant_defect
	)


def assemble_transfer_dense(model, h, M, q=48, field=None):
	""" Assemble T_h over all modes at once. See :func:`.assemble_transfer`

	:rtype: WGalerkinOperator
	"""
	return assemble_transfer(model, h, M, q=q, field=field, dense=True)


def _coefficient_spectrum(values, grid_size):
	return numpy.fft.fft(values) / grid_size


def _generator_block(model, basis, n, bandwidth):
	""" Return (1/6p) sum_k A_k^H A_k for the y-frequency n, A_k maps x-frequencies |m| <= M to |m'| <= M + bandwidth
	"""
	M = basis.M()
	extended = numpy.arange(-M - bandwidth, M + bandwidth + 1)
	freq = basis.frequencies()
	grid_size = 4 * len(extended)
	xs = numpy.arange(grid_size) / grid_size
	difference = (extended[:, None] - freq[None, :]) % grid_size

	result = numpy.zeros((basis.size(), basis.size()), dtype=complex)
	for k in range(1, model.fields_count() + 1):
		a, b = numpy.broadcast_arrays(*model.field_coefficients(numpy.array(k), xs))
		a_hat, b_hat = _coefficient_spectrum(a, grid_size), _coefficient_spectrum(b, grid_size)
		derivative = 2j * math.pi * (freq[None, :] * a_hat[difference] + n * b_hat[difference])
		result += derivative.conj().T @ derivative
	return result / (6 * model.fields_count())


def _dense_generator(model, basis, bandwidth):
	extended = WFourierBasis(basis.M() + bandwidth)
	grid_size = extended.grid_size()
	points = extended.grid(grid_size)
	freq = basis.frequencies()
	m_all, n_all = numpy.tile(freq, basis.size()), numpy.repeat(freq, basis.size())
	modes = numpy.exp(
		2j * math.pi * (m_all[:, None, None] * points[None, ..., 0] + n_all[:, None, None] * points[None, ..., 1])
	)
	k_ext = extended.frequencies() % grid_size

	result = numpy.zeros((basis.dim(), basis.dim()), dtype=complex)
	for k in range(1, model.fields_count() + 1):
		vectors = model.field(k, points)
		derivative = 2j * math.pi * (
			m_all[:, None, None] * vectors[None, ..., 0] + n_all[:, None, None] * vectors[None, ..., 1]
		) * modes
		spectrum = numpy.fft.fft2(derivative) / grid_size ** 2
		matrix = spectrum[:, k_ext[:, None], k_ext[None, :]].reshape(basis.dim(), extended.dim()).T
		result += matrix.conj().T @ matrix
	return result / (6 * model.fields_count())


@verify_type('paranoid', M=int, dense=(bool, None))
def assemble_generator(model, M, pool=None, dense=None):
	""" Assemble L = -(1/6p) sum X_k^2 as (1/6p) sum A_k^H A_k, where A_k is the exact matrix of X_k from the
	basis into the basis extended by the field bandwidth

	:param model: torus model
	:type model: WTorusModel

	:param M: frequency cutoff (M >= 2)
	:type M: int

	:param pool: pool for block tasks (serial by default)
	:type pool: WOrderedPool | None

	:param dense: the same as 'dense' in :func:`.assemble_transfer`
	:type dense: bool | None

	:rtype: WGalerkinOperator
	"""
	if M < 2:
		raise WOperatorError('Frequency cutoff M must be at least 2, got %i' % M)
	_check_torus(model)
	dense = (model.y_invariant() is False) if dense is None else dense
	if dense is False and model.y_invariant() is False:
		raise WOperatorError('Blocked assembly requires a y-invariant model')

	basis = WFourierBasis(M)
	bandwidth = model.field_bandwidth()
	pool = pool if pool is not None else WOrderedPool(1)
	started = time.monotonic()
	if dense is False:
		raw = pool.map(lambda n: _generator_block(model, basis, int(n), bandwidth), basis.frequencies())
		block_ids = [int(x) for x in basis.frequencies()]
	else:
		raw = [_dense_generator(model, basis, bandwidth)]
		block_ids = [None]

	blocks, asymmetry = [], 0.0
	for matrix in raw:
		block, block_asymmetry = _real_symmetric(matrix, 'Generator block')
		blocks.append(block)
		asymmetry = max(asymmetry, block_asymmetry)

	logger.debug(
		'Generator for "%s" (M=%i, dense=%s) assembled in %.3fs',
		model.name(), M, str(dense), time.monotonic() - started
	)
	return WGalerkinOperator(GENERATOR, basis, blocks, block_ids, model.name(), asymmetry=asymmetry)


def assemble_generator_dense(model, M):
	""" Assemble L over all modes at once. See :func:`.assemble_generator`

	:rtype: WGalerkinOperator
	"""
	return assemble_generator(model, M, dense=True)


def _block_eigen(block, pinned=None):
	""" Return ascending eigenpairs of a symmetric block. The decoupled constant mode at the 'pinned' position
	is not passed to the solver and leads the result with its exact eigenvalue
	"""
	if numpy.array_equal(block, block.T) is False:
		raise WOperatorError('Eigen decomposition requires a symmetric matrix')
	if pinned is None:
		values, vectors = scipy.linalg.eigh(block)
	else:
		kept = numpy.delete(numpy.arange(len(block)), pinned)
		reduced_values, reduced_vectors = scipy.linalg.eigh(block[numpy.ix_(kept, kept)])
		values = numpy.concatenate(([block[pinned, pinned]], reduced_values))
		vectors = numpy.zeros(block.shape)
		vectors[pinned, 0] = 1.0
		vectors[kept, 1:] = reduced_vectors
	scale = max(1.0, float(numpy.max(numpy.sum(numpy.abs(block), axis=1))))
	residual = float(numpy.max(numpy.abs(block @ vectors - vectors * values), initial=0.0))
	if residual > __residual_tolerance__ * scale:
		raise WOperatorError('Eigen decomposition residual %.3e is too large' % residual)
	return values, vectors


def _pinned_positions(op):
	""" Return {block: position} of the constant mode when a transfer operator keeps it decoupled
	"""
	if op.kind() != TRANSFER:
		return {}
	basis, block_ids = op.basis(), op.block_ids()
	if block_ids[0] is None:
		block, position = 0, basis.index(0, 0)
	else:
		block, position = block_ids.index(0), basis.M()
	row = op.blocks()[block][position]
	if row[position] != 1.0 or numpy.count_nonzero(row) != 1:
		return {}
	return {block: position}


def eigen(op, pool=None):
	""" Return all eigenpairs of an operator (dense symmetric solve per block)

	:param op: operator to decompose
	:type op: WGalerkinOperator

	:param pool: pool for block tasks (serial by default)
	:type pool: WOrderedPool | None

	:rtype: WEigenDecomposition
	"""
	pool = pool if pool is not None else WOrderedPool(1)
	started = time.monotonic()
	blocks, pinned = op.blocks(), _pinned_positions(op)
	results = pool.map(lambda i: _block_eigen(blocks[i], pinned.get(i)), range(len(blocks)))

	values = numpy.concatenate([x[0] for x in results])
	block_of = numpy.concatenate([numpy.full(len(x[0]), i, dtype=int) for i, x in enumerate(results)])
	local_of = numpy.concatenate([numpy.arange(len(x[0]), dtype=int) for x in results])
	primary = -values if op.kind() == TRANSFER else values
	order = numpy.lexsort((local_of, block_of, primary))

	logger.debug(
		'Eigen decomposition of %i blocks (%i values) took %.3fs',
		len(results), len(values), time.monotonic() - started
	)
	return WEigenDecomposition(
		kind=op.kind(),
		basis=op.basis(),
		block_ids=op.block_ids(),
		block_values=tuple(x[0] for x in results),
		block_vectors=tuple(x[1] for x in results),
		values=values[order],
		block_of=block_of[order],
		local_of=local_of[order]
	)


@verify_type('paranoid', n=int)
@verify_value(n=lambda x: x >= 0)
def apply_power(op, n, coefficients):
	""" Return op^n applied to function coefficients

	:rtype: numpy.ndarray
	"""
	result = numpy.asarray(coefficients, dtype=complex)
	for _ in range(n):
		result = op.matvec(result)
	return result


def quadratic_form(op, coefficients):
	""" Return (A u | u)

	:rtype: float
	"""
	return float(numpy.real(numpy.vdot(coefficients, op.matvec(coefficients))))


def bilinear_form(op, f, g):
	""" Return (f | A g)

	:rtype: complex
	"""
	return complex(numpy.vdot(f, op.matvec(g)))


@verify_value(t=lambda x: x >= 0)
def semigroup(op, t, coefficients, decomposition=None):
	""" Return exp(-t L) applied to function coefficients through the generator eigendecomposition

	:param op: generator
	:type op: WGalerkinOperator

	:param t: time
	:type t: float

	:param coefficients: function coefficients
	:type coefficients: numpy.ndarray

	:param decomposition: precomputed decomposition of the generator
	:type decomposition: WEigenDecomposition | None

	:rtype: numpy.ndarray
	"""
	if op.kind() != GENERATOR:
		raise WOperatorError('Semigroup is defined for generators only')
	decomposition = decomposition if decomposition is not None else eigen(op)
	coefficients = numpy.asarray(coefficients, dtype=complex)
	size = op.basis().size()
	result = numpy.zeros_like(coefficients)
	for i, (values, vectors) in enumerate(zip(decomposition.block_values, decomposition.block_vectors)):
		source = coefficients.ravel() if decomposition.block_ids[i] is None else coefficients[i]
		mapped = vectors @ (numpy.exp(-t * values) * (vectors.T @ source))
		if decomposition.block_ids[i] is None:
			result = mapped.reshape(size, size)
		else:
			result[i] = mapped
	return result


@dataclass
class WMarkovReport:
	""" Markov sanity checks of a transfer operator
	"""
	constant_fixed: bool
	constant_defect: float
	symmetry_residual: float
	raw_asymmetry: float
	max_abs_eigenvalue: float
	min_eigenvalue: float
	top_simple: bool

	def passed(self):
		""" Return True if the constant mode is fixed, the matrix is symmetric and the spectrum is in [-1, 1]

		:rtype: bool
		"""
		return self.constant_fixed and self.symmetry_residual == 0.0 and self.max_abs_eigenvalue <= 1 + 1e-8


def markov_checks(op, decomposition=None):
	""" Check that T_h fixes constants, is symmetric and is a contraction. The smallest eigenvalue is recorded as
	the lower spectral bound -1 + delta_1

	:rtype: WMarkovReport
	"""
	if op.kind() != TRANSFER:
		raise WOperatorError('Markov checks are defined for transfer operators only')
	decomposition = decomposition if decomposition is not None else eigen(op)
	basis = op.basis()
	constant = basis.constant()
	defect = float(numpy.max(numpy.abs(op.matvec(constant) - constant)))
	symmetry = max(float(numpy.max(numpy.abs(x - x.T), initial=0.0)) for x in op.blocks())
	values = decomposition.values
	report = WMarkovReport(
		constant_fixed=(defect == 0.0),
		constant_defect=op.constant_defect(),
		symmetry_residual=symmetry,
		raw_asymmetry=op.asymmetry(),
		max_abs_eigenvalue=float(numpy.max(numpy.abs(values))),
		min_eigenvalue=float(values[-1]),
		top_simple=bool(len(values) < 2 or values[1] < 1 - 1e-10)
	)
	if report.passed() is False:
		logger.warning('Markov checks failed: %s', str(report))
	return report
