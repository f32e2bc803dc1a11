# -*- coding: utf-8 -*-
# wasp_hypowalk/models.py
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
from abc import ABCMeta, abstractmethod

import numpy
import scipy.linalg

from wasp_hypowalk.nilpotent_lie import build_free_nilpotent, sample_box
from wasp_hypowalk.registry import WRegistry, WNoSuchEntryError, register_entry
from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)

__models_registry__ = WRegistry('model')


class WModelError(ValueError):
	""" This exception is raised when a model is asked for something it does not have: a field with a wrong index,
	a nilpotent lift, a spectral discretization of a non-compact manifold
	"""
	pass


class WModelProto(metaclass=ABCMeta):
	""" Two-dimensional manifold with p divergence-free vector fields X_1, ..., X_p that have exact flows and
	satisfy the Hoermander condition with brackets up to the length r. Points are numpy arrays of the shape
	(..., 2). Field indices start from 1
	"""

	__registry_id__ = None
	""" Name that is used in configuration files """

	def name(self):
		""" Return model name

		:rtype: str
		"""
		return self.__registry_id__

	def dim(self):
		""" Return manifold dimension

		:rtype: int
		"""
		return 2

	@abstractmethod
	def fields_count(self):
		""" Return number of fields p

		:rtype: int
		"""
		raise NotImplementedError('This method is abstract')

	@abstractmethod
	def step(self):
		""" Return maximal bracket length r that is required for the Hoermander condition

		:rtype: int
		"""
		raise NotImplementedError('This method is abstract')

	@abstractmethod
	def field(self, k, x):
		""" Return the X_k vectors at the points

		:param k: field index
		:type k: int

		:param x: points (..., 2)
		:type x: numpy.ndarray

		:rtype: numpy.ndarray
		"""
		raise NotImplementedError('This method is abstract')

	@abstractmethod
	def bracket_table(self, x):
		""" Return closed-form vectors X^alpha(x) for every multi-index alpha with |alpha| <= r

		:param x: points (..., 2)
		:type x: numpy.ndarray

		:rtype: dict of tuple to numpy.ndarray
		"""
		raise NotImplementedError('This method is abstract')

	@abstractmethod
	def _flow(self, k, t, x):
		""" Return exp(t X_k) x for the field index array k (broadcastable), no range checks and no
		canonicalization

		:rtype: numpy.ndarray
		"""
		raise NotImplementedError('This method is abstract')

	def check_field(self, k):
		""" Return field indices as a numpy array or raise :class:`.WModelError`

		:rtype: numpy.ndarray
		"""
		k = numpy.asarray(k)
		if k.dtype.kind not in 'iu' or numpy.any(k < 1) or numpy.any(k > self.fields_count()):
			raise WModelError(
				'Field index must be an integer between 1 and %i for the "%s" model' %
				(self.fields_count(), self.name())
			)
		return k

	def flow(self, k, t, x):
		""" Return exp(t X_k) x. Field indices, times and points are broadcast together

		:param k: field index (or indices)
		:type k: int | numpy.ndarray

		:param t: flow time (or times)
		:type t: float | numpy.ndarray

		:param x: points (..., 2)
		:type x: numpy.ndarray

		:rtype: numpy.ndarray
		"""
		k = self.check_field(k)
		x = numpy.asarray(x, dtype=float)
		return self.canonicalize(self._flow(k, numpy.asarray(t, dtype=float), x))

	def is_compact(self):
		""" Return True if the manifold is the torus

		:rtype: bool
		"""
		return False

	def canonicalize(self, x):
		""" Return points in the fundamental domain

		:rtype: numpy.ndarray
		"""
		return x

	def displacement(self, x, y):
		""" Return the shortest vector from x to y

		:rtype: numpy.ndarray
		"""
		return numpy.asarray(y, dtype=float) - numpy.asarray(x, dtype=float)

	def has_lift(self):
		""" Return True if the model has an explicit map u -> exp(lambda(u)) from the free nilpotent group

		:rtype: bool
		"""
		return False

	def lie_structure(self):
		""" Return free nilpotent structure on p generators of the step r

		:rtype: WLieStructure
		"""
		return build_free_nilpotent(self.fields_count(), self.step())

	def lift_flow(self, u, x):
		""" Return exp(lambda(u)) x

		:param u: exponential coordinates (..., D)
		:type u: numpy.ndarray

		:param x: points (..., 2)
		:type x: numpy.ndarray

		:rtype: numpy.ndarray
		"""
		raise WModelError('The "%s" model has no nilpotent lift' % self.name())

	def y_invariant(self):
		""" Return True if every field commutes with the y-translations (the Galerkin operators are then block
		diagonal over y-frequencies)

		:rtype: bool
		"""
		return False

	def oracle(self):
		""" Return closed-form spectral data or None

		:rtype: object | None
		"""
		return None


class WTorusModel(WModelProto):
	""" Model on the torus [0, 1)^2 with the normalized Lebesgue measure
	"""

	__field_bandwidth__ = 0
	""" Largest x-frequency of field coefficients """

	def field_bandwidth(self):
		""" Return largest x-frequency of field coefficients

		:rtype: int
		"""
		return self.__field_bandwidth__

	def is_compact(self):
		""" :meth:`.WModelProto.is_compact` implementation
		"""
		return True

	def canonicalize(self, x):
		""" :meth:`.WModelProto.canonicalize` implementation
		"""
		result = x - numpy.floor(x)
		return numpy.where(result >= 1.0, 0.0, result)

	def displacement(self, x, y):
		""" :meth:`.WModelProto.displacement` implementation
		"""
		delta = numpy.asarray(y, dtype=float) - numpy.asarray(x, dtype=float)
		return delta - numpy.round(delta)


class WShearTorusModel(WTorusModel):
	""" Torus model with fields X_k = a_k(x) d/dx + b_k(x) d/dy. Every flow maps (x, y) to (x'(x, t), y + dy(x, t))
	"""

	@abstractmethod
	def shear_flow(self, k, t, x):
		""" Return x'(x, t) and dy(x, t) for the field index array k

		:param k: field indices
		:type k: numpy.ndarray

		:param t: times
		:type t: numpy.ndarray

		:param x: first coordinates
		:type x: numpy.ndarray

		:rtype: tuple of numpy.ndarray
		"""
		raise NotImplementedError('This method is abstract')

	@abstractmethod
	def field_coefficients(self, k, x):
		""" Return a_k(x) and b_k(x)

		:rtype: tuple of numpy.ndarray
		"""
		raise NotImplementedError('This method is abstract')

	def _flow(self, k, t, x):
		""" :meth:`.WModelProto._flow` implementation
		"""
		new_x, shift = self.shear_flow(k, t, x[..., 0])
		new_x, new_y = numpy.broadcast_arrays(new_x, x[..., 1] + shift)
		return numpy.stack([new_x, new_y], axis=-1)

	def field(self, k, x):
		""" :meth:`.WModelProto.field` implementation
		"""
		k = self.check_field(k)
		x = numpy.asarray(x, dtype=float)
		a, b = numpy.broadcast_arrays(*self.field_coefficients(k, x[..., 0]))
		return numpy.stack([a, b], axis=-1)

	def y_invariant(self):
		""" :meth:`.WModelProto.y_invariant` implementation
		"""
		return True


@register_entry(__models_registry__)
class WFlatTorus(WShearTorusModel):
	""" X1 = d/dx, X2 = d/dy on the torus. Every Fourier mode is an eigenfunction
	"""

	__registry_id__ = 'flat2'

	def fields_count(self):
		return 2

	def step(self):
		return 1

	def shear_flow(self, k, t, x):
		return numpy.where(k == 1, x + t, x), numpy.where(k == 2, t, 0.0)

	def field_coefficients(self, k, x):
		ones = numpy.ones_like(x)
		return numpy.where(k == 1, ones, 0.0), numpy.where(k == 2, ones, 0.0)

	def bracket_table(self, x):
		x = numpy.asarray(x, dtype=float)
		return {(1, ): self.field(1, x), (2, ): self.field(2, x)}

	def has_lift(self):
		return True

	def lift_flow(self, u, x):
		""" exp(u1 X1 + u2 X2) x
		"""
		u = numpy.asarray(u, dtype=float)
		return self.canonicalize(numpy.asarray(x, dtype=float) + u[..., :2])

	def oracle(self):
		return WFlatOracle()


class WFlatOracle:
	""" Closed-form spectra of the flat torus
	"""

	@staticmethod
	def transfer_multiplier(m, n, h):
		""" Return the T_h eigenvalue of the mode exp(2 pi i (m x + n y)): (sinc(2 pi m h) + sinc(2 pi n h)) / 2

		:rtype: float | numpy.ndarray
		"""
		# numpy.sinc(x) is sin(pi x) / (pi x)
		return 0.5 * (numpy.sinc(2 * m * h) + numpy.sinc(2 * n * h))

	@staticmethod
	def generator_multiplier(m, n):
		""" Return the L eigenvalue of the mode exp(2 pi i (m x + n y)): (pi^2 / 3) (m^2 + n^2)

		:rtype: float | numpy.ndarray
		"""
		return (math.pi ** 2 / 3) * (numpy.asarray(m) ** 2 + numpy.asarray(n) ** 2)

	@staticmethod
	def generator_levels(limit):
		""" Return distinct L eigenvalues that do not exceed the limit with theirs multiplicities

		:rtype: list of (float, int)
		"""
		bound = int(math.sqrt(3 * limit) / math.pi) + 1
		counts = {}
		for m in range(-bound, bound + 1):
			for n in range(-bound, bound + 1):
				if m == 0 and n == 0:
					continue
				level = m * m + n * n
				if (math.pi ** 2 / 3) * level <= limit:
					counts[level] = counts.get(level, 0) + 1
		return [((math.pi ** 2 / 3) * x, counts[x]) for x in sorted(counts)]


@register_entry(__models_registry__)
class WGrushinTorus(WShearTorusModel):
	""" X1 = d/dx, X2 = sin(2 pi x) d/dy on the torus, [X1, X2] = 2 pi cos(2 pi x) d/dy
	"""

	__registry_id__ = 'grushin2'
	__field_bandwidth__ = 1

	def fields_count(self):
		return 2

	def step(self):
		return 2

	def shear_flow(self, k, t, x):
		return numpy.where(k == 1, x + t, x), numpy.where(k == 2, t * numpy.sin(2 * math.pi * x), 0.0)

	def field_coefficients(self, k, x):
		return numpy.where(k == 1, 1.0, 0.0), numpy.where(k == 2, numpy.sin(2 * math.pi * x), 0.0)

	def bracket_table(self, x):
		x = numpy.asarray(x, dtype=float)
		bracket = numpy.stack(
			[numpy.zeros_like(x[..., 0]), 2 * math.pi * numpy.cos(2 * math.pi * x[..., 0])], axis=-1
		)
		return {(1, ): self.field(1, x), (2, ): self.field(2, x), (1, 2): bracket}

	def oracle(self):
		return WHillOracle()


class WHillOracle:
	""" Generator blocks of the torus Grushin model. The y-frequency n block is
	(1/12) (diag((2 pi m)^2) + (2 pi n)^2 G), G is the Galerkin matrix of sin^2(2 pi x) = 1/2 - (e^{4 pi i x} +
	e^{-4 pi i x}) / 4. G couples m with m +- 2 only, so even and odd x-frequencies are separate tridiagonal
	problems
	"""

	@staticmethod
	def hill_block(n, M):
		""" Return the dense block of the y-frequency n over x-frequencies -M..M

		:rtype: numpy.ndarray
		"""
		m = numpy.arange(-M, M + 1)
		coupling = (2 * math.pi * n) ** 2
		block = numpy.diag(((2 * math.pi * m) ** 2 + coupling / 2) / 12)
		off = numpy.full(2 * M - 1, -coupling / 48)
		return block + numpy.diag(off, 2) + numpy.diag(off, -2)

	@staticmethod
	def hill_spectrum(n, M):
		""" Return ascending eigenvalues of :meth:`.WHillOracle.hill_block` by two tridiagonal solves

		:rtype: numpy.ndarray
		"""
		m = numpy.arange(-M, M + 1)
		coupling = (2 * math.pi * n) ** 2
		values = []
		for parity in (0, 1):
			sub_m = m[numpy.abs(m) % 2 == parity]
			diagonal = ((2 * math.pi * sub_m) ** 2 + coupling / 2) / 12
			off_diagonal = numpy.full(len(sub_m) - 1, -coupling / 48)
			values.append(scipy.linalg.eigh_tridiagonal(diagonal, off_diagonal, eigvals_only=True))
		return numpy.sort(numpy.concatenate(values))


@register_entry(__models_registry__)
class WHeisenbergPlane(WModelProto):
	""" X1 = d/dx, X2 = x d/dy on the plane, [X1, X2] = d/dy. The Heisenberg group acts by
	exp(lambda(u)) (x, y) = (x + u1, y + u3 + u2 x + u1 u2 / 2)
	"""

	__registry_id__ = 'heis_lift'

	def fields_count(self):
		return 2

	def step(self):
		return 2

	def _flow(self, k, t, x):
		new_x = numpy.where(k == 1, x[..., 0] + t, x[..., 0])
		new_y = numpy.where(k == 2, x[..., 1] + t * x[..., 0], x[..., 1])
		new_x, new_y = numpy.broadcast_arrays(new_x, new_y)
		return numpy.stack([new_x, new_y], axis=-1)

	def field(self, k, x):
		k = self.check_field(k)
		x = numpy.asarray(x, dtype=float)
		a = numpy.where(k == 1, 1.0, 0.0) * numpy.ones_like(x[..., 0])
		b = numpy.where(k == 2, x[..., 0], 0.0)
		return numpy.stack(numpy.broadcast_arrays(a, b), axis=-1)

	def bracket_table(self, x):
		x = numpy.asarray(x, dtype=float)
		bracket = numpy.stack([numpy.zeros_like(x[..., 0]), numpy.ones_like(x[..., 0])], axis=-1)
		return {(1, ): self.field(1, x), (2, ): self.field(2, x), (1, 2): bracket}

	def has_lift(self):
		return True

	def lift_flow(self, u, x):
		u = numpy.asarray(u, dtype=float)
		x = numpy.asarray(x, dtype=float)
		new_x = x[..., 0] + u[..., 0]
		new_y = x[..., 1] + u[..., 2] + u[..., 1] * x[..., 0] + 0.5 * u[..., 0] * u[..., 1]
		return numpy.stack(numpy.broadcast_arrays(new_x, new_y), axis=-1)


@verify_type('strict', name=str)
def model_by_name(name):
	""" Return a model by its configuration name ("flat2", "grushin2", "heis_lift")

	:rtype: WModelProto
	"""
	try:
		return __models_registry__.get(name)()
	except WNoSuchEntryError as e:
		raise WModelError(str(e))


def model_names():
	""" Return names of built-in models

	:rtype: tuple of str
	"""
	return __models_registry__.ids()


def lift_flow(u, x):
	""" Heisenberg action on the plane: (x + u1, y + u3 + u2 x + u1 u2 / 2)

	:rtype: numpy.ndarray
	"""
	return WHeisenbergPlane().lift_flow(u, x)


def hormander_rank(model, x, max_length=None):
	""" Return rank of the bracket vectors X^alpha(x) with |alpha| <= max_length (r by default)

	:param model: model to check
	:type model: WModelProto

	:param x: a point or points (..., 2)
	:type x: numpy.ndarray

	:param max_length: longest bracket to include
	:type max_length: int | None

	:rtype: int | numpy.ndarray
	"""
	max_length = model.step() if max_length is None else max_length
	table = model.bracket_table(numpy.asarray(x, dtype=float))
	vectors = numpy.stack([v for alpha, v in sorted(table.items()) if len(alpha) <= max_length], axis=-2)
	rank = numpy.linalg.matrix_rank(vectors, tol=1e-10)
	return int(rank) if numpy.ndim(rank) == 0 else rank


@verify_value(step=lambda x: x > 0)
def divergence_residual(model, k, x, step=1e-5):
	""" Return the central-difference divergence of X_k at the point x

	:rtype: float
	"""
	x = numpy.asarray(x, dtype=float)
	result = 0.0
	for axis in (0, 1):
		shift = numpy.zeros(2)
		shift[axis] = step
		forward = model.field(k, x + shift)[..., axis]
		backward = model.field(k, x - shift)[..., axis]
		result = result + (forward - backward) / (2 * step)
	return float(result) if numpy.ndim(result) == 0 else result


@verify_value(step=lambda x: x > 0)
def flow_jacobian(model, k, t, x, step=1e-4):
	""" Return the central-difference Jacobian matrix of x -> exp(t X_k) x

	:rtype: numpy.ndarray
	"""
	x = numpy.asarray(x, dtype=float)
	columns = []
	for axis in (0, 1):
		shift = numpy.zeros(2)
		shift[axis] = step
		delta = model.displacement(model.flow(k, t, x - shift), model.flow(k, t, x + shift))
		columns.append(delta / (2 * step))
	return numpy.stack(columns, axis=-1)


@verify_value(eps=lambda x: x > 0, h=lambda x: 0 < x <= 1, n=lambda x: x > 0, bins=lambda x: x > 1)
def lift_image_area(model, x, eps, h, n, bins, stream):
	""" Estimate area of {exp(lambda(u)) x: u in I_(eps,h)} by the occupied cells of a bins x bins grid over the
	bounding box of n lifted samples

	:rtype: float
	"""
	if model.has_lift() is False:
		raise WModelError('The "%s" model has no nilpotent lift' % model.name())
	x = numpy.asarray(x, dtype=float)
	u = sample_box(model.lie_structure(), eps, h, stream, size=n)
	points = model.displacement(x, model.lift_flow(u, x))
	low, high = points.min(axis=0), points.max(axis=0)
	counts, _, _ = numpy.histogram2d(
		points[:, 0], points[:, 1], bins=bins, range=[[low[0], high[0]], [low[1], high[1]]]
	)
	cell = (high[0] - low[0]) * (high[1] - low[1]) / (bins * bins)
	occupied = int(numpy.count_nonzero(counts))
	logger.debug('Lift image at %s: %i of %i cells occupied', str(x), occupied, bins * bins)
	return occupied * cell
