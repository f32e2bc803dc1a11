# -*- coding: utf-8 -*-
# wasp_hypowalk/fourier.py
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

""" Truncated Fourier basis on the torus [0, 1)^2.

Coefficients of a function are stored in a (2M + 1, 2M + 1) complex array c, where c[n + M, m + M] is the
coefficient of exp(2 pi i (m x + n y)). The first axis is the y-frequency, so a row of c is a vector of a
y-frequency block. Grid values are stored with the same orientation: values[iy, ix] = f(ix / G, iy / G)
"""

import math

import numpy

from wasp_hypowalk.verify import verify_type, verify_value


class WFourierBasis:
	""" Modes exp(2 pi i (m x + n y)) with |m|, |n| <= M. The modes are orthonormal with respect to the normalized
	Lebesgue measure
	"""

	@verify_type('strict', M=int)
	@verify_value(M=lambda x: x >= 0)
	def __init__(self, M):
		""" Create a basis

		:param M: frequency cutoff
		:type M: int
		"""
		self.__M = M

	def M(self):
		""" Return frequency cutoff

		:rtype: int
		"""
		return self.__M

	def size(self):
		""" Return number of frequencies per axis (2M + 1)

		:rtype: int
		"""
		return 2 * self.__M + 1

	def dim(self):
		""" Return number of modes (2M + 1)^2

		:rtype: int
		"""
		return self.size() ** 2

	def frequencies(self):
		""" Return frequencies -M, ..., M

		:rtype: numpy.ndarray
		"""
		return numpy.arange(-self.__M, self.__M + 1)

	def index(self, m, n):
		""" Return position of the (m, n) mode in a flattened coefficient array

		:rtype: int
		"""
		self.check_mode(m, n)
		return (n + self.__M) * self.size() + (m + self.__M)

	def mode(self, index):
		""" Return (m, n) of a flattened position

		:rtype: tuple of int
		"""
		n_idx, m_idx = divmod(int(index), self.size())
		return m_idx - self.__M, n_idx - self.__M

	def check_mode(self, m, n):
		""" Raise ValueError if a mode is out of the basis
		"""
		if abs(m) > self.__M or abs(n) > self.__M:
			raise ValueError('Mode (%i, %i) is outside the cutoff M=%i' % (m, n, self.__M))

	def zeros(self):
		""" Return coefficients of the zero function

		:rtype: numpy.ndarray
		"""
		return numpy.zeros((self.size(), self.size()), dtype=complex)

	def unit(self, m, n):
		""" Return coefficients of a single mode

		:rtype: numpy.ndarray
		"""
		self.check_mode(m, n)
		result = self.zeros()
		result[n + self.__M, m + self.__M] = 1.0
		return result

	def constant(self):
		""" Return coefficients of the constant 1

		:rtype: numpy.ndarray
		"""
		return self.unit(0, 0)

	def grid_size(self):
		""" Return default number of evaluation points per axis: 4 (2M + 1)

		:rtype: int
		"""
		return 4 * self.size()

	def grid(self, size=None):
		""" Return an evaluation grid as an array (size, size, 2), grid[iy, ix] = (ix / size, iy / size)

		:rtype: numpy.ndarray
		"""
		size = self.grid_size() if size is None else size
		axis = numpy.arange(size) / size
		xs, ys = numpy.meshgrid(axis, axis, indexing='xy')
		return numpy.stack([xs, ys], axis=-1)

	def evaluate_grid(self, coefficients, size=None):
		""" Return complex values of a function on the grid

		:param coefficients: function coefficients
		:type coefficients: numpy.ndarray

		:param size: points per axis (at least 2M + 1)
		:type size: int | None

		:rtype: numpy.ndarray
		"""
		size = self.grid_size() if size is None else size
		if size < self.size():
			raise ValueError('Evaluation grid is coarser than the basis')
		spectrum = numpy.zeros((size, size), dtype=complex)
		k = self.frequencies() % size
		spectrum[numpy.ix_(k, k)] = coefficients
		return numpy.fft.ifft2(spectrum) * (size * size)

	def project(self, values):
		""" Return coefficients of the L2 projection of grid values (values[iy, ix]) onto the basis

		:rtype: numpy.ndarray
		"""
		values = numpy.asarray(values)
		size = values.shape[0]
		if values.shape != (size, size) or size < self.size():
			raise ValueError('Square grid with at least %i points per axis expected' % self.size())
		spectrum = numpy.fft.fft2(values) / (size * size)
		k = self.frequencies() % size
		return spectrum[numpy.ix_(k, k)]

	def evaluate(self, coefficients, points):
		""" Return complex values at arbitrary points (..., 2)

		:rtype: numpy.ndarray
		"""
		points = numpy.asarray(points, dtype=float)
		freq = self.frequencies()
		x_phase = numpy.exp(2j * math.pi * points[..., 0, None] * freq)
		y_phase = numpy.exp(2j * math.pi * points[..., 1, None] * freq)
		return numpy.einsum('...n,nm,...m->...', y_phase, coefficients, x_phase)

	@staticmethod
	def is_real(coefficients, tolerance=1e-12):
		""" Check Hermitian symmetry c(-m, -n) = conj(c(m, n)) (real function)

		:rtype: bool
		"""
		mirrored = numpy.conj(coefficients[::-1, ::-1])
		return bool(numpy.max(numpy.abs(coefficients - mirrored), initial=0.0) <= tolerance)

	@staticmethod
	def inner(f, g):
		""" Return L2 product (f | g) = sum conj(f) g

		:rtype: complex
		"""
		return complex(numpy.vdot(f, g))

	@staticmethod
	def norm(f):
		""" Return L2 norm

		:rtype: float
		"""
		return float(numpy.linalg.norm(f))


class WTrigPolynomial:
	""" Finite sum of c * exp(2 pi i (m x + n y)). The text form is a comma separated list of "m:n:c" terms, for
	example cos(2 pi x) is "1:0:0.5, -1:0:0.5"
	"""

	def __init__(self, *terms):
		""" Create a polynomial

		:param terms: (m, n, c) triples, repeated modes are summed
		:type terms: tuple
		"""
		merged = {}
		for m, n, c in terms:
			key = (int(m), int(n))
			merged[key] = merged.get(key, 0) + complex(c)
		self.__terms = tuple((m, n, c) for (m, n), c in sorted(merged.items()) if c != 0)

	@classmethod
	@verify_type('strict', text=str)
	def parse(cls, text):
		""" Parse the "m:n:c, ..." form

		:rtype: WTrigPolynomial
		"""
		terms = []
		for item in text.split(','):
			item = item.strip()
			if len(item) == 0:
				continue
			parts = item.split(':')
			if len(parts) != 3:
				raise ValueError('Malformed trigonometric term "%s" ("m:n:coefficient" expected)' % item)
			try:
				terms.append((int(parts[0]), int(parts[1]), complex(parts[2].replace(' ', ''))))
			except ValueError:
				raise ValueError('Malformed trigonometric term "%s"' % item)
		if len(terms) == 0:
			raise ValueError('Trigonometric polynomial has no terms')
		return cls(*terms)

	@classmethod
	def cosine(cls, m, n, amplitude=1.0):
		""" Return amplitude * cos(2 pi (m x + n y))

		:rtype: WTrigPolynomial
		"""
		if m == 0 and n == 0:
			return cls((0, 0, amplitude))
		return cls((m, n, amplitude / 2), (-m, -n, amplitude / 2))

	def terms(self):
		""" Return (m, n, c) terms

		:rtype: tuple
		"""
		return self.__terms

	def bandwidth(self):
		""" Return largest |m| or |n|

		:rtype: int
		"""
		return max((max(abs(m), abs(n)) for m, n, _ in self.__terms), default=0)

	def is_real(self):
		""" Return True if the polynomial is real valued

		:rtype: bool
		"""
		terms = {(m, n): c for m, n, c in self.__terms}
		return all(abs(terms.get((-m, -n), 0) - c.conjugate()) <= 1e-14 for (m, n), c in terms.items())

	def __call__(self, points):
		""" Return values at points (..., 2). Real polynomials give real values

		:rtype: numpy.ndarray
		"""
		points = numpy.asarray(points, dtype=float)
		result = numpy.zeros(points.shape[:-1], dtype=complex)
		for m, n, c in self.__terms:
			result += c * numpy.exp(2j * math.pi * (m * points[..., 0] + n * points[..., 1]))
		return result.real if self.is_real() else result

	def coefficients(self, basis):
		""" Return coefficients in a basis

		:param basis: target basis (every term must fit into it)
		:type basis: WFourierBasis

		:rtype: numpy.ndarray
		"""
		result = basis.zeros()
		for m, n, c in self.__terms:
			basis.check_mode(m, n)
			result[n + basis.M(), m + basis.M()] += c
		return result

	def __str__(self):
		return ', '.join('%i:%i:%s' % (m, n, repr(c.real) if c.imag == 0 else repr(c)) for m, n, c in self.__terms)
