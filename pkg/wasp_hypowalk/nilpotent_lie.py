# -*- coding: utf-8 -*-
# wasp_hypowalk/nilpotent_lie.py
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

""" Free nilpotent Lie algebras and groups of a bounded step.

Points of a group are numpy vectors of exponential coordinates in the Hall basis. A vector with the 'object'
dtype that holds :class:`fractions.Fraction` values is processed exactly, any other vector is processed with
floats
"""

import itertools
import logging
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy
from sympy.functions.combinatorial.numbers import mobius
from sympy.ntheory import divisors

from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)


class WLieParameterError(ValueError):
	""" This exception is raised when a Lie structure can not be built or an argument does not suit a structure
	(wrong dimension, multi-index that is too long, generator that does not exist)
	"""
	pass


@verify_type('strict', p=int, n=int)
@verify_value(p=lambda x: x >= 1, n=lambda x: x >= 1)
def witt_dimension(p, n):
	""" Return dimension of the degree-n component of the free Lie algebra on p generators (necklace formula)

	:param p: number of generators
	:type p: int

	:param n: degree
	:type n: int

	:rtype: int
	"""
	return int(sum(mobius(d) * p ** (n // d) for d in divisors(n)) // n)


@lru_cache(maxsize=None)
def dynkin_coefficients(r):
	""" Return exact coefficients of the Dynkin form of log(e^X e^Y) truncated at degree r. Each coefficient
	belongs to a word over {0, 1} (0 is X, 1 is Y) and multiplies the right-nested bracket of that word. Words
	that vanish identically (last two letters equal) are omitted

	:param r: truncation degree
	:type r: int

	:rtype: tuple of (tuple of int, Fraction)
	"""
	coefficients = {}

	def extend(pairs, total):
		if len(pairs) > 0:
			word = tuple(itertools.chain.from_iterable((0, ) * x + (1, ) * y for x, y in pairs))
			if len(word) == 1 or word[-1] != word[-2]:
				denominator = len(pairs) * total
				for x, y in pairs:
					denominator *= math.factorial(x) * math.factorial(y)
				sign = 1 if len(pairs) % 2 == 1 else -1
				coefficients[word] = coefficients.get(word, Fraction(0)) + Fraction(sign, denominator)

		for x in range(r - total + 1):
			for y in range(r - total - x + 1):
				if x + y > 0:
					extend(pairs + ((x, y), ), total + x + y)

	extend((), 0)
	ordered = sorted(coefficients.items(), key=lambda x: (len(x[0]), x[0]))
	return tuple((word, value) for word, value in ordered if value != 0)


@dataclass(frozen=True)
class WWordLetter:
	""" Single factor exp(sign * t[parameter] * Y[generator]) of a commutator word. Generator and parameter indices
	start from 1
	"""
	generator: int
	parameter: int
	sign: int


@dataclass(frozen=True)
class WWalkConstants:
	""" Combinatorial constants of the minorization argument
	"""
	b: tuple
	P: int
	D: int
	Q: int


class WLieStructure:
	""" Free up-to-step-r nilpotent Lie algebra on p generators with a Hall basis.

	Basis elements are numbered layer by layer. A basis element is either a generator or a bracket [u, v] of
	basis elements with u < v, where v is a generator or v = [v1, v2] with v1 <= u. Inside a layer elements go in
	the lexicographic order of (u, v)
	"""

	__max_p__ = 4
	__max_r__ = 5

	@verify_type('strict', p=int, r=int)
	def __init__(self, p, r):
		""" Build a basis and structure constants

		:param p: number of generators (1 <= p <= 4)
		:type p: int

		:param r: nilpotency step (1 <= r <= 5)
		:type r: int
		"""
		if not (1 <= p <= self.__max_p__) or not (1 <= r <= self.__max_r__):
			raise WLieParameterError(
				'Unsupported Lie structure p=%i, r=%i (1 <= p <= %i and 1 <= r <= %i are supported)' %
				(p, r, self.__max_p__, self.__max_r__)
			)
		self.__p = p
		self.__r = r

		self.__words = [None] * p
		self.__degrees = [1] * p
		self.__word_index = {}
		for n in range(2, r + 1):
			existing = len(self.__words)
			for u, v in itertools.combinations(range(existing), 2):
				if self.__degrees[u] + self.__degrees[v] != n:
					continue
				word_v = self.__words[v]
				if word_v is None or word_v[0] <= u:
					self.__word_index[(u, v)] = len(self.__words)
					self.__words.append((u, v))
					self.__degrees.append(n)

		self.__degrees_array = numpy.array(self.__degrees, dtype=int)
		self.__layer_dims = tuple(int((self.__degrees_array == j).sum()) for j in range(1, r + 1))
		self.__bracket_cache = {}

		table = {}
		for a, b in itertools.permutations(range(len(self.__words)), 2):
			if self.__degrees[a] + self.__degrees[b] <= r:
				value = self.__bracket_basis(a, b)
				if len(value) > 0:
					table[(a, b)] = value
		self.__structure_constants = table

		entries = [(a, b, g, c) for (a, b), value in sorted(table.items()) for g, c in sorted(value.items())]
		self.__sparse_i = numpy.array([x[0] for x in entries], dtype=int)
		self.__sparse_j = numpy.array([x[1] for x in entries], dtype=int)
		self.__sparse_c = numpy.array([float(x[3]) for x in entries], dtype=float)
		self.__scatter = numpy.zeros((len(entries), self.dimension()))
		self.__scatter[numpy.arange(len(entries)), numpy.array([x[2] for x in entries], dtype=int)] = 1.0
		self.__exact_entries = tuple(entries)

		logger.debug(
			'Free nilpotent structure p=%i r=%i: layers %s, %i non-zero structure constants',
			p, r, str(self.__layer_dims), len(entries)
		)

	def __bracket_basis(self, a, b):
		""" Return [e_a, e_b] as a dict {index: Fraction} by Hall rewriting
		"""
		if a == b or self.__degrees[a] + self.__degrees[b] > self.__r:
			return {}
		key = (a, b)
		if key in self.__bracket_cache:
			return self.__bracket_cache[key]

		if a > b:
			result = {k: -v for k, v in self.__bracket_basis(b, a).items()}
		else:
			word_b = self.__words[b]
			if word_b is None or word_b[0] <= a:
				result = {self.__word_index[(a, b)]: Fraction(1)}
			else:
				# [a, [b1, b2]] = [b1, [a, b2]] - [b2, [a, b1]]
				b1, b2 = word_b
				result = {}
				for k, c in self.__bracket_basis(a, b2).items():
					self.__accumulate(result, self.__bracket_basis(b1, k), c)
				for k, c in self.__bracket_basis(a, b1).items():
					self.__accumulate(result, self.__bracket_basis(b2, k), -c)

		self.__bracket_cache[key] = result
		return result

	@staticmethod
	def __accumulate(target, source, factor):
		for k, c in source.items():
			value = target.get(k, Fraction(0)) + factor * c
			if value == 0:
				target.pop(k, None)
			else:
				target[k] = value

	def p(self):
		""" Return number of generators

		:rtype: int
		"""
		return self.__p

	def r(self):
		""" Return nilpotency step

		:rtype: int
		"""
		return self.__r

	def dimension(self):
		""" Return total dimension D

		:rtype: int
		"""
		return len(self.__words)

	def homogeneous_dimension(self):
		""" Return homogeneous dimension Q = sum(j * a_j)

		:rtype: int
		"""
		return int(self.__degrees_array.sum())

	def layer_dims(self):
		""" Return dimensions a_1, ..., a_r of layers

		:rtype: tuple of int
		"""
		return self.__layer_dims

	def degrees(self):
		""" Return layer number of every coordinate

		:rtype: numpy.ndarray
		"""
		return self.__degrees_array.copy()

	def layer(self, j):
		""" Return coordinates slice of the j-th layer

		:rtype: slice
		"""
		if not (1 <= j <= self.__r):
			raise WLieParameterError('There is no layer %i' % j)
		start = sum(self.__layer_dims[:j - 1])
		return slice(start, start + self.__layer_dims[j - 1])

	def label(self, index):
		""" Return readable name of a basis element, like "[Y1,[Y1,Y2]]"

		:rtype: str
		"""
		word = self.__words[index]
		if word is None:
			return 'Y%i' % (index + 1)
		return '[%s,%s]' % (self.label(word[0]), self.label(word[1]))

	def labels(self):
		""" Return names of all basis elements

		:rtype: tuple of str
		"""
		return tuple(self.label(x) for x in range(self.dimension()))

	def index(self, label):
		""" Return index of a basis element by its name

		:rtype: int
		"""
		try:
			return self.labels().index(label.replace(' ', ''))
		except ValueError:
			raise WLieParameterError('No such basis element: %s' % label)

	def structure_constants(self):
		""" Return non-zero brackets of basis elements: {(alpha, beta): {gamma: Fraction}}

		:rtype: dict
		"""
		return {x: y.copy() for x, y in self.__structure_constants.items()}

	def structure_constant_rows(self):
		""" Return (alpha, beta, gamma, numerator, denominator) rows for alpha < beta

		:rtype: list of tuple
		"""
		return [
			(self.label(a), self.label(b), self.label(g), c.numerator, c.denominator)
			for a, b, g, c in self.__exact_entries if a < b
		]

	def zero(self, exact=False):
		""" Return the zero vector (the group identity)

		:rtype: numpy.ndarray
		"""
		if exact is True:
			return numpy.array([Fraction(0)] * self.dimension(), dtype=object)
		return numpy.zeros(self.dimension())

	def unit(self, index, exact=True):
		""" Return a basis vector

		:rtype: numpy.ndarray
		"""
		result = self.zero(exact=exact)
		result[index] = Fraction(1) if exact is True else 1.0
		return result

	def generator(self, k, exact=True):
		""" Return basis vector of the k-th generator (k starts from 1)

		:rtype: numpy.ndarray
		"""
		if not (1 <= k <= self.__p):
			raise WLieParameterError('There is no generator Y%i' % k)
		return self.unit(k - 1, exact=exact)

	def check_vector(self, vector):
		""" Return the vector as a numpy array or raise :class:`.WLieParameterError` if its last dimension is not D

		:rtype: numpy.ndarray
		"""
		if isinstance(vector, numpy.ndarray) is False:
			vector = list(vector)
			exact = any(isinstance(x, Fraction) for x in vector)
			vector = numpy.array(vector, dtype=(object if exact else float))
		if vector.ndim == 0 or vector.shape[-1] != self.dimension():
			raise WLieParameterError(
				'Vector of dimension %i expected, got shape %s' % (self.dimension(), str(vector.shape))
			)
		return vector

	@staticmethod
	def is_exact(vector):
		""" Return True if a vector holds exact values

		:rtype: bool
		"""
		return vector.dtype == object

	def bracket(self, a, b):
		""" Return [a, b]. Batches of vectors (..., D) are supported for float input

		:rtype: numpy.ndarray
		"""
		a, b = self.check_vector(a), self.check_vector(b)
		if self.is_exact(a) or self.is_exact(b):
			if a.ndim != 1 or b.ndim != 1:
				raise WLieParameterError('Exact brackets are computed for single vectors only')
			result = self.zero(exact=True)
			for i, j, g, c in self.__exact_entries:
				if a[i] != 0 and b[j] != 0:
					result[g] += c * a[i] * b[j]
			return result
		products = self.__sparse_c * a[..., self.__sparse_i] * b[..., self.__sparse_j]
		return products @ self.__scatter

	def nested_bracket(self, alpha):
		""" Return Y^alpha = [Y_a1, [Y_a2, ..., Y_ak]] exactly

		:param alpha: multi-index of generators (indices start from 1)
		:type alpha: tuple of int

		:rtype: numpy.ndarray
		"""
		alpha = self.check_multi_index(alpha)
		result = self.generator(alpha[-1])
		for k in reversed(alpha[:-1]):
			result = self.bracket(self.generator(k), result)
		return result

	def check_multi_index(self, alpha):
		""" Check that a multi-index suits this structure

		:rtype: tuple of int
		"""
		alpha = tuple(int(x) for x in alpha)
		if len(alpha) == 0 or len(alpha) > self.__r:
			raise WLieParameterError('Multi-index length must be between 1 and %i' % self.__r)
		if any(not (1 <= x <= self.__p) for x in alpha):
			raise WLieParameterError('Multi-index refers to a generator that does not exist')
		return alpha

	def jacobi_defects(self):
		""" Return triples of basis elements for which the Jacobi identity fails (exact arithmetic)

		:rtype: list of tuple
		"""
		defects = []
		dim = self.dimension()
		for a, b, c in itertools.combinations(range(dim), 3):
			if self.__degrees[a] + self.__degrees[b] + self.__degrees[c] > self.__r:
				continue
			total = {}
			for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
				for k, value in self.__bracket_basis(y, z).items():
					self.__accumulate(total, self.__bracket_basis(x, k), value)
			if len(total) > 0:
				defects.append((a, b, c))
		return defects


@lru_cache(maxsize=None)
def _cached_structure(p, r):
	return WLieStructure(p, r)


@verify_type('strict', p=int, r=int)
def build_free_nilpotent(p, r):
	""" Return the free up-to-step-r nilpotent Lie structure on p generators. Structures are immutable and cached

	:param p: number of generators (1 <= p <= 4)
	:type p: int

	:param r: step (1 <= r <= 5)
	:type r: int

	:rtype: WLieStructure
	"""
	return _cached_structure(p, r)


def bracket(s, a, b):
	""" Shortcut for :meth:`.WLieStructure.bracket`
	"""
	return s.bracket(a, b)


def _coefficient(value, exact):
	return value if exact is True else float(value)


def group_product(s, a, b):
	""" Return a . b by the Dynkin form of the Baker-Campbell-Hausdorff series truncated at step r

	:param s: Lie structure
	:type s: WLieStructure

	:param a: left factor (exponential coordinates, batches (..., D) are supported for floats)
	:type a: numpy.ndarray | list

	:param b: right factor
	:type b: numpy.ndarray | list

	:rtype: numpy.ndarray
	"""
	x, y = s.check_vector(a), s.check_vector(b)
	exact = s.is_exact(x) or s.is_exact(y)
	if exact is False:
		x, y = numpy.broadcast_arrays(x.astype(float), y.astype(float))
	elif x.ndim != 1 or y.ndim != 1:
		raise WLieParameterError('Exact products are computed for single points only')

	nested = {}

	def nested_bracket(word):
		if word not in nested:
			head = x if word[0] == 0 else y
			nested[word] = head if len(word) == 1 else s.bracket(head, nested_bracket(word[1:]))
		return nested[word]

	result = s.zero(exact=True) if exact is True else numpy.zeros(x.shape)
	for word, coefficient in dynkin_coefficients(s.r()):
		result = result + nested_bracket(word) * _coefficient(coefficient, exact)
	return result


def group_inverse(s, a):
	""" Return inverse of a point (exponential coordinates are negated)

	:rtype: numpy.ndarray
	"""
	return -s.check_vector(a)


def bch_terms(s):
	""" Return the Dynkin words with exact coefficients used by :func:`.group_product`

	:rtype: tuple of (tuple of int, Fraction)
	"""
	return dynkin_coefficients(s.r())


@verify_value(t=lambda x: x > 0)
def dilate(s, t, a):
	""" Return delta_t(a), the j-th layer is scaled by t^j

	:param s: Lie structure
	:type s: WLieStructure

	:param t: positive scale
	:type t: int | float | Fraction

	:param a: point to dilate
	:type a: numpy.ndarray | list

	:rtype: numpy.ndarray
	"""
	a = s.check_vector(a)
	if s.is_exact(a) and isinstance(t, (numbers.Rational, Fraction)):
		t = Fraction(t)
		return numpy.array([x * t ** int(d) for x, d in zip(a, s.degrees())], dtype=object)
	return a.astype(float) * numpy.power(float(t), s.degrees())


def homogeneous_norm(s, a):
	""" Return (sum_j |v_j|^(N/j))^(1/N) with N = 2 * r!, where |v_j| is the Euclidean norm of the j-th layer in
	Hall coordinates. Batches (..., D) are supported

	:rtype: float | numpy.ndarray
	"""
	a = s.check_vector(a).astype(float)
	exponent = 2 * math.factorial(s.r())
	layer_norms = numpy.stack(
		[numpy.linalg.norm(a[..., s.layer(j)], axis=-1) for j in range(1, s.r() + 1)], axis=-1
	)
	powers = numpy.arange(1, s.r() + 1, dtype=float)
	scale = numpy.max(layer_norms ** (1.0 / powers), axis=-1)
	safe_scale = numpy.where(scale > 0, scale, 1.0)
	scaled = layer_norms / safe_scale[..., None] ** powers
	result = safe_scale * numpy.sum(scaled ** (exponent / powers), axis=-1) ** (1.0 / exponent)
	result = numpy.where(scale > 0, result, 0.0)
	return float(result) if result.ndim == 0 else result


def commutator_word(s, alpha):
	""" Return the group-commutator word of a multi-index. The word for (j) is exp(t1 Y_j). The word for (j, beta)
	applies exp(t1 Y_j), then the word of beta (with parameters t2, t3, ...), then exp(-t1 Y_j), then the inverse
	of the word of beta. Letters are returned in the order of application

	:param s: Lie structure
	:type s: WLieStructure

	:param alpha: multi-index (generator indices start from 1)
	:type alpha: tuple of int

	:rtype: tuple of WWordLetter
	"""
	alpha = s.check_multi_index(alpha)

	def word(index):
		if len(index) == 1:
			return (WWordLetter(generator=index[0], parameter=1, sign=1), )
		tail = tuple(
			WWordLetter(generator=x.generator, parameter=x.parameter + 1, sign=x.sign) for x in word(index[1:])
		)
		inverse_tail = tuple(
			WWordLetter(generator=x.generator, parameter=x.parameter, sign=-x.sign) for x in reversed(tail)
		)
		return (WWordLetter(index[0], 1, 1), ) + tail + (WWordLetter(index[0], 1, -1), ) + inverse_tail

	return word(alpha)


def evaluate_word(s, word, t, base=None):
	""" Return base . exp(l_1) . exp(l_2) ... for letters l_i of a word

	:param s: Lie structure
	:type s: WLieStructure

	:param word: letters from :func:`.commutator_word`
	:type word: tuple of WWordLetter

	:param t: word parameters (Fraction values give exact result)
	:type t: list | tuple

	:param base: starting point (identity by default)
	:type base: numpy.ndarray | None

	:rtype: numpy.ndarray
	"""
	t = tuple(t)
	arity = max(x.parameter for x in word)
	if len(t) != arity:
		raise WLieParameterError('The word requires %i parameters, but %i were given' % (arity, len(t)))
	exact = all(isinstance(x, (numbers.Rational, Fraction)) for x in t)

	point = s.zero(exact=exact) if base is None else s.check_vector(base)
	for letter in word:
		if exact:
			step = s.generator(letter.generator) * (Fraction(letter.sign) * Fraction(t[letter.parameter - 1]))
		else:
			step = s.generator(letter.generator, exact=False) * (letter.sign * float(t[letter.parameter - 1]))
		point = group_product(s, point, step)
	return point


def word_remainder_ratios(s, alpha, t, scales=None):
	""" Return max |word(eps t) - eps^|alpha| t_1 ... t_k [X_alpha]| / eps^(|alpha| + 1) for every scale eps.
	Ratios do not grow when eps decreases, since the word agrees with the nested bracket up to higher layers

	:param s: Lie structure
	:type s: WLieStructure

	:param alpha: multi-index (generator indices start from 1)
	:type alpha: tuple of int

	:param t: word parameters (Fraction values give exact ratios)
	:type t: list | tuple

	:param scales: values of eps (1, 1/2, 1/4 and 1/8 by default)
	:type scales: list | tuple | None

	:rtype: list of float
	"""
	alpha = s.check_multi_index(alpha)
	scales = tuple(Fraction(1, 2 ** k) for k in range(4)) if scales is None else tuple(scales)
	word = commutator_word(s, alpha)
	nested = s.nested_bracket(alpha)
	order = len(alpha)
	product = Fraction(1)
	for x in t:
		product *= x

	ratios = []
	for eps in scales:
		value = evaluate_word(s, word, tuple(eps * x for x in t))
		leading = nested * (product * eps ** order)
		ratios.append(float(max(abs(x - y) for x, y in zip(value, leading)) / eps ** (order + 1)))
	return ratios


def walk_constants(s):
	""" Return b_1, ..., b_r (b_1 = 1, b_(n+1) = 2 b_n + 2), P = sum(a_j b_j), D and Q

	:rtype: WWalkConstants
	"""
	b = [1]
	for _ in range(s.r() - 1):
		b.append(2 * b[-1] + 2)
	P = sum(x * y for x, y in zip(s.layer_dims(), b))
	return WWalkConstants(b=tuple(b), P=P, D=s.dimension(), Q=s.homogeneous_dimension())


def box_half_widths(s, eps, h):
	""" Return eps * h^|alpha| for every coordinate

	:rtype: numpy.ndarray
	"""
	return eps * numpy.power(float(h), s.degrees())


@verify_value(eps=lambda x: x > 0, h=lambda x: 0 < x <= 1)
def sample_box(s, eps, h, stream, size=None):
	""" Return uniform sample(s) of the box I_(eps,h): u_alpha in (-eps h^|alpha|, eps h^|alpha|)

	:param s: Lie structure
	:type s: WLieStructure

	:param eps: box size
	:type eps: float

	:param h: scale
	:type h: float

	:param stream: random stream
	:type stream: numpy.random.Generator

	:param size: number of samples (single point if None)
	:type size: int | None

	:rtype: numpy.ndarray
	"""
	shape = (s.dimension(), ) if size is None else (size, s.dimension())
	return stream.uniform(-1.0, 1.0, size=shape) * box_half_widths(s, eps, h)


@verify_value(eps=lambda x: x > 0, h=lambda x: 0 < x <= 1, n=lambda x: x > 0)
def box_volume_estimate(s, eps, h, n, stream):
	""" Estimate Lebesgue volume of I_(eps,h) by rejection from the box with eps' = max(1, eps)

	:return: estimate, its standard error and the exact value (2 eps)^D h^Q
	:rtype: tuple of float
	"""
	reference = max(1.0, eps)
	samples = sample_box(s, reference, h, stream, size=n)
	inside = numpy.all(numpy.abs(samples) < box_half_widths(s, eps, h), axis=1)
	fraction = inside.mean()
	reference_volume = (2 * reference) ** s.dimension() * float(h) ** s.homogeneous_dimension()
	stderr = reference_volume * math.sqrt(fraction * (1 - fraction) / n)
	exact = (2 * eps) ** s.dimension() * float(h) ** s.homogeneous_dimension()
	return reference_volume * fraction, stderr, exact


def heisenberg_chart(s, a):
	""" Return (x, y, t) coordinates of a Heisenberg point, where the product is
	(x + x', y + y', t + t' + x y' - y x'), so t is twice the [Y1,Y2] coordinate

	:rtype: tuple
	"""
	_check_heisenberg(s)
	a = s.check_vector(a)
	return a[0], a[1], 2 * a[2]


def from_heisenberg_chart(s, point):
	""" Inverse of :func:`.heisenberg_chart`

	:rtype: numpy.ndarray
	"""
	_check_heisenberg(s)
	x, y, t = point
	if all(isinstance(v, (numbers.Rational, Fraction)) for v in point):
		return numpy.array([Fraction(x), Fraction(y), Fraction(t) / 2], dtype=object)
	return numpy.array([x, y, t / 2.0], dtype=float)


def _check_heisenberg(s):
	if s.p() != 2 or s.r() != 2:
		raise WLieParameterError('The (x, y, t) chart is defined for p=2, r=2 only')
