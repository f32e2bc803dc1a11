
import math

import numpy
import pytest

from wasp_hypowalk.fourier import WFourierBasis, WTrigPolynomial
from wasp_hypowalk.models import WModelError, WFlatTorus, WGrushinTorus, WHeisenbergPlane
from wasp_hypowalk.operator import WOperatorError, WGalerkinOperator, TRANSFER, GENERATOR
from wasp_hypowalk.operator import assemble_transfer, assemble_transfer_dense, assemble_generator
from wasp_hypowalk.operator import assemble_generator_dense, eigen, apply_power, quadratic_form, bilinear_form
from wasp_hypowalk.operator import semigroup, markov_checks
from wasp_hypowalk.thread import WOrderedPool


def flat_oracle(M, h):
	m = numpy.arange(-M, M + 1)
	values = 0.5 * (numpy.sinc(2 * m[None, :] * h) + numpy.sinc(2 * m[:, None] * h))
	return values


def test_exceptions():
	assert(issubclass(WOperatorError, ValueError) is True)


class TestAssembleTransfer:

	@pytest.mark.parametrize('h', [0.2, 0.1, 0.05])
	def test_flat_oracle(self, h):
		op = assemble_transfer(WFlatTorus(), h, 16)
		assert(op.kind() == TRANSFER)
		assert(op.h() == h)
		assert(op.model_name() == 'flat2')
		assert(op.is_blocked() is True)
		assert(len(op.blocks()) == 33)

		expected = flat_oracle(16, h)
		for i, block in enumerate(op.blocks()):
			assert(numpy.allclose(block, numpy.diag(expected[i]), rtol=0, atol=1e-12))

		values = eigen(op).values
		assert(numpy.max(numpy.abs(values - numpy.sort(expected.ravel())[::-1])) <= 1e-10)

	def test_constant_mode(self):
		for model in (WFlatTorus(), WGrushinTorus()):
			op = assemble_transfer(model, 0.1, 6)
			constant = op.basis().constant()
			assert(numpy.array_equal(op.matvec(constant), constant) is True)
			assert(op.constant_defect() <= 1e-12)

	def test_grushin_zero_block(self):
		h, M = 0.1, 8
		op = assemble_transfer(WGrushinTorus(), h, M)
		m = numpy.arange(-M, M + 1)
		expected = 0.5 * (numpy.diag(numpy.sinc(2 * m * h)) + numpy.eye(2 * M + 1))
		assert(numpy.allclose(op.blocks()[M], expected, rtol=0, atol=1e-12))
		assert(op.asymmetry() <= 1e-9)
		for block in op.blocks():
			assert(numpy.array_equal(block, block.T) is True)

	def test_quadrature_convergence(self):
		model = WGrushinTorus()
		for M, q in ((4, 16), (16, 32)):
			coarse = assemble_transfer(model, 0.2, M, q=q)
			fine = assemble_transfer(model, 0.2, M, q=2 * q)
			for a, b in zip(coarse.blocks(), fine.blocks()):
				assert(numpy.max(numpy.abs(a - b)) <= 1e-10)

	def test_dense_consistency(self):
		model = WGrushinTorus()
		blocked = assemble_transfer(model, 0.1, 4)
		dense = assemble_transfer_dense(model, 0.1, 4)
		assert(dense.is_blocked() is False)
		assert(dense.blocks()[0].shape == (81, 81))
		assert(numpy.allclose(dense.dense_matrix(), blocked.dense_matrix(), rtol=0, atol=1e-10))
		assert(numpy.allclose(eigen(dense).values, eigen(blocked).values, rtol=0, atol=1e-10))

	def test_threads(self):
		model = WGrushinTorus()
		serial = assemble_transfer(model, 0.1, 8)
		parallel = assemble_transfer(model, 0.1, 8, pool=WOrderedPool(3))
		for a, b in zip(serial.blocks(), parallel.blocks()):
			assert(numpy.array_equal(a, b) is True)

	def test_single_field(self, stream):
		h, M = 0.1, 6
		basis = WFourierBasis(M)
		op = assemble_transfer(WFlatTorus(), h, M, field=1)
		assert(op.field() == 1)

		u = basis.project(stream.normal(size=(basis.grid_size(), basis.grid_size())))
		form = 2 * (numpy.sum(numpy.abs(u) ** 2) - quadratic_form(op, u))
		multipliers = 1 - numpy.sinc(2 * basis.frequencies() * h)
		expected = 2 * numpy.sum(multipliers[None, :] * numpy.abs(u) ** 2)
		assert(form == pytest.approx(expected, abs=1e-10))

		pytest.raises(WModelError, assemble_transfer, WFlatTorus(), h, M, field=3)

	def test_errors(self):
		model = WFlatTorus()
		pytest.raises(WOperatorError, assemble_transfer, model, 0.6, 4)
		pytest.raises(WOperatorError, assemble_transfer, model, 0.0, 4)
		pytest.raises(WOperatorError, assemble_transfer, model, 0.1, 1)
		pytest.raises(WOperatorError, assemble_transfer, model, 0.1, 4, q=4)
		pytest.raises(WModelError, assemble_transfer, WHeisenbergPlane(), 0.1, 4)
		pytest.raises(WModelError, assemble_generator, WHeisenbergPlane(), 4)
		pytest.raises(WOperatorError, assemble_generator, model, 1)


class TestAssembleGenerator:

	def test_flat(self):
		M = 6
		op = assemble_generator(WFlatTorus(), M)
		assert(op.kind() == GENERATOR)
		assert(op.h() is None)
		m = numpy.arange(-M, M + 1)
		expected = (math.pi ** 2 / 3) * (m[None, :] ** 2 + m[:, None] ** 2)
		for i, block in enumerate(op.blocks()):
			assert(numpy.allclose(block, numpy.diag(expected[i]), rtol=0, atol=1e-9))
		assert(op.blocks()[M][M + 1, M + 1] == pytest.approx(3.2898681, abs=1e-7))

	def test_grushin_hill(self):
		M = 8
		model = WGrushinTorus()
		op = assemble_generator(model, M)
		oracle = model.oracle()
		for n, block in zip(op.block_ids(), op.blocks()):
			assert(numpy.allclose(block, oracle.hill_block(n, M), rtol=0, atol=1e-9))
		m = numpy.arange(-M, M + 1)
		assert(numpy.allclose(numpy.diag(op.blocks()[M]), (math.pi ** 2 / 3) * m ** 2, rtol=0, atol=1e-9))

	def test_dense_consistency(self):
		model = WGrushinTorus()
		blocked = assemble_generator(model, 3)
		dense = assemble_generator_dense(model, 3)
		assert(numpy.allclose(dense.dense_matrix(), blocked.dense_matrix(), rtol=0, atol=1e-9))

	def test_kernel(self):
		for model in (WFlatTorus(), WGrushinTorus()):
			decomposition = eigen(assemble_generator(model, 6))
			assert(abs(decomposition.values[0]) <= 1e-10)
			assert(decomposition.values[1] > 1.0)
			constant = decomposition.vector(0)
			assert(abs(abs(constant[6, 6]) - 1) <= 1e-10)


class TestEigen:

	def test_flat_transfer(self):
		decomposition = eigen(assemble_transfer(WFlatTorus(), 0.1, 8))
		assert(decomposition.kind == TRANSFER)
		assert(len(decomposition) == 289)
		assert(decomposition.values[0] == 1.0)
		assert(numpy.allclose(decomposition.values[1:5], 0.9677446, atol=1e-7))
		assert(decomposition.values[5] < 0.96)
		assert(numpy.all(numpy.diff(decomposition.values) <= 0))

	@pytest.mark.parametrize('model, dense', [(WFlatTorus(), False), (WGrushinTorus(), False), (WGrushinTorus(), True)])
	def test_exact_constant_mode(self, model, dense):
		op = assemble_transfer(model, 0.1, 6, q=24, dense=dense)
		decomposition = eigen(op)
		assert(decomposition.values[0] == 1.0)
		assert(decomposition.values[1] < 1.0)
		constant = op.basis().zeros()
		constant[6, 6] = 1.0
		assert(numpy.array_equal(decomposition.vector(0), constant) is True)
		assert(decomposition.coordinates(constant)[0] == 1.0)

	def test_flat_generator(self):
		decomposition = eigen(assemble_generator(WFlatTorus(), 2))
		m = numpy.arange(-2, 3)
		expected = numpy.sort(((math.pi ** 2 / 3) * (m[None, :] ** 2 + m[:, None] ** 2)).ravel())
		assert(numpy.allclose(decomposition.values, expected, rtol=0, atol=1e-9))
		assert(numpy.all(numpy.diff(decomposition.values) >= 0))

	def test_residuals(self):
		op = assemble_transfer(WGrushinTorus(), 0.1, 6)
		decomposition = eigen(op)
		scale = op.norm()
		for j in range(0, len(decomposition), 7):
			vector = decomposition.vector(j)
			residual = op.matvec(vector) - decomposition.values[j] * vector
			assert(numpy.max(numpy.abs(residual)) <= 1e-9 * scale)
			assert(WFourierBasis.norm(vector) == pytest.approx(1.0))

	def test_ties(self):
		basis = WFourierBasis(2)
		op = WGalerkinOperator(TRANSFER, basis, [numpy.eye(5)] * 5, [-2, -1, 0, 1, 2], 'test')
		decomposition = eigen(op)
		assert(list(decomposition.block_of) == list(numpy.repeat(numpy.arange(5), 5)))
		assert(list(decomposition.local_of) == list(numpy.tile(numpy.arange(5), 5)))
		assert(decomposition.block_n(6) == -1)

	def test_small(self):
		op = WGalerkinOperator(GENERATOR, WFourierBasis(0), [numpy.array([[2.5]])], [0], 'test')
		assert(list(eigen(op).values) == [2.5])

		op = WGalerkinOperator(GENERATOR, WFourierBasis(0), [numpy.array([[1.0, 2.0], [0.0, 1.0]])], [None], 'test')
		pytest.raises(WOperatorError, eigen, op)

		pytest.raises(WOperatorError, WGalerkinOperator, 'other', WFourierBasis(0), [], [], 'test')

	def test_coordinates(self, stream):
		op = assemble_transfer(WGrushinTorus(), 0.1, 4)
		decomposition = eigen(op)
		f = op.basis().project(stream.normal(size=(36, 36)))
		weights = decomposition.coordinates(f)
		assert(numpy.allclose(decomposition.synthesize(weights), f, atol=1e-12))

		dense = eigen(assemble_transfer_dense(WGrushinTorus(), 0.1, 4))
		assert(numpy.allclose(dense.synthesize(dense.coordinates(f)), f, atol=1e-12))


class TestPowers:

	def test_apply_power(self):
		h, M = 0.1, 4
		op = assemble_transfer(WFlatTorus(), h, M)
		basis = op.basis()
		f = WTrigPolynomial.cosine(1, 0).coefficients(basis)
		assert(numpy.array_equal(apply_power(op, 0, f), f) is True)
		assert(numpy.array_equal(apply_power(op, 25, basis.constant()), basis.constant()) is True)

		tau = 0.5 * (1 + numpy.sinc(2 * h))
		result = apply_power(op, 10, f)
		assert(numpy.allclose(result, tau ** 10 * f, rtol=0, atol=1e-12))
		assert(tau ** 10 == pytest.approx(0.7205, abs=1e-3))
		assert(WFourierBasis.norm(result) <= WFourierBasis.norm(f))
		pytest.raises(ValueError, apply_power, op, -1, f)

	def test_forms(self, stream):
		op = assemble_transfer(WGrushinTorus(), 0.1, 4)
		basis = op.basis()
		f = basis.project(stream.normal(size=(36, 36)))
		g = basis.project(stream.normal(size=(36, 36)))
		assert(bilinear_form(op, f, g) == pytest.approx(numpy.conj(bilinear_form(op, g, f)), abs=1e-12))
		assert(bilinear_form(op, f, f).real == pytest.approx(quadratic_form(op, f)))
		pytest.raises(WOperatorError, op.matvec, numpy.zeros((3, 3)))

	def test_semigroup(self):
		M = 4
		op = assemble_generator(WFlatTorus(), M)
		basis = op.basis()
		f = WTrigPolynomial.cosine(1, 0).coefficients(basis)
		result = semigroup(op, 1.0, f)
		assert(numpy.allclose(result, math.exp(-math.pi ** 2 / 3) * f, rtol=0, atol=1e-12))
		assert(numpy.allclose(semigroup(op, 0.0, f), f, atol=1e-12))
		assert(numpy.allclose(semigroup(op, 3.0, basis.constant()), basis.constant(), atol=1e-12))

		dense = assemble_generator_dense(WGrushinTorus(), 3)
		blocked = assemble_generator(WGrushinTorus(), 3)
		g = WTrigPolynomial.cosine(1, 1).coefficients(dense.basis())
		assert(numpy.allclose(semigroup(dense, 0.2, g), semigroup(blocked, 0.2, g), atol=1e-10))

		transfer = assemble_transfer(WFlatTorus(), 0.1, M)
		pytest.raises(WOperatorError, semigroup, transfer, 1.0, f)
		pytest.raises(ValueError, semigroup, op, -1.0, f)


class TestMarkovChecks:

	def test_flat(self):
		report = markov_checks(assemble_transfer(WFlatTorus(), 0.1, 8))
		assert(report.passed() is True)
		assert(report.constant_fixed is True)
		assert(report.symmetry_residual == 0.0)
		assert(report.top_simple is True)
		assert(report.min_eigenvalue >= -0.22)
		assert(report.max_abs_eigenvalue <= 1 + 1e-8)

	def test_grushin(self):
		report = markov_checks(assemble_transfer(WGrushinTorus(), 0.05, 8))
		assert(report.passed() is True)
		assert(report.raw_asymmetry <= 1e-9)

	def test_generator(self):
		pytest.raises(WOperatorError, markov_checks, assemble_generator(WFlatTorus(), 3))
