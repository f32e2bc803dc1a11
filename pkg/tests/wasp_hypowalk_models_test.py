
import math

import numpy
import pytest

from wasp_hypowalk.models import WModelError, WModelProto, WTorusModel, WShearTorusModel, WFlatTorus
from wasp_hypowalk.models import WGrushinTorus, WHeisenbergPlane, WFlatOracle, WHillOracle, model_by_name
from wasp_hypowalk.models import model_names, lift_flow, hormander_rank, divergence_residual, flow_jacobian
from wasp_hypowalk.models import lift_image_area
from wasp_hypowalk.nilpotent_lie import build_free_nilpotent, group_product


def test_exceptions():
	assert(issubclass(WModelError, ValueError) is True)


def test_abstract():
	pytest.raises(TypeError, WModelProto)
	pytest.raises(TypeError, WTorusModel)
	pytest.raises(TypeError, WShearTorusModel)
	pytest.raises(NotImplementedError, WModelProto.fields_count, None)
	pytest.raises(NotImplementedError, WModelProto.step, None)
	pytest.raises(NotImplementedError, WModelProto.field, None, 1, None)
	pytest.raises(NotImplementedError, WModelProto.bracket_table, None, None)
	pytest.raises(NotImplementedError, WShearTorusModel.shear_flow, None, None, None, None)
	pytest.raises(NotImplementedError, WShearTorusModel.field_coefficients, None, None, None)


def test_registry():
	assert(model_names() == ('flat2', 'grushin2', 'heis_lift'))
	assert(isinstance(model_by_name('flat2'), WFlatTorus) is True)
	assert(isinstance(model_by_name('grushin2'), WGrushinTorus) is True)
	assert(isinstance(model_by_name('heis_lift'), WHeisenbergPlane) is True)
	pytest.raises(WModelError, model_by_name, 'sphere')


class TestWFlatTorus:

	def test_flows(self):
		model = WFlatTorus()
		assert(model.name() == 'flat2')
		assert(model.is_compact() is True)
		assert(model.y_invariant() is True)
		assert(numpy.allclose(model.flow(1, 0.25, [0.9, 0.5]), [0.15, 0.5]))
		assert(numpy.allclose(model.flow(2, -0.75, [0.9, 0.5]), [0.9, 0.75]))
		pytest.raises(WModelError, model.flow, 3, 0.1, [0.0, 0.0])
		pytest.raises(WModelError, model.flow, 0, 0.1, [0.0, 0.0])

	def test_vectorized(self, stream):
		model = WFlatTorus()
		x = stream.uniform(size=(100, 2))
		k = stream.integers(1, 3, size=100)
		t = stream.uniform(-1, 1, size=100)
		result = model.flow(k, t, x)
		assert(result.shape == (100, 2))
		assert(numpy.all((result >= 0) & (result < 1)))
		for i in (0, 17, 99):
			assert(numpy.allclose(result[i], model.flow(int(k[i]), t[i], x[i])))

	def test_canonicalize(self):
		model = WFlatTorus()
		points = model.canonicalize(numpy.array([[-1e-17, 1.0], [2.5, -0.25]]))
		assert(numpy.all((points >= 0) & (points < 1)))
		assert(numpy.allclose(points[1], [0.5, 0.75]))
		assert(numpy.allclose(model.displacement([0.95, 0.5], [0.05, 0.45]), [0.1, -0.05]))

	def test_hormander(self):
		model = WFlatTorus()
		assert(hormander_rank(model, [0.3, 0.7]) == 2)
		assert(model.lie_structure().dimension() == 2)

	def test_oracle(self):
		oracle = model_by_name('flat2').oracle()
		assert(isinstance(oracle, WFlatOracle) is True)
		assert(oracle.transfer_multiplier(1, 0, 0.1) == pytest.approx(0.9677446, abs=1e-7))
		assert(oracle.transfer_multiplier(0, 0, 0.1) == 1.0)
		assert(oracle.generator_multiplier(1, 2) == pytest.approx(5 * math.pi ** 2 / 3))

		levels = oracle.generator_levels(15.0)
		assert([x[1] for x in levels] == [4, 4, 4])
		levels = oracle.generator_levels(17.0)
		assert([x[1] for x in levels] == [4, 4, 4, 8])


class TestWGrushinTorus:

	def test_fields(self):
		model = WGrushinTorus()
		x = numpy.array([[0.125, 0.3], [0.5, 0.9]])
		assert(numpy.allclose(model.field(2, x), [[0.0, math.sin(math.pi / 4)], [0.0, 0.0]]))
		assert(numpy.allclose(model.field(1, x), [[1.0, 0.0], [1.0, 0.0]]))
		assert(model.field_bandwidth() == 1)
		assert(numpy.allclose(model.flow(2, 0.5, [0.25, 0.75]), [0.25, 0.25]))

	def test_hormander(self):
		model = WGrushinTorus()
		assert(hormander_rank(model, [0.0, 0.3]) == 2)
		assert(hormander_rank(model, [0.0, 0.3], max_length=1) == 1)
		assert(hormander_rank(model, [0.25, 0.3], max_length=1) == 2)
		ranks = hormander_rank(model, numpy.array([[0.0, 0.0], [0.5, 0.1], [0.3, 0.1]]))
		assert(list(ranks) == [2, 2, 2])

	def test_bracket_table(self, stream):
		# [X1, X2] is the derivative of X2 along x for this model
		model = WGrushinTorus()
		x = stream.uniform(size=(10, 2))
		step = 1e-6
		numeric = (model.field(2, x + [step, 0]) - model.field(2, x - [step, 0])) / (2 * step)
		assert(numpy.allclose(model.bracket_table(x)[(1, 2)], numeric, atol=1e-6))

	def test_measure_preservation(self, stream):
		for model in (WFlatTorus(), WGrushinTorus()):
			for x in stream.uniform(size=(5, 2)):
				for k in (1, 2):
					assert(abs(divergence_residual(model, k, x)) <= 1e-8)
					determinant = numpy.linalg.det(flow_jacobian(model, k, 0.37, x))
					assert(abs(determinant - 1) <= 1e-10)

	def test_no_lift(self, stream):
		model = WGrushinTorus()
		assert(model.has_lift() is False)
		pytest.raises(WModelError, model.lift_flow, numpy.zeros(3), [0.0, 0.0])
		pytest.raises(WModelError, lift_image_area, model, [0.0, 0.0], 1.0, 0.1, 100, 10, stream)

	def test_oracle(self):
		oracle = WGrushinTorus().oracle()
		assert(isinstance(oracle, WHillOracle) is True)
		block = oracle.hill_block(3, 6)
		assert(block.shape == (13, 13))
		assert(numpy.allclose(block, block.T))
		assert(block[0, 1] == 0.0)
		assert(block[0, 2] == pytest.approx(-(6 * math.pi) ** 2 / 48))
		assert(numpy.allclose(oracle.hill_spectrum(3, 6), numpy.linalg.eigvalsh(block)))
		assert(numpy.allclose(oracle.hill_spectrum(0, 4), numpy.sort((2 * math.pi * numpy.arange(-4, 5)) ** 2 / 12)))


class TestWHeisenbergPlane:

	def test_flows(self):
		model = WHeisenbergPlane()
		assert(model.is_compact() is False)
		assert(model.y_invariant() is False)
		assert(numpy.allclose(model.flow(2, 0.5, [2.0, 1.0]), [2.0, 2.0]))
		assert(numpy.allclose(model.flow(1, 0.5, [2.0, 1.0]), [2.5, 1.0]))
		assert(numpy.allclose(model.field(2, [[3.0, 0.0]]), [[0.0, 3.0]]))
		assert(hormander_rank(model, [0.0, 0.0]) == 2)
		assert(hormander_rank(model, [0.0, 0.0], max_length=1) == 1)
		assert(abs(divergence_residual(model, 2, [0.4, -0.1])) <= 1e-8)

	def test_lift(self):
		model = WHeisenbergPlane()
		assert(model.has_lift() is True)
		assert(numpy.allclose(lift_flow([1.0, 2.0, 3.0], [0.5, 0.25]), [1.5, 0.25 + 3 + 1 + 1]))

		# single-generator lifts are the flows
		assert(numpy.allclose(model.lift_flow([0.3, 0.0, 0.0], [0.5, 0.25]), model.flow(1, 0.3, [0.5, 0.25])))
		assert(numpy.allclose(model.lift_flow([0.0, 0.3, 0.0], [0.5, 0.25]), model.flow(2, 0.3, [0.5, 0.25])))

	def test_flow_commutator(self):
		model = WHeisenbergPlane()
		grid = numpy.array([-1.5, -0.5, 0.0, 0.25, 0.75, 2.0])
		t1, t2, x, y = (z.ravel() for z in numpy.meshgrid(grid, grid, grid, grid, indexing='ij'))
		point = numpy.stack([x, y], axis=-1)
		result = model.flow(1, t1, point)
		result = model.flow(2, t2, result)
		result = model.flow(1, -t1, result)
		result = model.flow(2, -t2, result)
		assert(numpy.array_equal(result[:, 0], x) is True)
		assert(numpy.array_equal(result[:, 1], y + t1 * t2) is True)

	def test_lift_action(self, stream):
		model = WHeisenbergPlane()
		s = model.lie_structure()
		assert(s is build_free_nilpotent(2, 2))
		for _ in range(5):
			u, v = stream.normal(size=(2, 3))
			x = stream.normal(size=2)
			composed = model.lift_flow(u, model.lift_flow(v, x))
			assert(numpy.allclose(composed, model.lift_flow(group_product(s, v, u), x), atol=1e-12))

	def test_lift_image_area(self):
		model = WHeisenbergPlane()
		eps = 1.0

		def area(x, h):
			stream = numpy.random.Generator(numpy.random.Philox(numpy.random.SeedSequence(7)))
			return lift_image_area(model, x, eps, h, 400000, 100, stream)

		h = 0.2
		at_origin = area([0.0, 0.0], h)
		assert(at_origin == pytest.approx(h ** 3 * (4 * eps ** 2 + eps ** 3), rel=0.15))
		assert(at_origin / area([0.0, 0.0], h / 2) == pytest.approx(8.0, rel=1e-6))

		ratio = area([1.0, 0.0], 0.1) / area([1.0, 0.0], 0.05)
		assert(3.5 < ratio < 5.0)

	def test_torus_lift(self, stream):
		model = WFlatTorus()
		assert(numpy.allclose(model.lift_flow([0.3, 0.9], [0.8, 0.5]), [0.1, 0.4]))
		area = lift_image_area(model, [0.99, 0.5], 1.0, 0.05, 100000, 50, stream)
		assert(area == pytest.approx(0.01, rel=0.1))
