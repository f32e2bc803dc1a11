
import math

import numpy
import pytest

from wasp_hypowalk.fourier import WFourierBasis, WTrigPolynomial
from wasp_hypowalk.models import WFlatTorus, WGrushinTorus
from wasp_hypowalk.operator import WOperatorError, assemble_transfer, assemble_generator, eigen
from wasp_hypowalk.spectra import WConnectivityError, WClusterWindowError, WSpectralRangeError
from wasp_hypowalk.spectra import spectral_gap, rescaled_values, rescaled_low_spectrum, cluster_match
from wasp_hypowalk.spectra import block_cluster_match, generator_levels, gap_scan, gap_scaling_fit, richardson
from wasp_hypowalk.spectra import weyl_count, dirichlet_forms, dirichlet_bilinear, generator_consistency
from wasp_hypowalk.spectra import spectral_projectors, eigenfunction_supnorm_scan, chapman_taylor_check
from wasp_hypowalk.spectra import steps_count, spectrum_rows


def flat_ratio(h):
	return 0.5 * (1 - numpy.sinc(2 * h)) / h ** 2


def test_exceptions():
	assert(issubclass(WConnectivityError, ValueError) is True)
	assert(issubclass(WClusterWindowError, ValueError) is True)
	assert(issubclass(WSpectralRangeError, ValueError) is True)


class TestGap:

	def test_flat(self):
		decomposition = eigen(assemble_transfer(WFlatTorus(), 0.1, 8))
		assert(spectral_gap(decomposition) == pytest.approx(0.0322554, abs=1e-7))
		assert(spectral_gap(decomposition) == pytest.approx(0.5 * (1 - numpy.sinc(0.2)), rel=1e-10))
		assert(spectral_gap(decomposition.values[::-1]) == spectral_gap(decomposition))

	def test_errors(self):
		pytest.raises(WConnectivityError, spectral_gap, [1.0, 1.0, 0.5])
		pytest.raises(ValueError, spectral_gap, [0.9, 0.5])
		pytest.raises(ValueError, spectral_gap, [1.0])

	def test_steps_count(self):
		assert(steps_count(0.5, 0.05) == 200)
		assert(steps_count(0.3, 0.1) == 30)
		assert(steps_count(0.305, 0.1) == 30)
		assert(steps_count(0.0, 0.1) == 0)


class TestLowSpectrum:

	def test_rescaled(self):
		decomposition = eigen(assemble_transfer(WFlatTorus(), 0.1, 8))
		values = rescaled_values(decomposition, 0.1)
		assert(values[0] == pytest.approx(0.0, abs=1e-12))
		assert(numpy.all(numpy.diff(values) >= 0))

		low = rescaled_low_spectrum(decomposition, 0.1, 15)
		assert(len(low) == 12)
		assert(low[0] == pytest.approx(flat_ratio(0.1), rel=1e-9))
		pytest.raises(WSpectralRangeError, rescaled_low_spectrum, decomposition, 0.1, 30)
		pytest.raises(ValueError, rescaled_low_spectrum, decomposition, 0.1, -1)

	def test_cluster_match(self):
		h = 0.05
		decomposition = eigen(assemble_transfer(WFlatTorus(), h, 8))
		low = rescaled_low_spectrum(decomposition, h, 15)
		levels = WFlatOracleLevels.levels(15.3)

		report = cluster_match(low, levels, 0.3, R=15)
		assert(report.passed() is True)
		assert([x.m_found for x in report.clusters] == [4, 4, 4])
		assert(report.total() == len(low))
		assert(report.clusters[2].members[0] == pytest.approx(12.902, abs=1e-3))

		report = cluster_match(low, levels, 0.1, R=15)
		assert(report.passed() is False)
		assert(len(report.unmatched) == 4)
		assert(report.total() == len(low))

		boundary = cluster_match(rescaled_low_spectrum(decomposition, h, 13), levels, 0.3, R=13)
		assert(boundary.clusters[-1].boundary is True)
		assert(boundary.passed() is True)

		pytest.raises(WClusterWindowError, cluster_match, low, levels, 2.0)
		pytest.raises(WClusterWindowError, cluster_match, low, levels, 0.0)

	def test_generator_levels(self):
		levels = generator_levels([0.0, 1.0, 1.1, 1.15, 3.0, 9.0], 5, 0.05)
		assert(len(levels) == 2)
		assert(levels[0][1] == 3)
		assert(levels[0][2:] == (1.0, 1.15))
		assert(levels[1] == (3.0, 1, 3.0, 3.0))

	def test_flat_blocks(self):
		h = 0.05
		model = WFlatTorus()
		transfer = eigen(assemble_transfer(model, h, 8))
		generator = eigen(assemble_generator(model, 8))
		report = block_cluster_match(transfer, generator, h, 15)
		assert(report.drift == pytest.approx(math.pi ** 2 * 4 / 3 - 4 * flat_ratio(2 * h), rel=1e-6))
		assert(report.eps == pytest.approx(5 * report.drift))
		assert([x.m_expected for x in report.clusters] == [4, 4, 4, 8])
		assert([x.m_found for x in report.clusters] == [4, 4, 4, 0])
		assert(report.clusters[-1].boundary is True)
		assert(report.passed() is True)
		assert(len(report.rows()) == 4)

		pytest.raises(WOperatorError, block_cluster_match, generator, transfer, h, 15)

	def test_grushin_blocks(self):
		h = 0.05
		model = WGrushinTorus()
		transfer = eigen(assemble_transfer(model, h, 16))
		generator = eigen(assemble_generator(model, 16))
		report = block_cluster_match(transfer, generator, h, 12)
		assert(report.passed() is True)
		assert(report.drift < 1.0)
		assert(report.total() == len(rescaled_low_spectrum(transfer, h, 12)))
		assert(report.clusters[0].low == pytest.approx(generator.values[1], abs=1e-9))


class WFlatOracleLevels:

	@staticmethod
	def levels(limit):
		return WFlatTorus().oracle().generator_levels(limit)


class TestGapScaling:

	def test_flat(self):
		scan = gap_scaling_fit(WFlatTorus(), [0.1, 0.05], M=8)
		assert(scan.ratios[1] == pytest.approx(3.2736714, abs=1e-6))
		assert(scan.nu_hat == pytest.approx(3.2897166, abs=1e-6))
		assert(abs(scan.nu_hat / (math.pi ** 2 / 3) - 1) <= 1e-3)
		assert(abs(scan.ratios[1] / (math.pi ** 2 / 3) - 1) <= 1e-2)
		assert(scan.order is None)
		assert(scan.band_ok is True)
		assert(scan.monotone is True)
		assert(scan.rows()[0] == (0.1, scan.gaps[0], scan.ratios[0]))

		scan = gap_scaling_fit(WFlatTorus(), [0.2, 0.1, 0.05], M=8)
		assert(scan.order == pytest.approx(2.0, abs=0.1))

	def test_grushin(self):
		model = WGrushinTorus()
		scan = gap_scaling_fit(model, [0.1, 0.05], M=16)
		bottom = eigen(assemble_generator(model, 16)).values[1]
		assert(abs(scan.nu_hat / bottom - 1) <= 0.02)
		assert(scan.band_ok is True)

	def test_scan(self):
		scan = gap_scan([0.03, 0.04], [0.1, 0.05])
		assert(scan.monotone is False)
		assert(richardson([0.1, 0.05], [1.0, 2.0]) == [pytest.approx(7 / 3)])
		pytest.raises(ValueError, gap_scan, [0.03, 0.01], [0.05, 0.1])
		pytest.raises(ValueError, gap_scan, [0.03], [0.1])
		pytest.raises(ValueError, gap_scaling_fit, WFlatTorus(), [0.1])


class TestWeyl:

	def test_count(self):
		report = weyl_count([0.0, 1.0, 2.0, 2.0, 5.0], [1, 2, 10])
		assert(report.counts == [1, 3, 4])
		assert(report.exponent is not None)
		assert(report.rows()[1] == {'lambda': 2.0, 'count': 3})
		assert(weyl_count([0.0, 5.0], [1, 2]).exponent is None)

	def test_flat(self):
		values = rescaled_values(eigen(assemble_transfer(WFlatTorus(), 0.05, 16)), 0.05)
		report = weyl_count(values, [10, 20, 40, 80])
		assert(0.8 < report.exponent < 1.5)


class TestForms:

	def test_flat(self):
		model, h = WFlatTorus(), 0.1
		transfer, generator = assemble_transfer(model, h, 8), assemble_generator(model, 8)
		u = WTrigPolynomial.cosine(1, 0).coefficients(transfer.basis())
		discrete, limit = dirichlet_forms(transfer, generator, h, u)
		assert(discrete == pytest.approx(1.6128, abs=1e-4))
		assert(limit == pytest.approx(math.pi ** 2 / 6, rel=1e-12))

		f, g = transfer.basis().unit(1, 0), transfer.basis().unit(0, 1)
		discrete, limit = dirichlet_bilinear(transfer, generator, h, f, f)
		assert(discrete.real == pytest.approx(flat_ratio(h), rel=1e-9))
		assert(limit.real == pytest.approx(math.pi ** 2 / 3, rel=1e-12))
		assert(dirichlet_bilinear(transfer, generator, h, f, g) == (0, 0))

	def test_errors(self):
		model = WFlatTorus()
		transfer = assemble_transfer(model, 0.1, 8)
		u = transfer.basis().constant()
		pytest.raises(WOperatorError, dirichlet_forms, transfer, assemble_generator(model, 6), 0.1, u)
		pytest.raises(WOperatorError, dirichlet_forms, transfer, transfer, 0.1, u)


class TestConsistency:

	def test_flat(self):
		hs = [0.1, 0.05, 0.025]
		report = generator_consistency(WFlatTorus(), WTrigPolynomial.cosine(1, 0), hs)
		for h, error in zip(hs, report.errors):
			assert(error == pytest.approx(abs(flat_ratio(h) - math.pi ** 2 / 3), rel=1e-6))
		assert(report.ratios[0] == pytest.approx(3.9717, abs=1e-3))
		assert(report.ratios[1] == pytest.approx(3.9930, abs=1e-3))
		assert(report.passed() is True)

	def test_grushin(self):
		report = generator_consistency(WGrushinTorus(), WTrigPolynomial.cosine(0, 1), [0.1, 0.05, 0.025])
		assert(report.passed() is True)

	def test_chapman_taylor(self):
		h = 0.05
		transfer = assemble_transfer(WFlatTorus(), h, 4)
		f = WTrigPolynomial.cosine(1, 0).coefficients(transfer.basis())
		deltas = [0.125, 0.25, 0.5]
		report = chapman_taylor_check(transfer, h, f, deltas)

		tau = 1 - flat_ratio(h) * h ** 2
		for delta, scaled in zip(deltas, report.scaled):
			n = round(delta / h ** 2)
			assert(scaled == pytest.approx((tau ** n - 1 + n * (1 - tau)) / delta ** 2, rel=1e-8))
		assert(report.scaled[0] == pytest.approx(4.63, abs=0.01))
		assert(report.scaled[1] == pytest.approx(4.13, abs=0.01))
		assert(report.scaled[2] == pytest.approx(3.32, abs=0.01))
		assert(report.variation() < 2)
		pytest.raises(ValueError, chapman_taylor_check, transfer, h, f, [1.5])


class TestEigenfunctions:

	def test_projectors(self):
		basis = WFourierBasis(32)
		grid = basis.grid()
		f = basis.project(numpy.exp(numpy.cos(2 * math.pi * grid[..., 0]) + numpy.cos(2 * math.pi * grid[..., 1])))
		tails = []
		for h in (0.1, 0.05, 0.025):
			projection = spectral_projectors(assemble_transfer(WGrushinTorus(), h, 32), h, f)
			assert(numpy.allclose(projection.low + projection.high, f, atol=1e-12))
			tails.append(projection.tail)
		assert(tails[1] <= 0.3 * tails[0])
		assert(tails[2] <= 0.3 * tails[1])

	def test_flat_supnorms(self):
		h = 0.1
		transfer = assemble_transfer(WFlatTorus(), h, 8)
		scan = eigenfunction_supnorm_scan(transfer, h)
		assert(scan.rescaled[0] == pytest.approx(0.0, abs=1e-12))
		assert(scan.supnorms[0] == pytest.approx(1.0))
		assert(all(1 - 1e-9 <= x <= 2 + 1e-9 for x in scan.supnorms))
		assert(scan.supnorms[1] == pytest.approx(math.sqrt(2)))
		assert(max(scan.rescaled) <= 0.25 / h ** 2)
		assert(scan.exponent is not None)

		pytest.raises(WSpectralRangeError, eigenfunction_supnorm_scan, transfer, h, -1.0)

	def test_grushin_supnorms(self):
		h = 0.05
		scan = eigenfunction_supnorm_scan(assemble_transfer(WGrushinTorus(), h, 16), h)
		assert(min(scan.supnorms) >= 1 - 1e-9)
		assert(math.isfinite(scan.exponent) is True)


def test_spectrum_rows():
	h = 0.1
	transfer = eigen(assemble_transfer(WFlatTorus(), h, 2))
	rows = spectrum_rows(transfer, h)
	assert(len(rows) == 25)
	assert(rows[0] == (0, 0, 1.0, 0.0))
	assert(rows[1][2] == pytest.approx(1 - flat_ratio(h) * h ** 2))
	assert(rows[1][3] == pytest.approx(flat_ratio(h)))
	assert(sorted(x[1] for x in rows if x[0] == 1) == [0, 1, 2, 3, 4])

	generator = eigen(assemble_generator(WFlatTorus(), 2))
	assert(all(x[2] == x[3] for x in spectrum_rows(generator)))
