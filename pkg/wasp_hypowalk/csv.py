# -*- coding: utf-8 -*-
# wasp_hypowalk/csv.py
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

import csv
import numbers

import numpy

from wasp_hypowalk.verify import verify_type, verify_value


def format_value(value):
	""" Return the CSV text of a value. Floats are written with 17 significant digits

	:rtype: str
	"""
	if value is None:
		return ''
	if isinstance(value, (bool, numpy.bool_)):
		return 'true' if value else 'false'
	if isinstance(value, numbers.Integral):
		return str(int(value))
	if isinstance(value, numbers.Real):
		return '%.17g' % float(value)
	if isinstance(value, str):
		return value
	raise TypeError('Unsupported CSV value: %s' % repr(value))


class WCSVExporter:
	""" Writes records with a fixed column order
	"""

	@verify_type('paranoid', titles=bool)
	@verify_type(columns=(list, tuple))
	@verify_value(columns=lambda x: len(x) > 0)
	def __init__(self, output_obj, columns, titles=True):
		""" Create an exporter

		:param output_obj: text stream to write to
		:type output_obj: io.TextIOBase

		:param columns: column names in the output order
		:type columns: list | tuple

		:param titles: whether the header row is written
		:type titles: bool
		"""
		self.__output_obj = output_obj
		self.__columns = tuple(columns)
		self.__titles = titles
		self.__csv_writer = None

	def output_obj(self):
		return self.__output_obj

	def columns(self):
		return self.__columns

	def titles(self):
		return self.__titles

	def export_titles(self):
		if self.__csv_writer is not None:
			raise RuntimeError('Unable to export titles multiple time')
		self.__csv_writer = csv.writer(self.output_obj(), lineterminator='\n')
		if self.titles() is True:
			self.__csv_writer.writerow(self.__columns)

	@verify_type('paranoid', record=(dict, list, tuple))
	def export(self, record):
		""" Write a single record. A dict must have exactly the exporter columns, a sequence must follow
		the column order

		:rtype: None
		"""
		if isinstance(record, dict):
			if set(record.keys()) != set(self.__columns):
				raise ValueError('Record fields %s do not match columns %s' % (sorted(record), self.__columns))
			record = [record[x] for x in self.__columns]
		elif len(record) != len(self.__columns):
			raise ValueError('Record has %i fields, %i expected' % (len(record), len(self.__columns)))
		if self.__csv_writer is None:
			self.export_titles()
		self.__csv_writer.writerow([format_value(x) for x in record])

	def export_all(self, records):
		for record in records:
			self.export(record)


@verify_type('paranoid', path=str)
def write_csv(path, columns, records):
	""" Write records to a new CSV file

	:param path: target file
	:type path: str

	:param columns: column names
	:type columns: list | tuple

	:param records: rows
	:type records: iterable

	:rtype: None
	"""
	with open(path, 'w', newline='') as f:
		exporter = WCSVExporter(f, columns)
		exporter.export_titles()
		exporter.export_all(records)
