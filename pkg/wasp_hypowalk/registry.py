# -*- coding: utf-8 -*-
# wasp_hypowalk/registry.py
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

from wasp_hypowalk.verify import verify_type, verify_value


class WNoSuchEntryError(LookupError):
	""" This exception is raised when a looked up id (model name, subcommand name) is not registered
	"""
	pass


class WDuplicateEntryError(Exception):
	""" This exception is raised when an id is registered twice
	"""
	pass


class WRegistry:
	""" Named collection of classes. Models are looked up by the names used in configuration files, experiment
	commands are looked up by subcommand names
	"""

	@verify_type('strict', title=str)
	@verify_value('strict', title=lambda x: len(x) > 0)
	def __init__(self, title):
		""" Create new registry

		:param title: what this registry holds (used in error messages only)
		:type title: str
		"""
		self.__title = title
		self.__entries = {}

	def title(self):
		""" Return what this registry holds

		:rtype: str
		"""
		return self.__title

	def register(self, entry_id, entry):
		""" Save an entry

		:param entry_id: unique id
		:type entry_id: str

		:param entry: registered object
		:type entry: any

		:raise WDuplicateEntryError: if the id is in use already

		:rtype: None
		"""
		if entry_id in self.__entries:
			raise WDuplicateEntryError('The %s "%s" has been registered already' % (self.__title, entry_id))
		self.__entries[entry_id] = entry

	def get(self, entry_id):
		""" Return previously saved entry

		:param entry_id: id of an entry
		:type entry_id: str

		:raise WNoSuchEntryError: if there is no such id

		:rtype: any
		"""
		try:
			return self.__entries[entry_id]
		except KeyError:
			pass
		raise WNoSuchEntryError(
			'Unknown %s: "%s" (one of %s expected)' % (self.__title, entry_id, ', '.join(self.ids()))
		)

	def __getitem__(self, item):
		""" Shortcut to :meth:`.WRegistry.get`
		"""
		return self.get(item)

	def has(self, entry_id):
		""" Check whether the id is registered

		:rtype: bool
		"""
		return entry_id in self.__entries

	def __contains__(self, item):
		""" Shortcut to :meth:`.WRegistry.has`
		"""
		return self.has(item)

	def ids(self):
		""" Return sorted ids

		:rtype: tuple of str
		"""
		return tuple(sorted(self.__entries.keys()))


def register_entry(registry, entry_id=None):
	""" This decorator registers a class (or a function) in the specified registry

	:param registry: registry to which an object should be registered
	:type registry: WRegistry

	:param entry_id: registration id. If it is not specified then the object attribute "__registry_id__" is used
	and then the object qualified name
	:type entry_id: str | None

	:rtype: callable
	"""
	def decorator_fn(decorated_obj):
		reg_id = entry_id
		if reg_id is None:
			reg_id = getattr(decorated_obj, '__registry_id__', None)
		if reg_id is None:
			reg_id = decorated_obj.__qualname__
		registry.register(reg_id, decorated_obj)
		return decorated_obj

	return decorator_fn
