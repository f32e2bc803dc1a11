# -*- coding: utf-8 -*-
# wasp_hypowalk/thread.py
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
import os
from concurrent.futures import ThreadPoolExecutor
from threading import Lock
from decorator import decorator

from wasp_hypowalk.verify import verify_type, verify_value

logger = logging.getLogger(__name__)


class WCriticalSectionError(Exception):
	""" An exception that is raised if a lock for a critical section could not be acquired
	"""
	pass


@verify_type('strict', timeout=(int, float, None))
def acquire_lock(lock, timeout=None):
	""" Acquire a lock with a single 'timeout' argument instead of the 'blocking' and 'timeout' pair

	:param lock: a lock that should be gained
	:type lock: Lock

	:param timeout: None - wait forever, positive value - wait at most that many seconds, non-positive value -
	do not wait at all
	:type timeout: int | float | None

	:return: whether the lock is gained or not
	:rtype: bool
	"""
	if timeout is None:
		return lock.acquire(blocking=True, timeout=-1)
	elif timeout <= 0:
		return lock.acquire(blocking=False)
	return lock.acquire(blocking=True, timeout=timeout)


class WCriticalResource:
	""" Object with its own lock. Bounded methods decorated with :meth:`.WCriticalResource.critical_section`
	run exclusively
	"""

	def __init__(self):
		""" Create a lock
		"""
		self.__lock = Lock()

	def thread_lock(self):
		""" Return the lock with which bounded methods are protected

		:rtype: threading.Lock
		"""
		return self.__lock

	@staticmethod
	@verify_type('paranoid', timeout=(int, float, None), raise_exception=bool)
	def critical_section(timeout=None, raise_exception=True):
		""" Decorate a bounded method with the object lock

		:param timeout: the same as 'timeout' in the :func:`.acquire_lock` function
		:type timeout: int | float | None

		:param raise_exception: whether to raise :class:`.WCriticalSectionError` if the lock was not gained. If
		it is False then the method is silently skipped
		:type raise_exception: bool

		:rtype: callable
		"""

		def second_level_decorator(original_function, self, *args, **kwargs):
			if isinstance(self, WCriticalResource) is False:
				raise TypeError(
					'Invalid object type. It must be inherited from WCriticalResource class and'
					' decorated method must be bounded'
				)
			lock = self.thread_lock()
			if acquire_lock(lock, timeout=timeout) is True:
				try:
					return original_function(self, *args, **kwargs)
				finally:
					lock.release()
			elif raise_exception is True:
				raise WCriticalSectionError('Unable to lock a critical section')

		def first_level_decorator(decorated_function):
			return decorator(second_level_decorator)(decorated_function)
		return first_level_decorator


class WOrderedPool:
	""" Thread pool that maps a function over independent tasks (y-frequency blocks, walker chunks, h values) and
	returns results in submission order. Callers reduce the results in that order, so floating point sums do not
	depend on the number of workers
	"""

	@verify_type('strict', threads=(int, None))
	@verify_value(threads=lambda x: x is None or x >= 1)
	def __init__(self, threads=None):
		""" Create a pool description (threads are started on each :meth:`.WOrderedPool.map` call)

		:param threads: workers limit. Available cores are used by default
		:type threads: int | None
		"""
		self.__threads = threads if threads is not None else (os.cpu_count() or 1)

	def threads(self):
		""" Return workers limit

		:rtype: int
		"""
		return self.__threads

	def map(self, fn, tasks):
		""" Call the function for every task

		:param fn: function that accepts a single task
		:type fn: callable

		:param tasks: tasks to process
		:type tasks: iterable

		:return: results in the order of tasks
		:rtype: list
		"""
		tasks = list(tasks)
		if self.__threads == 1 or len(tasks) <= 1:
			return [fn(x) for x in tasks]

		logger.debug('Running %i tasks with %i threads', len(tasks), self.__threads)
		with ThreadPoolExecutor(max_workers=min(self.__threads, len(tasks))) as executor:
			return list(executor.map(fn, tasks))
