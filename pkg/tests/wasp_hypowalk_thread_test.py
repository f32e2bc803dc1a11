
import threading
import time

import pytest

from wasp_hypowalk.thread import acquire_lock, WCriticalResource, WCriticalSectionError, WOrderedPool


def test_acquire_lock():
	lock = threading.Lock()
	assert(acquire_lock(lock) is True)  # blocking mode - may wait forever
	assert(acquire_lock(lock, timeout=-1) is False)  # lock is already locked and non-blocking mode is used
	assert(acquire_lock(lock, timeout=1) is False)  # lock is already locked and blocking mode is used
	lock.release()
	assert(acquire_lock(lock, timeout=-1) is True)


class TestWCriticalResource:

	__threads__ = 50
	__repeats__ = 50

	class SharedResource(WCriticalResource):

		__lock_acquiring_timeout__ = 5

		def __init__(self):
			WCriticalResource.__init__(self)
			self.counter = 0

		@WCriticalResource.critical_section(timeout=__lock_acquiring_timeout__)
		def increase(self, **kwargs):
			self.counter += 1

		@WCriticalResource.critical_section(timeout=0.1, raise_exception=False)
		def try_increase(self):
			self.counter += 1

	def test(self):
		sr = TestWCriticalResource.SharedResource()
		assert(sr.counter == 0)

		def thread_fn_increase():
			for i in range(self.__repeats__):
				sr.increase()

		threads = [threading.Thread(target=thread_fn_increase) for x in range(self.__threads__)]
		for th in threads:
			th.start()

		for th in threads:
			th.join()

		assert(sr.counter == (self.__threads__ * self.__repeats__))

	def test_locked(self):
		sr = TestWCriticalResource.SharedResource()
		sr.thread_lock().acquire()
		sr.try_increase()
		assert(sr.counter == 0)
		sr.thread_lock().release()
		sr.try_increase()
		assert(sr.counter == 1)

	def test_exceptions(self):
		class A:
			@WCriticalResource.critical_section()
			def foo(self):
				pass
		with pytest.raises(TypeError):
			A().foo()

		class B(WCriticalResource):
			@WCriticalResource.critical_section(timeout=0.1)
			def foo(self):
				pass

		b = B()
		b.thread_lock().acquire()
		pytest.raises(WCriticalSectionError, b.foo)
		b.thread_lock().release()


class TestWOrderedPool:

	def test(self):
		assert(WOrderedPool(3).threads() == 3)
		assert(WOrderedPool().threads() >= 1)
		pytest.raises(ValueError, WOrderedPool, 0)

	@pytest.mark.parametrize('threads', [1, 2, 8])
	def test_order(self, threads):

		def task(x):
			time.sleep(0.001 * ((7 * x) % 5))
			return x * x

		assert(WOrderedPool(threads).map(task, range(20)) == [x * x for x in range(20)])
		assert(WOrderedPool(threads).map(task, []) == [])

	def test_threads(self):
		names = set()
		barrier = threading.Barrier(4)

		def task(x):
			barrier.wait(timeout=5)
			names.add(threading.current_thread().name)
			return x

		assert(WOrderedPool(4).map(task, range(4)) == [0, 1, 2, 3])
		assert(len(names) == 4)
