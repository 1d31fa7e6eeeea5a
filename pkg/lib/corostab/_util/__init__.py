# coding=utf-8
# corostab
# Copyright (C) 2026 The corostab developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

import contextlib
import logging
import os
import sys
import tempfile
import threading

import six

from six.moves import queue


#: The environment variable holding the default worker count
JOBS_VARIABLE = 'COROSTAB_JOBS'


def default_jobs():
    """Returns the default number of workers.

    This is read from the environment variable ``COROSTAB_JOBS``, and defaults
    to ``1`` if it is not set.

    :raises ValueError: if the variable is set to something other than a
        positive integer

    :return: the worker count
    """
    value = os.environ.get(JOBS_VARIABLE, None)
    if not value:
        return 1

    try:
        jobs = int(value)
    except ValueError:
        raise ValueError('invalid {}: {!r}'.format(JOBS_VARIABLE, value))
    if jobs < 1:
        raise ValueError('invalid {}: {!r}'.format(JOBS_VARIABLE, value))
    return jobs


@contextlib.contextmanager
def atomic_output(path, mode='w'):
    """Opens a file for writing that only appears once completely written.

    This function is a context manager that yields a file object for a
    temporary file in the directory of ``path``. When the block exits normally
    the temporary file is renamed to ``path``; if the block raises, the
    temporary file is removed and ``path`` is left untouched.

    :param str path: The final file name.

    :param str mode: The file mode; either ``'w'`` or ``'wb'``.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, temporary = tempfile.mkstemp(
        '.tmp',
        '.' + os.path.basename(path) + '.',
        directory)
    try:
        with os.fdopen(fd, mode) as f:
            yield f
        os.replace(temporary, path)

    except:
        try:
            os.unlink(temporary)
        except OSError:
            pass
        raise


def parallel_map(function, items, jobs=1):
    """Applies a function to every item, possibly from several threads.

    The results are merged keyed by item index, so the returned list is in
    the order of ``items`` regardless of the order in which workers finish.

    :param callable function: The function to apply. It is passed a single
        item.

    :param items: The items to process.

    :param int jobs: The number of worker threads. Values less than ``2``
        process the items in the calling thread.

    :return: a list of results

    :raises Exception: the first exception raised by ``function``
    """
    items = list(items)
    if jobs < 2 or len(items) < 2:
        return [function(item) for item in items]

    log = logging.getLogger(__name__)
    tasks = queue.Queue()
    for index, item in enumerate(items):
        tasks.put((index, item))

    results = {}
    errors = []
    lock = threading.Lock()

    def worker():
        while True:
            try:
                index, item = tasks.get_nowait()
            except queue.Empty:
                return
            with lock:
                if errors:
                    return
            try:
                result = function(item)
            except:
                log.error(
                    'Processing item {} failed'.format(index), exc_info=True)
                with lock:
                    errors.append(sys.exc_info())
                return
            with lock:
                results[index] = result

    threads = [
        threading.Thread(target=worker)
        for _ in range(min(jobs, len(items)))]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    if errors:
        six.reraise(*errors[0])

    return [results[index] for index in range(len(items))]
