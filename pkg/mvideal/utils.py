"""Shared helpers for mvideal

Logging setup, JSON encoding, camera index range parsing and the bounded
concurrency helpers used by the verification session live here.
"""

import sys
import logging
import asyncio
import threading
import contextvars
from typing import List, Any, Coroutine, TypeVar, Optional

from mvideal.errors import VerificationCancelled

try:
    import ujson as json
    _DUMP_OPTIONS = {'sort_keys': True, 'indent': 2,
                     'escape_forward_slashes': False,
                     'ensure_ascii': False}
except ImportError:
    try:
        import rapidjson as json
        _DUMP_OPTIONS = {'sort_keys': True, 'indent': 2,
                         'ensure_ascii': False}
    except ImportError:
        import json
        _DUMP_OPTIONS = {'sort_keys': True, 'indent': 2,
                         'ensure_ascii': False}


_LOGGER = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(name)s %(levelname)s: %(message)s'


def configure_logging(level=logging.WARNING, stream=None):
    """Attach a single stderr handler to the mvideal logger tree

    Calling this more than once replaces the previously installed handler,
    so the command line front end can call it on every invocation.

    Args:
        level (int): The logging level for the ``mvideal`` logger
        stream (file): Optional output stream, defaults to sys.stderr

    Returns:
        The configured ``mvideal`` logger
    """
    logger = logging.getLogger('mvideal')
    for handler in list(logger.handlers):
        if getattr(handler, '_mvideal', False):
            logger.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._mvideal = True
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger


def expand_range(arg, value_delimiter=',', range_delimiter='-'):
    """
    Expands a delimited string of ranged integers into a sorted list

    ``'1,3-5'`` becomes ``[1, 3, 4, 5]``.  Duplicates are removed.

    :param arg: The string range to expand
    :param value_delimiter: The delimiter that separates values
    :param range_delimiter: The delimiter that signifies a range of values

    :return: The expanded integer values in ascending order
    :rtype: list
    """
    values = set()
    for item in str(arg).split(value_delimiter):
        item = item.strip()
        if not item:
            continue
        if range_delimiter in item:
            start, end = item.split(range_delimiter)
            values.update(range(int(start), int(end) + 1))
        else:
            values.add(int(item))
    return sorted(values)


def dumps(obj):
    """Serialize obj to deterministic JSON text (sorted keys, indent 2)"""
    return json.dumps(obj, **_DUMP_OPTIONS)


def loads(text):
    """Parse JSON text with the fastest available codec"""
    return json.loads(text)


T = TypeVar('T')

_CANCEL_EVENT = contextvars.ContextVar('mvideal_cancel_event', default=None)


def check_cancelled():
    """Raises VerificationCancelled once the running verification is told
    to stop

    Outside a verification started by run_in_worker this does nothing.
    """
    event = _CANCEL_EVENT.get()
    if event is not None and event.is_set():
        raise VerificationCancelled('verification cancelled')


async def run_in_worker(func, *args, timeout=None):
    """Runs a blocking verification in a worker thread with a time limit

    The worker sees a cancel event through a context variable.  When the
    limit passes the event is set and the coroutine waits until the worker
    reaches its next check_cancelled call, so no thread outlives the call.

    Args:
        func: The blocking callable
        timeout: Limit in seconds, None waits forever

    Returns:
        tuple: (result, timed_out); result is None when timed out
    """
    event = threading.Event()
    token = _CANCEL_EVENT.set(event)
    try:
        task = asyncio.ensure_future(asyncio.to_thread(func, *args))
    finally:
        _CANCEL_EVENT.reset(token)
    result = await execute_with_timeout(asyncio.shield(task), timeout,
                                        default=task)
    if result is not task:
        return result, False
    event.set()
    try:
        await task
    except VerificationCancelled:
        _LOGGER.debug('worker stopped after cancellation')
    return None, True


async def run_coroutines_with_limit(
    coros: List[Coroutine[Any, Any, T]],
    limit: int = 10
) -> List[T]:
    """
    Run verification coroutines with at most limit of them in flight

    A slot is released only when its verification has finished or has
    been stopped, so the number of busy worker threads never exceeds limit.

    Args:
        coros: One coroutine per verification
        limit: The session worker count

    Returns:
        Reports in the same order as the input coroutines
    """
    semaphore = asyncio.Semaphore(max(1, limit))

    async def run_with_semaphore(coro):
        async with semaphore:
            return await coro

    return await asyncio.gather(*(run_with_semaphore(c) for c in coros))


async def execute_with_timeout(
    coro: Coroutine[Any, Any, T],
    timeout: Optional[float],
    default: Optional[T] = None
) -> Optional[T]:
    """
    Await a verification step for at most timeout seconds

    Only the awaiting side stops at the limit; a worker thread behind the
    awaitable keeps running unless it is cancelled (see run_in_worker).

    Args:
        coro: The awaitable
        timeout: Limit in seconds, None waits forever
        default: Value returned when the limit passes

    Returns:
        The awaited result, or default on timeout
    """
    if timeout is None:
        return await coro
    try:
        return await asyncio.wait_for(coro, timeout=timeout)
    except asyncio.TimeoutError:
        _LOGGER.warning('verification timed out after %ss', timeout)
        return default
