"""Per-thread execution context: which fabric endpoint, if any, is running code."""

import threading

_local = threading.local()


def current_endpoint():
    return getattr(_local, "endpoint", None)


def set_endpoint(ep):
    _local.endpoint = ep


def in_worker() -> bool:
    return getattr(_local, "in_worker", False)


def set_in_worker(flag: bool):
    _local.in_worker = flag


def current_scheduler():
    return getattr(_local, "scheduler", None)


def set_scheduler(sched, index=None):
    _local.scheduler = sched
    _local.sched_index = index


def scheduler_index():
    return getattr(_local, "sched_index", None)
