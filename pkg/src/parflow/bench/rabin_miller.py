"""Rabin-Miller strong probable prime test with bases distributed by a farm."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Optional, Sequence

from ..backends import Backend, SequentialBackend
from ..errors import InvalidInput
from ..flow import lift
from ..skeletons import farm

DEFAULT_EXPONENT = 2203


class Verdict(str, Enum):
    PROBABLE_PRIME = "ProbablePrime"
    COMPOSITE = "Composite"


@dataclass(frozen=True)
class RabinMillerResult:
    verdict: Verdict
    failing_base: Optional[int] = None

    @property
    def probable_prime(self):
        return self.verdict is Verdict.PROBABLE_PRIME


def decompose(n):
    """Write ``n - 1 = 2**s * d`` with ``d`` odd; returns ``(s, d)``."""
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return s, d


def passes_base(n, a):
    """One strong probable prime subtest of ``n`` to base ``a``."""
    s, d = decompose(n)
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def passes_bases(n, bases):
    return [passes_base(n, a) for a in bases]


def validate(n, bases):
    if n <= 3 or n % 2 == 0:
        raise InvalidInput(f"need an odd integer > 3, got {n}")
    if not bases:
        raise InvalidInput("need at least one base")
    for a in bases:
        if not 2 <= a <= n - 2:
            raise InvalidInput(f"base {a} outside [2, {n - 2}]")


def reduce_checks(bases, checks) -> RabinMillerResult:
    for a, ok in zip(bases, checks):
        if not ok:
            return RabinMillerResult(Verdict.COMPOSITE, a)
    return RabinMillerResult(Verdict.PROBABLE_PRIME)


def workers_of(backend):
    return getattr(backend.conf, "workers", 1)


def rabin_miller(n: int, bases: Sequence[int], backend: Backend | None = None, num_cores: int | None = None):
    """Composite iff some base fails; the first failing base (by position) is reported."""
    bases = list(bases)
    validate(n, bases)
    backend = backend or SequentialBackend()
    checks = farm(backend, num_cores or workers_of(backend), lift(partial(passes_base, n)))(bases)
    return reduce_checks(bases, checks)


def rabin_miller_direct(n, bases, backend: Backend, num_cores: int | None = None):
    """Same tasks as ``rabin_miller``, dispatched by hand without flows."""
    bases = list(bases)
    validate(n, bases)
    k = num_cores or workers_of(backend)
    slices = [bases[i::k] for i in range(k)]
    results = backend.direct_map(partial(passes_bases, n), slices)
    checks = [None] * len(bases)
    for i, res in enumerate(results):
        checks[i::k] = res
    return reduce_checks(bases, checks)


def rabin_miller_sequential(n, bases):
    bases = list(bases)
    validate(n, bases)
    return reduce_checks(bases, (passes_base(n, a) for a in bases))


def mersenne(exp):
    return 2**exp - 1


def random_bases(n, count, seed=0):
    rng = random.Random(seed)
    return [rng.randrange(2, n - 1) for _ in range(count)]
