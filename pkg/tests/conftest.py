import pytest

from parflow import DistConf, PoolBackend, PoolConf, SequentialBackend, SimDistBackend


@pytest.fixture(scope="session")
def pool():
    # created before any SimDist threads exist, so forking stays clean
    b = PoolBackend(PoolConf(workers=2))
    yield b
    b.close()


@pytest.fixture(scope="session")
def simdist():
    b = SimDistBackend(DistConf(workers=3))
    yield b
    b.close()


@pytest.fixture(scope="session")
def seq():
    return SequentialBackend()


@pytest.fixture(params=["seq", "pool", "simdist"])
def backend(request, pool):
    return request.getfixturevalue(request.param)
