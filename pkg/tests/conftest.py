import pytest

from ramstruct.catalog import bundled_cayley_path
from ramstruct.groups import AbelianGroup, HeisenbergGroup
from ramstruct.parsing import load_cayley_file


@pytest.fixture(scope="session")
def c2c4cubed():
    return AbelianGroup([2, 4, 4, 4])


@pytest.fixture(scope="session")
def c6c6c2():
    return AbelianGroup([6, 6, 2])


@pytest.fixture(scope="session")
def heis3():
    return HeisenbergGroup(3)


@pytest.fixture(scope="session")
def heis5():
    return HeisenbergGroup(5)


@pytest.fixture(scope="session")
def q8():
    return load_cayley_file(str(bundled_cayley_path("q8")))


@pytest.fixture(scope="session")
def d4():
    return load_cayley_file(str(bundled_cayley_path("d4")))


@pytest.fixture(scope="session")
def s3():
    return load_cayley_file(str(bundled_cayley_path("s3")))
