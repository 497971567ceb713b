import pytest

from toricsss import kernels
from toricsss.gf import GF

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


@pytest.fixture(params=FIELDS, ids=lambda pk: f"GF{pk[0]}^{pk[1]}")
def field(request):
    return GF(*request.param)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(None)
