import pytest

from tdlab import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT-compile integration kernels once so runtime-budget tests measure
    # steady-state cost, not first-call compilation.
    _kernels.warmup()
