import sys

import pytest
from hypothesis import HealthCheck, settings

from qloid.diagonal import dq_from_quantale
from qloid.fixtures import named_quantales
from qloid.qcat import discrete_qcategory, terminal_qcategory
from qloid.quantaloid import one_object_quantaloid

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def quantales():
    return named_quantales()


@pytest.fixture(scope="session")
def dq(quantales):
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = dq_from_quantale(quantales[name])
        return cache[name]
    return get


@pytest.fixture(scope="session")
def singleton_b(dq):
    return discrete_qcategory(dq("Q2"), {"s": "b"}, name="SingletonB")


@pytest.fixture(scope="session")
def q5_pair(quantales):
    K = one_object_quantaloid(quantales["Q5"])
    return discrete_qcategory(K, {"x": "*", "y": "*"})


@pytest.fixture(scope="session")
def fixture_categories(dq, quantales):
    """Small categories over several bases, used by exhaustive invariant checks."""
    from qloid.qcat import validate_qcategory
    out = []
    for name in ("Q2", "Diamond", "Two", "Luk3", "Q5", "Frame3"):
        D = dq(name)
        out.append(terminal_qcategory(D))
        for p in D.objects:
            out.append(discrete_qcategory(D, {"x": p}))
    D = dq("Q2")
    out.append(validate_qcategory(D, {"y1": "b", "y2": "top"},
                                  {("y1", "y1"): "b", ("y1", "y2"): "ar",
                                   ("y2", "y1"): "bot", ("y2", "y2"): "top"}))
    out.append(discrete_qcategory(D, {"u": "b", "v": "top"}))
    D = dq("Two")
    out.append(validate_qcategory(D, {"x": "top", "y": "top"},
                                  {("x", "x"): "top", ("x", "y"): "top",
                                   ("y", "x"): "bot", ("y", "y"): "top"}))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
