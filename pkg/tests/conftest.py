import pytest

from hopfbrace import FieldSpec


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False, help="run the extended-tier checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def fs():
    return FieldSpec.rationals()


@pytest.fixture
def f5():
    return FieldSpec.prime(5)


@pytest.fixture
def h4_primitive_x(fs):
    """Sweedler's algebra with x made primitive, which breaks multiplicativity of Δ."""
    from hopfbrace.hopf_core import CoalgebraData, HopfData, map_from_labels, sweedler_h4

    h4 = sweedler_h4(fs)
    legs = [h4.labels]
    comult = map_from_labels(fs, legs, legs * 2, {
        "1": {("1", "1"): 1},
        "g": {("g", "g"): 1},
        "x": {("x", "1"): 1, ("1", "x"): 1},
        "xg": {("xg", "1"): 1, ("g", "xg"): 1},
    })
    return HopfData(h4.algebra, CoalgebraData(comult, h4.counit), h4.antipode, "h4-primitive")
