"""Shared model zoo for the test suite."""

import pytest

from miscount import (
    OffsetDistribution,
    make_point_error_model,
    make_symmetric_geometric_model,
)


def model_zoo() -> dict[str, OffsetDistribution]:
    """Named error models covering the shapes the suite cares about."""
    return {
        "error_free": make_point_error_model(0.0, +1),
        "always_wrong": make_point_error_model(1.0, -2),
        "point_half": make_point_error_model(0.5, +1),
        "point_small": make_point_error_model(0.3, -2),
        "three_value": OffsetDistribution.from_table({0: 0.5, -1: 0.25, 1: 0.25}),
        "geometric_narrow": make_symmetric_geometric_model(0.4, 0.5, -1, 1),
        "geometric_wide": make_symmetric_geometric_model(0.15, 0.3, -3, 3),
    }


@pytest.fixture(params=sorted(model_zoo()))
def any_model(request) -> OffsetDistribution:
    return model_zoo()[request.param]


@pytest.fixture
def three_value() -> OffsetDistribution:
    return model_zoo()["three_value"]


@pytest.fixture
def point_half() -> OffsetDistribution:
    return model_zoo()["point_half"]
