"""Test fixtures and utilities package"""

from .test_utils import (
    CustomAssertions,
    TestDataBuilder,
    table1_system,
    table2_system,
)

__all__ = [
    "CustomAssertions",
    "TestDataBuilder",
    "table1_system",
    "table2_system",
]
