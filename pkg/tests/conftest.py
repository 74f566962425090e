import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fusionlab.catalog.builtin import builtin_catalog  # noqa: E402
from fusionlab.catalog.families import construct, parse_spec  # noqa: E402


def group(text):
    return construct(parse_spec(text))


@pytest.fixture(scope="session")
def small_catalog():
    """Built-in entries of order at most 200."""
    return builtin_catalog(200)
