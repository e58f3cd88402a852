import pytest

from weyl27.checks import build_context


@pytest.fixture(scope="session")
def ctx():
    """Full pipeline run shared by every test that needs the complete table."""
    return build_context(workers=1)
