import pytest

from revstruct.syntax import parse_structure


@pytest.fixture
def S():
    return parse_structure


@pytest.fixture
def join_start():
    return parse_structure("<a> | <b> | [^a.b > c]")


@pytest.fixture
def join_done():
    return parse_structure("<c> | [a.b > c^]")
