import pytest

from brute import brute_pattern_count
from ditherfeat import DomainError, cdpc_pattern_count


def test_z4_matches_enumeration():
    # frozen from the enumeration oracle: multisets of size 4 over 4 colors
    assert brute_pattern_count(4) == 35
    assert cdpc_pattern_count(4) == 35


def test_z5_matches_enumeration():
    assert brute_pattern_count(5) == 70
    assert cdpc_pattern_count(5) == 70


@pytest.mark.parametrize("z", range(4, 13))
def test_closed_form_equals_oracle(z):
    assert cdpc_pattern_count(z) == brute_pattern_count(z)


@pytest.mark.parametrize("z", [3, 2, 1, 0, -1])
def test_below_domain_raises(z):
    with pytest.raises(DomainError):
        cdpc_pattern_count(z)
