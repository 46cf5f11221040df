import itertools

import pytest

from proglab.groups import GroupSpec


def small_two_groups(max_order=512):
    out = []
    for moduli in [(2,), (4,), (8,), (2, 2), (2, 4), (4, 4), (2, 8), (4, 8), (8, 8), (2, 2, 2),
                   (4, 4, 4), (2, 4, 8), (8, 8, 8), (16,), (2, 16)]:
        spec = GroupSpec(moduli)
        if spec.order <= max_order:
            out.append(spec)
    return out


@pytest.fixture(params=small_two_groups(), ids=str)
def two_group(request):
    return request.param


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)
