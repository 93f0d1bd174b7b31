import pytest

from posetlevels import campaigns
from posetlevels.poset import Poset


@pytest.mark.parametrize("name", ["ali-equivalence", "nacli-equivalence", "ali-behavior", "nacli-behavior"])
def test_small_campaigns_pass(name):
    res = campaigns.run_campaign(name, 4)
    assert res.ok and res.checked > 0


def test_sharding_is_deterministic():
    one = campaigns.run_campaign("ali-behavior", 4, jobs=1)
    two = campaigns.run_campaign("ali-behavior", 4, jobs=2)
    assert (one.checked, one.failures) == (two.checked, two.failures)


def test_seeded_duality():
    a = campaigns.run_campaign("duality", 6, seed=5)
    assert a.ok and a.checked == 1000


def test_enumeration_campaign():
    assert campaigns.run_campaign("enumeration", 4).ok


def test_failures_are_reported():
    # a check that objects to every order with a relation
    campaigns.CHECKS["always-fails"] = (lambda p: ["has relations"] if p.relations else [], lambda n, seed: [Poset.antichain(2), Poset.chain(2)])
    try:
        res = campaigns._shard("always-fails", 2, 0, 0, 1)
    finally:
        del campaigns.CHECKS["always-fails"]
    assert res[0] == 2 and [f["index"] for f in res[1]] == [1]


def test_unknown_campaign():
    with pytest.raises(ValueError):
        campaigns.run_campaign("everything", 3)
