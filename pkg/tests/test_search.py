import random
from fractions import Fraction as F

import pytest

from qpfix.search import (
    GenConfig,
    brute_minimal_chain_sum,
    d2_agreement_search,
    d2_oracle,
    gen_space,
    soundness_search,
)
from qpfix.space import check_d1, minimal_k


def test_gen_space_single_point():
    space = gen_space(GenConfig(point_count=1))
    assert len(space) == 1 and space.dist == ((0,),)


def test_gen_space_deterministic():
    cfg = GenConfig(point_count=4, value_grid=(0, F(1, 4), F(1, 2), 1), seed=42)
    assert gen_space(cfg) == gen_space(cfg)
    assert gen_space(cfg) != gen_space(GenConfig(point_count=4, value_grid=cfg.value_grid, seed=43))


def test_gen_space_zero_grid():
    space = gen_space(GenConfig(point_count=3, value_grid=(0,)))
    assert minimal_k(space) == 0
    assert space.coeff_k == 1


def test_gen_space_invariants():
    rng = random.Random(5)
    cfg = GenConfig(point_count=6)
    for _ in range(50):
        space = gen_space(cfg, rng)
        assert check_d1(space)[0]
        assert minimal_k(space) == space.coeff_k or minimal_k(space) == 0


@pytest.mark.parametrize("kwargs", [dict(point_count=0), dict(point_count=9),
                                    dict(value_grid=(1, 2)), dict(trials=-1)])
def test_gen_config_validation(kwargs):
    with pytest.raises(ValueError):
        GenConfig(**kwargs)


def test_oracle_on_p3(P3):
    assert d2_oracle(P3, 1, 3) is False
    assert d2_oracle(P3, 2, 3) is True
    assert brute_minimal_chain_sum(P3, "a", "c") == F(9, 20)


def test_oracle_rejects_zero_cap(P3):
    with pytest.raises(ValueError):
        d2_oracle(P3, 1, 0)


def test_oracle_agreement_small_run():
    comparisons, bad = d2_agreement_search(GenConfig(point_count=4, seed=11, trials=40))
    assert comparisons >= 40 and bad == []


def test_soundness_empty_trials():
    report = soundness_search(GenConfig(trials=0))
    assert report.counterexamples == [] and report.certified == 0


def test_soundness_parallel_matches_serial():
    cfg = GenConfig(point_count=4, seed=9, trials=120)
    serial = soundness_search(cfg, mutant=True)
    parallel = soundness_search(cfg, mutant=True, workers=2)
    assert serial.certified == parallel.certified
    assert [c.trial for c in serial.counterexamples] == [c.trial for c in parallel.counterexamples]


def test_soundness_over_a_thousand_certified_instances():
    report = soundness_search(GenConfig(point_count=5, seed=7, trials=8000), workers=4)
    assert report.certified >= 1000
    assert report.counterexamples == []
