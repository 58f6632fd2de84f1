import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpfix.admissibility import (
    AdmissiblePair,
    SelfMap,
    ShapeError,
    check_c1_c2,
    check_c3,
    check_contraction,
    find_seed_points,
)
from qpfix.space import QPSpace

F_T3 = SelfMap({"p": "q", "q": "r", "r": "r"})
G_T3 = SelfMap({"p": "q", "q": "p", "r": "r"})


def const_pair(n=3, a=1, b=F(1, 10), ca=1, cb=F(1, 10)):
    return AdmissiblePair.constant(n, a, b, ca, cb)


def test_constant_weights_pass_c1_c2(T3):
    assert check_c1_c2(T3, F_T3, const_pair()) == (True, None)
    assert check_c1_c2(T3, G_T3, const_pair()) == (True, None)


def test_c1_violation(T3):
    alpha = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]  # alpha(p,q) = 1, alpha(q,r) = 0
    pair = AdmissiblePair(alpha, [[0] * 3] * 3, 1, F(1, 10))
    assert check_c1_c2(T3, F_T3, pair) == (False, ("C1", "p", "q"))


def test_c2_vacuous_when_beta_above_threshold(T3):
    pair = const_pair(b=F(1, 10) + 1)
    assert check_c1_c2(T3, F_T3, pair)[0]


def test_c2_violation(T3):
    beta = [[1, 0, 1], [1, 1, 1], [1, 1, 1]]  # beta(p,q) = 0 <= C_beta, beta(q,r) = 1
    pair = AdmissiblePair([[1] * 3] * 3, beta, 1, F(1, 10))
    assert check_c1_c2(T3, F_T3, pair) == (False, ("C2", "p", "q"))


def test_c3(T3):
    assert check_c3(T3, const_pair())
    k2 = QPSpace(("a",), [[0]], 2)
    assert not check_c3(k2, AdmissiblePair.constant(1, 1, F(1, 2), 1, F(1, 2)))
    assert check_c3(k2, AdmissiblePair.constant(1, 1, 0, F(1, 7), 0))


def test_contraction_holds_for_t3_map(T3):
    assert check_contraction(T3, F_T3, const_pair()) == (True, None)


def test_contraction_fails_for_swap(T3):
    ok, w = check_contraction(T3, G_T3, const_pair())
    assert not ok
    assert (w.x, w.y, w.lhs, w.rhs) == ("p", "q", F(1), F(1, 10))


def test_constant_map_always_contracts(T3):
    pair = AdmissiblePair([[2, 0, 1], [3, 1, 0], [1, 1, 5]], [[0] * 3] * 3, 1, 0)
    for z in T3.points:
        f = SelfMap({p: z for p in T3.points})
        assert check_contraction(T3, f, pair)[0]
        assert check_contraction(T3, f, pair, "Ds")[0]


def test_contraction_ds_form(P3):
    f = SelfMap({"a": "b", "b": "c", "c": "c"})
    pair = AdmissiblePair.constant(3, 1, 1, 1, F(1, 10))
    # D(b,c) = 1/4 > D(a,b) = 1/5, but Ds(b,c) = 1/4 <= Ds(a,b) = 1/4.
    assert not check_contraction(P3, f, pair, "D")[0]
    assert check_contraction(P3, f, pair, "Ds")[0]


def test_seed_points(T3):
    assert find_seed_points(T3, F_T3, const_pair(), "left") == ["p", "q", "r"]
    alpha = [[1, F(1, 2), 1], [1, 1, 1], [1, 1, 1]]
    pair = AdmissiblePair(alpha, [[0] * 3] * 3, 1, F(1, 10))
    assert "p" not in find_seed_points(T3, F_T3, pair, "left")
    assert "p" in find_seed_points(T3, F_T3, pair, "right")  # alpha(q,p) = 1


def test_shape_errors(T3):
    with pytest.raises(ShapeError):
        check_c1_c2(T3, F_T3, const_pair(n=2))
    with pytest.raises(ShapeError):
        check_contraction(T3, SelfMap({"p": "q"}), const_pair())
    with pytest.raises(ShapeError):
        SelfMap({"p": "z", "q": "q", "r": "r"}).validate(T3)
    with pytest.raises(ShapeError):
        AdmissiblePair.constant(2, 1, 1, 0, 0)
    with pytest.raises(ShapeError):
        AdmissiblePair.constant(2, 1, 1, 1, -1)


# --- properties --------------------------------------------------------------


def _random_space(rng, n):
    grid = [F(0), F(1, 2), F(1), F(2)]
    dist = [[F(0) if i == j else rng.choice(grid) for j in range(n)] for i in range(n)]
    return QPSpace(tuple(f"s{i}" for i in range(n)), dist, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_constant_weights_always_admissible(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    space = _random_space(rng, n)
    f = SelfMap.from_indices(space, [rng.randrange(n) for _ in range(n)])
    pair = AdmissiblePair.constant(n, rng.choice([0, 1, 2]), rng.choice([0, 1, 3]), 1, 1)
    assert check_c1_c2(space, f, pair)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([F(1), F(3, 2), F(5)]))
def test_contraction_monotone_in_beta_scaling(seed, scale):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    space = _random_space(rng, n)
    f = SelfMap.from_indices(space, [rng.randrange(n) for _ in range(n)])
    grid = [F(0), F(1, 2), F(1), F(3)]
    alpha = [[rng.choice(grid) for _ in range(n)] for _ in range(n)]
    beta = [[rng.choice(grid) for _ in range(n)] for _ in range(n)]
    pair = AdmissiblePair(alpha, beta, 1, F(1, 2))
    scaled = AdmissiblePair(alpha, [[b * scale for b in row] for row in beta], 1, F(1, 2))
    for form in ("D", "Ds"):
        if check_contraction(space, f, pair, form)[0]:
            assert check_contraction(space, f, scaled, form)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_min_seed_equals_left_on_symmetric_weights(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    space = _random_space(rng, n)
    f = SelfMap.from_indices(space, [rng.randrange(n) for _ in range(n)])
    grid = [F(0), F(1, 2), F(1), F(2)]
    alpha = [[F(0)] * n for _ in range(n)]
    beta = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            alpha[i][j] = alpha[j][i] = rng.choice(grid)
            beta[i][j] = beta[j][i] = rng.choice(grid)
    pair = AdmissiblePair(alpha, beta, 1, F(1, 2))
    assert find_seed_points(space, f, pair, "min") == find_seed_points(space, f, pair, "left")
