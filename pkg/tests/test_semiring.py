import pytest
from hypothesis import given, strategies as st

from rpqprov.errors import SemiringError
from rpqprov.semiring import BOOLEAN, FUZZY, INF, MULTIPLICITY, SEMIRINGS, TROPICAL, get_semiring

nat_inf = st.one_of(st.integers(0, 50), st.just(INF))
CARRIERS = {
    "boolean": st.booleans(),
    "tropical": nat_inf,
    "fuzzy": nat_inf,
    "multiplicity": st.integers(0, 10**6),
}


def test_examples_from_the_semiring_tables():
    assert TROPICAL.plus(3, 5) == 3
    assert MULTIPLICITY.plus(2, 3) == 5
    assert FUZZY.times(2, 5) == 5
    assert TROPICAL.times(3, 4) == 7
    assert TROPICAL.leq(2, INF)
    assert BOOLEAN.leq(True, False)
    assert not BOOLEAN.leq(False, True)
    assert not MULTIPLICITY.leq(3, 2)


@pytest.mark.parametrize("sr", SEMIRINGS.values(), ids=list(SEMIRINGS))
def test_zero_and_one(sr):
    for x in ([True, False] if sr is BOOLEAN else [0, 1, 7]):
        assert sr.plus(x, sr.zero) == x
        assert sr.times(x, sr.one) == x
        assert sr.times(sr.zero, x) == sr.zero


def test_tropical_and_fuzzy_constants():
    for sr in (TROPICAL, FUZZY):
        assert sr.zero == INF
        assert sr.one == 0
    assert MULTIPLICITY.zero == 0 and MULTIPLICITY.one == 1
    assert BOOLEAN.zero is False and BOOLEAN.one is True


def test_previous_better():
    assert TROPICAL.previous_better(5) == 4
    assert TROPICAL.previous_better(0) is None
    assert TROPICAL.previous_better(INF) is None
    assert BOOLEAN.previous_better(False) is True
    assert BOOLEAN.previous_better(True) is None
    assert MULTIPLICITY.previous_better(1) == 0


def test_mixed_operands_rejected():
    with pytest.raises(SemiringError):
        BOOLEAN.plus(True, 3)
    with pytest.raises(SemiringError):
        TROPICAL.times(True, 3)
    with pytest.raises(SemiringError):
        MULTIPLICITY.plus(INF, 1)
    with pytest.raises(SemiringError):
        TROPICAL.leq(-1, 2)


def test_multiplicity_never_wraps():
    big = 2**64
    assert MULTIPLICITY.times(big, big) == 2**128


def test_weight_text():
    assert TROPICAL.parse_weight("7") == 7
    assert BOOLEAN.parse_weight("t") is True
    assert BOOLEAN.parse_weight("f") is False
    for bad in ("inf", "-1", "1.5", "x"):
        with pytest.raises(SemiringError):
            FUZZY.parse_weight(bad)
    assert TROPICAL.format_weight(INF) == "inf"
    assert BOOLEAN.format_weight(True) == "t"


def test_unknown_semiring():
    with pytest.raises(SemiringError):
        get_semiring("real")


@pytest.mark.parametrize("name", list(SEMIRINGS))
@given(data=st.data())
def test_order_laws(name, data):
    sr = SEMIRINGS[name]
    x, y, z = (data.draw(CARRIERS[name]) for _ in range(3))
    assert sr.leq(x, x)
    assert sr.leq(x, y) or sr.leq(y, x)
    if sr.leq(x, y) and sr.leq(y, x):
        assert x == y
    if sr.leq(x, y) and sr.leq(y, z):
        assert sr.leq(x, z)


@pytest.mark.parametrize("name", list(SEMIRINGS))
@given(data=st.data())
def test_discreteness(name, data):
    sr = SEMIRINGS[name]
    x = data.draw(CARRIERS[name])
    nxt = sr.next_worse(x) if x != sr.zero else None
    if nxt is not None:
        assert sr.lt(x, nxt)
        assert sr.previous_better(nxt) == x
        # scan a window of representable values for anything strictly between
        window = [True, False] if sr is BOOLEAN else range(max(0, x - 3), x + 4)
        assert not any(sr.lt(x, z) and sr.lt(z, nxt) for z in window)


@pytest.mark.parametrize("sr", [BOOLEAN, TROPICAL, FUZZY], ids=lambda s: s.name)
@given(data=st.data())
def test_plus_is_order_meet(sr, data):
    x, y = (data.draw(CARRIERS[sr.name]) for _ in range(2))
    assert sr.leq(sr.plus(x, y), x)
    assert sr.leq(sr.plus(x, y), y)
