import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chaoswm.chaos import Strategy
from chaoswm.errors import KeyFormatError, LengthNotMultipleOfGroup, StrategyExhausted
from chaoswm.keystream import (
    FNV_OFFSET, ChaosKey, authenticated_key, bits_to_strategy, dump_key, encryption_strategy,
    fnv1a64, group_width, iter_triplets, load_key, logistic_bits, plan_strategy, triplet_stream,
    u_strategy,
)


def test_first_logistic_iterate():
    x1 = 3.999999 * 0.65 * (1 - 0.65)
    assert x1 == pytest.approx(0.9099997725, abs=1e-12)
    assert logistic_bits(ChaosKey(), 1).tolist() == [1]


def test_logistic_bits_follow_the_map():
    key = ChaosKey(mu=3.9, x0=0.2, discard=5)
    x, expected = 0.2, []
    for _ in range(5):
        x = 3.9 * x * (1 - x)
    for _ in range(300):
        x = 3.9 * x * (1 - x)
        expected.append(int(x >= 0.5))
    assert logistic_bits(key, 300).tolist() == expected


def test_logistic_bits_empty_and_deterministic():
    assert logistic_bits(ChaosKey(), 0).size == 0
    assert np.array_equal(logistic_bits(ChaosKey(), 20000), logistic_bits(ChaosKey(), 20000))


def test_logistic_bits_are_roughly_balanced():
    ones = logistic_bits(ChaosKey(), 20000).mean()
    assert 0.45 < ones < 0.55


def test_invalid_keys_rejected():
    with pytest.raises(ValueError):
        ChaosKey(x0=0.0)
    with pytest.raises(ValueError):
        ChaosKey(mu=4.5)


def test_group_width():
    assert group_width(756) == 10
    assert group_width(1024) == 10
    assert group_width(1025) == 11
    assert group_width(2) == 1
    assert group_width(1) == 1


def test_bits_to_strategy_examples():
    assert bits_to_strategy(np.zeros(10, np.uint8), 756).take(1).tolist() == [0]
    assert bits_to_strategy(np.ones(10, np.uint8), 756).take(1).tolist() == [267]
    s = bits_to_strategy(logistic_bits(ChaosKey(), 20000), 756)
    assert len(s) == 2000
    assert s.take(2000).max() < 756


def test_bits_to_strategy_rejects_partial_group():
    with pytest.raises(LengthNotMultipleOfGroup):
        bits_to_strategy(np.zeros(15, np.uint8), 756)


def test_encryption_strategy_trims_to_whole_groups():
    s = encryption_strategy(ChaosKey(iterations=19995), 756)
    assert len(s) == 1999


def test_plan_strategy_reads_same_orbit_in_ten_bit_groups():
    bits = logistic_bits(ChaosKey(), 100)
    expected = bits.reshape(10, 10) @ (1 << np.arange(9, -1, -1))
    assert plan_strategy(ChaosKey()).take(10).tolist() == expected.tolist()


def test_triplet_examples():
    s = Strategy([743, 0, 0], 1024)
    stream = list(iter_triplets(s, (11, 23, 1)))
    assert stream[0] == (11, 23, 1)
    assert stream[1][0] == (2 * 11 + 743 + 0) % 255 == 0


def test_triplet_recurrence_by_hand():
    terms = [5, 7, 1, 300, 2, 4]
    x, y, z = 11, 23, 0
    expected = [(x, y, z + 1)]
    for n in range(2):
        a, b, c = terms[3 * n:3 * n + 3]
        x, y, z = (2 * x + a + n) % 255, (2 * y + b + n) % 255, (2 * z + c + n) % 2
        expected.append((x, y, z + 1))
    assert list(iter_triplets(Strategy(terms, 1024))) == expected


def test_triplet_stream_ranges_and_determinism():
    key = ChaosKey()
    a = triplet_stream(plan_strategy(key), key, 2112)
    b = triplet_stream(plan_strategy(key), key, 2112)
    assert a == b and len(a) == 2112
    arr = np.array(a)
    assert arr[:, :2].min() >= 0 and arr[:, :2].max() < 255
    assert set(arr[:, 2]) == {1, 2}


def test_triplet_stream_needs_three_terms_each():
    with pytest.raises(StrategyExhausted):
        triplet_stream(Strategy([1, 2, 3, 4, 5], 8), ChaosKey(), 2)


def test_u_strategy_examples():
    s = Strategy([9, 100, 3], 1000)
    u = u_strategy(s, 1, 1000, 1).take(2).tolist()
    assert u == [1, 102]
    assert u_strategy(s, None, 1000, 0).take(1).tolist() == [9]


def test_u_strategy_exhaustion():
    with pytest.raises(StrategyExhausted):
        u_strategy(Strategy([1, 2], 10), 1, 10, 5)


@given(st.integers(1, 10**6), st.integers(0, 10**6), st.integers(0, 2000))
def test_u_terms_stay_below_m(m, u0, seed):
    rng = np.random.default_rng(seed)
    s = Strategy(rng.integers(0, 1024, 500), 1024)
    assert u_strategy(s, u0, m, 499).take(500).max() < m


def test_u_range_over_long_run():
    key = ChaosKey(x0=0.3141)
    s = bits_to_strategy(logistic_bits(key, 10**6 + 10), 2)
    u = u_strategy(s, 1, 16384, 10**5).take(10**5 + 1)
    assert u.min() >= 0 and u.max() < 16384


def test_fnv1a64_known_vectors():
    assert fnv1a64(b"") == FNV_OFFSET
    assert fnv1a64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a64(b"foobar") == 0x85944171F73967E8


def test_authenticated_key_empty_digest():
    key = authenticated_key(ChaosKey(), np.zeros(0, np.uint8))
    assert key.auth_msc_digest == FNV_OFFSET
    assert key.x0 == math.fmod(0.65 + FNV_OFFSET / 2.0**64, 1.0)


def test_authenticated_key_avalanche(rng):
    for _ in range(100):
        msc = rng.integers(0, 2, 512).astype(np.uint8)
        other = msc.copy()
        other[rng.integers(0, 512)] ^= 1
        a, b = authenticated_key(ChaosKey(), msc), authenticated_key(ChaosKey(), other)
        assert a.auth_msc_digest != b.auth_msc_digest
        assert not np.array_equal(logistic_bits(a, 256), logistic_bits(b, 256))
        assert authenticated_key(ChaosKey(), msc) == a


def test_key_file_round_trip_is_bit_exact():
    key = ChaosKey(mu=3.9999990000000001, x0=0.1 + 0.2, discard=7, iterations=19950, u0=None,
                   triplet_seeds=(3, 4, 2), msb_set=(5, 6, 7), auth_msc_digest=0xDEADBEEF)
    back = load_key(dump_key(key))
    assert back == key
    assert back.x0.hex() == key.x0.hex()


def test_hex_payload_wins_over_decimal():
    text = dump_key(ChaosKey()).replace("x0 = 0.65", "x0 = 0.5")
    assert load_key(text).x0 == 0.65


def test_key_file_tolerates_comments_and_defaults():
    assert load_key("# key\nmu = 3.9  # comment\n\n") == ChaosKey(mu=3.9)


def test_malformed_key_file():
    with pytest.raises(KeyFormatError):
        load_key("mu 3.9\n")
    with pytest.raises(KeyFormatError):
        load_key("iterations = many\n")
