from fractions import Fraction

import pytest

from euler_engine.realize import realize_surface
from euler_engine.utils import (
    SimpleLRUCache,
    clear_caches,
    farey_fractions,
    make_cache_key,
    realization_cache,
)


class TestSimpleLRUCache:
    def test_evicts_least_recently_used(self):
        cache = SimpleLRUCache("t", capacity=2)
        cache.set("a", 1)
        cache.set("b", 2)
        assert cache.get("a") == 1
        cache.set("c", 3)
        assert cache.get("b") is None
        assert cache.get("a") == 1
        assert cache.get("c") == 3
        assert len(cache) == 2

    def test_stats_and_clear(self):
        cache = SimpleLRUCache("t", capacity=4)
        cache.set("k", "v")
        cache.get("k")
        cache.get("missing")
        assert cache.stats() == {"size": 1, "hits": 1, "misses": 1}
        cache.clear()
        assert cache.stats() == {"size": 0, "hits": 0, "misses": 0}

    def test_capacity_must_be_positive(self):
        with pytest.raises(ValueError):
            SimpleLRUCache("t", capacity=0)


def test_make_cache_key():
    assert make_cache_key("surface", 2) == "surface::2"
    assert make_cache_key("signature", "0;2,3,7", "{}") == "signature::0;2,3,7::{}"


def test_realize_surface_is_memoised():
    clear_caches()
    first = realize_surface(2)
    second = realize_surface(2)
    assert first is second
    assert realization_cache.stats()["hits"] >= 1


class TestFarey:
    def test_order_four(self):
        assert farey_fractions(4) == [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]

    def test_nested_and_reduced(self):
        small, big = set(farey_fractions(8)), set(farey_fractions(16))
        assert small <= big
        assert all(f.denominator <= 16 and 0 < f < 1 for f in big)
