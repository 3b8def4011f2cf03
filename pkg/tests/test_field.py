import pytest
from hypothesis import given, strategies as st

from ppir.errors import FieldMismatch, NonPrimeOrder, ZeroInverse
from ppir.field import MAX_ORDER, PrimeField

SMALL_PRIMES = (2, 3, 5, 11, 13, 101)


def brute_force_inverse(a, q):
    return next(b for b in range(1, q) if a * b % q == 1)


class TestConstruction:
    @pytest.mark.parametrize("q", SMALL_PRIMES)
    def test_prime_orders_accepted(self, q):
        assert PrimeField(q).order == q

    @pytest.mark.parametrize("q", [0, 1, 4, 10, 15, 91, 2**20])
    def test_composite_or_small_rejected(self, q):
        with pytest.raises(NonPrimeOrder):
            PrimeField(q)

    def test_order_cap(self):
        assert PrimeField(MAX_ORDER).order == MAX_ORDER  # 2**31 - 1 is prime
        with pytest.raises(NonPrimeOrder):
            PrimeField(2305843009213693951)  # prime, but above the cap


class TestArithmetic:
    def test_mul_golden(self):
        f = PrimeField(11)
        assert (f.element(5) * f.element(9)).value == 1  # 45 mod 11

    def test_sub_golden(self):
        f = PrimeField(11)
        assert (f.element(3) - f.element(7)).value == 7  # (3 - 7) mod 11

    def test_additive_identity(self):
        f = PrimeField(11)
        zero = f.element(0)
        for x in range(11):
            assert (f.element(x) + zero).value == x

    def test_cross_field_rejected(self):
        with pytest.raises(FieldMismatch):
            PrimeField(11).element(1) + PrimeField(13).element(1)

    def test_element_reduces_to_canonical(self):
        f = PrimeField(11)
        assert f.element(25).value == 3
        assert f.element(-1).value == 10


class TestInverse:
    def test_one_is_self_inverse(self):
        for q in SMALL_PRIMES:
            f = PrimeField(q)
            assert f.element(1).inverse().value == 1

    def test_golden_inverse(self):
        f = PrimeField(11)
        assert f.element(5).inverse().value == brute_force_inverse(5, 11) == 9

    def test_zero_rejected(self):
        with pytest.raises(ZeroInverse):
            PrimeField(11).element(0).inverse()

    @pytest.mark.parametrize("q", SMALL_PRIMES)
    def test_exhaustive_against_brute_force(self, q):
        f = PrimeField(q)
        for a in range(1, q):
            inv = f.element(a).inverse().value
            assert a * inv % q == 1
            assert inv == brute_force_inverse(a, q)


@given(
    q=st.sampled_from(SMALL_PRIMES),
    a=st.integers(min_value=0, max_value=1000),
    b=st.integers(min_value=0, max_value=1000),
    c=st.integers(min_value=0, max_value=1000),
)
def test_field_axioms(q, a, b, c):
    f = PrimeField(q)
    x, y, z = f.element(a), f.element(b), f.element(c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    for result in (x + y, x - y, x * y, -x):
        assert 0 <= result.value < q
