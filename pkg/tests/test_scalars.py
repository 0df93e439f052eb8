import random
from fractions import Fraction as Q

import pytest

from qsym.scalars import PoleAtOne, QRat, divided_bracket, one, q, qpow, specialize_q1, zero


def test_reduction_and_monic_denominator():
    """(q^2 - 1)/(q - 1) reduces to q + 1 and denominators come out monic."""
    x = QRat([Q(-1), Q(0), Q(1)], [Q(-1), Q(1)])
    assert x == q + 1
    y = QRat([Q(1)], [Q(2), Q(2)])  # 1/(2q + 2)
    assert y.den == [Q(1), Q(1)]
    assert y.num == [Q(1, 2)]


def test_qpow_and_negative_powers():
    assert qpow(3) == q * q * q
    assert qpow(-2) == 1 / (q * q)
    assert q ** -2 == qpow(-2)
    assert qpow(0) == one


def _random_qrat(rng):
    num = [Q(rng.randint(-4, 4)) for _ in range(rng.randint(1, 4))]
    den = [Q(rng.randint(-4, 4)) for _ in range(rng.randint(1, 3))]
    if not any(den):
        den[-1] = Q(1)
    return QRat(num, den)


def test_field_axioms_on_random_values():
    """Commutativity, associativity, distributivity and inverses, seeded."""
    rng = random.Random(20260819)
    for _ in range(40):
        a, b, c = (_random_qrat(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == zero
        if a:
            assert a * (1 / a) == one


def test_specialize_q1_examples():
    assert specialize_q1((q * q - 1) / (q - 1)) == 2
    assert specialize_q1((q - qpow(-1)) / (q - 1)) == 2
    assert specialize_q1(QRat(Q(3, 4))) == Q(3, 4)
    assert specialize_q1(Q(-2)) == -2


def test_specialize_q1_pole():
    with pytest.raises(PoleAtOne):
        specialize_q1(1 / (q - 1))
    with pytest.raises(PoleAtOne):
        specialize_q1((q + 1) / ((q - 1) ** 2 * (q + 2)) * (q - 1))


def test_divided_bracket_values():
    assert divided_bracket(0) == zero
    assert divided_bracket(1) == one
    assert divided_bracket(2) == q + qpow(-1)
    assert divided_bracket(-3) == -divided_bracket(3)
    # definition as a ratio, for several (n, d)
    for n in range(1, 6):
        for d in (1, 2, 3):
            lhs = divided_bracket(n, d) * (qpow(d) - qpow(-d))
            assert lhs == qpow(n * d) - qpow(-n * d)
    # classical limit is n
    for n in range(6):
        assert specialize_q1(divided_bracket(n, 2)) == n


def test_string_forms():
    assert str((q * q - 1) / q) == "(q^2 - 1)/(q)"
    assert str(q + 1) == "q + 1"
    assert str(zero) == "0"
    assert str(QRat(Q(-3, 2)) * q) == "-3/2*q"
    assert str(qpow(-1)) == "(1)/(q)"
    assert (q * q - 1).to_str("v") == "v^2 - 1"


def test_eval_at_other_points():
    x = (q ** 3 - 8) / (q - 2)
    assert x.eval(2) == 12
    assert x.eval(0) == 4
