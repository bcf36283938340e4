import pytest

from kgraph import degrees as dg
from kgraph.errors import DegreeOutOfRange


def test_basic_arithmetic():
    assert dg.add((1, 2), (3, 4)) == (4, 6)
    assert dg.sub((3, 4), (1, 2)) == (2, 2)
    assert dg.sub((1, 0), (0, 1)) == (1, -1)
    assert dg.join((1, 4), (3, 2)) == (3, 4)
    assert dg.meet((1, 4), (3, 2)) == (1, 2)
    assert dg.leq((1, 2), (1, 3))
    assert not dg.leq((2, 0), (1, 3))


def test_check_rejects_bad_degrees():
    with pytest.raises(DegreeOutOfRange):
        dg.check((1,), 2)
    with pytest.raises(DegreeOutOfRange):
        dg.check((-1, 0), 2)
    assert dg.check((-1, 0), 2, signed=True) == (-1, 0)


def test_parts_and_norms():
    assert dg.pos_part((2, -3)) == (2, 0)
    assert dg.neg_part((2, -3)) == (0, 3)
    assert dg.supnorm((2, -3)) == 3
    assert dg.total((2, 3)) == 5
    assert dg.mixed_sign((1, -1))
    assert not dg.mixed_sign((1, 0))


def test_box_orders():
    assert list(dg.box((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    by_total = dg.box_by_total((2, 1))
    totals = [sum(n) for n in by_total]
    assert totals == sorted(totals)


def test_period_candidates_rank1():
    assert dg.period_candidates(1, 3) == [(1,), (2,), (3,)]


def test_period_candidates_rank2_order():
    cands = dg.period_candidates(2, 2)
    # mixed-sign candidates first, smallest sup norm first
    assert cands[0] == (1, -1)
    assert set(cands[1:4]) == {(1, -2), (2, -2), (2, -1)}
    assert cands[4] == (0, 1)
    # canonical representatives only: first nonzero entry positive
    assert all(next(e for e in p if e) > 0 for p in cands)


def test_parse_and_fmt():
    assert dg.parse("2,3", 2) == (2, 3)
    assert dg.fmt((2, 3)) == "2,3"
    with pytest.raises(DegreeOutOfRange):
        dg.parse("2,x")
    with pytest.raises(DegreeOutOfRange):
        dg.parse("1,2", 3)
