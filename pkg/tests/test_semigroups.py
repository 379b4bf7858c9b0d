import itertools
import random

import pytest

from wtaut.errors import DataError, ResourceError
from wtaut.semigroups import (
    IndexSequence,
    NumericalSemigroup,
    Partition,
    dual_index_set,
    enumerate_semigroups,
    hprime_partition,
    is_realizable,
    partition_from_sequence,
    partitions_up_to,
    semigroup_from_sequence,
    semigroup_record,
    sequence_from_hprime_partition,
    weierstrass_sequence,
)

GENUS_COUNTS = [1, 1, 2, 4, 7, 12, 23, 39, 67]


def brute_force_semigroups(g):
    """Independent oracle: search gap subsets of {1..2g-1} directly."""
    if g == 0:
        return [()]
    found = []
    for gaps in itertools.combinations(range(1, 2 * g), g):
        gap_set = set(gaps)
        nongaps = [n for n in range(1, 2 * g) if n not in gap_set]
        closed = all(
            (x + y) not in gap_set
            for x, y in itertools.combinations_with_replacement(nongaps, 2)
            if x + y < 2 * g
        )
        if closed:
            found.append(gaps)
    return sorted(found)


# -- partitions ---------------------------------------------------------------


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.of([3, 1, 0]).parts == (3, 1)


def test_partition_conjugate_involution():
    for mu in partitions_up_to(6):
        assert mu.conjugate().conjugate() == mu
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))


def test_partition_containment():
    assert Partition((3, 2)).contains(Partition((2, 2)))
    assert not Partition((2, 2)).contains(Partition((3,)))


# -- semigroup type -----------------------------------------------------------


def test_gap_list_closure_witness_message():
    with pytest.raises(DataError, match=r"closure violation: 2\+2=4 is a gap"):
        NumericalSemigroup.from_gaps([1, 4])


def test_semigroup_helpers():
    h = NumericalSemigroup.from_gaps([1, 2, 4])
    assert h.genus == 3
    assert h.frobenius == 4
    assert h.multiplicity == 3
    assert h.min_generators() == (3, 5, 7)
    assert h.contains(0) and not h.contains(4) and not h.contains(-1)


# -- enumeration --------------------------------------------------------------


def test_enumeration_counts_match_known_values():
    for g, expected in enumerate(GENUS_COUNTS):
        assert len(enumerate_semigroups(g)) == expected


def test_enumeration_matches_brute_force_up_to_genus_6():
    for g in range(7):
        tree = [h.gaps for h in enumerate_semigroups(g)]
        assert tree == brute_force_semigroups(g)


def test_enumeration_is_sorted_and_duplicate_free():
    for g in (4, 5):
        gaps = [h.gaps for h in enumerate_semigroups(g)]
        assert gaps == sorted(set(gaps))


def test_enumeration_genus_zero_and_errors():
    assert enumerate_semigroups(0) == [NumericalSemigroup(0, ())]
    with pytest.raises(ResourceError):
        enumerate_semigroups(13)
    assert len(enumerate_semigroups(9, max_genus=13)) == 118


# -- sequences ----------------------------------------------------------------


def test_weierstrass_sequence_examples():
    seq = weierstrass_sequence(NumericalSemigroup.from_gaps([1, 3]))
    assert seq.d == 1 and seq.head == (2, 0)
    assert seq.entries(5) == (2, 0, -2, -3, -4)

    seq = weierstrass_sequence(NumericalSemigroup.from_gaps([1, 2]))
    assert seq.head == (1, 0)

    seq = weierstrass_sequence(NumericalSemigroup(0, ()))
    assert seq.head == () and seq.d == -1
    assert seq.entries(3) == (-2, -3, -4)


def test_index_sequence_normalization_and_validation():
    # trailing head entries matching the tail rule are absorbed
    assert IndexSequence(d=1, head=(2, 0, -2, -3)).head == (2, 0)
    with pytest.raises(DataError):
        IndexSequence(d=1, head=(0, 2))
    with pytest.raises(DataError):
        IndexSequence(d=5, head=(0,))  # gap between head and tail


def test_sequence_round_trip_all_semigroups():
    for g in range(8):
        for h in enumerate_semigroups(g):
            assert semigroup_from_sequence(weierstrass_sequence(h)) == h


def test_sequence_rejection():
    assert semigroup_from_sequence(IndexSequence(d=1, head=(3, 0))) is None
    # pure tail with d = -1 is the trivial semigroup
    assert semigroup_from_sequence(IndexSequence(d=-1)) == NumericalSemigroup(0, ())


def test_lemma_bounds_hold_on_all_enumerated_sequences():
    for g in range(8):
        for h in enumerate_semigroups(g):
            seq = weierstrass_sequence(h)
            for i in range(1, g + 1):
                assert seq.s(i) <= 2 * g - 2 * i
            for i in range(g + 1, g + 4):
                assert seq.s(i) == g - 1 - i


# -- partition conversions ------------------------------------------------------


def test_partition_from_sequence_examples():
    seq = weierstrass_sequence(NumericalSemigroup.from_gaps([1, 3]))
    assert partition_from_sequence(seq) == Partition((2, 1))
    assert partition_from_sequence(IndexSequence(d=-1)) == Partition(())
    assert partition_from_sequence(IndexSequence(d=0, head=(1,))) == Partition((2,))


def test_hprime_partition_examples():
    seq = weierstrass_sequence(NumericalSemigroup.from_gaps([1, 3]))
    assert hprime_partition(seq, 2) == Partition((1,))

    for g in (1, 2, 3, 4):
        ordinary = weierstrass_sequence(NumericalSemigroup.from_gaps(range(1, g + 1)))
        assert hprime_partition(ordinary, g) == Partition(())

    seq = weierstrass_sequence(NumericalSemigroup.from_gaps([1, 3, 5]))
    assert seq.head == (4, 2, 0)
    assert hprime_partition(seq, 3) == Partition((2, 1))


def test_hprime_rejects_sequences_containing_minus_one():
    with pytest.raises(DataError, match="not in H'"):
        hprime_partition(IndexSequence(d=1, head=(2, -1)), 2)


def test_hprime_lengths_bounded_by_genus():
    for g in range(1, 7):
        for h in enumerate_semigroups(g):
            seq = weierstrass_sequence(h)
            assert hprime_partition(seq, g).length <= g
            assert partition_from_sequence(seq).length <= g


def test_hprime_weight_matches_codimension_formula():
    # |mu| = sum over the head of (s_i + i - g) plus the piecewise +1 tail
    for g in range(1, 6):
        for h in enumerate_semigroups(g):
            seq = weierstrass_sequence(h)
            i_zero = max(
                (i for i in range(1, g + 2) if seq.s(i) >= 0), default=0
            )
            total = sum(seq.s(i) + i - g for i in range(1, i_zero + 1))
            total += sum(seq.s(i) + i - g + 1 for i in range(i_zero + 1, g + 3))
            assert hprime_partition(seq, g).weight == total


def test_sequence_from_hprime_partition_inverts():
    for g in range(1, 6):
        for h in enumerate_semigroups(g):
            seq = weierstrass_sequence(h)
            mu = hprime_partition(seq, g)
            assert sequence_from_hprime_partition(mu, g) == seq


# -- realizability --------------------------------------------------------------


def test_extremal_sequence_is_realizable():
    for g in range(1, 7):
        head = tuple(2 * g - 2 * i for i in range(1, g + 1))
        assert is_realizable(IndexSequence(d=g - 1, head=head), g)


def test_bound_violation_detected():
    assert not is_realizable(IndexSequence(d=0, head=(1,)), 1)


def test_ordinary_sequence_realizable():
    for g in range(1, 6):
        seq = weierstrass_sequence(NumericalSemigroup.from_gaps(range(1, g + 1)))
        assert is_realizable(seq, g)


def test_every_enumerated_sequence_is_realizable():
    for g in range(7):
        for h in enumerate_semigroups(g):
            assert is_realizable(weierstrass_sequence(h), g)


# -- duality ---------------------------------------------------------------------


def test_dual_of_weierstrass_sequence_is_minus_semigroup():
    h = NumericalSemigroup.from_gaps([1, 3])
    dual = dual_index_set(weierstrass_sequence(h))
    for n in range(-9, 3):
        assert dual.contains(n) == h.contains(-n)


def test_dual_of_pure_tail_is_minus_naturals():
    dual = dual_index_set(IndexSequence(d=-1))
    for n in range(-6, 3):
        assert dual.contains(n) == (n <= 0)


def test_dual_is_involution_on_random_semigroups():
    rng = random.Random(11)
    pool = [(g, h) for g in range(6) for h in enumerate_semigroups(g)]
    for g, h in rng.sample(pool, 10):
        seq = weierstrass_sequence(h)
        assert dual_index_set(dual_index_set(seq)) == seq


# -- records ---------------------------------------------------------------------


def test_semigroup_record_shape():
    rec = semigroup_record(NumericalSemigroup.from_gaps([1, 3]))
    assert rec == {
        "genus": 2,
        "gaps": [1, 3],
        "sequence_head": [2, 0],
        "partition_gr_gm1": [2, 1],
        "partition_hprime": [1],
    }
