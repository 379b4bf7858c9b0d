"""Numerical semigroups, gap sequences, and Schubert index combinatorics.

A numerical semigroup of genus g is a cofinite additive subsemigroup of
the non-negative integers with exactly g gaps.  Each semigroup has a
strictly decreasing index sequence s_1 > s_2 > ... with virtual
cardinality g - 1 (the gaps shifted down by one, padded with the tail
s_i = g - 1 - i), and that sequence converts to a partition under either
of two Grassmannian component conventions:

* partition_from_sequence uses mu_i = s_i + i - d with d the sequence's
  own virtual cardinality;
* hprime_partition uses the component of index g, where the tail is
  s_i = g - 1 - i and -1 never occurs; the conversion is piecewise
  around the last non-negative entry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DataError, ResourceError

__all__ = [
    "Partition",
    "NumericalSemigroup",
    "IndexSequence",
    "enumerate_semigroups",
    "weierstrass_sequence",
    "semigroup_from_sequence",
    "partition_from_sequence",
    "hprime_partition",
    "is_realizable",
    "dual_index_set",
    "partitions_up_to",
    "semigroup_record",
    "DEFAULT_MAX_GENUS",
]

DEFAULT_MAX_GENUS = 12


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        return cls(tuple(int(p) for p in parts if int(p) != 0))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        if i < 1:
            raise IndexError("parts are 1-based")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        cols = [sum(1 for p in self.parts if p > j) for j in range(self.parts[0])]
        return Partition(tuple(cols))

    def contains(self, other: "Partition") -> bool:
        """Young diagram containment: other fits inside self."""
        return all(other.part(i) <= self.part(i) for i in range(1, other.length + 1))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def partitions_up_to(max_weight: int, max_length: int | None = None) -> list[Partition]:
    """All partitions of weight <= max_weight (optionally length-capped)."""

    def gen(remaining: int, cap: int, length_left: int):
        yield ()
        if remaining == 0 or length_left == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first, length_left - 1):
                yield (first,) + rest

    length_left = max_length if max_length is not None else max_weight
    seen = []
    for parts in gen(max_weight, max_weight, length_left):
        seen.append(Partition(parts))
    # dedupe while keeping a canonical order: by weight, then lex descending
    uniq = sorted(set(seen), key=lambda p: (p.weight, tuple(-q for q in p.parts)))
    return uniq


@dataclass(frozen=True)
class NumericalSemigroup:
    """Genus plus the strictly increasing gap list."""

    genus: int
    gaps: tuple[int, ...]

    def __post_init__(self) -> None:
        gaps = tuple(int(a) for a in self.gaps)
        object.__setattr__(self, "gaps", gaps)
        if self.genus != len(gaps):
            raise DataError("genus must equal the number of gaps")
        if any(a < 1 for a in gaps):
            raise DataError("gaps must be positive")
        if any(gaps[i] >= gaps[i + 1] for i in range(len(gaps) - 1)):
            raise DataError("gaps must be strictly increasing")
        witness = _closure_witness(set(gaps))
        if witness is not None:
            x, y = witness
            raise DataError(f"closure violation: {x}+{y}={x + y} is a gap")

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> "NumericalSemigroup":
        gap_tuple = tuple(sorted(set(int(a) for a in gaps)))
        return cls(len(gap_tuple), gap_tuple)

    def contains(self, n: int) -> bool:
        return n >= 0 and n not in self.gaps

    @property
    def frobenius(self) -> int:
        """Largest gap, -1 for the full semigroup."""
        return self.gaps[-1] if self.gaps else -1

    @property
    def multiplicity(self) -> int:
        """Smallest nonzero element."""
        m = 1
        while m in self.gaps:
            m += 1
        return m

    def min_generators(self) -> tuple[int, ...]:
        """Elements not expressible as a sum of two nonzero elements."""
        bound = self.frobenius + self.multiplicity
        gens = []
        for n in range(1, bound + 1):
            if not self.contains(n):
                continue
            if any(self.contains(x) and self.contains(n - x) for x in range(1, n)):
                continue
            gens.append(n)
        return tuple(gens)

    def __repr__(self) -> str:
        return f"NumericalSemigroup(genus={self.genus}, gaps={list(self.gaps)})"


def _closure_witness(gaps: set[int]) -> Optional[tuple[int, int]]:
    """Pair of non-gaps whose sum is a gap, or None if closed.

    Sums above the largest gap are always non-gaps, so checking
    x + y <= max(gaps) is a complete test.
    """
    if not gaps:
        return None
    top = max(gaps)
    nongaps = [n for n in range(1, top + 1) if n not in gaps]
    for x, y in itertools.combinations_with_replacement(nongaps, 2):
        if x + y <= top and (x + y) in gaps:
            return (x, y)
    return None


@dataclass(frozen=True)
class IndexSequence:
    """Strictly decreasing integer sequence with eventual tail s_i = d - i.

    Only the exceptional head is stored; d is the virtual cardinality of
    the realized set.  The head is kept minimal: a trailing entry equal
    to the tail value at its position is absorbed into the tail.
    """

    d: int
    head: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        head = tuple(int(s) for s in self.head)
        # normalize: drop trailing entries that already obey the tail rule
        while head and head[-1] == self.d - len(head):
            head = head[:-1]
        object.__setattr__(self, "head", head)
        if any(head[i] <= head[i + 1] for i in range(len(head) - 1)):
            raise DataError("index sequence must be strictly decreasing")
        if head and head[-1] <= self.d - (len(head) + 1):
            raise DataError("head does not decrease into the tail")

    @property
    def head_length(self) -> int:
        return len(self.head)

    def s(self, i: int) -> int:
        """1-based entry, tail rule beyond the head."""
        if i < 1:
            raise IndexError("entries are 1-based")
        if i <= len(self.head):
            return self.head[i - 1]
        return self.d - i

    def contains(self, n: int) -> bool:
        if n in self.head:
            return True
        return n <= self.d - (len(self.head) + 1)

    def entries(self, count: int) -> tuple[int, ...]:
        return tuple(self.s(i) for i in range(1, count + 1))

    def __repr__(self) -> str:
        return f"IndexSequence(d={self.d}, head={list(self.head)})"


def enumerate_semigroups(genus: int, max_genus: int = DEFAULT_MAX_GENUS) -> list[NumericalSemigroup]:
    """All numerical semigroups of the given genus, ordered by gap list.

    Walks the semigroup tree: children of H are obtained by removing a
    minimal generator larger than the Frobenius number, which reaches
    every semigroup of each genus exactly once.
    """
    if genus < 0:
        raise DataError("genus must be non-negative")
    if genus > max_genus:
        raise ResourceError(
            f"genus {genus} exceeds the configured maximum {max_genus}"
        )
    results: list[tuple[int, ...]] = []

    def walk(gaps: tuple[int, ...], depth: int) -> None:
        if depth == genus:
            results.append(gaps)
            return
        frobenius = gaps[-1] if gaps else -1
        gap_set = set(gaps)
        multiplicity = 1
        while multiplicity in gap_set:
            multiplicity += 1

        def member(n: int) -> bool:
            return n >= 0 and n not in gap_set

        # children remove a minimal generator strictly above the Frobenius
        # number; such generators lie in (F, F + m], except that the full
        # semigroup also has the generator 1 = m > F = -1
        candidates = set(range(frobenius + 1, frobenius + multiplicity + 1))
        if multiplicity > frobenius:
            candidates.add(multiplicity)
        for n in sorted(candidates):
            if n <= frobenius or n < 1 or not member(n):
                continue
            if any(member(x) and member(n - x) for x in range(1, n)):
                continue
            walk(tuple(sorted(gap_set | {n})), depth + 1)

    walk((), 0)
    results.sort()
    return [NumericalSemigroup(genus, gaps) for gaps in results]


def weierstrass_sequence(semigroup: NumericalSemigroup) -> IndexSequence:
    """Index sequence of a semigroup: s_i = a_{g-i+1} - 1, tail g - 1 - i."""
    g = semigroup.genus
    head = tuple(semigroup.gaps[g - i] - 1 for i in range(1, g + 1))
    return IndexSequence(d=g - 1, head=head)


def semigroup_from_sequence(seq: IndexSequence) -> Optional[NumericalSemigroup]:
    """Invert weierstrass_sequence: the set of n with n - 1 not in the sequence.

    Returns None when that set is not a numerical semigroup (not contained
    in the non-negative integers, missing 0, or not additively closed).
    """
    # every integer <= -2 must lie in the sequence, else a negative number
    # would be a member of the candidate set
    low = seq.d - (seq.head_length + 1)
    for n in range(low, -1):
        if not seq.contains(n):
            return None
    if seq.contains(-1):
        return None  # 0 would be a gap
    gaps = tuple(
        n for n in range(1, max(seq.head, default=0) + 2) if seq.contains(n - 1)
    )
    if _closure_witness(set(gaps)) is not None:
        return None
    return NumericalSemigroup(len(gaps), gaps)


def partition_from_sequence(seq: IndexSequence) -> Partition:
    """mu_i = s_i + i - d with trailing zeros dropped."""
    parts = []
    for i in range(1, seq.head_length + 1):
        mu_i = seq.s(i) + i - seq.d
        if mu_i < 0:
            raise DataError("sequence entry below the tail rule; no partition")
        parts.append(mu_i)
    while parts and parts[-1] == 0:
        parts.pop()
    return Partition(tuple(parts))


def hprime_partition(seq: IndexSequence, genus: int) -> Partition:
    """Partition of a genus-g sequence under the index-g component convention.

    Requires the tail rule s_i = g - 1 - i and -1 not in the sequence;
    mu_i = s_i + i - g up to the last non-negative entry and
    mu_i = s_i + i - g + 1 afterwards.  The result has length at most g.
    """
    if seq.d != genus - 1:
        raise DataError("sequence is not in the genus-g component")
    if seq.contains(-1):
        raise DataError("sequence not in H'")
    horizon = max(seq.head_length, genus) + 1
    entries = seq.entries(horizon)
    i_zero = 0
    for i, s_i in enumerate(entries, start=1):
        if s_i >= 0:
            i_zero = i
    parts = []
    for i, s_i in enumerate(entries, start=1):
        mu_i = s_i + i - genus if i <= i_zero else s_i + i - genus + 1
        if mu_i < 0:
            raise DataError("sequence entry below the tail rule; no partition")
        parts.append(mu_i)
    while parts and parts[-1] == 0:
        parts.pop()
    part = Partition(tuple(parts))
    if part.length > genus:
        raise DataError("partition length exceeds the genus")
    return part


def sequence_from_hprime_partition(mu: Partition, genus: int) -> IndexSequence:
    """Inverse of hprime_partition for partitions of length at most g."""
    if mu.length > genus:
        raise DataError("partition longer than the genus")
    head = tuple(mu.part(i) + genus - i for i in range(1, genus + 1))
    return IndexSequence(d=genus - 1, head=head)


def is_realizable(seq: IndexSequence, genus: int) -> bool:
    """Whether some semigroup sequence dominates seq entrywise.

    Equivalent bound test: s_i <= 2g - 2i for i <= g and
    s_i <= g - i - 1 beyond.
    """
    horizon = max(seq.head_length, genus)
    for i in range(1, horizon + 1):
        bound = 2 * genus - 2 * i if i <= genus else genus - i - 1
        if seq.s(i) > bound:
            return False
    # beyond the head the tail rule gives s_i = d - i <= g - i - 1
    # exactly when d <= g - 1
    return seq.d <= genus - 1


def dual_index_set(seq: IndexSequence) -> IndexSequence:
    """The index set {m : -1 - m not in seq}, as an IndexSequence.

    For the sequence of a semigroup H this is -H; the operation is an
    involution.
    """
    # m > hi implies -1 - m lies in the tail of seq, so m is excluded;
    # m < lo implies -1 - m exceeds every entry of seq, so m belongs.
    hi = seq.head_length - seq.d
    lo = min(-2 - max(seq.head, default=seq.d - seq.head_length - 1), -1)
    members = [m for m in range(hi, lo - 1, -1) if not seq.contains(-1 - m)]
    positives = sum(1 for m in members if m >= 0)
    member_set = set(members)
    missing_negatives = max(0, -1 - hi)  # negatives above the window
    missing_negatives += sum(1 for m in range(lo, min(hi, -1) + 1) if m not in member_set)
    d = positives - missing_negatives
    return IndexSequence(d=d, head=tuple(members))


def semigroup_record(semigroup: NumericalSemigroup) -> dict:
    """JSON-ready record with the sequence head and both partitions."""
    seq = weierstrass_sequence(semigroup)
    return {
        "genus": semigroup.genus,
        "gaps": list(semigroup.gaps),
        "sequence_head": list(seq.head),
        "partition_gr_gm1": list(partition_from_sequence(seq).parts),
        "partition_hprime": list(hprime_partition(seq, semigroup.genus).parts),
    }
