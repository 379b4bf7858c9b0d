"""Weierstrass cycle classes on pointed moduli and their pushforwards.

The class of the cycle attached to a semigroup H of genus g is driven by
the partition mu of its index sequence (index-g component convention):

    [W_H] = u^|mu| * s*_mu(z_1..z_g),   z_i = (x_i + (i - g - 1) u) / u,

equivalently u^|mu| t_mu(x_1/u - 1, ..., x_g/u - 1), with u -> -psi and
the result rewritten in the lambda basis.  The unit argument shift is
what makes mu = (1) reproduce the classical Weierstrass divisor class
g(g+1)/2 psi - lambda_1; the unshifted evaluation t_mu(x/u) is kept
available for comparison.  Pushing forward along the forgetful map sends
lambda-monomial times psi^m to the same lambda-monomial times
kappa_(m-1), dropping the degree by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DataError
from .exactalg import MultiPoly, PSI, U, kap
from .pullback import homogenize_and_pin, to_lambda_basis
from .semigroups import (
    IndexSequence,
    NumericalSemigroup,
    Partition,
    hprime_partition,
    is_realizable,
    semigroup_from_sequence,
    sequence_from_hprime_partition,
    weierstrass_sequence,
)

__all__ = [
    "CycleClass",
    "weierstrass_class",
    "virtual_class",
    "push_to_unpointed",
    "intersection_nonempty",
    "pushforward_rule",
]


@dataclass(frozen=True)
class CycleClass:
    """Cycle class data; formulas hold up to a nonzero constant factor."""

    genus: int
    semigroup: Optional[NumericalSemigroup]
    partition: Partition
    class_pointed: MultiPoly
    class_unpointed: MultiPoly
    virtual: bool
    normalization: str = "up-to-constant"

    @property
    def codimension(self) -> int:
        return self.partition.weight

    def record(self) -> dict:
        """JSON-ready record."""
        return {
            "gaps": list(self.semigroup.gaps) if self.semigroup else None,
            "partition": list(self.partition.parts),
            "codim": self.codimension,
            "class_pointed": self.class_pointed.to_json(),
            "class_unpointed": self.class_unpointed.to_json(),
            "virtual": self.virtual,
            "normalization": self.normalization,
        }


def _cycle_value(mu: Partition, g: int, unshifted: bool) -> MultiPoly:
    shift = 0 if unshifted else 1
    value_u = homogenize_and_pin(mu.parts, g, g, shift=shift)
    return value_u.substitute({U: -MultiPoly.variable(PSI)})


def pushforward_rule(pointed: MultiPoly) -> MultiPoly:
    """lambda-monomial * psi^m  ->  lambda-monomial * kappa_(m-1).

    psi-free terms are annihilated (kappa with index -1 is zero).
    """
    out = MultiPoly.zero()
    for mono, coeff in pointed.items():
        m = 0
        rest = []
        for var, e in mono:
            if var == PSI:
                m = e
            elif var.family == "lambda":
                rest.append((var, e))
            else:
                raise ValueError("pushforward expects a polynomial in lambda and psi")
        if m == 0:
            continue
        rest.append((kap(m - 1), 1))
        out = out + MultiPoly.monomial(rest, coeff)
    return out


def weierstrass_class(semigroup: NumericalSemigroup, unshifted: bool = False) -> CycleClass:
    """Cycle class of the locus of points with the given semigroup."""
    g = semigroup.genus
    if g < 1:
        raise DataError("cycle classes need genus at least 1")
    mu = hprime_partition(weierstrass_sequence(semigroup), g)
    pointed_x = _cycle_value(mu, g, unshifted)
    pointed = to_lambda_basis(pointed_x, g)
    return CycleClass(
        genus=g,
        semigroup=semigroup,
        partition=mu,
        class_pointed=pointed,
        class_unpointed=pushforward_rule(pointed),
        virtual=False,
    )


def virtual_class(mu: Partition, g: int, unshifted: bool = False) -> CycleClass:
    """Same formula driven by an arbitrary partition of length <= g.

    Flagged virtual when no semigroup sequence dominates the sequence
    attached to mu.
    """
    if mu.length > g:
        raise DataError("partition longer than the genus")
    if g < 1:
        raise DataError("cycle classes need genus at least 1")
    seq = sequence_from_hprime_partition(mu, g)
    pointed_x = _cycle_value(mu, g, unshifted)
    pointed = to_lambda_basis(pointed_x, g)
    return CycleClass(
        genus=g,
        semigroup=None,
        partition=mu,
        class_pointed=pointed,
        class_unpointed=pushforward_rule(pointed),
        virtual=not is_realizable(seq, g),
    )


def push_to_unpointed(cycle: CycleClass, substitute_kappa0: bool = False) -> MultiPoly:
    """Unpointed class of a cycle; optionally set kappa_0 = 2g - 2."""
    out = cycle.class_unpointed
    if substitute_kappa0:
        out = out.substitute({kap(0): MultiPoly.constant(2 * cycle.genus - 2)})
    return out


def intersection_nonempty(seq: IndexSequence, g: int, closed: bool) -> bool:
    """Cell-intersection criterion for the locus of curves with disks.

    closed=False tests the open cell: the complement set must be a
    numerical semigroup of genus g.  closed=True tests the cycle closure
    via the entrywise bounds (some semigroup sequence dominates seq).
    """
    if closed:
        return is_realizable(seq, g)
    semigroup = semigroup_from_sequence(seq)
    return semigroup is not None and semigroup.genus == g
