"""wtaut: exact computer algebra for Weierstrass cycles and tautological rings.

Computes pullbacks of equivariant Schubert classes to moduli of pointed
(possibly singular, irreducible) curves, Weierstrass cycle classes and
their pushforwards, relation ideals, and Hilbert-function sandwich
bounds for tautological rings, all in exact rational arithmetic.
"""

from .exactalg import (
    MultiPoly,
    PolyMatrix,
    PSI,
    U,
    Variable,
    exact_div,
    kap,
    lam,
    rank_over_q,
    xvar,
    yvar,
    zvar,
)
from .errors import DataError, ResourceError
from .pullback import (
    MumfordIdeal,
    PullbackClass,
    bernoulli,
    chern_interval,
    kstar_power_sum,
    kstar_schubert,
    mumford_reduce,
    smooth_power_sum,
    to_lambda_basis,
)
from .schur import (
    ParamSequence,
    double_schur,
    factorial_schur,
    falling_factorial,
    generalized_power,
    homogeneous_components,
    psi_matrix,
    shifted_schur,
)
from .semigroups import (
    IndexSequence,
    NumericalSemigroup,
    Partition,
    dual_index_set,
    enumerate_semigroups,
    hprime_partition,
    is_realizable,
    partition_from_sequence,
    semigroup_from_sequence,
    weierstrass_sequence,
)
from .tautring import (
    GradedAlgebraSpec,
    HilbertReport,
    ev_homomorphism,
    hilbert_quotient_lower,
    hilbert_quotient_upper,
    relation_generators,
    sandwich_report,
)
from .wcycles import (
    CycleClass,
    intersection_nonempty,
    push_to_unpointed,
    virtual_class,
    weierstrass_class,
)

__version__ = "0.1.0"
