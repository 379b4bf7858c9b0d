import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtaut.exactalg import (
    MultiPoly,
    PolyMatrix,
    PSI,
    U,
    Variable,
    exact_div,
    div_linear_difference,
    det_rows_with_distinct_variables,
    kap,
    lam,
    rank_over_q,
    xvar,
    zvar,
)

X1, X2 = MultiPoly.variable(xvar(1)), MultiPoly.variable(xvar(2))
PSI_P = MultiPoly.variable(PSI)
U_P = MultiPoly.variable(U)
L1 = MultiPoly.variable(lam(1))


# -- variables ---------------------------------------------------------------


def test_variable_weights():
    assert lam(3).weight == 3
    assert kap(2).weight == 2
    assert kap(0).weight == 0
    assert PSI.weight == U.weight == xvar(5).weight == 1


def test_variable_validation():
    with pytest.raises(ValueError):
        Variable("psi", 1)
    with pytest.raises(ValueError):
        Variable("x", 0)
    with pytest.raises(ValueError):
        Variable("kappa", -1)
    with pytest.raises(ValueError):
        Variable("w", 1)


def test_variable_parse_round_trip():
    for v in (lam(12), kap(0), xvar(3), PSI, U, zvar(7)):
        assert Variable.parse(v.name) == v
    with pytest.raises(ValueError):
        Variable.parse("psi2")
    with pytest.raises(ValueError):
        Variable.parse("x")


# -- ring operations ---------------------------------------------------------


def test_additive_inverse():
    assert (X1 + PSI_P) + (-PSI_P) == X1


def test_difference_of_squares():
    assert (X1 - U_P) * (X1 + U_P) == X1**2 - U_P**2


def test_cube_coefficient_matches_repeated_multiplication():
    p = L1 + PSI_P
    cubed = p**3
    assert cubed == p * p * p
    assert cubed.coefficient([(lam(1), 1), (PSI, 2)]) == 3


def test_negative_power_rejected():
    with pytest.raises(ValueError, match="non-polynomial operation"):
        X1 ** (-1)


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly.constant(0.5)
    with pytest.raises(TypeError):
        X1 * 0.5


def test_scalar_coercion():
    assert X1 * 2 - X1 - X1 == 0
    assert (X1 + Fraction(1, 2)) - X1 == Fraction(1, 2)


# -- substitution ------------------------------------------------------------


def test_substitute_theorem_pinning_example():
    g = 3
    p = MultiPoly.variable(xvar(1))
    assert p.substitute({xvar(1): U_P.scale(g - 1)}) == U_P.scale(2)


def test_substitute_even_power_sign():
    assert (U_P**2).substitute({U: -PSI_P}) == PSI_P**2


def test_substitute_annihilating_factor():
    p = X1 * X2
    assert p.substitute({xvar(1): -L1, xvar(2): MultiPoly.zero()}) == 0


def test_substitute_identity_default():
    p = X1 * PSI_P + L1
    assert p.substitute({}) == p


# -- determinants ------------------------------------------------------------


def test_det_identity():
    assert PolyMatrix.identity(3).det() == 1


def test_det_triangular():
    m = PolyMatrix([[X1, MultiPoly.one()], [MultiPoly.zero(), PSI_P]])
    assert m.det() == X1 * PSI_P


def test_det_numeric_vandermonde_product_oracle():
    pts = (0, 1, 3)
    m = PolyMatrix([[Fraction(p) ** j for j in range(3)] for p in pts])
    expected = Fraction(1)
    for i, j in itertools.combinations(range(3), 2):
        expected *= pts[j] - pts[i]
    assert m.det() == expected == 6


def test_det_non_square_rejected():
    with pytest.raises(ValueError):
        PolyMatrix([[X1, X2]]).det()


def test_det_empty_matrix_is_one():
    assert PolyMatrix([]).det() == 1


# -- rank --------------------------------------------------------------------


def test_rank_zero_matrix():
    assert rank_over_q([[0] * 5 for _ in range(3)]) == 0


def test_rank_identity():
    assert rank_over_q([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 4


def test_rank_proportional_rows():
    assert rank_over_q([[1, 2], [2, 4], [3, 6]]) == 1


def _minor_rank(matrix):
    """Largest k with a nonzero k x k minor, by direct enumeration."""
    rows, cols = len(matrix), len(matrix[0])
    best = 0
    for k in range(1, min(rows, cols) + 1):
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                sub = [[Fraction(matrix[i][j]) for j in ci] for i in ri]
                if PolyMatrix(sub).det() != 0:
                    best = k
                    break
            else:
                continue
            break
    return best


@pytest.mark.parametrize("seed", range(6))
def test_rank_matches_minor_enumeration(seed):
    import random

    rng = random.Random(seed)
    rows, cols = rng.randint(1, 5), rng.randint(1, 6)
    matrix = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
    if seed % 2:  # force rank deficiency
        matrix.append(list(matrix[0]))
    assert rank_over_q(matrix) == _minor_rank(matrix)


# -- division ----------------------------------------------------------------


def test_exact_div_round_trip():
    p = (X1 + PSI_P) * (X2 - U_P.scale(3))
    assert exact_div(p, X1 + PSI_P) == X2 - U_P.scale(3)


def test_exact_div_rejects_non_divisor():
    with pytest.raises(ValueError, match="not divisible"):
        exact_div(X1 * X2 + 1, X1 + 1)


def test_div_linear_difference_matches_general():
    p = (X1 - X2) * (X1**2 + X2 * PSI_P + 7)
    fast = div_linear_difference(p, xvar(1), xvar(2))
    assert fast == exact_div(p, X1 - X2)


# -- serialization -----------------------------------------------------------


def test_canonical_str_examples():
    assert (L1**2 - L1 * PSI_P).canonical_str() == "lambda1^2 - lambda1*psi"
    assert MultiPoly.zero().canonical_str() == "0"
    assert (PSI_P.scale(Fraction(-1, 2))).canonical_str() == "-1/2*psi"


def test_json_round_trip():
    p = L1**2 * PSI_P.scale(Fraction(3, 7)) - X1 * U_P + MultiPoly.constant(Fraction(-1, 2))
    assert MultiPoly.from_json(p.to_json()) == p


def test_canonical_str_is_deterministic():
    p = X1 * X2 + PSI_P**2 - L1.scale(5)
    assert p.canonical_str() == MultiPoly.from_json(p.to_json()).canonical_str()


def test_latex_tokens():
    assert (PSI_P.scale(3) - L1).latex() == "-\\lambda_{1} + 3\\psi"


# -- property tests ----------------------------------------------------------

_vars = st.sampled_from([lam(1), lam(2), PSI, U, xvar(1), xvar(2), kap(1)])
_coeffs = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=5
).filter(lambda f: f != 0)


@st.composite
def polys(draw, max_terms=4, max_exp=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    p = MultiPoly.zero()
    for _ in range(n):
        c = draw(_coeffs)
        nvars = draw(st.integers(min_value=0, max_value=2))
        mono = MultiPoly.constant(c)
        for _ in range(nvars):
            v = draw(_vars)
            e = draw(st.integers(min_value=1, max_value=max_exp))
            mono = mono * MultiPoly.variable(v) ** e
        p = p + mono
    return p


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p


@given(polys(), polys(), polys())
@settings(max_examples=40, deadline=None)
def test_substitution_is_homomorphic(p, q, r):
    sigma = {xvar(1): L1 + PSI_P, U: -PSI_P}
    lhs = (p * q + r).substitute(sigma)
    rhs = p.substitute(sigma) * q.substitute(sigma) + r.substitute(sigma)
    assert lhs == rhs


@given(st.lists(polys(max_terms=2, max_exp=2), min_size=9, max_size=9))
@settings(max_examples=25, deadline=None)
def test_det_row_swap_negates(entries):
    m = [entries[0:3], entries[3:6], entries[6:9]]
    base = PolyMatrix(m).det()
    swapped = PolyMatrix([m[1], m[0], m[2]]).det()
    assert swapped == -base


@given(st.lists(polys(max_terms=2, max_exp=2), min_size=6, max_size=6))
@settings(max_examples=25, deadline=None)
def test_det_equal_rows_vanish(entries):
    m = [entries[0:3], entries[3:6], entries[0:3]]
    assert PolyMatrix(m).det() == 0


@given(st.lists(polys(max_terms=2, max_exp=2), min_size=25, max_size=25))
@settings(max_examples=10, deadline=None)
def test_det_strategies_agree_on_5x5(entries):
    from wtaut.exactalg import _det_cofactor

    rows = [entries[5 * i : 5 * i + 5] for i in range(5)]
    bareiss = PolyMatrix(rows).det()  # n = 5 takes the elimination path
    assert bareiss == _det_cofactor([list(r) for r in rows])
    assert bareiss == det_rows_with_distinct_variables(rows)
