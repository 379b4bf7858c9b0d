"""Factorial, shifted, and double Schur polynomials, plus the matrix forms.

The factorial Schur polynomial of a partition mu in n arguments is the
ratio of determinants

    t_mu(z_1..z_n) = det[(z_i)_(mu_j + n - j)] / det[(z_i)_(n - j)]

where (z)_(k) = z (z-1) ... (z-k+1) is the falling factorial power.  The
denominator equals the Vandermonde product of the arguments, and the
numerator is always exactly divisible by it; both determinants are
computed and the quotient is obtained by exact polynomial division
against the product form.  Shifted Schur polynomials are the staggered
substitution s*_mu(z_1..z_n) = t_mu(z_1 + n - 1, ..., z_n), which makes
the stability identity s*_mu(z, 0) = s*_mu(z) hold by construction.
Double Schur polynomials replace falling factorials with products over
an arbitrary parameter sequence.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

from .exactalg import (
    MultiPoly,
    PolyMatrix,
    PSI,
    U,
    det_rows_with_distinct_variables,
    div_monic_linear,
    exact_div,
    xvar,
    zvar,
)
from .semigroups import Partition

__all__ = [
    "ParamSequence",
    "falling_factorial",
    "generalized_power",
    "factorial_schur",
    "shifted_schur",
    "double_schur",
    "homogeneous_components",
    "psi_matrix",
    "generic_arguments",
    "elementary_in_x",
    "complete_in_x",
]

Value = Union[MultiPoly, Fraction, int]


class ParamSequence:
    """Parameter sequence a_1, a_2, ... fed to generalized powers.

    Either an explicit list of values, or a rule j -> affine expression;
    the factorial specialization is a_j = j - 1.
    """

    __slots__ = ("rule", "label")

    def __init__(self, rule: Callable[[int], "MultiPoly | Fraction | int"], label: str = "custom"):
        self.rule = rule
        self.label = label

    def __call__(self, j: int) -> MultiPoly:
        if j < 1:
            raise IndexError("parameter indices are 1-based")
        return MultiPoly._wrap(self.rule(j))

    def __repr__(self) -> str:
        return f"ParamSequence({self.label})"

    @classmethod
    def zeros(cls) -> "ParamSequence":
        return cls(rule=lambda j: MultiPoly.zero(), label="zero")

    @classmethod
    def factorial(cls) -> "ParamSequence":
        return cls(rule=lambda j: MultiPoly.constant(j - 1), label="factorial")

    @classmethod
    def explicit(cls, values: Sequence[Value]) -> "ParamSequence":
        frozen = tuple(MultiPoly._wrap(v) for v in values)

        def rule(j: int, _vals=frozen) -> MultiPoly:
            if j > len(_vals):
                raise IndexError(f"parameter sequence has only {len(_vals)} entries")
            return _vals[j - 1]

        return cls(rule=rule, label="explicit")

    @classmethod
    def affine_u(cls, slope: int, shift: int) -> "ParamSequence":
        """a_j = (slope * j + shift) u, the translated equivariant sequence."""
        u = MultiPoly.variable(U)

        def rule(j: int) -> MultiPoly:
            return u.scale(slope * j + shift)

        return cls(rule=rule, label=f"({slope}j{shift:+d})u")


def falling_factorial(z: Value, i: int) -> MultiPoly:
    """z (z - 1) ... (z - i + 1); equals 1 when i = 0."""
    if i < 0:
        raise ValueError("falling factorial power must be non-negative")
    z = MultiPoly._wrap(z)
    out = MultiPoly.one()
    for c in range(i):
        out = out * (z - c)
    return out


def generalized_power(z: Value, k: int, a: ParamSequence) -> MultiPoly:
    """Product of k linear factors (z - a_1) ... (z - a_k).

    The factorial parameters a_m = m - 1 recover the falling factorial.
    """
    if k < 0:
        raise ValueError("generalized power must be non-negative")
    z = MultiPoly._wrap(z)
    out = MultiPoly.one()
    for m in range(1, k + 1):
        out = out * (z - a(m))
    return out


def generic_arguments(n: int) -> list[MultiPoly]:
    return [MultiPoly.variable(zvar(i)) for i in range(1, n + 1)]


def _divide_by_vandermonde(num: MultiPoly, args: Sequence[MultiPoly]) -> MultiPoly:
    """Divide by prod_{i<j} (z_i - z_j), factor by factor."""
    out = num
    n = len(args)
    for i in range(n):
        for j in range(i + 1, n):
            diff = args[i] - args[j]
            if diff.is_zero():
                raise ValueError("repeated Schur arguments")
            if not diff.variables():
                out = out / diff.constant_term()
                continue
            extracted = _extract_monic_linear(diff)
            if extracted is not None:
                va, rest = extracted
                out = div_monic_linear(out, va, rest)
            else:
                out = exact_div(out, diff)
    return out


def _extract_monic_linear(diff: MultiPoly):
    """Write diff as va - rest with rest free of va, if possible."""
    terms = list(diff.items())
    for mono, coeff in terms:
        if coeff != 1 or len(mono) != 1 or mono[0][1] != 1:
            continue
        va = mono[0][0]
        clean = all(
            all(var != va for var, _ in other)
            for other, _ in terms
            if other != mono
        )
        if clean:
            return va, MultiPoly.variable(va) - diff
    return None


def _schur_ratio(rows: list[list[MultiPoly]], args: Sequence[MultiPoly]) -> MultiPoly:
    """det(rows) divided by the Vandermonde of args, exactly."""
    symbolic = any(arg.variables() for arg in args)
    if symbolic:
        num = det_rows_with_distinct_variables(rows)
    else:
        num = PolyMatrix(rows).det()
    return _divide_by_vandermonde(num, args)


def factorial_schur(mu: Partition, args: Sequence[Value]) -> MultiPoly:
    """t_mu(z_1..z_n) as the exact ratio of falling-factorial determinants."""
    zs = [MultiPoly._wrap(a) for a in args]
    n = len(zs)
    if mu.length > n:
        raise ValueError("insufficient variables")
    exponents = [mu.part(j) + n - j for j in range(1, n + 1)]
    rows = [[falling_factorial(z, e) for e in exponents] for z in zs]
    return _schur_ratio(rows, zs)


# -- fast generic evaluation ------------------------------------------------
#
# For the generic alphabet z_1..z_n everything has integer coefficients,
# so the determinant ratio runs on plain exponent tuples and ints; the
# pullback pipeline consumes these tables directly.

ExpTable = dict[tuple[int, ...], int]


def _falling_coeffs(k: int) -> list[int]:
    out = [1]
    for c in range(k):
        nxt = [0] * (len(out) + 1)
        for p, q in enumerate(out):
            nxt[p + 1] += q
            nxt[p] -= c * q
        out = nxt
    return out


def _divide_table(table: ExpTable, i: int, j: int) -> ExpTable:
    """Exact synthetic division of a table by (z_i - z_j)."""
    layers: dict[int, ExpTable] = {}
    for t, c in table.items():
        base = t[:i] + (0,) + t[i + 1 :]
        layers.setdefault(t[i], {})[base] = c
    if not layers:
        return {}
    quot: ExpTable = {}
    carry: ExpTable = {}
    for k in range(max(layers), 0, -1):
        level = layers.get(k, {})
        for t, c in carry.items():
            acc = level.get(t, 0) + c
            if acc:
                level[t] = acc
            else:
                level.pop(t, None)
        for t, c in level.items():
            full = t[:i] + (k - 1,) + t[i + 1 :]
            quot[full] = quot.get(full, 0) + c
        carry = {t[:j] + (t[j] + 1,) + t[j + 1 :]: c for t, c in level.items()}
    residue = layers.get(0, {})
    for t, c in carry.items():
        acc = residue.get(t, 0) + c
        if acc:
            residue[t] = acc
        else:
            residue.pop(t, None)
    if residue:
        raise ValueError("not divisible")
    return quot


def _divided_difference(table: ExpTable, k: int) -> ExpTable:
    """(p - swap_k p) / (z_k - z_{k+1}) term by term (0-based k).

    A monomial z_k^a z_{k+1}^b maps to sign(a - b) times the geometric
    block sum_{i} z_k^i z_{k+1}^(a+b-1-i), so no subtraction or division
    ever materializes.
    """
    out: ExpTable = {}
    for t, c in table.items():
        a, b = t[k], t[k + 1]
        if a == b:
            continue
        lo, hi = (b, a) if a > b else (a, b)
        val = c if a > b else -c
        total = a + b - 1
        head, tail = t[:k], t[k + 2 :]
        for i in range(lo, hi):
            key = head + (i, total - i) + tail
            acc = out.get(key, 0) + val
            if acc:
                out[key] = acc
            else:
                del out[key]
    return out


@lru_cache(maxsize=None)
def _t_mu_table(parts: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """t_mu(z_1..z_n) as a frozen {exponent tuple: int} table.

    The determinant-over-Vandermonde ratio equals the full divided
    difference operator applied to the product of the diagonal entries
    prod_i (z_i)_(mu_i + n - i), which keeps intermediates small.
    """
    if len(parts) > n:
        raise ValueError("insufficient variables")
    exponents = [(parts[j] if j < len(parts) else 0) + n - (j + 1) for j in range(n)]
    table: ExpTable = {(0,) * n: 1}
    for i, e in enumerate(exponents):
        coeffs = _falling_coeffs(e)
        nxt: ExpTable = {}
        for t, c in table.items():
            head, tail = t[:i], t[i + 1 :]
            for p, q in enumerate(coeffs):
                if not q:
                    continue
                key = head + (p,) + tail
                acc = nxt.get(key, 0) + c * q
                if acc:
                    nxt[key] = acc
                else:
                    del nxt[key]
        table = nxt
    word: list[int] = []
    for m in range(1, n):
        word.extend(range(m, 0, -1))
    for k in reversed(word):
        table = _divided_difference(table, k - 1)
    return tuple(sorted(table.items()))


@lru_cache(maxsize=None)
def factorial_schur_generic(parts: tuple[int, ...], n: int) -> MultiPoly:
    """t_mu in the generic alphabet z_1..z_n, cached per (mu, n)."""
    terms = {}
    for t, c in _t_mu_table(parts, n):
        mono = tuple((zvar(i + 1), e) for i, e in enumerate(t) if e)
        terms[mono] = Fraction(c)
    return MultiPoly(terms)


def shifted_schur(mu: Partition, args: Sequence[Value]) -> MultiPoly:
    """s*_mu(z_1..z_n) = t_mu(z_1 + n - 1, ..., z_n); zero when l(mu) > n."""
    zs = [MultiPoly._wrap(a) for a in args]
    n = len(zs)
    if mu.length > n:
        return MultiPoly.zero()
    staggered = [z + (n - i) for i, z in enumerate(zs, start=1)]
    return factorial_schur(mu, staggered)


def double_schur(mu: Partition, args: Sequence[Value], a: ParamSequence) -> MultiPoly:
    """Determinant ratio with generalized powers over the parameters a.

    Reduces to factorial_schur for a_m = m - 1 and to the classical Schur
    polynomial for a identically zero.
    """
    xs = [MultiPoly._wrap(v) for v in args]
    n = len(xs)
    if mu.length > n:
        raise ValueError("insufficient variables")
    exponents = [mu.part(j) + n - j for j in range(1, n + 1)]
    rows = [[generalized_power(x, e, a) for e in exponents] for x in xs]
    return _schur_ratio(rows, xs)


def homogeneous_components(p: MultiPoly, weight=None) -> list[MultiPoly]:
    """Split into weighted-homogeneous parts; component i has degree i."""
    return p.homogeneous_components(weight)


# -- symmetric function tables in x_1..x_g ---------------------------------


@lru_cache(maxsize=None)
def elementary_in_x(g: int, a: int) -> MultiPoly:
    """e_a(x_1..x_g), zero above a = g."""
    if a < 0 or a > g:
        return MultiPoly.zero()
    if a == 0:
        return MultiPoly.one()
    if g == 0:
        return MultiPoly.zero()
    x_g = MultiPoly.variable(xvar(g))
    return elementary_in_x(g - 1, a) + x_g * elementary_in_x(g - 1, a - 1)


@lru_cache(maxsize=None)
def complete_in_x(g: int, a: int) -> MultiPoly:
    """h_a(x_1..x_g)."""
    if a < 0:
        return MultiPoly.zero()
    if a == 0:
        return MultiPoly.one()
    if g == 0:
        return MultiPoly.zero()
    if g == 1:
        return MultiPoly.variable(xvar(1)) ** a
    x_g = MultiPoly.variable(xvar(g))
    return complete_in_x(g - 1, a) + x_g * complete_in_x(g, a - 1)


def elementary_of_values(values: Sequence[int], b: int) -> Fraction:
    if b < 0:
        return Fraction(0)
    acc = [Fraction(0)] * (b + 1)
    acc[0] = Fraction(1)
    for t in values:
        for k in range(min(b, len(acc) - 1), 0, -1):
            acc[k] += t * acc[k - 1]
    return acc[b]


def complete_of_values(values: Sequence[int], b: int) -> Fraction:
    if b < 0:
        return Fraction(0)
    acc = [Fraction(0)] * (b + 1)
    acc[0] = Fraction(1)
    for t in values:
        for k in range(1, b + 1):
            acc[k] += t * acc[k - 1]
    return acc[b]


def _psi_entry(mu: Partition, g: int, i: int, j: int) -> MultiPoly:
    """Entry (i, j) of the complete-homogeneous matrix form.

    The total degree-(mu_i + j - i) part of the series
    (sum_a h_a(x)) * c(interval), where the interval list is
    {0..mu_i - i + g - 1} with elementary coefficients when the interval
    is genuine, and {0..i - mu_i - g} with complete coefficients when it
    is inverted.
    """
    k = mu.part(i) + j - i
    if k < 0:
        return MultiPoly.zero()
    psi = MultiPoly.variable(PSI)
    r = mu.part(i) - i + g
    out = MultiPoly.zero()
    for b in range(0, k + 1):
        if r >= 1:
            coeff = elementary_of_values(range(0, r), b)
        else:
            coeff = complete_of_values(range(0, -r + 1), b)
        if not coeff:
            continue
        out = out + complete_in_x(g, k - b).scale(coeff) * psi**b
    return out


def _psi_prime_entry(mu: Partition, g: int, i: int, j: int) -> MultiPoly:
    """Entry (i, j) of the dual (elementary) matrix form, via mu conjugate."""
    mc = mu.conjugate()
    k = mc.part(i) + j - i
    if k < 0:
        return MultiPoly.zero()
    psi = MultiPoly.variable(PSI)
    t = i - mc.part(i) + g
    out = MultiPoly.zero()
    for b in range(0, k + 1):
        if t >= 1:
            coeff = complete_of_values(range(0, t), b)
        else:
            coeff = elementary_of_values(range(0, -t + 1), b)
        if not coeff:
            continue
        out = out + elementary_in_x(g, k - b).scale(coeff) * psi**b
    return out


def psi_matrix(mu: Partition, g: int, variant: str = "psi") -> PolyMatrix:
    """Matrix whose determinant is the Schubert-class pullback for mu.

    variant "psi" is l(mu) x l(mu) with complete-homogeneous entries;
    variant "psi_prime" is l(mu') x l(mu') with elementary entries.  Both
    determinants agree with the shifted-Schur evaluation of the pullback.
    """
    if variant == "psi":
        size = mu.length
        entry = _psi_entry
    elif variant == "psi_prime":
        size = mu.conjugate().length
        entry = _psi_prime_entry
    else:
        raise ValueError("variant must be 'psi' or 'psi_prime'")
    if size == 0:
        return PolyMatrix([])
    return PolyMatrix([[entry(mu, g, i, j) for j in range(1, size + 1)] for i in range(1, size + 1)])
