"""Exact sparse multivariate polynomial arithmetic over Q.

Everything downstream (Schur evaluations, pullback classes, cycle
classes, Hilbert tables) reduces to arithmetic in the graded ring

    Q[lambda_1..lambda_g, psi, kappa_j, x_i, u, z_i, y_j]

with weights  lambda_i -> i,  kappa_j -> j,  and 1 for all the weight-one
families (psi, u, x, z, y).  Coefficients are exact rationals; there is no
floating-point mode.  Monomials are kept in a canonical graded-lex order
(family precedence lambda < psi < kappa < x < u < z < y, then index) so
printed polynomials and JSON payloads are byte-stable across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Variable",
    "MultiPoly",
    "PolyMatrix",
    "lam",
    "kap",
    "xvar",
    "zvar",
    "yvar",
    "PSI",
    "U",
    "exact_div",
    "rank_over_q",
]

_FAMILIES = ("lambda", "psi", "kappa", "x", "u", "z", "y")
_RANK = {fam: r for r, fam in enumerate(_FAMILIES)}
_UNINDEXED = frozenset(("psi", "u"))

_NAME_RE = re.compile(r"^([a-z]+?)(\d*)$")

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Variable:
    """One symbol from the fixed alphabet, e.g. lambda_3, psi, or x_2.

    The weight (graded degree) is determined by family and index:
    lambda_i and kappa_j carry their index, every other family has
    weight one.  psi and u are distinct symbols; they are only related
    through the explicit substitution u -> -psi performed by callers.
    """

    family: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.family not in _RANK:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.family in _UNINDEXED:
            if self.index != 0:
                raise ValueError(f"{self.family} takes no index")
        elif self.family == "kappa":
            if self.index < 0:
                raise ValueError("kappa index must be >= 0")
        elif self.index < 1:
            raise ValueError(f"{self.family} index must be >= 1")
        object.__setattr__(self, "_key", (_RANK[self.family], self.index))
        object.__setattr__(
            self, "_weight", self.index if self.family in ("lambda", "kappa") else 1
        )
        object.__setattr__(self, "_hash", hash((self.family, self.index)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def weight(self) -> int:
        return self._weight

    def sort_key(self) -> tuple[int, int]:
        return self._key

    @property
    def name(self) -> str:
        if self.family in _UNINDEXED:
            return self.family
        return f"{self.family}{self.index}"

    @classmethod
    def parse(cls, name: str) -> "Variable":
        m = _NAME_RE.match(name)
        if m is None or m.group(1) not in _RANK:
            raise ValueError(f"cannot parse variable name {name!r}")
        family, digits = m.group(1), m.group(2)
        if family in _UNINDEXED:
            if digits:
                raise ValueError(f"cannot parse variable name {name!r}")
            return cls(family)
        if not digits:
            raise ValueError(f"variable {name!r} needs an index")
        return cls(family, int(digits))

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


def lam(i: int) -> Variable:
    return Variable("lambda", i)


def kap(j: int) -> Variable:
    return Variable("kappa", j)


def xvar(i: int) -> Variable:
    return Variable("x", i)


def zvar(i: int) -> Variable:
    return Variable("z", i)


def yvar(j: int) -> Variable:
    return Variable("y", j)


PSI = Variable("psi")
U = Variable("u")


# A monomial is a tuple of (Variable, exponent) pairs with positive
# exponents, sorted by Variable.sort_key.  The empty tuple is 1.
Monomial = tuple[tuple[Variable, int], ...]


def _mono_weight(mono: Monomial) -> int:
    return sum(v.weight * e for v, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        (va, ea), (vb, eb) = a[ia], b[ib]
        ka, kb = va.sort_key(), vb.sort_key()
        if ka == kb:
            out.append((va, ea + eb))
            ia += 1
            ib += 1
        elif ka < kb:
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


# Sentinel larger than any real (rank, index) pair; it makes a monomial
# that is a strict prefix of another (possible only through weight-zero
# kappa_0) compare as the larger one, matching sparse-lex semantics.
_END = (1 << 30, 0, 0)


def mono_sort_key(mono: Monomial):
    """Canonical graded-lex order: ascending key = display order.

    The leading (largest) monomial has the smallest key: degree is
    negated and exponents enter negated, so tuple comparison walks the
    variables in canonical order and prefers larger exponents.
    """
    return (
        -_mono_weight(mono),
        tuple((v._key[0], v._key[1], -e) for v, e in mono) + (_END,),
    )


def _coerce_coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not allowed")
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


class MultiPoly:
    """Immutable sparse polynomial: map from monomial to nonzero Fraction."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        cleaned: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _coerce_coeff(coeff)
                if coeff:
                    cleaned[mono] = coeff
        object.__setattr__(self, "_terms", cleaned)

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls({(): Fraction(1)})

    @classmethod
    def constant(cls, value: Scalar) -> "MultiPoly":
        return cls({(): _coerce_coeff(value)})

    @classmethod
    def variable(cls, var: Variable) -> "MultiPoly":
        return cls({((var, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, pairs: Iterable[tuple[Variable, int]], coeff: Scalar = 1) -> "MultiPoly":
        mono = tuple(sorted(((v, e) for v, e in pairs if e), key=lambda p: p[0].sort_key()))
        for v, e in mono:
            if e < 0:
                raise ValueError("negative exponent in monomial")
        return cls({mono: _coerce_coeff(coeff)})

    @staticmethod
    def _wrap(value: "MultiPoly | Scalar") -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.constant(value)

    # -- basic protocol ----------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical display order (leading term first)."""
        return [(m, self._terms[m]) for m in sorted(self._terms, key=mono_sort_key)]

    def items(self):
        """Raw (monomial, coefficient) pairs in arbitrary order."""
        return self._terms.items()

    def term_count(self) -> int:
        return len(self._terms)

    def coefficient(self, pairs: Iterable[tuple[Variable, int]]) -> Fraction:
        mono = tuple(sorted(((v, e) for v, e in pairs if e), key=lambda p: p[0].sort_key()))
        return self._terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> set[Variable]:
        out: set[Variable] = set()
        for mono in self._terms:
            out.update(v for v, _ in mono)
        return out

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = MultiPoly._wrap(other)
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc = out.get(mono, 0) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-MultiPoly._wrap(other))

    def __rsub__(self, other):
        return MultiPoly._wrap(other) + (-self)

    def __mul__(self, other):
        other = MultiPoly._wrap(other)
        if not self._terms or not other._terms:
            return MultiPoly.zero()
        # iterate over the smaller factor
        if len(self._terms) > len(other._terms):
            self, other = other, self
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = _mono_mul(ma, mb)
                acc = out.get(mono, 0) + ca * cb
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("polynomial power must be an integer")
        if exponent < 0:
            raise ValueError("non-polynomial operation")
        result = MultiPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, value: Scalar) -> "MultiPoly":
        c = _coerce_coeff(value)
        if not c:
            return MultiPoly.zero()
        return MultiPoly({m: co * c for m, co in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce_coeff(other)
            if not c:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / c)
        return exact_div(self, other)

    # -- structure ----------------------------------------------------

    def weighted_degree(self) -> int | None:
        """Top weighted degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(_mono_weight(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {_mono_weight(m) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self, weight=None) -> list["MultiPoly"]:
        """Split into weighted-homogeneous parts, indexed by degree.

        Returns a list comps with comps[i] homogeneous of degree i and
        sum(comps) == self.  A custom weight function Variable -> int may
        be supplied; the default is the alphabet grading.
        """
        if not self._terms:
            return []
        if weight is None:
            degree = _mono_weight
        else:
            def degree(mono, _w=weight):
                return sum(_w(v) * e for v, e in mono)
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in self._terms.items():
            buckets.setdefault(degree(mono), {})[mono] = coeff
        top = max(buckets)
        if min(buckets) < 0:
            raise ValueError("negative weighted degree under supplied grading")
        return [MultiPoly(buckets.get(d, {})) for d in range(top + 1)]

    def substitute(self, sigma: Mapping[Variable, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Apply the ring homomorphism sending each variable to its image.

        Variables absent from sigma map to themselves.
        """
        images = {v: MultiPoly._wrap(p) for v, p in sigma.items()}
        power_cache: dict[tuple[Variable, int], MultiPoly] = {}
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            image: MultiPoly | None = None
            plain: list[tuple[Variable, int]] = []
            for var, exp in mono:
                if var in images:
                    key = (var, exp)
                    if key not in power_cache:
                        power_cache[key] = images[var] ** exp
                    factor = power_cache[key]
                    image = factor if image is None else image * factor
                else:
                    plain.append((var, exp))
            plain_mono = tuple(plain)
            if image is None:
                val = acc.get(plain_mono, 0) + coeff
                if val:
                    acc[plain_mono] = val
                else:
                    acc.pop(plain_mono, None)
                continue
            for m2, c2 in image._terms.items():
                target = _mono_mul(plain_mono, m2)
                val = acc.get(target, 0) + coeff * c2
                if val:
                    acc[target] = val
                else:
                    acc.pop(target, None)
        return MultiPoly(acc)

    def leading(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = min(self._terms, key=mono_sort_key)
        return mono, self._terms[mono]

    # -- serialization -------------------------------------------------

    def canonical_str(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono, coeff in self.terms():
            body = "*".join(f"{v.name}^{e}" if e > 1 else v.name for v, e in mono)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not pieces:
                pieces.append(text if coeff > 0 else f"-{text}")
            else:
                pieces.append(f" + {text}" if coeff > 0 else f" - {text}")
        return "".join(pieces)

    def latex(self) -> str:
        if not self._terms:
            return "0"

        def sym(v: Variable) -> str:
            if v.family in _UNINDEXED:
                return "\\" + v.family if v.family == "psi" else "u"
            if v.family in ("lambda", "kappa"):
                return f"\\{v.family}_{{{v.index}}}"
            return f"{v.family}_{{{v.index}}}"

        pieces = []
        for mono, coeff in self.terms():
            body = "".join(f"{sym(v)}^{{{e}}}" if e > 1 else sym(v) for v, e in mono)
            mag = abs(coeff)
            if mag.denominator == 1:
                magtex = str(mag)
            else:
                magtex = f"\\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
            if not body:
                text = magtex
            elif mag == 1:
                text = body
            else:
                text = f"{magtex}{body}"
            if not pieces:
                pieces.append(text if coeff > 0 else f"-{text}")
            else:
                pieces.append(f" + {text}" if coeff > 0 else f" - {text}")
        return "".join(pieces)

    def to_json(self) -> list[dict]:
        out = []
        for mono, coeff in self.terms():
            out.append({"coeff": str(coeff), "exps": {v.name: e for v, e in mono}})
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "MultiPoly":
        acc: dict[Monomial, Fraction] = {}
        for entry in data:
            coeff = Fraction(entry["coeff"])
            pairs = [(Variable.parse(name), int(e)) for name, e in entry["exps"].items()]
            mono = tuple(sorted(pairs, key=lambda p: p[0].sort_key()))
            if coeff:
                acc[mono] = acc.get(mono, Fraction(0)) + coeff
        return cls(acc)

    def __repr__(self) -> str:
        return f"MultiPoly({self.canonical_str()})"


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact polynomial division; raises ValueError if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero()
    lq_mono, lq_coeff = q.leading()
    lq = dict(lq_mono)
    rem = dict(p._terms)
    quot: dict[Monomial, Fraction] = {}
    qterms = list(q._terms.items())
    while rem:
        mono = min(rem, key=mono_sort_key)
        coeff = rem[mono]
        exps = dict(mono)
        factor = []
        for var, e in lq.items():
            have = exps.get(var, 0)
            if have < e:
                raise ValueError("not divisible")
            factor.append((var, have - e))
        for var, e in exps.items():
            if var not in lq:
                factor.append((var, e))
        fac_mono = tuple(sorted(((v, e) for v, e in factor if e), key=lambda x: x[0].sort_key()))
        c = coeff / lq_coeff
        quot[fac_mono] = quot.get(fac_mono, Fraction(0)) + c
        for mq, cq in qterms:
            target = _mono_mul(fac_mono, mq)
            acc = rem.get(target, 0) - c * cq
            if acc:
                rem[target] = acc
            else:
                rem.pop(target, None)
    return MultiPoly(quot)


def div_monic_linear(p: MultiPoly, va: Variable, rest: MultiPoly) -> MultiPoly:
    """Exact division of p by (va - rest), with rest free of va.

    Synthetic division in va; linear in the number of terms, which
    matters when dividing large determinants by Vandermonde factors.
    """
    if va in rest.variables():
        raise ValueError("rest must not involve the division variable")
    layers: dict[int, dict[Monomial, Fraction]] = {}
    for mono, coeff in p._terms.items():
        k = 0
        bare = []
        for var, e in mono:
            if var == va:
                k = e
            else:
                bare.append((var, e))
        layers.setdefault(k, {})[tuple(bare)] = coeff
    if not layers:
        return MultiPoly.zero()
    rest_terms = list(rest._terms.items())
    quot: dict[Monomial, Fraction] = {}
    carry: dict[Monomial, Fraction] = {}
    for k in range(max(layers), 0, -1):
        level = dict(layers.get(k, {}))
        for mono, coeff in carry.items():
            acc = level.get(mono, 0) + coeff
            if acc:
                level[mono] = acc
            else:
                level.pop(mono, None)
        # level is the coefficient of va^(k-1) in the quotient
        va_part = ((va, k - 1),) if k > 1 else ()
        for mono, coeff in level.items():
            full = _mono_mul(va_part, mono)
            acc = quot.get(full, 0) + coeff
            if acc:
                quot[full] = acc
            else:
                quot.pop(full, None)
        carry = {}
        for mono, coeff in level.items():
            for rmono, rcoeff in rest_terms:
                target = _mono_mul(mono, rmono)
                acc = carry.get(target, 0) + coeff * rcoeff
                if acc:
                    carry[target] = acc
                else:
                    del carry[target]
    residue = dict(layers.get(0, {}))
    for mono, coeff in carry.items():
        acc = residue.get(mono, 0) + coeff
        if acc:
            residue[mono] = acc
        else:
            residue.pop(mono, None)
    if residue:
        raise ValueError("not divisible")
    return MultiPoly(quot)


def div_linear_difference(p: MultiPoly, va: Variable, vb: Variable) -> MultiPoly:
    """Exact division of p by (va - vb)."""
    if va == vb:
        raise ValueError("divisor (v - v) is zero")
    return div_monic_linear(p, va, MultiPoly.variable(vb))


class PolyMatrix:
    """Rectangular matrix of MultiPoly entries, immutable after construction."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Sequence[Sequence[MultiPoly | Scalar]]):
        rows = [tuple(MultiPoly._wrap(e) for e in row) for row in entries]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        if rows and width == 0:
            raise ValueError("matrix needs at least one column")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_entries", tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        one, zero = MultiPoly.one(), MultiPoly.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, key: tuple[int, int]) -> MultiPoly:
        i, j = key
        return self._entries[i][j]

    def entry_rows(self) -> tuple[tuple[MultiPoly, ...], ...]:
        return self._entries

    def det(self) -> MultiPoly:
        """Exact determinant.

        Cofactor expansion for n <= 4, fraction-free (Bareiss)
        elimination above; results are identical.
        """
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n <= 4:
            return _det_cofactor([list(r) for r in self._entries])
        return _det_bareiss([list(r) for r in self._entries])


def _det_cofactor(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    if n == 0:
        return MultiPoly.one()
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = MultiPoly.zero()
    sign = 1
    for j in range(n):
        if m[0][j].is_zero():
            sign = -sign
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
        piece = m[0][j] * _det_cofactor(minor)
        total = total + (piece if sign > 0 else -piece)
        sign = -sign
    return total


def _det_bareiss(m: list[list[MultiPoly]]) -> MultiPoly:
    n = len(m)
    sign = 1
    prev = MultiPoly.one()
    for k in range(n - 1):
        pivot_row = k
        while pivot_row < n and m[pivot_row][k].is_zero():
            pivot_row += 1
        if pivot_row == n:
            return MultiPoly.zero()
        if pivot_row != k:
            m[pivot_row], m[k] = m[k], m[pivot_row]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
            m[i][k] = MultiPoly.zero()
        prev = pivot
    result = m[n - 1][n - 1]
    return result if sign > 0 else -result


def det_rows_with_distinct_variables(
    rows: Sequence[Sequence[MultiPoly]],
) -> MultiPoly:
    """Determinant via Laplace expansion with memoization over column sets.

    Intended for matrices whose row i only involves one variable (the
    argument z_i of a Schur determinant); it avoids Bareiss divisions.
    Results agree with PolyMatrix.det on any square matrix.
    """
    n = len(rows)
    if n == 0:
        return MultiPoly.one()
    if any(len(r) != n for r in rows):
        raise ValueError("non-square matrix")
    partial: dict[int, MultiPoly] = {0: MultiPoly.one()}
    for i in range(n):
        nxt: dict[int, MultiPoly] = {}
        for mask, acc in partial.items():
            if acc.is_zero():
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = rows[i][j]
                if entry.is_zero():
                    continue
                # parity of inversions added: used columns above j
                inversions = bin(mask >> (j + 1)).count("1")
                piece = acc * entry
                if inversions & 1:
                    piece = -piece
                key = mask | bit
                prev_val = nxt.get(key)
                nxt[key] = piece if prev_val is None else prev_val + piece
        partial = nxt
    return partial.get((1 << n) - 1, MultiPoly.zero())


def rank_over_q(matrix: Sequence[Sequence[Scalar]]) -> int:
    """Exact rank of a rational matrix via Gaussian elimination."""
    rows = [[_coerce_coeff(e) for e in row] for row in matrix]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < width:
        pivot = None
        for i in range(rank, nrows):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, nrows):
            if rows[i][col]:
                factor = rows[i][col] / pv
                ri, rr = rows[i], rows[rank]
                for j in range(col, width):
                    ri[j] -= factor * rr[j]
        rank += 1
        col += 1
    return rank
