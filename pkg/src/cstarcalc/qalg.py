"""Graded algebras over the field of rational functions in T.

Supports the quantum-product side of the package: multiplication
matrices for a fixed even class, kernels of its powers, the stabilized
generalized zero eigenspace, T -> 0 initial subspaces, and closure
checks of a subspace under the deformed and undeformed products.

All linear algebra is exact.  Dimensions in practice are tiny (at most
a dozen), so the rational-function arithmetic is handwritten rather
than pulled from a CAS: canonical forms stay predictable and output is
byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from cstarcalc.findings import Finding

__all__ = [
    "AlgebraError",
    "FracT",
    "GradedAlgebra",
    "PolyT",
    "Subspace",
    "cup_ideal_check",
    "generalized_zero_eigenspace",
    "ini_specialize",
    "kernel_power",
    "mult_matrix",
    "parse_algebra",
    "serialize_algebra",
    "sh_rank",
    "stabilization_index",
    "validate_algebra",
]


class AlgebraError(ValueError):
    """Raised for malformed algebra descriptions."""


RationalLike = Union[int, Fraction]


def _fr(x: Any, what: str = "coefficient") -> Fraction:
    if isinstance(x, bool):
        raise AlgebraError(f"{what} must be rational, got a boolean")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraError(f"{what}: cannot parse rational {x!r}") from exc
    raise AlgebraError(f"{what} must be rational, got {type(x).__name__}")


class PolyT:
    """Polynomial in T with rational coefficients, sparse by exponent."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None) -> None:
        clean: dict[int, Fraction] = {}
        for e, c in (coeffs or {}).items():
            if not isinstance(e, int) or e < 0:
                raise AlgebraError(f"bad T exponent {e!r}")
            cf = _fr(c)
            if cf != 0:
                clean[e] = cf
        self.coeffs = clean

    @classmethod
    def const(cls, c: RationalLike) -> "PolyT":
        return cls({0: c})

    @classmethod
    def t_power(cls, e: int, c: RationalLike = 1) -> "PolyT":
        return cls({e: c})

    @classmethod
    def from_raw(cls, obj: Any) -> "PolyT":
        """Accept a bare rational or an {exponent: coefficient} mapping."""
        if isinstance(obj, PolyT):
            return obj
        if isinstance(obj, Mapping):
            return cls({int(e): _fr(c) for e, c in obj.items()})
        return cls.const(_fr(obj))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolyT) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "PolyT") -> "PolyT":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return PolyT(out)

    def __sub__(self, other: "PolyT") -> "PolyT":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) - c
        return PolyT(out)

    def __neg__(self) -> "PolyT":
        return PolyT({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: "PolyT") -> "PolyT":
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return PolyT(out)

    def scale(self, c: RationalLike) -> "PolyT":
        cf = Fraction(c)
        return PolyT({e: v * cf for e, v in self.coeffs.items()})

    def degree(self) -> int:
        """Degree in T; -1 for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else -1

    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def constant_term(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def leading_coeff(self) -> Fraction:
        return self.coeffs[max(self.coeffs)] if self.coeffs else Fraction(0)

    def shift_down(self, v: int) -> "PolyT":
        """Divide by T^v; requires valuation at least v."""
        if self.is_zero():
            return self
        if min(self.coeffs) < v:
            raise AlgebraError("polynomial not divisible by requested T power")
        return PolyT({e - v: c for e, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                t = "T" if e == 1 else f"T^{e}"
                body = t if abs(c) == 1 else f"{abs(c)}*{t}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"PolyT({self})"


def _poly_divmod(a: PolyT, b: PolyT) -> tuple[PolyT, PolyT]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q: dict[int, Fraction] = {}
    r = a
    db = b.degree()
    lb = b.leading_coeff()
    while not r.is_zero() and r.degree() >= db:
        e = r.degree() - db
        c = r.leading_coeff() / lb
        q[e] = q.get(e, Fraction(0)) + c
        r = r - b * PolyT.t_power(e, c)
    return PolyT(q), r


def _poly_gcd(a: PolyT, b: PolyT) -> PolyT:
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.scale(1 / a.leading_coeff())


class FracT:
    """Rational function in T, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyT, den: PolyT | None = None) -> None:
        den = den if den is not None else PolyT.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = PolyT()
            self.den = PolyT.const(1)
            return
        g = _poly_gcd(num, den)
        if not g.is_zero() and g != PolyT.const(1):
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        lc = den.leading_coeff()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def from_poly(cls, p: PolyT) -> "FracT":
        return cls(p)

    @classmethod
    def const(cls, c: RationalLike) -> "FracT":
        return cls(PolyT.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FracT)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "FracT") -> "FracT":
        return FracT(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "FracT") -> "FracT":
        return FracT(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "FracT":
        return FracT(-self.num, self.den)

    def __mul__(self, other: "FracT") -> "FracT":
        return FracT(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "FracT") -> "FracT":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return FracT(self.num * other.den, self.den * other.num)

    def valuation(self) -> int | None:
        """Order of vanishing at T = 0; None for the zero element."""
        nv = self.num.valuation()
        if nv is None:
            return None
        dv = self.den.valuation() or 0
        return nv - dv

    def t_limit(self) -> Fraction:
        """Value at T = 0; raises on a pole."""
        if self.is_zero():
            return Fraction(0)
        if self.den.constant_term() == 0:
            raise AlgebraError("pole at T = 0")
        return self.num.constant_term() / self.den.constant_term()

    def scale_t(self, v: int) -> "FracT":
        """Multiply by T^v (v may be negative)."""
        if v >= 0:
            return FracT(self.num * PolyT.t_power(v), self.den)
        return FracT(self.num, self.den * PolyT.t_power(-v))

    def __str__(self) -> str:
        if self.den == PolyT.const(1):
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if " " in num:
            num = f"({num})"
        if " " in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"FracT({self})"


_F0 = FracT.const(0)
_F1 = FracT.const(1)

Vector = tuple[FracT, ...]
Matrix = list[list[FracT]]


def _vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(u: Vector, c: FracT) -> Vector:
    return tuple(a * c for a in u)


def _vec_is_zero(u: Vector) -> bool:
    return all(a.is_zero() for a in u)


def _rref(rows: Sequence[Vector]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(work)):
            if not work[r][col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        inv = _F1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [
                    a - factor * b for a, b in zip(work[r], work[rank])
                ]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in work[:rank]], pivots


def _kernel_basis(matrix: Matrix) -> list[Vector]:
    """Basis of the right kernel, in free-column order."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows, pivots = _rref([tuple(r) for r in matrix])
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vector] = []
    for fc in free:
        vec = [_F0] * ncols
        vec[fc] = _F1
        for r, pc in zip(rows, pivots):
            vec[pc] = -r[fc]
        basis.append(tuple(vec))
    return basis


class Subspace:
    """A subspace of K^n held in reduced row echelon form."""

    def __init__(self, rows: Sequence[Vector], ncols: int) -> None:
        self.ncols = ncols
        reduced, pivots = _rref(rows)
        self.rows: tuple[Vector, ...] = tuple(reduced)
        self.pivots: tuple[int, ...] = tuple(pivots)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Vector], ncols: int) -> "Subspace":
        return cls(vectors, ncols)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Vector) -> bool:
        return _vec_is_zero(self.reduce(v))

    def reduce(self, v: Vector) -> Vector:
        out = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if not out[pc].is_zero():
                factor = out[pc]
                out = [a - factor * b for a, b in zip(out, row)]
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def cleared_rows(self) -> list[tuple[PolyT, ...]]:
        """Denominator-free basis rows with integer content 1.

        The canonical display form: each RREF row is scaled by the least
        common denominator of its entries and then by the reciprocal of
        the gcd of all integer coefficients.
        """
        out: list[tuple[PolyT, ...]] = []
        for row in self.rows:
            den = PolyT.const(1)
            for x in row:
                g = _poly_gcd(den, x.den)
                quotient, _ = _poly_divmod(x.den, g) if not g.is_zero() else (x.den, None)
                den = den * quotient
            polys = []
            for x in row:
                q, r = _poly_divmod(den, x.den)
                if not r.is_zero():
                    raise AssertionError("lcm computation failed")
                polys.append(x.num * q)
            fracs = [c for p in polys for c in p.coeffs.values()]
            if fracs:
                from math import gcd as igcd

                num_gcd = 0
                den_lcm = 1
                for f in fracs:
                    num_gcd = igcd(num_gcd, abs(f.numerator))
                    den_lcm = den_lcm * f.denominator // igcd(den_lcm, f.denominator)
                scale = Fraction(den_lcm, num_gcd if num_gcd else 1)
                polys = [p.scale(scale) for p in polys]
            out.append(tuple(polys))
        return out


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return [
        [
            sum((a[i][k] * b[k][j] for k in range(n)), _F0)
            for j in range(len(b[0]))
        ]
        for i in range(n)
    ]


@dataclass
class GradedAlgebra:
    """Finite-dimensional graded algebra over K with a T grading.

    ``basis`` lists (name, degree) pairs; ``products`` stores the full
    symmetric multiplication table as vectors of ``PolyT`` coefficients
    over the basis, keyed by index pairs (i, j) with i <= j.  The T
    variable itself carries degree ``t_degree``.
    """

    name: str
    t_degree: int
    basis: tuple[tuple[str, int], ...]
    unit: int
    products: dict[tuple[int, int], tuple[PolyT, ...]]
    classes: dict[str, tuple[PolyT, ...]] = field(default_factory=dict)
    presentation: str | None = None

    @classmethod
    def create(
        cls,
        name: str,
        t_degree: int,
        basis: Sequence[tuple[str, int]],
        unit: int,
        products: Mapping[tuple[int, int], Mapping[int, Any]],
        classes: Mapping[str, Sequence[Any]] | None = None,
        presentation: str | None = None,
    ) -> "GradedAlgebra":
        """Normalize a raw description (plain dicts and rationals)."""
        n = len(basis)
        table: dict[tuple[int, int], tuple[PolyT, ...]] = {}
        for (i, j), target in products.items():
            key = (min(i, j), max(i, j))
            vec = [PolyT() for _ in range(n)]
            for b_idx, poly in target.items():
                vec[b_idx] = PolyT.from_raw(poly)
            entry = tuple(vec)
            if key in table and table[key] != entry:
                raise AlgebraError(f"{name}: inconsistent product for pair {key}")
            table[key] = entry
        cls_map: dict[str, tuple[PolyT, ...]] = {}
        for cname, coords in (classes or {}).items():
            if len(coords) != n:
                raise AlgebraError(f"{name}: class {cname!r} has wrong length")
            cls_map[cname] = tuple(PolyT.from_raw(c) for c in coords)
        return cls(
            name=name,
            t_degree=t_degree,
            basis=tuple((str(b), int(d)) for b, d in basis),
            unit=unit,
            products=table,
            classes=cls_map,
            presentation=presentation,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_names(self) -> list[str]:
        return [b for b, _ in self.basis]

    def product(self, i: int, j: int) -> tuple[PolyT, ...]:
        key = (min(i, j), max(i, j))
        if key not in self.products:
            raise AlgebraError(
                f"{self.name}: product of basis elements {key} not defined"
            )
        return self.products[key]

    def class_vector(self, name: str) -> Vector:
        if name not in self.classes:
            raise KeyError(
                f"no class {name!r} in {self.name}; have {sorted(self.classes)}"
            )
        return tuple(FracT(p) for p in self.classes[name])

    def star(self, u: Vector, v: Vector) -> Vector:
        """Bilinear product of two coefficient vectors."""
        out = [_F0] * self.dim
        for i, ci in enumerate(u):
            if ci.is_zero():
                continue
            for j, cj in enumerate(v):
                if cj.is_zero():
                    continue
                for b, p in enumerate(self.product(i, j)):
                    if p:
                        out[b] = out[b] + ci * cj * FracT(p)
        return tuple(out)

    def cup(self, u: Vector, v: Vector) -> Vector:
        """Product with the T -> 0 structure constants.

        Coefficient vectors keep their T dependence; only the
        multiplication table is truncated to its classical part.
        """
        out = [_F0] * self.dim
        for i, ci in enumerate(u):
            if ci.is_zero():
                continue
            for j, cj in enumerate(v):
                if cj.is_zero():
                    continue
                for b, p in enumerate(self.product(i, j)):
                    c0 = p.constant_term()
                    if c0:
                        out[b] = out[b] + ci * cj * FracT.const(c0)
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        return tuple(_F1 if j == i else _F0 for j in range(self.dim))


def validate_algebra(a: GradedAlgebra) -> list[Finding]:
    out: list[Finding] = []
    names = a.basis_names()
    dup = sorted({n for n in names if names.count(n) > 1})
    out.append(
        Finding(
            "basis-names-unique",
            not dup,
            f"duplicated: {dup}" if dup else f"dimension {a.dim}",
        )
    )
    out.append(
        Finding(
            "t-degree-even",
            a.t_degree >= 0 and a.t_degree % 2 == 0,
            f"t_degree = {a.t_degree}",
        )
    )
    unit_ok = 0 <= a.unit < a.dim and a.basis[a.unit][1] == 0
    out.append(
        Finding(
            "unit-degree-zero",
            unit_ok,
            f"unit index {a.unit}"
            + ("" if unit_ok else " must name a degree-zero basis element"),
        )
    )

    missing = [
        (i, j)
        for i in range(a.dim)
        for j in range(i, a.dim)
        if (i, j) not in a.products
    ]
    out.append(
        Finding(
            "products-complete",
            not missing,
            f"missing pairs: {missing}" if missing else "full symmetric table",
        )
    )
    if missing:
        return out

    bad_unit = []
    for i in range(a.dim):
        expect = tuple(
            PolyT.const(1) if j == i else PolyT() for j in range(a.dim)
        )
        if a.product(a.unit, i) != expect:
            bad_unit.append(names[i])
    out.append(
        Finding(
            "unit-is-identity",
            not bad_unit,
            f"unit fails on: {bad_unit}" if bad_unit else "unit acts trivially",
        )
    )

    bad_grading = []
    for (i, j), vec in a.products.items():
        want = a.basis[i][1] + a.basis[j][1]
        for b, p in enumerate(vec):
            for e, c in p.coeffs.items():
                if a.basis[b][1] + a.t_degree * e != want:
                    bad_grading.append(f"{names[i]}*{names[j]} -> {names[b]} T^{e}")
    out.append(
        Finding(
            "grading-homogeneous",
            not bad_grading,
            f"inhomogeneous terms: {bad_grading}"
            if bad_grading
            else "all products homogeneous",
        )
    )

    bad_assoc = []
    for i in range(a.dim):
        ei = a.basis_vector(i)
        for j in range(a.dim):
            ej = a.basis_vector(j)
            ij = a.star(ei, ej)
            for k in range(a.dim):
                ek = a.basis_vector(k)
                left = a.star(ij, ek)
                right = a.star(ei, a.star(ej, ek))
                if left != right:
                    bad_assoc.append(f"({names[i]}*{names[j]})*{names[k]}")
    out.append(
        Finding(
            "associative",
            not bad_assoc,
            f"failures: {bad_assoc[:4]}" if bad_assoc else "checked all triples",
        )
    )

    bad_cls = [
        cname for cname, vec in a.classes.items() if len(vec) != a.dim
    ]
    out.append(
        Finding(
            "classes-well-formed",
            not bad_cls,
            f"wrong length: {bad_cls}" if bad_cls else f"{len(a.classes)} classes",
        )
    )
    return out


def _resolve_class(a: GradedAlgebra, cls: Union[str, Vector]) -> Vector:
    if isinstance(cls, str):
        return a.class_vector(cls)
    return tuple(cls)


def mult_matrix(a: GradedAlgebra, cls: Union[str, Vector]) -> Matrix:
    """Matrix of left multiplication by the class, columns = images."""
    v = _resolve_class(a, cls)
    cols = [a.star(v, a.basis_vector(j)) for j in range(a.dim)]
    return [[cols[j][i] for j in range(a.dim)] for i in range(a.dim)]


def kernel_power(a: GradedAlgebra, cls: Union[str, Vector], n: int) -> Subspace:
    """Kernel of the n-th power of multiplication by the class."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    if n == 0:
        return Subspace([], a.dim)
    m = mult_matrix(a, cls)
    p = m
    for _ in range(n - 1):
        p = _mat_mul(p, m)
    return Subspace(_kernel_basis(p), a.dim)


def stabilization_index(a: GradedAlgebra, cls: Union[str, Vector]) -> int:
    """Least n with ker of the n-th power equal to the (n+1)-st.

    The kernels grow strictly until they stabilize, so this needs at
    most dim steps.  Returns 0 when multiplication is injective.
    """
    prev = Subspace([], a.dim)
    for n in range(1, a.dim + 2):
        cur = kernel_power(a, cls, n)
        if cur.dim == prev.dim:
            return n - 1
        prev = cur
    raise AssertionError("kernel chain failed to stabilize")


def generalized_zero_eigenspace(a: GradedAlgebra, cls: Union[str, Vector]) -> Subspace:
    return kernel_power(a, cls, stabilization_index(a, cls))


def sh_rank(a: GradedAlgebra, cls: Union[str, Vector]) -> int:
    """Codimension of the generalized zero eigenspace."""
    return a.dim - generalized_zero_eigenspace(a, cls).dim


def ini_specialize(
    a: GradedAlgebra, space: Union[Subspace, Sequence[Vector]]
) -> list[tuple[Fraction, ...]]:
    """T -> 0 initial subspace of a subspace, rank preserved.

    Iteratively rescales each basis row to valuation zero, reads off the
    limit matrix, and replaces one row by any combination that vanished
    in the limit; each replacement strictly raises that row's valuation,
    so the loop terminates.  The result is the reduced basis of a
    rational subspace of the same dimension.
    """
    rows: list[Vector]
    if isinstance(space, Subspace):
        rows = [tuple(r) for r in space.rows]
        ncols = space.ncols
    else:
        rows = [tuple(r) for r in space]
        if not rows:
            return []
        ncols = len(rows[0])
    rows = [r for r in rows if not _vec_is_zero(r)]
    if not rows:
        return []

    max_deg = 0
    for r in rows:
        for x in r:
            max_deg = max(max_deg, x.num.degree(), x.den.degree())
    guard = len(rows) * (max_deg + 2) * (ncols + 2) + 8

    for _ in range(guard):
        normalized: list[Vector] = []
        for r in rows:
            vals = [x.valuation() for x in r if not x.is_zero()]
            v = min(vals)
            normalized.append(tuple(x.scale_t(-v) for x in r))
        rows = normalized
        limit = [[x.t_limit() for x in r] for r in rows]
        dep = _rational_dependency(limit)
        if dep is None:
            reduced, _ = _rref(
                [tuple(FracT.const(c) for c in row) for row in limit]
            )
            return [tuple(x.t_limit() for x in r) for r in reduced]
        target = max(i for i, c in enumerate(dep) if c != 0)
        combo = tuple(_F0 for _ in range(ncols))
        for i, c in enumerate(dep):
            if c != 0:
                combo = _vec_add(combo, _vec_scale(rows[i], FracT.const(c)))
        if _vec_is_zero(combo):
            raise AlgebraError("input rows are linearly dependent over K")
        rows[target] = combo
    raise AssertionError("initial-subspace iteration exceeded its bound")


def _rational_dependency(matrix: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero rational left-kernel vector of the row matrix, if any."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    work = [list(map(Fraction, row)) + [Fraction(0)] * nrows for row in matrix]
    for i in range(nrows):
        work[i][ncols + i] = Fraction(1)
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if work[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(nrows):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
    if rank == nrows:
        return None
    return work[rank][ncols:]


def cup_ideal_check(
    a: GradedAlgebra,
    space: Union[Subspace, Sequence[Vector]],
    use_initial: bool = False,
) -> list[Finding]:
    """Closure findings for a subspace under both products.

    Always reports whether the subspace is an ideal for the deformed
    product.  The second finding concerns the classical product: with
    ``use_initial`` the T -> 0 initial subspace is tested over the
    rationals, otherwise the subspace itself is tested with the
    truncated structure constants (T coefficients staying in the
    vectors), which is the sharper failure detector.
    """
    if isinstance(space, Subspace):
        sub = space
    else:
        vectors = [tuple(v) for v in space]
        sub = Subspace(vectors, a.dim)
    out: list[Finding] = []

    star_bad: list[str] = []
    for r, row in enumerate(sub.rows):
        for j in range(a.dim):
            w = a.star(row, a.basis_vector(j))
            if not sub.contains(w):
                star_bad.append(f"row {r} * {a.basis_names()[j]}")
    out.append(
        Finding(
            "star-ideal",
            not star_bad,
            f"escapes span: {star_bad[:3]}"
            if star_bad
            else f"closed under the deformed product ({sub.dim} rows)",
        )
    )

    if use_initial:
        ini_rows = ini_specialize(a, sub)
        ini_sub = Subspace(
            [tuple(FracT.const(c) for c in r) for r in ini_rows], a.dim
        )
        cup_bad: list[str] = []
        for r, row in enumerate(ini_sub.rows):
            for j in range(a.dim):
                w = a.cup(row, a.basis_vector(j))
                if not ini_sub.contains(w):
                    cup_bad.append(f"row {r} * {a.basis_names()[j]}")
        out.append(
            Finding(
                "ini-cup-ideal",
                not cup_bad,
                f"initial subspace escapes: {cup_bad[:3]}"
                if cup_bad
                else "initial subspace closed under the classical product",
            )
        )
    else:
        cup_bad = []
        for r, row in enumerate(sub.rows):
            for j in range(a.dim):
                w = a.cup(row, a.basis_vector(j))
                if not sub.contains(w):
                    cup_bad.append(f"row {r} * {a.basis_names()[j]}")
        out.append(
            Finding(
                "cup-ideal",
                not cup_bad,
                f"escapes span: {cup_bad[:3]}"
                if cup_bad
                else "closed under the classical product",
            )
        )
    return out


_ALGEBRA_KEYS = {
    "name",
    "t_degree",
    "basis",
    "unit",
    "products",
    "classes",
    "presentation",
}


def parse_algebra(source: Union[str, Mapping[str, Any]]) -> GradedAlgebra:
    """Build a ``GradedAlgebra`` from JSON text or an equivalent mapping."""
    if isinstance(source, str):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"invalid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, Mapping):
        raise AlgebraError("algebra description must be a JSON object")
    unknown = set(obj) - _ALGEBRA_KEYS
    if unknown:
        raise AlgebraError(f"unknown keys in algebra: {sorted(unknown)}")
    for key in ("name", "t_degree", "basis", "unit", "products"):
        if key not in obj:
            raise AlgebraError(f"missing key {key!r} in algebra")
    basis_raw = obj["basis"]
    if not isinstance(basis_raw, (list, tuple)) or not basis_raw:
        raise AlgebraError("basis must be a non-empty list")
    basis: list[tuple[str, int]] = []
    for b in basis_raw:
        if not isinstance(b, Mapping) or set(b) != {"name", "degree"}:
            raise AlgebraError(f"basis entry must have name and degree: {b!r}")
        basis.append((str(b["name"]), int(b["degree"])))
    index = {n: i for i, (n, _) in enumerate(basis)}
    unit_name = obj["unit"]
    if unit_name not in index:
        raise AlgebraError(f"unit {unit_name!r} is not a basis element")

    products: dict[tuple[int, int], dict[int, Any]] = {}
    raw_products = obj["products"]
    if not isinstance(raw_products, Mapping):
        raise AlgebraError("products must be an object")
    for key, terms in raw_products.items():
        parts = key.split("*")
        if len(parts) != 2 or parts[0] not in index or parts[1] not in index:
            raise AlgebraError(f"bad product key {key!r}")
        i, j = index[parts[0]], index[parts[1]]
        pair = (min(i, j), max(i, j))
        target: dict[int, Any] = {}
        for term in terms:
            if not isinstance(term, Mapping) or set(term) != {"basis", "poly"}:
                raise AlgebraError(f"bad product term in {key!r}: {term!r}")
            b_name = term["basis"]
            if b_name not in index:
                raise AlgebraError(f"unknown basis {b_name!r} in product {key!r}")
            poly = {int(e): _fr(c, f"product {key!r}") for e, c in term["poly"].items()}
            target[index[b_name]] = poly
        if pair in products and products[pair] != target:
            raise AlgebraError(f"conflicting entries for product pair {key!r}")
        products[pair] = target

    classes: dict[str, list[Any]] = {}
    for cname, coords in (obj.get("classes") or {}).items():
        if not isinstance(coords, (list, tuple)):
            raise AlgebraError(f"class {cname!r} must be a coordinate list")
        classes[str(cname)] = list(coords)

    return GradedAlgebra.create(
        name=str(obj["name"]),
        t_degree=int(obj["t_degree"]),
        basis=basis,
        unit=index[unit_name],
        products=products,
        classes=classes,
        presentation=obj.get("presentation"),
    )


def serialize_algebra(a: GradedAlgebra) -> dict[str, Any]:
    """Inverse of ``parse_algebra`` up to key order."""

    def poly_json(p: PolyT) -> dict[str, Union[int, str]]:
        return {
            str(e): (int(c) if c.denominator == 1 else str(c))
            for e, c in sorted(p.coeffs.items())
        }

    names = a.basis_names()
    out: dict[str, Any] = {
        "name": a.name,
        "t_degree": a.t_degree,
        "basis": [{"name": n, "degree": d} for n, d in a.basis],
        "unit": names[a.unit],
        "products": {},
        "classes": {},
    }
    if a.presentation is not None:
        out["presentation"] = a.presentation
    for (i, j), vec in sorted(a.products.items()):
        terms = [
            {"basis": names[b], "poly": poly_json(p)}
            for b, p in enumerate(vec)
            if not p.is_zero()
        ]
        out["products"][f"{names[i]}*{names[j]}"] = terms
    for cname in sorted(a.classes):
        out["classes"][cname] = [poly_json(p) for p in a.classes[cname]]
    return out
