"""Exact-arithmetic kernel.

Rational coefficients, sparse multivariate polynomials over declared
coordinates, polynomial vector fields and matrices, rational linear
algebra, and a recursive-descent parser for the polynomial expression
grammar:

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nonneg-int)?
    base     := rational | ident | '(' expr ')'
    rational := int ('/' posint)?

Whitespace is insignificant; implicit multiplication is not allowed.
Everything here is immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    DegreeOverflow,
    DimensionMismatch,
    IndexOutOfRange,
    NonConstantDeterminant,
    NotSquare,
    ParseError,
    SingularMatrix,
    UnknownVariable,
)

Rational = Fraction

_DEGREE_LIMIT = 16


def degree_limit() -> int:
    return _DEGREE_LIMIT


def set_degree_limit(limit: int) -> None:
    """Set the global cap on the total degree of polynomial products."""
    global _DEGREE_LIMIT
    if limit < 1:
        raise ValueError("degree limit must be a positive integer")
    _DEGREE_LIMIT = limit


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational value, got {type(value).__name__}")


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    ``coords`` is the ordered tuple of coordinate names; ``terms`` maps
    exponent tuples (one entry per coordinate) to nonzero coefficients.
    The zero polynomial has no terms.  Instances are immutable.
    """

    __slots__ = ("coords", "terms", "_degree", "_hash")

    def __init__(self, coords: Sequence[str], terms: dict):
        coords = tuple(coords)
        clean = {}
        n = len(coords)
        for exps, coeff in terms.items():
            coeff = as_rational(coeff)
            if coeff == 0:
                continue
            exps = tuple(exps)
            if len(exps) != n:
                raise DimensionMismatch(
                    f"exponent vector {exps} has length {len(exps)}, "
                    f"expected {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            clean[exps] = coeff
        self.coords = coords
        self.terms = clean
        self._degree = max((sum(e) for e in clean), default=-1)
        self._hash = None

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, coords: Sequence[str]) -> "Poly":
        return cls(coords, {})

    @classmethod
    def constant(cls, value, coords: Sequence[str]) -> "Poly":
        value = as_rational(value)
        coords = tuple(coords)
        if value == 0:
            return cls(coords, {})
        return cls(coords, {(0,) * len(coords): value})

    @classmethod
    def variable(cls, name: str, coords: Sequence[str]) -> "Poly":
        coords = tuple(coords)
        if name not in coords:
            raise IndexOutOfRange(f"'{name}' is not among coordinates {coords}")
        exps = tuple(1 if c == name else 0 for c in coords)
        return cls(coords, {exps: Fraction(1)})

    # -- predicates and views ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self._degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"'{self}' is not constant")
        if not self.terms:
            return Fraction(0)
        return next(iter(self.terms.values()))

    @property
    def total_degree(self) -> int:
        return self._degree

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                      reverse=True)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.coords != self.coords:
                raise DimensionMismatch(
                    f"coordinate mismatch: {self.coords} vs {other.coords}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.coords)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, 0) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return Poly(self.coords, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.coords, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_rational(other)
            if other == 0:
                return Poly.zero(self.coords)
            return Poly(self.coords,
                        {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.coords)
        if self._degree + other._degree > _DEGREE_LIMIT:
            raise DegreeOverflow(
                f"product degree {self._degree + other._degree} exceeds "
                f"limit {_DEGREE_LIMIT}")
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(key, 0) + c1 * c2
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        return Poly(self.coords, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        if exponent > 0 and self._degree * exponent > _DEGREE_LIMIT:
            raise DegreeOverflow(
                f"power degree {self._degree * exponent} exceeds "
                f"limit {_DEGREE_LIMIT}")
        result = Poly.constant(1, self.coords)
        for _ in range(exponent):
            result = result * self
        return result

    # -- calculus -----------------------------------------------------

    def partial(self, index: int) -> "Poly":
        """Formal partial derivative along the coordinate at ``index``."""
        if not 0 <= index < len(self.coords):
            raise IndexOutOfRange(
                f"coordinate index {index} out of range for {self.coords}")
        terms: dict = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            acc = terms.get(key, 0) + coeff * e
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Poly(self.coords, terms)

    # -- coordinate surgery -------------------------------------------

    def extend(self, new_coords: Sequence[str]) -> "Poly":
        """Reinterpret over a larger coordinate tuple (matched by name)."""
        new_coords = tuple(new_coords)
        try:
            positions = [new_coords.index(c) for c in self.coords]
        except ValueError as exc:
            raise DimensionMismatch(
                f"{new_coords} does not contain all of {self.coords}") from exc
        m = len(new_coords)
        terms = {}
        for exps, coeff in self.terms.items():
            new_exps = [0] * m
            for pos, e in zip(positions, exps):
                new_exps[pos] = e
            terms[tuple(new_exps)] = coeff
        return Poly(new_coords, terms)

    def substitute(self, name: str, value) -> "Poly":
        """Evaluate one coordinate at a rational value; drops that
        coordinate from the result."""
        if name not in self.coords:
            raise IndexOutOfRange(f"'{name}' is not among {self.coords}")
        value = as_rational(value)
        idx = self.coords.index(name)
        rest = self.coords[:idx] + self.coords[idx + 1:]
        terms: dict = {}
        for exps, coeff in self.terms.items():
            key = exps[:idx] + exps[idx + 1:]
            acc = terms.get(key, 0) + coeff * value ** exps[idx]
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        return Poly(rest, terms)

    # -- comparison, hashing, printing --------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coords == other.coords and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coords, frozenset(self.terms.items())))
        return self._hash

    def _monomial_str(self, exps: tuple[int, ...]) -> str:
        parts = []
        for name, e in zip(self.coords, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for i, (exps, coeff) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(exps)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                # A leading negative must stay inside the grammar, which has
                # no unary minus: print the signed rational explicitly.
                if coeff < 0:
                    body = f"{-mag}*{mono}" if mono else str(-mag)
                pieces.append(body)
            else:
                pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"Poly({self!s})"


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if match.lastgroup != "ws":
            tokens.append((match.lastgroup, match.group(), pos))
        pos = match.end()
    return tokens


class _Cursor:
    def __init__(self, tokens, length):
        self.tokens = tokens
        self.idx = 0
        self.length = length

    def peek(self):
        if self.idx < len(self.tokens):
            return self.tokens[self.idx]
        return (None, "", self.length)

    def advance(self):
        tok = self.peek()
        self.idx += 1
        return tok


def parse_poly(text: str, coords: Sequence[str]) -> Poly:
    """Parse ``text`` against the polynomial grammar over ``coords``."""
    coords = tuple(coords)
    cursor = _Cursor(_tokenize(text), len(text))
    poly = _parse_expr(cursor, coords)
    kind, value, pos = cursor.peek()
    if kind is not None:
        raise ParseError(f"unexpected trailing input {value!r}", pos,
                         "'+', '-', '*', '^' or end of input")
    return poly


def _parse_expr(cursor: _Cursor, coords) -> Poly:
    poly = _parse_term(cursor, coords)
    while True:
        kind, value, _ = cursor.peek()
        if kind == "op" and value in "+-":
            cursor.advance()
            rhs = _parse_term(cursor, coords)
            poly = poly + rhs if value == "+" else poly - rhs
        else:
            return poly


def _parse_term(cursor: _Cursor, coords) -> Poly:
    poly = _parse_factor(cursor, coords)
    while True:
        kind, value, _ = cursor.peek()
        if kind == "op" and value == "*":
            cursor.advance()
            poly = poly * _parse_factor(cursor, coords)
        else:
            return poly


def _parse_factor(cursor: _Cursor, coords) -> Poly:
    base = _parse_base(cursor, coords)
    kind, value, _ = cursor.peek()
    if kind == "op" and value == "^":
        cursor.advance()
        kind, value, pos = cursor.advance()
        if kind != "int":
            raise ParseError("invalid exponent", pos, "a non-negative integer")
        base = base ** int(value)
    return base


def _parse_rational(cursor: _Cursor, negative: bool) -> Fraction:
    kind, value, pos = cursor.advance()
    if kind != "int":
        raise ParseError("invalid number", pos, "an integer")
    numerator = -int(value) if negative else int(value)
    kind, value, _ = cursor.peek()
    if kind == "op" and value == "/":
        cursor.advance()
        kind, value, pos = cursor.advance()
        if kind != "int" or int(value) == 0:
            raise ParseError("invalid denominator", pos, "a positive integer")
        return Fraction(numerator, int(value))
    return Fraction(numerator)


def _parse_base(cursor: _Cursor, coords) -> Poly:
    kind, value, pos = cursor.peek()
    if kind == "op" and value == "-":
        cursor.advance()
        return Poly.constant(_parse_rational(cursor, True), coords)
    if kind == "int":
        return Poly.constant(_parse_rational(cursor, False), coords)
    if kind == "ident":
        cursor.advance()
        if value not in coords:
            raise UnknownVariable(value, pos)
        return Poly.variable(value, coords)
    if kind == "op" and value == "(":
        cursor.advance()
        poly = _parse_expr(cursor, coords)
        kind, value, pos = cursor.advance()
        if kind != "op" or value != ")":
            raise ParseError("unbalanced parenthesis", pos, "')'")
        return poly
    raise ParseError(f"unexpected token {value!r}" if kind else "unexpected end of input",
                     pos, "a number, a variable, or '('")


# ---------------------------------------------------------------------------
# Vector fields
# ---------------------------------------------------------------------------

class VectorField:
    """Polynomial vector field: one coefficient per coordinate direction."""

    __slots__ = ("coords", "components")

    def __init__(self, coords: Sequence[str], components: Sequence[Poly]):
        coords = tuple(coords)
        components = tuple(components)
        if len(components) != len(coords):
            raise DimensionMismatch(
                f"{len(components)} components for {len(coords)} coordinates")
        for comp in components:
            if comp.coords != coords:
                raise DimensionMismatch(
                    f"component over {comp.coords}, expected {coords}")
        self.coords = coords
        self.components = components

    @classmethod
    def zero(cls, coords: Sequence[str]) -> "VectorField":
        coords = tuple(coords)
        return cls(coords, tuple(Poly.zero(coords) for _ in coords))

    def _check(self, other: "VectorField"):
        if self.coords != other.coords:
            raise DimensionMismatch(
                f"coordinate mismatch: {self.coords} vs {other.coords}")

    def apply(self, f: Poly) -> Poly:
        """Act on a function as a derivation."""
        if f.coords != self.coords:
            raise DimensionMismatch(
                f"function over {f.coords}, field over {self.coords}")
        result = Poly.zero(self.coords)
        for mu, comp in enumerate(self.components):
            if not comp.is_zero():
                result = result + comp * f.partial(mu)
        return result

    def bracket(self, other: "VectorField") -> "VectorField":
        """Commutator of derivations."""
        self._check(other)
        comps = tuple(self.apply(y) - other.apply(x)
                      for x, y in zip(self.components, other.components))
        return VectorField(self.coords, comps)

    def __add__(self, other):
        self._check(other)
        return VectorField(self.coords,
                           tuple(a + b for a, b in
                                 zip(self.components, other.components)))

    def __sub__(self, other):
        self._check(other)
        return VectorField(self.coords,
                           tuple(a - b for a, b in
                                 zip(self.components, other.components)))

    def __neg__(self):
        return VectorField(self.coords, tuple(-a for a in self.components))

    def scale(self, factor) -> "VectorField":
        return VectorField(self.coords,
                           tuple(comp * factor for comp in self.components))

    def is_zero(self) -> bool:
        return all(comp.is_zero() for comp in self.components)

    def extend(self, new_coords: Sequence[str]) -> "VectorField":
        """Lift to a larger coordinate tuple with zero new components."""
        new_coords = tuple(new_coords)
        comps = [Poly.zero(new_coords) for _ in new_coords]
        for name, comp in zip(self.coords, self.components):
            comps[new_coords.index(name)] = comp.extend(new_coords)
        return VectorField(new_coords, comps)

    def substitute(self, name: str, value) -> "VectorField":
        idx = self.coords.index(name)
        rest = self.coords[:idx] + self.coords[idx + 1:]
        comps = [comp.substitute(name, value)
                 for i, comp in enumerate(self.components) if i != idx]
        return VectorField(rest, comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.coords == other.coords and self.components == other.components

    def __hash__(self):
        return hash((self.coords, self.components))

    def __str__(self):
        parts = []
        for name, comp in zip(self.coords, self.components):
            if comp.is_zero():
                continue
            parts.append(f"({comp})*d/d{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({self!s})"


def partial_derivative(p: Poly, index: int) -> Poly:
    return p.partial(index)


def vf_apply(field: VectorField, f: Poly) -> Poly:
    return field.apply(f)


def vf_bracket(x: VectorField, y: VectorField) -> VectorField:
    return x.bracket(y)


# ---------------------------------------------------------------------------
# Polynomial matrices
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Dense matrix with polynomial entries over shared coordinates."""

    __slots__ = ("coords", "entries", "rows", "cols")

    def __init__(self, coords: Sequence[str], entries: Sequence[Sequence]):
        coords = tuple(coords)
        rows = []
        width = None
        for row in entries:
            prow = []
            for entry in row:
                if not isinstance(entry, Poly):
                    entry = Poly.constant(entry, coords)
                elif entry.coords != coords:
                    raise DimensionMismatch(
                        f"entry over {entry.coords}, expected {coords}")
                prow.append(entry)
            if width is None:
                width = len(prow)
            elif len(prow) != width:
                raise DimensionMismatch("ragged matrix rows")
            rows.append(tuple(prow))
        self.coords = coords
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = width if width is not None else 0

    @classmethod
    def identity(cls, n: int, coords: Sequence[str]) -> "PolyMatrix":
        return cls(coords, [[1 if i == j else 0 for j in range(n)]
                            for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, coords: Sequence[str]) -> "PolyMatrix":
        return cls(coords, [[0] * cols for _ in range(rows)])

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.coords != other.coords:
            raise DimensionMismatch("coordinate mismatch in matrix product")
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly.zero(self.coords)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.coords, out)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_shape(other)
        return PolyMatrix(self.coords,
                          [[a + b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_shape(other)
        return PolyMatrix(self.coords,
                          [[a - b for a, b in zip(r1, r2)]
                           for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix(self.coords,
                          [[-a for a in row] for row in self.entries])

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix(self.coords,
                          [[a * factor for a in row] for row in self.entries])

    def _check_shape(self, other: "PolyMatrix"):
        if self.coords != other.coords or self.rows != other.rows \
                or self.cols != other.cols:
            raise DimensionMismatch("matrix shape or coordinate mismatch")

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.coords,
                          [[self.entries[i][j] for i in range(self.rows)]
                           for j in range(self.cols)])

    def matvec(self, vector: Sequence[Poly]) -> tuple[Poly, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for {self.cols} columns")
        out = []
        for i in range(self.rows):
            acc = Poly.zero(self.coords)
            for j, v in enumerate(vector):
                acc = acc + self.entries[i][j] * v
            out.append(acc)
        return tuple(out)

    def column(self, j: int) -> tuple[Poly, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.entries for e in row)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def to_rational(self) -> list[list[Fraction]]:
        if not self.is_constant():
            raise NonConstantDeterminant("matrix has non-constant entries")
        return [[e.constant_value() for e in row] for row in self.entries]

    def det(self) -> Poly:
        if self.rows != self.cols:
            raise NotSquare(f"{self.rows}x{self.cols} matrix has no determinant")
        n = self.rows
        if n == 0:
            return Poly.constant(1, self.coords)
        if self.is_constant():
            value = _rational_det(self.to_rational())
            return Poly.constant(value, self.coords)
        return self._symbolic_det(tuple(range(n)), 0, {})

    def _symbolic_det(self, rows: tuple[int, ...], col: int, cache: dict) -> Poly:
        if not rows:
            return Poly.constant(1, self.coords)
        key = rows
        if key in cache:
            return cache[key]
        acc = Poly.zero(self.coords)
        for pos, i in enumerate(rows):
            entry = self.entries[i][col]
            if entry.is_zero():
                continue
            rest = rows[:pos] + rows[pos + 1:]
            minor = self._symbolic_det(rest, col + 1, cache)
            term = entry * minor
            acc = acc + term if pos % 2 == 0 else acc - term
        cache[key] = acc
        return acc

    def adjugate(self) -> "PolyMatrix":
        if self.rows != self.cols:
            raise NotSquare("adjugate requires a square matrix")
        n = self.rows
        cof = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                sub = [[self.entries[r][c] for c in range(n) if c != j]
                       for r in range(n) if r != i]
                minor = PolyMatrix(self.coords, sub).det() if n > 1 \
                    else Poly.constant(1, self.coords)
                cof[i][j] = minor if (i + j) % 2 == 0 else -minor
        return PolyMatrix(self.coords, cof).transpose()

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.coords == other.coords and self.entries == other.entries)

    def __hash__(self):
        return hash((self.coords, self.entries))

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.entries) + "]"

    def __repr__(self):
        return f"PolyMatrix({self!s})"


def matrix_inverse_adjugate(matrix: PolyMatrix) -> PolyMatrix:
    """Polynomial inverse via the adjugate.

    Refuses unless the determinant is a nonzero constant, so that the
    inverse stays inside the polynomial ring.
    """
    if matrix.rows != matrix.cols:
        raise NotSquare("inverse requires a square matrix")
    det = matrix.det()
    if det.is_zero():
        raise SingularMatrix("matrix determinant is zero")
    if not det.is_constant():
        raise NonConstantDeterminant(
            f"determinant {det} is not constant; polynomial inverse refused")
    scale = 1 / det.constant_value()
    return matrix.adjugate().scale(scale)


# ---------------------------------------------------------------------------
# Rational linear algebra
# ---------------------------------------------------------------------------

def _rational_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    mat = [list(map(Fraction, row)) for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            factor = mat[r][col] * inv
            if factor:
                for c in range(col, n):
                    mat[r][c] -= factor * mat[col][c]
    return det


def rational_kernel_and_rank(matrix: Sequence[Sequence],
                             cols: int | None = None) \
        -> tuple[int, list[tuple[Fraction, ...]]]:
    """Exact rank and kernel basis of a rational matrix.

    Returns ``(rank, basis)`` where each basis vector spans the null
    space; rank + len(basis) equals the number of columns.  Total on all
    inputs; pass ``cols`` for matrices with no rows.
    """
    rows = [list(map(as_rational, row)) for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else (cols or 0)
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix rows")

    mat = [row[:] for row in rows]
    pivot_cols: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if mat[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(col)
        r += 1
        if r == nrows:
            break

    rank = len(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row_idx, pcol in enumerate(pivot_cols):
            vec[pcol] = -mat[row_idx][free]
        basis.append(tuple(vec))
    return rank, basis


def find_constant_invertible_submatrix(matrix: PolyMatrix) \
        -> tuple[int, ...] | None:
    """Rows of a square submatrix with nonzero constant determinant.

    Searches row subsets of size ``matrix.cols`` in lexicographic order;
    returns None when no such subset exists.
    """
    size = matrix.cols
    for rows in combinations(range(matrix.rows), size):
        sub = PolyMatrix(matrix.coords,
                         [[matrix.entries[i][j] for j in range(size)]
                          for i in rows])
        det = sub.det()
        if det.is_constant() and not det.is_zero():
            return rows
    return None
