"""Cochain complexes attached to a left-symmetric algebroid.

Two complexes live here.  The representation complex consists of
E-valued cochains that are alternating and function-linear in all slots
but the last (which is also function-linear); its differential combines
the two actions of a representation with product insertions.  The
deformation complex consists of multiderivations: alternating in their
leading slots, function-linear there, and differentiating through a
vector-field-valued symbol in the last slot.

Over a zero-dimensional base both complexes are finite dimensional and
exact rational linear algebra computes cocycle, coboundary and
cohomology dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product as iter_product
from typing import Sequence

from .constructions import check_representation_lsa
from .core import (
    LSAlgebroid,
    Representation,
    Section,
    anchor_of_section,
    frame_commutator,
    rep_mu_frame,
    rep_rho_frame,
    rep_rho_section,
    section_mult,
    sort_with_sign,
)
from .errors import (
    ArityError,
    DegreeError,
    DimensionMismatch,
    NotARepresentation,
    NotPointCase,
)
from .polyring import (
    Poly,
    VectorField,
    rational_kernel_and_rank,
    vf_bracket,
)


class RepCochain:
    """E-valued cochain: alternating in all slots except the last, and
    function-linear in every slot.

    Components are stored against a strictly increasing leading index
    tuple plus a free last index; ``degree`` counts all arguments.
    """

    __slots__ = ("coords", "rank", "s", "degree", "comps")

    def __init__(self, coords, rank: int, s: int, degree: int, comps: dict):
        if degree < 1:
            raise DegreeError("cochain degree must be at least 1")
        coords = tuple(coords)
        clean = {}
        for key, value in comps.items():
            lead, last = tuple(key[0]), key[1]
            if len(lead) != degree - 1:
                raise DimensionMismatch(f"leading tuple {lead} has wrong length")
            if list(lead) != sorted(set(lead)):
                raise DimensionMismatch(
                    f"leading tuple {lead} must be strictly increasing")
            if any(not 0 <= i < rank for i in (*lead, last)):
                raise DimensionMismatch("cochain index out of range")
            if not isinstance(value, Section):
                value = Section(coords, value)
            if value.rank != s:
                raise DimensionMismatch("cochain value has wrong rank")
            if not value.is_zero():
                clean[(lead, last)] = value
        self.coords = coords
        self.rank = rank
        self.s = s
        self.degree = degree
        self.comps = clean

    @classmethod
    def zero(cls, coords, rank: int, s: int, degree: int) -> "RepCochain":
        return cls(coords, rank, s, degree, {})

    def component(self, lead: Sequence[int], last: int) -> Section:
        key, sign = sort_with_sign(lead)
        if sign == 0:
            return Section.zero(self.coords, self.s)
        value = self.comps.get((key, last))
        if value is None:
            return Section.zero(self.coords, self.s)
        return value if sign == 1 else -value

    def evaluate(self, sections: Sequence[Section]) -> Section:
        """Multilinear evaluation on arbitrary sections."""
        if len(sections) != self.degree:
            raise ArityError(
                f"degree {self.degree} cochain applied to {len(sections)} "
                f"sections")
        total = Section.zero(self.coords, self.s)
        last = sections[-1]
        lead = sections[:-1]
        for idx in iter_product(range(self.rank), repeat=self.degree - 1):
            coeff = Poly.constant(1, self.coords)
            for sec, i in zip(lead, idx):
                coeff = coeff * sec.components[i]
                if coeff.is_zero():
                    break
            if coeff.is_zero():
                continue
            for j in range(self.rank):
                gj = last.components[j]
                if gj.is_zero():
                    continue
                value = self.component(idx, j)
                if not value.is_zero():
                    total = total + value.scale(coeff * gj)
        return total

    def _binary(self, other, op):
        if (self.coords, self.rank, self.s, self.degree) != \
                (other.coords, other.rank, other.s, other.degree):
            raise DimensionMismatch("cochain shape mismatch")
        comps = dict(self.comps)
        for key, value in other.comps.items():
            base = comps.get(key, Section.zero(self.coords, self.s))
            acc = op(base, value)
            if acc.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = acc
        return RepCochain(self.coords, self.rank, self.s, self.degree, comps)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def scale(self, factor) -> "RepCochain":
        return RepCochain(self.coords, self.rank, self.s, self.degree,
                          {k: v.scale(factor) for k, v in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, RepCochain):
            return NotImplemented
        return (self.coords, self.rank, self.s, self.degree, self.comps) == \
            (other.coords, other.rank, other.s, other.degree, other.comps)

    def __hash__(self):
        return hash((self.coords, self.rank, self.s, self.degree,
                     frozenset(self.comps.items())))


def rep_d(alg: LSAlgebroid, rep: Representation, cochain: RepCochain,
          check: bool = True) -> RepCochain:
    """Differential of the representation complex.

    Combines the left action on omitted arguments, the right action on
    the last argument, insertions of the product into the last slot, and
    insertions of the commutator bracket into the leading slots.
    """
    if check and not check_representation_lsa(alg, rep):
        raise NotARepresentation("(rho, mu) fails the representation identities")
    if cochain.rank != alg.rank or cochain.coords != alg.coords:
        raise DimensionMismatch("cochain does not live on this algebroid")
    n = cochain.degree
    comps = {}
    for lead in combinations(range(alg.rank), n):
        for last in range(alg.rank):
            total = Section.zero(alg.coords, rep.s)
            for a, i_a in enumerate(lead):
                sign = 1 if a % 2 == 0 else -1
                rest = lead[:a] + lead[a + 1:]
                term = rep_rho_frame(alg, rep, i_a,
                                     cochain.component(rest, last))
                term = term + rep_mu_frame(rep, last,
                                           cochain.component(rest, i_a))
                inserted = Section.zero(alg.coords, rep.s)
                for k, comp in enumerate(alg.c[i_a][last].components):
                    if not comp.is_zero():
                        inserted = inserted \
                            + cochain.component(rest, k).scale(comp)
                term = term - inserted
                total = total + term.scale(sign)
            for a, b in combinations(range(n), 2):
                sign = 1 if (a + b) % 2 == 0 else -1
                rest = tuple(lead[p] for p in range(n) if p not in (a, b))
                bracket = frame_commutator(alg, lead[a], lead[b])
                term = Section.zero(alg.coords, rep.s)
                for k, comp in enumerate(bracket.components):
                    if not comp.is_zero():
                        term = term + cochain.component((k,) + rest,
                                                        last).scale(comp)
                total = total + term.scale(sign)
            if not total.is_zero():
                comps[(lead, last)] = total
    return RepCochain(alg.coords, alg.rank, rep.s, n + 1, comps)


def rep_d0(alg: LSAlgebroid, rep: Representation, element: Section) \
        -> RepCochain:
    """Differential of a degree-zero element: x maps to mu(x)e - rho(x)e."""
    if element.rank != rep.s:
        raise DimensionMismatch("element has wrong rank")
    comps = {}
    for j in range(alg.rank):
        value = rep_mu_frame(rep, j, element) \
            - rep_rho_frame(alg, rep, j, element)
        if not value.is_zero():
            comps[((), j)] = value
    return RepCochain(alg.coords, alg.rank, rep.s, 1, comps)


def check_c0(alg: LSAlgebroid, rep: Representation, element: Section) -> bool:
    """Membership in the degree-zero space: the curvature-style defect
    rho(x)rho(y)e - rho(x.y)e vanishes on all frame pairs."""
    for i in range(alg.rank):
        for j in range(alg.rank):
            lhs = rep_rho_frame(alg, rep, i,
                                rep_rho_frame(alg, rep, j, element))
            rhs = rep_rho_section(alg, rep, alg.c[i][j], element)
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Multiderivations and the deformation differential
# ---------------------------------------------------------------------------

class MultiDerivation:
    """Multilinear operator on sections of the bundle, alternating and
    function-linear in its leading slots and a derivation in the last
    slot through a vector-field-valued symbol."""

    __slots__ = ("coords", "rank", "degree", "values", "symbols")

    def __init__(self, coords, rank: int, degree: int, values: dict,
                 symbols: dict):
        if degree < 1:
            raise DegreeError("multiderivation degree must be at least 1")
        coords = tuple(coords)
        clean_values = {}
        for key, value in values.items():
            lead, last = tuple(key[0]), key[1]
            if len(lead) != degree - 1:
                raise DimensionMismatch(f"leading tuple {lead} has wrong length")
            if list(lead) != sorted(set(lead)):
                raise DimensionMismatch(
                    f"leading tuple {lead} must be strictly increasing")
            if not isinstance(value, Section):
                value = Section(coords, value)
            if value.rank != rank:
                raise DimensionMismatch("value has wrong rank")
            if not value.is_zero():
                clean_values[(lead, last)] = value
        clean_symbols = {}
        for key, field in symbols.items():
            key = tuple(key)
            if len(key) != degree - 1:
                raise DimensionMismatch(f"symbol tuple {key} has wrong length")
            if list(key) != sorted(set(key)):
                raise DimensionMismatch(
                    f"symbol tuple {key} must be strictly increasing")
            if not isinstance(field, VectorField):
                field = VectorField(coords, field)
            if not field.is_zero():
                clean_symbols[key] = field
        self.coords = coords
        self.rank = rank
        self.degree = degree
        self.values = clean_values
        self.symbols = clean_symbols

    @classmethod
    def zero(cls, coords, rank: int, degree: int) -> "MultiDerivation":
        return cls(coords, rank, degree, {}, {})

    @classmethod
    def from_endomorphism(cls, alg: LSAlgebroid, endo) -> "MultiDerivation":
        """Degree-1 multiderivation with zero symbol (a bundle map)."""
        values = {((), j): Section(alg.coords, endo.column(j))
                  for j in range(alg.rank)}
        return cls(alg.coords, alg.rank, 1, values, {})

    def value(self, lead: Sequence[int], last: int) -> Section:
        key, sign = sort_with_sign(lead)
        if sign == 0:
            return Section.zero(self.coords, self.rank)
        stored = self.values.get((key, last))
        if stored is None:
            return Section.zero(self.coords, self.rank)
        return stored if sign == 1 else -stored

    def symbol(self, lead: Sequence[int]) -> VectorField:
        key, sign = sort_with_sign(lead)
        if sign == 0:
            return VectorField.zero(self.coords)
        stored = self.symbols.get(key)
        if stored is None:
            return VectorField.zero(self.coords)
        return stored if sign == 1 else -stored

    def evaluate_last(self, lead: Sequence[int], last: Section) -> Section:
        """Evaluate with frame leading slots and an arbitrary last slot
        (function-linear part plus the symbol derivation)."""
        total = Section.zero(self.coords, self.rank)
        field = self.symbol(lead)
        for j, gj in enumerate(last.components):
            if gj.is_zero():
                continue
            total = total + self.value(lead, j).scale(gj)
            derived = field.apply(gj)
            if not derived.is_zero():
                comps = [Poly.zero(self.coords)] * self.rank
                comps[j] = derived
                total = total + Section(self.coords, comps)
        return total

    def evaluate(self, sections: Sequence[Section]) -> Section:
        """Full evaluation: leading slots expand multilinearly, the last
        slot through the derivation rule."""
        if len(sections) != self.degree:
            raise ArityError(
                f"degree {self.degree} multiderivation applied to "
                f"{len(sections)} sections")
        total = Section.zero(self.coords, self.rank)
        lead = sections[:-1]
        last = sections[-1]
        for idx in iter_product(range(self.rank), repeat=self.degree - 1):
            coeff = Poly.constant(1, self.coords)
            for sec, i in zip(lead, idx):
                coeff = coeff * sec.components[i]
                if coeff.is_zero():
                    break
            if coeff.is_zero():
                continue
            total = total + self.evaluate_last(idx, last).scale(coeff)
        return total

    def _binary(self, other, op, fop):
        if (self.coords, self.rank, self.degree) != \
                (other.coords, other.rank, other.degree):
            raise DimensionMismatch("multiderivation shape mismatch")
        values = dict(self.values)
        for key, value in other.values.items():
            base = values.get(key, Section.zero(self.coords, self.rank))
            acc = op(base, value)
            if acc.is_zero():
                values.pop(key, None)
            else:
                values[key] = acc
        symbols = dict(self.symbols)
        for key, field in other.symbols.items():
            base = symbols.get(key, VectorField.zero(self.coords))
            acc = fop(base, field)
            if acc.is_zero():
                symbols.pop(key, None)
            else:
                symbols[key] = acc
        return MultiDerivation(self.coords, self.rank, self.degree,
                               values, symbols)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b, lambda a, b: a - b)

    def scale(self, factor) -> "MultiDerivation":
        return MultiDerivation(
            self.coords, self.rank, self.degree,
            {k: v.scale(factor) for k, v in self.values.items()},
            {k: f.scale(factor) for k, f in self.symbols.items()})

    def is_zero(self) -> bool:
        return not self.values and not self.symbols

    def __eq__(self, other):
        if not isinstance(other, MultiDerivation):
            return NotImplemented
        return (self.coords, self.rank, self.degree, self.values,
                self.symbols) == (other.coords, other.rank, other.degree,
                                  other.values, other.symbols)

    def __hash__(self):
        return hash((self.coords, self.rank, self.degree,
                     frozenset(self.values.items()),
                     frozenset(self.symbols.items())))


def def_d(alg: LSAlgebroid, deriv: MultiDerivation) -> MultiDerivation:
    """Differential of the deformation complex.

    Values come from the four-sum formula (products on omitted
    arguments, product insertions into the last slot, bracket insertions
    into the leading slots); the symbol of the output combines
    vector-field brackets with the anchor applied to rotated values.
    """
    if deriv.rank != alg.rank or deriv.coords != alg.coords:
        raise DimensionMismatch("multiderivation does not live on this bundle")
    n = deriv.degree
    values = {}
    symbols = {}
    for lead in combinations(range(alg.rank), n):
        for last in range(alg.rank):
            total = Section.zero(alg.coords, alg.rank)
            for a, i_a in enumerate(lead):
                sign = 1 if a % 2 == 0 else -1
                rest = lead[:a] + lead[a + 1:]
                term = section_mult(alg, alg.frame(i_a),
                                    deriv.value(rest, last))
                term = term + section_mult(alg, deriv.value(rest, i_a),
                                           alg.frame(last))
                term = term - deriv.evaluate_last(rest, alg.c[i_a][last])
                total = total + term.scale(sign)
            for a, b in combinations(range(n), 2):
                sign = 1 if (a + b) % 2 == 0 else -1
                rest = tuple(lead[p] for p in range(n) if p not in (a, b))
                bracket = frame_commutator(alg, lead[a], lead[b])
                term = Section.zero(alg.coords, alg.rank)
                for k, comp in enumerate(bracket.components):
                    if not comp.is_zero():
                        term = term + deriv.value((k,) + rest,
                                                  last).scale(comp)
                total = total + term.scale(sign)
            if not total.is_zero():
                values[(lead, last)] = total

        field = VectorField.zero(alg.coords)
        for a, i_a in enumerate(lead):
            sign = 1 if a % 2 == 0 else -1
            rest = lead[:a] + lead[a + 1:]
            part = vf_bracket(alg.anchor[i_a], deriv.symbol(rest))
            part = part + anchor_of_section(alg, deriv.value(rest, i_a))
            field = field + part.scale(Poly.constant(sign, alg.coords))
        for a, b in combinations(range(n), 2):
            sign = 1 if (a + b) % 2 == 0 else -1
            rest = tuple(lead[p] for p in range(n) if p not in (a, b))
            bracket = frame_commutator(alg, lead[a], lead[b])
            part = VectorField.zero(alg.coords)
            for k, comp in enumerate(bracket.components):
                if not comp.is_zero():
                    part = part + deriv.symbol((k,) + rest).scale(comp)
            field = field + part.scale(Poly.constant(sign, alg.coords))
        if not field.is_zero():
            symbols[lead] = field
    return MultiDerivation(alg.coords, alg.rank, n + 1, values, symbols)


def evaluate_on_sections(cochain, sections: Sequence[Section]) -> Section:
    """Evaluate a representation cochain or a multiderivation on
    arbitrary sections."""
    if isinstance(cochain, (RepCochain, MultiDerivation)):
        return cochain.evaluate(sections)
    raise TypeError(f"cannot evaluate {type(cochain).__name__}")


# ---------------------------------------------------------------------------
# Point-case cohomology dimensions
# ---------------------------------------------------------------------------

@dataclass
class DegreeDims:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int


@dataclass
class PointCohomology:
    c0_dim: int
    c0_closed_dim: int
    degrees: list[DegreeDims]


def cochain_basis(rank: int, s: int, degree: int) \
        -> list[tuple[tuple[int, ...], int, int]]:
    """Basis keys (leading tuple, last index, value index) of the
    degree-``degree`` cochain space."""
    return [(lead, last, m)
            for lead in combinations(range(rank), degree - 1)
            for last in range(rank) for m in range(s)]


def assemble_point_differential(alg: LSAlgebroid, rep: Representation,
                                degree: int) \
        -> tuple[list[list[Fraction]], list, list]:
    """Rational matrix of the representation differential from degree
    ``degree`` to ``degree`` + 1 over a point base, with its bases."""
    if not alg.is_point():
        raise NotPointCase("dense assembly requires a point base")
    domain = cochain_basis(alg.rank, rep.s, degree)
    codomain = cochain_basis(alg.rank, rep.s, degree + 1)
    index = {key: pos for pos, key in enumerate(codomain)}
    matrix = [[Fraction(0)] * len(domain) for _ in codomain]
    for col, (lead, last, m) in enumerate(domain):
        unit = Section((), [1 if p == m else 0 for p in range(rep.s)])
        cochain = RepCochain((), alg.rank, rep.s, degree, {(lead, last): unit})
        image = rep_d(alg, rep, cochain, check=False)
        for (lead2, last2), value in image.comps.items():
            for m2, comp in enumerate(value.components):
                coeff = comp.constant_value()
                if coeff:
                    matrix[index[(lead2, last2, m2)]][col] = coeff
    return matrix, domain, codomain


def _c0_condition_matrix(alg: LSAlgebroid, rep: Representation) \
        -> list[list[Fraction]]:
    rows = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            images = []
            for m in range(rep.s):
                unit = Section((), [1 if p == m else 0 for p in range(rep.s)])
                lhs = rep_rho_frame(alg, rep, i,
                                    rep_rho_frame(alg, rep, j, unit))
                rhs = rep_rho_section(alg, rep, alg.c[i][j], unit)
                defect = lhs - rhs
                images.append([comp.constant_value()
                               for comp in defect.components])
            # one linear condition per defect component
            for comp in range(rep.s):
                rows.append([images[m][comp] for m in range(rep.s)])
    return rows


def point_cohomology_dims(alg: LSAlgebroid, rep: Representation,
                          n_max: int, check: bool = True) -> PointCohomology:
    """Cocycle, coboundary and cohomology dimensions in degrees 1..n_max
    over a point base, via exact rational elimination.

    The degree-zero space is the subspace cut out by the curvature-style
    membership condition; both its dimension and the dimension of its
    kernel under the degree-zero differential are reported.
    """
    if not alg.is_point():
        raise NotPointCase("cohomology dimensions require a point base")
    if check and not check_representation_lsa(alg, rep):
        raise NotARepresentation("(rho, mu) fails the representation identities")

    s = rep.s
    # degree-0 subspace
    condition = _c0_condition_matrix(alg, rep)
    if condition:
        _, c0_basis = rational_kernel_and_rank(condition)
    else:
        c0_basis = [tuple(Fraction(1 if p == m else 0) for p in range(s))
                    for m in range(s)]
    c0_dim = len(c0_basis)

    # degree-0 differential restricted to the subspace
    d0_cols = []
    for vec in c0_basis:
        element = Section((), list(vec))
        image = rep_d0(alg, rep, element)
        col = []
        for (lead, last, m) in cochain_basis(alg.rank, s, 1):
            col.append(image.component(lead, last).components[m]
                       .constant_value())
        d0_cols.append(col)
    if d0_cols:
        d0_matrix = [[d0_cols[c][r] for c in range(len(d0_cols))]
                     for r in range(len(d0_cols[0]))]
        d0_rank, d0_kernel = rational_kernel_and_rank(d0_matrix)
    else:
        d0_rank, d0_kernel = 0, []
    c0_closed_dim = len(d0_kernel)

    degrees = []
    previous_rank = d0_rank
    for k in range(1, n_max + 1):
        matrix, domain, _ = assemble_point_differential(alg, rep, k)
        dim_c = len(domain)
        if dim_c == 0:
            degrees.append(DegreeDims(k, 0, 0, 0, 0))
            previous_rank = 0
            continue
        rank, kernel = rational_kernel_and_rank(matrix, cols=dim_c)
        dim_z = len(kernel)
        dim_b = previous_rank
        degrees.append(DegreeDims(k, dim_c, dim_z, dim_b, dim_z - dim_b))
        previous_rank = rank
    return PointCohomology(c0_dim, c0_closed_dim, degrees)
