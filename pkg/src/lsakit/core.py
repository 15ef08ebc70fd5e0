"""Central algebraic objects on trivial bundles.

Left-symmetric algebroids and Lie algebroids are stored through their
frame data: an r x r table of section products (or brackets) and one
anchor vector field per frame section.  A zero-dimensional base makes
every structure function a rational constant, so the same code covers
plain left-symmetric algebras.

Axioms are verified, never assumed: `check_left_symmetric` and
`check_lie_algebroid` return reports whose failure records print both
sides of every violated identity.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import (
    DimensionMismatch,
    InvalidDegree,
    NotLeftSymmetric,
    NotPointCase,
)
from .polyring import Poly, PolyMatrix, VectorField, vf_bracket
from .report import Report


class Section:
    """Section of a trivial bundle: one polynomial per frame element."""

    __slots__ = ("coords", "components")

    def __init__(self, coords: Sequence[str], components: Sequence[Poly]):
        coords = tuple(coords)
        comps = []
        for comp in components:
            if not isinstance(comp, Poly):
                comp = Poly.constant(comp, coords)
            elif comp.coords != coords:
                raise DimensionMismatch(
                    f"component over {comp.coords}, expected {coords}")
            comps.append(comp)
        self.coords = coords
        self.components = tuple(comps)

    @classmethod
    def zero(cls, coords: Sequence[str], rank: int) -> "Section":
        coords = tuple(coords)
        return cls(coords, [Poly.zero(coords)] * rank)

    @classmethod
    def unit(cls, coords: Sequence[str], rank: int, index: int) -> "Section":
        coords = tuple(coords)
        return cls(coords, [Poly.constant(1 if k == index else 0, coords)
                            for k in range(rank)])

    @property
    def rank(self) -> int:
        return len(self.components)

    def _check(self, other: "Section"):
        if self.coords != other.coords or self.rank != other.rank:
            raise DimensionMismatch("section shape mismatch")

    def __add__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(self.coords, [a + b for a, b in
                                     zip(self.components, other.components)])

    def __sub__(self, other: "Section") -> "Section":
        self._check(other)
        return Section(self.coords, [a - b for a, b in
                                     zip(self.components, other.components)])

    def __neg__(self) -> "Section":
        return Section(self.coords, [-a for a in self.components])

    def scale(self, factor) -> "Section":
        return Section(self.coords, [a * factor for a in self.components])

    def is_zero(self) -> bool:
        return all(comp.is_zero() for comp in self.components)

    def extend(self, new_coords: Sequence[str]) -> "Section":
        return Section(new_coords,
                       [comp.extend(new_coords) for comp in self.components])

    def substitute(self, name: str, value) -> "Section":
        return Section(tuple(c for c in self.coords if c != name),
                       [comp.substitute(name, value)
                        for comp in self.components])

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return self.coords == other.coords \
            and self.components == other.components

    def __hash__(self):
        return hash((self.coords, self.components))

    def __str__(self):
        parts = []
        for k, comp in enumerate(self.components, start=1):
            if comp.is_zero():
                continue
            if comp == 1:
                parts.append(f"e_{k}")
            else:
                parts.append(f"({comp})*e_{k}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"Section({self!s})"


def apply_endo(matrix: PolyMatrix, section: Section) -> Section:
    """Apply a bundle map (matrix acting on frame components)."""
    if matrix.cols != section.rank:
        raise DimensionMismatch(
            f"{matrix.rows}x{matrix.cols} matrix applied to rank "
            f"{section.rank} section")
    return Section(section.coords, matrix.matvec(section.components))


def _validate_frame_tables(coords, rank, table, anchor, what):
    coords = tuple(coords)
    if len(table) != rank or any(len(row) != rank for row in table):
        raise DimensionMismatch(f"{what} table must be {rank}x{rank}")
    out = []
    for row in table:
        new_row = []
        for sec in row:
            if not isinstance(sec, Section):
                sec = Section(coords, sec)
            if sec.coords != coords or sec.rank != rank:
                raise DimensionMismatch(f"bad entry in {what} table")
            new_row.append(sec)
        out.append(tuple(new_row))
    if len(anchor) != rank:
        raise DimensionMismatch(f"anchor needs {rank} vector fields")
    fields = []
    for field in anchor:
        if not isinstance(field, VectorField):
            field = VectorField(coords, field)
        if field.coords != coords:
            raise DimensionMismatch("anchor field over wrong coordinates")
        fields.append(field)
    return coords, tuple(out), tuple(fields)


class LSAlgebroid:
    """Left-symmetric algebroid on a trivial bundle.

    ``c[i][j]`` is the product of frame sections i and j; ``anchor[i]``
    the vector field attached to frame section i.  The constructor only
    validates shapes; run :func:`check_left_symmetric` for the axioms.
    A zero-dimensional base (no coordinates) gives a plain
    left-symmetric algebra over the rationals.
    """

    __slots__ = ("coords", "rank", "c", "anchor")

    def __init__(self, coords, rank: int, c, anchor):
        self.rank = rank
        self.coords, self.c, self.anchor = _validate_frame_tables(
            coords, rank, c, anchor, "product")

    @property
    def n(self) -> int:
        return len(self.coords)

    def frame(self, i: int) -> Section:
        return Section.unit(self.coords, self.rank, i)

    def section(self, components) -> Section:
        return Section(self.coords, components)

    def zero_section(self) -> Section:
        return Section.zero(self.coords, self.rank)

    def is_point(self) -> bool:
        return self.n == 0


class LieAlgebroid:
    """Lie algebroid on a trivial bundle, stored via frame brackets."""

    __slots__ = ("coords", "rank", "b", "anchor")

    def __init__(self, coords, rank: int, b, anchor):
        self.rank = rank
        self.coords, self.b, self.anchor = _validate_frame_tables(
            coords, rank, b, anchor, "bracket")

    @property
    def n(self) -> int:
        return len(self.coords)

    def frame(self, i: int) -> Section:
        return Section.unit(self.coords, self.rank, i)

    def section(self, components) -> Section:
        return Section(self.coords, components)

    def zero_section(self) -> Section:
        return Section.zero(self.coords, self.rank)

    def is_point(self) -> bool:
        return self.n == 0


def anchor_of_section(alg, section: Section) -> VectorField:
    """Anchor applied to a section (componentwise combination of the
    frame anchor fields)."""
    if section.rank != alg.rank or section.coords != alg.coords:
        raise DimensionMismatch("section does not live on this bundle")
    total = VectorField.zero(alg.coords)
    for comp, field in zip(section.components, alg.anchor):
        if not comp.is_zero():
            total = total + field.scale(comp)
    return total


def section_mult(alg: LSAlgebroid, left: Section, right: Section) -> Section:
    """Product of sections, extending the frame table by the two
    defining Leibniz rules."""
    if left.rank != alg.rank or right.rank != alg.rank \
            or left.coords != alg.coords or right.coords != alg.coords:
        raise DimensionMismatch("sections do not live on this bundle")
    out = [Poly.zero(alg.coords) for _ in range(alg.rank)]
    for i, f in enumerate(left.components):
        if f.is_zero():
            continue
        field = alg.anchor[i]
        for j, g in enumerate(right.components):
            if not g.is_zero():
                fg = f * g
                if not fg.is_zero():
                    for k, comp in enumerate(alg.c[i][j].components):
                        if not comp.is_zero():
                            out[k] = out[k] + fg * comp
            deriv = field.apply(g)
            if not deriv.is_zero():
                out[j] = out[j] + f * deriv
    return Section(alg.coords, out)


def section_bracket(alg: LieAlgebroid, left: Section, right: Section) -> Section:
    """Bracket of sections, extending the frame table by the Leibniz rule."""
    if left.rank != alg.rank or right.rank != alg.rank \
            or left.coords != alg.coords or right.coords != alg.coords:
        raise DimensionMismatch("sections do not live on this bundle")
    out = [Poly.zero(alg.coords) for _ in range(alg.rank)]
    left_field = anchor_of_section(alg, left)
    right_field = anchor_of_section(alg, right)
    for i, f in enumerate(left.components):
        if f.is_zero():
            continue
        for j, g in enumerate(right.components):
            if g.is_zero():
                continue
            fg = f * g
            if fg.is_zero():
                continue
            for k, comp in enumerate(alg.b[i][j].components):
                if not comp.is_zero():
                    out[k] = out[k] + fg * comp
    for j, g in enumerate(right.components):
        deriv = left_field.apply(g)
        if not deriv.is_zero():
            out[j] = out[j] + deriv
    for i, f in enumerate(left.components):
        deriv = right_field.apply(f)
        if not deriv.is_zero():
            out[i] = out[i] - deriv
    return Section(alg.coords, out)


def associator(alg: LSAlgebroid, x: Section, y: Section, z: Section) -> Section:
    return section_mult(alg, section_mult(alg, x, y), z) \
        - section_mult(alg, x, section_mult(alg, y, z))


def frame_commutator(alg: LSAlgebroid, i: int, j: int) -> Section:
    return alg.c[i][j] - alg.c[j][i]


def check_left_symmetric(alg: LSAlgebroid) -> Report:
    """Verify the left-symmetric axioms on the frame.

    Two families of identities together imply the axioms on arbitrary
    sections: symmetry of the associator in its first two slots on all
    frame triples, and compatibility of the anchor with the commutator
    of the product (the associator defect is a bundle map only modulo
    the anchor identity, so both checks are required).
    """
    report = Report("left-symmetric axioms")
    witnesses = []
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            for k in range(alg.rank):
                lhs = associator(alg, alg.frame(i), alg.frame(j), alg.frame(k))
                rhs = associator(alg, alg.frame(j), alg.frame(i), alg.frame(k))
                if lhs != rhs:
                    witnesses.append(
                        f"(e_{i+1},e_{j+1},e_{k+1}): associator "
                        f"{lhs} != {rhs} (arguments swapped)")
    report.add("associator-symmetry",
               "associator symmetric in its first two arguments on all "
               "frame triples",
               not witnesses, witnesses)

    anchor_witnesses = []
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            lhs = anchor_of_section(alg, frame_commutator(alg, i, j))
            rhs = vf_bracket(alg.anchor[i], alg.anchor[j])
            if lhs != rhs:
                anchor_witnesses.append(
                    f"(e_{i+1},e_{j+1}): anchor(commutator) = {lhs} but "
                    f"[anchor,anchor] = {rhs}")
    report.add("anchor-morphism",
               "anchor takes product commutators to vector-field brackets",
               not anchor_witnesses, anchor_witnesses)
    return report


def check_lie_algebroid(alg: LieAlgebroid) -> Report:
    """Verify skewness, the frame Jacobi identity, and the anchor
    bracket-morphism identity."""
    report = Report("Lie algebroid axioms")
    skew = []
    for i in range(alg.rank):
        for j in range(i, alg.rank):
            if not (alg.b[i][j] + alg.b[j][i]).is_zero():
                skew.append(f"(e_{i+1},e_{j+1}): {alg.b[i][j]} vs "
                            f"-({alg.b[j][i]})")
    report.add("skew-symmetry", "bracket table is skew-symmetric",
               not skew, skew)

    jacobi = []
    for i, j, k in combinations(range(alg.rank), 3):
        total = section_bracket(alg, alg.b[i][j], alg.frame(k)) \
            + section_bracket(alg, alg.b[j][k], alg.frame(i)) \
            + section_bracket(alg, alg.b[k][i], alg.frame(j))
        if not total.is_zero():
            jacobi.append(f"(e_{i+1},e_{j+1},e_{k+1}): cyclic sum = {total}")
    report.add("jacobi", "frame Jacobi identity", not jacobi, jacobi)

    anchor_witnesses = []
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            lhs = anchor_of_section(alg, alg.b[i][j])
            rhs = vf_bracket(alg.anchor[i], alg.anchor[j])
            if lhs != rhs:
                anchor_witnesses.append(
                    f"(e_{i+1},e_{j+1}): anchor[e_i,e_j] = {lhs} but "
                    f"[anchor,anchor] = {rhs}")
    report.add("anchor-morphism",
               "anchor is a bracket morphism to vector fields",
               not anchor_witnesses, anchor_witnesses)
    return report


def sub_adjacent(alg: LSAlgebroid) -> LieAlgebroid:
    """Lie algebroid with the commutator bracket and the same anchor."""
    axioms = check_left_symmetric(alg)
    if not axioms.passed:
        raise NotLeftSymmetric(report=axioms)
    b = [[frame_commutator(alg, i, j) for j in range(alg.rank)]
         for i in range(alg.rank)]
    return LieAlgebroid(alg.coords, alg.rank, b, alg.anchor)


# ---------------------------------------------------------------------------
# Representations (matrix part per frame section, derivation part along
# the anchor)
# ---------------------------------------------------------------------------

class Representation:
    """Action on a rank-s auxiliary bundle.

    ``rho_mat[i]`` is the matrix part of the covariant operator attached
    to frame section i; its derivation part always acts along the anchor
    field of that frame section.  ``mu_mat[i]`` is a plain bundle
    endomorphism with no derivation part.
    """

    __slots__ = ("s", "rho_mat", "mu_mat")

    def __init__(self, s: int, rho_mat: Sequence[PolyMatrix],
                 mu_mat: Sequence[PolyMatrix] | None = None):
        rho_mat = tuple(rho_mat)
        if mu_mat is None:
            coords = rho_mat[0].coords if rho_mat else ()
            mu_mat = tuple(PolyMatrix.zeros(s, s, coords)
                           for _ in rho_mat)
        else:
            mu_mat = tuple(mu_mat)
        if len(mu_mat) != len(rho_mat):
            raise DimensionMismatch("rho and mu tables differ in length")
        for m in (*rho_mat, *mu_mat):
            if m.rows != s or m.cols != s:
                raise DimensionMismatch(f"representation matrices must be "
                                        f"{s}x{s}")
        self.s = s
        self.rho_mat = rho_mat
        self.mu_mat = mu_mat

    @property
    def rank_domain(self) -> int:
        return len(self.rho_mat)


def rep_rho_frame(alg, rep: Representation, i: int, u: Section) -> Section:
    """rho of frame section i applied to a section of the auxiliary
    bundle: derivation along the anchor plus the matrix part."""
    field = alg.anchor[i]
    derived = [field.apply(comp) for comp in u.components]
    mat = rep.rho_mat[i].matvec(u.components)
    return Section(u.coords, [d + m for d, m in zip(derived, mat)])


def rep_rho_section(alg, rep: Representation, x: Section, u: Section) -> Section:
    """rho of an arbitrary section (componentwise, rho is a bundle map)."""
    total = Section.zero(u.coords, rep.s)
    for i, comp in enumerate(x.components):
        if not comp.is_zero():
            total = total + rep_rho_frame(alg, rep, i, u).scale(comp)
    return total


def rep_mu_frame(rep: Representation, j: int, u: Section) -> Section:
    return Section(u.coords, rep.mu_mat[j].matvec(u.components))


def rep_mu_section(rep: Representation, x: Section, u: Section) -> Section:
    total = Section.zero(u.coords, rep.s)
    for j, comp in enumerate(x.components):
        if not comp.is_zero():
            total = total + rep_mu_frame(rep, j, u).scale(comp)
    return total


def build_left_mult_rep(alg: LSAlgebroid) -> Representation:
    """Left multiplication as a representation of the sub-adjacent Lie
    algebroid on the bundle itself."""
    axioms = check_left_symmetric(alg)
    if not axioms.passed:
        raise NotLeftSymmetric(report=axioms)
    mats = []
    for i in range(alg.rank):
        cols = [alg.c[i][j].components for j in range(alg.rank)]
        mats.append(PolyMatrix(alg.coords,
                               [[cols[j][k] for j in range(alg.rank)]
                                for k in range(alg.rank)]))
    return Representation(alg.rank, mats)


def check_lsa_homomorphism(a1: LSAlgebroid, a2: LSAlgebroid,
                           phi: PolyMatrix) -> bool:
    """Does phi intertwine the products and the anchors on the frame?"""
    if a1.coords != a2.coords:
        raise DimensionMismatch("different base coordinates")
    if phi.rows != a2.rank or phi.cols != a1.rank:
        raise DimensionMismatch(
            f"map must be {a2.rank}x{a1.rank}, got {phi.rows}x{phi.cols}")
    images = [Section(a1.coords, phi.column(i)) for i in range(a1.rank)]
    for i in range(a1.rank):
        if anchor_of_section(a2, images[i]) != a1.anchor[i]:
            return False
    for i in range(a1.rank):
        for j in range(a1.rank):
            lhs = apply_endo(phi, a1.c[i][j])
            rhs = section_mult(a2, images[i], images[j])
            if lhs != rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# Exterior form cochains and the Lie algebroid differential
# ---------------------------------------------------------------------------

def sort_with_sign(indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning the permutation parity (0 for a
    repeated index)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


class FormCochain:
    """Alternating multilinear form on frame sections, with polynomial
    values.  Components are stored on strictly increasing index tuples."""

    __slots__ = ("coords", "rank", "degree", "comps")

    def __init__(self, coords, rank: int, degree: int, comps: dict):
        if degree < 0:
            raise InvalidDegree("form degree must be non-negative")
        coords = tuple(coords)
        clean = {}
        for key, value in comps.items():
            key = tuple(key)
            if len(key) != degree:
                raise DimensionMismatch(f"key {key} has wrong length")
            if any(not 0 <= i < rank for i in key):
                raise DimensionMismatch(f"key {key} out of range")
            if list(key) != sorted(key) or len(set(key)) != len(key):
                raise DimensionMismatch(f"key {key} must be strictly increasing")
            if not isinstance(value, Poly):
                value = Poly.constant(value, coords)
            if not value.is_zero():
                clean[key] = value
        self.coords = coords
        self.rank = rank
        self.degree = degree
        self.comps = clean

    @classmethod
    def zero(cls, coords, rank: int, degree: int) -> "FormCochain":
        return cls(coords, rank, degree, {})

    def component(self, indices: Sequence[int]) -> Poly:
        key, sign = sort_with_sign(indices)
        if sign == 0:
            return Poly.zero(self.coords)
        value = self.comps.get(key)
        if value is None:
            return Poly.zero(self.coords)
        return value if sign == 1 else -value

    def evaluate(self, sections: Sequence[Section]) -> Poly:
        """Full multilinear evaluation on arbitrary sections."""
        if len(sections) != self.degree:
            raise DimensionMismatch(
                f"degree {self.degree} form applied to {len(sections)} sections")
        total = Poly.zero(self.coords)
        for key, value in self.comps.items():
            for perm, sign in _permutations_with_sign(key):
                coeff = Poly.constant(sign, self.coords)
                for sec, idx in zip(sections, perm):
                    coeff = coeff * sec.components[idx]
                    if coeff.is_zero():
                        break
                if not coeff.is_zero():
                    total = total + coeff * value
        return total

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, FormCochain):
            return NotImplemented
        return (self.coords, self.rank, self.degree, self.comps) == \
            (other.coords, other.rank, other.degree, other.comps)

    def __hash__(self):
        return hash((self.coords, self.rank, self.degree,
                     frozenset(self.comps.items())))


def _permutations_with_sign(key: tuple[int, ...]):
    from itertools import permutations
    base = list(key)
    for perm in permutations(range(len(base))):
        indices = tuple(base[p] for p in perm)
        _, sign = sort_with_sign(perm)
        yield indices, sign


def lie_form_d(alg: LieAlgebroid, form: FormCochain) -> FormCochain:
    """Coboundary of an alternating form: anchor terms on omitted
    arguments plus bracket insertions, with alternating signs."""
    if form.rank != alg.rank or form.coords != alg.coords:
        raise DimensionMismatch("form does not live on this algebroid")
    k = form.degree
    comps = {}
    for key in combinations(range(alg.rank), k + 1):
        total = Poly.zero(alg.coords)
        for pos, i in enumerate(key):
            rest = key[:pos] + key[pos + 1:]
            term = alg.anchor[i].apply(form.component(rest))
            if not term.is_zero():
                total = total + term if pos % 2 == 0 else total - term
        for pos_a, pos_b in combinations(range(k + 1), 2):
            i, j = key[pos_a], key[pos_b]
            rest = tuple(key[p] for p in range(k + 1)
                         if p not in (pos_a, pos_b))
            bracket = alg.b[i][j]
            term = Poly.zero(alg.coords)
            for m, comp in enumerate(bracket.components):
                if not comp.is_zero():
                    term = term + comp * form.component((m,) + rest)
            if not term.is_zero():
                total = total - term if (pos_a + pos_b) % 2 == 1 else total + term
        if not total.is_zero():
            comps[key] = total
    return FormCochain(alg.coords, alg.rank, k + 1, comps)


# ---------------------------------------------------------------------------
# Point-case helpers
# ---------------------------------------------------------------------------

def check_lie_admissible(alg: LSAlgebroid) -> bool:
    """Does the six-term alternating associator sum vanish on all basis
    triples?  Only meaningful over a zero-dimensional base."""
    if not alg.is_point():
        raise NotPointCase("Lie-admissibility check requires a point base")
    frames = [alg.frame(i) for i in range(alg.rank)]

    def assoc(x, y, z):
        return associator(alg, x, y, z)

    for x in frames:
        for y in frames:
            for z in frames:
                total = assoc(x, y, z) - assoc(y, x, z) + assoc(y, z, x) \
                    - assoc(z, y, x) + assoc(z, x, y) - assoc(x, z, y)
                if not total.is_zero():
                    return False
    return True
