"""One-parameter infinitesimal deformations and Nijenhuis operators.

A degree-2 multiderivation perturbs the product as x.y + t w(x, y) and
the anchor as a + t sigma_w; validity of the deformed structure for
every value of t is equivalent to a first-order cocycle condition
(which is exactly closedness in the deformation complex), a quadratic
condition saying that w is itself a left-symmetric product with anchor
sigma_w, and the anchor compatibilities of both.

The formal parameter is realized as a genuine extra base coordinate
that no anchor field differentiates, so "for all t" statements become
single polynomial identities; rational specializations substitute the
parameter away.
"""

from __future__ import annotations

from fractions import Fraction

from .cohomology import MultiDerivation, def_d
from .core import (
    LSAlgebroid,
    Section,
    anchor_of_section,
    apply_endo,
    check_left_symmetric,
    frame_commutator,
    section_mult,
)
from .errors import (
    DimensionMismatch,
    NotADeformation,
    NotNijenhuis,
)
from .polyring import Poly, PolyMatrix, VectorField, vf_bracket
from .report import Report

FORMAL = object()

Deformation2 = MultiDerivation


def deformation_from_tables(coords, rank: int, values, symbols) \
        -> MultiDerivation:
    """Degree-2 multiderivation from an r x r table of value sections
    and a list of symbol fields (one per frame section)."""
    value_map = {}
    for i in range(rank):
        for j in range(rank):
            sec = values[i][j]
            if not isinstance(sec, Section):
                sec = Section(coords, sec)
            if not sec.is_zero():
                value_map[((i,), j)] = sec
    symbol_map = {}
    for i in range(rank):
        field = symbols[i]
        if not isinstance(field, VectorField):
            field = VectorField(coords, field)
        if not field.is_zero():
            symbol_map[(i,)] = field
    return MultiDerivation(coords, rank, 2, value_map, symbol_map)


def fresh_parameter(coords, base: str = "t") -> str:
    name = base
    while name in coords:
        name += "_"
    return name


def extend_algebroid(alg: LSAlgebroid, param: str) -> LSAlgebroid:
    """Lift to one extra base coordinate that no anchor differentiates."""
    new_coords = alg.coords + (param,)
    c = [[alg.c[i][j].extend(new_coords) for j in range(alg.rank)]
         for i in range(alg.rank)]
    anchor = [field.extend(new_coords) for field in alg.anchor]
    return LSAlgebroid(new_coords, alg.rank, c, anchor)


def specialize_algebroid(alg: LSAlgebroid, param: str, value) -> LSAlgebroid:
    """Substitute a rational value for a formal parameter coordinate."""
    c = [[alg.c[i][j].substitute(param, value) for j in range(alg.rank)]
         for i in range(alg.rank)]
    anchor = [field.substitute(param, value) for field in alg.anchor]
    new_coords = tuple(name for name in alg.coords if name != param)
    return LSAlgebroid(new_coords, alg.rank, c, anchor)


def check_deformation(alg: LSAlgebroid, omega: MultiDerivation) -> Report:
    """Full validity report for a candidate deformation.

    Records the first-order cocycle condition on values and symbols
    (obtained by expanding the deformed associator and anchor identity
    at first order in the parameter), the quadratic self-product
    condition, the auxiliary instance (omega as product, its symbol as
    anchor) passing the left-symmetric axioms, and an independent
    cross-check that the deformation differential of omega vanishes.
    """
    if omega.degree != 2 or omega.rank != alg.rank \
            or omega.coords != alg.coords:
        raise DimensionMismatch("candidate must be a degree-2 "
                                "multiderivation on this bundle")
    report = Report("deformation candidate")
    frames = [alg.frame(i) for i in range(alg.rank)]

    def w(x: Section, y: Section) -> Section:
        return omega.evaluate([x, y])

    witnesses = []
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            for k in range(alg.rank):
                x, y, z = frames[i], frames[j], frames[k]
                total = section_mult(alg, x, w(y, z)) \
                    - section_mult(alg, y, w(x, z)) \
                    + section_mult(alg, w(y, x), z) \
                    - section_mult(alg, w(x, y), z) \
                    - w(y, section_mult(alg, x, z)) \
                    + w(x, section_mult(alg, y, z)) \
                    - w(frame_commutator(alg, i, j), z)
                if not total.is_zero():
                    witnesses.append(
                        f"(e_{i+1},e_{j+1},e_{k+1}): first-order defect "
                        f"= {total}")
    report.add("cocycle-values",
               "first-order associator condition on frame triples",
               not witnesses, witnesses[:5])

    sym_witnesses = []
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            total = vf_bracket(alg.anchor[i], omega.symbol((j,))) \
                - vf_bracket(alg.anchor[j], omega.symbol((i,))) \
                - anchor_of_section(alg, omega.value((i,), j)) \
                + anchor_of_section(alg, omega.value((j,), i))
            bracket = frame_commutator(alg, i, j)
            for k, comp in enumerate(bracket.components):
                if not comp.is_zero():
                    total = total - omega.symbol((k,)).scale(comp)
            if not total.is_zero():
                sym_witnesses.append(
                    f"(e_{i+1},e_{j+1}): first-order anchor defect = {total}")
    report.add("cocycle-symbol",
               "first-order anchor condition on frame pairs",
               not sym_witnesses, sym_witnesses[:5])

    sq_witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            for k in range(alg.rank):
                x, y, z = frames[i], frames[j], frames[k]
                lhs = w(w(x, y), z) - w(x, w(y, z))
                rhs = w(w(y, x), z) - w(y, w(x, z))
                if lhs != rhs:
                    sq_witnesses.append(
                        f"(e_{i+1},e_{j+1},e_{k+1}): {lhs} != {rhs}")
    report.add("square-product",
               "candidate is itself left-symmetric as a product",
               not sq_witnesses, sq_witnesses[:5])

    aux = LSAlgebroid(alg.coords, alg.rank,
                      [[omega.value((i,), j) for j in range(alg.rank)]
                       for i in range(alg.rank)],
                      [omega.symbol((i,)) for i in range(alg.rank)])
    report.merge(check_left_symmetric(aux), prefix="aux-")

    differential = def_d(alg, omega)
    report.add("closed-in-deformation-complex",
               "deformation differential of the candidate vanishes "
               "(values and symbol)",
               differential.is_zero())
    return report


def deformed_algebroid(alg: LSAlgebroid, omega: MultiDerivation, t,
                       param: str = "t") -> LSAlgebroid:
    """The deformed structure at a rational parameter value, or over the
    parameter-extended coordinate ring when ``t`` is FORMAL."""
    validity = check_deformation(alg, omega)
    if not validity.passed:
        raise NotADeformation(report=validity)
    if t is FORMAL:
        param = fresh_parameter(alg.coords, param)
        lifted = extend_algebroid(alg, param)
        tpoly = Poly.variable(param, lifted.coords)
        c = [[lifted.c[i][j]
              + omega.value((i,), j).extend(lifted.coords).scale(tpoly)
              for j in range(alg.rank)] for i in range(alg.rank)]
        anchor = [lifted.anchor[i]
                  + omega.symbol((i,)).extend(lifted.coords).scale(tpoly)
                  for i in range(alg.rank)]
        return LSAlgebroid(lifted.coords, alg.rank, c, anchor)
    value = Fraction(t)
    c = [[alg.c[i][j] + omega.value((i,), j).scale(value)
          for j in range(alg.rank)] for i in range(alg.rank)]
    anchor = [alg.anchor[i] + omega.symbol((i,)).scale(
        Poly.constant(value, alg.coords)) for i in range(alg.rank)]
    return LSAlgebroid(alg.coords, alg.rank, c, anchor)


def check_nijenhuis(alg: LSAlgebroid, endo: PolyMatrix,
                    paper_literal: bool = False) -> bool:
    """Nijenhuis condition for a bundle endomorphism.

    The default evaluates
    N(x).N(y) - N(x.N(y)) - N(N(x).y) + N(N(x.y)) = 0
    on frame pairs; this expression is a bundle map in both slots, so
    frame checks decide it.  ``paper_literal`` instead evaluates the
    variant with the two middle applications of N dropped, which is kept
    for auditing only (it is not function-linear).
    """
    if endo.rows != alg.rank or endo.cols != alg.rank:
        raise DimensionMismatch("endomorphism shape mismatch")
    images = [Section(alg.coords, endo.column(i)) for i in range(alg.rank)]
    for i in range(alg.rank):
        for j in range(alg.rank):
            first = section_mult(alg, images[i], images[j])
            inner_right = section_mult(alg, alg.frame(i), images[j])
            inner_left = section_mult(alg, images[i], alg.frame(j))
            last = apply_endo(endo, apply_endo(endo, alg.c[i][j]))
            if paper_literal:
                defect = first - inner_right - inner_left + last
            else:
                defect = first - apply_endo(endo, inner_right) \
                    - apply_endo(endo, inner_left) + last
            if not defect.is_zero():
                return False
    return True


def trivial_deformation(alg: LSAlgebroid, endo: PolyMatrix) \
        -> tuple[MultiDerivation, Report]:
    """Deformation generated by a Nijenhuis operator, with the proof
    that it is trivial.

    The candidate is the deformation differential of the operator.  The
    report contains the full deformation validity check plus the
    intertwining identities of the family id + tN over the formal
    parameter: the family maps the deformed product to the original one
    and pulls the original anchor back to the deformed anchor.
    """
    if not check_nijenhuis(alg, endo):
        raise NotNijenhuis("endomorphism fails the Nijenhuis condition")
    omega = def_d(alg, MultiDerivation.from_endomorphism(alg, endo))
    report = Report("trivial deformation")
    report.merge(check_deformation(alg, omega))

    param = fresh_parameter(alg.coords)
    lifted = extend_algebroid(alg, param)
    deformed = deformed_algebroid(alg, omega, FORMAL, param)
    tpoly = Poly.variable(param, lifted.coords)
    endo_lifted = PolyMatrix(lifted.coords,
                             [[endo.entry(i, j).extend(lifted.coords)
                               for j in range(alg.rank)]
                              for i in range(alg.rank)])
    family = PolyMatrix.identity(alg.rank, lifted.coords) \
        + endo_lifted.scale(tpoly)
    images = [Section(lifted.coords, family.column(i))
              for i in range(alg.rank)]

    product_witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            lhs = apply_endo(family, deformed.c[i][j])
            rhs = section_mult(lifted, images[i], images[j])
            if lhs != rhs:
                product_witnesses.append(
                    f"(e_{i+1},e_{j+1}): (id+tN)(x .t y) = {lhs} but "
                    f"(id+tN)x . (id+tN)y = {rhs}")
    report.add("intertwiner-product",
               "id + tN maps the deformed product to the original product",
               not product_witnesses, product_witnesses[:5])

    anchor_witnesses = []
    for i in range(alg.rank):
        lhs = anchor_of_section(lifted, images[i])
        rhs = deformed.anchor[i]
        if lhs != rhs:
            anchor_witnesses.append(
                f"e_{i+1}: a(id+tN) = {lhs} but deformed anchor = {rhs}")
    report.add("intertwiner-anchor",
               "original anchor composed with id + tN is the deformed anchor",
               not anchor_witnesses, anchor_witnesses)
    return omega, report


def check_equivalence(alg: LSAlgebroid, omega: MultiDerivation,
                      omega_prime: MultiDerivation,
                      endo: PolyMatrix) -> Report:
    """Are the deformations generated by the two candidates equivalent
    through the family id + tN?

    Records the exactness condition (the difference is the differential
    of the endomorphism), the mixed compatibility identity, vanishing of
    the second candidate on the image of the endomorphism (values and
    symbol), and the anchor relation, the latter both directly and as
    derived from exactness.
    """
    report = Report("deformation equivalence")
    report.add("omega-valid", "first candidate is a deformation",
               check_deformation(alg, omega).passed)
    report.add("omega-prime-valid", "second candidate is a deformation",
               check_deformation(alg, omega_prime).passed)

    d_endo = def_d(alg, MultiDerivation.from_endomorphism(alg, endo))
    difference = omega - omega_prime
    exact_witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            lhs = difference.value((i,), j)
            rhs = d_endo.value((i,), j)
            if lhs != rhs:
                exact_witnesses.append(
                    f"(e_{i+1},e_{j+1}): difference = {lhs} but "
                    f"d N = {rhs}")
    report.add("exactness",
               "difference of the candidates is the differential of the "
               "endomorphism", not exact_witnesses, exact_witnesses[:5])

    images = [Section(alg.coords, endo.column(i)) for i in range(alg.rank)]
    mixed_witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            lhs = apply_endo(endo, omega.value((i,), j))
            rhs = omega_prime.evaluate([alg.frame(i), images[j]]) \
                + omega_prime.evaluate([images[i], alg.frame(j)]) \
                + section_mult(alg, images[i], images[j])
            if lhs != rhs:
                mixed_witnesses.append(
                    f"(e_{i+1},e_{j+1}): N w(x,y) = {lhs} but "
                    f"w'(x,Ny) + w'(Nx,y) + Nx.Ny = {rhs}")
    report.add("compatibility",
               "endomorphism intertwines the candidates up to the product "
               "of images", not mixed_witnesses, mixed_witnesses[:5])

    image_witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            value = omega_prime.evaluate([images[i], images[j]])
            if not value.is_zero():
                image_witnesses.append(
                    f"(e_{i+1},e_{j+1}): w'(Nx,Ny) = {value}")
    report.add("image-values-vanish",
               "second candidate vanishes on image pairs",
               not image_witnesses, image_witnesses[:5])

    symbol_witnesses = []
    for i in range(alg.rank):
        total = VectorField.zero(alg.coords)
        for k, comp in enumerate(images[i].components):
            if not comp.is_zero():
                total = total + omega_prime.symbol((k,)).scale(comp)
        if not total.is_zero():
            symbol_witnesses.append(f"e_{i+1}: sigma'(N x) = {total}")
    report.add("image-symbol-vanishes",
               "symbol of the second candidate vanishes on the image",
               not symbol_witnesses, symbol_witnesses)

    anchor_witnesses = []
    derived_witnesses = []
    for i in range(alg.rank):
        difference_field = omega.symbol((i,)) - omega_prime.symbol((i,))
        direct = anchor_of_section(alg, images[i])
        if difference_field != direct:
            anchor_witnesses.append(
                f"e_{i+1}: sigma - sigma' = {difference_field} but "
                f"a(N x) = {direct}")
        if difference_field != d_endo.symbol((i,)):
            derived_witnesses.append(
                f"e_{i+1}: sigma - sigma' = {difference_field} but "
                f"symbol of d N = {d_endo.symbol((i,))}")
    report.add("anchor-relation",
               "symbol difference is the anchor composed with the "
               "endomorphism", not anchor_witnesses, anchor_witnesses)
    report.add("anchor-relation-derived",
               "the anchor relation also follows from exactness (symbol of "
               "the differential)", not derived_witnesses, derived_witnesses)
    return report
