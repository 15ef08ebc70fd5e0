"""Structures built on top of a left-symmetric algebroid.

Representations and their duals, action algebroids, O-operators,
semidirect products, phase spaces on the double bundle, paracomplex and
complex structures, quadratic forms, and kernel representations.

All integrability and invariance concomitants checked here are bundle
maps (their defects are function-linear in every slot), so verifying
them on frame tuples decides them on arbitrary sections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import (
    FormCochain,
    LieAlgebroid,
    LSAlgebroid,
    Representation,
    Section,
    anchor_of_section,
    apply_endo,
    build_left_mult_rep,
    check_left_symmetric,
    check_lsa_homomorphism,
    frame_commutator,
    lie_form_d,
    rep_mu_frame,
    rep_mu_section,
    rep_rho_frame,
    rep_rho_section,
    section_bracket,
    section_mult,
    sub_adjacent,
)
from .errors import (
    DimensionMismatch,
    FrameExpressionError,
    FrameNotInKernel,
    NonConstantDeterminant,
    NotAnAction,
    NotAnIdeal,
    NotARepresentation,
    NotIsomorphism,
    NotLeftSymmetric,
    NotPointCase,
    NotQuadratic,
    IncompatibleBracket,
    OmegaNotClosed,
)
from .polyring import (
    Poly,
    PolyMatrix,
    VectorField,
    find_constant_invertible_submatrix,
    matrix_inverse_adjugate,
    vf_bracket,
)
from .report import Report

BundleEndo = PolyMatrix


class BilinearForm:
    """Symmetric bilinear form on the bundle, stored as its frame matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: PolyMatrix):
        if matrix.rows != matrix.cols:
            raise DimensionMismatch("bilinear form matrix must be square")
        if matrix != matrix.transpose():
            raise DimensionMismatch("bilinear form matrix must be symmetric")
        self.matrix = matrix


def _form_matrix(form) -> PolyMatrix:
    return form.matrix if isinstance(form, BilinearForm) else form


# ---------------------------------------------------------------------------
# Representation checks and duals
# ---------------------------------------------------------------------------

def check_representation_lie(lie: LieAlgebroid, rep: Representation) -> bool:
    """Does rho send frame brackets to operator commutators?

    The derivation part of each operator acts along the anchor of its
    frame section, so the symbols agree by construction; the residual
    defect is a bundle map and is decided on frame pairs.
    """
    if rep.rank_domain != lie.rank:
        raise DimensionMismatch(
            f"representation indexed by {rep.rank_domain} frame sections "
            f"on a rank {lie.rank} algebroid")
    units = [Section.unit(lie.coords, rep.s, m) for m in range(rep.s)]
    for i in range(lie.rank):
        for j in range(i + 1, lie.rank):
            for u in units:
                lhs = rep_rho_section(lie, rep, lie.b[i][j], u)
                rhs = rep_rho_frame(lie, rep, i, rep_rho_frame(lie, rep, j, u)) \
                    - rep_rho_frame(lie, rep, j, rep_rho_frame(lie, rep, i, u))
                if lhs != rhs:
                    return False
    return True


def dual_rep(lie: LieAlgebroid, rep: Representation) -> Representation:
    """Dual representation on the dual bundle: matrix parts become
    negative transposes, derivation parts are unchanged."""
    if not check_representation_lie(lie, rep):
        raise NotARepresentation("input is not a Lie algebroid representation")
    return Representation(rep.s, [-(m.transpose()) for m in rep.rho_mat])


def check_representation_lsa(alg: LSAlgebroid, rep: Representation) -> bool:
    """Is (rho, mu) a representation of the left-symmetric algebroid?

    Requires rho to represent the sub-adjacent Lie algebroid, plus the
    coupling identity
    rho(x)mu(y)e - mu(y)rho(x)e = mu(x.y)e - mu(y)mu(x)e
    on all frame pairs acting on the frame of the auxiliary bundle.
    """
    lie = sub_adjacent(alg)
    if not check_representation_lie(lie, rep):
        return False
    units = [Section.unit(alg.coords, rep.s, m) for m in range(rep.s)]
    for i in range(alg.rank):
        for j in range(alg.rank):
            for u in units:
                lhs = rep_rho_frame(alg, rep, i, rep_mu_frame(rep, j, u)) \
                    - rep_mu_frame(rep, j, rep_rho_frame(alg, rep, i, u))
                rhs = rep_mu_section(rep, alg.c[i][j], u) \
                    - rep_mu_frame(rep, j, rep_mu_frame(rep, i, u))
                if lhs != rhs:
                    return False
    return True


@dataclass
class DerivedReps:
    on_bundle: Representation
    on_dual: Representation
    equivalences: tuple[bool, bool, bool]


def derived_reps(alg: LSAlgebroid, rep: Representation) -> DerivedReps:
    """Representations induced on the bundle and its dual, plus the
    three equivalent conditions tying them together.

    ``on_bundle`` carries (rho - mu, 0); ``on_dual`` carries
    (rho* - mu*, -mu*).  The equivalence triple records whether
    (E; rho - mu, -mu) is a representation, whether (E*; rho*, mu*) is a
    representation, and whether the mu matrices commute pairwise; the
    three answers always agree.
    """
    if not check_representation_lsa(alg, rep):
        raise NotARepresentation("(rho, mu) fails the representation identities")
    diff = [r - m for r, m in zip(rep.rho_mat, rep.mu_mat)]
    rho_star = [-(m.transpose()) for m in rep.rho_mat]
    mu_star = [-(m.transpose()) for m in rep.mu_mat]
    on_bundle = Representation(rep.s, diff)
    on_dual = Representation(rep.s,
                             [rs - ms for rs, ms in zip(rho_star, mu_star)],
                             [-(ms) for ms in mu_star])
    cond1 = check_representation_lsa(
        alg, Representation(rep.s, diff, [-(m) for m in rep.mu_mat]))
    cond2 = check_representation_lsa(
        alg, Representation(rep.s, rho_star, mu_star))
    cond3 = all(rep.mu_mat[i] @ rep.mu_mat[j] == rep.mu_mat[j] @ rep.mu_mat[i]
                for i, j in combinations(range(alg.rank), 2))
    return DerivedReps(on_bundle, on_dual, (cond1, cond2, cond3))


# ---------------------------------------------------------------------------
# Action algebroids
# ---------------------------------------------------------------------------

def action_algebroid(algebra: LSAlgebroid, fields: Sequence[VectorField],
                     coords: Sequence[str]) -> LSAlgebroid:
    """Trivial bundle with constant products from a left-symmetric
    algebra acting through vector fields.

    The action condition (fields intertwine the commutator with the
    vector-field bracket) is verified on basis pairs; the result has the
    algebra's structure constants and the fields as its anchor.
    """
    if not algebra.is_point():
        raise NotPointCase("the acting algebra must have a point base")
    axioms = check_left_symmetric(algebra)
    if not axioms.passed:
        raise NotLeftSymmetric(report=axioms)
    coords = tuple(coords)
    fields = list(fields)
    if len(fields) != algebra.rank:
        raise DimensionMismatch("one vector field per basis element required")
    for field in fields:
        if field.coords != coords:
            raise DimensionMismatch("action field over wrong coordinates")

    def field_of(constants: Section) -> VectorField:
        total = VectorField.zero(coords)
        for k, comp in enumerate(constants.components):
            value = comp.constant_value()
            if value:
                total = total + fields[k].scale(Poly.constant(value, coords))
        return total

    for i in range(algebra.rank):
        for j in range(i + 1, algebra.rank):
            lhs = field_of(frame_commutator(algebra, i, j))
            rhs = vf_bracket(fields[i], fields[j])
            if lhs != rhs:
                raise NotAnAction(
                    f"action condition fails on basis pair ({i + 1}, {j + 1}): "
                    f"{lhs} != {rhs}", witness=(i, j))

    c = [[Section(coords, [comp.constant_value()
                           for comp in algebra.c[i][j].components])
          for j in range(algebra.rank)] for i in range(algebra.rank)]
    result = LSAlgebroid(coords, algebra.rank, c, fields)
    axioms = check_left_symmetric(result)
    if not axioms.passed:
        raise NotLeftSymmetric(report=axioms)
    return result


# ---------------------------------------------------------------------------
# O-operators and Nijenhuis operators on Lie algebroids
# ---------------------------------------------------------------------------

@dataclass
class OOperatorResult:
    is_O: bool
    induced: LSAlgebroid | None
    T_homomorphism: bool | None
    witnesses: tuple[str, ...] = ()


def apply_O_operator(lie: LieAlgebroid, rep: Representation,
                     T: PolyMatrix) -> OOperatorResult:
    """Test the O-operator identity and build the induced structure.

    When [Tu, Tv] = T(rho(Tu)v - rho(Tv)u) holds on frame pairs of the
    auxiliary bundle, the product u.v = rho(Tu)v with anchor a o T is a
    left-symmetric algebroid and T intertwines its commutator bracket
    with the ambient bracket.
    """
    if T.rows != lie.rank or T.cols != rep.s:
        raise DimensionMismatch(
            f"operator must be {lie.rank}x{rep.s}, got {T.rows}x{T.cols}")
    if rep.rank_domain != lie.rank:
        raise DimensionMismatch("representation does not match the algebroid")
    images = [Section(lie.coords, T.column(m)) for m in range(rep.s)]
    units = [Section.unit(lie.coords, rep.s, m) for m in range(rep.s)]

    witnesses = []
    for i in range(rep.s):
        for j in range(i + 1, rep.s):
            lhs = section_bracket(lie, images[i], images[j])
            inner = rep_rho_section(lie, rep, images[i], units[j]) \
                - rep_rho_section(lie, rep, images[j], units[i])
            rhs = apply_endo(T, inner)
            if lhs != rhs:
                witnesses.append(
                    f"(u_{i+1},u_{j+1}): [Tu,Tv] = {lhs} but "
                    f"T(rho(Tu)v - rho(Tv)u) = {rhs}")
    if witnesses:
        return OOperatorResult(False, None, None, tuple(witnesses))

    c = [[rep_rho_section(lie, rep, images[i], units[j])
          for j in range(rep.s)] for i in range(rep.s)]
    anchor = [anchor_of_section(lie, images[i]) for i in range(rep.s)]
    induced = LSAlgebroid(lie.coords, rep.s, c, anchor)

    hom = True
    for i in range(rep.s):
        for j in range(i + 1, rep.s):
            mapped = apply_endo(T, induced.c[i][j] - induced.c[j][i])
            if mapped != section_bracket(lie, images[i], images[j]):
                hom = False
    return OOperatorResult(True, induced, hom)


def check_lie_nijenhuis(lie: LieAlgebroid, endo: PolyMatrix) -> bool:
    """Vanishing of the Nijenhuis concomitant of a bundle endomorphism
    with respect to the bracket, decided on frame pairs."""
    if endo.rows != lie.rank or endo.cols != lie.rank:
        raise DimensionMismatch("endomorphism shape mismatch")
    images = [Section(lie.coords, endo.column(i)) for i in range(lie.rank)]
    for i in range(lie.rank):
        for j in range(i + 1, lie.rank):
            lhs = section_bracket(lie, images[i], images[j])
            inner = section_bracket(lie, images[i], lie.frame(j)) \
                + section_bracket(lie, lie.frame(i), images[j]) \
                - apply_endo(endo, lie.b[i][j])
            if lhs != apply_endo(endo, inner):
                return False
    return True


# ---------------------------------------------------------------------------
# Semidirect products
# ---------------------------------------------------------------------------

def _embed(section: Section, total: int, offset: int) -> Section:
    coords = section.coords
    comps = [Poly.zero(coords)] * total
    for k, comp in enumerate(section.components):
        comps[offset + k] = comp
    return Section(coords, comps)


def semidirect_lie(lie: LieAlgebroid, rep: Representation) -> LieAlgebroid:
    """Semidirect product bracket on the direct sum with the auxiliary
    bundle; the anchor vanishes on the auxiliary part."""
    if not check_representation_lie(lie, rep):
        raise NotARepresentation("input is not a Lie algebroid representation")
    r, s = lie.rank, rep.s
    total = r + s
    coords = lie.coords
    zero = Section.zero(coords, total)
    b = [[zero for _ in range(total)] for _ in range(total)]
    units = [Section.unit(coords, s, m) for m in range(s)]
    for i in range(r):
        for j in range(r):
            b[i][j] = _embed(lie.b[i][j], total, 0)
    for i in range(r):
        for m in range(s):
            image = _embed(rep_rho_frame(lie, rep, i, units[m]), total, r)
            b[i][r + m] = image
            b[r + m][i] = -image
    anchor = list(lie.anchor) + [VectorField.zero(coords) for _ in range(s)]
    return LieAlgebroid(coords, total, b, anchor)


def semidirect_lsa(alg: LSAlgebroid, rep: Representation) -> LSAlgebroid:
    """Semidirect product left-symmetric structure: the bundle part
    multiplies as before, rho acts from the left and mu from the right."""
    if not check_representation_lsa(alg, rep):
        raise NotARepresentation("(rho, mu) fails the representation identities")
    r, s = alg.rank, rep.s
    total = r + s
    coords = alg.coords
    zero = Section.zero(coords, total)
    c = [[zero for _ in range(total)] for _ in range(total)]
    units = [Section.unit(coords, s, m) for m in range(s)]
    for i in range(r):
        for j in range(r):
            c[i][j] = _embed(alg.c[i][j], total, 0)
    for i in range(r):
        for m in range(s):
            c[i][r + m] = _embed(rep_rho_frame(alg, rep, i, units[m]), total, r)
    for j in range(r):
        for m in range(s):
            c[r + m][j] = _embed(rep_mu_frame(rep, j, units[m]), total, r)
    anchor = list(alg.anchor) + [VectorField.zero(coords) for _ in range(s)]
    return LSAlgebroid(coords, total, c, anchor)


# ---------------------------------------------------------------------------
# Phase spaces
# ---------------------------------------------------------------------------

@dataclass
class PhaseSpace:
    P: LieAlgebroid
    omega: FormCochain
    paracomplex: PolyMatrix
    report: Report


def canonical_pairing_form(coords, rank: int) -> FormCochain:
    """The 2-form pairing the bundle with its dual on the double."""
    comps = {(i, rank + i): Poly.constant(1, coords) for i in range(rank)}
    return FormCochain(coords, 2 * rank, 2, comps)


def canonical_paracomplex(coords, rank: int) -> PolyMatrix:
    """Identity on the bundle part, minus identity on the dual part."""
    return PolyMatrix(coords,
                      [[(1 if i == j else 0) if i < rank else
                        (-1 if i == j else 0)
                        for j in range(2 * rank)] for i in range(2 * rank)])


def build_phase_space(alg: LSAlgebroid) -> PhaseSpace:
    """Double of the sub-adjacent Lie algebroid by the dual of the
    left-multiplication representation, carrying the canonical pairing
    form.

    The report certifies that the pairing form is closed, that its
    constant frame matrix is invertible, and that the canonical
    reflection is a paracomplex structure.
    """
    lie = sub_adjacent(alg)
    dual = dual_rep(lie, build_left_mult_rep(alg))
    P = semidirect_lie(lie, dual)
    omega = canonical_pairing_form(alg.coords, alg.rank)
    para = canonical_paracomplex(alg.coords, alg.rank)

    report = Report("phase space")
    d_omega = lie_form_d(P, omega)
    witnesses = [f"d omega(e_{i+1},e_{j+1},e_{k+1}) = {value}"
                 for (i, j, k), value in sorted(d_omega.comps.items())]
    report.add("omega-closed", "pairing 2-form is closed", not witnesses,
               witnesses)

    matrix = PolyMatrix(alg.coords,
                        [[omega.component((i, j)) for j in range(2 * alg.rank)]
                         for i in range(2 * alg.rank)])
    det = matrix.det()
    report.add("omega-nondegenerate",
               "constant frame matrix of the pairing form is invertible",
               det.is_constant() and not det.is_zero(),
               [] if not det.is_zero() else ["det = 0"])

    report.add("paracomplex",
               "canonical reflection squares to the identity and is "
               "integrable",
               check_paracomplex(P, para))
    return PhaseSpace(P, omega, para, report)


@dataclass
class PhaseCompatible:
    base: LSAlgebroid
    total: LSAlgebroid
    report: Report


def lsa_from_phase(lie: LieAlgebroid, rep: Representation) -> PhaseCompatible:
    """Recover a left-symmetric structure from a phase space.

    Given a representation of the algebroid on itself whose semidirect
    product with the dual makes the pairing form closed, x.y = rho(x)y
    is left-symmetric with the original bracket as commutator, and the
    double carries a compatible left-symmetric structure.
    """
    if rep.s != lie.rank:
        raise DimensionMismatch("representation must act on the bundle itself")
    if not check_representation_lie(lie, rep):
        raise NotARepresentation("input is not a Lie algebroid representation")
    r = lie.rank
    coords = lie.coords
    P = semidirect_lie(lie, dual_rep(lie, rep))
    omega = canonical_pairing_form(coords, r)
    d_omega = lie_form_d(P, omega)
    if not d_omega.is_zero():
        triple = sorted(d_omega.comps)[0]
        raise OmegaNotClosed(
            f"pairing form is not closed: d omega nonzero on frame triple "
            f"{tuple(t + 1 for t in triple)}", triple=triple)

    report = Report("compatible structure from phase space")
    bracket_witnesses = []
    for i in range(r):
        for j in range(i + 1, r):
            derived = Section(coords, rep.rho_mat[i].column(j)) \
                - Section(coords, rep.rho_mat[j].column(i))
            if derived != lie.b[i][j]:
                bracket_witnesses.append(
                    f"(e_{i+1},e_{j+1}): rho(x)y - rho(y)x = {derived} but "
                    f"[x,y] = {lie.b[i][j]}")
    if bracket_witnesses:
        raise IncompatibleBracket("; ".join(bracket_witnesses))
    report.add("bracket-relation",
               "bracket equals the commutator of the recovered product", True)

    c = [[Section(coords, rep.rho_mat[i].column(j)) for j in range(r)]
         for i in range(r)]
    base = LSAlgebroid(coords, r, c, lie.anchor)
    base_axioms = check_left_symmetric(base)
    report.add("base-left-symmetric",
               "recovered product is left-symmetric", base_axioms.passed,
               [w for rec in base_axioms.records for w in rec.witnesses])

    total_rank = 2 * r
    zero = Section.zero(coords, total_rank)
    c_total = [[zero for _ in range(total_rank)] for _ in range(total_rank)]
    for i in range(r):
        for j in range(r):
            c_total[i][j] = _embed(base.c[i][j], total_rank, 0)
    for i in range(r):
        for m in range(r):
            dual_col = Section(coords,
                               [-(rep.rho_mat[i].entry(m, k))
                                for k in range(r)])
            c_total[i][r + m] = _embed(dual_col, total_rank, r)
    anchor = list(lie.anchor) + [VectorField.zero(coords) for _ in range(r)]
    total = LSAlgebroid(coords, total_rank, c_total, anchor)
    total_axioms = check_left_symmetric(total)
    report.add("compatible-left-symmetric",
               "double carries the compatible left-symmetric structure",
               total_axioms.passed,
               [w for rec in total_axioms.records for w in rec.witnesses])

    matches = all(frame_commutator(total, i, j) == P.b[i][j]
                  for i in range(total_rank) for j in range(total_rank))
    report.add("sub-adjacent-matches",
               "commutator of the compatible structure is the phase-space "
               "bracket", matches)
    return PhaseCompatible(base, total, report)


@dataclass
class PhaseIso:
    Phi: PolyMatrix
    report: Report


def phase_iso_from_lsa_iso(a1: LSAlgebroid, a2: LSAlgebroid,
                           phi: PolyMatrix) -> PhaseIso:
    """Extend an isomorphism of left-symmetric algebroids to their phase
    spaces as the block map (phi, inverse transpose of phi)."""
    if not check_lsa_homomorphism(a1, a2, phi):
        raise NotIsomorphism("map is not a homomorphism of the structures")
    det = phi.det()
    if not det.is_constant():
        raise NonConstantDeterminant(f"determinant {det} is not constant")
    if det.is_zero():
        raise NotIsomorphism("map is not invertible")
    r = a1.rank
    coords = a1.coords
    contragredient = matrix_inverse_adjugate(phi.transpose())
    blocks = [[phi.entry(i, j) if i < r and j < r else
               contragredient.entry(i - r, j - r) if i >= r and j >= r else
               Poly.zero(coords)
               for j in range(2 * r)] for i in range(2 * r)]
    Phi = PolyMatrix(coords, blocks)

    phase1 = build_phase_space(a1)
    phase2 = build_phase_space(a2)
    report = Report("phase space isomorphism")
    images = [Section(coords, Phi.column(i)) for i in range(2 * r)]

    anchor_ok = all(anchor_of_section(phase2.P, images[i]) ==
                    phase1.P.anchor[i] for i in range(2 * r))
    report.add("anchor-compatible", "anchors correspond under the map",
               anchor_ok)

    bracket_witnesses = []
    for i in range(2 * r):
        for j in range(i + 1, 2 * r):
            lhs = apply_endo(Phi, phase1.P.b[i][j])
            rhs = section_bracket(phase2.P, images[i], images[j])
            if lhs != rhs:
                bracket_witnesses.append(
                    f"(u_{i+1},u_{j+1}): Phi[u,v] = {lhs} but "
                    f"[Phi u, Phi v] = {rhs}")
    report.add("bracket-morphism", "map intertwines the phase-space brackets",
               not bracket_witnesses, bracket_witnesses)

    block_ok = all(Phi.entry(i, j).is_zero()
                   for i in range(2 * r) for j in range(2 * r)
                   if (i < r) != (j < r))
    report.add("maps-subbundles",
               "bundle part maps to bundle part, dual part to dual part",
               block_ok)

    omega_witnesses = []
    for i in range(2 * r):
        for j in range(i + 1, 2 * r):
            lhs = phase1.omega.component((i, j))
            rhs = phase2.omega.evaluate([images[i], images[j]])
            if lhs != rhs:
                omega_witnesses.append(
                    f"(u_{i+1},u_{j+1}): omega_1 = {lhs} but pulled back "
                    f"omega_2 = {rhs}")
    report.add("omega-preserved", "pairing forms correspond under the map",
               not omega_witnesses, omega_witnesses)
    return PhaseIso(Phi, report)


# ---------------------------------------------------------------------------
# Paracomplex, quadratic and complex structures
# ---------------------------------------------------------------------------

def check_paracomplex(lie: LieAlgebroid, endo: PolyMatrix) -> bool:
    """Squares to the identity and has vanishing integrability
    concomitant on frame pairs."""
    if endo.rows != lie.rank or endo.cols != lie.rank:
        raise DimensionMismatch("endomorphism shape mismatch")
    if endo @ endo != PolyMatrix.identity(lie.rank, lie.coords):
        return False
    images = [Section(lie.coords, endo.column(i)) for i in range(lie.rank)]
    for i in range(lie.rank):
        for j in range(i + 1, lie.rank):
            lhs = apply_endo(endo, lie.b[i][j])
            rhs = section_bracket(lie, images[i], lie.frame(j)) \
                + section_bracket(lie, lie.frame(i), images[j]) \
                - apply_endo(endo, section_bracket(lie, images[i], images[j]))
            if lhs != rhs:
                return False
    return True


def _leading_principal_minors(matrix: PolyMatrix) -> list[Fraction]:
    rational = matrix.to_rational()
    minors = []
    for k in range(1, matrix.rows + 1):
        sub = PolyMatrix(matrix.coords,
                         [row[:k] for row in rational[:k]])
        minors.append(sub.det().constant_value())
    return minors


def check_quadratic(alg: LSAlgebroid, form) -> Report:
    """Invariance of a symmetric form under left multiplication.

    Passes when (x.y, z) + (y, x.z) = anchor(x)(y, z) holds on frame
    triples and the determinant is a nonzero constant.  Positive
    definiteness is certified through leading principal minors for
    constant forms and reported as uncertified otherwise.  A
    non-constant determinant cannot certify nondegeneracy and raises.
    """
    matrix = _form_matrix(form)
    if matrix.rows != alg.rank or matrix.cols != alg.rank:
        raise DimensionMismatch("form shape does not match the bundle rank")
    det = matrix.det()
    if not det.is_constant():
        raise NonConstantDeterminant(
            f"determinant {det} is not constant; nondegeneracy uncertifiable")

    report = Report("quadratic structure")
    report.add("symmetric", "form matrix is symmetric",
               matrix == matrix.transpose())

    witnesses = []
    for i in range(alg.rank):
        for j in range(alg.rank):
            for k in range(alg.rank):
                left = Poly.zero(alg.coords)
                for m, comp in enumerate(alg.c[i][j].components):
                    left = left + comp * matrix.entry(m, k)
                for m, comp in enumerate(alg.c[i][k].components):
                    left = left + matrix.entry(j, m) * comp
                right = alg.anchor[i].apply(matrix.entry(j, k))
                if left != right:
                    witnesses.append(
                        f"(e_{i+1},e_{j+1},e_{k+1}): (x.y,z)+(y,x.z) = {left} "
                        f"but a(x)(y,z) = {right}")
    report.add("invariance",
               "(x.y, z) + (y, x.z) = anchor(x)(y, z) on frame triples",
               not witnesses, witnesses)

    report.add("nondegenerate", "determinant is a nonzero constant",
               not det.is_zero(),
               [] if not det.is_zero() else ["det = 0"])

    if matrix.is_constant():
        minors = _leading_principal_minors(matrix)
        positive = all(m > 0 for m in minors)
        report.add("riemannian",
                   "form is positive definite (leading principal minors)",
                   "pass" if positive else "uncertified",
                   [] if positive else
                   [f"minor {k + 1} = {m}" for k, m in enumerate(minors)
                    if m <= 0])
    else:
        report.add("riemannian",
                   "form is positive definite (leading principal minors)",
                   "uncertified", ["form has non-constant entries"])
    return report


def quadratic_kernel_descend(alg: LSAlgebroid, form,
                             kernel_frame: Sequence[Section]) -> bool:
    """Does the form descend to a quadratic Lie algebroid structure on
    the span of the supplied kernel frame?

    Requires anti-commutativity of the product on kernel pairs and the
    bracket-invariance identity for frame sections against kernel pairs.
    """
    quad = check_quadratic(alg, form)
    if not quad.passed:
        raise NotQuadratic("the form is not a quadratic structure")
    matrix = _form_matrix(form)
    for sec in kernel_frame:
        if not anchor_of_section(alg, sec).is_zero():
            raise FrameNotInKernel(
                f"section {sec} has nonzero anchor image", witness=str(sec))

    for x in kernel_frame:
        for y in kernel_frame:
            if not (section_mult(alg, x, y) + section_mult(alg, y, x)).is_zero():
                return False

    def pair(u: Section, v: Section) -> Poly:
        total = Poly.zero(alg.coords)
        for a, ua in enumerate(u.components):
            for b, vb in enumerate(v.components):
                total = total + ua * matrix.entry(a, b) * vb
        return total

    lie = sub_adjacent(alg)
    for i in range(alg.rank):
        x = alg.frame(i)
        for y in kernel_frame:
            for z in kernel_frame:
                lhs = alg.anchor[i].apply(pair(y, z))
                rhs = pair(section_bracket(lie, x, y), z) \
                    + pair(y, section_bracket(lie, x, z))
                if lhs != rhs:
                    return False
    return True


@dataclass
class ComplexStructure:
    J: PolyMatrix
    phase: PhaseSpace
    report: Report


def build_complex_structure(alg: LSAlgebroid, form) -> ComplexStructure:
    """Complex structure on the phase space induced by a quadratic form.

    J sends the bundle part through the form and the dual part through
    its inverse (with a sign).  The report verifies J^2 = -id,
    integrability, anticommutation with the canonical paracomplex
    structure, invariance of the pairing form, and taming positivity
    (certified only for constant positive-definite forms).
    """
    quad = check_quadratic(alg, form)
    if not quad.passed:
        raise NotQuadratic("the form is not a quadratic structure")
    matrix = _form_matrix(form)
    inverse = matrix_inverse_adjugate(matrix)
    r = alg.rank
    coords = alg.coords
    blocks = [[Poly.zero(coords) if (i < r) == (j < r) else
               (-(inverse.entry(i, j - r)) if i < r else matrix.entry(i - r, j))
               for j in range(2 * r)] for i in range(2 * r)]
    J = PolyMatrix(coords, blocks)

    phase = build_phase_space(alg)
    P = phase.P
    report = Report("complex structure on the phase space")

    minus_id = PolyMatrix.identity(2 * r, coords).scale(Fraction(-1))
    report.add("squares-to-minus-id", "J^2 = -id", J @ J == minus_id)

    images = [Section(coords, J.column(i)) for i in range(2 * r)]
    witnesses = []
    for i in range(2 * r):
        for j in range(i + 1, 2 * r):
            lhs = apply_endo(J, P.b[i][j])
            rhs = section_bracket(P, images[i], P.frame(j)) \
                + section_bracket(P, P.frame(i), images[j]) \
                + apply_endo(J, section_bracket(P, images[i], images[j]))
            if lhs != rhs:
                witnesses.append(f"(u_{i+1},u_{j+1})")
    report.add("integrability",
               "J[u,v] = [Ju,v] + [u,Jv] + J[Ju,Jv] on frame pairs",
               not witnesses, witnesses)

    report.add("anticommutes-paracomplex", "JP = -PJ",
               J @ phase.paracomplex == (phase.paracomplex @ J).scale(-1))

    omega_ok = all(phase.omega.evaluate([images[i], images[j]]) ==
                   phase.omega.component((i, j))
                   for i in range(2 * r) for j in range(i + 1, 2 * r))
    report.add("omega-invariance", "omega(Ju, Jv) = omega(u, v)", omega_ok)

    if matrix.is_constant():
        minors = _leading_principal_minors(matrix)
        positive = all(m > 0 for m in minors)
        report.add("taming-positivity",
                   "omega(u, Ju) is positive on nonzero sections",
                   "pass" if positive else "uncertified",
                   [] if positive else ["form is not positive definite"])
    else:
        report.add("taming-positivity",
                   "omega(u, Ju) is positive on nonzero sections",
                   "uncertified", ["form has non-constant entries"])
    return ComplexStructure(J, phase, report)


# ---------------------------------------------------------------------------
# Kernel frames and their representations
# ---------------------------------------------------------------------------

def express_in_frame(frame: Sequence[Section], target: Section) -> list[Poly] | None:
    """Polynomial coordinates of a section in a polynomial frame.

    Works when the frame matrix has a square submatrix with a nonzero
    constant determinant (the solve stays polynomial); the candidate is
    verified symbolically and None is returned when the section lies
    outside the span.
    """
    if not frame:
        return None if not target.is_zero() else []
    coords = target.coords
    cols = len(frame)
    matrix = PolyMatrix(coords,
                        [[frame[alpha].components[i] for alpha in range(cols)]
                         for i in range(target.rank)])
    rows = find_constant_invertible_submatrix(matrix)
    if rows is None:
        raise FrameExpressionError(
            "frame admits no square submatrix with constant nonzero "
            "determinant; cannot solve polynomially")
    sub = PolyMatrix(coords, [[matrix.entry(i, j) for j in range(cols)]
                              for i in rows])
    solution = matrix_inverse_adjugate(sub).matvec(
        [target.components[i] for i in rows])
    candidate = matrix.matvec(solution)
    if tuple(candidate) != target.components:
        return None
    return list(solution)


def ideal_restriction_matrices(alg: LSAlgebroid,
                               kernel_frame: Sequence[Section]) \
        -> tuple[list[PolyMatrix], list[PolyMatrix]]:
    """Matrices of left and right multiplication restricted to the span
    of the kernel frame; raises when the span is not an ideal."""
    coords = alg.coords
    s = len(kernel_frame)
    left = []
    right = []
    for i in range(alg.rank):
        lcols = []
        rcols = []
        for k in kernel_frame:
            product = section_mult(alg, alg.frame(i), k)
            coeffs = express_in_frame(kernel_frame, product)
            if coeffs is None:
                raise NotAnIdeal(
                    f"e_{i+1} * ({k}) = {product} escapes the frame span",
                    witness=str(product))
            lcols.append(coeffs)
            product = section_mult(alg, k, alg.frame(i))
            coeffs = express_in_frame(kernel_frame, product)
            if coeffs is None:
                raise NotAnIdeal(
                    f"({k}) * e_{i+1} = {product} escapes the frame span",
                    witness=str(product))
            rcols.append(coeffs)
        left.append(PolyMatrix(coords,
                               [[lcols[alpha][beta] for alpha in range(s)]
                                for beta in range(s)]))
        right.append(PolyMatrix(coords,
                                [[rcols[alpha][beta] for alpha in range(s)]
                                 for beta in range(s)]))
    return left, right


def kernel_representations(alg: LSAlgebroid,
                           kernel_frame: Sequence[Section]) -> Report:
    """Candidate representations on the span of a kernel frame.

    Always checks the bracket action (adjoint with zero right action);
    when the span is an ideal, also checks left multiplication paired
    with right multiplication.  Frame sections must be annihilated by
    the anchor.
    """
    kernel_frame = list(kernel_frame)
    for sec in kernel_frame:
        if not anchor_of_section(alg, sec).is_zero():
            raise FrameNotInKernel(
                f"section {sec} has nonzero anchor image", witness=str(sec))
    report = Report("kernel representations")
    report.add("kernel-frame", "all frame sections are anchor-annihilated",
               True)
    if not kernel_frame:
        return report

    lie = sub_adjacent(alg)
    s = len(kernel_frame)
    ad_cols: list[list[list[Poly]]] = []
    closes = True
    witness = ""
    for i in range(alg.rank):
        cols = []
        for k in kernel_frame:
            bracket = section_bracket(lie, alg.frame(i), k)
            coeffs = express_in_frame(kernel_frame, bracket)
            if coeffs is None:
                closes = False
                witness = f"[e_{i+1}, {k}] = {bracket} escapes the frame span"
                break
            cols.append(coeffs)
        if not closes:
            break
        ad_cols.append(cols)
    report.add("ad-closes-on-frame",
               "bracket action preserves the span of the kernel frame",
               closes, [witness] if witness else [])
    if closes:
        ad_mats = [PolyMatrix(alg.coords,
                              [[ad_cols[i][alpha][beta] for alpha in range(s)]
                               for beta in range(s)])
                   for i in range(alg.rank)]
        ad_rep = Representation(s, ad_mats)
        report.add("ad-representation",
                   "(kernel; bracket action, 0) is a representation",
                   check_representation_lsa(alg, ad_rep))

    try:
        left, right = ideal_restriction_matrices(alg, kernel_frame)
    except NotAnIdeal as exc:
        report.add("ideal", "the span of the kernel frame is an ideal",
                   False, [str(exc)])
        return report
    report.add("ideal", "the span of the kernel frame is an ideal", True)
    lr_rep = Representation(s, left, right)
    report.add("left-right-representation",
               "(kernel; left multiplication, right multiplication) is a "
               "representation",
               check_representation_lsa(alg, lr_rep))
    return report
