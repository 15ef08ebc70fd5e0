"""Acceptance suite: every criterion runs at exact symbolic equality
(tolerance: exact zero) within its stated time budget and prints one
pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import random
import time
from fractions import Fraction
from test_cohomology import (
    oracle_dense_matrix,
    random_cochain,
    random_multiderivation,
)
from lsakit.cli import main
from lsakit.cohomology import (
    MultiDerivation,
    assemble_point_differential,
    def_d,
    point_cohomology_dims,
    rep_d,
)
from lsakit.constructions import (
    apply_O_operator,
    build_complex_structure,
    build_phase_space,
    check_lie_nijenhuis,
    check_paracomplex,
    check_quadratic,
    check_representation_lie,
    semidirect_lie,
)
from lsakit.core import (
    build_left_mult_rep,
    check_left_symmetric,
    check_lie_algebroid,
    lie_form_d,
    sub_adjacent,
)
from lsakit.deformations import (
    check_equivalence,
    check_nijenhuis,
    trivial_deformation,
)
from lsakit.instances import CORPUS_NAMES, corpus_path, load_corpus
from lsakit.multivector import GradedSampleSpec, check_graded_properties
from lsakit.polyring import Poly, PolyMatrix, rational_kernel_and_rank

VALID_NAMES = tuple(n for n in CORPUS_NAMES if n != "nonexample")


def report_line(number: int, label: str, ok: bool, elapsed: float,
                budget: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} {label}: {status} "
          f"({elapsed:.2f}s / budget {budget:.0f}s)")
    assert ok, f"criterion {number} ({label}) failed"
    assert elapsed < budget, \
        f"criterion {number} exceeded its {budget}s budget ({elapsed:.2f}s)"


def test_criterion_1_axiom_gate():
    ok = True
    worst = 0.0
    for name, expect in (("flat", True), ("action", True)):
        start = time.time()
        passed = check_left_symmetric(load_corpus(name).algebroid).passed
        worst = max(worst, time.time() - start)
        ok = ok and (passed == expect)
    start = time.time()
    report = check_left_symmetric(load_corpus("nonexample").algebroid)
    worst = max(worst, time.time() - start)
    witnesses = [w for rec in report.records for w in rec.witnesses]
    ok = ok and not report.passed
    ok = ok and any("(e_1,e_2,e_2)" in w for w in witnesses)
    report_line(1, "axiom gate", ok, worst, 1.0)


def test_criterion_2_sub_adjacent_theorem():
    start = time.time()
    ok = True
    for name in VALID_NAMES:
        alg = load_corpus(name).algebroid
        lie = sub_adjacent(alg)
        ok = ok and check_lie_algebroid(lie).passed
        ok = ok and check_representation_lie(lie, build_left_mult_rep(alg))
    report_line(2, "sub-adjacent theorem", ok, time.time() - start, 5.0)


def test_criterion_3_graded_lie_admissibility():
    start = time.time()
    spec = GradedSampleSpec(max_grade=3, max_coeff_degree=2)
    ok = True
    for name in ("flat", "point_e1e2"):
        report = check_graded_properties(load_corpus(name).algebroid, spec)
        ok = ok and report.record("lie-admissible").status == "pass"
        ok = ok and report.record("graded-leibniz").status == "pass"
        ok = ok and report.passed
    report_line(3, "graded Lie-admissibility", ok, time.time() - start, 60.0)


def test_criterion_4_phase_space():
    start = time.time()
    ok = True
    for name in VALID_NAMES:
        instance = load_corpus(name)
        phase = build_phase_space(instance.algebroid)
        ok = ok and lie_form_d(phase.P, phase.omega).is_zero()
        ok = ok and check_paracomplex(phase.P, phase.paracomplex)
        if instance.bilinear_form is not None:
            quad = check_quadratic(instance.algebroid, instance.bilinear_form)
            ok = ok and quad.passed
            result = build_complex_structure(instance.algebroid,
                                             instance.bilinear_form)
            for record in ("squares-to-minus-id", "integrability",
                           "anticommutes-paracomplex", "omega-invariance"):
                ok = ok and result.report.record(record).status == "pass"
            if quad.record("riemannian").status == "pass":
                ok = ok and result.report.record(
                    "taming-positivity").status == "pass"
    report_line(4, "phase space", ok, time.time() - start, 30.0)


def test_criterion_5_o_operators():
    start = time.time()
    ok = True
    fixtures = [name for name in VALID_NAMES
                if "T" in load_corpus(name).endomorphisms]
    assert fixtures
    for name in fixtures:
        instance = load_corpus(name)
        alg = instance.algebroid
        lie = sub_adjacent(alg)
        rep = instance.representation or build_left_mult_rep(alg)
        T = instance.endomorphisms["T"]
        result = apply_O_operator(lie, rep, T)
        ok = ok and result.is_O
        ok = ok and check_left_symmetric(result.induced).passed
        ok = ok and bool(result.T_homomorphism)
        product = semidirect_lie(lie, rep)
        r, s = lie.rank, rep.s
        tilde = PolyMatrix(alg.coords,
                           [[T.entry(i, j - r) if i < r and j >= r
                             else Poly.zero(alg.coords)
                             for j in range(r + s)] for i in range(r + s)])
        ok = ok and check_lie_nijenhuis(product, tilde)
    report_line(5, "O-operators", ok, time.time() - start, 10.0)


def test_criterion_6_complexes():
    start = time.time()
    ok = True
    for name in VALID_NAMES:
        alg = load_corpus(name).algebroid
        rep = build_left_mult_rep(alg)
        rng = random.Random(2024)
        degrees = [1, 2, 3] * 7
        for degree in degrees[:20]:
            w = random_cochain(rng, alg, rep.s, degree)
            ok = ok and rep_d(alg, rep, rep_d(alg, rep, w, check=False),
                              check=False).is_zero()
        for degree in ([1, 2] * 10)[:20]:
            D = random_multiderivation(rng, alg, degree)
            dd = def_d(alg, def_d(alg, D))
            ok = ok and not dd.values and not dd.symbols
    report_line(6, "complexes square to zero", ok, time.time() - start, 120.0)


def test_criterion_7_point_cohomology():
    start = time.time()
    ok = True

    zero_pair = load_corpus("zero_r2")
    result = point_cohomology_dims(zero_pair.algebroid,
                                   zero_pair.representation, 3)
    dims = [(d.dim_cohomology) for d in result.degrees]
    ok = ok and dims == [2, 4, 2]

    from helpers import point_algebra
    idem = point_algebra(1, {(0, 0): [1]})
    rep = build_left_mult_rep(idem)
    oracle_ranks = {}
    for degree in (1, 2, 3):
        expected = oracle_dense_matrix(idem, rep, degree)
        actual, domain, _ = assemble_point_differential(idem, rep, degree)
        ok = ok and actual == expected
        rank, kernel = rational_kernel_and_rank(expected, cols=len(domain))
        oracle_ranks[degree] = (rank, len(kernel))
    result = point_cohomology_dims(idem, rep, 3)
    for d in result.degrees:
        rank, nullity = oracle_ranks[d.degree]
        ok = ok and d.dim_cocycles == nullity
        ok = ok and rank + nullity == d.dim_cochains
    report_line(7, "point cohomology", ok, time.time() - start, 10.0)


def test_criterion_8_deformations():
    start = time.time()
    ok = True
    fixtures = []
    for name in VALID_NAMES:
        alg = load_corpus(name).algebroid
        fixtures.append((alg, PolyMatrix.zeros(alg.rank, alg.rank,
                                               alg.coords)))
        fixtures.append((alg, PolyMatrix.identity(alg.rank, alg.coords)))
        fixtures.append((alg, PolyMatrix.identity(alg.rank, alg.coords)
                         .scale(Fraction(5, 7))))
    point = load_corpus("point_e1e2").algebroid
    fixtures.append((point, PolyMatrix((), [[0, 0], [0, 1]])))
    for alg, endo in fixtures:
        ok = ok and check_nijenhuis(alg, endo)
        omega, report = trivial_deformation(alg, endo)
        ok = ok and report.passed
        equivalence = check_equivalence(
            alg, omega, MultiDerivation.zero(alg.coords, alg.rank, 2), endo)
        ok = ok and equivalence.passed
        ok = ok and check_lie_nijenhuis(sub_adjacent(alg), endo)
    report_line(8, "deformations", ok, time.time() - start, 15.0)


def test_criterion_9_determinism(capsys):
    start = time.time()
    ok = True
    for name in VALID_NAMES + ("nonexample",):
        outputs = []
        for _ in range(2):
            main(["verify-all", str(corpus_path(name)), "--no-timestamp"])
            outputs.append(capsys.readouterr().out)
        ok = ok and outputs[0] == outputs[1] and outputs[0]
    elapsed = time.time() - start
    with capsys.disabled():
        report_line(9, "deterministic reports", ok, elapsed, 300.0)
