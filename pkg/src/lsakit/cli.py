"""Command-line interface: axiom checks, derivations, cohomology and
deformation runs over instance files, with deterministic JSON or text
reports.

Exit codes: 0 when every selected check passes, 1 when any check fails,
2 on file, schema or polynomial syntax errors.  Reports go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .cohomology import (
    MultiDerivation,
    RepCochain,
    def_d,
    point_cohomology_dims,
    rep_d,
)
from .constructions import (
    apply_O_operator,
    check_representation_lie,
    build_complex_structure,
    build_phase_space,
    check_lie_nijenhuis,
    check_lsa_homomorphism,
    check_quadratic,
    check_representation_lsa,
    derived_reps,
    action_algebroid,
    kernel_representations,
    phase_iso_from_lsa_iso,
    semidirect_lie,
    semidirect_lsa,
)
from .core import (
    Representation,
    Section,
    build_left_mult_rep,
    check_left_symmetric,
    check_lie_admissible,
    check_lie_algebroid,
    frame_commutator,
    sub_adjacent,
)
from .deformations import (
    check_deformation,
    check_equivalence,
    check_nijenhuis,
    trivial_deformation,
)
from .errors import (
    LsakitError,
    NonConstantDeterminant,
    ParseError,
    SchemaError,
)
from .instances import (
    InstanceFile,
    algebroid_to_dict,
    lie_algebroid_to_dict,
    matrix_to_list,
    parse_instance,
)
from .multivector import GradedSampleSpec, check_graded_properties
from .polyring import Poly, PolyMatrix, VectorField
from .report import Report, UNCERTIFIED

SUITES = ("axioms", "sub-adjacent", "phase-space", "graded",
          "representation", "cohomology", "deformation", "kernel", "all")


def _random_poly(rng: random.Random, coords, max_degree: int = 1) -> Poly:
    n = len(coords)
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exps = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            if n == 0:
                break
            exps[rng.randrange(n)] += 1
        coeff = Fraction(rng.randint(-3, 3))
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(coords, terms)


def _random_cochain(rng, alg, s, degree) -> RepCochain:
    from itertools import combinations
    comps = {}
    for lead in combinations(range(alg.rank), degree - 1):
        for last in range(alg.rank):
            sec = Section(alg.coords,
                          [_random_poly(rng, alg.coords) for _ in range(s)])
            if not sec.is_zero():
                comps[(lead, last)] = sec
    return RepCochain(alg.coords, alg.rank, s, degree, comps)


def _random_multiderivation(rng, alg, degree) -> MultiDerivation:
    from itertools import combinations
    values = {}
    symbols = {}
    for lead in combinations(range(alg.rank), degree - 1):
        for last in range(alg.rank):
            sec = Section(alg.coords,
                          [_random_poly(rng, alg.coords)
                           for _ in range(alg.rank)])
            if not sec.is_zero():
                values[(lead, last)] = sec
        field = VectorField(alg.coords,
                            [_random_poly(rng, alg.coords)
                             for _ in alg.coords])
        if not field.is_zero():
            symbols[lead] = field
    return MultiDerivation(alg.coords, alg.rank, degree, values, symbols)


def _instance_rep(instance: InstanceFile) -> Representation:
    if instance.representation is not None:
        return instance.representation
    return build_left_mult_rep(instance.algebroid)


def run_suite(instance: InstanceFile, suite: str = "all", *, seed: int = 0,
              max_degree: int = 3, paper_literal: bool = False,
              graded_grade: int = 2, graded_coeff_degree: int = 1) -> Report:
    """Execute the selected family of checks against an instance."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    alg = instance.algebroid
    report = Report(instance.name)

    def wants(name: str) -> bool:
        return suite in (name, "all")

    axioms = check_left_symmetric(alg)
    report.merge(axioms, prefix="axioms/")
    if alg.is_point():
        report.add("axioms/lie-admissible",
                   "six-term alternating associator sum vanishes on basis "
                   "triples", check_lie_admissible(alg))
    if not axioms.passed:
        return report
    if suite == "axioms":
        return report

    lie = sub_adjacent(alg)
    if wants("sub-adjacent"):
        report.merge(check_lie_algebroid(lie), prefix="sub-adjacent/")
        report.add("sub-adjacent/left-mult-rep",
                   "left multiplication represents the commutator bracket",
                   check_representation_lie(lie, build_left_mult_rep(alg)))

    if wants("phase-space"):
        phase = build_phase_space(alg)
        report.merge(phase.report, prefix="phase-space/")
        if instance.bilinear_form is not None:
            try:
                quad = check_quadratic(alg, instance.bilinear_form)
            except NonConstantDeterminant as err:
                report.add("quadratic/nondegenerate",
                           "determinant is a nonzero constant",
                           UNCERTIFIED, [str(err)])
            else:
                report.merge(quad, prefix="quadratic/")
                if quad.passed:
                    complex_result = build_complex_structure(
                        alg, instance.bilinear_form)
                    report.merge(complex_result.report, prefix="complex/")

    if wants("graded"):
        spec = GradedSampleSpec(max_grade=graded_grade,
                                max_coeff_degree=graded_coeff_degree)
        report.merge(check_graded_properties(alg, spec), prefix="graded/")

    if wants("representation") and instance.representation is not None:
        rep = instance.representation
        valid = check_representation_lsa(alg, rep)
        report.add("representation/valid",
                   "(rho, mu) satisfies the representation identities", valid)
        if valid:
            derived = derived_reps(alg, rep)
            report.add("representation/derived-equivalences",
                       "the three dual-representation conditions agree",
                       len(set(derived.equivalences)) == 1,
                       [f"conditions = {derived.equivalences}"])
            product = semidirect_lsa(alg, rep)
            report.add("representation/semidirect-valid",
                       "semidirect product passes the axioms",
                       check_left_symmetric(product).passed)
            diff = Representation(rep.s, [r - m for r, m in
                                          zip(rep.rho_mat, rep.mu_mat)])
            expected = semidirect_lie(lie, diff)
            matches = all(
                frame_commutator(product, i, j) == expected.b[i][j]
                for i in range(product.rank) for j in range(product.rank))
            report.add("representation/semidirect-commutator",
                       "commutator of the semidirect product is the "
                       "semidirect bracket by rho - mu", matches)

    if wants("deformation"):
        for name in sorted(instance.endomorphisms):
            if not name.startswith("N"):
                continue
            endo = instance.endomorphisms[name]
            is_nij = check_nijenhuis(alg, endo, paper_literal=paper_literal)
            report.add(f"nijenhuis-{name}/condition",
                       "endomorphism satisfies the Nijenhuis condition",
                       is_nij)
            if is_nij and not paper_literal:
                _, trivial_report = trivial_deformation(alg, endo)
                report.merge(trivial_report, prefix=f"nijenhuis-{name}/")
                report.add(f"nijenhuis-{name}/lie-implication",
                           "operator is also Nijenhuis for the commutator "
                           "bracket", check_lie_nijenhuis(lie, endo))
        if instance.deformation is not None:
            report.merge(check_deformation(alg, instance.deformation),
                         prefix="deformation/")

    if wants("cohomology"):
        rep = _instance_rep(instance)
        rng = random.Random(seed)
        rep_failures = []
        for degree in (1, 2):
            for _ in range(3):
                w = _random_cochain(rng, alg, rep.s, degree)
                if not rep_d(alg, rep, rep_d(alg, rep, w, check=False),
                             check=False).is_zero():
                    rep_failures.append(f"degree {degree} sample")
        report.add("cohomology/rep-d-squared",
                   "representation differential squares to zero on seeded "
                   "samples", not rep_failures, rep_failures)
        def_failures = []
        for degree in (1, 2):
            for _ in range(3):
                D = _random_multiderivation(rng, alg, degree)
                if not def_d(alg, def_d(alg, D)).is_zero():
                    def_failures.append(f"degree {degree} sample")
        report.add("cohomology/def-d-squared",
                   "deformation differential squares to zero on seeded "
                   "samples (values and symbols)", not def_failures,
                   def_failures)
        if alg.is_point() and instance.representation is not None:
            result = point_cohomology_dims(alg, instance.representation,
                                           max_degree)
            dims = [f"degree {d.degree}: cochains {d.dim_cochains}, "
                    f"cocycles {d.dim_cocycles}, coboundaries "
                    f"{d.dim_coboundaries}, cohomology {d.dim_cohomology}"
                    for d in result.degrees]
            dims.append(f"degree-0 space {result.c0_dim}, closed "
                        f"{result.c0_closed_dim}")
            report.add("cohomology/point-dims",
                       "cohomology dimensions over the point base computed "
                       "exactly", True, dims)

    if wants("kernel") and instance.kernel_frame:
        report.merge(kernel_representations(alg, instance.kernel_frame),
                     prefix="kernel/")

    if wants("all") and "T" in instance.endomorphisms:
        rep = _instance_rep(instance)
        result = apply_O_operator(lie, rep, instance.endomorphisms["T"])
        report.add("o-operator/condition",
                   "operator intertwines the action with the bracket",
                   result.is_O, result.witnesses)
        if result.is_O:
            report.add("o-operator/induced-axioms",
                       "induced structure passes the axioms",
                       check_left_symmetric(result.induced).passed)
            report.add("o-operator/homomorphism",
                       "operator maps the induced commutator to the bracket",
                       bool(result.T_homomorphism))
            product = semidirect_lie(lie, rep)
            T = instance.endomorphisms["T"]
            r, s = lie.rank, rep.s
            tilde = PolyMatrix(alg.coords,
                               [[T.entry(i, j - r)
                                 if i < r and j >= r else Poly.zero(alg.coords)
                                 for j in range(r + s)] for i in range(r + s)])
            report.add("o-operator/tilde-nijenhuis",
                       "block extension is Nijenhuis on the semidirect "
                       "product", check_lie_nijenhuis(product, tilde))

    if wants("all") and "phi" in instance.endomorphisms:
        phi = instance.endomorphisms["phi"]
        is_hom = check_lsa_homomorphism(alg, alg, phi)
        report.add("phase-iso/homomorphism",
                   "named map is an endomorphism of the structure", is_hom)
        det = phi.det()
        if is_hom and det.is_constant() and not det.is_zero():
            iso = phase_iso_from_lsa_iso(alg, alg, phi)
            report.merge(iso.report, prefix="phase-iso/")
    return report


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

def derive(instance: InstanceFile, what: str) -> dict:
    alg = instance.algebroid
    if what == "sub-adjacent":
        return lie_algebroid_to_dict(sub_adjacent(alg))
    if what == "phase-space":
        phase = build_phase_space(alg)
        return {
            "phase_space": lie_algebroid_to_dict(phase.P),
            "omega": [[str(phase.omega.component((i, j)))
                       for j in range(phase.P.rank)]
                      for i in range(phase.P.rank)],
            "paracomplex": matrix_to_list(phase.paracomplex),
            "closed": phase.report.record("omega-closed").status,
        }
    if what == "semidirect":
        if instance.representation is None:
            raise SchemaError("representation",
                              "semidirect derivation needs a representation "
                              "block")
        return algebroid_to_dict(semidirect_lsa(alg, instance.representation))
    if what == "action":
        if instance.action is None:
            raise SchemaError("action",
                              "action derivation needs an action block")
        block = instance.action
        built = action_algebroid(block.algebra, block.vector_fields,
                                 block.coordinates)
        return algebroid_to_dict(built)
    raise ValueError(f"unknown derivation {what!r}")


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _payload(instance: InstanceFile, report: Report,
             timestamp: bool) -> dict:
    payload = {
        "tool": "lsakit",
        "version": __version__,
        "instance": instance.name,
        "digest": instance.digest,
    }
    if timestamp:
        payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    payload["status"] = "pass" if report.passed else "fail"
    payload["checks"] = [rec.to_dict() for rec in report.records]
    return payload


def _emit(payload: dict, report: Report | None, fmt: str) -> None:
    if fmt == "text" and report is not None:
        print(report.render_text())
        print(f"overall: {payload['status']}")
    else:
        print(json.dumps(payload, indent=2))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsakit",
        description="verify and derive left-symmetric algebroid structures")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="instance file (JSON)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized property samples")
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the timestamp field from reports")
        p.add_argument("--max-degree", type=int, default=3)
        p.add_argument("--paper-literal", action="store_true",
                       help="evaluate the literal printed Nijenhuis variant")

    p = sub.add_parser("check", help="axiom gate")
    common(p)

    p = sub.add_parser("derive", help="run one construction")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--sub-adjacent", action="store_true")
    group.add_argument("--phase-space", action="store_true")
    group.add_argument("--semidirect", action="store_true")
    group.add_argument("--action", action="store_true")

    p = sub.add_parser("cohomology", help="cochain complex checks")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--point", action="store_true",
                       help="exact dimensions over a point base")
    group.add_argument("--cocycle", action="store_true",
                       help="is the deformation block closed?")
    group.add_argument("--coboundary", metavar="NAME",
                       help="is the deformation block the differential of "
                            "the named endomorphism?")

    p = sub.add_parser("deform", help="deformation checks")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nijenhuis", metavar="NAME",
                       help="check the named endomorphism and its trivial "
                            "deformation")
    group.add_argument("--deformation", action="store_true",
                       help="check the deformation block")
    group.add_argument("--equivalence", metavar="NAME",
                       help="check equivalence of the deformation blocks "
                            "through the named endomorphism")

    p = sub.add_parser("verify-all", help="every applicable check")
    common(p)
    return parser


def _named_endo(instance: InstanceFile, name: str) -> PolyMatrix:
    if name not in instance.endomorphisms:
        raise SchemaError(f"endomorphisms.{name}", "missing")
    return instance.endomorphisms[name]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        instance = parse_instance(args.file)
    except (SchemaError, ParseError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2

    timestamp = not args.no_timestamp
    try:
        if args.command == "check":
            report = run_suite(instance, "axioms", seed=args.seed)
        elif args.command == "verify-all":
            report = run_suite(instance, "all", seed=args.seed,
                               max_degree=args.max_degree,
                               paper_literal=args.paper_literal)
        elif args.command == "derive":
            what = ("sub-adjacent" if args.sub_adjacent else
                    "phase-space" if args.phase_space else
                    "semidirect" if args.semidirect else "action")
            try:
                derived = derive(instance, what)
            except SchemaError as err:
                print(f"error: {err}", file=sys.stderr)
                return 2
            payload = {
                "tool": "lsakit",
                "version": __version__,
                "instance": instance.name,
                "digest": instance.digest,
            }
            if timestamp:
                payload["timestamp"] = datetime.now(timezone.utc).isoformat()
            payload["derived"] = derived
            print(json.dumps(payload, indent=2))
            return 0
        elif args.command == "cohomology":
            report = Report(instance.name)
            alg = instance.algebroid
            if args.point:
                suite_report = run_suite(instance, "cohomology",
                                         seed=args.seed,
                                         max_degree=args.max_degree)
                report = suite_report
            elif args.cocycle:
                if instance.deformation is None:
                    print("error: deformation: missing", file=sys.stderr)
                    return 2
                report.add("cocycle",
                           "deformation differential of the candidate "
                           "vanishes",
                           def_d(alg, instance.deformation).is_zero())
            else:
                if instance.deformation is None:
                    print("error: deformation: missing", file=sys.stderr)
                    return 2
                endo = _named_endo(instance, args.coboundary)
                image = def_d(alg,
                              MultiDerivation.from_endomorphism(alg, endo))
                report.add("coboundary",
                           "candidate equals the differential of the named "
                           "endomorphism",
                           instance.deformation == image)
        else:  # deform
            alg = instance.algebroid
            report = Report(instance.name)
            if args.nijenhuis:
                endo = _named_endo(instance, args.nijenhuis)
                is_nij = check_nijenhuis(alg, endo,
                                         paper_literal=args.paper_literal)
                report.add("nijenhuis-condition",
                           "endomorphism satisfies the Nijenhuis condition",
                           is_nij)
                if is_nij and not args.paper_literal:
                    _, trivial_report = trivial_deformation(alg, endo)
                    report.merge(trivial_report)
            elif args.deformation:
                if instance.deformation is None:
                    print("error: deformation: missing", file=sys.stderr)
                    return 2
                report = check_deformation(alg, instance.deformation)
            else:
                if instance.deformation is None:
                    print("error: deformation: missing", file=sys.stderr)
                    return 2
                endo = _named_endo(instance, args.equivalence)
                prime = instance.deformation_prime
                if prime is None:
                    prime = MultiDerivation.zero(alg.coords, alg.rank, 2)
                report = check_equivalence(alg, instance.deformation, prime,
                                           endo)
    except SchemaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except LsakitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    payload = _payload(instance, report, timestamp)
    _emit(payload, report, args.format)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
