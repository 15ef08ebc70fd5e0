"""lsakit: exact symbolic toolkit for left-symmetric algebroids over
polynomial coordinate rings.

Everything is computed over the rationals with decidable equality:
axiom checks, sub-adjacent structures, representations, O-operators,
phase spaces with para/complex/quadratic geometry, the graded calculus
on multivectors, both cochain complexes, and Nijenhuis-driven
deformations.
"""

__version__ = "0.1.0"

from .cohomology import (
    MultiDerivation,
    PointCohomology,
    RepCochain,
    check_c0,
    def_d,
    evaluate_on_sections,
    point_cohomology_dims,
    rep_d,
    rep_d0,
)
from .constructions import (
    BilinearForm,
    action_algebroid,
    apply_O_operator,
    build_complex_structure,
    build_phase_space,
    check_lie_nijenhuis,
    check_paracomplex,
    check_quadratic,
    check_representation_lie,
    check_representation_lsa,
    derived_reps,
    dual_rep,
    kernel_representations,
    lsa_from_phase,
    phase_iso_from_lsa_iso,
    quadratic_kernel_descend,
    semidirect_lie,
    semidirect_lsa,
)
from .core import (
    FormCochain,
    LieAlgebroid,
    LSAlgebroid,
    Representation,
    Section,
    build_left_mult_rep,
    check_left_symmetric,
    check_lie_admissible,
    check_lie_algebroid,
    check_lsa_homomorphism,
    lie_form_d,
    section_bracket,
    section_mult,
    sub_adjacent,
)
from .deformations import (
    FORMAL,
    check_deformation,
    check_equivalence,
    check_nijenhuis,
    deformed_algebroid,
    trivial_deformation,
)
from .instances import InstanceFile, corpus_path, load_corpus, parse_instance
from .multivector import (
    GradedSampleSpec,
    Multivector,
    check_graded_properties,
    graded_bracket,
    graded_product,
    wedge,
)
from .polyring import (
    Poly,
    PolyMatrix,
    Rational,
    VectorField,
    matrix_inverse_adjugate,
    parse_poly,
    partial_derivative,
    rational_kernel_and_rank,
    set_degree_limit,
    vf_apply,
    vf_bracket,
)
from .report import Report
