"""Shared instance builders and independent oracles for the test suite."""

import random
from fractions import Fraction

from lsakit.core import (
    FormCochain,
    LieAlgebroid,
    LSAlgebroid,
    Section,
    anchor_of_section,
    section_bracket,
)
from lsakit.polyring import Poly, VectorField, parse_poly


def flat_instance() -> LSAlgebroid:
    """Rank-2 bundle over two coordinates: zero products, anchor sends
    frame section i to the i-th coordinate field."""
    coords = ("x", "y")
    zero = Section.zero(coords, 2)
    c = [[zero, zero], [zero, zero]]
    anchor = [
        VectorField(coords, (Poly.constant(1, coords), Poly.zero(coords))),
        VectorField(coords, (Poly.zero(coords), Poly.constant(1, coords))),
    ]
    return LSAlgebroid(coords, 2, c, anchor)


def point_algebra(rank: int, products: dict) -> LSAlgebroid:
    """Left-symmetric algebra (zero-dimensional base) from a sparse map
    (i, j) -> component list."""
    coords = ()
    c = [[Section.zero(coords, rank) for _ in range(rank)]
         for _ in range(rank)]
    for (i, j), comps in products.items():
        c[i][j] = Section(coords, [Fraction(v) for v in comps])
    anchor = [VectorField.zero(coords) for _ in range(rank)]
    return LSAlgebroid(coords, rank, c, anchor)


def point_e1e2() -> LSAlgebroid:
    """The rank-2 algebra with e_1 * e_2 = e_2 and all other products zero."""
    return point_algebra(2, {(0, 1): [0, 1]})


def zero_point_algebra(rank: int = 2) -> LSAlgebroid:
    return point_algebra(rank, {})


def nonexample() -> LSAlgebroid:
    """e_1 * e_1 = e_2, e_2 * e_2 = e_1: fails associator symmetry."""
    return point_algebra(2, {(0, 0): [0, 1], (1, 1): [1, 0]})


def action_instance() -> LSAlgebroid:
    """Rank 1 over one coordinate: e * e = e, anchor x d/dx."""
    coords = ("x",)
    c = [[Section(coords, [Poly.constant(1, coords)])]]
    anchor = [VectorField(coords, (parse_poly("x", coords),))]
    return LSAlgebroid(coords, 1, c, anchor)


def ladder_instance() -> LSAlgebroid:
    """Rank 2 over one coordinate: e_1 * e_2 = e_2, anchor(e_1) = d/dx,
    anchor(e_2) = 0."""
    coords = ("x",)
    zero = Section.zero(coords, 2)
    e2 = Section(coords, [Poly.zero(coords), Poly.constant(1, coords)])
    c = [[zero, e2], [zero, zero]]
    anchor = [VectorField(coords, (Poly.constant(1, coords),)),
              VectorField.zero(coords)]
    return LSAlgebroid(coords, 2, c, anchor)


def flat_line_rank2() -> LSAlgebroid:
    """Rank 2 over one coordinate with zero products, anchor(e_1) = d/dx."""
    coords = ("x",)
    zero = Section.zero(coords, 2)
    c = [[zero, zero], [zero, zero]]
    anchor = [VectorField(coords, (Poly.constant(1, coords),)),
              VectorField.zero(coords)]
    return LSAlgebroid(coords, 2, c, anchor)


def random_poly(rng: random.Random, coords, max_degree: int = 2,
                max_terms: int = 3) -> Poly:
    n = len(coords)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * n
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            if n == 0:
                break
            exps[rng.randrange(n)] += 1
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(coords, terms)


def random_section(rng: random.Random, alg, max_degree: int = 2) -> Section:
    return Section(alg.coords,
                   [random_poly(rng, alg.coords, max_degree)
                    for _ in range(alg.rank)])


def random_esection(rng: random.Random, coords, s: int,
                    max_degree: int = 2) -> Section:
    return Section(coords,
                   [random_poly(rng, coords, max_degree) for _ in range(s)])


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def six_term_admissibility_oracle(alg: LSAlgebroid) -> bool:
    """Direct six-term alternating sum of products on basis triples,
    written without the library's associator helper."""
    r = alg.rank

    def prod(i, j):
        return alg.c[i][j]

    def prod_sec(sec: Section, k: int) -> Section:
        out = Section.zero(alg.coords, r)
        for m, comp in enumerate(sec.components):
            out = out + prod(m, k).scale(comp)
        return out

    # point case only: products of constant sections need no derivations
    def assoc_direct(i, j, k):
        left = prod_sec(prod(i, j), k)
        inner = prod(j, k)
        right = Section.zero(alg.coords, r)
        for m, comp in enumerate(inner.components):
            right = right + prod(i, m).scale(comp)
        return left - right

    for i in range(r):
        for j in range(r):
            for k in range(r):
                total = assoc_direct(i, j, k) - assoc_direct(j, i, k) \
                    + assoc_direct(j, k, i) - assoc_direct(k, j, i) \
                    + assoc_direct(k, i, j) - assoc_direct(i, k, j)
                if not total.is_zero():
                    return False
    return True


def two_form_d_oracle(alg: LieAlgebroid, form: FormCochain,
                      i: int, j: int, k: int) -> Poly:
    """Six-term coboundary formula for 2-forms, evaluated directly."""
    frames = [alg.frame(m) for m in range(alg.rank)]

    def w(a: Section, b: Section) -> Poly:
        return form.evaluate([a, b])

    x, y, z = frames[i], frames[j], frames[k]
    ax = anchor_of_section(alg, x)
    ay = anchor_of_section(alg, y)
    az = anchor_of_section(alg, z)
    return (ax.apply(w(y, z)) - ay.apply(w(x, z)) + az.apply(w(x, y))
            - w(section_bracket(alg, x, y), z)
            + w(section_bracket(alg, x, z), y)
            - w(section_bracket(alg, y, z), x))
