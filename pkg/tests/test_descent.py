import random
from fractions import Fraction

import pytest

from hopfgalois import linalg
from hopfgalois.descent import (GroupAlgebraElement, MapAlgebraElement,
                                canonical_map_rank_for, descend,
                                embed_in_map_algebra, galois_act_on_map,
                                generates_fixed_map_algebra,
                                generates_map_algebra_over_group_algebra,
                                idempotent, is_generator, is_separable,
                                permutation_act_on_map, sum_over_subgroup,
                                transition_matrix_values,
                                trace_form_nondegenerate, verify_commuting,
                                verify_hopf_galois)
from hopfgalois.errors import DomainError, StructureError
from hopfgalois.perm import (FiniteGroup, Permutation, RegularSubgroup,
                             build_coset_space, left_translation_embedding,
                             opposite, right_translation_subgroup)

F = Fraction


def _opposite_index(fx, i):
    structs = fx.structures()
    opp = opposite(structs[i], fx.coset_space())
    return next(j for j, n in enumerate(structs) if n == opp)


# --- the function algebra and the embedding

def test_embedding_of_one_is_the_unit(qcbrt2):
    ctx, space, sub = qcbrt2.context, qcbrt2.coset_space(), qcbrt2.subfield()
    f = embed_in_map_algebra(ctx, space, sub, ctx.field.one())
    assert all(v == ctx.field.one() for v in f.values)


def test_embedding_is_multiplicative_on_random_elements(qcbrt2):
    ctx, space, sub = qcbrt2.context, qcbrt2.coset_space(), qcbrt2.subfield()
    rng = random.Random(0)
    for _ in range(25):
        x, y = sub.random_element(rng), sub.random_element(rng)
        fx = embed_in_map_algebra(ctx, space, sub, x)
        fy = embed_in_map_algebra(ctx, space, sub, y)
        fxy = embed_in_map_algebra(ctx, space, sub, x * y)
        assert fx * fy == fxy
        assert embed_in_map_algebra(ctx, space, sub, x + y) == fx + fy


def test_embedding_of_rationals_is_scalar(s3sextic):
    ctx, space, sub = s3sextic.context, s3sextic.coset_space(), s3sextic.subfield()
    c = ctx.field.from_rational(F(7, 2))
    f = embed_in_map_algebra(ctx, space, sub, c)
    assert all(v == c for v in f.values)


def test_embedding_rejects_unfixed_elements(qcbrt2):
    ctx, space, sub = qcbrt2.context, qcbrt2.coset_space(), qcbrt2.subfield()
    with pytest.raises(DomainError):
        embed_in_map_algebra(ctx, space, sub, ctx.field.generator())


def test_embedded_elements_are_fixed_by_the_combined_action(qcbrt2):
    ctx, space, sub = qcbrt2.context, qcbrt2.coset_space(), qcbrt2.subfield()
    rng = random.Random(1)
    for _ in range(10):
        f = embed_in_map_algebra(ctx, space, sub, sub.random_element(rng))
        for g in ctx.group.generators:
            assert galois_act_on_map(ctx, space, g, f) == f


def test_subgroup_action_permutes_idempotents(s3sextic):
    ctx, space = s3sextic.context, s3sextic.coset_space()
    for n in s3sextic.structures():
        for eta in n.elements:
            for c in range(space.size):
                u = idempotent(ctx, space.size, c)
                assert permutation_act_on_map(eta, u) == \
                    idempotent(ctx, space.size, eta(c))


# --- descent

def test_classical_descent_recovers_the_rational_group_algebra(s3sextic):
    space = s3sextic.coset_space()
    rho = right_translation_subgroup(space)
    index = next(i for i, n in enumerate(s3sextic.structures()) if n == rho)
    algebra = s3sextic.algebra(index)
    assert algebra.dim == 6
    # every basis coefficient is rational: the conjugation action is trivial
    for b in algebra.basis:
        rational = [c for c in b.coefficients if c]
        assert all(c.is_rational() for c in rational)
        assert len(rational) == 1
    # action matrices are exactly the Galois matrices in the power basis
    ctx = s3sextic.context
    base = space.base_point
    table = rho.build_point_map(base)
    for b, mat in zip(algebra.basis, algebra.action_matrices):
        eta = next(e for e, c in zip(rho.elements, b.coefficients) if c)
        coset = eta.inverse()(base)
        g = space.representatives[coset]
        assert [list(r) for r in mat] == ctx.matrices[g]


def test_translation_structure_basis_is_conjugacy_orbit_sums(s3sextic):
    space = s3sextic.coset_space()
    lam = s3sextic.translation_embedding()
    lam_reg = RegularSubgroup(lam.maps, space.size)
    index = next(i for i, n in enumerate(s3sextic.structures()) if n == lam_reg)
    algebra = s3sextic.algebra(index)
    assert algebra.dim == 6
    # the support of each basis element is a single conjugacy orbit
    group = lam_reg.as_group()
    classes = [frozenset(c) for c in group.conjugacy_classes()]
    for b in algebra.basis:
        support = frozenset(eta for eta, c in
                            zip(lam_reg.elements, b.coefficients) if c)
        assert any(support <= cls for cls in classes)


def test_descended_dimension_for_the_cubic_shape(qcbrt2):
    algebra = qcbrt2.algebra(0)
    assert algebra.dim == 3


def test_descend_rejects_unnormalized_subgroups(c4quartic):
    space = c4quartic.coset_space()
    lam = c4quartic.translation_embedding()
    stray = RegularSubgroup(
        [Permutation([0, 1, 2, 3]), Permutation([1, 3, 0, 2]),
         Permutation([3, 2, 1, 0]), Permutation([2, 0, 3, 1])], 4)
    with pytest.raises(StructureError, match="not normalized"):
        descend(c4quartic.context, space, lam, stray, c4quartic.subfield())


# --- the descended action

def test_sum_over_subgroup_acts_as_the_trace(s3sextic):
    ctx = s3sextic.context
    algebra = s3sextic.algebra(0)
    rng = random.Random(2)
    for _ in range(10):
        x = algebra.subfield.random_element(rng)
        acted = algebra.act(sum_over_subgroup(algebra), x)
        assert acted == ctx.field.from_rational(ctx.trace(x))


def test_classical_action_is_the_galois_action(qi):
    ctx = qi.context
    space = qi.coset_space()
    rho = right_translation_subgroup(space)
    index = next(i for i, n in enumerate(qi.structures()) if n == rho)
    algebra = qi.algebra(index)
    base = space.base_point
    rng = random.Random(3)
    for _ in range(10):
        x = algebra.subfield.random_element(rng)
        for b in algebra.basis:
            eta = next(e for e, c in zip(rho.elements, b.coefficients) if c)
            g = space.representatives[eta.inverse()(base)]
            assert algebra.act(b, x) == ctx.apply(g, x)


def test_identity_acts_as_identity(v4biquad):
    algebra = v4biquad.algebra(0)
    unit = algebra.element_from_coords(algebra.identity_coords)
    rng = random.Random(4)
    for _ in range(30):
        x = algebra.subfield.random_element(rng)
        assert algebra.act(unit, x) == x


def test_action_is_bilinear(qcbrt2):
    algebra = qcbrt2.algebra(0)
    rng = random.Random(5)
    sub = algebra.subfield
    for _ in range(10):
        a = [F(rng.randint(-5, 5)) for _ in range(algebra.dim)]
        b = [F(rng.randint(-5, 5)) for _ in range(algebra.dim)]
        xc = sub.coords(sub.random_element(rng))
        left = algebra.act_coords([ai + bi for ai, bi in zip(a, b)], xc)
        right = [u + v for u, v in zip(algebra.act_coords(a, xc),
                                       algebra.act_coords(b, xc))]
        assert left == right


# --- verification predicates

def test_hopf_galois_holds_for_every_structure(field_fixtures):
    for fx in field_fixtures:
        for i in range(len(fx.structures())):
            assert verify_hopf_galois(fx.algebra(i))


def test_zero_action_is_not_hopf_galois(qi):
    algebra = qi.algebra(0)
    m = algebra.subfield.dim
    zero = tuple(tuple(tuple(F(0) for _ in range(m)) for _ in range(m))
                 for _ in range(algebra.dim))
    assert canonical_map_rank_for(zero, algebra.subfield) == 0


def test_commuting_characterizes_opposites(s3sextic):
    structs = s3sextic.structures()
    for i in range(len(structs)):
        for j in range(len(structs)):
            expected = _opposite_index(s3sextic, i) == j
            assert verify_commuting(s3sextic.algebra(i),
                                    s3sextic.algebra(j)) == expected


def test_commutative_algebra_commutes_with_itself(qzeta3):
    algebra = qzeta3.algebra(0)
    assert verify_commuting(algebra, algebra)


def test_separability_of_every_structure(field_fixtures):
    for fx in field_fixtures:
        for i in range(len(fx.structures())):
            assert is_separable(fx.algebra(i))


def test_nilpotent_algebra_fails_the_separability_test():
    # Q[e]/(e^2): left multiplications by 1 and e
    one = [[F(1), F(0)], [F(0), F(1)]]
    eps = [[F(0), F(0)], [F(1), F(0)]]
    assert not trace_form_nondegenerate([one, eps])


# --- generators

def test_one_is_not_a_generator_beyond_degree_one(c4quartic):
    algebra = c4quartic.algebra(0)
    assert not is_generator(algebra, c4quartic.context.field.one())


def test_classical_normal_basis_element_for_the_gaussians(qi):
    ctx = qi.context
    algebra = qi.algebra(0)
    x = ctx.field.element([1, 1])  # 1 + i and its conjugate span the field
    assert is_generator(algebra, x)


def test_generator_transfer_on_samples(s3sextic):
    rng = random.Random(6)
    sub = s3sextic.subfield()
    pairs = sorted({tuple(sorted((i, _opposite_index(s3sextic, i))))
                    for i in range(len(s3sextic.structures()))})
    for _ in range(25):
        x = sub.random_element(rng)
        for i, j in pairs:
            assert is_generator(s3sextic.algebra(i), x) == \
                is_generator(s3sextic.algebra(j), x)


def test_generator_matches_numeric_transition_determinant(qcbrt2):
    ctx = qcbrt2.context
    space = qcbrt2.coset_space()
    algebra = qcbrt2.algebra(0)
    rng = random.Random(7)
    for _ in range(20):
        x = algebra.subfield.random_element(rng)
        numeric = transition_matrix_values(ctx, space, algebra.subgroup, x)
        assert is_generator(algebra, x) == bool(linalg.det(numeric))


def test_function_algebra_generator_lemma(qcbrt2):
    # f_x generates the descended form over the descended algebra exactly when
    # it generates the whole function algebra over the group algebra
    ctx, space, sub = qcbrt2.context, qcbrt2.coset_space(), qcbrt2.subfield()
    algebra = qcbrt2.algebra(0)
    rng = random.Random(8)
    for _ in range(50):
        x = sub.random_element(rng)
        f = embed_in_map_algebra(ctx, space, sub, x)
        over_group_algebra = generates_map_algebra_over_group_algebra(algebra, f)
        over_descended = generates_fixed_map_algebra(algebra, f)
        assert over_group_algebra == over_descended
        assert over_descended == is_generator(algebra, x)


# --- structure constants

def test_multiplication_closes_with_rational_constants(s3sextic):
    algebra = s3sextic.algebra(1)
    rng = random.Random(9)
    for _ in range(5):
        a = [F(rng.randint(-3, 3)) for _ in range(algebra.dim)]
        b = [F(rng.randint(-3, 3)) for _ in range(algebra.dim)]
        via_constants = algebra.multiply_coords(a, b)
        ea = algebra.element_from_coords(a)
        eb = algebra.element_from_coords(b)
        assert algebra.coords_of(ea * eb) == via_constants


def test_unit_coordinates_multiply_neutrally(v4biquad):
    algebra = v4biquad.algebra(1)
    one = list(algebra.identity_coords)
    rng = random.Random(10)
    a = [F(rng.randint(-5, 5)) for _ in range(algebra.dim)]
    assert algebra.multiply_coords(one, a) == a
    assert algebra.multiply_coords(a, one) == a
