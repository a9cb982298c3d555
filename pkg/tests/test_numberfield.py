import random
from fractions import Fraction

import pytest

from hopfgalois.errors import StructureError
from hopfgalois.numberfield import (NumberField, check_irreducible,
                                    fixed_subfield, load_field)
from hopfgalois.perm import FiniteGroup, Permutation

from .oracles import multiplication_trace

F = Fraction


def _c2():
    return FiniteGroup.generated_by([Permutation([1, 0])])


# --- field arithmetic

def test_gaussian_arithmetic():
    field = NumberField([1, 0, 1])
    i = field.generator()
    assert (i * i).coords == (F(-1), F(0))
    x = field.element([2, 3])      # 2 + 3i
    y = field.element([1, -1])     # 1 - i
    assert (x * y).coords == (F(5), F(1))
    assert (x / x).coords == (F(1), F(0))


def test_field_axioms_on_random_samples():
    field = NumberField([23, 0, 9, 0, -6, 0, 1])
    rng = random.Random(0)

    def rand():
        return field.element([rng.randint(-9, 9) for _ in range(6)])

    for _ in range(20):
        a, b, c = rand(), rand(), rand()
        assert (a * (b + c)) == (a * b + a * c)
        if a:
            assert (a * a.inverse()).coords == field.one().coords


def test_power_matches_repeated_multiplication():
    field = NumberField([1, 1, 1])
    t = field.generator()
    assert t ** 3 == field.one()
    assert t ** -1 == t * t


# --- irreducibility

def test_rational_root_is_rejected():
    with pytest.raises(StructureError, match="reducible"):
        load_field([-1, 0, 1], _c2(), {1: [0, -1]})


def test_quadratics_and_cubics_without_roots_are_proved():
    assert check_irreducible([1, 0, 1]) is True
    assert check_irreducible([2, 0, 0, 1]) is True


def test_degree_sieve_proves_a_quartic():
    # x^4 + x^3 + x^2 + x + 1 is irreducible mod 2
    assert check_irreducible([1, 1, 1, 1, 1]) is True


def test_sieve_is_inconclusive_for_biquadratic_minimal_polynomial():
    # x^4 - 10x^2 + 1 factors modulo every prime
    assert check_irreducible([1, 0, -10, 0, 1]) is None


def test_inconclusive_without_assertion_is_an_error():
    klein = FiniteGroup.generated_by([Permutation([1, 0, 3, 2]),
                                      Permutation([2, 3, 0, 1])])
    images = {klein.index_of(Permutation([1, 0, 3, 2])): [0, 10, 0, -1],
              klein.index_of(Permutation([2, 3, 0, 1])): [0, -10, 0, 1]}
    with pytest.raises(StructureError, match="assert"):
        load_field([1, 0, -10, 0, 1], klein, images)
    ctx = load_field([1, 0, -10, 0, 1], klein, images, irreducible_asserted=True)
    assert ctx.irreducibility == "asserted"


# --- automorphism validation

def test_gaussian_conjugation():
    group = _c2()
    ctx = load_field([1, 0, 1], group, {group.index_of(Permutation([1, 0])): [0, -1]})
    i = ctx.field.generator()
    sigma = group.index_of(Permutation([1, 0]))
    assert ctx.apply(sigma, i).coords == (F(0), F(-1))
    identity = group.identity_index
    assert ctx.apply(identity, i) == i


def test_invalid_automorphism_is_named():
    group = _c2()
    with pytest.raises(StructureError, match="not a root"):
        load_field([1, 0, 1], group, {group.index_of(Permutation([1, 0])): [0, -2]})


def test_non_galois_duplicate_automorphisms_rejected():
    group = _c2()
    with pytest.raises(StructureError, match="not Galois"):
        load_field([1, 0, 1], group, {group.index_of(Permutation([1, 0])): [0, 1]})


def test_group_order_must_match_the_degree():
    group = _c2()
    with pytest.raises(StructureError, match="degree"):
        load_field([1, 1, 1, 1, 1], group,
                   {group.index_of(Permutation([1, 0])): [0, 0, 0, 1]})


def test_relations_must_hold():
    # C4 declared, but the map t -> -t has order 2: walking the relations
    # gives inconsistent matrices
    c4 = FiniteGroup.generated_by([Permutation([1, 2, 3, 0])])
    gen = c4.index_of(Permutation([1, 2, 3, 0]))
    with pytest.raises(StructureError):
        load_field([1, 1, 1, 1, 1], c4, {gen: [-1, -1, -1, -1]})


def test_composition_is_functorial_on_random_elements(s3sextic):
    ctx = s3sextic.context
    rng = random.Random(1)
    group = ctx.group
    for _ in range(50):
        x = ctx.field.element([rng.randint(-9, 9) for _ in range(6)])
        i = rng.randrange(group.order())
        j = rng.randrange(group.order())
        assert ctx.apply(group.mul(i, j), x) == ctx.apply(i, ctx.apply(j, x))


def test_automorphisms_are_multiplicative(s3sextic):
    ctx = s3sextic.context
    rng = random.Random(2)
    for _ in range(20):
        x = ctx.field.element([rng.randint(-5, 5) for _ in range(6)])
        y = ctx.field.element([rng.randint(-5, 5) for _ in range(6)])
        for g in ctx.group.generators:
            assert ctx.apply(g, x * y) == ctx.apply(g, x) * ctx.apply(g, y)


# --- fixed subfields

def test_trivial_stabilizer_fixes_everything(qi):
    sub = qi.context.fixed_subfield(FiniteGroup.trivial(2))
    assert sub.dim == 2
    assert [b.coords for b in sub.basis] == \
        [(F(1), F(0)), (F(0), F(1))]


def test_full_group_fixes_only_rationals(qi):
    sub = qi.context.fixed_subfield(qi.group)
    assert sub.dim == 1
    assert sub.basis[0].is_rational()


def test_sextic_transposition_fixes_a_cubic_field(s3sextic):
    ctx = s3sextic.context
    t_index = s3sextic.generator_names["t"]
    stab = FiniteGroup.generated_by([ctx.group.elements[t_index]])
    sub = fixed_subfield(ctx, stab)
    assert sub.dim == 3
    # frozen coordinates of a root of x^3 - x - 1 inside the sextic field,
    # from the fixture construction
    theta = ctx.field.element(
        [F(-2, 9), F(1, 2), F(5, 18), 0, F(-1, 18), 0])
    assert sub.contains(theta)
    assert theta * theta * theta - theta - ctx.field.one() == ctx.field.zero()
    powers = [sub.coords(ctx.field.one()), sub.coords(theta),
              sub.coords(theta * theta)]
    from hopfgalois import linalg
    assert linalg.rank(powers) == 3


def test_cbrt_fixture_subfield_is_the_cubic_radical_field(qcbrt2):
    sub = qcbrt2.subfield()
    assert sub.dim == 3
    ctx = qcbrt2.context
    theta = ctx.field.element(
        [2, 1, F(-2, 3), F(2, 3), F(1, 3), F(2, 9)])
    assert sub.contains(theta)
    assert theta * theta * theta == ctx.field.element([2])


def test_coset_application_is_well_defined(qcbrt2):
    ctx = qcbrt2.context
    space = qcbrt2.coset_space()
    sub = qcbrt2.subfield()
    rng = random.Random(3)
    for _ in range(10):
        x = sub.random_element(rng)
        for c, rep in enumerate(space.representatives):
            value = ctx.apply(rep, x)
            for s in space.stabilizer.elements:
                other = space.group.mul(rep, space.group.index_of(s))
                assert ctx.apply(other, x) == value


def test_stabilizer_fixes_the_subfield(qcbrt2):
    ctx = qcbrt2.context
    sub = qcbrt2.subfield()
    rng = random.Random(4)
    for _ in range(10):
        x = sub.random_element(rng)
        for s in qcbrt2.stabilizer.elements:
            assert ctx.apply(ctx.group.index_of(s), x) == x


# --- traces

def test_trace_of_one_is_the_degree(s3sextic):
    ctx = s3sextic.context
    assert ctx.trace(ctx.field.one()) == 6


def test_trace_of_i_is_zero(qi):
    ctx = qi.context
    assert ctx.trace(ctx.field.generator()) == 0


def test_trace_splits_the_rational_inclusion(c4quartic):
    ctx = c4quartic.context
    for c in (F(3), F(-7, 2)):
        assert ctx.trace(ctx.field.from_rational(c)) == 4 * c


def test_trace_matches_multiplication_matrix_oracle(s3sextic):
    ctx = s3sextic.context
    rng = random.Random(5)
    for _ in range(20):
        x = ctx.field.element([rng.randint(-9, 9) for _ in range(6)])
        assert ctx.trace(x) == multiplication_trace(ctx.field, x)
