"""The function algebra on the coset space, Galois descent of group algebras,
the descended action on the fixed subfield, and the verification predicates
built on it (Hopf-Galois property, commuting actions, generators, separability).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import ConsistencyError, DomainError, StructureError
from .numberfield import FieldElement, GaloisContext, Subfield
from .perm import (CosetSpace, LambdaEmbedding, Permutation, RegularSubgroup,
                   is_normalized_by)


def coset_apply(context: GaloisContext, space: CosetSpace, coset: int,
                x: FieldElement) -> FieldElement:
    """Apply the canonical minimal representative of a coset to x.  For x in
    the fixed subfield this does not depend on the representative."""
    result = context.apply(space.representatives[coset], x)
    if __debug__:
        stab = space.stabilizer
        rep = space.representatives[coset]
        for s in stab.generators:
            other = space.group.mul(rep, space.group.index_of(stab.elements[s]))
            assert space.coset_of[other] == coset
    return result


class MapAlgebraElement:
    """Element of the function algebra Map(X, E): one coefficient per coset,
    multiplied pointwise; the indicator functions are the idempotent basis."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = tuple(values)

    def __add__(self, other):
        return MapAlgebraElement(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other):
        return MapAlgebraElement(a - b for a, b in zip(self.values, other.values))

    def __mul__(self, other):
        return MapAlgebraElement(a * b for a, b in zip(self.values, other.values))

    def scale(self, c: FieldElement) -> "MapAlgebraElement":
        return MapAlgebraElement(c * v for v in self.values)

    def __eq__(self, other):
        return isinstance(other, MapAlgebraElement) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"MapAlgebraElement({list(self.values)})"


def idempotent(context: GaloisContext, size: int, coset: int) -> MapAlgebraElement:
    values = [context.field.zero()] * size
    values[coset] = context.field.one()
    return MapAlgebraElement(values)


def embed_in_map_algebra(context: GaloisContext, space: CosetSpace,
                         subfield: Subfield, x: FieldElement) -> MapAlgebraElement:
    """x -> sum over cosets of (representative applied to x) times the coset's
    idempotent; an exact algebra embedding of the fixed subfield."""
    if not subfield.contains(x):
        raise DomainError("element is not fixed by the stabilizer")
    return MapAlgebraElement(
        coset_apply(context, space, c, x) for c in range(space.size))


def permutation_act_on_map(eta: Permutation, f: MapAlgebraElement) -> MapAlgebraElement:
    """The subgroup action that permutes idempotent subscripts."""
    values = list(f.values)
    out = [None] * len(values)
    for g, v in enumerate(values):
        out[eta(g)] = v
    return MapAlgebraElement(out)


def galois_act_on_map(context: GaloisContext, space: CosetSpace, g_index: int,
                      f: MapAlgebraElement) -> MapAlgebraElement:
    """The group action on Map(X, E): Galois on values, left translation on
    subscripts."""
    lam_images = [space.coset_of[space.group.mul(g_index, space.representatives[c])]
                  for c in range(space.size)]
    out = [None] * space.size
    for c, v in enumerate(f.values):
        out[lam_images[c]] = context.apply(g_index, v)
    return MapAlgebraElement(out)


class GroupAlgebraElement:
    """Element of E[N]: one field coefficient per subgroup element, indexed in
    the subgroup's canonical element order."""

    __slots__ = ("subgroup", "coefficients")

    def __init__(self, subgroup: RegularSubgroup, coefficients):
        self.subgroup = subgroup
        self.coefficients = tuple(coefficients)

    def __add__(self, other):
        return GroupAlgebraElement(
            self.subgroup,
            (a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        elems = self.subgroup.elements
        index = {p: i for i, p in enumerate(elems)}
        out = [self.coefficients[0].field.zero() for _ in elems]
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                if not b:
                    continue
                out[index[elems[i] * elems[j]]] += a * b
        return GroupAlgebraElement(self.subgroup, out)

    def act_on_map(self, f: MapAlgebraElement) -> MapAlgebraElement:
        """sum of c_eta times (eta acting on f)."""
        total = None
        for eta, c in zip(self.subgroup.elements, self.coefficients):
            if not c:
                continue
            piece = permutation_act_on_map(eta, f).scale(c)
            total = piece if total is None else total + piece
        if total is None:
            zero = self.coefficients[0].field.zero()
            return MapAlgebraElement([zero] * len(f.values))
        return total

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebraElement)
                and self.subgroup == other.subgroup
                and self.coefficients == other.coefficients)

    def __repr__(self):
        return f"GroupAlgebraElement({list(self.coefficients)})"


@dataclass(frozen=True, eq=False)
class DescendedAlgebra:
    """The rational form of E[N] under the simultaneous Galois action, carried
    with its exact action matrices on a fixed basis of the fixed subfield."""

    context: GaloisContext
    space: CosetSpace
    subgroup: RegularSubgroup
    subfield: Subfield
    basis: tuple[GroupAlgebraElement, ...]
    action_matrices: tuple[tuple[tuple[Fraction, ...], ...], ...]
    identity_coords: tuple[Fraction, ...]
    structure_constants: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def action_matrix_of(self, coords):
        m = self.subfield.dim
        out = [[Fraction(0)] * m for _ in range(m)]
        for c, mat in zip(coords, self.action_matrices):
            if c:
                for i in range(m):
                    row = mat[i]
                    for j in range(m):
                        if row[j]:
                            out[i][j] += Fraction(c) * row[j]
        return out

    def element_from_coords(self, coords) -> GroupAlgebraElement:
        total = None
        for c, b in zip(coords, self.basis):
            piece = GroupAlgebraElement(
                self.subgroup, (v * Fraction(c) for v in b.coefficients))
            total = piece if total is None else total + piece
        return total

    def coords_of(self, element: GroupAlgebraElement):
        flat = []
        for c in element.coefficients:
            flat.extend(c.coords)
        solver = linalg.LinearSolver(
            [_flatten(b) for b in self.basis])
        coords = solver.solve([Fraction(v) for v in flat])
        if coords is None:
            raise DomainError("element does not lie in the descended algebra")
        return coords

    def multiply_coords(self, a, b):
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                for k, c in enumerate(self.structure_constants[i][j]):
                    if c:
                        out[k] += Fraction(ai) * Fraction(bj) * c
        return out

    def left_multiplication_matrices(self):
        m = self.dim
        mats = []
        for i in range(m):
            mat = [[self.structure_constants[i][j][k] for j in range(m)]
                   for k in range(m)]
            mats.append(mat)
        return mats

    def act(self, h: GroupAlgebraElement, x: FieldElement) -> FieldElement:
        """The descended action: sum of c_eta times (representative of
        eta^{-1}(base)) applied to x.  The result must land in the subfield."""
        base = self.space.base_point
        total = self.context.field.zero()
        for eta, c in zip(self.subgroup.elements, h.coefficients):
            if not c:
                continue
            coset = eta.inverse()(base)
            total = total + c * coset_apply(self.context, self.space, coset, x)
        if not self.subfield.contains(total):
            raise ConsistencyError("action left the fixed subfield")
        return total

    def act_coords(self, h_coords, x_coords):
        return linalg.mat_vec(self.action_matrix_of(h_coords), list(x_coords))


def _flatten(element: GroupAlgebraElement):
    flat = []
    for c in element.coefficients:
        flat.extend(c.coords)
    return [Fraction(v) for v in flat]


def descend(context: GaloisContext, space: CosetSpace, lam: LambdaEmbedding,
            n: RegularSubgroup, subfield: Subfield) -> DescendedAlgebra:
    """Exact fixed points of the simultaneous action (Galois on coefficients,
    translation-conjugation on the subgroup) inside E[N], with action matrices
    on the chosen subfield basis."""
    if not is_normalized_by(n, lam):
        raise StructureError(
            "subgroup is not normalized by the translation image; "
            "it does not descend")
    m = space.size
    nf_degree = context.degree
    dim = m * nf_degree
    elems = n.elements
    index = {p: i for i, p in enumerate(elems)}

    stacked = []
    for g in space.group.generators:
        lam_g = lam.of(g)
        lam_g_inv = lam_g.inverse()
        conj = [index[lam_g * eta * lam_g_inv] for eta in elems]
        mg = context.matrices[g]
        big = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(m):
            ti = conj[i]
            for r in range(nf_degree):
                row = big[ti * nf_degree + r]
                for c in range(nf_degree):
                    row[i * nf_degree + c] = mg[r][c]
        for r in range(dim):
            big[r][r] -= 1
            stacked.append(big[r])
    kernel = linalg.kernel_basis(stacked, dim)
    if len(kernel) != m:
        raise ConsistencyError(
            f"descended algebra has dimension {len(kernel)}, expected {m}")

    basis = []
    for vec in kernel:
        coeffs = [FieldElement(context.field,
                               tuple(vec[i * nf_degree: (i + 1) * nf_degree]))
                  for i in range(m)]
        basis.append(GroupAlgebraElement(n, coeffs))

    # full E[N] is recovered over E: the basis must have full rank over E
    e_matrix = [list(b.coefficients) for b in basis]
    if linalg.det(e_matrix) == context.field.zero():
        raise ConsistencyError("descended basis does not span E[N] over E")

    base = space.base_point
    action_matrices = []
    acting_cosets = [eta.inverse()(base) for eta in elems]
    for b in basis:
        cols = []
        for lb in subfield.basis:
            total = context.field.zero()
            for c, coset in zip(b.coefficients, acting_cosets):
                if c:
                    total = total + c * coset_apply(context, space, coset, lb)
            try:
                cols.append(subfield.coords(total))
            except DomainError:
                raise ConsistencyError(
                    "descended action does not preserve the fixed subfield")
        action_matrices.append(tuple(
            tuple(cols[j][i] for j in range(m)) for i in range(m)))

    solver = linalg.LinearSolver([_flatten(b) for b in basis])
    one = [context.field.zero()] * m
    one[index[_identity_of(n)]] = context.field.one()
    unit = GroupAlgebraElement(n, one)
    identity_coords = solver.solve(_flatten(unit))
    if identity_coords is None:
        raise ConsistencyError("unit of the group algebra escaped the descent")

    structure = []
    for bi in basis:
        row = []
        for bj in basis:
            coords = solver.solve(_flatten(bi * bj))
            if coords is None:
                raise ConsistencyError(
                    "descended algebra is not closed under multiplication")
            row.append(tuple(coords))
        structure.append(tuple(row))

    return DescendedAlgebra(
        context, space, n, subfield, tuple(basis),
        tuple(action_matrices), tuple(identity_coords), tuple(structure))


def _identity_of(n: RegularSubgroup) -> Permutation:
    for p in n.elements:
        if p.is_identity():
            return p
    raise StructureError("regular subgroup has no identity element")


def verify_hopf_galois(algebra: DescendedAlgebra) -> bool:
    """Bijectivity of the canonical map L (x) H -> End(L): the m^2 x m^2 exact
    matrix of y -> b_i * (h_k . y) must have full rank."""
    return _canonical_map_rank(algebra.action_matrices, algebra.subfield) \
        == algebra.subfield.dim ** 2


def _canonical_map_rank(action_matrices, subfield: Subfield) -> int:
    m = subfield.dim
    mult_mats = [subfield.multiplication_matrix(b) for b in subfield.basis]
    columns = []
    for mm in mult_mats:
        for act in action_matrices:
            prod = linalg.mat_mul(mm, [list(r) for r in act])
            columns.append([prod[i][j] for j in range(m) for i in range(m)])
    return linalg.rank(columns)


def canonical_map_rank_for(action_matrices, subfield: Subfield) -> int:
    """Rank of the canonical map for arbitrary action matrices; lets negative
    controls (for example the zero action) reuse the same computation."""
    return _canonical_map_rank(action_matrices, subfield)


def verify_commuting(a1: DescendedAlgebra, a2: DescendedAlgebra) -> bool:
    """Exact commutation of every pair of basis action matrices."""
    for m1 in a1.action_matrices:
        r1 = [list(r) for r in m1]
        for m2 in a2.action_matrices:
            r2 = [list(r) for r in m2]
            if not linalg.mat_eq(linalg.mat_mul(r1, r2), linalg.mat_mul(r2, r1)):
                return False
    return True


def transition_matrix_values(context: GaloisContext, space: CosetSpace,
                             n: RegularSubgroup, x: FieldElement):
    """The numeric transition matrix: entry (eta, g) is eta(g)-representative
    applied to x."""
    values = [coset_apply(context, space, c, x) for c in range(space.size)]
    return [[values[eta(g)] for g in range(space.size)] for eta in n.elements]


def is_generator(algebra: DescendedAlgebra, x: FieldElement) -> bool:
    """Whether the orbit of x under the descended algebra spans the subfield.
    Computed two ways (exact rank of the orbit, nonvanishing of the numeric
    transition determinant); the two must agree."""
    xc = algebra.subfield.coords(x)
    orbit = [algebra.act_coords(
        [Fraction(int(i == k)) for i in range(algebra.dim)], xc)
        for k in range(algebra.dim)]
    by_rank = linalg.rank(orbit) == algebra.subfield.dim
    numeric = transition_matrix_values(
        algebra.context, algebra.space, algebra.subgroup, x)
    by_det = bool(linalg.det(numeric))
    if by_rank != by_det:
        raise ConsistencyError(
            "orbit rank and transition determinant disagree on a generator test")
    return by_rank


def trace_form_nondegenerate(left_mult_matrices) -> bool:
    """Semisimplicity test in characteristic zero: the trace form of the left
    regular representation must be nondegenerate."""
    m = len(left_mult_matrices)
    gram = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            prod = linalg.mat_mul(left_mult_matrices[i], left_mult_matrices[j])
            tr = sum((prod[k][k] for k in range(m)), Fraction(0))
            gram[i][j] = tr
            gram[j][i] = tr
    return bool(linalg.det(gram))


def is_separable(algebra: DescendedAlgebra) -> bool:
    return trace_form_nondegenerate(algebra.left_multiplication_matrices())


def sum_over_subgroup(algebra: DescendedAlgebra) -> GroupAlgebraElement:
    """The element with every coefficient 1; always survives the descent."""
    one = algebra.context.field.one()
    return GroupAlgebraElement(
        algebra.subgroup, [one] * len(algebra.subgroup.elements))


def generates_map_algebra_over_group_algebra(
        algebra: DescendedAlgebra, f: MapAlgebraElement) -> bool:
    """Whether E[N] f = Map(X, E): exact rank over E of the orbit of f under
    the subgroup elements."""
    rows = [list(permutation_act_on_map(eta, f).values)
            for eta in algebra.subgroup.elements]
    return bool(linalg.det(rows))


def generates_fixed_map_algebra(algebra: DescendedAlgebra,
                                f: MapAlgebraElement) -> bool:
    """Whether the descended algebra's orbit of f spans the rational form of
    the function algebra: exact rank over Q."""
    rows = []
    for b in algebra.basis:
        moved = b.act_on_map(f)
        flat = []
        for v in moved.values:
            flat.extend(v.coords)
        rows.append([Fraction(c) for c in flat])
    return linalg.rank(rows) == algebra.dim
