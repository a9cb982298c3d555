"""Exact arithmetic in E = Q[t]/(f), Galois automorphisms as Q-linear maps,
fixed subfields, and traces.  No floating point anywhere."""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import ConsistencyError, DomainError, StructureError
from .perm import FiniteGroup

MAX_DEGREE = 12
_SIEVE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class NumberField:
    """The field Q[t]/(f) for a monic integer polynomial f, with elements in
    power-basis coordinates."""

    __slots__ = ("modulus", "degree", "_reduction")

    def __init__(self, modulus):
        coeffs = [int(c) for c in modulus]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise StructureError("minimal polynomial must have degree at least 1")
        if coeffs[-1] != 1:
            raise StructureError("minimal polynomial must be monic")
        self.modulus = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if self.degree > MAX_DEGREE:
            raise StructureError(
                f"degree {self.degree} exceeds the supported bound {MAX_DEGREE}")
        # t^(n+k) mod f for k = 0 .. n-2, as coordinate rows
        n = self.degree
        rows = []
        current = [Fraction(-c) for c in self.modulus[:-1]]
        rows.append(list(current))
        for _ in range(n - 2):
            shifted = [Fraction(0)] + current[:-1]
            top = current[-1]
            current = [s + top * r for s, r in zip(shifted, rows[0])]
            rows.append(list(current))
        self._reduction = rows

    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            coords = self._reduce(coords)
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def generator(self) -> "FieldElement":
        return self.element([0, 1])

    def from_rational(self, value) -> "FieldElement":
        return self.element([Fraction(value)])

    def _reduce(self, coords):
        n = self.degree
        out = list(coords[:n])
        out += [Fraction(0)] * (n - len(out))
        for k in range(n, len(coords)):
            c = coords[k]
            if c:
                row = self._reduction[k - n]
                for i in range(n):
                    out[i] += c * row[i]
        return out

    def multiplication_matrix(self, x: "FieldElement"):
        """Matrix of y -> x*y in the power basis (columns are x * t^j)."""
        cols = []
        cur = x
        t = self.generator()
        for _ in range(self.degree):
            cols.append(cur.coords)
            cur = cur * t
        return [[cols[j][i] for j in range(self.degree)] for i in range(self.degree)]

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField(degree={self.degree})"


class FieldElement:
    """Element of a NumberField with exact rational power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def __add__(self, other):
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        n = self.field.degree
        conv = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        conv[i + j] += a * b
        return FieldElement(self.field, tuple(self.field._reduce(conv)))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        matrix = self.field.multiplication_matrix(self)
        inv = linalg.invert(matrix)
        if inv is None:
            raise ConsistencyError(
                "nonzero element has singular multiplication matrix; "
                "the modulus is not irreducible")
        one = [Fraction(0)] * self.field.degree
        one[0] = Fraction(1)
        return FieldElement(self.field, tuple(linalg.mat_vec(inv, one)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inverse()

    def __pow__(self, k: int):
        result = self.field.one()
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.modulus, self.coords))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return self.coords[0]

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]})"


def _poly_eval_mod(f_coeffs, x: FieldElement) -> FieldElement:
    acc = x.field.zero()
    for c in reversed(f_coeffs):
        acc = acc * x + x.field.from_rational(c)
    return acc


def _rational_roots(coeffs) -> list[int]:
    # monic integer polynomial: rational roots are integers dividing a0
    a0 = coeffs[0]
    if a0 == 0:
        return [0]
    roots = []
    d = 1
    while d * d <= abs(a0):
        if a0 % d == 0:
            for cand in {d, -d, a0 // d, -(a0 // d)}:
                acc = 0
                for c in reversed(coeffs):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
        d += 1
    return sorted(set(roots))


def _poly_mod_p(coeffs, p):
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _polymul_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _polymod_p(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        if factor:
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - factor * c) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _polygcd_p(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _polymod_p(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _factor_degrees_mod_p(coeffs, p):
    """Multiset of irreducible factor degrees of a squarefree poly mod p, via
    distinct-degree splitting; None when the reduction is not usable."""
    f = _poly_mod_p(coeffs, p)
    if len(f) != len(coeffs):
        return None  # leading coefficient vanished (cannot happen: monic)
    deriv = [(i * c) % p for i, c in enumerate(f)][1:]
    while deriv and deriv[-1] == 0:
        deriv.pop()
    if not deriv or len(_polygcd_p(f, deriv, p)) > 1:
        return None  # not squarefree mod p
    degrees = []
    work = list(f)
    xq = [0, 1]  # x
    d = 0
    while len(work) > 1:
        d += 1
        if d > (len(work) - 1) // 2:
            degrees.extend([len(work) - 1])
            break
        # xq := xq^p mod work
        acc = [1]
        base = list(xq)
        e = p
        while e:
            if e & 1:
                acc = _polymod_p(_polymul_p(acc, base, p), work, p)
            base = _polymod_p(_polymul_p(base, base, p), work, p)
            e >>= 1
        xq = acc
        diff = list(xq)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        g = _polygcd_p(work, diff, p)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            quotient = _poly_divexact_p(work, g, p)
            work = quotient
            xq = _polymod_p(xq, work, p) if len(work) > 1 else [0]
    return degrees


def _poly_divexact_p(a, b, p):
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        out[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return out


def check_irreducible(coeffs) -> bool | None:
    """True when irreducibility over Q is proved, None when the small-prime
    factor-degree sieve is inconclusive.  Raises on a detected factorization
    (rational root)."""
    coeffs = [int(c) for c in coeffs]
    n = len(coeffs) - 1
    if n == 1:
        return True
    roots = _rational_roots(coeffs)
    if roots:
        raise StructureError(
            f"polynomial is reducible: rational root {roots[0]}")
    if n <= 3:
        return True  # no root and degree <= 3
    possible = set(range(1, n))
    usable = 0
    for p in _SIEVE_PRIMES:
        degrees = _factor_degrees_mod_p(coeffs, p)
        if degrees is None:
            continue
        usable += 1
        achievable = {0}
        for d in degrees:
            achievable |= {a + d for a in achievable}
        possible &= achievable
        if not possible:
            return True
        if usable >= 6:
            break
    return None


class GaloisContext:
    """A number field together with a faithful action of a finite group by
    verified field automorphisms."""

    __slots__ = ("field", "group", "matrices", "irreducibility")

    def __init__(self, field, group, matrices, irreducibility):
        self.field = field
        self.group = group
        self.matrices = matrices
        self.irreducibility = irreducibility

    @property
    def degree(self) -> int:
        return self.field.degree

    def apply(self, g_index: int, x: FieldElement) -> FieldElement:
        return FieldElement(
            self.field, tuple(linalg.mat_vec(self.matrices[g_index], x.coords)))

    def trace(self, x: FieldElement) -> Fraction:
        total = self.field.zero()
        for i in range(self.group.order()):
            total = total + self.apply(i, x)
        return total.rational_value()

    def fixed_subfield(self, stabilizer: FiniteGroup) -> "Subfield":
        return fixed_subfield(self, stabilizer)


def load_field(modulus, group: FiniteGroup, generator_images: dict[int, list],
               irreducible_asserted: bool = False) -> GaloisContext:
    """Validate a field descriptor: irreducibility of f, that each generator
    image is a root of f, that the induced maps satisfy the group's relations,
    and that the automorphisms are |G| distinct maps."""
    field = NumberField(modulus)
    if group.order() != field.degree:
        raise StructureError(
            f"group order {group.order()} differs from the field degree "
            f"{field.degree}; the field cannot be Galois with this group")
    proved = check_irreducible(list(field.modulus))
    if proved is None and not irreducible_asserted:
        raise StructureError(
            "irreducibility is inconclusive at this degree; the descriptor "
            "must assert it explicitly")
    irreducibility = "proved" if proved else "asserted"

    gen_matrices = {}
    for g_index, image_coords in generator_images.items():
        image = field.element(image_coords)
        value = _poly_eval_mod(field.modulus, image)
        if value:
            raise StructureError(
                f"invalid automorphism for generator index {g_index}: "
                "its image of t is not a root of the minimal polynomial")
        cols = []
        power = field.one()
        for _ in range(field.degree):
            cols.append(power.coords)
            power = power * image
        gen_matrices[g_index] = [[cols[j][i] for j in range(field.degree)]
                                 for i in range(field.degree)]

    for g in group.generators:
        if g not in gen_matrices:
            raise StructureError(
                f"no automorphism supplied for generator index {g}")

    n = field.degree
    matrices: dict[int, list] = {group.identity_index: linalg.identity_matrix(n)}
    frontier = [group.identity_index]
    while frontier:
        nxt = []
        for i in frontier:
            for g in group.generators:
                j = group.mul(i, g)
                candidate = linalg.mat_mul(matrices[i], gen_matrices[g])
                if j in matrices:
                    if not linalg.mat_eq(matrices[j], candidate):
                        raise StructureError(
                            "automorphism images do not satisfy the group's "
                            f"multiplication table at element index {j}")
                else:
                    matrices[j] = candidate
                    nxt.append(j)
        frontier = nxt
    if len(matrices) != group.order():
        raise StructureError("generators do not generate the whole group")
    distinct = {tuple(tuple(row) for row in m) for m in matrices.values()}
    if len(distinct) != group.order():
        raise StructureError(
            f"only {len(distinct)} distinct automorphisms for a group of order "
            f"{group.order()}; the field is not Galois with this group")
    ordered = tuple(matrices[i] for i in range(group.order()))
    return GaloisContext(field, group, ordered, irreducibility)


class Subfield:
    """A Q-basis of the subfield fixed by a subgroup, with exact coordinate
    solving relative to that basis."""

    __slots__ = ("context", "stabilizer", "basis", "dim", "_solver")

    def __init__(self, context: GaloisContext, stabilizer: FiniteGroup, basis):
        self.context = context
        self.stabilizer = stabilizer
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self._solver = linalg.LinearSolver([list(b.coords) for b in self.basis])

    def coords(self, x: FieldElement):
        c = self._solver.solve(list(x.coords))
        if c is None:
            raise DomainError("element does not lie in the fixed subfield")
        return c

    def contains(self, x: FieldElement) -> bool:
        return self._solver.solve(list(x.coords)) is not None

    def from_coords(self, coords) -> FieldElement:
        total = self.context.field.zero()
        for c, b in zip(coords, self.basis):
            total = total + b * Fraction(c)
        return total

    def multiplication_matrix(self, x: FieldElement):
        """Matrix of y -> x*y on the subfield, in subfield coordinates."""
        cols = [self.coords(x * b) for b in self.basis]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def random_element(self, rng, low: int = -9, high: int = 9) -> FieldElement:
        return self.from_coords([rng.randint(low, high) for _ in range(self.dim)])


def fixed_subfield(context: GaloisContext, stabilizer: FiniteGroup) -> Subfield:
    """Exact kernel of (g - id) over the stabilizer's generators; its dimension
    must be the index [G : G_L]."""
    for p in stabilizer.elements:
        if p not in context.group:
            raise StructureError(
                f"stabilizer element {p} does not belong to the group")
    n = context.degree
    stacked = []
    for p_idx in sorted({context.group.index_of(stabilizer.elements[g])
                         for g in stabilizer.generators}):
        m = context.matrices[p_idx]
        for i in range(n):
            row = list(m[i])
            row[i] = row[i] - 1
            stacked.append([Fraction(v) for v in row])
    kernel = linalg.kernel_basis(stacked, n)
    expected = context.group.order() // stabilizer.order()
    if len(kernel) != expected:
        raise ConsistencyError(
            f"fixed subfield has dimension {len(kernel)}, expected {expected}; "
            "automorphism data is inconsistent")
    basis = [FieldElement(context.field, tuple(v)) for v in kernel]
    return Subfield(context, stabilizer, basis)
