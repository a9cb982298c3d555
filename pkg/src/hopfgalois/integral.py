"""Integer lattices in rational coordinate spaces, fractional ideals,
associated orders, the bounded freeness search, and the transfer certificate
tying the two commuting structures together."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import ConsistencyError, DomainError, StructureError, TheoremViolationError
from .descent import DescendedAlgebra, is_generator


@dataclass(frozen=True)
class Lattice:
    """Full-rank Z-lattice in Q^m, stored canonically: an integer basis in row
    Hermite normal form together with a common denominator, with the pair
    reduced so gcd(denominator, all entries) is 1."""

    denominator: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rational_rows(cls, rows) -> "Lattice":
        rows = [[Fraction(v) for v in r] for r in rows]
        if not rows:
            raise StructureError("a lattice needs at least one basis vector")
        m = len(rows[0])
        den = 1
        for r in rows:
            for v in r:
                den = den * v.denominator // gcd(den, v.denominator)
        int_rows = [[int(v * den) for v in r] for r in rows]
        reduced = linalg.hnf(int_rows)
        if len(reduced) != m:
            raise ConsistencyError(
                f"lattice has rank {len(reduced)}, expected full rank {m}")
        content = den
        for r in reduced:
            for v in r:
                content = gcd(content, v)
        if content > 1:
            den //= content
            reduced = [[v // content for v in r] for r in reduced]
        return cls(den, tuple(tuple(r) for r in reduced))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis_vectors(self) -> list[list[Fraction]]:
        return [[Fraction(v, self.denominator) for v in r] for r in self.rows]

    def contains(self, vector) -> bool:
        scaled = []
        for v in vector:
            w = Fraction(v) * self.denominator
            if w.denominator != 1:
                return False
            scaled.append(int(w))
        for row in self.rows:
            j = next(i for i, v in enumerate(row) if v)
            if scaled[j]:
                if scaled[j] % row[j]:
                    return False
                q = scaled[j] // row[j]
                for k in range(j, len(scaled)):
                    scaled[k] -= q * row[k]
        return not any(scaled)

    def __le__(self, other: "Lattice") -> bool:
        return all(other.contains(v) for v in self.basis_vectors())

    def __lt__(self, other: "Lattice") -> bool:
        return self <= other and self != other


@dataclass(frozen=True)
class FractionalIdeal:
    """A full-rank lattice in subfield coordinates, verified stable under
    multiplication by every integral-basis element."""

    name: str
    lattice: Lattice

    @classmethod
    def build(cls, name: str, lattice: Lattice, ring_mult_matrices) -> "FractionalIdeal":
        for k, mult in enumerate(ring_mult_matrices):
            for v in lattice.basis_vectors():
                if not lattice.contains(linalg.mat_vec(mult, v)):
                    raise StructureError(
                        f"ideal {name!r} is not stable under integral-basis "
                        f"element {k}")
        return cls(name, lattice)


@dataclass(frozen=True)
class AssociatedOrder:
    """The full multiplier order of an ideal inside a descended algebra, in
    algebra-basis coordinates."""

    lattice: Lattice
    ideal_action_matrices: tuple  # integer action of each lattice basis vector

    def basis_coords(self):
        return self.lattice.basis_vectors()


def _ideal_basis_matrix(ideal: FractionalIdeal):
    vecs = ideal.lattice.basis_vectors()
    m = len(vecs)
    return [[vecs[j][i] for j in range(m)] for i in range(m)]


def associated_order(algebra: DescendedAlgebra, ideal: FractionalIdeal) -> AssociatedOrder:
    """Exact computation of every algebra element mapping the ideal into
    itself: the dual of the row lattice of the rewritten action matrices,
    then verified to be a unital, multiplicatively closed stabilizer."""
    m = algebra.dim
    w = _ideal_basis_matrix(ideal)
    w_inv = linalg.invert(w)
    if w_inv is None:
        raise ConsistencyError("ideal basis is singular")
    rewritten = [linalg.mat_mul(w_inv, linalg.mat_mul(
        [list(r) for r in a], w)) for a in algebra.action_matrices]

    den = 1
    for mat in rewritten:
        for row in mat:
            for v in row:
                den = den * v.denominator // gcd(den, v.denominator)
    stacked = []
    for i in range(m):
        for j in range(m):
            stacked.append([int(mat[i][j] * den) for mat in rewritten])
    reduced = linalg.hnf(stacked)
    if len(reduced) != m:
        raise ConsistencyError(
            "action is degenerate; it cannot come from a Hopf-Galois structure")
    h_fracs = [[Fraction(v) for v in r] for r in reduced]
    h_inv = linalg.invert(h_fracs)
    basis_rows = [[den * h_inv[i][j] for i in range(m)] for j in range(m)]
    lattice = Lattice.from_rational_rows(basis_rows)

    if not lattice.contains(list(algebra.identity_coords)):
        raise ConsistencyError("associated order does not contain the identity")
    basis = lattice.basis_vectors()
    actions = []
    for c in basis:
        mat = linalg.mat_mul(w_inv, linalg.mat_mul(
            algebra.action_matrix_of(c), w))
        ints = []
        for row in mat:
            int_row = []
            for v in row:
                if v.denominator != 1:
                    raise ConsistencyError(
                        "order element does not stabilize the ideal")
                int_row.append(int(v))
            ints.append(int_row)
        actions.append(tuple(tuple(r) for r in ints))
    for a in basis:
        for b in basis:
            if not lattice.contains(algebra.multiply_coords(a, b)):
                raise ConsistencyError(
                    "associated order is not closed under multiplication")
    return AssociatedOrder(lattice, tuple(actions))


@dataclass(frozen=True)
class FreenessResult:
    status: str                    # "FREE" or "UNKNOWN"
    witness_ideal_coords: tuple | None = None
    witness_subfield_coords: tuple | None = None

    @property
    def free(self) -> bool:
        return self.status == "FREE"


def _box_vectors(m: int, bound: int):
    """Integer vectors with sup-norm at most `bound`, in lexicographic order."""
    return itertools.product(range(-bound, bound + 1), repeat=m)


def witness_matrix(order: AssociatedOrder, v):
    """Columns are the ideal-coordinates of (order basis element) . x for the
    candidate x with ideal-coordinates v; integer by construction."""
    m = len(v)
    cols = [[sum(f[i][j] * v[j] for j in range(m)) for i in range(m)]
            for f in order.ideal_action_matrices]
    return [[cols[k][i] for k in range(m)] for i in range(m)]


def is_free_witness(order: AssociatedOrder, v) -> bool:
    return abs(linalg.int_det(witness_matrix(order, v))) == 1


def freeness_search(order: AssociatedOrder, ideal: FractionalIdeal,
                    bound: int = 3) -> FreenessResult:
    """Scan the integer box of ideal-coordinates for an element whose order
    orbit is exactly the ideal; the first (lexicographically smallest) witness
    wins.  An exhausted box is reported as UNKNOWN, never as a refutation."""
    if bound < 1:
        return FreenessResult("UNKNOWN")
    m = len(order.ideal_action_matrices)
    mats = order.ideal_action_matrices
    cols = [[0] * m for _ in range(m)]
    prev = None
    for v in _box_vectors(m, bound):
        if prev is None:
            for k, f in enumerate(mats):
                for i in range(m):
                    cols[k][i] = sum(f[i][j] * v[j] for j in range(m))
        else:
            for j in range(m):
                delta = v[j] - prev[j]
                if delta:
                    for k, f in enumerate(mats):
                        col_k, f_col = cols[k], f
                        for i in range(m):
                            col_k[i] += delta * f_col[i][j]
        prev = v
        if not any(v):
            continue
        matrix = [[cols[k][i] for k in range(m)] for i in range(m)]
        if abs(linalg.int_det(matrix)) == 1:
            hull = linalg.hnf([list(cols[k]) for k in range(m)])
            if len(hull) != m or any(
                    hull[i][j] != (1 if i == j else 0)
                    for i in range(m) for j in range(m)):
                raise ConsistencyError(
                    "unit determinant without lattice equality; witness check "
                    "is inconsistent")
            w = _ideal_basis_matrix(ideal)
            subfield_coords = linalg.mat_vec(w, [Fraction(x) for x in v])
            return FreenessResult("FREE", tuple(v), tuple(subfield_coords))
    return FreenessResult("UNKNOWN")


def transfer_element(algebra: DescendedAlgebra, partner: DescendedAlgebra,
                     a_coords, x) -> list[Fraction]:
    """The unique partner element acting on the generator x exactly as the
    given element does; solves z . x = a . x in the partner's coordinates."""
    if not is_generator(partner, x):
        raise DomainError("transfer needs the witness to generate over the partner")
    xc = partner.subfield.coords(x)
    columns = [partner.act_coords(
        [Fraction(int(i == k)) for i in range(partner.dim)], xc)
        for k in range(partner.dim)]
    solver = linalg.LinearSolver(columns)
    target = algebra.act_coords(list(a_coords), algebra.subfield.coords(x))
    z = solver.solve(target)
    if z is None:
        raise ConsistencyError("transfer system is inconsistent")
    return z


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the two-sided freeness verification for a commuting pair."""

    verdict_main: FreenessResult
    verdict_partner: FreenessResult
    witness_transfers: bool | None      # None when neither side found a witness
    transferred_lattice_matches: bool | None
    commuting_transport_holds: bool | None

    @property
    def consistent(self) -> bool:
        checks = [self.witness_transfers, self.transferred_lattice_matches,
                  self.commuting_transport_holds]
        return all(c is not False for c in checks)


def freeness_certificate(algebra: DescendedAlgebra, partner: DescendedAlgebra,
                         ideal: FractionalIdeal, bound: int = 3) -> CertificateReport:
    """Run the bounded search on both commuting structures and verify that a
    witness on either side is a witness on the other, that the transferred
    order elements span exactly the partner's associated order, and that the
    transport commutes with the order action."""
    order_main = associated_order(algebra, ideal)
    order_partner = associated_order(partner, ideal)
    res_main = freeness_search(order_main, ideal, bound)
    res_partner = freeness_search(order_partner, ideal, bound)

    witness_transfers = None
    lattice_matches = None
    transport_holds = None

    pairs = []
    if res_main.free:
        pairs.append((res_main, order_main, order_partner, algebra, partner))
    if res_partner.free:
        pairs.append((res_partner, order_partner, order_main, partner, algebra))

    for result, order_here, order_there, side_here, side_there in pairs:
        v = list(result.witness_ideal_coords)
        if not is_free_witness(order_there, v):
            raise TheoremViolationError(
                "witness on one side fails on the commuting side; the "
                "freeness equivalence was violated")
        witness_transfers = True

        x = side_here.subfield.from_coords(result.witness_subfield_coords)
        z_rows = [transfer_element(side_here, side_there, a, x)
                  for a in order_here.basis_coords()]
        z_lattice = Lattice.from_rational_rows(z_rows)
        same = z_lattice == order_there.lattice
        lattice_matches = same if lattice_matches is None else (lattice_matches and same)
        if not same:
            raise TheoremViolationError(
                "transferred order elements do not span the partner's "
                "associated order")

        xc_here = side_here.subfield.coords(x)
        basis = order_here.basis_coords()
        ok = True
        for a in basis:
            z = transfer_element(side_here, side_there, a, x)
            z_of_x = side_there.act_coords(z, xc_here)
            for w in basis:
                left = side_there.act_coords(z, side_here.act_coords(w, xc_here))
                right = side_here.act_coords(w, z_of_x)
                if left != right:
                    ok = False
        transport_holds = ok if transport_holds is None else (transport_holds and ok)

    if res_main.free != res_partner.free:
        raise TheoremViolationError(
            "one bounded search found a witness and the other did not, even "
            "though the witness transfers")
    return CertificateReport(res_main, res_partner, witness_transfers,
                             lattice_matches, transport_holds)
