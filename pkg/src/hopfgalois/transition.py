"""Transition matrices over coset variables and their exact determinants.

Entries of the transition matrix are indices k standing for the indeterminate
y_k ("apply the representative of coset k"); determinants are integer-
coefficient sparse polynomials in y_0 .. y_{m-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapabilityError
from .perm import CosetSpace, RegularSubgroup, opposite

DET_SIZE_BOUND = 8
LEIBNIZ_SIZE_BOUND = 6


def _term_sort_key(exponents: tuple[int, ...]):
    # printing order: total degree, concentration pattern, then lex; all
    # descending, so y0^3 + y1^3 + y2^3 - 3*y0*y1*y2 prints in that order
    return (-sum(exponents),
            tuple(-e for e in sorted(exponents, reverse=True)),
            tuple(-e for e in exponents))


def _division_key(exponents: tuple[int, ...]):
    # graded lex; compatible with monomial multiplication, which the exact
    # division in the fraction-free elimination relies on
    return (-sum(exponents), tuple(-e for e in exponents))


class IntPolynomial:
    """Sparse integer-coefficient polynomial in variables y_0 .. y_{nvars-1}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    clean[tuple(exps)] = clean.get(tuple(exps), 0) + coeff
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "IntPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value: int) -> "IntPolynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "IntPolynomial":
        exps = [0] * nvars
        exps[k] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, nvars: int, exponents, coeff: int = 1) -> "IntPolynomial":
        return cls(nvars, {tuple(exponents): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, IntPolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self):
        return IntPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return IntPolynomial(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(self.nvars,
                                 {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return IntPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        exps = min(self.terms, key=_division_key)
        return exps, self.terms[exps]

    def exact_divide(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient self / divisor when the division is exact; used by the
        fraction-free elimination, where exactness is guaranteed."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = self
        quotient = {}
        d_exps, d_coeff = divisor.leading_term()
        while remainder.terms:
            r_exps, r_coeff = remainder.leading_term()
            q_exps = tuple(a - b for a, b in zip(r_exps, d_exps))
            if any(e < 0 for e in q_exps) or r_coeff % d_coeff:
                raise ArithmeticError("polynomial division is not exact")
            q_coeff = r_coeff // d_coeff
            quotient[q_exps] = quotient.get(q_exps, 0) + q_coeff
            remainder = remainder - divisor * IntPolynomial.monomial(
                self.nvars, q_exps, q_coeff)
        return IntPolynomial(self.nvars, quotient)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _term_sort_key(item[0]))

    def evaluate(self, values, one):
        """Evaluate at ring elements `values`; `one` is that ring's unit."""
        max_exp = [0] * self.nvars
        for exps in self.terms:
            for k, e in enumerate(exps):
                max_exp[k] = max(max_exp[k], e)
        powers = []
        for k, top in enumerate(max_exp):
            row = [one]
            for _ in range(top):
                row.append(row[-1] * values[k])
            powers.append(row)
        total = None
        for exps, coeff in self.terms.items():
            term = None
            for k, e in enumerate(exps):
                if e:
                    term = powers[k][e] if term is None else term * powers[k][e]
            if term is None:
                term = one
            term = coeff * term
            total = term if total is None else total + term
        if total is None:
            return one - one
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for k, e in enumerate(exps):
                if e == 1:
                    factors.append(f"y{k}")
                elif e > 1:
                    factors.append(f"y{k}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"IntPolynomial({self})"


@dataclass(frozen=True)
class CosetVariableMatrix:
    """Matrix of variable indices: row per subgroup element, column per coset."""

    size: int
    rows: tuple[tuple[int, ...], ...]
    row_elements: tuple  # the subgroup elements, in row order

    def row_sorted(self) -> "CosetVariableMatrix":
        order = sorted(range(self.size), key=lambda i: self.rows[i])
        return CosetVariableMatrix(
            self.size,
            tuple(self.rows[i] for i in order),
            tuple(self.row_elements[i] for i in order))


def build_transition_matrix(n: RegularSubgroup, space: CosetSpace) -> CosetVariableMatrix:
    """Entry (eta, g) is the coset index eta(g); symbolically the indeterminate
    standing for "representative of eta(g), applied"."""
    rows = tuple(tuple(eta(g) for g in range(space.size)) for eta in n.elements)
    return CosetVariableMatrix(space.size, rows, tuple(n.elements))


def det_symbolic(matrix: CosetVariableMatrix) -> IntPolynomial:
    """Exact determinant: Leibniz expansion up to size 6, fraction-free
    elimination over the polynomial ring for sizes 7 and 8."""
    m = matrix.size
    if m > DET_SIZE_BOUND:
        raise CapabilityError(
            f"matrix size {m} exceeds the symbolic determinant bound {DET_SIZE_BOUND}")
    if m <= LEIBNIZ_SIZE_BOUND:
        return _det_leibniz(matrix)
    return _det_bareiss(matrix)


def _det_leibniz(matrix: CosetVariableMatrix) -> IntPolynomial:
    m = matrix.size
    terms: dict[tuple[int, ...], int] = {}
    for perm in itertools.permutations(range(m)):
        sign = 1
        seen = [False] * m
        for start in range(m):
            if seen[start]:
                continue
            length = 0
            cur = start
            while not seen[cur]:
                seen[cur] = True
                cur = perm[cur]
                length += 1
            if length % 2 == 0:
                sign = -sign
        exps = [0] * m
        for i in range(m):
            exps[matrix.rows[i][perm[i]]] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + sign
    return IntPolynomial(m, terms)


def _det_bareiss(matrix: CosetVariableMatrix) -> IntPolynomial:
    m = matrix.size
    work = [[IntPolynomial.variable(m, matrix.rows[i][j]) for j in range(m)]
            for i in range(m)]
    sign = 1
    prev = IntPolynomial.constant(m, 1)
    for k in range(m - 1):
        if work[k][k].is_zero():
            swap = next((i for i in range(k + 1, m) if not work[i][k].is_zero()), None)
            if swap is None:
                return IntPolynomial.zero(m)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                work[i][j] = (work[i][j] * pivot
                              - work[i][k] * work[k][j]).exact_divide(prev)
            work[i][k] = IntPolynomial.zero(m)
        prev = pivot
    result = work[m - 1][m - 1]
    return -result if sign < 0 else result


def canonical_det(n: RegularSubgroup, space: CosetSpace) -> IntPolynomial:
    """Determinant of the transition matrix with rows sorted canonically and
    the sign fixed so the leading term is positive; independent of any chosen
    row or column ordering."""
    poly = det_symbolic(build_transition_matrix(n, space).row_sorted())
    if poly.terms:
        _, lead = poly.leading_term()
        if lead < 0:
            poly = -poly
    return poly


def reindexing_witness(n: RegularSubgroup, space: CosetSpace) -> bool:
    """The structural fact behind the determinant identity: relabelling the
    columns of each transition matrix through the simple-transitivity tables
    turns one matrix into the transpose of the other."""
    base = space.base_point
    n_opp = opposite(n, space)
    left = [[eta(etap(base)) for etap in n_opp.elements] for eta in n.elements]
    right = [[etap(eta(base)) for eta in n.elements] for etap in n_opp.elements]
    return all(left[i][j] == right[j][i]
               for i in range(space.size) for j in range(space.size))


def verify_det_identity(n: RegularSubgroup, space: CosetSpace) -> bool:
    """Exact polynomial equality of the canonical transition determinants of N
    and its opposite, plus the row/column reindexing fact used to prove it."""
    if not reindexing_witness(n, space):
        return False
    return canonical_det(n, space) == canonical_det(opposite(n, space), space)
