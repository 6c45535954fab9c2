"""Fundamental group presentations and integer abelianization.

For a closed orientable cone-only signature with genus g and cone orders
p_1, ..., p_k the group is

    < a_1, b_1, ..., a_g, b_g, x_1, ..., x_k |
      x_j^{p_j}  (j = 1..k),  [a_1,b_1]...[a_g,b_g] x_1 ... x_k >

Its abelianization is computed from the Smith normal form of the relator
exponent matrix; all integer arithmetic is arbitrary precision.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .signature import PreconditionError, Signature

Word = tuple[tuple[str, int], ...]


class InternalInconsistencyError(RuntimeError):
    """A computed value contradicts a structural guarantee; a bug, not input."""


@dataclass(frozen=True)
class Presentation:
    handle_pairs: int
    cone_gens: tuple[tuple[str, int], ...]
    relators: tuple[Word, ...]

    @property
    def generators(self) -> tuple[str, ...]:
        names = []
        for j in range(1, self.handle_pairs + 1):
            names.append(f"a{j}")
            names.append(f"b{j}")
        names.extend(name for name, _ in self.cone_gens)
        return tuple(names)


class IntegerMatrix(tuple):
    """Immutable rectangular integer matrix as a tuple of row tuples."""

    def __new__(cls, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged rows")
        return super().__new__(cls, rows)

    @property
    def rows(self) -> int:
        return len(self)

    @property
    def cols(self) -> int:
        return len(self[0]) if self else 0


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    left_transform: IntegerMatrix
    right_transform: IntegerMatrix


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...]


def presentation_of_closed(sig: Signature) -> Presentation:
    """Presentation of the orbifold fundamental group of a reduced signature."""
    if not sig.is_reduced:
        raise PreconditionError("presentation needs a closed orientable cone-only signature")
    g, cones = sig.genus, sig.cones
    cone_gens = tuple((f"x{j + 1}", p) for j, p in enumerate(cones))
    relators: list[Word] = [((name, 1),) * p for name, p in cone_gens]
    long_relator: list[tuple[str, int]] = []
    for j in range(1, g + 1):
        long_relator += [(f"a{j}", 1), (f"b{j}", 1), (f"a{j}", -1), (f"b{j}", -1)]
    long_relator += [(name, 1) for name, _ in cone_gens]
    if long_relator:
        relators.append(tuple(long_relator))
    return Presentation(g, cone_gens, tuple(relators))


def relation_matrix(p: Presentation) -> IntegerMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    index = {name: i for i, name in enumerate(p.generators)}
    rows = []
    for word in p.relators:
        row = [0] * len(index)
        for name, sign in word:
            row[index[name]] += sign
        rows.append(row)
    return IntegerMatrix(rows)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _det(matrix: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t] != 0:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Smith normal form with verified unimodular transforms.

    Returns D with left * m * right = D, D diagonal, each diagonal entry
    nonnegative and dividing the next.  Pivots are chosen by smallest
    nonzero absolute value to bound entry growth.
    """
    r, c = m.rows, m.cols
    a = [list(row) for row in m]
    left = _identity(r)
    right = _identity(c)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    for t in range(min(r, c)):
        while True:
            # Move the smallest nonzero entry of the trailing block to (t, t).
            pivot = None
            best = 0
            for i in range(t, r):
                for j in range(t, c):
                    v = abs(a[i][j])
                    if v and (pivot is None or v < best):
                        pivot, best = (i, j), v
            if pivot is None:
                break
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            if a[t][t] < 0:
                negate_row(t)
            # Clear row and column t; remainders re-enter the pivot hunt.
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            if any(a[i][t] for i in range(t + 1, r)) or any(a[t][j] for j in range(t + 1, c)):
                continue
            # Enforce divisibility into the trailing block.
            fixed = True
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if a[i][j] % a[t][t]:
                        add_row(t, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break

    diagonal = tuple(a[i][i] for i in range(min(r, c)))
    form = SmithForm(diagonal, IntegerMatrix(left), IntegerMatrix(right))
    _check_smith(m, form)
    return form


def _check_smith(m: IntegerMatrix, form: SmithForm) -> None:
    r, c = m.rows, m.cols
    left, right = form.left_transform, form.right_transform
    lm = [
        [sum(left[i][s] * m[s][j] for s in range(r)) for j in range(c)]
        for i in range(r)
    ]
    prod = [
        [sum(lm[i][s] * right[s][j] for s in range(c)) for j in range(c)]
        for i in range(r)
    ]
    for i in range(r):
        for j in range(c):
            expected = form.diagonal[i] if i == j and i < len(form.diagonal) else 0
            if prod[i][j] != expected:
                raise InternalInconsistencyError("Smith form does not re-multiply")
    for i, d in enumerate(form.diagonal[:-1]):
        nxt = form.diagonal[i + 1]
        if d == 0 and nxt != 0:
            raise InternalInconsistencyError("zero before nonzero on Smith diagonal")
        if d and nxt % d:
            raise InternalInconsistencyError("Smith diagonal not a divisibility chain")
    if abs(_det([list(row) for row in left])) != 1 or abs(_det([list(row) for row in right])) != 1:
        raise InternalInconsistencyError("Smith transforms not unimodular")


def abelianization(p: Presentation) -> AbelianInvariants:
    """Invariant factors of the abelianized group, via Smith normal form."""
    matrix = relation_matrix(p)
    if matrix.cols == 0:
        return AbelianInvariants(0, ())
    if matrix.rows == 0:
        return AbelianInvariants(matrix.cols, ())
    diagonal = smith_normal_form(matrix).diagonal
    free_rank = matrix.cols - len(diagonal) + sum(1 for d in diagonal if d == 0)
    torsion = tuple(d for d in diagonal if d > 1)
    return AbelianInvariants(free_rank, torsion)


def group_order_if_finite(sig: Signature, chi: Fraction, good: bool) -> int:
    """Order of the orbifold fundamental group of a reduced signature, chi > 0.

    Good spherical signatures have order 2/chi.  The bad cases read off
    the presentation: a single cone collapses to the trivial group; two
    cones of different orders p, q give a cyclic group of order gcd(p, q).
    """
    if not sig.is_reduced:
        raise PreconditionError("group order needs a closed orientable cone-only signature")
    if chi <= 0:
        raise PreconditionError("group order is defined only for chi > 0")
    if good:
        order = Fraction(2) / chi
        if order.denominator != 1:
            raise InternalInconsistencyError(
                f"good spherical signature {sig} has non-integral 2/chi = {order}"
            )
        return int(order)
    if len(sig.cones) == 1:
        return 1
    if len(sig.cones) == 2:
        return gcd(sig.cones[0], sig.cones[1])
    raise InternalInconsistencyError(f"{sig} is not in the bad list")


def render_presentation(p: Presentation) -> str:
    """ASCII rendering, e.g. ``<a1,b1,x1 | x1^2, [a1,b1] x1>``."""
    gens = ",".join(p.generators)
    relators = [f"{name}^{order}" for name, order in p.cone_gens]
    long_parts = "".join(f"[a{j},b{j}]" for j in range(1, p.handle_pairs + 1))
    xs = " ".join(name for name, _ in p.cone_gens)
    long_relator = (long_parts + " " + xs).strip() if (long_parts or xs) else ""
    if long_relator:
        relators.append(long_relator)
    return f"<{gens} | {', '.join(relators)}>"
