"""Square and rectangular rational matrices, exact linear algebra, Jordan-Chevalley."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..errors import InternalInconsistency
from .unipoly import UniPoly, poly_gcd, squarefree_part

Row = tuple[Fraction, ...]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[0]) if rows else 0


class RatMatrix:
    """Immutable matrix with Fraction entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int | Fraction]]):
        self.rows: tuple[Row, ...] = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "RatMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int | Fraction]) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RatMatrix([{body}])"

    def flat(self) -> list[Fraction]:
        return [x for r in self.rows for x in r]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def diagonal(self) -> list[Fraction]:
        return [self.rows[i][i] for i in range(self.n)]

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c: int | Fraction) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix([[c * a for a in r] for r in self.rows])

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if not isinstance(other, RatMatrix):
            return self.scale(other)
        cols = list(zip(*other.rows))
        return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])

    def apply(self, v: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def inverse(self) -> "RatMatrix":
        n = self.n
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("singular matrix")
        return RatMatrix([r[n:] for r in red])

    def rank(self) -> int:
        return rank(self.rows)

    def kernel(self) -> list[list[Fraction]]:
        return nullspace(self.rows, self.shape[1])

    def charpoly(self) -> UniPoly:
        """Faddeev-LeVerrier; monic of degree n."""
        n = self.n
        coeffs = [Fraction(0)] * (n + 1)
        coeffs[n] = Fraction(1)
        ident = RatMatrix.identity(n)
        m = RatMatrix.zero(n)
        for k in range(1, n + 1):
            m = self * m + ident.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self * m).trace() / k
        return UniPoly(coeffs)

    def eval_poly(self, p: UniPoly) -> "RatMatrix":
        n = self.n
        acc = RatMatrix.zero(n)
        ident = RatMatrix.identity(n)
        for c in reversed(p.coeffs):
            acc = acc * self + ident.scale(c)
        return acc


def minimal_polynomial(a: RatMatrix) -> UniPoly:
    """Smallest k with A^k in span(I, ..., A^{k-1}), read off from a Krylov nullspace."""
    n = a.n
    powers = [RatMatrix.identity(n).flat()]
    cur = RatMatrix.identity(n)
    for k in range(1, n + 1):
        cur = cur * a
        powers.append(cur.flat())
        cols = list(zip(*powers))
        kern = nullspace(cols, k + 1)
        if kern:
            # first dependence: the kernel is a line and its top entry is nonzero
            return UniPoly(kern[0]).monic()
    raise InternalInconsistency("Cayley-Hamilton bound exceeded")


def is_semisimple(a: RatMatrix) -> bool:
    mp = minimal_polynomial(a)
    return poly_gcd(mp, mp.derivative()).degree == 0


def is_nilpotent(a: RatMatrix) -> bool:
    p = a
    for _ in range(a.n - 1):
        p = p * a
    return p.is_zero()


def jordan_chevalley(a: RatMatrix) -> tuple[RatMatrix, RatMatrix]:
    """Newton iteration S <- S - g(S) g'(S)^{-1} on the squarefree part g of charpoly."""
    if a.is_diagonal():
        return a, RatMatrix.zero(a.n)
    g = squarefree_part(a.charpoly())
    dg = g.derivative()
    s = a
    for _ in range(64):
        gs = s.eval_poly(g)
        if gs.is_zero():
            return s, a - s
        s = s - gs * s.eval_poly(dg).inverse()
    raise InternalInconsistency("Jordan-Chevalley iteration did not terminate")
