"""Exact-rational matrix realizations through the coideal embedding.

The generator pair is assembled from level-one quantum-affine data on a
tensor product of two-dimensional evaluation modules:

    A  = c0 e0 q^{h0/2} + cbar0 f0 q^{h0/2} + eps0 q^{h0}
    A* = c1 e1 q^{h1/2} + cbar1 f1 q^{h1/2} + eps1 q^{h1}

with rho_i = c_i cbar_i (q + q^{-1})^2.  Everything is a Fraction; q = t^2
so the half-weight diagonals stay rational.

Evaluation-module and coproduct conventions are pinned here and validated
solely by the ``check_qdg`` gate: if the gate passes, the pair genuinely
satisfies both defining relations, which is the only property downstream
soundness checks use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactring import Rational
from .freealg import GEN_A, NcPoly


class ExactMatrix:
    """Dense square matrix over Fraction; immutable, exact."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        self.n = len(self.rows)
        for row in self.rows:
            if len(row) != self.n:
                raise ValueError("matrix must be square")

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(n: int) -> "ExactMatrix":
        return ExactMatrix([[0] * n for _ in range(n)])

    @staticmethod
    def diagonal(values) -> "ExactMatrix":
        values = list(values)
        n = len(values)
        return ExactMatrix([[values[i] if i == j else 0 for j in range(n)]
                            for i in range(n)])

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def __add__(self, other):
        self._match(other)
        return ExactMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._match(other)
        return ExactMatrix([[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return ExactMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return ExactMatrix([[a * other for a in row] for row in self.rows])
        self._match(other)
        cols = list(zip(*other.rows))
        return ExactMatrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                            for row in self.rows])

    def __rmul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self * other
        return NotImplemented

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        n, m = self.n, other.n
        return ExactMatrix([
            [self.rows[i // m][j // m] * other.rows[i % m][j % m]
             for j in range(n * m)]
            for i in range(n * m)])

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse; dimensions here never exceed 8."""
        n = self.n
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    factor = aug[r][col]
                    aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
        return ExactMatrix([row[n:] for row in aug])

    def _match(self, other):
        if not isinstance(other, ExactMatrix) or other.n != self.n:
            raise ValueError("matrix dimensions must agree")

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in row] for row in self.rows]})"


def commutator(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    return x * y - y * x


def evaluation_rep(v: Rational, t: Rational) -> dict:
    """Two-dimensional evaluation module with spectral parameter v.

    Images: e1, f1 the elementary matrices, q^{h1/2} = diag(t, 1/t);
    e0 = v * (f1 shape), f0 = (1/v) * (e1 shape), q^{h0/2} = diag(1/t, t).
    """
    v = Fraction(v)
    t = Fraction(t)
    if v == 0:
        raise ValueError("spectral parameter must be nonzero")
    if t in (0, 1, -1):
        raise ValueError("t must avoid 0, 1, -1")
    e1 = ExactMatrix([[0, 1], [0, 0]])
    f1 = ExactMatrix([[0, 0], [1, 0]])
    return {
        "e1": e1,
        "f1": f1,
        "k1h": ExactMatrix.diagonal([t, 1 / t]),
        "e0": v * f1,
        "f0": (1 / v) * e1,
        "k0h": ExactMatrix.diagonal([1 / t, t]),
    }


def _combine(left: dict, site: dict) -> dict:
    """One coproduct step: Delta(e) = e x 1 + q^h x e, Delta(f) = f x q^{-h} + 1 x f,
    grouplike on the half-weights."""
    out = {}
    nl = left["e1"].n
    ns = site["e1"].n
    il = ExactMatrix.identity(nl)
    i_s = ExactMatrix.identity(ns)
    for i in ("0", "1"):
        kl = left[f"k{i}h"] * left[f"k{i}h"]
        ks_inv = (site[f"k{i}h"] * site[f"k{i}h"]).inverse()
        out[f"e{i}"] = left[f"e{i}"].kron(i_s) + kl.kron(site[f"e{i}"])
        out[f"f{i}"] = left[f"f{i}"].kron(ks_inv) + il.kron(site[f"f{i}"])
        out[f"k{i}h"] = left[f"k{i}h"].kron(site[f"k{i}h"])
    return out


def tensor_rep(t: Rational, v_list) -> dict:
    """Generator images on the L-fold tensor product of evaluation modules."""
    v_list = [Fraction(v) for v in v_list]
    if not v_list:
        raise ValueError("need at least one site")
    rep = evaluation_rep(v_list[0], t)
    for v in v_list[1:]:
        rep = _combine(rep, evaluation_rep(v, t))
    return rep


@dataclass(frozen=True)
class CoidealParams:
    """Scalars of the coideal embedding plus the sites of the tensor module.

    q = t^2 keeps every entry rational; rho_i = c_i cbar_i (q+q^{-1})^2 is
    the structure-constant identification.
    """

    t: Rational
    v: tuple
    c0: Rational = Fraction(1)
    c1: Rational = Fraction(1)
    cbar0: Rational = Fraction(1)
    cbar1: Rational = Fraction(1)
    eps0: Rational = Fraction(0)
    eps1: Rational = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in self.v))
        for name in ("c0", "c1", "cbar0", "cbar1", "eps0", "eps1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.t in (0, 1, -1):
            raise ValueError("t must avoid 0, 1, -1")
        if not self.v:
            raise ValueError("need at least one site")
        if any(x == 0 for x in self.v):
            raise ValueError("spectral parameters must be nonzero")
        if len(set(self.v)) != len(self.v):
            raise ValueError("spectral parameters must be pairwise distinct")

    @property
    def q(self) -> Fraction:
        return self.t * self.t

    @property
    def rho0(self) -> Fraction:
        return self.c0 * self.cbar0 * (self.q + 1 / self.q) ** 2

    @property
    def rho1(self) -> Fraction:
        return self.c1 * self.cbar1 * (self.q + 1 / self.q) ** 2


@dataclass(frozen=True)
class CoidealRealization:
    A: ExactMatrix
    Astar: ExactMatrix
    q: Fraction
    rho0: Fraction
    rho1: Fraction

    @property
    def dim(self) -> int:
        return self.A.n


def coideal_generators(params: CoidealParams) -> CoidealRealization:
    """Assemble the generator pair on the tensor module."""
    rep = tensor_rep(params.t, params.v)
    k0 = rep["k0h"] * rep["k0h"]
    k1 = rep["k1h"] * rep["k1h"]
    a = (params.c0 * (rep["e0"] * rep["k0h"])
         + params.cbar0 * (rep["f0"] * rep["k0h"])
         + params.eps0 * k0)
    astar = (params.c1 * (rep["e1"] * rep["k1h"])
             + params.cbar1 * (rep["f1"] * rep["k1h"])
             + params.eps1 * k1)
    return CoidealRealization(A=a, Astar=astar, q=params.q,
                              rho0=params.rho0, rho1=params.rho1)


def _qdg_side(x: ExactMatrix, y: ExactMatrix, rho: Fraction, q: Fraction) -> ExactMatrix:
    """x^3 y - [3]_q x^2 y x + [3]_q x y x^2 - y x^3 - rho (x y - y x)."""
    three = q ** 2 + 1 + q ** -2
    return (x * x * x * y - three * (x * x * y * x) + three * (x * y * x * x)
            - y * x * x * x - rho * (x * y - y * x))


def check_qdg(a: ExactMatrix, astar: ExactMatrix, rho0: Rational, rho1: Rational,
              q: Rational) -> bool:
    """Both defining relations hold exactly for the matrix pair."""
    a._match(astar)
    q = Fraction(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    return (_qdg_side(a, astar, Fraction(rho0), q).is_zero()
            and _qdg_side(astar, a, Fraction(rho1), q).is_zero())


def check_realization(real: CoidealRealization) -> bool:
    return check_qdg(real.A, real.Astar, real.rho0, real.rho1, real.q)


def eval_ncpoly(x: NcPoly, a: ExactMatrix, astar: ExactMatrix,
                q_val: Rational, rho0_val: Rational, rho1_val: Rational) -> ExactMatrix:
    """Evaluation homomorphism from the free algebra: letters become the
    matrices, coefficients evaluate at (q, rho0, rho1)."""
    a._match(astar)
    n = a.n
    total = ExactMatrix.zeros(n)
    for word, coeff in x.sorted_terms():
        m = ExactMatrix.identity(n)
        for ch in word:
            m = m * (a if ch == GEN_A else astar)
        total = total + coeff.eval_at(q_val, rho0_val, rho1_val) * m
    return total
