"""Exact linear algebra over Q or GF(p) on numpy object arrays.

Matrices act on column vectors: the image of basis vector ``j`` under ``m``
is column ``m[:, j]``.  Subspaces are stored as the rows of their reduced
row echelon basis, so two subspaces are equal exactly when those rows are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

import gmpy2
import numpy as np

from .errors import PreconditionError

__all__ = [
    "QQ",
    "GF",
    "ModP",
    "field_of",
    "matrix",
    "vector",
    "zeros",
    "identity",
    "freeze",
    "rref",
    "rank",
    "kernel",
    "image",
    "solve",
    "right_inverse",
    "inverse",
    "is_injective",
    "is_surjective",
    "is_bijective",
    "Subspace",
    "subspace_sum",
    "subspace_intersect",
    "member",
    "QuotientSpace",
    "quotient",
    "induced_map",
    "TensorIndex",
    "format_scalar",
]


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


_MPQ = type(gmpy2.mpq(0))


def _parse_rational(text: str):
    # accept the typographic minus sign as well as '-'
    text = text.replace("−", "-")
    m = _FRACTION_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return gmpy2.mpq(num, den)


class _Rationals:
    """The field Q; elements are ``gmpy2.mpq`` (exact, and much faster than Fraction)."""

    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, _MPQ):
            return x
        if isinstance(x, (bool, float)):
            raise TypeError(f"refusing inexact scalar {x!r}")
        if isinstance(x, int):
            return gmpy2.mpq(x)
        if isinstance(x, str):
            return _parse_rational(x)
        if isinstance(x, ModP):
            raise TypeError("cannot coerce a GF(p) element into Q")
        return gmpy2.mpq(x.numerator, x.denominator)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Rationals)

    def __hash__(self) -> int:
        return hash("Q")


QQ = _Rationals()


@total_ordering
class ModP:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, _MPQ)):
            return int(other.numerator) * pow(int(other.denominator), -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ModP(o, self.p) * self.inverse()

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __lt__(self, other):
        return self.v < self._lift(other) % self.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class GF:
    """The prime field GF(p).  Primality of ``p`` is the caller's promise."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("p must be a prime >= 2")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> ModP:
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("element of a different prime field")
            return x
        if isinstance(x, (bool, float)):
            raise TypeError(f"refusing inexact scalar {x!r}")
        if isinstance(x, str):
            x = _parse_rational(x)
        if isinstance(x, (Fraction, _MPQ)):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self.name}")
            return ModP(num * pow(den, -1, self.p), self.p)
        return ModP(int(x), self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def field_of(a) -> _Rationals | GF:
    """Infer the field of an array (GF(p) if any entry is a residue)."""
    arr = np.asarray(a, dtype=object)
    for x in arr.flat:
        if isinstance(x, ModP):
            return GF(x.p)
    return QQ


def format_scalar(x) -> str:
    """Exact string form: ``"-3/2"`` for rationals, the residue for GF(p)."""
    if isinstance(x, ModP):
        return str(x.v)
    num, den = int(x.numerator), int(x.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# arrays
# ---------------------------------------------------------------------------


def _coerce(data, field=None) -> np.ndarray:
    arr = np.array(data, dtype=object)
    if field is None:
        field = field_of(arr)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k, x in enumerate(flat_in):
        flat_out[k] = field(x)
    return out


def matrix(rows, field=None) -> np.ndarray:
    """Build an exact 2-D array; ``rows`` is any nested sequence."""
    a = _coerce(rows, field)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got shape {a.shape}")
    return a


def vector(entries, field=None) -> np.ndarray:
    a = _coerce(entries, field)
    if a.ndim != 1:
        raise ValueError(f"expected a 1-D array, got shape {a.shape}")
    return a


def zeros(shape, field=QQ) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    z = field(0)
    a.fill(z)
    return a


def identity(n: int, field=QQ) -> np.ndarray:
    a = zeros((n, n), field)
    one = field(1)
    for i in range(n):
        a[i, i] = one
    return a


def freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _nonzero(a: np.ndarray) -> np.ndarray:
    return np.array([x != 0 for x in a.flat], dtype=bool).reshape(a.shape)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------


def rref(m) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns.

    The returned matrix has the same shape as ``m``; zero rows sit at the
    bottom.
    """
    a = _coerce(m)
    if a.ndim != 2:
        raise ValueError("rref needs a 2-D array")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        hits = np.flatnonzero(_nonzero(col))
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        prow = a[r, c:]
        support = c + np.flatnonzero(_nonzero(prow))
        a[r, support] = a[r, support] * (1 / a[r, c])
        colv = a[:, c].copy()
        colv[r] = 0
        others = np.flatnonzero(_nonzero(colv))
        if others.size:
            # entries of the pivot row left of c are zero; touch only its support
            block = np.ix_(others, support)
            a[block] = a[block] - np.outer(colv[others], a[r, support])
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def _row_basis(rows: np.ndarray, ncols: int) -> tuple[np.ndarray, tuple[int, ...]]:
    if rows.shape[0] == 0:
        return np.empty((0, ncols), dtype=object), ()
    r, piv = rref(rows)
    return r[: len(piv)], piv


def rank(m) -> int:
    a = np.asarray(m, dtype=object)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def kernel(m) -> "Subspace":
    """Right null space ``{v : m v = 0}``."""
    a = _coerce(m)
    nrows, ncols = a.shape
    field = field_of(a) if a.size else QQ
    if nrows == 0:
        return Subspace.full(ncols, field)
    r, piv = rref(a)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = zeros((len(free), ncols), field)
    for k, fc in enumerate(free):
        basis[k, fc] = field(1)
        for row, pc in enumerate(piv):
            basis[k, pc] = -r[row, fc]
    return Subspace.span(basis, ncols)


def image(m) -> "Subspace":
    """Column space of ``m``."""
    a = _coerce(m)
    return Subspace.span(a.T, a.shape[0])


def solve(m, rhs) -> np.ndarray | None:
    """Some ``x`` with ``m x = rhs``, or ``None`` when inconsistent."""
    a = _coerce(m)
    b = _coerce(rhs)
    nrows, ncols = a.shape
    if b.shape != (nrows,):
        raise ValueError(f"rhs has shape {b.shape}, expected ({nrows},)")
    field = field_of(np.concatenate([a.reshape(-1), b])) if (a.size or b.size) else QQ
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1) if nrows else np.empty((0, ncols + 1), dtype=object)
    if nrows == 0:
        return zeros(ncols, field)
    r, piv = rref(aug)
    if piv and piv[-1] == ncols:
        return None
    x = zeros(ncols, field)
    for row, pc in enumerate(piv):
        x[pc] = r[row, ncols]
    return x


def right_inverse(m) -> np.ndarray:
    """A fixed ``s`` with ``m s = I``; ``m`` must be surjective."""
    a = _coerce(m)
    nrows, ncols = a.shape
    field = field_of(a) if a.size else QQ
    s = zeros((ncols, nrows), field)
    e = identity(nrows, field)
    for j in range(nrows):
        x = solve(a, e[:, j])
        if x is None:
            raise PreconditionError("matrix is not surjective; no right inverse")
        s[:, j] = x
    return s


def inverse(m) -> np.ndarray:
    a = _coerce(m)
    if a.shape[0] != a.shape[1] or rank(a) != a.shape[0]:
        raise PreconditionError("matrix is not invertible")
    return right_inverse(a)


def is_injective(m) -> bool:
    a = np.asarray(m, dtype=object)
    return a.shape[1] == 0 or rank(a) == a.shape[1]


def is_surjective(m) -> bool:
    a = np.asarray(m, dtype=object)
    return a.shape[0] == 0 or rank(a) == a.shape[0]


def is_bijective(m) -> bool:
    a = np.asarray(m, dtype=object)
    return a.shape[0] == a.shape[1] and is_injective(a)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of K^n held as its RREF basis rows."""

    __slots__ = ("ambient_dim", "basis", "pivots", "field")

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots: Sequence[int], field=QQ):
        self.ambient_dim = ambient_dim
        self.basis = freeze(basis)
        self.pivots = tuple(pivots)
        self.field = field

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        rows = np.asarray(vectors, dtype=object)
        if rows.size == 0:
            rows = np.empty((0, ambient_dim), dtype=object)
        rows = rows.reshape(-1, ambient_dim)
        field = field_of(rows) if rows.size else QQ
        b, piv = _row_basis(_coerce(rows, field) if rows.size else rows, ambient_dim)
        return cls(ambient_dim, b, piv, field)

    @classmethod
    def zero(cls, n: int, field=QQ) -> "Subspace":
        return cls(n, np.empty((0, n), dtype=object), (), field)

    @classmethod
    def full(cls, n: int, field=QQ) -> "Subspace":
        return cls(n, identity(n, field), tuple(range(n)), field)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if other.ambient_dim != self.ambient_dim or other.pivots != self.pivots:
            return False
        return bool(np.all(self.basis == other.basis))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots, tuple(self.basis.flat)))

    def coords(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the RREF basis (``v`` must lie in here)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        v = np.asarray(v, dtype=object)
        return v[list(self.pivots)] if self.pivots else np.empty(0, dtype=object)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object)
        if v.shape != (self.ambient_dim,):
            raise ValueError(f"vector of length {v.shape} in ambient {self.ambient_dim}")
        if self.dim == 0:
            return not _nonzero(v).any()
        residue = v - v[list(self.pivots)] @ self.basis
        return not _nonzero(residue).any()

    __contains__ = contains

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        stacked = np.concatenate([self.basis.T, -other.basis.T], axis=1)
        ker = kernel(stacked)
        vecs = ker.basis[:, : self.dim] @ self.basis if ker.dim else ker.basis[:, :0]
        return Subspace.span(vecs, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def map(self, m) -> "Subspace":
        """Image of this subspace under the linear map ``m``."""
        m = np.asarray(m, dtype=object)
        if m.shape[1] != self.ambient_dim:
            raise ValueError("map does not start at this ambient space")
        if self.dim == 0:
            return Subspace.zero(m.shape[0], self.field)
        return Subspace.span((m @ self.basis.T).T, m.shape[0])

    def __repr__(self) -> str:
        rows = [[format_scalar(x) for x in r] for r in self.basis]
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={rows})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def member(v, s: Subspace) -> bool:
    return s.contains(v)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientSpace:
    """``K^n / kernel`` with a fixed projection and section.

    Quotient coordinates are the non-pivot coordinates of the kernel's RREF
    basis; ``section`` places them back at those positions.
    """

    ambient_dim: int
    kernel: Subspace
    proj: np.ndarray = dc_field(repr=False)
    section: np.ndarray = dc_field(repr=False)
    free: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.kernel.dim


def quotient(ambient_dim: int, kern: Subspace) -> QuotientSpace:
    if kern.ambient_dim != ambient_dim:
        raise ValueError("kernel lives in a different ambient space")
    field = kern.field
    piv = kern.pivots
    pivset = set(piv)
    free = tuple(c for c in range(ambient_dim) if c not in pivset)
    q = len(free)
    proj = zeros((q, ambient_dim), field)
    section = zeros((ambient_dim, q), field)
    for t, c in enumerate(free):
        proj[t, c] = field(1)
        section[c, t] = field(1)
    for row, pc in enumerate(piv):
        # e_pc is congruent to e_pc - basis_row, which has support on free columns
        for t, c in enumerate(free):
            proj[t, pc] = -kern.basis[row, c]
    return QuotientSpace(ambient_dim, kern, freeze(proj), freeze(section), free)


def induced_map(q_src: QuotientSpace, q_dst: QuotientSpace, m) -> np.ndarray | None:
    """The map on quotients induced by ``m``, or ``None`` if ``m`` does not descend."""
    m = np.asarray(m, dtype=object)
    if m.shape != (q_dst.ambient_dim, q_src.ambient_dim):
        raise ValueError(
            f"map of shape {m.shape} does not go {q_src.ambient_dim} -> {q_dst.ambient_dim}"
        )
    if not (q_src.kernel.map(m) <= q_dst.kernel):
        return None
    return q_dst.proj @ m @ q_src.section


# ---------------------------------------------------------------------------
# tensor coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TensorIndex:
    """Coordinates on ``K^a (x) K^b``: pair ``(i, j)`` sits at ``i * b + j``."""

    left_dim: int
    right_dim: int

    @property
    def dim(self) -> int:
        return self.left_dim * self.right_dim

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.left_dim and 0 <= j < self.right_dim):
            raise IndexError((i, j))
        return i * self.right_dim + j

    def pair(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.dim:
            raise IndexError(k)
        return divmod(k, self.right_dim)

    def tensor(self, x, y) -> np.ndarray:
        return np.outer(x, y).reshape(-1)

    def swap(self, field=QQ) -> np.ndarray:
        """Matrix of ``x (x) y -> y (x) x`` (square spaces only)."""
        if self.left_dim != self.right_dim:
            raise ValueError("swap needs equal factors")
        n = self.left_dim
        s = zeros((n * n, n * n), field)
        one = field(1)
        for i in range(n):
            for j in range(n):
                s[j * n + i, i * n + j] = one
        return s
