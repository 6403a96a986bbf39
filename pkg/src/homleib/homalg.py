"""Hom-Leibniz algebras given by structure constants.

An algebra of dimension ``n`` is the tensor ``c`` with
``[b_i, b_j] = sum_k c[i, j, k] b_k`` together with the twisting map
``alpha`` (a matrix acting on column vectors).  The identity checked is

    [alpha(x), [y, z]] = [[x, y], alpha(z)] - [[x, z], alpha(y)]

Nothing is validated at construction time; the ``check_*`` functions
report, so that broken inputs can still be loaded and diagnosed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PASS, PreconditionError, Verdict
from .exactlin import (
    QQ,
    Subspace,
    field_of,
    freeze,
    identity,
    image,
    is_surjective,
    kernel,
    matrix,
    quotient,
    zeros,
    _coerce,
    _nonzero,
)

__all__ = [
    "HomAlgebra",
    "HomMorphism",
    "AlgebraReport",
    "bracket",
    "transport",
    "check_hom_leibniz",
    "check_multiplicative",
    "check_morphism",
    "yau_twist",
    "is_subalgebra",
    "is_two_sided_ideal",
    "commutator",
    "derived",
    "center",
    "ideal_closure",
    "ann_ideal",
    "lie_quotient",
    "quotient_algebra",
    "subalgebra",
    "multiplicativization",
    "alpha_image",
    "is_perfect",
    "is_alpha_perfect",
    "direct_product",
    "report",
    "compose",
    "identity_morphism",
]


class HomAlgebra:
    """Structure constants ``c`` (n x n x n) plus the twist ``alpha`` (n x n)."""

    __slots__ = ("c", "alpha", "field", "name", "labels")

    def __init__(self, c, alpha, field=None, name: str = "", labels: Sequence[str] | None = None):
        c = np.asarray(c, dtype=object)
        alpha = np.asarray(alpha, dtype=object)
        if field is None:
            field = field_of(np.concatenate([c.reshape(-1), alpha.reshape(-1)])) if c.size or alpha.size else QQ
        n = alpha.shape[0] if alpha.ndim == 2 else 0
        if alpha.shape != (n, n):
            raise ValueError(f"alpha must be square, got {alpha.shape}")
        if c.size == 0:
            c = zeros((n, n, n), field)
        if c.shape != (n, n, n):
            raise ValueError(f"structure tensor has shape {c.shape}, expected {(n, n, n)}")
        self.c = freeze(_coerce(c, field))
        self.alpha = freeze(_coerce(alpha, field) if alpha.size else zeros((n, n), field))
        self.field = field
        self.name = name
        if labels is None:
            labels = [f"b{i}" for i in range(n)]
        if len(labels) != n:
            raise ValueError("one label per basis vector")
        self.labels = tuple(labels)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, alpha=None, field=QQ, name="", labels=None):
        """Build from ``{(i, j): coefficient vector}``; omitted pairs bracket to zero."""
        c = zeros((dim, dim, dim), field)
        for (i, j), vec in brackets.items():
            c[i, j, :] = [field(x) for x in vec]
        if alpha is None:
            alpha = identity(dim, field)
        return cls(c, matrix(alpha, field) if dim else zeros((0, 0), field), field, name, labels)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        return identity(self.dim, self.field)[:, i]

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise ValueError(f"vectors must have length {self.dim}")
        if self.dim == 0:
            return zeros(0, self.field)
        return np.einsum("i,j,ijk->k", x, y, self.c)

    def left(self, x) -> np.ndarray:
        """Matrix of ``v -> [x, v]``."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=object), self.c) if self.dim else zeros((0, 0), self.field)

    def right(self, y) -> np.ndarray:
        """Matrix of ``v -> [v, y]``."""
        return np.einsum("j,ijk->ki", np.asarray(y, dtype=object), self.c) if self.dim else zeros((0, 0), self.field)

    def evaluation(self) -> np.ndarray:
        """The bracket as a linear map ``L (x) L -> L`` (n x n^2)."""
        n = self.dim
        return self.c.reshape(n * n, n).T

    def with_alpha(self, alpha) -> "HomAlgebra":
        return HomAlgebra(self.c, matrix(alpha, self.field), self.field, self.name, self.labels)

    def renamed(self, name: str, labels=None) -> "HomAlgebra":
        return HomAlgebra(self.c, self.alpha, self.field, name, labels or self.labels)

    def is_abelian(self) -> bool:
        return not _nonzero(self.c).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field == other.field
            and bool(np.all(self.c == other.c))
            and bool(np.all(self.alpha == other.alpha))
        )

    def __hash__(self):
        return hash((self.dim, tuple(self.c.flat), tuple(self.alpha.flat)))

    def __repr__(self) -> str:
        return f"HomAlgebra({self.name or '?'}, dim={self.dim}, field={self.field.name})"


@dataclass(frozen=True, eq=False)
class HomMorphism:
    """A linear map ``m`` (dst.dim x src.dim) between two algebras."""

    src: HomAlgebra
    dst: HomAlgebra
    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=object)
        if m.size == 0:
            m = zeros((self.dst.dim, self.src.dim), self.src.field)
        if m.shape != (self.dst.dim, self.src.dim):
            raise ValueError(f"matrix shape {m.shape} does not fit {self.src.dim} -> {self.dst.dim}")
        object.__setattr__(self, "m", freeze(_coerce(m, self.src.field)))

    def __call__(self, v) -> np.ndarray:
        return self.m @ np.asarray(v, dtype=object)

    def kernel(self) -> Subspace:
        return kernel(self.m) if self.dst.dim else Subspace.full(self.src.dim, self.src.field)

    def image(self) -> Subspace:
        return image(self.m) if self.src.dim else Subspace.zero(self.dst.dim, self.dst.field)

    def is_surjective(self) -> bool:
        return is_surjective(self.m)

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_bijective(self) -> bool:
        return self.src.dim == self.dst.dim and self.is_injective()


def bracket(L: HomAlgebra, x, y) -> np.ndarray:
    return L.bracket(x, y)


def transport(c: np.ndarray, a: np.ndarray, b: np.ndarray, p: np.ndarray | None = None) -> np.ndarray:
    """Tensor of ``[a e_i, b e_j]`` (optionally followed by ``p``), indexed ``[i, j, :]``."""
    out = np.einsum("pi,qj,pqk->ijk", a, b, c, optimize=True)
    if p is not None:
        out = np.einsum("ijk,tk->ijt", out, p, optimize=True)
    return out


def _first_nonzero(arr: np.ndarray):
    hits = np.argwhere(_nonzero(arr))
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _leibniz_defect(L: HomAlgebra) -> np.ndarray:
    c, a = L.c, L.alpha
    inner = np.tensordot(c, c, axes=([2], [1]))  # [y,z,p,k] = [b_p, [b_y,b_z]]_k
    lhs = np.tensordot(a, inner, axes=([0], [2]))  # [x,y,z,k]
    c_alpha = np.tensordot(a, c, axes=([0], [1]))  # [z,p,k] = [b_p, alpha b_z]_k
    t2 = np.tensordot(c, c_alpha, axes=([2], [1]))  # [x,y,z,k]
    t3 = t2.transpose(0, 2, 1, 3)
    return lhs - t2 + t3


def check_hom_leibniz(L: HomAlgebra) -> Verdict:
    """Hom-Leibniz identity on all basis triples; witness is ``(x, y, z)``."""
    if L.dim == 0:
        return PASS
    hit = _first_nonzero(_leibniz_defect(L))
    return PASS if hit is None else Verdict(False, hit[:3])


def check_multiplicative(L: HomAlgebra) -> Verdict:
    """``alpha[b_i, b_j] == [alpha b_i, alpha b_j]``; witness is ``(i, j)``."""
    if L.dim == 0:
        return PASS
    lhs = np.einsum("ijk,tk->ijt", L.c, L.alpha)
    rhs = transport(L.c, L.alpha, L.alpha)
    hit = _first_nonzero(lhs - rhs)
    return PASS if hit is None else Verdict(False, hit[:2])


def check_morphism(f: HomMorphism) -> Verdict:
    """Bracket and twist compatibility on basis pairs/vectors.

    Witness is ``("bracket", i, j)`` or ``("alpha", j)``.
    """
    if f.src.dim == 0:
        return PASS
    if f.dst.dim:
        lhs = np.einsum("ijk,tk->ijt", f.src.c, f.m)
        rhs = transport(f.dst.c, f.m, f.m)
        hit = _first_nonzero(lhs - rhs)
        if hit is not None:
            return Verdict(False, ("bracket",) + hit[:2])
    hit = _first_nonzero(f.m @ f.src.alpha - f.dst.alpha @ f.m)
    if hit is not None:
        return Verdict(False, ("alpha", hit[1]))
    return PASS


def compose(g: HomMorphism, f: HomMorphism) -> HomMorphism:
    """``g . f``."""
    if f.dst.dim != g.src.dim:
        raise ValueError("morphisms are not composable")
    return HomMorphism(f.src, g.dst, g.m @ f.m)


def identity_morphism(L: HomAlgebra) -> HomMorphism:
    return HomMorphism(L, L, identity(L.dim, L.field))


def yau_twist(L: HomAlgebra, phi) -> HomAlgebra:
    """Deform a Leibniz algebra (alpha = Id) by an endomorphism ``phi``."""
    phi = matrix(phi, L.field)
    if not np.all(L.alpha == identity(L.dim, L.field)):
        raise PreconditionError("yau_twist expects a Leibniz algebra (alpha = Id)")
    v = check_morphism(HomMorphism(L, L, phi))
    if not v:
        raise PreconditionError(f"phi is not an endomorphism of {L.name or 'L'}: {v.witness}")
    return HomAlgebra(transport(L.c, phi, phi), phi, L.field, L.name and f"{L.name}^phi", L.labels)


# ---------------------------------------------------------------------------
# substructures
# ---------------------------------------------------------------------------


def _full(L: HomAlgebra) -> Subspace:
    return Subspace.full(L.dim, L.field)


def commutator(L: HomAlgebra, H: Subspace, K: Subspace) -> Subspace:
    """Span of ``[h, k]`` over basis vectors of ``H`` and ``K``."""
    if H.dim == 0 or K.dim == 0:
        return Subspace.zero(L.dim, L.field)
    vecs = np.einsum("ap,bq,pqk->abk", H.basis, K.basis, L.c, optimize=True)
    return Subspace.span(vecs.reshape(-1, L.dim), L.dim)


def derived(L: HomAlgebra) -> Subspace:
    return commutator(L, _full(L), _full(L))


def alpha_image(L: HomAlgebra) -> Subspace:
    return image(L.alpha) if L.dim else Subspace.zero(0, L.field)


def is_subalgebra(L: HomAlgebra, S: Subspace) -> bool:
    return commutator(L, S, S) <= S and S.map(L.alpha) <= S


def is_two_sided_ideal(L: HomAlgebra, S: Subspace) -> bool:
    full = _full(L)
    return is_subalgebra(L, S) and commutator(L, S, full) <= S and commutator(L, full, S) <= S


def center(L: HomAlgebra) -> Subspace:
    n = L.dim
    if n == 0:
        return Subspace.zero(0, L.field)
    left = L.c.transpose(1, 2, 0).reshape(n * n, n)  # [x, b_j]_k
    right = L.c.transpose(0, 2, 1).reshape(n * n, n)  # [b_j, x]_k
    return kernel(np.concatenate([left, right]))


def ideal_closure(L: HomAlgebra, S: Subspace) -> Subspace:
    """Smallest alpha-stable two-sided ideal containing ``S``."""
    full = _full(L)
    cur = S
    while True:
        nxt = cur + commutator(L, cur, full) + commutator(L, full, cur) + cur.map(L.alpha)
        if nxt == cur:
            return cur
        cur = nxt


def ann_ideal(L: HomAlgebra) -> Subspace:
    """The ideal generated by the squares ``[x, x]``.

    ``[x, x]`` is quadratic; its polarisation gives the finite generating set
    ``[b_i, b_i]`` and ``[b_i, b_j] + [b_j, b_i]``.  In characteristic 2 the
    polarised generators do not recover the squares' span exactly.
    """
    n = L.dim
    if L.field.characteristic == 2:
        warnings.warn("ann_ideal in characteristic 2 uses polarised generators", stacklevel=2)
    gens = [L.c[i, i] for i in range(n)]
    gens += [L.c[i, j] + L.c[j, i] for i in range(n) for j in range(i + 1, n)]
    span = Subspace.span(np.array(gens, dtype=object).reshape(-1, n), n)
    return ideal_closure(L, span)


def quotient_algebra(L: HomAlgebra, H: Subspace) -> tuple[HomAlgebra, HomMorphism]:
    """``L / H`` with induced bracket and twist, plus the projection."""
    if not is_two_sided_ideal(L, H):
        raise PreconditionError("quotient_algebra needs a two-sided alpha-stable ideal")
    q = quotient(L.dim, H)
    c = transport(L.c, q.section, q.section, q.proj) if q.dim else zeros((0, 0, 0), L.field)
    a = q.proj @ L.alpha @ q.section if q.dim else zeros((0, 0), L.field)
    labels = [L.labels[i] for i in q.free]
    Q = HomAlgebra(c, a, L.field, L.name and f"{L.name}/H", labels)
    return Q, HomMorphism(L, Q, q.proj)


def subalgebra(L: HomAlgebra, S: Subspace) -> tuple[HomAlgebra, HomMorphism]:
    """``S`` as an algebra in its RREF basis, plus the inclusion into ``L``."""
    if not is_subalgebra(L, S):
        raise PreconditionError("subspace is not a subalgebra")
    B = S.basis
    piv = list(S.pivots)
    k = S.dim
    if k == 0:
        A = HomAlgebra(zeros((0, 0, 0), L.field), zeros((0, 0), L.field), L.field, "0", [])
        return A, HomMorphism(A, L, zeros((L.dim, 0), L.field))
    # coordinates of a vector of S are its entries at the pivot columns
    c = np.einsum("ap,bq,pqk->abk", B, B, L.c, optimize=True)[:, :, piv]
    a = (L.alpha @ B.T)[piv, :]
    labels = [L.labels[p] for p in piv]
    A = HomAlgebra(c, a, L.field, L.name and f"{L.name}|S", labels)
    return A, HomMorphism(A, L, B.T.copy())


def lie_quotient(L: HomAlgebra) -> tuple[HomAlgebra, HomMorphism]:
    return quotient_algebra(L, ann_ideal(L))


def multiplicativization(L: HomAlgebra) -> tuple[HomAlgebra, HomMorphism]:
    """Quotient by the ideal generated by ``alpha[x, y] - [alpha x, alpha y]``."""
    n = L.dim
    if n == 0:
        return L, identity_morphism(L)
    defect = np.einsum("ijk,tk->ijt", L.c, L.alpha) - transport(L.c, L.alpha, L.alpha)
    I = ideal_closure(L, Subspace.span(defect.reshape(-1, n), n))
    return quotient_algebra(L, I)


def is_perfect(L: HomAlgebra) -> bool:
    return derived(L).is_full()


def is_alpha_perfect(L: HomAlgebra) -> bool:
    a = alpha_image(L)
    return commutator(L, a, a).is_full()


def direct_product(A: HomAlgebra, B: HomAlgebra, name: str = "") -> HomAlgebra:
    """``A x B`` on ``A (+) B`` with componentwise bracket and twist."""
    n, m = A.dim, B.dim
    field = A.field
    c = zeros((n + m,) * 3, field)
    c[:n, :n, :n] = A.c
    c[n:, n:, n:] = B.c
    a = zeros((n + m, n + m), field)
    a[:n, :n] = A.alpha
    a[n:, n:] = B.alpha
    return HomAlgebra(c, a, field, name, list(A.labels) + list(B.labels))


@dataclass(frozen=True)
class AlgebraReport:
    is_hom_leibniz: Verdict
    is_multiplicative: Verdict
    is_perfect: bool
    is_alpha_perfect: bool
    center: Subspace
    derived: Subspace
    alpha_image: Subspace
    ann_ideal: Subspace


def report(L: HomAlgebra) -> AlgebraReport:
    return AlgebraReport(
        check_hom_leibniz(L),
        check_multiplicative(L),
        is_perfect(L),
        is_alpha_perfect(L),
        center(L),
        derived(L),
        alpha_image(L),
        ann_ideal(L),
    )
