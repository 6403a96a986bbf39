"""Central extensions and the universal (alpha-)central extension.

``uce(L)`` is realised on ``L (x) L`` modulo the span ``I_L`` of

    -[x1, x2] (x) alpha(x3) + [x1, x3] (x) alpha(x2) + alpha(x1) (x) [x2, x3]

over basis triples.  Tensor coordinates put ``b_a (x) b_b`` at ``a * n + b``.
Classes ``{x1, x2}`` are represented through the quotient's fixed section.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .actions import Derivation, check_derivation, self_action
from .errors import PASS, PreconditionError, Report, TheoremViolation, Verdict
from .exactlin import (
    QuotientSpace,
    Subspace,
    TensorIndex,
    _coerce,
    _nonzero,
    freeze,
    image,
    induced_map,
    quotient,
    right_inverse,
    zeros,
)
from .homalg import (
    HomAlgebra,
    HomMorphism,
    center,
    check_hom_leibniz,
    check_morphism,
    check_multiplicative,
    commutator,
    derived,
    identity_morphism,
    is_alpha_perfect,
    is_perfect,
    quotient_algebra,
    subalgebra,
)

__all__ = [
    "Extension",
    "UceResult",
    "check_extension",
    "is_central",
    "is_alpha_central",
    "extension_of",
    "central_quotient",
    "trivial_extension",
    "leibniz_relations",
    "uce",
    "uce_alpha",
    "hl1",
    "hl2_of",
    "induced_to_central",
    "uce_functor",
    "uce_alpha_functor",
    "uce_alpha_derivation",
    "is_centrally_closed",
    "is_superperfect",
    "is_simply_connected",
    "cover_report",
]


@dataclass(frozen=True, eq=False)
class Extension:
    """``0 -> M -i-> K -pi-> L -> 0``."""

    M: HomAlgebra
    K: HomAlgebra
    L: HomAlgebra
    i: HomMorphism
    pi: HomMorphism


def check_extension(e: Extension) -> Verdict:
    for tag, f in (("i", e.i), ("pi", e.pi)):
        v = check_morphism(f)
        if not v:
            return Verdict(False, v.witness, f"{tag} not a morphism")
    if not e.i.is_injective():
        return Verdict(False, None, "i not injective")
    if not e.pi.is_surjective():
        return Verdict(False, None, "pi not surjective")
    if e.i.image() != e.pi.kernel():
        return Verdict(False, None, "image(i) != kernel(pi)")
    return PASS


def _kills(K: HomAlgebra, S: Subspace) -> bool:
    """``[S, K] = 0 = [K, S]``."""
    full = Subspace.full(K.dim, K.field)
    return commutator(K, S, full).is_zero() and commutator(K, full, S).is_zero()


def is_central(e: Extension) -> bool:
    return _kills(e.K, e.i.image())


def is_alpha_central(e: Extension) -> bool:
    return _kills(e.K, image(e.i.m @ e.M.alpha) if e.M.dim else Subspace.zero(e.K.dim, e.K.field))


def extension_of(pi: HomMorphism) -> Extension:
    """The extension determined by a surjection, with its kernel as ``M``."""
    M, inc = subalgebra(pi.src, pi.kernel())
    return Extension(M, pi.src, pi.dst, inc, pi)


def central_quotient(K: HomAlgebra, Z: Subspace) -> Extension:
    """``0 -> Z -> K -> K/Z -> 0`` for an alpha-stable subspace of the center."""
    if not (Z <= center(K)):
        raise PreconditionError("subspace is not central")
    Q, pi = quotient_algebra(K, Z)
    return extension_of(pi)


def trivial_extension(L: HomAlgebra) -> Extension:
    return extension_of(identity_morphism(L))


# ---------------------------------------------------------------------------
# the universal construction
# ---------------------------------------------------------------------------


def leibniz_relations(L: HomAlgebra) -> np.ndarray:
    """The ``n^3`` generators of ``I_L`` as rows of length ``n^2``, triple ``(i, j, k)`` first."""
    n = L.dim
    c, a = L.c, L.alpha
    g = (
        -np.einsum("ija,bk->ijkab", c, a)
        + np.einsum("ika,bj->ijkab", c, a)
        + np.einsum("ai,jkb->ijkab", a, c)
    )
    return g.reshape(n**3, n * n)


@dataclass(frozen=True, eq=False)
class UceResult:
    base: HomAlgebra
    tensor_space: TensorIndex
    carrier: Subspace
    carrier_kernel: Subspace
    q: QuotientSpace
    alg: HomAlgebra
    u: HomMorphism
    hl2: Subspace
    mode: str
    checks: Report = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.alg.dim

    def cls(self, x, y) -> np.ndarray:
        """Quotient coordinates of ``{x, y}``."""
        return self.q.proj @ np.kron(np.asarray(x, dtype=object), np.asarray(y, dtype=object))

    def representative(self, v) -> np.ndarray:
        return self.q.section @ np.asarray(v, dtype=object)

    def extension(self) -> Extension:
        M, inc = subalgebra(self.alg, self.hl2)
        return Extension(M, self.alg, self.base, inc, self.u)


def _build(L: HomAlgebra, mode: str, strict: bool) -> UceResult:
    n = L.dim
    field = L.field
    ti = TensorIndex(n, n)
    gens = leibniz_relations(L)
    I = Subspace.span(gens, n * n)
    ev = L.evaluation()
    checks = Report(f"{mode} uce of {L.name or 'L'}")
    checks.add("bracket kills I_L", not _nonzero(ev @ gens.T).any() if gens.size else True)
    if mode == "alpha":
        carrier = image(np.kron(L.alpha, L.alpha))
        if not (I <= carrier):
            raise TheoremViolation("I_L is not inside alpha(L) (x) alpha(L)")
    else:
        carrier = Subspace.full(n * n, field)
    if not carrier.is_full():
        # alpha-perfect algebras of finite dimension have surjective alpha
        raise TheoremViolation("alpha(L) (x) alpha(L) is a proper subspace for an alpha-perfect algebra")
    q = quotient(n * n, I)
    N = q.dim
    X = ev @ q.section  # n x N: value of the bracket on each class representative
    prod = np.einsum("as,bt->stab", X, X).reshape(N, N, n * n)
    c = np.einsum("stm,rm->str", prod, q.proj) if N else zeros((0, 0, 0), field)
    a2 = np.kron(L.alpha, L.alpha)
    alpha = induced_map(q, q, a2)
    if alpha is None:
        raise TheoremViolation("alpha (x) alpha does not preserve I_L")
    labels = [f"{{{L.labels[k // n]},{L.labels[k % n]}}}" for k in q.free]
    alg = HomAlgebra(c, alpha, field, f"uce({L.name})" if L.name else "", labels)
    u = HomMorphism(alg, L, X)
    hl2 = u.kernel()
    checks.add("u surjective", u.is_surjective())
    checks.add("u morphism", check_morphism(u))
    checks.add("kernel central", _kills(alg, hl2))
    checks.add("hom-Leibniz", check_hom_leibniz(alg))
    checks.add("multiplicative", check_multiplicative(alg))
    if mode == "alpha":
        checks.add("alpha-perfect", is_alpha_perfect(alg))
    else:
        checks.add("perfect", is_perfect(alg))
    checks.data.update({"tensor_dim": n * n, "I_L_dim": I.dim, "uce_dim": N, "hl2_dim": hl2.dim})
    r = UceResult(L, ti, carrier, I, q, alg, u, hl2, mode, checks)
    if strict:
        checks.require()
    return r


def uce(L: HomAlgebra, strict: bool = True) -> UceResult:
    """Universal central extension of a perfect algebra."""
    if not is_perfect(L):
        raise PreconditionError(f"{L.name or 'algebra'} is not perfect")
    return _build(L, "plain", strict)


def uce_alpha(L: HomAlgebra, strict: bool = True) -> UceResult:
    """Universal alpha-central extension of an alpha-perfect algebra."""
    if not is_alpha_perfect(L):
        raise PreconditionError(f"{L.name or 'algebra'} is not alpha-perfect")
    return _build(L, "alpha", strict)


def hl1(L: HomAlgebra) -> int:
    """``dim L / [L, L]``."""
    return L.dim - derived(L).dim


def hl2_of(r: UceResult) -> Subspace:
    return r.hl2


def _section_pair(pi: HomMorphism, M_dim: int, i_m: np.ndarray, seed: int):
    s1 = right_inverse(pi.m)
    rng = random.Random(seed)
    F = pi.src.field
    R = np.array([[F(rng.randint(-5, 5)) for _ in range(pi.dst.dim)] for _ in range(M_dim)], dtype=object)
    R = R.reshape(M_dim, pi.dst.dim)
    s2 = s1 + (i_m @ R if M_dim else zeros(s1.shape, F))
    return s1, s2


def induced_to_central(r: UceResult, e: Extension, seed: int = 0) -> HomMorphism:
    """The morphism ``{x1, x2} -> [s x1, s x2]`` into a central extension of the same base.

    Built with two sections of ``e.pi``; they must agree, descend through
    ``I_L`` and give a morphism over the base.
    """
    if e.L != r.base:
        raise PreconditionError("extension is over a different algebra")
    if not is_central(e):
        raise PreconditionError("extension is not central")
    n = r.base.dim
    K = e.K
    outs = []
    for s in _section_pair(e.pi, e.M.dim, e.i.m, seed):
        H = np.einsum("pa,qb,pqk->kab", s, s, K.c).reshape(K.dim, n * n)
        if r.carrier_kernel.dim and _nonzero(H @ r.carrier_kernel.basis.T).any():
            raise TheoremViolation("section bracket does not vanish on I_L")
        outs.append(H @ r.q.section)
    if not np.all(outs[0] == outs[1]):
        raise TheoremViolation("induced map depends on the section")
    h = HomMorphism(r.alg, K, outs[0])
    check_morphism(h).require("induced map as a morphism")
    if not np.all(e.pi.m @ h.m == r.u.m):
        raise TheoremViolation("pi h != u")
    return h


def _functor(f: HomMorphism, rs: UceResult, rd: UceResult) -> HomMorphism:
    if rs.base != f.src or rd.base != f.dst:
        raise PreconditionError("uce results do not match the morphism")
    F = induced_map(rs.q, rd.q, np.kron(f.m, f.m))
    if F is None:
        raise TheoremViolation("f (x) f does not preserve the relations")
    uf = HomMorphism(rs.alg, rd.alg, F)
    check_morphism(uf).require("induced map on uce")
    if not np.all(rd.u.m @ F == f.m @ rs.u.m):
        raise TheoremViolation("u . uce(f) != f . u")
    if f.src == f.dst and f.is_bijective() and rs is rd:
        if rs.hl2.map(F) != rs.hl2:
            raise TheoremViolation("automorphism does not preserve HL2")
    return uf


def uce_functor(f: HomMorphism, src: UceResult | None = None, dst: UceResult | None = None) -> HomMorphism:
    """``{x1, x2} -> {f x1, f x2}`` between universal central extensions."""
    src = src or uce(f.src)
    dst = dst or (src if f.dst == f.src else uce(f.dst))
    return _functor(f, src, dst)


def uce_alpha_functor(f: HomMorphism, src: UceResult | None = None, dst: UceResult | None = None) -> HomMorphism:
    """The alpha-variant; same formula since ``f alpha = alpha f``."""
    src = src or uce_alpha(f.src)
    dst = dst or (src if f.dst == f.src else uce_alpha(f.dst))
    return _functor(f, src, dst)


def uce_alpha_derivation(r: UceResult, d) -> np.ndarray:
    """The map ``{y1, y2} -> {d y1, alpha y2} + {alpha y1, d y2}`` on the uce.

    ``d`` is a derivation of the base for its action on itself, given as a
    :class:`Derivation` or a bare matrix.
    """
    L = r.base
    dm = d.d if isinstance(d, Derivation) else _coerce(np.asarray(d, dtype=object), L.field)
    der = Derivation(self_action(L), dm)
    v = check_derivation(der)
    if not v:
        raise PreconditionError(f"not a derivation ({v.tag}: {v.witness})")
    phi = np.kron(dm, L.alpha) + np.kron(L.alpha, dm)
    D = induced_map(r.q, r.q, phi)
    if D is None:
        raise TheoremViolation("derivation does not preserve I_L")
    if not np.all(r.u.m @ D == dm @ r.u.m):
        raise TheoremViolation("U . uce(d) != d . U")
    check_derivation(Derivation(self_action(r.alg), D)).require("induced map as a derivation")
    if not (r.hl2.map(D) <= r.hl2):
        raise TheoremViolation("induced derivation leaves HL2")
    return freeze(D)


def is_centrally_closed(L: HomAlgebra) -> bool:
    r = uce(L)
    return r.hl2.is_zero() and r.u.is_bijective()


def is_superperfect(L: HomAlgebra) -> bool:
    if hl1(L) != 0:
        return False
    return uce(L).hl2.is_zero()


def is_simply_connected(L: HomAlgebra) -> bool:
    """Decided through the equivalence with being centrally closed."""
    return is_centrally_closed(L)


def cover_report(pi: HomMorphism) -> Report:
    """Structure of a central surjection ``K -> L`` onto a perfect algebra."""
    K, L = pi.src, pi.dst
    if not is_perfect(L):
        raise PreconditionError("base is not perfect")
    rep = Report("cover")
    rep.add("morphism", check_morphism(pi))
    rep.add("surjective", pi.is_surjective())
    ker = pi.kernel()
    rep.add("central kernel", _kills(K, ker))
    dK = derived(K)
    rep.add("K = [K,K] + Ker", (dK + ker).is_full())
    sub, inc = subalgebra(K, dK)
    rep.add("[K,K] perfect", is_perfect(sub))
    rep.add("[K,K] onto L", dK.map(pi.m).is_full())
    zK, zL = center(K), center(L)
    piz = zK.map(pi.m)
    rep.add("pi Z(K) in Z(L)", piz <= zL)
    rep.add("alpha Z(L) in pi Z(K)", zL.map(L.alpha) <= piz)
    rep.data.update({"K_dim": K.dim, "kernel_dim": ker.dim, "derived_dim": dK.dim})
    return rep
