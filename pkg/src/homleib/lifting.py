"""Lifting automorphisms and derivations across alpha-covers.

For a central surjection ``f: L' -> L`` with ``L'`` alpha-perfect, the
induced map on universal alpha-central extensions is an isomorphism.  With
``P = U' . uce(f)^-1`` (a surjection ``uce(L) -> L'`` whose kernel is the
obstruction subspace ``C``), a map ``X`` on ``uce(L)`` pushes down to
``P X P^+`` on ``L'`` exactly when it respects ``C``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .actions import Derivation, check_derivation, self_action
from .centext import UceResult, extension_of, is_central, uce_alpha, uce_alpha_derivation, uce_alpha_functor
from .errors import PreconditionError, Report, TheoremViolation, Verdict, PASS
from .exactlin import Subspace, _coerce, freeze, inverse, kernel, right_inverse
from .homalg import HomAlgebra, HomMorphism, check_morphism, is_alpha_perfect

__all__ = [
    "AlphaCover",
    "Lift",
    "make_alpha_cover",
    "lift_automorphism",
    "lift_derivation",
    "check_lift_bijections",
]


@dataclass(frozen=True, eq=False)
class AlphaCover:
    f: HomMorphism
    uce_src: UceResult
    uce_dst: UceResult
    uce_f: HomMorphism
    C: Subspace
    P: np.ndarray

    @property
    def cover(self) -> HomAlgebra:
        return self.f.src

    @property
    def base(self) -> HomAlgebra:
        return self.f.dst


@dataclass(frozen=True, eq=False)
class Lift:
    """Outcome of a lifting attempt: the lifted matrix or an obstruction vector."""

    verdict: Verdict
    map: np.ndarray | None = None
    obstruction: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.verdict.ok


def make_alpha_cover(f: HomMorphism) -> AlphaCover:
    Lp, L = f.src, f.dst
    if not f.is_surjective():
        raise PreconditionError("f is not surjective")
    check_morphism(f).require("f as a morphism")
    if not is_central(extension_of(f)):
        raise PreconditionError("kernel of f is not central")
    if not is_alpha_perfect(Lp):
        raise PreconditionError("the covering algebra is not alpha-perfect")
    if not is_alpha_perfect(L):
        raise TheoremViolation("image of an alpha-perfect algebra is not alpha-perfect")
    rs, rd = uce_alpha(Lp), uce_alpha(L)
    uf = uce_alpha_functor(f, rs, rd)
    if not uf.is_bijective():
        raise TheoremViolation("uce(f) is not bijective")
    C = rs.hl2.map(uf.m)
    if not (C <= rd.hl2):
        raise TheoremViolation("C is not inside Ker U")
    P = rs.u.m @ inverse(uf.m)
    if P.size and kernel(P) != C:
        raise TheoremViolation("kernel of the push-down is not C")
    return AlphaCover(f, rs, rd, uf, C, freeze(P))


def _first_escape(X: np.ndarray, C: Subspace, target: Subspace):
    for b in C.basis:
        if not target.contains(X @ b):
            return b
    return None


def _push_down(cov: AlphaCover, X: np.ndarray, seed: int) -> np.ndarray:
    """``P X P^+`` computed with two right inverses of ``P``; they must agree."""
    P = cov.P
    s1 = right_inverse(P)
    out = P @ X @ s1
    if cov.C.dim:
        rng = random.Random(seed)
        F = cov.base.field
        R = np.array([[F(rng.randint(-4, 4)) for _ in range(P.shape[0])] for _ in range(cov.C.dim)], dtype=object)
        s2 = s1 + cov.C.basis.T @ R
        if not np.all(P @ X @ s2 == out):
            raise TheoremViolation("push-down depends on the preimage choice")
    return freeze(out)


def lift_automorphism(cov: AlphaCover, h: HomMorphism, seed: int = 0) -> Lift:
    """Lift an automorphism of the base to the cover, or report why not."""
    L = cov.base
    if h.src != L or h.dst != L:
        raise PreconditionError("h is not an endomorphism of the base")
    check_morphism(h).require("h as a morphism")
    if not h.is_bijective():
        raise PreconditionError("h is not bijective")
    H = uce_alpha_functor(h, cov.uce_dst, cov.uce_dst).m
    bad = _first_escape(H, cov.C, cov.C)
    if bad is not None:
        return Lift(Verdict(False, tuple(bad), "uce(h)(C) != C"), None, bad)
    theta = _push_down(cov, H, seed)
    f = cov.f
    Lp = cov.cover
    check_morphism(HomMorphism(Lp, Lp, theta)).require("lifted automorphism as a morphism")
    if not np.all(f.m @ theta == h.m @ f.m):
        raise TheoremViolation("f theta != h f")
    ker = f.kernel()
    if ker.map(theta) != ker:
        raise TheoremViolation("theta does not preserve Ker f")
    return Lift(PASS, theta)


def lift_derivation(cov: AlphaCover, d, seed: int = 0) -> Lift:
    """Lift a derivation of the base to the cover, or report why not."""
    L = cov.base
    dm = d.d if isinstance(d, Derivation) else _coerce(np.asarray(d, dtype=object), L.field)
    v = check_derivation(Derivation(self_action(L), dm))
    if not v:
        raise PreconditionError(f"not a derivation ({v.tag}: {v.witness})")
    D = uce_alpha_derivation(cov.uce_dst, dm)
    bad = _first_escape(D, cov.C, cov.C)
    if bad is not None:
        return Lift(Verdict(False, tuple(bad), "uce(d)(C) not in C"), None, bad)
    delta = _push_down(cov, D, seed)
    f = cov.f
    Lp = cov.cover
    if not np.all(f.m @ delta == dm @ f.m):
        raise TheoremViolation("f delta != d f")
    if not (f.kernel().map(delta) <= f.kernel()):
        raise TheoremViolation("delta does not preserve Ker f")
    check_derivation(Derivation(self_action(Lp), delta)).require("lifted derivation")
    return Lift(PASS, delta)


def check_lift_bijections(cov: AlphaCover, auts=(), ders=(), seed: int = 0) -> Report:
    """Sample checks of the group law, linearity, injectivity and round trips."""
    rep = Report("lifting")
    L = cov.base
    F = L.field
    f = cov.f
    fplus = right_inverse(f.m)
    lifted = [(h, lift_automorphism(cov, h)) for h in auts]
    good = [(h, lf.map) for h, lf in lifted if lf]
    for a, (h1, t1) in enumerate(good):
        for h2, t2 in good[a:]:
            prod = HomMorphism(L, L, h1.m @ h2.m)
            lp = lift_automorphism(cov, prod)
            rep.add("composition", bool(lp) and np.all(lp.map == t1 @ t2))
        hinv = HomMorphism(L, L, inverse(h1.m))
        li = lift_automorphism(cov, hinv)
        rep.add("inverse", bool(li) and np.all(li.map @ t1 == np.eye(t1.shape[0], dtype=object)))
        # a lift induces back its own base automorphism
        back = HomMorphism(L, L, f.m @ t1 @ fplus)
        lb = lift_automorphism(cov, back)
        rep.add("round trip", bool(lb) and np.all(lb.map == t1))
    for a, (h1, t1) in enumerate(good):
        for h2, t2 in good[a + 1 :]:
            if not np.all(h1.m == h2.m):
                rep.add("injective", not np.all(t1 == t2))
    dl = [(dm, lift_derivation(cov, dm)) for dm in ders]
    dgood = [(_mat(dm), lf.map) for dm, lf in dl if lf]
    rng = random.Random(seed)
    for a, (d1, x1) in enumerate(dgood):
        for d2, x2 in dgood[a:]:
            c1, c2 = F(rng.randint(-6, 6)), F(rng.randint(-6, 6))
            lc = lift_derivation(cov, c1 * d1 + c2 * d2)
            rep.add("linearity", bool(lc) and np.all(lc.map == c1 * x1 + c2 * x2))
        back = f.m @ x1 @ fplus
        lb = lift_derivation(cov, back)
        rep.add("derivation round trip", bool(lb) and np.all(lb.map == x1))
    rep.data.update({"automorphisms": len(auts), "lifted": len(good), "derivations": len(ders), "derivations_lifted": len(dgood)})
    return rep


def _mat(d):
    return d.d if isinstance(d, Derivation) else np.asarray(d, dtype=object)
