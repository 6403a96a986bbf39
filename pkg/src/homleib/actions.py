"""Hom-actions, semidirect products, split extensions and derivations.

An action of ``L`` (dim n) on ``M`` (dim p) is a pair of tensors:
``lam[i, j, :]`` is ``l_i . m_j`` and ``rho[i, j, :]`` is ``m_i . l_j``,
both in ``M`` coordinates.  Semidirect products live on ``M (+) L`` with
the ``M`` coordinates first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PASS, PreconditionError, Verdict
from .exactlin import (
    Subspace,
    _coerce,
    _nonzero,
    freeze,
    identity,
    kernel,
    right_inverse,
    zeros,
)
from .homalg import (
    HomAlgebra,
    HomMorphism,
    check_hom_leibniz,
    check_morphism,
    check_multiplicative,
    compose,
    is_subalgebra,
    is_two_sided_ideal,
    subalgebra,
)

__all__ = [
    "HomAction",
    "SplitExtension",
    "Derivation",
    "AXIOMS",
    "axiom_defects",
    "check_action_axioms",
    "failing_axioms",
    "sign_convention_suspect",
    "action_from_embedding",
    "self_action",
    "adjoint_representation",
    "trivial_action",
    "pullback_action",
    "semidirect",
    "semidirect_extension",
    "check_split",
    "induced_action_from_split",
    "check_split_equivalence",
    "check_derivation",
    "derivation_space",
    "inner_derivation",
    "derivation_to_hom",
    "hom_to_derivation",
]

AXIOMS = "abcdefgh"


@dataclass(frozen=True, eq=False)
class HomAction:
    actor: HomAlgebra
    target: HomAlgebra
    lam: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        n, p = self.actor.dim, self.target.dim
        f = self.target.field
        lam = np.asarray(self.lam, dtype=object)
        rho = np.asarray(self.rho, dtype=object)
        if lam.size == 0:
            lam = zeros((n, p, p), f)
        if rho.size == 0:
            rho = zeros((p, n, p), f)
        if lam.shape != (n, p, p) or rho.shape != (p, n, p):
            raise ValueError(f"action tensors {lam.shape}, {rho.shape} do not fit actor {n}, target {p}")
        object.__setattr__(self, "lam", freeze(_coerce(lam, f)))
        object.__setattr__(self, "rho", freeze(_coerce(rho, f)))

    def left(self, x, m) -> np.ndarray:
        """``x . m``"""
        return np.einsum("i,j,ijk->k", np.asarray(x, dtype=object), np.asarray(m, dtype=object), self.lam)

    def right(self, m, x) -> np.ndarray:
        """``m . x``"""
        return np.einsum("i,j,ijk->k", np.asarray(m, dtype=object), np.asarray(x, dtype=object), self.rho)

    def is_zero(self) -> bool:
        return not (_nonzero(self.lam).any() or _nonzero(self.rho).any())

    def is_symmetric(self) -> bool:
        """``x . m + m . x == 0`` for all basis pairs."""
        return not _nonzero(self.lam + self.rho.transpose(1, 0, 2)).any()

    def same_tensors(self, other: "HomAction") -> bool:
        return (
            self.lam.shape == other.lam.shape
            and self.rho.shape == other.rho.shape
            and bool(np.all(self.lam == other.lam))
            and bool(np.all(self.rho == other.rho))
        )


def _e(spec, *ops):
    return np.einsum(spec, *ops, optimize=True)


def axiom_defects(a: HomAction) -> dict[str, np.ndarray]:
    """Left side minus right side of each action axiom, on basis tuples."""
    cL, aL = a.actor.c, a.actor.alpha
    cM, aM = a.target.c, a.target.alpha
    lam, rho = a.lam, a.rho
    out = {}
    # a) aM(m).[x,y] = (m.x).aL(y) - (m.y).aL(x)            indices (m, x, y)
    t = _e("mxr,sy,rsk->mxyk", rho, aL, rho)
    out["a"] = _e("pm,xyq,pqk->mxyk", aM, cL, rho) - t + t.transpose(0, 2, 1, 3)
    # b) aL(x).(m.y) = (x.m).aL(y) - [x,y].aM(m)             indices (x, m, y)
    out["b"] = (
        _e("px,myr,prk->xmyk", aL, rho, lam)
        - _e("xmr,sy,rsk->xmyk", lam, aL, rho)
        + _e("xyq,pm,qpk->xmyk", cL, aM, lam)
    )
    # c) aL(x).(y.m) = [x,y].aM(m) - (x.m).aL(y)             indices (x, y, m)
    out["c"] = (
        _e("px,ymr,prk->xymk", aL, lam, lam)
        - _e("xyq,pm,qpk->xymk", cL, aM, lam)
        + _e("xmr,sy,rsk->xymk", lam, aL, rho)
    )
    # d) aL(x).[m,m'] = [x.m, aM(m')] - [x.m', aM(m)]         indices (x, m, m')
    t = _e("xar,sb,rsk->xabk", lam, aM, cM)
    out["d"] = _e("px,abq,pqk->xabk", aL, cM, lam) - t + t.transpose(0, 2, 1, 3)
    # e) [aM(m), m'.x] = [m,m'].aL(x) - [m.x, aM(m')]         indices (m, m', x)
    e1 = _e("abq,px,qpk->abxk", cM, aL, rho)
    e2 = _e("axr,sb,rsk->abxk", rho, aM, cM)
    out["e"] = _e("pa,bxq,pqk->abxk", aM, rho, cM) - e1 + e2
    # f) [aM(m), x.m'] = [m.x, aM(m')] - [m,m'].aL(x)         indices (m, m', x)
    out["f"] = _e("pa,xbq,pqk->abxk", aM, lam, cM) - e2 + e1
    # g) aM(x.m) = aL(x).aM(m)                               indices (x, m)
    out["g"] = _e("xmr,kr->xmk", lam, aM) - _e("px,qm,pqk->xmk", aL, aM, lam)
    # h) aM(m.x) = aM(m).aL(x)                               indices (m, x)
    out["h"] = _e("mxr,kr->mxk", rho, aM) - _e("pm,qx,pqk->mxk", aM, aL, rho)
    return out


def _first_hit(arr):
    hits = np.argwhere(_nonzero(arr))
    return None if hits.size == 0 else tuple(int(i) for i in hits[0][:-1])


def failing_axioms(a: HomAction) -> list[str]:
    """Tags of every violated axiom, in order."""
    if a.actor.dim == 0 or a.target.dim == 0:
        return []
    return [k for k, v in axiom_defects(a).items() if _nonzero(v).any()]


def check_action_axioms(a: HomAction) -> Verdict:
    """First failing axiom (tag ``'a'``..``'h'``) with its basis indices.

    The witness indices follow the variable order of the axiom as written
    in the comments of :func:`axiom_defects`.
    """
    if a.actor.dim == 0 or a.target.dim == 0:
        return PASS
    for tag, defect in axiom_defects(a).items():
        hit = _first_hit(defect)
        if hit is not None:
            return Verdict(False, hit, tag)
    return PASS


def sign_convention_suspect(a: HomAction) -> bool:
    """True when exactly one of the mirrored axioms ``b`` and ``c`` fails.

    The two differ only in argument order and sign, so a lone failure there
    more often points at a sign convention in the input than at a bad action.
    """
    return failing_axioms(a) in (["b"], ["c"])


def trivial_action(L: HomAlgebra, M: HomAlgebra) -> HomAction:
    return HomAction(L, M, zeros((L.dim, M.dim, M.dim), M.field), zeros((M.dim, L.dim, M.dim), M.field))


def action_from_embedding(L: HomAlgebra, K: Subspace, H: Subspace) -> HomAction:
    """Action of the subalgebra ``K`` on the ideal ``H`` through the bracket of ``L``."""
    if not is_subalgebra(L, K):
        raise PreconditionError("K is not a subalgebra")
    if not is_two_sided_ideal(L, H):
        raise PreconditionError("H is not a two-sided ideal")
    actor, _ = subalgebra(L, K)
    target, _ = subalgebra(L, H)
    piv = list(H.pivots)
    kb, hb = K.basis, H.basis
    lam = _e("ap,bq,pqk->abk", kb, hb, L.c)[:, :, piv] if K.dim and H.dim else zeros((K.dim, H.dim, H.dim), L.field)
    rho = _e("ap,bq,pqk->abk", hb, kb, L.c)[:, :, piv] if K.dim and H.dim else zeros((H.dim, K.dim, H.dim), L.field)
    return HomAction(actor, target, lam, rho)


def self_action(L: HomAlgebra) -> HomAction:
    """``L`` acting on itself by the bracket."""
    return HomAction(L, L, L.c, L.c)


def adjoint_representation(L: HomAlgebra) -> HomAction:
    """The bracket action of ``L`` on the abelian algebra underlying ``L``."""
    M = HomAlgebra(zeros((L.dim,) * 3, L.field), L.alpha, L.field, L.name and f"|{L.name}|", L.labels)
    return HomAction(L, M, L.c, L.c)


def pullback_action(a: HomAction, f: HomMorphism) -> HomAction:
    """Action of ``f.src`` on ``a.target`` via ``x . m = f(x) . m``."""
    if f.dst.dim != a.actor.dim:
        raise ValueError("morphism does not land in the actor")
    lam = _e("qx,qjk->xjk", f.m, a.lam)
    rho = _e("qx,iqk->ixk", f.m, a.rho)
    return HomAction(f.src, a.target, lam, rho)


# ---------------------------------------------------------------------------
# semidirect products and split extensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SplitExtension:
    """``0 -> M -i-> B -pi-> C -> 0`` with a splitting ``s``."""

    M: HomAlgebra
    B: HomAlgebra
    C: HomAlgebra
    i: HomMorphism
    pi: HomMorphism
    s: HomMorphism


def semidirect(a: HomAction, name: str = "") -> tuple[HomAlgebra, HomMorphism, HomMorphism, HomMorphism]:
    """``M x| L`` with its canonical maps ``(i, pi, sigma)``."""
    M, L = a.target, a.actor
    p, n = M.dim, L.dim
    field = M.field
    c = zeros((p + n,) * 3, field)
    c[:p, :p, :p] = M.c
    c[p:, :p, :p] = _e("qi,qjk->ijk", L.alpha, a.lam)  # [(0,l), (m,0)] = aL(l).m
    c[:p, p:, :p] = _e("qj,iqk->ijk", L.alpha, a.rho)  # [(m,0), (0,l)] = m.aL(l)
    c[p:, p:, p:] = L.c
    alpha = zeros((p + n, p + n), field)
    alpha[:p, :p] = M.alpha
    alpha[p:, p:] = L.alpha
    labels = list(M.labels) + list(L.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{x}_M" for x in M.labels] + [f"{x}_L" for x in L.labels]
    G = HomAlgebra(c, alpha, field, name or (M.name and L.name and f"{M.name}x|{L.name}"), labels)
    im = zeros((p + n, p), field)
    im[:p, :p] = identity(p, field)
    pm = zeros((n, p + n), field)
    pm[:, p:] = identity(n, field)
    sm = pm.T.copy()
    return G, HomMorphism(M, G, im), HomMorphism(G, L, pm), HomMorphism(L, G, sm)


def semidirect_extension(a: HomAction, name: str = "") -> SplitExtension:
    G, i, pi, s = semidirect(a, name)
    return SplitExtension(a.target, G, a.actor, i, pi, s)


def projection_to_target(a: HomAction, G: HomAlgebra) -> np.ndarray:
    """Matrix of ``(m, l) -> m``."""
    p, n = a.target.dim, a.actor.dim
    t = zeros((p, p + n), a.target.field)
    t[:, :p] = identity(p, a.target.field)
    return t


def check_split(se: SplitExtension) -> Verdict:
    """Exactness, splitting and twist compatibility of ``se``."""
    for tag, f in (("i", se.i), ("pi", se.pi), ("s", se.s)):
        v = check_morphism(f)
        if not v:
            return Verdict(False, v.witness, f"{tag} not a morphism")
    if not se.i.is_injective():
        return Verdict(False, None, "i not injective")
    if not se.pi.is_surjective():
        return Verdict(False, None, "pi not surjective")
    if se.i.image() != se.pi.kernel():
        return Verdict(False, None, "image(i) != kernel(pi)")
    ps = se.pi.m @ se.s.m
    if not np.all(ps == identity(se.C.dim, se.C.field)):
        return Verdict(False, None, "pi s != Id")
    return PASS


def _left_inverse(m: np.ndarray) -> np.ndarray:
    return right_inverse(np.asarray(m, dtype=object).T).T


def induced_action_from_split(se: SplitExtension) -> HomAction:
    """``c . a = i^-1 [s c, i a]`` and ``a . c = i^-1 [i a, s c]``; needs ``alpha_C = Id``."""
    C = se.C
    if not np.all(C.alpha == identity(C.dim, C.field)):
        raise PreconditionError("the quotient must carry the identity twist")
    p = se.M.dim
    if p == 0:
        return trivial_action(C, se.M)
    im, sm = se.i.m, se.s.m
    left = _e("pa,qb,pqk->abk", sm, im, se.B.c)  # [s c_a, i m_b]
    right = _e("pa,qb,pqk->abk", im, sm, se.B.c)  # [i m_a, s c_b]
    inv = _left_inverse(im)
    lam = _e("tk,abk->abt", inv, left)
    rho = _e("tk,abk->abt", inv, right)
    if _nonzero(_e("kt,abt->abk", im, lam) - left).any() or _nonzero(_e("kt,abt->abk", im, rho) - right).any():
        raise PreconditionError("brackets with s(C) leave image(i); the kernel is not an ideal")
    return HomAction(C, se.M, lam, rho)


def check_split_equivalence(se: SplitExtension) -> tuple[Verdict, HomMorphism | None]:
    """Compare ``se`` with the semidirect extension of its induced action.

    Returns the verdict and ``phi(a, c) = i(a) + s(c)`` when it is an
    isomorphism making both squares commute.
    """
    v = check_split(se)
    if not v:
        return v, None
    act = induced_action_from_split(se)
    v = check_action_axioms(act)
    if not v:
        return Verdict(False, v.witness, f"induced action axiom {v.tag}"), None
    G, j, p, _ = semidirect(act)
    phi = HomMorphism(G, se.B, np.concatenate([se.i.m, se.s.m], axis=1))
    v = check_morphism(phi)
    if not v:
        return Verdict(False, v.witness, "phi not a morphism"), phi
    if not phi.is_bijective():
        return Verdict(False, None, "phi not bijective"), phi
    if not np.all(phi.m @ j.m == se.i.m):
        return Verdict(False, None, "phi j != i"), phi
    if not np.all(se.pi.m @ phi.m == p.m):
        return Verdict(False, None, "pi phi != p"), phi
    return PASS, phi


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Derivation:
    """A linear ``d: X -> M`` for an action of ``L`` on ``M``.

    With ``along`` unset, ``X = L``.  Otherwise ``along`` is a morphism
    ``X -> L`` and the law uses ``along(x)`` wherever an element of ``L``
    acts.
    """

    action: HomAction
    d: np.ndarray
    along: HomMorphism | None = None

    def __post_init__(self):
        d = np.asarray(self.d, dtype=object)
        if d.size == 0:
            d = zeros((self.rep.dim, self.src.dim), self.rep.field)
        if d.shape != (self.rep.dim, self.src.dim):
            raise ValueError(f"derivation matrix {d.shape} does not fit {self.src.dim} -> {self.rep.dim}")
        object.__setattr__(self, "d", freeze(_coerce(d, self.rep.field)))

    @property
    def src(self) -> HomAlgebra:
        return self.along.src if self.along is not None else self.action.actor

    @property
    def rep(self) -> HomAlgebra:
        return self.action.target

    def effective_action(self) -> HomAction:
        return self.action if self.along is None else pullback_action(self.action, self.along)


def _derivation_defect(act: HomAction, d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    X, M = act.actor, act.target
    bracket = _e("xyq,kq->xyk", X.c, d)
    t1 = _e("pa,qb,pqk->abk", X.alpha, d, act.lam)  # aX(x1) . d(x2)
    t2 = _e("pa,qb,pqk->abk", d, X.alpha, act.rho)  # d(x1) . aX(x2)
    return bracket - t1 - t2, d @ X.alpha - M.alpha @ d


def check_derivation(der: Derivation) -> Verdict:
    """Leibniz rule on basis pairs (witness ``(i, j)``) and ``d alpha = alpha d`` (witness ``(j,)``)."""
    if der.src.dim == 0 or der.rep.dim == 0:
        return PASS
    act = der.effective_action()
    rule, twist = _derivation_defect(act, der.d)
    hit = _first_hit(rule)
    if hit is not None:
        return Verdict(False, hit, "rule")
    hits = np.argwhere(_nonzero(twist))
    if hits.size:
        return Verdict(False, (int(hits[0][1]),), "alpha")
    return PASS


def derivation_space(act: HomAction, along: HomMorphism | None = None) -> list[np.ndarray]:
    """A basis of all derivations for ``act`` (pulled back along ``along`` if given)."""
    eff = act if along is None else pullback_action(act, along)
    n, p = eff.actor.dim, eff.target.dim
    field = eff.target.field
    if n == 0 or p == 0:
        return []
    cols = []
    for r in range(p):
        for s in range(n):
            e = zeros((p, n), field)
            e[r, s] = field(1)
            rule, twist = _derivation_defect(eff, e)
            cols.append(np.concatenate([rule.reshape(-1), twist.reshape(-1)]))
    system = np.array(cols, dtype=object).T
    return [v.reshape(p, n) for v in kernel(system).basis]


def inner_derivation(L: HomAlgebra, z) -> Derivation:
    """``x -> [x, z]`` on the self-action; a derivation whenever ``alpha(z) = z``."""
    return Derivation(self_action(L), L.right(z))


def derivation_to_hom(f: HomMorphism, d: np.ndarray, act: HomAction) -> HomMorphism:
    """``x -> (d x, f x)`` into ``M x| L`` for an abelian ``M``."""
    if not act.target.is_abelian():
        raise PreconditionError("the target must be abelian (a representation)")
    if f.dst.dim != act.actor.dim:
        raise ValueError("f does not land in the actor")
    der = Derivation(act, d, f)
    v = check_derivation(der)
    if not v:
        raise PreconditionError(f"d is not an f-derivation ({v.tag}: {v.witness})")
    G, _, _, _ = semidirect(act)
    h = HomMorphism(f.src, G, np.concatenate([der.d, f.m], axis=0))
    check_morphism(h).require("the pair (d, f) as a morphism")
    return h


def hom_to_derivation(h: HomMorphism, act: HomAction) -> tuple[HomMorphism, np.ndarray]:
    """Split a morphism into ``M x| L`` into ``(pi h, theta h)``."""
    p = act.target.dim
    G, _, pi, _ = semidirect(act)
    if h.dst != G:
        raise ValueError("h does not land in the semidirect product of this action")
    f = compose(pi, h)
    d = projection_to_target(act, G) @ h.m
    return HomMorphism(h.src, act.actor, f.m), freeze(_coerce(d[:p], act.target.field))


def semidirect_report(a: HomAction) -> dict[str, Verdict]:
    G, i, pi, s = semidirect(a)
    se = SplitExtension(a.target, G, a.actor, i, pi, s)
    return {
        "hom_leibniz": check_hom_leibniz(G),
        "multiplicative": check_multiplicative(G),
        "split_exact": check_split(se),
    }
