"""Universal alpha-central extensions of semidirect products.

Setting: a split extension ``0 -> M -t-> G -p-> Q -> 0`` with splitting ``s``,
``M`` alpha-perfect and ``Q`` perfect with identity twist.  The induced maps
on universal extensions are ``tau = uce(t)``, ``pi_hat = uce(p)`` and
``sigma = uce(s)``.  The checks below compare the decomposition of
``uce(G)`` against ``uce(M)`` and ``uce(Q)`` as exact subspace identities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import (
    HomAction,
    SplitExtension,
    check_action_axioms,
    check_split,
    check_split_equivalence,
    induced_action_from_split,
    semidirect,
)
from .centext import UceResult, extension_of, induced_to_central, is_central, uce, uce_alpha, uce_alpha_functor
from .errors import PreconditionError, Report, TheoremViolation
from .exactlin import Subspace, identity, induced_map, zeros
from .homalg import (
    HomAlgebra,
    HomMorphism,
    check_morphism,
    direct_product,
    is_alpha_perfect,
    is_perfect,
    is_subalgebra,
    is_two_sided_ideal,
    subalgebra,
)

__all__ = [
    "SdpSetup",
    "make_setup",
    "induced_action_on_ker_pi",
    "induced_action_uceQ_on_uceM",
    "check_statement_1_2_3",
    "check_statement_4_5",
    "check_theorem_equivalences",
    "check_auxiliary_containments",
    "check_direct_product",
    "check_all",
]


@dataclass(frozen=True, eq=False)
class SdpSetup:
    se: SplitExtension
    uce_M: UceResult
    uce_Q: UceResult
    uce_G: UceResult
    tau: HomMorphism
    pi_hat: HomMorphism
    sigma: HomMorphism
    action: HomAction
    symmetric: bool

    @property
    def M(self) -> HomAlgebra:
        return self.se.M

    @property
    def G(self) -> HomAlgebra:
        return self.se.B

    @property
    def Q(self) -> HomAlgebra:
        return self.se.C


def make_setup(se: SplitExtension) -> SdpSetup:
    M, G, Q = se.M, se.B, se.C
    v = check_split(se)
    if not v:
        raise PreconditionError(f"not a split extension: {v.tag}")
    if not np.all(Q.alpha == identity(Q.dim, Q.field)):
        raise PreconditionError("Q must carry the identity twist")
    if not is_perfect(Q):
        raise PreconditionError("Q is not perfect")
    if not is_alpha_perfect(M):
        raise PreconditionError("M is not alpha-perfect")
    if not is_alpha_perfect(G):
        raise PreconditionError("G is not alpha-perfect")
    act = induced_action_from_split(se)
    check_action_axioms(act).require("induced action")
    rM, rQ, rG = uce_alpha(M), uce(Q), uce_alpha(G)
    tau = uce_alpha_functor(se.i, rM, rG)
    pi_hat = uce_alpha_functor(se.pi, rG, rQ)
    sigma = uce_alpha_functor(se.s, rQ, rG)
    if not np.all(pi_hat.m @ sigma.m == identity(rQ.dim, Q.field)):
        raise TheoremViolation("pi_hat sigma != Id")
    return SdpSetup(se, rM, rQ, rG, tau, pi_hat, sigma, act, act.is_symmetric())


def _ker_pi_extension(s: SdpSetup) -> SplitExtension:
    K = s.pi_hat.kernel()
    Kalg, inc = subalgebra(s.uce_G.alg, K)
    return SplitExtension(Kalg, s.uce_G.alg, s.uce_Q.alg, inc, s.pi_hat, s.sigma)


def induced_action_on_ker_pi(s: SdpSetup) -> tuple[HomAction, Report]:
    """Action of ``uce(Q)`` on ``Ker(pi_hat)`` through ``sigma``, with its checks."""
    se = _ker_pi_extension(s)
    act = induced_action_from_split(se)
    rep = Report("action on Ker pi_hat")
    rep.add("axioms", check_action_axioms(act))
    v, _ = check_split_equivalence(se)
    rep.add("split equivalence", v)
    # independent route: {s[q1,q2], [y1,y2]} for representatives in the tensor squares
    rG, rQ = s.uce_G, s.uce_Q
    G = s.G
    kb = se.i.m  # columns: Ker pi_hat basis in uce_G coordinates
    if kb.shape[1] and rQ.dim:
        left = s.se.s.m @ rQ.u.m  # s[q1,q2] for each uce_Q basis class
        right = rG.u.m @ kb  # [y1,y2] for each kernel basis vector
        lam = np.einsum("as,bt->stab", left, right).reshape(rQ.dim, kb.shape[1], G.dim**2) @ rG.q.proj.T
        rho = np.einsum("at,bs->tsab", right, left).reshape(kb.shape[1], rQ.dim, G.dim**2) @ rG.q.proj.T
        rep.add("left formula", np.all(np.einsum("kt,abt->abk", kb, act.lam) == lam))
        rep.add("right formula", np.all(np.einsum("kt,abt->abk", kb, act.rho) == rho))
    return act, rep


def _mult(w, lam):
    """Matrix of ``m -> w . m``."""
    return np.einsum("k,kjr->rj", w, lam)


def _mult_right(w, rho):
    """Matrix of ``m -> m . w``."""
    return np.einsum("k,jkr->rj", w, rho)


def _swap(n, field):
    S = zeros((n * n, n * n), field)
    for i in range(n):
        for j in range(n):
            S[j * n + i, i * n + j] = field(1)
    return S


def induced_action_uceQ_on_uceM(s: SdpSetup) -> HomAction:
    """``{q1,q2} . {y1,y2} = {w.y1, a y2} - {w.y2, a y1}`` and
    ``{y1,y2} . {q1,q2} = {y1.w, a y2} - {a y1, w.y2}`` with ``w = [q1,q2]``.
    """
    if not s.symmetric:
        raise PreconditionError("the action of Q on M is not symmetric")
    rM, rQ = s.uce_M, s.uce_Q
    M = s.M
    n = M.dim
    F = M.field
    NQ, NM = rQ.dim, rM.dim
    lam = zeros((NQ, NM, NM), F)
    rho = zeros((NM, NQ, NM), F)
    a = M.alpha
    one = identity(n * n, F)
    S = _swap(n, F)
    for t in range(NQ):
        w = rQ.u.m[:, t]
        A = _mult(w, s.action.lam)
        B = _mult_right(w, s.action.rho)
        left = np.kron(A, a) @ (one - S)
        right = np.kron(B, a) - np.kron(a, A)
        Lt = induced_map(rM.q, rM.q, left)
        Rt = induced_map(rM.q, rM.q, right)
        if Lt is None or Rt is None:
            raise TheoremViolation("induced action does not descend to uce(M)")
        lam[t] = Lt.T
        rho[:, t, :] = Rt.T
    return HomAction(rQ.alg, rM.alg, lam, rho)


def check_statement_1_2_3(s: SdpSetup) -> Report:
    rep = Report("statements 1-3")
    rG = s.uce_G
    full = Subspace.full(rG.dim, rG.alg.field)
    ker_pi = s.pi_hat.kernel()
    im_tau = s.tau.image()
    im_sigma = s.sigma.image()
    rep.add("Ker pi_hat = tau(uce M)", ker_pi == im_tau)
    rep.add("1: sum is everything", (ker_pi + im_sigma) == full)
    rep.add("1: sum is direct", (ker_pi & im_sigma).is_zero())
    rep.add("1: Ker pi_hat ideal", is_two_sided_ideal(rG.alg, ker_pi))
    rep.add("1: sigma image subalgebra", is_subalgebra(rG.alg, im_sigma))
    _, arep = induced_action_on_ker_pi(s)
    rep.extend(arep, "1: ")
    rep.add("2: sigma injective", s.sigma.is_injective())
    rep.add("2: sigma morphism", check_morphism(s.sigma))
    kG = rG.hl2
    a = s.uce_M.hl2.map(s.tau.m)
    b = s.uce_Q.hl2.map(s.sigma.m)
    rep.add("3: Ker U_G = tau(Ker U_M) + sigma(HL2 Q)", kG == a + b)
    rep.add("3: sum is direct", (a & b).is_zero())
    rep.data.update({"uce_G_dim": rG.dim, "ker_pi_dim": ker_pi.dim, "hl2_G": kG.dim, "hl2_M": s.uce_M.hl2.dim, "hl2_Q": s.uce_Q.hl2.dim})
    return rep


def _phi_parts(s: SdpSetup):
    act = induced_action_uceQ_on_uceM(s)
    SD, j, p, sig = semidirect(act)
    Phi = HomMorphism(SD, s.G, np.concatenate([s.se.i.m @ s.uce_M.u.m, s.se.s.m @ s.uce_Q.u.m], axis=1))
    TS = HomMorphism(SD, s.uce_G.alg, np.concatenate([s.tau.m, s.sigma.m], axis=1))
    return act, SD, Phi, TS


def _action_span(s: SdpSetup, act: HomAction) -> Subspace:
    NM = s.uce_M.dim
    K = s.uce_M.hl2
    vecs = []
    for k in K.basis:
        for t in range(act.actor.dim):
            vecs.append(np.einsum("j,jr->r", k, act.lam[t]))
            vecs.append(np.einsum("j,jr->r", k, act.rho[:, t, :]))
    total = NM + act.actor.dim
    padded = [np.concatenate([v, zeros(act.actor.dim, s.M.field)]) for v in vecs]
    return Subspace.span(np.array(padded, dtype=object).reshape(-1, total), total)


def check_statement_4_5(s: SdpSetup) -> Report:
    rep = Report("statements 4-5")
    act, SD, Phi, TS = _phi_parts(s)
    rep.add("action axioms", check_action_axioms(act))
    rep.add("4: Phi morphism", check_morphism(Phi))
    rep.add("4: Phi surjective", Phi.is_surjective())
    rep.add("4: U_G (tau x| sigma) = Phi", np.all(s.uce_G.u.m @ TS.m == Phi.m))
    rep.add("4: tau x| sigma morphism", check_morphism(TS))
    NM, NQ = s.uce_M.dim, s.uce_Q.dim
    kM = [np.concatenate([v, zeros(NQ, SD.field)]) for v in s.uce_M.hl2.basis]
    kQ = [np.concatenate([zeros(NM, SD.field), v]) for v in s.uce_Q.hl2.basis]
    expected = Subspace.span(np.array(kM + kQ, dtype=object).reshape(-1, SD.dim), SD.dim)
    rep.add("4: Ker Phi = Ker U_M + HL2(Q)", Phi.kernel() == expected)
    span = _action_span(s, act)
    rep.add("5: Ker(tau x| sigma) = action span", TS.kernel() == span)
    rep.data.update({"SD_dim": SD.dim, "ker_Phi": Phi.kernel().dim, "ker_tau_sigma": TS.kernel().dim})
    return rep


def check_theorem_equivalences(s: SdpSetup) -> Report:
    """The four equivalent conditions, evaluated independently."""
    rep = Report("equivalences")
    act, SD, Phi, TS = _phi_parts(s)
    a = is_central(extension_of(Phi))
    b = _action_span(s, act).is_zero()
    c = TS.is_bijective()
    d = s.tau.is_injective()
    rep.data.update({"a_central": a, "b_trivial_action": b, "c_bijective": c, "d_tau_injective": d})
    rep.add("four conditions agree", a == b == c == d, witness=(a, b, c, d))
    if not (a == b == c == d):
        # data for diagnosing the failure
        rep.data.update({"ker_tau": s.tau.kernel().dim, "ker_tau_sigma": TS.kernel().dim, "action_span": _action_span(s, act).dim})
    if a and b and c and d:
        h = induced_to_central(s.uce_G, extension_of(Phi))
        rep.add("uce(G) maps isomorphically", h.is_bijective())
        rep.add("inverse of tau x| sigma", np.all(TS.m @ h.m == identity(s.uce_G.dim, SD.field)))
    return rep


def check_auxiliary_containments(s: SdpSetup) -> Report:
    """Classes ``{s(q), m}`` and ``{m, s(q)}`` lie in ``tau(uce M)``."""
    rep = Report("auxiliary")
    rG = s.uce_G
    im = s.tau.image()
    T, Sm = s.se.i.m, s.se.s.m
    left = np.einsum("aq,bm->qmab", Sm, T).reshape(-1, s.G.dim**2) @ rG.q.proj.T
    right = np.einsum("am,bq->mqab", T, Sm).reshape(-1, s.G.dim**2) @ rG.q.proj.T
    rep.add("{s(Q), M} in tau", Subspace.span(left, rG.dim) <= im)
    rep.add("{M, s(Q)} in tau", Subspace.span(right, rG.dim) <= im)
    return rep


def check_direct_product(s: SdpSetup) -> Report:
    """For a trivial action: ``uce(M x Q)`` against ``uce(M) x uce(Q)``."""
    rep = Report("direct product")
    if not s.action.is_zero():
        raise PreconditionError("the action is not trivial")
    act, SD, Phi, TS = _phi_parts(s)
    P = direct_product(s.uce_M.alg, s.uce_Q.alg)
    rep.add("dimensions", s.uce_G.dim == s.uce_M.dim + s.uce_Q.dim)
    rep.add("brackets", SD == P)
    rep.add("isomorphism", TS.is_bijective() and bool(check_morphism(TS)))
    return rep


def check_all(s: SdpSetup) -> Report:
    rep = Report("split extension suite")
    rep.extend(check_statement_1_2_3(s))
    rep.extend(check_auxiliary_containments(s))
    rep.data["symmetric"] = s.symmetric
    if s.symmetric:
        rep.extend(check_statement_4_5(s))
        rep.extend(check_theorem_equivalences(s))
        if s.action.is_zero():
            rep.extend(check_direct_product(s), "DP: ")
    return rep
