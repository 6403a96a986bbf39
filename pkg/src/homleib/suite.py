"""Whole-corpus checks, grouped the way the ``corpus`` command reports them."""

from __future__ import annotations

import random

import numpy as np

from . import corpus
from .actions import (
    adjoint_representation,
    check_action_axioms,
    check_split_equivalence,
    derivation_space,
    derivation_to_hom,
    hom_to_derivation,
    induced_action_from_split,
    self_action,
    semidirect_extension,
    semidirect_report,
)
from .centext import (
    cover_report,
    extension_of,
    induced_to_central,
    is_centrally_closed,
    leibniz_relations,
    trivial_extension,
    uce,
    uce_alpha,
    uce_alpha_derivation,
    uce_alpha_functor,
    uce_functor,
)
from .errors import PreconditionError, Report
from .exactlin import QQ, _nonzero, identity, inverse, matrix
from .homalg import (
    HomAlgebra,
    HomMorphism,
    check_hom_leibniz,
    check_morphism,
    check_multiplicative,
    identity_morphism,
    is_alpha_perfect,
    is_perfect,
    yau_twist,
)
from .lifting import check_lift_bijections, lift_automorphism, lift_derivation, make_alpha_cover
from .sdpuce import _phi_parts, check_all, make_setup

VALID_ALGEBRAS = [a for a in corpus.ALGEBRAS]
VALID_ACTIONS = [a for a in corpus.ACTIONS if a != "BAD_AB2_NL2"]
CENTRAL_COVERS = ("U_SL2", "U_TAKIFF", "U_SL2V4", "COVER_OBS", "PROJ_SL2A")


def axioms(seed: int) -> Report:
    rep = Report("axioms")
    rng = random.Random(seed)
    for name in VALID_ALGEBRAS:
        L = corpus.get(name)
        rep.add(f"{name} hom-Leibniz", check_hom_leibniz(L))
        rep.add(f"{name} multiplicative", check_multiplicative(L))
        if _nonzero(L.alpha).any():
            i, j, k = (rng.randrange(L.dim) for _ in range(3))
            c = L.c.copy()
            c[i, j, k] += QQ(1)
            M = HomAlgebra(c, L.alpha)
            flipped = not check_hom_leibniz(M) or not check_multiplicative(M)
            rep.data[f"{name} mutation {(i, j, k)} flips"] = flipped
    rep.add("BAD_AB2_NL2 rejected", not check_action_axioms(corpus.get("BAD_AB2_NL2")))
    return rep


def yau(seed: int, count: int = 50) -> Report:
    rep = Report("twists")
    rng = random.Random(seed)
    hosts = [corpus.get(n) for n in ("SL2", "NL2", "HEIS", "SD1", "TAKIFF")]
    done = 0
    while done < count:
        L = hosts[done % len(hosts)]
        phi = corpus.random_endomorphism(L, rng)
        if not check_morphism(HomMorphism(L, L, phi)):
            continue
        T = yau_twist(L, phi)
        rep.add(f"twist {done} of {L.name}", bool(check_hom_leibniz(T)) and bool(check_multiplicative(T)))
        done += 1
    return rep


def semidirects() -> Report:
    rep = Report("semidirect")
    for name in VALID_ACTIONS:
        a = corpus.get(name)
        rep.add(f"{name} axioms", check_action_axioms(a))
        for k, v in semidirect_report(a).items():
            rep.add(f"{name} {k}", v)
    return rep


def splits() -> Report:
    rep = Report("split extensions")
    for name in corpus.SPLITS:
        se = corpus.get(name)
        v, phi = check_split_equivalence(se)
        rep.add(f"{name} equivalence", v)
        act = induced_action_from_split(se)
        se2 = semidirect_extension(act)
        rep.add(f"{name} round trip", induced_action_from_split(se2).same_tensors(act))
    return rep


def derivation_pairs() -> list[tuple[HomMorphism, np.ndarray, object]]:
    """``(f, d, action)`` triples with abelian targets."""
    sl2 = corpus.get("SL2")
    ad = adjoint_representation(sl2)
    out = []
    for f in (identity_morphism(sl2), corpus.get("PHI_SL2")):
        for d in derivation_space(ad, f):
            out.append((f, d, ad))
    T = corpus.get("TAKIFF")
    proj = HomMorphism(T, sl2, np.concatenate([np.zeros((3, 3), dtype=object) * QQ(0), identity(3)], axis=1))
    for d in derivation_space(ad, proj):
        out.append((proj, d, ad))
    return out


def derivations() -> Report:
    rep = Report("derivations")
    pairs = derivation_pairs()
    for n, (f, d, act) in enumerate(pairs):
        h = derivation_to_hom(f, d, act)
        f2, d2 = hom_to_derivation(h, act)
        rep.add(f"pair {n}", np.all(f2.m == f.m) and np.all(d2 == d))
    rep.data["pairs"] = len(pairs)
    return rep


def uce_checks() -> Report:
    rep = Report("uce")
    for name in VALID_ALGEBRAS:
        L = corpus.get(name)
        g = leibniz_relations(L)
        rep.add(f"{name} bracket kills I_L", not _nonzero(L.evaluation() @ g.T).any())
        if is_perfect(L):
            r = uce(L)
            rep.extend(r.checks, f"{name} ")
            if is_alpha_perfect(L):
                ra = uce_alpha(L)
                rep.add(f"{name} alpha and plain agree", ra.alg == r.alg)
                rep.add(f"{name} uce centrally closed", is_centrally_closed(r.alg))
    return rep


def universal() -> Report:
    rep = Report("universal property")
    for name in CENTRAL_COVERS:
        pi = corpus.get(name)
        e = extension_of(pi)
        r = uce(pi.dst)
        h1 = induced_to_central(r, e, seed=1)
        h2 = induced_to_central(r, e, seed=2)
        rep.add(f"{name} section independent", np.all(h1.m == h2.m))
        rep.add(f"{name} cover report", cover_report(pi))
    for name in ("SL2", "TAKIFF", "SL2V4"):
        L = corpus.get(name)
        r = uce(L)
        rep.add(f"{name} trivial extension", np.all(induced_to_central(r, trivial_extension(L)).m == r.u.m))
        rep.add(f"{name} own extension", np.all(induced_to_central(r, r.extension()).m == identity(r.dim)))
    return rep


def functors(seed: int) -> Report:
    rep = Report("functoriality")
    rng = random.Random(seed)
    sl2 = corpus.get("SL2")
    r = uce(sl2)
    rep.add("Id", np.all(uce_functor(identity_morphism(sl2), r, r).m == identity(r.dim)))
    for k in range(3):
        f = HomMorphism(sl2, sl2, corpus.sl2_automorphism(rng))
        g = HomMorphism(sl2, sl2, corpus.sl2_automorphism(rng))
        gf = HomMorphism(sl2, sl2, g.m @ f.m)
        rep.add(f"composition {k}", np.all(uce_functor(gf, r, r).m == uce_functor(g, r, r).m @ uce_functor(f, r, r).m))
    L = corpus.get("SL2V4")
    rL = uce(L)
    for name in ("SHEAR_SL2V4", "SCALE_SL2V4"):
        F = uce_functor(corpus.get(name), rL, rL)
        rep.add(f"{name} preserves HL2", rL.hl2.map(F.m) == rL.hl2)
    tw = corpus.get("TW2")
    rt = uce_alpha(tw)
    ders = derivation_space(self_action(tw))
    rep.data["TW2 derivations"] = len(ders)
    for k, t in enumerate((QQ(2), QQ(3), QQ("-1/2"))):
        f = HomMorphism(tw, tw, matrix([[t, 0, 0], [0, 1, 0], [0, 0, 1 / t]]))
        rep.add(f"TW2 torus {k} morphism", check_morphism(f))
        dp = ders[k % len(ders)]
        d = f.m @ dp @ inverse(f.m)
        F = uce_alpha_functor(f, rt, rt).m
        lhs = F @ uce_alpha_derivation(rt, dp)
        rhs = uce_alpha_derivation(rt, d) @ F
        rep.add(f"compatibility {k}", np.all(lhs == rhs))
    return rep


def lifting(seed: int) -> Report:
    rep = Report("lifting")
    rng = random.Random(seed)
    sl2 = corpus.get("SL2")
    cov = make_alpha_cover(corpus.get("U_SL2"))
    rep.add("C = 0 over SL2", cov.C.is_zero())
    auts = [HomMorphism(sl2, sl2, corpus.sl2_automorphism(rng)) for _ in range(3)]
    ders = [sl2.left(sl2.basis_vector(k)) for k in range(3)]
    for k, h in enumerate(auts):
        rep.add(f"automorphism {k} lifts", lift_automorphism(cov, h).verdict)
    for k, d in enumerate(ders):
        rep.add(f"derivation {k} lifts", lift_derivation(cov, d).verdict)
    rep.extend(check_lift_bijections(cov, auts, ders, seed), "SL2 ")
    obs = make_alpha_cover(corpus.get("COVER_OBS"))
    shear = corpus.get("SHEAR_SL2V4")
    lf = lift_automorphism(obs, shear)
    H = uce_alpha_functor(shear, obs.uce_dst, obs.uce_dst).m
    w = lf.obstruction
    rep.add("shear obstructed", not lf.verdict.ok)
    rep.add("witness in C and pushed out", w is not None and obs.C.contains(w) and not obs.C.contains(H @ w))
    rep.add("scaling lifts", lift_automorphism(obs, corpus.get("SCALE_SL2V4")).verdict)
    rep.data["C_dim"] = obs.C.dim
    return rep


def section5() -> Report:
    rep = Report("split extension suite")
    for name in corpus.SPLITS:
        se = corpus.get(name)
        try:
            s = make_setup(se)
        except PreconditionError as e:
            rep.data[f"{name} refused"] = str(e)
            continue
        rep.extend(check_all(s), f"{name} ")
        if s.symmetric:
            _, SD, Phi, _ = _phi_parts(s)
            central = rep.data[f"{name} a_central"]
            rep.add(f"{name} Phi is a cover iff central", bool(cover_report(Phi)) == central)
    return rep


def run_all(seed: int = 0) -> list[Report]:
    return [
        axioms(seed),
        yau(seed),
        semidirects(),
        splits(),
        derivations(),
        uce_checks(),
        universal(),
        functors(seed),
        lifting(seed),
        section5(),
    ]
