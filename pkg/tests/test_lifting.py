import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homleib import corpus
from homleib.centext import uce_alpha, uce_alpha_derivation, uce_alpha_functor
from homleib.errors import PreconditionError
from homleib.exactlin import identity, inverse, zeros
from homleib.homalg import HomMorphism, identity_morphism
from homleib.lifting import check_lift_bijections, lift_automorphism, lift_derivation, make_alpha_cover

SL2 = corpus.get("SL2")
TW2 = corpus.get("TW2")


@pytest.fixture(scope="module")
def sl2_cover():
    return make_alpha_cover(corpus.get("U_SL2"))


@pytest.fixture(scope="module")
def obs_cover():
    return make_alpha_cover(corpus.get("COVER_OBS"))


def test_identity_cover_of_tw2():
    cov = make_alpha_cover(identity_morphism(TW2))
    assert cov.C == uce_alpha(TW2).hl2


def test_cover_over_sl2_has_no_obstruction(sl2_cover):
    assert sl2_cover.C.is_zero()
    lf = lift_automorphism(sl2_cover, identity_morphism(SL2))
    assert lf and np.all(lf.map == identity(3))


def test_lifts_match_the_functor(sl2_cover):
    f = sl2_cover.f
    r = sl2_cover.uce_dst
    assert np.all(f.m == r.u.m)
    h = corpus.get("PHI_SL2")
    lf = lift_automorphism(sl2_cover, h)
    assert np.all(lf.map == inverse(f.m) @ h.m @ f.m)
    assert np.all(lf.map == uce_alpha_functor(h, r, r).m)
    d = SL2.left(SL2.basis_vector(1))
    ld = lift_derivation(sl2_cover, d)
    assert np.all(ld.map == uce_alpha_derivation(r, d))
    assert not lift_derivation(sl2_cover, zeros((3, 3))).map.any()


def test_obstructed_shear(obs_cover):
    shear = corpus.get("SHEAR_SL2V4")
    lf = lift_automorphism(obs_cover, shear)
    assert not lf and lf.map is None
    w = lf.obstruction
    H = uce_alpha_functor(shear, obs_cover.uce_dst, obs_cover.uce_dst).m
    assert obs_cover.C.contains(w) and not obs_cover.C.contains(H @ w)
    assert lift_automorphism(obs_cover, corpus.get("SCALE_SL2V4"))


def test_obstructed_derivation(obs_cover):
    N = corpus.get("SHEAR_SL2V4").m - identity(7)
    ld = lift_derivation(obs_cover, N)
    assert not ld
    D = uce_alpha_derivation(obs_cover.uce_dst, N)
    assert not obs_cover.C.contains(D @ ld.obstruction)


def test_bijection_report(sl2_cover, obs_cover):
    rng = random.Random(3)
    auts = [HomMorphism(SL2, SL2, corpus.sl2_automorphism(rng)) for _ in range(3)]
    ders = [SL2.left(SL2.basis_vector(k)) for k in range(3)]
    rep = check_lift_bijections(sl2_cover, auts, ders)
    assert rep.ok and rep.data["lifted"] == 3
    rep = check_lift_bijections(obs_cover, [corpus.get("SCALE_SL2V4"), corpus.get("SHEAR_SL2V4")])
    assert rep.ok and rep.data["lifted"] == 1


def test_preconditions(sl2_cover):
    with pytest.raises(PreconditionError):
        lift_automorphism(sl2_cover, HomMorphism(SL2, SL2, zeros((3, 3))))
    with pytest.raises(PreconditionError):
        lift_derivation(sl2_cover, identity(3))
    with pytest.raises(PreconditionError):
        make_alpha_cover(identity_morphism(corpus.get("HEIS")))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_lift_respects_composition(seed):
    cov = make_alpha_cover(corpus.get("U_SL2"))
    rng = random.Random(seed)
    g = HomMorphism(SL2, SL2, corpus.sl2_automorphism(rng))
    h = HomMorphism(SL2, SL2, corpus.sl2_automorphism(rng))
    gh = HomMorphism(SL2, SL2, g.m @ h.m)
    tg, th, tgh = (lift_automorphism(cov, x).map for x in (g, h, gh))
    assert np.all(tgh == tg @ th)
    assert np.all(cov.f.m @ tg == g.m @ cov.f.m)
