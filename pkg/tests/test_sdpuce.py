import pytest

import oracles
from homleib import corpus
from homleib.actions import semidirect_extension, trivial_action
from homleib.errors import PreconditionError
from homleib.exactlin import identity
from homleib.sdpuce import (
    check_all,
    check_direct_product,
    check_statement_4_5,
    check_theorem_equivalences,
    induced_action_on_ker_pi,
    induced_action_uceQ_on_uceM,
    make_setup,
)

SPLITS = ["SPLIT_SD1", "SPLIT_SD1_PHI", "SPLIT_DP", "SPLIT_TK", "SPLIT_NS", "SPLIT_RS"]


@pytest.fixture(scope="module")
def setups():
    return {n: make_setup(corpus.get(n)) for n in SPLITS}


def _oracle_uce_dim(L):
    c, a = oracles.tolist3(L.c), oracles.tolist2(L.alpha)
    return L.dim**2 - oracles.rank(oracles.leibniz_generators(c, a))


@pytest.mark.parametrize("name", SPLITS)
def test_full_suite_passes(setups, name):
    rep = check_all(setups[name])
    assert rep.ok, rep.failures()


def test_symmetry_flags(setups):
    assert setups["SPLIT_SD1"].symmetric and setups["SPLIT_DP"].symmetric
    assert not setups["SPLIT_NS"].symmetric
    with pytest.raises(PreconditionError):
        induced_action_uceQ_on_uceM(setups["SPLIT_NS"])


def test_actions_on_kernel(setups):
    act, rep = induced_action_on_ker_pi(setups["SPLIT_DP"])
    assert rep.ok and act.is_zero()
    act, rep = induced_action_on_ker_pi(setups["SPLIT_SD1"])
    assert rep.ok and not act.is_zero()


@pytest.mark.parametrize("name,expected", [("SPLIT_SD1", True), ("SPLIT_DP", True), ("SPLIT_TK", True), ("SPLIT_RS", False)])
def test_equivalences(setups, name, expected):
    rep = check_theorem_equivalences(setups[name])
    assert rep.ok
    assert {rep.data[k] for k in ("a_central", "b_trivial_action", "c_bijective", "d_tau_injective")} == {expected}


@pytest.mark.parametrize("name", ["SPLIT_SD1", "SPLIT_DP", "SPLIT_TK", "SPLIT_RS"])
def test_dimension_count_against_oracle(setups, name):
    s = setups[name]
    rep = check_statement_4_5(s)
    assert rep.ok
    # tau x| sigma is onto uce(G), so the dimensions must add up
    assert s.uce_G.dim == _oracle_uce_dim(s.G)
    assert s.uce_M.dim == _oracle_uce_dim(s.M)
    assert s.uce_G.dim == rep.data["SD_dim"] - rep.data["ker_tau_sigma"]


def test_direct_product_corollary(setups):
    s = setups["SPLIT_DP"]
    rep = check_direct_product(s)
    assert rep.ok
    assert s.uce_G.dim == 6 == s.uce_M.dim + s.uce_Q.dim
    with pytest.raises(PreconditionError):
        check_direct_product(setups["SPLIT_SD1"])


def test_non_perfect_quotient_refused():
    ab = corpus.get("AB2").with_alpha(identity(2))
    se = semidirect_extension(trivial_action(ab, corpus.get("SL2")))
    with pytest.raises(PreconditionError, match="Q is not perfect"):
        make_setup(se)


def test_rs_kernel_matches_hl2_of_m(setups):
    s = setups["SPLIT_RS"]
    assert s.uce_M.hl2.dim == 3
    assert s.tau.kernel().dim == 3
