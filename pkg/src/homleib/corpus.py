"""The shipped example corpus and samplers of morphisms and derivations.

Entries are stored as definition files under ``homleib/data`` and loaded
with :func:`get`.  The ``build_*`` functions construct the same objects from
scratch; ``python -m homleib.corpus DIR`` rewrites the files from them.
"""

from __future__ import annotations

import random
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .actions import (
    HomAction,
    SplitExtension,
    action_from_embedding,
    adjoint_representation,
    pullback_action,
    self_action,
    semidirect,
    semidirect_extension,
    trivial_action,
)
from .centext import central_quotient, uce
from .exactlin import QQ, Subspace, identity, matrix, right_inverse, zeros
from .homalg import HomAlgebra, HomMorphism, direct_product, yau_twist

__all__ = [
    "ALGEBRAS",
    "ACTIONS",
    "SPLITS",
    "MORPHISMS",
    "names",
    "get",
    "build",
    "write_corpus",
    "exp_nilpotent",
    "sl2_automorphism",
    "random_endomorphism",
]

ALGEBRAS = ("AB2", "NL2", "SL2", "TW2", "HEIS", "DP", "SD1", "TAKIFF", "HEMI", "SL2V4", "SLW", "OBS", "SL2A")
ACTIONS = ("SELF_SL2", "SELF_SL2_PHI", "TRIV_SL2_TW2", "ADJ_SL2", "HEIS_ZERO", "SL2_ON_TAKIFF", "SL2_ON_HEMI", "SL2_ON_SLW", "BAD_AB2_NL2")
SPLITS = ("SPLIT_SD1", "SPLIT_SD1_PHI", "SPLIT_DP", "SPLIT_ADJ", "SPLIT_TK", "SPLIT_NS", "SPLIT_RS")
MORPHISMS = ("U_SL2", "U_TAKIFF", "U_SL2V4", "COVER_OBS", "PROJ_SL2A", "ID_TW2", "SHEAR_SL2V4", "SCALE_SL2V4", "PHI_SL2")


def names() -> tuple[str, ...]:
    return ALGEBRAS + ACTIONS + SPLITS + MORPHISMS


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

_SL2_TABLE = {
    (1, 0): [2, 0, 0],
    (0, 1): [-2, 0, 0],
    (1, 2): [0, 0, -2],
    (2, 1): [0, 0, 2],
    (0, 2): [0, 1, 0],
    (2, 0): [0, -1, 0],
}
# e, h, f acting on the standard module (v1, v2)
_V2 = ([[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]])
_PHI = [[2, 0, 0], [0, 1, 0], [0, 0, "1/2"]]


def _sl2() -> HomAlgebra:
    return HomAlgebra.from_brackets(3, _SL2_TABLE, name="SL2", labels=["e", "h", "f"])


def _abelian(n: int, name: str, labels, alpha=None) -> HomAlgebra:
    return HomAlgebra(zeros((n, n, n)), identity(n) if alpha is None else matrix(alpha), QQ, name, labels)


def _module_action(L: HomAlgebra, reps, M: HomAlgebra, left=True, right=True) -> HomAction:
    """``x . m = R(x) m`` and ``m . x = -R(x) m`` from matrices ``R`` per basis vector."""
    p = M.dim
    lam = zeros((L.dim, p, p))
    rho = zeros((p, L.dim, p))
    for x, R in enumerate(reps):
        R = matrix(R)
        for j in range(p):
            if left:
                lam[x, j, :] = R[:, j]
            if right:
                rho[j, x, :] = -R[:, j]
    return HomAction(L, M, lam, rho)


def _incl(rows: int, cols: int, offset: int) -> np.ndarray:
    m = zeros((rows, cols))
    for k in range(cols):
        m[offset + k, k] = QQ(1)
    return m


def _renamed(L: HomAlgebra, name: str, labels=None) -> HomAlgebra:
    return L.renamed(name, labels)


def _build_algebra(name: str) -> HomAlgebra:
    if name == "AB2":
        return _abelian(2, "AB2", ["u", "v"], [[0, 0], [0, 0]])
    if name == "NL2":
        return HomAlgebra.from_brackets(2, {(0, 0): [0, 1]}, name="NL2", labels=["a", "b"])
    if name == "SL2":
        return _sl2()
    if name == "TW2":
        return _renamed(yau_twist(_sl2(), matrix(_PHI)), "TW2")
    if name == "HEIS":
        return HomAlgebra.from_brackets(3, {(0, 1): [0, 0, 1], (1, 0): [0, 0, -1]}, name="HEIS", labels=["x", "y", "z"])
    if name == "DP":
        tw = build("TW2")
        return direct_product(tw, _sl2().renamed("SL2", ["e'", "h'", "f'"]), "DP")
    if name == "SD1":
        return semidirect(self_action(_sl2()), "SD1")[0]
    if name == "TAKIFF":
        G = semidirect(adjoint_representation(_sl2()), "TAKIFF")[0]
        return _renamed(G, "TAKIFF", ["E", "H", "F", "e", "h", "f"])
    if name == "HEMI":
        V = _abelian(2, "V2", ["v1", "v2"])
        return _renamed(semidirect(_module_action(_sl2(), _V2, V, left=False), "HEMI")[0], "HEMI", ["v1", "v2", "e", "h", "f"])
    if name == "SL2V4":
        V = _abelian(4, "V", ["v1", "v2", "w1", "w2"])
        reps = [np.kron(identity(2), matrix(r)) for r in _V2]
        G = semidirect(_module_action(_sl2(), reps, V), "SL2V4")[0]
        return _renamed(G, "SL2V4", ["v1", "v2", "w1", "w2", "e", "h", "f"])
    if name == "SLW":
        V = _abelian(4, "V", ["p11", "p12", "p21", "p22"])
        reps = [np.kron(matrix(r), identity(2)) for r in _V2]
        G = semidirect(_module_action(_sl2(), reps, V), "SLW")[0]
        return _renamed(G, "SLW", ["p11", "p12", "p21", "p22", "e", "h", "f"])
    if name == "OBS":
        return build("COVER_OBS").src
    if name == "SL2A":
        return direct_product(_sl2(), _abelian(1, "A1", ["z"]), "SL2A")
    raise KeyError(name)


def _build_action(name: str) -> HomAction:
    sl2 = _sl2()
    if name == "SELF_SL2":
        return self_action(sl2)
    if name == "SELF_SL2_PHI":
        phi = build("PHI_SL2")
        return pullback_action(self_action(sl2), phi)
    if name == "TRIV_SL2_TW2":
        return trivial_action(sl2, build("TW2"))
    if name == "ADJ_SL2":
        return adjoint_representation(sl2)
    if name == "HEIS_ZERO":
        H = build("HEIS")
        K = Subspace.span(matrix([[1, 0, 0]]), 3)
        Z = Subspace.span(matrix([[0, 0, 1]]), 3)
        return action_from_embedding(H, K, Z)
    if name == "SL2_ON_TAKIFF":
        T = build("TAKIFF")
        return pullback_action(self_action(T), HomMorphism(sl2, T, _incl(6, 3, 3)))
    if name == "SL2_ON_HEMI":
        N = build("HEMI")
        return pullback_action(self_action(N), HomMorphism(sl2, N, _incl(5, 3, 2)))
    if name == "SL2_ON_SLW":
        W = build("SLW")
        reps = []
        for r in _V2:
            D = zeros((7, 7))
            D[:4, :4] = np.kron(identity(2), matrix(r))
            reps.append(D)
        return _module_action(sl2, reps, W)
    if name == "BAD_AB2_NL2":
        lam = zeros((2, 2, 2))
        lam[0, 0, 0] = QQ(1)
        return HomAction(build("AB2"), build("NL2"), lam, zeros((2, 2, 2)))
    raise KeyError(name)


_SPLIT_SOURCES = {
    "SPLIT_SD1": "SELF_SL2",
    "SPLIT_SD1_PHI": "SELF_SL2_PHI",
    "SPLIT_DP": "TRIV_SL2_TW2",
    "SPLIT_ADJ": "ADJ_SL2",
    "SPLIT_TK": "SL2_ON_TAKIFF",
    "SPLIT_NS": "SL2_ON_HEMI",
    "SPLIT_RS": "SL2_ON_SLW",
}


def _build_split(name: str) -> SplitExtension:
    act = build(_SPLIT_SOURCES[name])
    gname = {"SPLIT_SD1": "SD1", "SPLIT_DP": "DP", "SPLIT_ADJ": "TAKIFF"}.get(name, name[6:])
    se = semidirect_extension(act, gname)
    if name == "SPLIT_DP":
        # same algebra as the DP entry, whose labels mark the second factor
        dp = build("DP")
        B = dp
        return SplitExtension(se.M, B, se.C, HomMorphism(se.M, B, se.i.m), HomMorphism(B, se.C, se.pi.m), HomMorphism(se.C, B, se.s.m))
    return se


def _sl2v4_cover():
    L = build("SL2V4")
    r = uce(L)
    W = Subspace.span(r.hl2.basis[1:2], r.dim)
    ext = central_quotient(r.alg, W)
    Lp = ext.L.renamed("OBS")
    return HomMorphism(Lp, L, r.u.m @ right_inverse(ext.pi.m))


def _build_morphism(name: str) -> HomMorphism:
    if name == "U_SL2":
        return uce(_sl2()).u
    if name == "U_TAKIFF":
        return uce(build("TAKIFF")).u
    if name == "U_SL2V4":
        return uce(build("SL2V4")).u
    if name == "COVER_OBS":
        return _sl2v4_cover()
    if name == "PROJ_SL2A":
        K = build("SL2A")
        return HomMorphism(K, _sl2(), _incl(4, 3, 0).T.copy())
    if name == "ID_TW2":
        tw = build("TW2")
        return HomMorphism(tw, tw, identity(3))
    if name == "SHEAR_SL2V4":
        L = build("SL2V4")
        h = identity(7)
        h[0, 2] = QQ(1)
        h[1, 3] = QQ(1)
        return HomMorphism(L, L, h)
    if name == "SCALE_SL2V4":
        L = build("SL2V4")
        h = identity(7)
        h[2, 2] = QQ(3)
        h[3, 3] = QQ(3)
        return HomMorphism(L, L, h)
    if name == "PHI_SL2":
        sl2 = _sl2()
        return HomMorphism(sl2, sl2, matrix(_PHI))
    raise KeyError(name)


@lru_cache(maxsize=None)
def build(name: str):
    """Construct a corpus entry from its definition."""
    if name in ALGEBRAS:
        return _build_algebra(name)
    if name in ACTIONS:
        return _build_action(name)
    if name in SPLITS:
        return _build_split(name)
    if name in MORPHISMS:
        return _build_morphism(name)
    raise KeyError(name)


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def _doc(name: str) -> dict:
    from .fileformat import action_to_doc, algebra_to_doc, morphism_to_doc, split_to_doc

    obj = build(name)
    if name in ALGEBRAS:
        return algebra_to_doc(obj)
    # nested algebras are referenced by corpus name where one matches
    def ref(L):
        for a in ALGEBRAS:
            if build(a) == L and build(a).labels == L.labels:
                return f"corpus:{a}"
        return None

    if name in ACTIONS:
        return action_to_doc(obj, refs={"actor": ref(obj.actor), "target": ref(obj.target)})
    if name in SPLITS:
        return split_to_doc(obj, refs={"M": ref(obj.M), "B": ref(obj.B), "C": ref(obj.C)})
    return morphism_to_doc(obj, refs={"src": ref(obj.src), "dst": ref(obj.dst)})


def write_corpus(directory) -> list[Path]:
    from .fileformat import dump_document

    out = []
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name in names():
        p = d / f"{name}.json"
        p.write_text(dump_document(_doc(name)), encoding="utf-8")
        out.append(p)
    return out


def corpus_path(name: str) -> Path:
    return Path(str(resources.files("homleib") / "data" / f"{name}.json"))


@lru_cache(maxsize=None)
def get(name: str):
    """Load a shipped corpus entry."""
    if name not in names():
        raise KeyError(name)
    from .fileformat import load_document

    return load_document(corpus_path(name))


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def exp_nilpotent(D) -> np.ndarray:
    """``sum D^k / k!`` for a nilpotent matrix."""
    D = np.asarray(D, dtype=object)
    n = D.shape[0]
    out = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = term @ D / QQ(k)
        out = out + term
    if np.any(term @ D != 0):
        raise ValueError("matrix is not nilpotent")
    return out


def _small(rng: random.Random, nonzero: bool = False):
    while True:
        x = QQ(f"{rng.randint(-4, 4)}/{rng.randint(1, 3)}")
        if x != 0 or not nonzero:
            return x


def sl2_automorphism(rng: random.Random) -> np.ndarray:
    """A product of root exponentials and a torus element of sl2."""
    L = _sl2()
    t = _small(rng, True)
    torus = matrix([[t, 0, 0], [0, 1, 0], [0, 0, 1 / t]])
    ee = exp_nilpotent(L.left(_small(rng) * L.basis_vector(0)))
    ff = exp_nilpotent(L.left(_small(rng) * L.basis_vector(2)))
    return torus @ ee @ ff


def random_endomorphism(L: HomAlgebra, rng: random.Random) -> np.ndarray | None:
    """A candidate endomorphism of a known Leibniz algebra, or ``None`` if there is no sampler."""
    name = L.name
    if name == "SL2":
        return sl2_automorphism(rng)
    if name == "NL2":
        p, q = _small(rng), _small(rng)
        return matrix([[p, 0], [q, p * p]])
    if name == "HEIS":
        a, b, c, d, e, g = (_small(rng) for _ in range(6))
        return matrix([[a, c, 0], [b, d, 0], [e, g, a * d - b * c]])
    if name == "SD1":
        phi = sl2_automorphism(rng)
        m = zeros((6, 6))
        m[:3, :3] = phi
        m[3:, 3:] = phi
        return m
    if name == "TAKIFF":
        phi = sl2_automorphism(rng)
        s = _small(rng)
        m = zeros((6, 6))
        m[:3, :3] = s * phi
        m[3:, 3:] = phi
        return m
    return None


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    target = Path(argv[0]) if argv else Path(__file__).parent / "data"
    for p in write_corpus(target):
        print(p)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
