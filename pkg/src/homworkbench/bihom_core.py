"""BiHom-associative algebras, their bimodules and matched pairs, and the biHom double.

Twist convention: a :class:`BiHomAlgebra` ``(A, ., alpha1, alpha2)`` satisfies
``alpha1(x)(yz) = (xy)alpha2(z)``, so ``alpha1`` twists the left factor and
``alpha2`` the right one.  Bimodule and matched-pair identities are written
in that same convention, which makes every semidirect or bicrossed sum
biHom-associative with twists ``alpha1 + beta1`` and ``alpha2 + beta2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._report import ConstructionRefused, PreconditionFailed, Report, ReportBuilder
from .exact_linear import (
    DimensionError,
    basis_grids,
    compose_family,
    det_exact,
    direct_sum,
    gapply,
    gmul,
    identity,
    inverse,
    left_mult,
    matrix_power,
    product_of_coproduct,
    right_mult,
    to_array,
    zeros,
)
from .frobenius_double import _bilinear, bialgebra_residuals, standard_pairing_form
from .hom_core import (
    HomAlgebra,
    _check_family,
    _Struct,
    bimodule_residuals,
    cross_residuals,
    hom_assoc_residual,
    multiplicative_residual,
    sum_product,
)

__all__ = [
    "BiHomAlgebra",
    "BiHomBimodule",
    "BiHomMatchedPair",
    "BiHomBialgebraData",
    "BiHomFrobeniusDouble",
    "lift",
    "check_bihom_associative",
    "bihom_regular_bimodules",
    "check_bihom_bimodule",
    "bihom_semidirect_sum",
    "check_bihom_matched_pair",
    "bihom_bicrossed_sum",
    "check_alphabeta_invariant",
    "check_involutive_pair",
    "bihom_dual_algebra",
    "bihom_frobenius_matched_pair",
    "assemble_bihom_frobenius_double",
    "verify_bihom_frobenius_double",
    "double_construct_bihom_frobenius",
    "check_bihom_matched_criterion",
    "check_bihom_bialgebra",
]

BIHOM_BIMODULE_CLAUSES = ("lpb", "rpb", "lar", "beta1_l", "beta1_r", "beta2_l", "beta2_r")
MODES = ("strict", "relaxed")


@dataclass(frozen=True, eq=False)
class BiHomAlgebra(_Struct):
    mult: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray

    def __post_init__(self):
        mult = to_array(self.mult)
        n = mult.shape[0] if mult.ndim else 0
        if mult.shape != (n, n, n) or n == 0:
            raise DimensionError(f"product tensor must be n x n x n, got {mult.shape}")
        for name in ("alpha1", "alpha2"):
            m = to_array(getattr(self, name))
            if m.shape != (n, n):
                raise DimensionError(f"{name} has shape {m.shape}, product has dim {n}")
            object.__setattr__(self, name, m)
        object.__setattr__(self, "mult", mult)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def L(self) -> np.ndarray:
        return left_mult(self.mult)

    @property
    def R(self) -> np.ndarray:
        return right_mult(self.mult)

    @property
    def twists(self) -> tuple[np.ndarray, np.ndarray]:
        return self.alpha1, self.alpha2


def lift(a: HomAlgebra, alpha2=None) -> BiHomAlgebra:
    """View a Hom-algebra as a biHom one, with ``alpha2 = alpha`` unless given."""
    return BiHomAlgebra(a.mult, a.alpha, a.alpha if alpha2 is None else alpha2)


@dataclass(frozen=True, eq=False)
class BiHomBimodule(_Struct):
    algebra: BiHomAlgebra
    l: np.ndarray
    r: np.ndarray
    beta1: np.ndarray
    beta2: np.ndarray

    def __post_init__(self):
        b1, b2 = to_array(self.beta1), to_array(self.beta2)
        m = b1.shape[0]
        if b1.shape != (m, m) or b2.shape != (m, m):
            raise DimensionError(f"V twists must be square of equal size, got {b1.shape}, {b2.shape}")
        l, r = to_array(self.l), to_array(self.r)
        _check_family(l, self.algebra.dim, m, "left action")
        _check_family(r, self.algebra.dim, m, "right action")
        for name, val in (("l", l), ("r", r), ("beta1", b1), ("beta2", b2)):
            object.__setattr__(self, name, val)

    @property
    def dimV(self) -> int:
        return self.beta1.shape[0]


@dataclass(frozen=True, eq=False)
class BiHomMatchedPair(_Struct):
    A: BiHomAlgebra
    B: BiHomAlgebra
    lA: np.ndarray
    rA: np.ndarray
    lB: np.ndarray
    rB: np.ndarray

    def __post_init__(self):
        for name, (n, m) in {
            "lA": (self.A.dim, self.B.dim),
            "rA": (self.A.dim, self.B.dim),
            "lB": (self.B.dim, self.A.dim),
            "rB": (self.B.dim, self.A.dim),
        }.items():
            fam = to_array(getattr(self, name))
            _check_family(fam, n, m, name)
            object.__setattr__(self, name, fam)

    def bimodule_of_A(self) -> BiHomBimodule:
        return BiHomBimodule(self.A, self.lA, self.rA, self.B.alpha1, self.B.alpha2)

    def bimodule_of_B(self) -> BiHomBimodule:
        return BiHomBimodule(self.B, self.lB, self.rB, self.A.alpha1, self.A.alpha2)


@dataclass(frozen=True, eq=False)
class BiHomBialgebraData(_Struct):
    algebra: BiHomAlgebra
    coprod: np.ndarray

    def __post_init__(self):
        f = to_array(self.coprod)
        if f.shape != (self.algebra.dim,) * 3:
            raise DimensionError(f"coproduct {f.shape} does not match dim {self.algebra.dim}")
        object.__setattr__(self, "coprod", f)


@dataclass(frozen=True, eq=False)
class BiHomFrobeniusDouble(_Struct):
    total: BiHomAlgebra
    gram: np.ndarray
    n: int


def _commutator(p, q) -> np.ndarray:
    """``pq - qp`` laid out so that row ``j`` is the defect on ``e_j``."""
    return (p.dot(q) - q.dot(p)).T


def check_bihom_associative(a: BiHomAlgebra) -> Report:
    """Commuting twists, both multiplicative, and ``alpha1(x)(yz) = (xy)alpha2(z)``."""
    out = ReportBuilder("bihom_associative")
    out.residual("commutation", _commutator(a.alpha1, a.alpha2), 1)
    out.residual("multiplicative_alpha1", multiplicative_residual(a.mult, a.alpha1), 2)
    out.residual("multiplicative_alpha2", multiplicative_residual(a.mult, a.alpha2), 2)
    out.residual("bihom_associativity", hom_assoc_residual(a.mult, a.alpha1, a.alpha2), 3)
    return out.build()


def bihom_regular_bimodules(a: BiHomAlgebra, n: int = 0) -> tuple[BiHomBimodule, ...]:
    """``(L a1^n, 0)``, ``(0, R a2^n)`` and ``(L a1^n, R a2^n)``, each with twists ``(a1, a2)``."""
    if n < 0:
        try:
            inverse(a.alpha1), inverse(a.alpha2)
        except ZeroDivisionError:
            raise ConstructionRefused(f"negative power {n} of a singular twist") from None
    L = compose_family(a.L, matrix_power(a.alpha1, n))
    R = compose_family(a.R, matrix_power(a.alpha2, n))
    Z = zeros(L.shape)
    return tuple(BiHomBimodule(a, l, r, a.alpha1, a.alpha2) for l, r in ((L, Z), (Z, R), (L, R)))


def check_bihom_bimodule(b: BiHomBimodule, clauses=BIHOM_BIMODULE_CLAUSES) -> Report:
    """The seven bimodule identities.

    ``lpb``: ``l(xy) beta2(v) = l(alpha1 x) l(y) v``;
    ``rpb``: ``r(xy) beta1(v) = r(alpha2 y) r(x) v``;
    ``lar``: ``l(alpha1 x) r(y) v = r(alpha2 y) l(x) v``;
    ``betak_l``, ``betak_r``: ``betak`` intertwines ``l``, ``r`` with ``alphak``.
    """
    a = b.algebra
    res = bimodule_residuals(a.mult, a.twists, b.l, b.r, (b.beta1, b.beta2), bihom=True)
    out = ReportBuilder("bihom_bimodule")
    for name in clauses:
        out.residual(name, res[name], 3 if name in ("lpb", "rpb", "lar") else 2)
    return out.build()


def _biblock(p, q) -> np.ndarray:
    return direct_sum(p, q)


def bihom_semidirect_sum(b: BiHomBimodule) -> BiHomAlgebra:
    a = b.algebra
    pre = ReportBuilder("bihom_semidirect_sum_pre")
    pre.include(check_bihom_associative(a), "A")
    pre.include(check_bihom_bimodule(b), "bimodule")
    pre.residual("V_twists_commute", _commutator(b.beta1, b.beta2), 1)
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("biHom semidirect sum refused", pre)
    m = b.dimV
    nil = zeros(m, a.dim, a.dim)
    c = sum_product(a.mult, zeros(m, m, m), b.l, b.r, nil, nil)
    return BiHomAlgebra(c, _biblock(a.alpha1, b.beta1), _biblock(a.alpha2, b.beta2))


def check_bihom_matched_pair(p: BiHomMatchedPair) -> Report:
    """Both algebras, both bimodules, and the six cross identities ``bimp1``-``bimp6``."""
    out = ReportBuilder("bihom_matched_pair")
    out.include(check_bihom_associative(p.A), "A")
    out.include(check_bihom_associative(p.B), "B")
    out.include(check_bihom_bimodule(p.bimodule_of_A()), "bimodule_A")
    out.include(check_bihom_bimodule(p.bimodule_of_B()), "bimodule_B")
    res = cross_residuals(p.A.mult, p.B.mult, p.A.twists, p.B.twists, p.lA, p.rA, p.lB, p.rB)
    for k in range(1, 7):
        out.residual(f"bimp{k}", res[f"mp{k}"], 3)
    return out.build()


def bihom_bicrossed_sum(p: BiHomMatchedPair) -> BiHomAlgebra:
    report = check_bihom_matched_pair(p)
    if not report.ok:
        raise ConstructionRefused("biHom bicrossed sum refused", report)
    c = sum_product(p.A.mult, p.B.mult, p.lA, p.rA, p.lB, p.rB)
    return BiHomAlgebra(c, _biblock(p.A.alpha1, p.B.alpha1), _biblock(p.A.alpha2, p.B.alpha2))


def alphabeta_residual(c, alpha, beta, G) -> np.ndarray:
    n = c.shape[0]
    x, y, z = basis_grids(n, n, n)
    lhs = _bilinear(G, gmul(c, gapply(beta, x), gapply(alpha, y)), gapply(alpha, z))
    rhs = _bilinear(G, gapply(alpha, x), gmul(c, gapply(beta, y), gapply(alpha, z)))
    return (lhs - rhs)[..., None]


def check_alphabeta_invariant(a: BiHomAlgebra, g) -> Report:
    """``B(beta(x)alpha(y), alpha(z)) = B(alpha(x), beta(y)alpha(z))`` with ``alpha = alpha1``, ``beta = alpha2``."""
    G = to_array(g)
    if G.shape != (a.dim, a.dim):
        raise DimensionError(f"Gram matrix {G.shape} does not match dim {a.dim}")
    res = alphabeta_residual(a.mult, a.alpha1, a.alpha2, G)
    return ReportBuilder("alphabeta_invariant").residual("alphabeta_invariance", res, 3).build()


def check_involutive_pair(a: BiHomAlgebra, mode: str = "strict") -> Report:
    """Twist hypotheses of the biHom double.

    ``strict``: ``alpha1 alpha2 = alpha2 alpha1 = Id`` and ``alpha1^2 = alpha2^2 = Id``.
    ``relaxed``: only the inverse-pair condition.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    I = identity(a.dim)
    out = ReportBuilder(f"involutive_pair_{mode}")
    out.residual("alpha1_alpha2", (a.alpha1.dot(a.alpha2) - I).T, 1)
    out.residual("alpha2_alpha1", (a.alpha2.dot(a.alpha1) - I).T, 1)
    if mode == "strict":
        out.residual("alpha1_squared", (a.alpha1.dot(a.alpha1) - I).T, 1)
        out.residual("alpha2_squared", (a.alpha2.dot(a.alpha2) - I).T, 1)
    return out.build()


def bihom_dual_algebra(d: BiHomBialgebraData) -> BiHomAlgebra:
    """``(A*, o, alpha1^T, alpha2^T)`` with ``o`` read off the coproduct."""
    a = d.algebra
    return BiHomAlgebra(product_of_coproduct(d.coprod), a.alpha1.T.copy(), a.alpha2.T.copy())


def _t(family):
    return np.transpose(family, (0, 2, 1)).copy()


def bihom_frobenius_matched_pair(d: BiHomBialgebraData) -> BiHomMatchedPair:
    A, B = d.algebra, bihom_dual_algebra(d)
    return BiHomMatchedPair(A, B, lA=_t(A.R), rA=_t(A.L), lB=_t(B.R), rB=_t(B.L))


def assemble_bihom_frobenius_double(d: BiHomBialgebraData) -> BiHomFrobeniusDouble:
    p = bihom_frobenius_matched_pair(d)
    c = sum_product(p.A.mult, p.B.mult, p.lA, p.rA, p.lB, p.rB)
    total = BiHomAlgebra(c, _biblock(p.A.alpha1, p.B.alpha1), _biblock(p.A.alpha2, p.B.alpha2))
    return BiHomFrobeniusDouble(total, standard_pairing_form(d.algebra.dim), d.algebra.dim)


def verify_bihom_frobenius_double(fd: BiHomFrobeniusDouble, d: BiHomBialgebraData) -> Report:
    n, total, G = fd.n, fd.total, fd.gram
    out = ReportBuilder("bihom_frobenius_double")
    out.include(check_bihom_associative(total), "total")
    for name, part, sl in (("A", d.algebra, slice(0, n)), ("Astar", bihom_dual_algebra(d), slice(n, 2 * n))):
        c = total.mult[sl, sl, :].copy()
        c[:, :, sl] -= part.mult
        out.residual(f"subalgebra_{name}", c, 2)
        for k, (big, small) in enumerate(zip(total.twists, part.twists), start=1):
            t = big[:, sl].copy()
            t[sl, :] -= small
            out.residual(f"subtwist{k}_{name}", t.T, 1)
    out.residual("standard_pairing", (G - standard_pairing_form(n))[..., None], 2)
    out.residual("symmetric", (G - G.T)[..., None], 2)
    det = det_exact(G)
    out.flag("nondegenerate", det != 0, (), (det,))
    xs, ys = basis_grids(2 * n, 2 * n)
    for k, t in enumerate(total.twists, start=1):
        res = _bilinear(G, gapply(t, xs), ys) - _bilinear(G, xs, gapply(t, ys))
        out.residual(f"alpha{k}_compatible", res[..., None], 2)
    out.residual("alphabeta_invariant", alphabeta_residual(total.mult, total.alpha1, total.alpha2, G), 3)
    return out.build()


def _bialgebra_pre(d: BiHomBialgebraData, mode: str) -> Report:
    out = ReportBuilder("bihom_bialgebra_pre")
    out.include(check_involutive_pair(d.algebra, mode), "A")
    out.include(check_bihom_associative(d.algebra), "A")
    out.include(check_bihom_associative(bihom_dual_algebra(d)), "dual")
    return out.build()


def check_bihom_bialgebra(d: BiHomBialgebraData, mode: str = "strict") -> Report:
    """Both coproduct identities, twisted by ``alpha2`` (and ``alpha1`` in the antisymmetric one)."""
    pre = _bialgebra_pre(d, mode)
    if not pre.ok:
        raise PreconditionFailed(f"biHom bialgebra data outside the theory ({mode} mode)", pre)
    a = d.algebra
    id1, id2 = bialgebra_residuals(a.mult, d.coprod, a.alpha2, a.alpha1)
    out = ReportBuilder("bihom_bialgebra")
    out.residual("infinitesimal", id1, 2)
    out.residual("antisymmetric", id2, 2)
    out.note(f"mode={mode}")
    return out.build()


def check_bihom_matched_criterion(d: BiHomBialgebraData, mode: str = "strict") -> Report:
    """Infinitesimal and antisymmetric operator identities on ``(x, a*, b*)``.

    infinitesimal: ``R*(a2 x)(a o b) = R*(L*_o(a) x) a2*(b) + (R*(x) a) o a2*(b)``
    antisymmetric: ``R*(R*_o(a) x) a2*(b) + (L*(x) a) o a2*(b)
    = L*(L*_o(b) x) a1*(a) + a1*(a) o (R*(x) b)``
    """
    a = d.algebra
    pre = check_involutive_pair(a, mode)
    if not pre.ok:
        raise PreconditionFailed(f"twists outside the theory ({mode} mode)", pre)
    p = bihom_frobenius_matched_pair(d)
    B = p.B
    # The antisymmetric identity is the fifth cross identity verbatim; the
    # infinitesimal one twists x by alpha2, so it is evaluated with the
    # left twist of A replaced by alpha2.
    res = cross_residuals(a.mult, B.mult, (a.alpha2, a.alpha2), B.twists, p.lA, p.rA, p.lB, p.rB)
    res5 = cross_residuals(a.mult, B.mult, a.twists, B.twists, p.lA, p.rA, p.lB, p.rB)["mp5"]
    out = ReportBuilder("bihom_matched_criterion")
    out.residual("infinitesimal", res["mp1"], 3)
    out.residual("antisymmetric", res5, 3)
    out.note(f"mode={mode}")
    return out.build()


def double_construct_bihom_frobenius(d: BiHomBialgebraData, mode: str = "strict") -> BiHomFrobeniusDouble:
    """Double of a biHom bialgebra datum; refuses unless the criterion holds."""
    pre = ReportBuilder("bihom_frobenius_double_pre").include(_bialgebra_pre(d, mode)).build()
    if not pre.ok:
        raise ConstructionRefused(f"biHom double refused ({mode} mode)", pre)
    crit = check_bihom_matched_criterion(d, mode)
    if not crit.ok:
        raise ConstructionRefused("biHom double refused", crit)
    fd = assemble_bihom_frobenius_double(d)
    post = verify_bihom_frobenius_double(fd, d)
    if not post.ok:
        raise ConstructionRefused("assembled biHom double failed verification", post)
    return fd
