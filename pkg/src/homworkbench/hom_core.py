"""Hom-associative algebras, their bimodules, semidirect sums and matched pairs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._report import ConstructionRefused, Report, ReportBuilder
from .exact_linear import (
    DimensionError,
    basis_grids,
    compose_family,
    gact,
    gapply,
    gmul,
    identity,
    inverse,
    left_mult,
    matrix_power,
    right_mult,
    to_array,
    zeros,
)

__all__ = [
    "HomAlgebra",
    "HomBimodule",
    "HomMatchedPair",
    "check_hom_associative",
    "check_multiplicative",
    "check_involutive",
    "mult_operators",
    "regular_bimodules",
    "check_bimodule",
    "semidirect_sum",
    "check_matched_pair",
    "bicrossed_sum",
    "sum_product",
    "yau_twist",
]

BIMODULE_CLAUSES = ("lpb", "rpb", "lar", "bl", "br")
SUM_CLAUSES = ("lpb", "rpb", "lar")


def _values_equal(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return (
            isinstance(a, np.ndarray)
            and isinstance(b, np.ndarray)
            and a.shape == b.shape
            and bool(np.all(a == b))
        )
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(_values_equal(x, y) for x, y in zip(a, b))
    return a == b


class _Struct:
    """Structural equality for dataclasses that hold object arrays."""

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        for name in self.__dataclass_fields__:
            if not self.__dataclass_fields__[name].compare:
                continue
            if not _values_equal(getattr(self, name), getattr(other, name)):
                return False
        return True

    __hash__ = None


def _check_family(family: np.ndarray, n: int, m: int, what: str) -> None:
    if family.shape != (n, m, m):
        raise DimensionError(f"{what} has shape {family.shape}, expected {(n, m, m)}")


@dataclass(frozen=True, eq=False)
class HomAlgebra(_Struct):
    mult: np.ndarray
    alpha: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        mult, alpha = to_array(self.mult), to_array(self.alpha)
        n = mult.shape[0] if mult.ndim else 0
        if mult.shape != (n, n, n) or n == 0:
            raise DimensionError(f"product tensor must be n x n x n, got {mult.shape}")
        if alpha.shape != (n, n):
            raise DimensionError(f"twist has shape {alpha.shape}, product has dim {n}")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "alpha", alpha)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def L(self) -> np.ndarray:
        return left_mult(self.mult)

    @property
    def R(self) -> np.ndarray:
        return right_mult(self.mult)


@dataclass(frozen=True, eq=False)
class HomBimodule(_Struct):
    algebra: HomAlgebra
    l: np.ndarray
    r: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        l, r, beta = to_array(self.l), to_array(self.r), to_array(self.beta)
        m = beta.shape[0]
        if beta.shape != (m, m):
            raise DimensionError(f"beta must be square, got {beta.shape}")
        n = self.algebra.dim
        _check_family(l, n, m, "left action")
        _check_family(r, n, m, "right action")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "beta", beta)

    @property
    def dimV(self) -> int:
        return self.beta.shape[0]


@dataclass(frozen=True, eq=False)
class HomMatchedPair(_Struct):
    """``A`` acts on ``B`` through ``lA, rA``; ``B`` acts on ``A`` through ``lB, rB``."""

    A: HomAlgebra
    B: HomAlgebra
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

    def bimodule_of_A(self) -> HomBimodule:
        return HomBimodule(self.A, self.lA, self.rA, self.B.alpha)

    def bimodule_of_B(self) -> HomBimodule:
        return HomBimodule(self.B, self.lB, self.rB, self.A.alpha)


def hom_assoc_residual(c, alpha_left, alpha_right) -> np.ndarray:
    """``a1(x)(yz) - (xy)a2(z)`` on all basis triples, shape ``(n, n, n, n)``."""
    n = c.shape[0]
    x, y, z = basis_grids(n, n, n)
    return gmul(c, gapply(alpha_left, x), gmul(c, y, z)) - gmul(c, gmul(c, x, y), gapply(alpha_right, z))


def multiplicative_residual(c, alpha) -> np.ndarray:
    n = c.shape[0]
    x, y = basis_grids(n, n)
    return gapply(alpha, gmul(c, x, y)) - gmul(c, gapply(alpha, x), gapply(alpha, y))


def check_hom_associative(a: HomAlgebra) -> Report:
    """Check ``alpha(x)(yz) = (xy)alpha(z)`` on every basis triple."""
    res = hom_assoc_residual(a.mult, a.alpha, a.alpha)
    return ReportBuilder("hom_associative").residual("hom_associativity", res, 3).build()


def check_multiplicative(a: HomAlgebra) -> Report:
    res = multiplicative_residual(a.mult, a.alpha)
    return ReportBuilder("multiplicative").residual("multiplicativity", res, 2).build()


def check_involutive(m) -> bool:
    m = to_array(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"twist must be square, got {m.shape}")
    return bool(np.all(m.dot(m) == identity(m.shape[0])))


def mult_operators(a: HomAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Left and right multiplication families ``(L, R)``."""
    return a.L, a.R


def regular_bimodules(a: HomAlgebra, n: int = 0) -> tuple[HomBimodule, HomBimodule, HomBimodule]:
    """The bimodules ``(L a^n, 0)``, ``(0, R a^n)`` and ``(L a^n, R a^n)`` on ``A`` itself.

    ``n`` may be negative only when ``alpha`` is invertible.
    """
    pre = ReportBuilder("regular_bimodules_pre")
    pre.include(check_hom_associative(a)).include(check_multiplicative(a))
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("regular bimodules need a multiplicative Hom-associative algebra", pre)
    if n < 0:
        try:
            inverse(a.alpha)
        except ZeroDivisionError:
            raise ConstructionRefused(f"negative power {n} of a singular twist") from None
    power = matrix_power(a.alpha, n)
    L, R = compose_family(a.L, power), compose_family(a.R, power)
    Z = zeros(L.shape)
    return (
        HomBimodule(a, L, Z, a.alpha),
        HomBimodule(a, Z, R, a.alpha),
        HomBimodule(a, L, R, a.alpha),
    )


def bimodule_residuals(c, twists, l, r, twists_v, *, bihom: bool = False) -> dict[str, np.ndarray]:
    """Residual grids of the bimodule identities.

    ``twists`` and ``twists_v`` are ``(left, right)`` twist pairs on the
    algebra and on ``V``; the Hom case passes ``(alpha, alpha)`` and
    ``(beta, beta)``.  The product identities are indexed ``(x, y, v)``,
    the compatibility ones ``(x, v)`` and named ``bl``/``br`` (Hom) or
    ``beta1_l``/``beta1_r``/``beta2_l``/``beta2_r`` (biHom).
    """
    a1, a2 = twists
    b1, b2 = twists_v
    n, m = c.shape[0], b1.shape[0]
    x, y, v = basis_grids(n, n, m)
    out = {
        "lpb": gact(l, gmul(c, x, y), gapply(b2, v)) - gact(l, gapply(a1, x), gact(l, y, v)),
        "rpb": gact(r, gmul(c, x, y), gapply(b1, v)) - gact(r, gapply(a2, y), gact(r, x, v)),
        "lar": gact(l, gapply(a1, x), gact(r, y, v)) - gact(r, gapply(a2, y), gact(l, x, v)),
    }
    xs, vs = basis_grids(n, m)
    pairs = [("beta1_", a1, b1), ("beta2_", a2, b2)] if bihom else [("", a1, b1)]
    for tag, al, be in pairs:
        for side, fam in (("l", l), ("r", r)):
            key = f"{tag}{side}" if tag else f"b{side}"
            out[key] = gapply(be, gact(fam, xs, vs)) - gact(fam, gapply(al, xs), gapply(be, vs))
    return out


def check_bimodule(b: HomBimodule, clauses=BIMODULE_CLAUSES) -> Report:
    a = b.algebra
    res = bimodule_residuals(a.mult, (a.alpha, a.alpha), b.l, b.r, (b.beta, b.beta))
    out = ReportBuilder("bimodule")
    for name in clauses:
        out.residual(name, res[name], 3 if name in SUM_CLAUSES else 2)
    return out.build()


def sum_product(cA, cB, lA, rA, lB, rB) -> np.ndarray:
    """Structure constants of the bicrossed product on ``A + B``.

    ``(x + a)(y + b) = (xy + lB(a)y + rB(b)x) + (ab + lA(x)b + rA(y)a)``.
    """
    n, m = cA.shape[0], cB.shape[0]
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = cA
    c[n:, n:, n:] = cB
    # x = e_i, b = e_j:  rB(b)x in A, lA(x)b in B
    c[:n, n:, :n] = np.transpose(rB, (2, 0, 1))
    c[:n, n:, n:] = np.transpose(lA, (0, 2, 1))
    # a = e_i, y = e_j:  lB(a)y in A, rA(y)a in B
    c[n:, :n, :n] = np.transpose(lB, (0, 2, 1))
    c[n:, :n, n:] = np.transpose(rA, (2, 0, 1))
    return c


def semidirect_sum(b: HomBimodule) -> HomAlgebra:
    """``A + V`` with ``(x + u)(y + v) = xy + l(x)v + r(y)u``.

    Requires ``lpb``, ``rpb`` and ``lar``; the two twist-compatibility
    conditions play no role in Hom-associativity of the sum.
    """
    a = b.algebra
    pre = ReportBuilder("semidirect_sum_pre").include(check_hom_associative(a))
    pre.include(check_bimodule(b, SUM_CLAUSES), "bimodule")
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("semidirect sum refused", pre)
    m = b.dimV
    cV = zeros(m, m, m)
    nil = zeros(m, a.dim, a.dim)
    c = sum_product(a.mult, cV, b.l, b.r, nil, nil)
    alpha = np.block([[a.alpha, zeros(a.dim, m)], [zeros(m, a.dim), b.beta]]).astype(object)
    return HomAlgebra(c, alpha, name=f"{a.name} semidirect V" if a.name else "")


def matched_pair_residuals(p: HomMatchedPair) -> dict[str, np.ndarray]:
    """The six cross identities; mp1, mp2, mp5 on ``(x, a, b)``, the rest on ``(a, x, y)``."""
    A, B = p.A, p.B
    return cross_residuals(
        A.mult, B.mult, (A.alpha, A.alpha), (B.alpha, B.alpha), p.lA, p.rA, p.lB, p.rB
    )


def cross_residuals(c, d, twists_A, twists_B, lA, rA, lB, rB) -> dict[str, np.ndarray]:
    """Cross identities of a matched pair with ``(left, right)`` twist pairs.

    Each identity compares the two bracketings of a mixed triple in the sum
    algebra, so ``mp1`` reads ``lA(a1 x)(ab) = lA(rB(a)x) b2(b) + (lA(x)a) b2(b)``.
    """
    n, m = c.shape[0], d.shape[0]
    a1, a2 = twists_A
    b1, b2 = twists_B

    x, a, b = basis_grids(n, m, m)
    mp1 = (
        gact(lA, gapply(a1, x), gmul(d, a, b))
        - gact(lA, gact(rB, a, x), gapply(b2, b))
        - gmul(d, gact(lA, x, a), gapply(b2, b))
    )
    mp2 = (
        gact(rA, gapply(a2, x), gmul(d, a, b))
        - gact(rA, gact(lB, b, x), gapply(b1, a))
        - gmul(d, gapply(b1, a), gact(rA, x, b))
    )
    mp5 = (
        gact(lA, gact(lB, a, x), gapply(b2, b))
        + gmul(d, gact(rA, x, a), gapply(b2, b))
        - gact(rA, gact(rB, b, x), gapply(b1, a))
        - gmul(d, gapply(b1, a), gact(lA, x, b))
    )

    a, x, y = basis_grids(m, n, n)
    mp3 = (
        gact(lB, gapply(b1, a), gmul(c, x, y))
        - gact(lB, gact(rA, x, a), gapply(a2, y))
        - gmul(c, gact(lB, a, x), gapply(a2, y))
    )
    mp4 = (
        gact(rB, gapply(b2, a), gmul(c, x, y))
        - gact(rB, gact(lA, y, a), gapply(a1, x))
        - gmul(c, gapply(a1, x), gact(rB, a, y))
    )
    mp6 = (
        gact(lB, gact(lA, x, a), gapply(a2, y))
        + gmul(c, gact(rB, a, x), gapply(a2, y))
        - gact(rB, gact(rA, y, a), gapply(a1, x))
        - gmul(c, gapply(a1, x), gact(lB, a, y))
    )
    return {"mp1": mp1, "mp2": mp2, "mp3": mp3, "mp4": mp4, "mp5": mp5, "mp6": mp6}


def check_matched_pair(p: HomMatchedPair, *, compatibility: bool = True) -> Report:
    """Check both algebras, both bimodules and the six cross identities.

    With ``compatibility=False`` the twist-compatibility clauses ``bl`` and
    ``br`` of the two bimodules are skipped; what remains is exactly the
    condition for the bicrossed product to be Hom-associative.
    """
    clauses = BIMODULE_CLAUSES if compatibility else SUM_CLAUSES
    out = ReportBuilder("matched_pair")
    out.include(check_hom_associative(p.A), "A")
    out.include(check_hom_associative(p.B), "B")
    out.include(check_bimodule(p.bimodule_of_A(), clauses), "bimodule_A")
    out.include(check_bimodule(p.bimodule_of_B(), clauses), "bimodule_B")
    for name, res in matched_pair_residuals(p).items():
        out.residual(name, res, 3)
    return out.build()


def bicrossed_sum(p: HomMatchedPair, *, compatibility: bool = True) -> HomAlgebra:
    report = check_matched_pair(p, compatibility=compatibility)
    if not report.ok:
        raise ConstructionRefused("bicrossed sum refused", report)
    c = sum_product(p.A.mult, p.B.mult, p.lA, p.rA, p.lB, p.rB)
    alpha = np.block(
        [[p.A.alpha, zeros(p.A.dim, p.B.dim)], [zeros(p.B.dim, p.A.dim), p.B.alpha]]
    ).astype(object)
    return HomAlgebra(c, alpha)


def yau_twist(a: HomAlgebra, beta) -> HomAlgebra:
    """Twist ``(A, ., alpha)`` by a morphism ``beta`` into ``(A, beta o ., beta o alpha)``.

    ``beta`` must be multiplicative and commute with ``alpha``.
    """
    beta = to_array(beta)
    if beta.shape != a.alpha.shape:
        raise DimensionError(f"twist {beta.shape} does not match algebra dim {a.dim}")
    pre = ReportBuilder("yau_twist_pre")
    pre.include(check_hom_associative(a)).include(check_multiplicative(a))
    pre.residual("morphism", multiplicative_residual(a.mult, beta), 2)
    pre.residual("commutes", (beta.dot(a.alpha) - a.alpha.dot(beta)).T, 1)
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("Yau twist refused", pre)
    mult = np.einsum("ijk,lk->ijl", a.mult, beta)
    return HomAlgebra(mult, beta.dot(a.alpha), name=a.name)
