"""Invariant forms, dual bimodules and the double A + A* of an involutive Hom-algebra.

The coproduct ``Delta`` of a bialgebra datum is stored as a
:data:`CoprodTensor` ``f`` with ``Delta(e_k) = sum f[k, i, j] e_i (x) e_j``;
its transpose is the product ``e*_i o e*_j = sum_k f[k, i, j] e*_k`` on the
dual space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._report import ConstructionRefused, PreconditionFailed, Report, ReportBuilder
from .exact_linear import (
    DimensionError,
    basis_grids,
    block,
    coproduct_of,
    det_exact,
    direct_sum,
    gapply,
    gmul,
    identity,
    kron,
    product_of_coproduct,
    to_array,
    zeros,
)
from .hom_core import (
    HomAlgebra,
    HomBimodule,
    HomMatchedPair,
    _Struct,
    check_bimodule,
    check_hom_associative,
    check_involutive,
    check_multiplicative,
    matched_pair_residuals,
    sum_product,
)

__all__ = [
    "HomBilinearForm",
    "HomBialgebraData",
    "FrobeniusDouble",
    "dual_bimodule",
    "dual_algebra",
    "coproduct_of",
    "standard_pairing_form",
    "check_form",
    "frobenius_matched_pair",
    "assemble_frobenius_double",
    "verify_frobenius_double",
    "double_construct_frobenius",
    "check_hom_matched_criterion",
    "check_hom_bialgebra",
    "tensor_bimodule",
]


@dataclass(frozen=True, eq=False)
class HomBilinearForm(_Struct):
    algebra: HomAlgebra
    gram: np.ndarray

    def __post_init__(self):
        gram = to_array(self.gram)
        if gram.shape != (self.algebra.dim,) * 2:
            raise DimensionError(f"Gram matrix {gram.shape} does not match dim {self.algebra.dim}")
        object.__setattr__(self, "gram", gram)


@dataclass(frozen=True, eq=False)
class HomBialgebraData(_Struct):
    algebra: HomAlgebra
    coprod: np.ndarray

    def __post_init__(self):
        f = to_array(self.coprod)
        if f.shape != (self.algebra.dim,) * 3:
            raise DimensionError(f"coproduct {f.shape} does not match dim {self.algebra.dim}")
        object.__setattr__(self, "coprod", f)


@dataclass(frozen=True, eq=False)
class FrobeniusDouble(_Struct):
    """``total`` lives on ``A + A*``: the first ``n`` coordinates are ``A``."""

    total: HomAlgebra
    form: HomBilinearForm
    n: int


def dual_algebra(d: HomBialgebraData) -> HomAlgebra:
    """The algebra ``(A*, o, alpha^T)`` carried by the coproduct."""
    return HomAlgebra(product_of_coproduct(d.coprod), d.algebra.alpha.T.copy())


def _transpose_family(family: np.ndarray) -> np.ndarray:
    return np.transpose(family, (0, 2, 1)).copy()


def _involutive_pre(name: str, a: HomAlgebra) -> Report:
    out = ReportBuilder(name)
    out.flag("involutive", check_involutive(a.alpha))
    out.include(check_multiplicative(a))
    return out.build()


def dual_bimodule(b: HomBimodule) -> HomBimodule:
    """``(r*, l*, beta*)`` on ``V*``, actions given by transposed matrices."""
    pre = _involutive_pre("dual_bimodule_pre", b.algebra)
    pre = ReportBuilder("dual_bimodule_pre").include(pre).include(check_bimodule(b), "bimodule").build()
    if not pre.ok:
        raise ConstructionRefused("dual bimodule refused", pre)
    return HomBimodule(b.algebra, _transpose_family(b.r), _transpose_family(b.l), b.beta.T.copy())


def standard_pairing_form(n: int) -> np.ndarray:
    """Gram matrix of ``B(x + a*, y + b*) = <x, b*> + <a*, y>``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    I, Z = identity(n), zeros(n, n)
    return block([[Z, I], [I, Z]])


def _bilinear(G, u, v):
    return np.einsum("...i,ij,...j->...", u, G, v)


def form_residuals(c, alpha, G) -> dict[str, np.ndarray]:
    n = c.shape[0]
    x, y, z = basis_grids(n, n, n)
    ax, ay, az = (gapply(alpha, t) for t in (x, y, z))
    xs, ys = basis_grids(n, n)
    return {
        "symmetric": (G - G.T)[..., None],
        "alpha_invariant": _bilinear(G, gmul(c, ax, ay), az)[..., None]
        - _bilinear(G, ax, gmul(c, ay, az))[..., None],
        "alpha_compatible": (_bilinear(G, gapply(alpha, xs), ys) - _bilinear(G, xs, gapply(alpha, ys)))[..., None],
        "invariant": (_bilinear(G, gmul(c, x, y), z) - _bilinear(G, x, gmul(c, y, z)))[..., None],
    }


def check_form(f: HomBilinearForm, *, untwisted: bool = False) -> Report:
    """Independent flags: symmetric, nondegenerate, alpha-invariant, alpha-compatible.

    ``untwisted=True`` adds the plain invariance ``B(xy, z) = B(x, yz)``.
    """
    a, G = f.algebra, f.gram
    res = form_residuals(a.mult, a.alpha, G)
    det = det_exact(G)
    out = ReportBuilder("form")
    out.residual("symmetric", res["symmetric"], 2)
    out.flag("nondegenerate", det != 0, (), (det,))
    out.residual("alpha_invariant", res["alpha_invariant"], 3)
    out.residual("alpha_compatible", res["alpha_compatible"], 2)
    if untwisted:
        out.residual("invariant", res["invariant"], 3)
    return out.build()


def frobenius_matched_pair(d: HomBialgebraData) -> HomMatchedPair:
    """``(A, A*, R*, L*, alpha*, R*_o, L*_o, alpha)``; no checks are made."""
    A = d.algebra
    Astar = dual_algebra(d)
    return HomMatchedPair(
        A,
        Astar,
        lA=_transpose_family(A.R),
        rA=_transpose_family(A.L),
        lB=_transpose_family(Astar.R),
        rB=_transpose_family(Astar.L),
    )


def assemble_frobenius_double(d: HomBialgebraData) -> FrobeniusDouble:
    """Build the candidate double without checking anything."""
    p = frobenius_matched_pair(d)
    c = sum_product(p.A.mult, p.B.mult, p.lA, p.rA, p.lB, p.rB)
    total = HomAlgebra(c, direct_sum(p.A.alpha, p.B.alpha))
    n = d.algebra.dim
    return FrobeniusDouble(total, HomBilinearForm(total, standard_pairing_form(n)), n)


def _subalgebra_residual(total: HomAlgebra, part: HomAlgebra, sl: slice) -> tuple[np.ndarray, np.ndarray]:
    """Product and twist defects of ``part`` as the coordinates ``sl`` of ``total``."""
    c = total.mult[sl, sl, :].copy()
    c[:, :, sl] -= part.mult
    t = total.alpha[:, sl].copy()
    t[sl, :] -= part.alpha
    return c, t.T


def verify_frobenius_double(fd: FrobeniusDouble, d: HomBialgebraData) -> Report:
    """Every property a double construction must have, as separate clauses."""
    n = fd.n
    out = ReportBuilder("frobenius_double")
    out.include(check_hom_associative(fd.total), "total")
    for name, part, sl in (("A", d.algebra, slice(0, n)), ("Astar", dual_algebra(d), slice(n, 2 * n))):
        c, t = _subalgebra_residual(fd.total, part, sl)
        out.residual(f"subalgebra_{name}", c, 2)
        out.residual(f"subtwist_{name}", t, 1)
    out.residual("standard_pairing", (fd.form.gram - standard_pairing_form(n))[..., None], 2)
    out.include(check_form(fd.form, untwisted=True), "form")
    return out.build()


def bialgebra_residuals(c, f, p, q) -> tuple[np.ndarray, np.ndarray]:
    """The two coproduct identities, indexed ``(x, y, i, j)``.

    identity 1: ``Delta(p(xy)) - (p (x) L(x))Delta(y) - (R(y) (x) p)Delta(x)``
    identity 2: ``(L(y) (x) p - q (x) R(y))Delta(x) + sigma[(L(x) (x) p - q (x) R(x))Delta(y)]``

    The Hom case has ``p = q = alpha``.
    """
    n = c.shape[0]
    x, y = basis_grids(n, n)
    L, R = np.transpose(c, (0, 2, 1)), np.transpose(c, (1, 2, 0))

    def delta(v):
        return np.tensordot(v, f, axes=([-1], [0]))

    def op(family, v):
        return np.tensordot(v, family, axes=([-1], [0]))

    Dx, Dy = delta(x), delta(y)
    Lx, Ly, Rx, Ry = op(L, x), op(L, y), op(R, x), op(R, y)
    pT = p.T
    id1 = delta(gapply(p, gmul(c, x, y))) - np.matmul(np.matmul(p, Dy), np.swapaxes(Lx, -1, -2)) - np.matmul(
        np.matmul(Ry, Dx), pT
    )

    def bracket(Lv, Rv, D):
        return np.matmul(np.matmul(Lv, D), pT) - np.matmul(np.matmul(q, D), np.swapaxes(Rv, -1, -2))

    id2 = bracket(Ly, Ry, Dx) + np.swapaxes(bracket(Lx, Rx, Dy), -1, -2)
    return id1, id2


def _bialgebra_pre(d: HomBialgebraData) -> Report:
    out = ReportBuilder("hom_bialgebra_pre")
    out.include(_involutive_pre("A", d.algebra), "A")
    out.include(check_hom_associative(d.algebra), "A")
    out.include(check_hom_associative(dual_algebra(d)), "dual")
    return out.build()


def check_hom_bialgebra(d: HomBialgebraData) -> Report:
    """The infinitesimal and antisymmetric coproduct identities.

    Raises :class:`PreconditionFailed` when ``A`` is not involutive and
    multiplicative or when the dual product is not Hom-associative.
    """
    pre = _bialgebra_pre(d)
    if not pre.ok:
        raise PreconditionFailed("bialgebra data outside the theory", pre)
    a = d.algebra
    id1, id2 = bialgebra_residuals(a.mult, d.coprod, a.alpha, a.alpha)
    out = ReportBuilder("hom_bialgebra")
    out.residual("infinitesimal", id1, 2)
    out.residual("antisymmetric", id2, 2)
    return out.build()


def check_hom_matched_criterion(d: HomBialgebraData) -> Report:
    """The two operator identities on ``(x, a*, b*)`` that single out the pair.

    They are the first and fifth cross identities of the matched pair
    ``(A, A*, R*, L*, alpha*, R*_o, L*_o, alpha)``.
    """
    a = d.algebra
    pre = _involutive_pre("matched_criterion_pre", a)
    if not pre.ok:
        raise PreconditionFailed("criterion needs an involutive multiplicative algebra", pre)
    res = matched_pair_residuals(frobenius_matched_pair(d))
    out = ReportBuilder("matched_criterion")
    out.residual("infinitesimal", res["mp1"], 3)
    out.residual("antisymmetric", res["mp5"], 3)
    return out.build()


def double_construct_frobenius(d: HomBialgebraData) -> FrobeniusDouble:
    """The double of an antisymmetric infinitesimal Hom-bialgebra.

    Refuses unless ``A`` and ``A*`` are involutive, multiplicative and
    Hom-associative and the coproduct identities hold.  The output is
    verified before it is returned.
    """
    pre = ReportBuilder("frobenius_double_pre")
    pre.include(_bialgebra_pre(d))
    pre.include(_involutive_pre("dual", dual_algebra(d)), "dual")
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("double construction refused", pre)
    bialg = check_hom_bialgebra(d)
    if not bialg.ok:
        raise ConstructionRefused("double construction refused", bialg)
    fd = assemble_frobenius_double(d)
    post = verify_frobenius_double(fd, d)
    if not post.ok:
        raise ConstructionRefused("assembled double failed verification", post)
    return fd


def tensor_bimodule(a: HomAlgebra) -> HomBimodule:
    """``(alpha (x) L, R (x) alpha, alpha (x) alpha)`` on ``A (x) A``.

    Basis order of ``A (x) A`` is ``e_i (x) e_j -> i*n + j``.
    """
    pre = ReportBuilder("tensor_bimodule_pre")
    pre.include(check_hom_associative(a)).include(check_multiplicative(a))
    pre = pre.build()
    if not pre.ok:
        raise ConstructionRefused("tensor bimodule refused", pre)
    al = a.alpha
    l = np.stack([kron(al, Lx) for Lx in a.L])
    r = np.stack([kron(Rx, al) for Rx in a.R])
    return HomBimodule(a, l, r, kron(al, al))
