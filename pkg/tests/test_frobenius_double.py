import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
import oracles as orc
from homworkbench import frobenius_double as fb
from homworkbench import hom_core as hc
from homworkbench._report import ConstructionRefused, PreconditionFailed
from homworkbench.exact_linear import DimensionError, det_exact, identity, to_array, zeros

F1 = hc.HomAlgebra(to_array([[[1]]]), identity(1))
F4 = hc.HomAlgebra(zeros(2, 2, 2), to_array([[1, 2], [0, -1]]))


def _f3():
    c = zeros(2, 2, 2)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    return hc.HomAlgebra(c, identity(2))


F3 = _f3()
E11 = to_array([[[1]]])


class TestDualBimodule:
    @pytest.mark.parametrize("a", [F1, F3, F4], ids=["line", "unital2", "zero2"])
    def test_regular_dual_is_bimodule(self, a):
        reg = hc.regular_bimodules(a)[2]
        dual = fb.dual_bimodule(reg)
        assert hc.check_bimodule(dual).ok
        # actions swap sides and transpose
        assert (dual.l == np.transpose(a.R, (0, 2, 1))).all()
        assert (dual.r == np.transpose(a.L, (0, 2, 1))).all()

    def test_twice_is_identity(self):
        reg = hc.regular_bimodules(F3)[2]
        assert fb.dual_bimodule(fb.dual_bimodule(reg)) == reg

    def test_refuses_non_involutive(self):
        a = hc.HomAlgebra(zeros(1, 1, 1), to_array([[2]]))
        with pytest.raises(ConstructionRefused) as info:
            fb.dual_bimodule(hc.HomBimodule(a, zeros(1, 1, 1), zeros(1, 1, 1), identity(1)))
        assert "involutive" in str(info.value)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_regular(self, seed):
        a = gen.involutive_hom_algebra(gen.seeded(seed), 2)
        assert hc.check_bimodule(fb.dual_bimodule(hc.regular_bimodules(a)[2])).ok


class TestDualAlgebra:
    def test_zero_coproduct(self):
        d = fb.dual_algebra(fb.HomBialgebraData(F3, zeros(2, 2, 2)))
        assert not d.mult.any() and (d.alpha == identity(2)).all()

    def test_line(self):
        d = fb.dual_algebra(fb.HomBialgebraData(F1, E11))
        assert d.mult.tolist() == [[[1]]]

    def test_twist_transposes(self):
        assert (fb.dual_algebra(fb.HomBialgebraData(F4, zeros(2, 2, 2))).alpha == F4.alpha.T).all()

    def test_shape_checked(self):
        with pytest.raises(DimensionError):
            fb.HomBialgebraData(F3, zeros(1, 1, 1))


class TestForms:
    @pytest.mark.parametrize("n, d", [(1, -1), (2, 1), (3, -1)])
    def test_standard_pairing(self, n, d):
        G = fb.standard_pairing_form(n)
        assert G.shape == (2 * n, 2 * n) and det_exact(G) == d
        assert (G == G.T).all()

    def test_line_form(self):
        r = fb.check_form(fb.HomBilinearForm(F1, [[1]]), untwisted=True)
        assert r.ok and set(r.clauses) == {"symmetric", "nondegenerate", "alpha_invariant", "alpha_compatible", "invariant"}

    def test_skew_form_not_symmetric(self):
        zero = hc.HomAlgebra(zeros(2, 2, 2), identity(2))
        r = fb.check_form(fb.HomBilinearForm(zero, [[0, 1], [-1, 0]]))
        assert r.failing() == ["symmetric"]
        assert r.first().indices == (1, 2)

    def test_degenerate(self):
        r = fb.check_form(fb.HomBilinearForm(F3, [[1, 0], [0, 0]]))
        assert not r.passed("nondegenerate") and r.passed("symmetric")

    def test_trace_like_form_on_unital(self):
        # B(x, y) = coefficient of e2 in xy
        r = fb.check_form(fb.HomBilinearForm(F3, [[1, 1], [1, 0]]))
        assert r.ok

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_matches_oracle(self, seed):
        rng = gen.seeded(seed)
        n = rng.choice((1, 2, 3))
        a = hc.HomAlgebra(gen.raw_tensor(rng, n), gen.twist(rng, n))
        G = gen.matrix(rng, n)
        if rng.random() < 0.5:
            G = G + G.T
        r = fb.check_form(fb.HomBilinearForm(a, G))
        o = orc.form_witnesses(a.mult, a.alpha, G)
        for clause, found in o.found.items():
            assert r.passed(clause) == (not found)
            assert [w.indices for w in r.witnesses if w.clause == clause] == [i for i, _ in found]
        assert r.passed("nondegenerate") == (orc.det(orc.tolist(G)) != 0)


class TestDouble:
    def test_unital_plane_zero_coproduct(self):
        fd = fb.double_construct_frobenius(fb.HomBialgebraData(F3, zeros(2, 2, 2)))
        assert fd.total.dim == 4 and fd.n == 2
        assert (fd.form.gram == fb.standard_pairing_form(2)).all()
        assert orc.hom_assoc_witnesses(fd.total.mult, fd.total.alpha, fd.total.alpha).ok()
        assert orc.plain_invariant_form(fd.total.mult, fd.form.gram)

    def test_line_table(self):
        fd = fb.double_construct_frobenius(fb.HomBialgebraData(F1, zeros(1, 1, 1)))
        # e1 e1 = e1, e1 e1* = e1* e1 = e1*, e1* e1* = 0
        assert fd.total.mult.tolist() == [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]

    def test_zero_algebra(self):
        fd = fb.double_construct_frobenius(fb.HomBialgebraData(F4, zeros(2, 2, 2)))
        assert not fd.total.mult.any()
        assert (fd.total.alpha[:2, :2] == F4.alpha).all() and (fd.total.alpha[2:, 2:] == F4.alpha.T).all()

    def test_refuses_failing_identity(self):
        with pytest.raises(ConstructionRefused) as info:
            fb.double_construct_frobenius(fb.HomBialgebraData(F1, E11))
        assert "infinitesimal" in str(info.value)

    def test_assembled_candidate_fails_verification(self):
        d = fb.HomBialgebraData(F1, E11)
        r = fb.verify_frobenius_double(fb.assemble_frobenius_double(d), d)
        assert not r.ok
        assert r.passed("standard_pairing") and r.passed("subalgebra_A")


class TestBialgebra:
    def test_zero_coproduct(self):
        assert fb.check_hom_bialgebra(fb.HomBialgebraData(F3, zeros(2, 2, 2))).ok
        assert fb.check_hom_matched_criterion(fb.HomBialgebraData(F3, zeros(2, 2, 2))).ok

    def test_line_residual(self):
        # Delta(e1) = e1 (x) e1: residual is LHS - RHS = e1(x)e1 - 2 e1(x)e1
        d = fb.HomBialgebraData(F1, E11)
        r = fb.check_hom_bialgebra(d)
        assert r.failing() == ["infinitesimal"]
        assert r.first().indices == (1, 1) and r.first().residual == (-1,)
        m = fb.check_hom_matched_criterion(d)
        assert m.failing() == ["infinitesimal"]
        assert m.first().residual == (-1,)

    def test_refuses_outside_theory(self):
        a = hc.HomAlgebra(zeros(1, 1, 1), to_array([[2]]))
        with pytest.raises(PreconditionFailed):
            fb.check_hom_bialgebra(fb.HomBialgebraData(a, zeros(1, 1, 1)))
        with pytest.raises(PreconditionFailed):
            fb.check_hom_matched_criterion(fb.HomBialgebraData(a, zeros(1, 1, 1)))

    def test_dual_must_be_hom_associative(self):
        # dual product e1* o e1* = e2*, e2* o e1* = e1*: (e1* e1*) e1* = e1* but e1*(e1* e1*) = 0
        f = zeros(2, 2, 2)
        f[1, 0, 0] = f[0, 1, 0] = 1
        d = fb.HomBialgebraData(F3, f)
        assert not hc.check_hom_associative(fb.dual_algebra(d)).ok
        with pytest.raises(PreconditionFailed) as info:
            fb.check_hom_bialgebra(d)
        assert "dual" in str(info.value)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_matches_oracle_and_criterion(self, seed):
        rng = gen.seeded(seed)
        d = gen.hom_bialgebra_data(rng, rng.choice((1, 2)))
        a = d.algebra
        r = fb.check_hom_bialgebra(d)
        o = orc.bialgebra_witnesses(a.mult, d.coprod, a.alpha, a.alpha)
        assert r.passed("infinitesimal") == (not o.found["infinitesimal"])
        assert r.passed("antisymmetric") == (not o.found["antisymmetric"])
        assert fb.check_hom_matched_criterion(d).ok == r.ok


class TestTensorBimodule:
    @pytest.mark.parametrize("a", [F1, F3, F4], ids=["line", "unital2", "zero2"])
    def test_is_bimodule(self, a):
        t = fb.tensor_bimodule(a)
        assert t.beta.shape == (a.dim**2, a.dim**2)
        assert hc.check_bimodule(t).ok

    def test_refuses_non_multiplicative(self):
        c = zeros(2, 2, 2)
        c[0, 0, 1] = 1
        with pytest.raises(ConstructionRefused):
            fb.tensor_bimodule(hc.HomAlgebra(c, to_array([[2, 0], [0, 1]])))
