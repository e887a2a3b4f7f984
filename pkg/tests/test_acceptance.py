"""Acceptance criteria 1-7, one test each.

Every test prints a ``criterion N: PASS|FAIL`` line as it finishes, and the
pytest terminal summary repeats them in order.  Run the file directly
(``python3 tests/test_acceptance.py``) to get just those lines.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

import generators as gen
import oracles as orc
from acceptance_log import criterion
from homworkbench import bihom_core as bh
from homworkbench import cli
from homworkbench import dendriform as dd
from homworkbench import frobenius_double as fb
from homworkbench import hom_core as hc
from homworkbench._report import ConstructionRefused, PreconditionFailed
from homworkbench.exact_linear import coproduct_of, identity, to_array, zeros

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def wit(report, clause):
    return [(w.indices, w.residual) for w in report.witnesses if w.clause == clause]


def agree(report, oracle, mapping):
    """Witness lists match clause by clause; ``mapping`` is checker name -> oracle name."""
    return all(wit(report, mine) == oracle.found[theirs] for mine, theirs in mapping.items())


def builds(fn, *args):
    try:
        fn(*args)
    except ConstructionRefused:
        return False
    return True


# -- 1 -------------------------------------------------------------------------


def _soundness_cases(rng):
    """Yield ``(kind, report, oracle, mapping, extra)`` for one random instance of each kind.

    ``mapping`` pairs checker clauses with oracle clauses whose witness lists
    must coincide; ``extra`` maps the remaining checker clauses to whether
    their separately computed verdict agrees.
    """
    n = rng.choice((1, 2, 3))
    c, alpha = gen.raw_tensor(rng, n), gen.twist(rng, n)
    a = hc.HomAlgebra(c, alpha)

    yield "hom_associative", hc.check_hom_associative(a), orc.hom_assoc_witnesses(c, alpha, alpha), {"hom_associativity": "assoc"}, {}
    yield "multiplicative", hc.check_multiplicative(a), orc.multiplicative_witnesses(c, alpha), {"multiplicativity": "mult"}, {}

    a2 = gen.twist(rng, n)
    b = bh.BiHomAlgebra(c, alpha, a2)
    rep = bh.check_bihom_associative(b)
    extra = {
        "commutation": agree(rep, orc.commute_witnesses(alpha, a2), {"commutation": "commute"}),
        "multiplicative_alpha1": agree(rep, orc.multiplicative_witnesses(c, alpha), {"multiplicative_alpha1": "mult"}),
        "multiplicative_alpha2": agree(rep, orc.multiplicative_witnesses(c, a2), {"multiplicative_alpha2": "mult"}),
    }
    yield "bihom_associative", rep, orc.hom_assoc_witnesses(c, alpha, a2), {"bihom_associativity": "assoc"}, extra

    prec, succ = gen.raw_tensor(rng, n), gen.raw_tensor(rng, n)
    hd = dd.HomDendriform(prec, succ, alpha)
    axioms = {k: k for k in dd.AXIOMS}
    yield "hom_dendriform", dd.check_hom_dendriform(hd), orc.dendriform_witnesses(prec, succ, alpha, alpha), axioms, {}
    rep = dd.check_bihom_dendriform(dd.BiHomDendriform(prec, succ, alpha, a2))
    extra = {"commutation": agree(rep, orc.commute_witnesses(alpha, a2), {"commutation": "commute"})}
    for tn, t in (("alpha", alpha), ("beta", a2)):
        for on, op in (("prec", prec), ("succ", succ)):
            clause = f"multiplicative_{tn}_{on}"
            extra[clause] = agree(rep, orc.multiplicative_witnesses(op, t), {clause: "mult"})
    yield "bihom_dendriform", rep, orc.dendriform_witnesses(prec, succ, alpha, a2), axioms, extra

    m = rng.choice((1, 2, 3))
    l, r = gen.family(rng, n, m), gen.family(rng, n, m)
    beta, beta2 = gen.twist(rng, m), gen.twist(rng, m)
    yield (
        "hom_bimodule",
        hc.check_bimodule(hc.HomBimodule(a, l, r, beta)),
        orc.bimodule_witnesses(c, alpha, alpha, l, r, beta, beta),
        {"lpb": "lpb", "rpb": "rpb", "lar": "lar", "bl": "beta1_l", "br": "beta1_r"},
        {},
    )
    yield (
        "bihom_bimodule",
        bh.check_bihom_bimodule(bh.BiHomBimodule(b, l, r, beta, beta2)),
        orc.bimodule_witnesses(c, alpha, a2, l, r, beta, beta2),
        {k: k for k in bh.BIHOM_BIMODULE_CLAUSES},
        {},
    )

    G = gen.matrix(rng, n)
    if rng.random() < 0.5:
        G = G + G.T
    nondegenerate = orc.det(orc.tolist(G)) != 0
    rep = fb.check_form(fb.HomBilinearForm(a, G))
    yield (
        "frobenius_form",
        rep,
        orc.form_witnesses(c, alpha, G),
        {k: k for k in ("symmetric", "alpha_invariant", "alpha_compatible")},
        {"nondegenerate": rep.passed("nondegenerate") == nondegenerate},
    )
    yield "alphabeta_invariant", bh.check_alphabeta_invariant(b, G), orc.alphabeta_witnesses(c, alpha, a2, G), {"alphabeta_invariance": "alphabeta"}, {}
    W = gen.matrix(rng, n)
    if rng.random() < 0.7:
        W = W - W.T
    rep = dd.check_symplectic(dd.SymplecticHomAlgebra(a, W))
    yield (
        "symplectic",
        rep,
        orc.symplectic_witnesses(c, alpha, W),
        {"skew": "skew", "cyclic": "cyclic"},
        {"nondegenerate": rep.passed("nondegenerate") == (orc.det(orc.tolist(W)) != 0)},
    )

    f = gen.matrix(rng, n)
    yield "rota_baxter", dd.check_rota_baxter(a, f), orc.rota_baxter_witnesses(c, f), {"rota_baxter": "rota_baxter"}, {}

    T = gen.matrix(rng, n, m)
    rep = dd.check_o_operator(dd.OOperator(hc.HomBimodule(a, l, r, beta), T))
    Tl, al, be = orc.tolist(T), orc.tolist(alpha), orc.tolist(beta)
    twist = orc.Collector("twist")
    for j in range(m):
        v = orc.e(m, j)
        twist.record("twist", (j,), orc.sub(orc.app(al, orc.app(Tl, v)), orc.app(Tl, orc.app(be, v))))
    yield (
        "o_operator",
        rep,
        orc.o_operator_product_witnesses(c, l, r, T),
        {"product": "product"},
        {"alpha_T_beta": agree(rep, twist, {"alpha_T_beta": "twist"})},
    )


def _bialgebra_precondition_agrees(rng):
    """The bialgebra checker refuses exactly when the oracle preconditions fail."""
    n = rng.choice((1, 2, 3))
    c, alpha = gen.raw_tensor(rng, n), to_array(rng.choice(gen.INVOLUTIONS[min(n, 2)])) if n < 3 else gen.twist(rng, n)
    d = fb.HomBialgebraData(hc.HomAlgebra(c, alpha), gen.raw_tensor(rng, n))
    dual = fb.dual_algebra(d)
    al = orc.tolist(alpha)
    pre_ok = (
        orc.matmul(al, al) == orc.tolist(identity(n))
        and orc.multiplicative_witnesses(c, alpha).ok()
        and orc.hom_assoc_witnesses(c, alpha, alpha).ok()
        and orc.hom_assoc_witnesses(dual.mult, dual.alpha, dual.alpha).ok()
    )
    try:
        fb.check_hom_bialgebra(d)
    except PreconditionFailed:
        return not pre_ok
    return pre_ok


def _bialgebra_cases(rng):
    d = gen.hom_bialgebra_data(rng, rng.choice((1, 2)))
    a = d.algebra
    rep = fb.check_hom_bialgebra(d)
    oracle = orc.bialgebra_witnesses(a.mult, d.coprod, a.alpha, a.alpha)
    return agree(rep, oracle, {"infinitesimal": "infinitesimal", "antisymmetric": "antisymmetric"}) and rep.ok == oracle.ok()


def test_criterion_1_checker_soundness():
    with criterion(1, "axiom checkers equal brute-force expansion (200 instances per kind)"):
        start = time.perf_counter()
        rng = gen.seeded(1)
        mismatches, verdicts = {}, {}
        for _ in range(200):
            for kind, report, oracle, mapping, extra in _soundness_cases(rng):
                covered = set(report.clauses) == set(mapping) | set(extra)
                if not (covered and agree(report, oracle, mapping) and all(extra.values())):
                    mismatches[kind] = mismatches.get(kind, 0) + 1
                verdicts.setdefault(kind, set()).add(report.ok)
            if not _bialgebra_cases(rng):
                mismatches["hom_bialgebra"] = mismatches.get("hom_bialgebra", 0) + 1
            if not _bialgebra_precondition_agrees(rng):
                mismatches["hom_bialgebra_pre"] = mismatches.get("hom_bialgebra_pre", 0) + 1
        elapsed = time.perf_counter() - start
        assert mismatches == {}, mismatches
        # Both verdicts occur for every kind, so agreement is not vacuous.
        assert all(v == {True, False} for v in verdicts.values()), verdicts
        assert elapsed < 30, f"took {elapsed:.1f}s"


# -- 2 -------------------------------------------------------------------------


def f2(a1, a2, b1, b2, c1, c2):
    c = zeros(3, 3, 3)
    c[0, 0, 0] = c[0, 1, 2] = c[1, 0, 2] = 1
    return hc.HomAlgebra(c, to_array([[0, 0, 0], [a1, b1, c1], [a2, b2, c2]]))


def test_criterion_2_paper_example_regression():
    with criterion(2, "F2: b1 != 0 fails first at (1,1,2); b1 = 0 verdict pinned"):
        bad = hc.check_hom_associative(f2(1, 0, 1, 1, 0, 1))
        assert not bad.ok
        assert bad.first().indices == (1, 1, 2)
        assert bad.first().residual == (0, 0, -1)
        for b1 in (-2, -1, "1/2", 1, 2):
            first = hc.check_hom_associative(f2(0, 1, b1, 0, 0, 1)).first()
            assert first.indices == (1, 1, 2)
            assert first.residual == (0, 0, -Fraction(b1))
        # Canonical regression value: the b1 = 0 fixture is accepted.
        doc = cli.parse_document(FIXTURES / "f2_b1_zero.json")
        assert hc.check_hom_associative(doc.value).ok


# -- 3 -------------------------------------------------------------------------


def _double_is_sound(total_c, left, right, G, n2):
    """Oracle verdict for a double: associativity, symmetry, nondegeneracy, invariance."""
    return (
        orc.hom_assoc_witnesses(total_c, left, right).ok()
        and orc.form_witnesses(total_c, left, G).found["symmetric"] == []
        and orc.det(orc.tolist(G)) != 0
        and orc.alphabeta_witnesses(total_c, left, right, G).ok()
    )


def test_criterion_3_double_soundness():
    with criterion(3, "every accepted bialgebra datum yields a sound double"):
        F1 = hc.HomAlgebra(to_array([[[1]]]), identity(1))
        c3 = zeros(2, 2, 2)
        c3[0, 0, 0] = c3[0, 1, 1] = c3[1, 0, 1] = 1
        F3 = hc.HomAlgebra(c3, identity(2))
        F4 = hc.HomAlgebra(zeros(2, 2, 2), to_array([[1, 0], [0, -1]]))
        seeded = [fb.HomBialgebraData(a, zeros(a.dim, a.dim, a.dim)) for a in (F1, F3, F4)]
        rng = gen.seeded(3)
        accepted = list(seeded)
        while len(accepted) < len(seeded) + 100:
            d = gen.hom_bialgebra_data(rng, 2)
            if fb.check_hom_bialgebra(d).ok:
                accepted.append(d)
        for d in accepted:
            fd = fb.double_construct_frobenius(d)
            assert fb.verify_frobenius_double(fd, d).ok
            t = fd.total
            assert _double_is_sound(t.mult, t.alpha, t.alpha, fd.form.gram, 2 * d.algebra.dim)
            # the two halves sit inside as subalgebras
            n = d.algebra.dim
            assert (t.mult[:n, :n, :n] == d.algebra.mult).all() and not t.mult[:n, :n, n:].any()
            dual = fb.dual_algebra(d)
            assert (t.mult[n:, n:, n:] == dual.mult).all() and not t.mult[n:, n:, :n].any()

        bi_accepted = [bh.BiHomBialgebraData(bh.lift(d.algebra), d.coprod) for d in seeded]
        while len(bi_accepted) < len(seeded) + 100:
            d = gen.bihom_bialgebra_data(rng, 2)
            if bh.check_bihom_bialgebra(d).ok:
                bi_accepted.append(d)
        for d in bi_accepted:
            fd = bh.double_construct_bihom_frobenius(d)
            assert bh.verify_bihom_frobenius_double(fd, d).ok
            t = fd.total
            assert orc.commute_witnesses(t.alpha1, t.alpha2).ok()
            assert orc.multiplicative_witnesses(t.mult, t.alpha1).ok()
            assert orc.multiplicative_witnesses(t.mult, t.alpha2).ok()
            assert _double_is_sound(t.mult, t.alpha1, t.alpha2, fd.gram, 2 * d.algebra.dim)


# -- 4 -------------------------------------------------------------------------


def test_criterion_4_equivalences():
    with criterion(4, "bialgebra / matched pair / double equivalences agree extensionally"):
        rng = gen.seeded(4)
        seen = set()
        for _ in range(300):
            d = gen.hom_bialgebra_data(rng, rng.choice((1, 2)))
            verdicts = (
                fb.check_hom_bialgebra(d).ok,
                fb.check_hom_matched_criterion(d).ok,
                builds(fb.double_construct_frobenius, d),
            )
            assert len(set(verdicts)) == 1, ("hom", verdicts, d)
            seen.add(verdicts[0])
        assert seen == {True, False}

        seen = set()
        for _ in range(200):
            d = gen.bihom_bialgebra_data(rng, rng.choice((1, 2)), "strict")
            # the strict hypotheses leave no room for distinct twists
            assert (d.algebra.alpha1 == d.algebra.alpha2).all()
            verdicts = (
                bh.check_bihom_bialgebra(d, "strict").ok,
                bh.check_bihom_matched_criterion(d, "strict").ok,
                builds(bh.double_construct_bihom_frobenius, d, "strict"),
            )
            assert len(set(verdicts)) == 1, ("bihom", verdicts, d)
            seen.add(verdicts[0])
        assert seen == {True, False}

        seen = set()
        for _ in range(100):
            dA, dB = gen.dendriform_pair(rng)
            verdicts = (
                builds(dd.symplectic_double, dA, dB),
                hc.check_matched_pair(dd.symplectic_matched_pair(dA, dB)).ok,
                dd.check_dendriform_matched_pair(dd.dendriform_dual_matched_pair(dA, dB)).ok,
                dd.check_dendriform_D_bialgebra(dA, coproduct_of(dB.succ), coproduct_of(dB.prec)).ok,
            )
            assert len(set(verdicts)) == 1, ("dendriform", verdicts, dA, dB)
            seen.add(verdicts[0])
        assert seen == {True, False}


# -- 5 -------------------------------------------------------------------------


def test_criterion_5_rota_baxter_pipeline():
    with criterion(5, "F5 Rota-Baxter to dendriform pipeline and 50 round trips"):
        c = zeros(2, 2, 2)
        c[0, 0, 1] = 1
        a = hc.HomAlgebra(c, identity(2))
        f = to_array([[2, 0], [0, 1]])
        assert dd.check_rota_baxter(a, f).ok
        d = dd.dendriform_from_o_operator(dd.OOperator(hc.HomBimodule(a, a.L, a.R, a.alpha), f))
        assert dd.check_hom_dendriform(d).ok
        star = dd.associated_algebra(d)
        cl, fl = orc.tolist(c), orc.tolist(f)
        for i, j in product(range(2), repeat=2):
            u, v = orc.e(2, i), orc.e(2, j)
            assert orc.app(fl, orc.mul(orc.tolist(star.mult), u, v)) == orc.mul(cl, orc.app(fl, u), orc.app(fl, v))

        rng = gen.seeded(5)
        for _ in range(50):
            dA = gen.any_dendriform(rng, rng.choice((1, 2, 3)))
            back = dd.dendriform_from_o_operator(dd.identity_o_operator(dA))
            assert (back.prec == dA.prec).all() and (back.succ == dA.succ).all()
            assert (back.alpha == dA.alpha).all()


# -- 6 -------------------------------------------------------------------------


def _same(r1, r2, mapping):
    return all(wit(r1, a) == wit(r2, b) for a, b in mapping.items())


def test_criterion_6_specialization_coherence():
    with criterion(6, "biHom checkers at equal twists match Hom; Hom at identity matches plain"):
        rng = gen.seeded(6)
        for _ in range(100):
            n = rng.choice((1, 2, 3))
            c, alpha = gen.raw_tensor(rng, n), gen.twist(rng, n)
            a = hc.HomAlgebra(c, alpha)
            b = bh.lift(a)

            rb = bh.check_bihom_associative(b)
            assert rb.passed("commutation")
            assert _same(rb, hc.check_hom_associative(a), {"bihom_associativity": "hom_associativity"})
            hm = hc.check_multiplicative(a)
            assert _same(rb, hm, {"multiplicative_alpha1": "multiplicativity", "multiplicative_alpha2": "multiplicativity"})

            m = rng.choice((1, 2))
            l, r, beta = gen.family(rng, n, m), gen.family(rng, n, m), gen.twist(rng, m)
            assert _same(
                bh.check_bihom_bimodule(bh.BiHomBimodule(b, l, r, beta, beta)),
                hc.check_bimodule(hc.HomBimodule(a, l, r, beta)),
                {"lpb": "lpb", "rpb": "rpb", "lar": "lar", "beta1_l": "bl", "beta1_r": "br", "beta2_l": "bl", "beta2_r": "br"},
            )

            prec, succ = gen.raw_tensor(rng, n), gen.raw_tensor(rng, n)
            assert _same(
                dd.check_bihom_dendriform(dd.BiHomDendriform(prec, succ, alpha, alpha)),
                dd.check_hom_dendriform(dd.HomDendriform(prec, succ, alpha)),
                {k: k for k in dd.AXIOMS},
            )

            G = gen.matrix(rng, n)
            assert _same(
                bh.check_alphabeta_invariant(b, G),
                fb.check_form(fb.HomBilinearForm(a, G)),
                {"alphabeta_invariance": "alpha_invariant"},
            )

            f = gen.matrix(rng, n)
            assert _same(dd.check_rota_baxter(b, f), dd.check_rota_baxter(a, f), {"rota_baxter": "rota_baxter"})

            T = gen.matrix(rng, n, m)
            assert _same(
                dd.check_o_operator(dd.OOperator(bh.BiHomBimodule(b, l, r, beta, beta), T)),
                dd.check_o_operator(dd.OOperator(hc.HomBimodule(a, l, r, beta), T)),
                {"alpha1_T_beta2": "alpha_T_beta", "alpha2_T_beta1": "alpha_T_beta", "product": "product"},
            )

            d = gen.hom_bialgebra_data(rng, rng.choice((1, 2)))
            bd = bh.BiHomBialgebraData(bh.lift(d.algebra), d.coprod)
            names = {"infinitesimal": "infinitesimal", "antisymmetric": "antisymmetric"}
            assert _same(bh.check_bihom_bialgebra(bd), fb.check_hom_bialgebra(d), names)
            assert _same(bh.check_bihom_matched_criterion(bd), fb.check_hom_matched_criterion(d), names)

            plain = hc.HomAlgebra(c, identity(n))
            assert hc.check_hom_associative(plain).ok == orc.plain_associative(c)
            form = fb.check_form(fb.HomBilinearForm(plain, G))
            assert form.passed("alpha_invariant") == orc.plain_invariant_form(c, G)


# -- 7 -------------------------------------------------------------------------


def _cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "homworkbench", *map(str, args)], capture_output=True, env=env, cwd=ROOT
    )


def test_criterion_7_cli_determinism(tmp_path):
    with criterion(7, "CLI round-trip, byte-identical reports, exit codes"):
        fixtures = sorted(FIXTURES.glob("*.json"))
        assert fixtures
        for path in fixtures:
            raw = json.loads(path.read_text())
            doc = cli.parse_document(path)
            assert cli.serialize(doc) == raw
            assert cli.parse_document(cli.serialize(doc)) == doc
            assert cli.dumps(cli.serialize(doc)) == path.read_text()

        for path in fixtures:
            first, second = _cli("check", path), _cli("check", path)
            assert first.stdout == second.stdout and first.returncode == second.returncode
            assert first.returncode in (0, 1)
            assert json.loads(first.stdout)["status"] == ("ok" if first.returncode == 0 else "fail")

        one = _cli("construct", "frobenius_double", FIXTURES / "f3_bialgebra.json", "-o", tmp_path / "a.json")
        two = _cli("construct", "frobenius_double", FIXTURES / "f3_bialgebra.json", "-o", tmp_path / "b.json")
        assert one.returncode == two.returncode == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

        assert _cli("check", FIXTURES / "f1_hom_algebra.json").returncode == 0
        assert _cli("check", FIXTURES / "f2_hom_algebra.json").returncode == 1
        assert _cli("construct", "yau_twist", FIXTURES / "f5_operator.json").returncode == 1
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"kind": "hom_algebra", "payload": {"dim": 1, "mult": [[1, 1, 1, "1/0"]], "alpha": [["1"]]}}))
        out = _cli("check", bad)
        assert out.returncode == 2 and b"non-rational scalar" in out.stderr
        assert _cli("check", tmp_path / "missing.json").returncode == 2
        assert _cli("check", FIXTURES / "f1_hom_algebra.json", "--checks", "symplectic").returncode == 2


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
