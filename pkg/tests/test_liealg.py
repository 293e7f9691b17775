from fractions import Fraction

import pytest

import helpers
from walgebras.catalog import (CATALOG, build_osp12, build_sl2, build_sl21,
                               build_sl3_minimal, build_sl3_principal)
from walgebras.liealg import (AlgebraError, LieSuperalgebra, SL2Triple,
                              admissible_chains, check_tensor_identity_F,
                              check_tensor_identity_f, dual_bases_F,
                              dual_bases_f, load_algebra, save_algebra,
                              sharp_project, validate_algebra)
from walgebras.scalars import Scalar

HALF = Fraction(1, 2)
ALL = sorted(CATALOG)
OSP = ["osp12", "sl21"]


def sc(vec, r):
    return tuple(x.scale(r) for x in vec)


@pytest.mark.parametrize("name", ALL)
def test_catalog_valid(name):
    assert validate_algebra(helpers.algebra(name)) == []


@pytest.mark.parametrize("name", ALL)
def test_data_files_match_builders(name):
    builders = {"sl2": build_sl2, "sl3-principal": build_sl3_principal,
                "sl3-minimal": build_sl3_minimal, "osp12": build_osp12,
                "sl21": build_sl21}
    built = builders[name]()
    loaded = helpers.algebra(name)
    assert built.names == loaded.names
    assert built.struct == loaded.struct
    assert built.form == loaded.form
    assert built.gradings == loaded.gradings


def test_file_roundtrip(tmp_path):
    for name in ALL:
        g = helpers.algebra(name)
        path = tmp_path / (name + ".json")
        save_algebra(g, path)
        g2 = load_algebra(path)
        assert g2.names == g.names and g2.struct == g.struct
        assert g2.form == g.form and g2.parities == g.parities
        assert validate_algebra(g2) == []


def test_parse_error_names_location(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json\n")
    with pytest.raises(AlgebraError, match="line"):
        load_algebra(path)
    path.write_text('{"basis": []}')
    with pytest.raises(AlgebraError, match="field"):
        load_algebra(path)


def test_flipped_sl2_reports_triple_violation():
    g = build_sl2()
    struct = dict(g.struct)
    iE, iH, iF = 0, 1, 2
    minusH = tuple(x.scale(-1) for x in g.basis_vec(iH))
    struct[(iE, iF)] = minusH
    struct[(iF, iE)] = g.basis_vec(iH)
    bad = LieSuperalgebra("sl2-flipped", g.names, g.parities, struct, g.form,
                          sl2=g.sl2)
    report = validate_algebra(bad)
    assert any("[E,F]=H" in r for r in report)


def test_osp_wrong_form_normalization_reported():
    g = build_osp12()
    ie, if_ = 1, 3
    form = [list(row) for row in g.form]
    form[ie][if_] = Scalar.rational(2)
    form[if_][ie] = Scalar.rational(-2)
    bad = LieSuperalgebra("osp-bad", g.names, g.parities, dict(g.struct),
                          form, sl2=g.sl2, osp=g.osp)
    report = validate_algebra(bad)
    assert any("(e|f)=-2" in r for r in report)
    assert any("invariant" in r for r in report)


def test_non_eigenbasis_rejected():
    # rotate the sl2 basis so H-action is no longer diagonal
    g = build_sl2()
    E, H, F = (g.basis_vec(i) for i in range(3))
    vecs = [tuple(a + b for a, b in zip(E, F)), H,
            tuple(a - b for a, b in zip(E, F))]
    with pytest.raises(AlgebraError, match="ad-H"):
        g.rebase(vecs, ["u", "H", "v"])


def test_subspaces():
    g = helpers.algebra("sl2")
    sub = g.subspaces()
    assert [g.names[i] for i in sub["n"]] == ["E"]
    assert [g.names[i] for i in sub["m"]] == ["E"]
    assert [g.names[i] for i in sub["p"]] == ["H", "F"]
    go = helpers.algebra("osp12")
    sub = go.subspaces()
    assert [go.names[i] for i in sub["n"]] == ["E", "e"]
    assert [go.names[i] for i in sub["m"]] == ["E"]
    # p = g_{<1} contains the grading-1/2 vector e as well
    assert [go.names[i] for i in sub["p"]] == ["e", "H", "f", "F"]
    g3 = helpers.algebra("sl3-principal")
    sub = g3.subspaces()
    assert len(sub["n"]) == 3 and len(sub["m"]) == 3
    assert g3.ge(2) == [2] and len(g3.le(0)) == 5


def test_dual_bases_sl2():
    g = helpers.algebra("sl2")
    db = dual_bases_F(g, g.sl2)
    E, H, F = (g.basis_vec(i) for i in range(3))
    assert db.spins == [1]
    assert db.chain_upper[0] == [E, sc(H, -1), sc(F, -2)]
    assert db.chain_lower[0] == [F, sc(H, -HALF), sc(E, -HALF)]
    # (q^0_1 | q_0^1) = (-H | -H/2) = 1
    assert g.form_value(db.chain_upper[0][1], db.chain_lower[0][1]) == Scalar.one()
    assert not any(sharp_project(db, H))
    assert sharp_project(db, F) == F


def test_dual_bases_sl3_principal():
    g = helpers.algebra("sl3-principal")
    db = dual_bases_F(g, g.sl2)
    assert sorted(db.spins) == [1, 2]
    assert sorted(len(c) for c in db.chain_lower) == [3, 5]


def test_dual_bases_osp():
    g = helpers.algebra("osp12")
    db = dual_bases_f(g, g.osp)
    E, e, H, f, F = (g.basis_vec(i) for i in range(5))
    assert [v for v in db.lower] == [F]
    assert [v for v in db.upper] == [E]
    assert db.chain_upper[0] == [E, sc(e, -1), H, f, sc(F, -2)]
    assert db.chain_lower[0] == [F, sc(f, HALF), sc(H, HALF), sc(e, HALF),
                                 sc(E, -HALF)]
    # C_{0,1} = -1/2 realized on the chain: r_0^1 = -1/2 [e, F] = f/2
    assert db.chain_lower[0][1] == sc(g.bracket(e, F), Fraction(-1, 2))
    assert g.form_value(db.chain_upper[0][2], db.chain_lower[0][2]) == Scalar.one()
    assert not any(db.sharp(H)) and not any(db.sharp(f))
    assert db.sharp(F) == F


@pytest.mark.parametrize("name", ALL)
def test_chain_pairings_are_identity(name):
    g = helpers.algebra(name)
    db = dual_bases_F(g, g.sl2)
    for i in range(db.count()):
        for m in range(len(db.chain_upper[i])):
            for j in range(db.count()):
                for n in range(len(db.chain_lower[j])):
                    want = Scalar.one() if (i == j and m == n) else Scalar.zero()
                    assert g.form_value(db.chain_upper[i][m],
                                        db.chain_lower[j][n]) == want


@pytest.mark.parametrize("name", ALL)
def test_sharp_idempotent(name):
    g = helpers.algebra(name)
    db = dual_bases_F(g, g.sl2)
    for i in range(g.dim):
        v = g.basis_vec(i)
        s = db.sharp(v)
        assert db.sharp(s) == s
    for q in db.lower:
        assert db.sharp(q) == q


def test_bases_not_dual_error():
    g = build_sl2()
    form = [list(row) for row in g.form]
    form[0][2] = Scalar.zero()
    form[2][0] = Scalar.zero()
    bad = LieSuperalgebra("sl2-degform", g.names, g.parities, dict(g.struct),
                          form, sl2=g.sl2)
    with pytest.raises(AlgebraError, match="not dual|singular"):
        dual_bases_F(bad, bad.sl2)


def test_admissible_chains_sl2():
    g = helpers.algebra("sl2")
    db = dual_bases_F(g, g.sl2)
    chains = admissible_chains(db, Fraction(-1), Fraction(-1, 2))
    assert [] in chains  # the empty chain is always admissible
    assert [c for c in chains if c] == [[(0, 0)]]


def test_admissible_chains_osp():
    g = helpers.algebra("osp12")
    db = dual_bases_f(g, g.osp)
    chains = [c for c in admissible_chains(db, Fraction(-1), Fraction(-1, 2)) if c]
    assert sorted(chains) == [[(0, 0)], [(0, 0), (0, 1)], [(0, 1)]]


@pytest.mark.parametrize("name", ALL)
def test_lemma_3_4_tensor_identity(name):
    g = helpers.algebra(name)
    assert check_tensor_identity_F(dual_bases_F(g, g.sl2)) == []


@pytest.mark.parametrize("name", OSP)
def test_lemma_6_4_tensor_identity(name):
    g = helpers.algebra(name)
    assert check_tensor_identity_f(dual_bases_f(g, g.osp)) == []


def test_sl21_kernel_dimensions():
    g = helpers.algebra("sl21")
    db = dual_bases_f(g, g.osp)
    assert db.count() == 2
    assert sorted(db.spins) == [HALF, 1]
    dbF = dual_bases_F(g, g.sl2)
    assert dbF.count() == 4
