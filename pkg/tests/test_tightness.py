"""Sigma/mu-vectors, Morse reports, tightness and the criterion battery."""
from fractions import Fraction
from math import comb

import pytest

from stellar.constructions import (corpus, cross_polytope,
                                   random_stacked_sphere, standard_ball,
                                   standard_sphere)
from stellar.core import Complex, link
from stellar.homology import QQ, FieldSpec, betti
from stellar.moves import w_k_membership
from stellar.tightness import (BudgetError, criterion_battery, is_tight,
                               morse_report, mu_vector, mu_via_pairs,
                               p23_bounds, sigma_g_report, sigma_vector)

Z2 = FieldSpec.prime(2)


def test_sigma_point():
    pt = Complex.from_facets([["v"]])
    assert sigma_vector(pt, QQ) == (Fraction(-1),)


def test_sigma_standard_spheres():
    # sigma_i = -delta_{i0} for i < d; sigma_d = 1
    for d in (1, 2, 3):
        sig = sigma_vector(standard_sphere(d), QQ)
        assert sig[0] == -1
        assert all(sig[i] == 0 for i in range(1, d))
        assert sig[d] == 1


def test_sigma_cross_polytope_closed_form():
    for d in (1, 2, 3, 4):
        sig = sigma_vector(cross_polytope(d), QQ)
        assert sig[0] == Fraction(-2 * d, 2 * d + 1)
        for i in range(1, d + 1):
            assert sig[i] == Fraction(comb(d + 1, i + 1), comb(2 * d + 2, 2 * i + 2))


def test_sigma_cap():
    with pytest.raises(BudgetError):
        sigma_vector(corpus()["S5_18"].complex, QQ)  # 18 > 16
    # override works on something small enough to force through
    x = cross_polytope(2)
    assert sigma_vector(x, QQ, cap=None) == sigma_vector(x, QQ)


def test_sigma_parallel_agrees():
    x = cross_polytope(3)
    assert sigma_vector(x, QQ, jobs=2) == sigma_vector(x, QQ, jobs=1)


def test_mu_standard_spheres():
    for d in (1, 2, 3, 4):
        mu = mu_vector(standard_sphere(d), QQ)
        assert mu == (Fraction(1),) + (Fraction(0),) * (d - 1) + (Fraction(1),)


def test_mu_standard_ball():
    mu = mu_vector(standard_ball(3), QQ)
    assert mu == (1, 0, 0, 0)


def test_mu_torus_and_pairs(corp):
    tor = corp["torus_7"].complex
    assert mu_vector(tor, QQ) == (1, 2, 1)
    assert mu_via_pairs(tor, QQ) == (1, 2, 1)


def test_mu_pairs_needs_two_neighbourly():
    c4 = Complex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    with pytest.raises(Exception):
        mu_via_pairs(c4, QQ)


def test_mu_pairs_equals_mu_small(corp):
    for X in (standard_sphere(1), standard_sphere(2), standard_sphere(3),
              corp["rp2_6"].complex, corp["lutz_S3_8"].complex):
        for fld in (QQ, Z2):
            assert mu_via_pairs(X, fld) == mu_vector(X, fld), str(fld)


def test_morse_report_cross_polytope_fails_strong():
    # not 2-neighbourly: alternating sum = (2d+1)/(2d+2) * chi(S^d)
    for d in (2, 4):
        rep = morse_report(cross_polytope(d), QQ)
        assert rep.verdict == "not-applicable"
        assert rep.morse_slack[d] == Fraction(2 * d + 1, 2 * d + 2) * 2 - 2
        assert rep.morse_slack[d] < 0  # strong Morse fails at the top index
        assert rep.duality_ok  # yet mu is self-dual here
    rep = morse_report(cross_polytope(3), QQ)
    assert rep.morse_slack[3] == 0  # chi(S^3) = 0 hides the failure


def test_morse_report_two_neighbourly(corp):
    for name in ("torus_7", "rp2_6", "lutz_S3_8"):
        X = corp[name].complex
        for fld in (QQ, Z2):
            rep = morse_report(X, fld)
            assert all(s >= 0 for s in rep.morse_slack)
            assert rep.morse_slack[X.dim] == 0
            assert rep.weak_ok


def test_morse_duality_orientable(corp):
    rep = morse_report(corp["torus_7"].complex, QQ)
    assert rep.duality_ok and rep.verdict == "tight"
    rep = morse_report(corp["rp2_6"].complex, Z2)
    assert rep.duality_ok and rep.verdict == "tight"
    rep = morse_report(corp["rp2_6"].complex, QQ)
    assert rep.duality_ok is None and rep.verdict == "not-tight"


def test_mureport_json(corp):
    rep = morse_report(corp["torus_7"].complex, QQ)
    data = rep.to_json_dict()
    assert data["verdict"] == "tight"
    assert data["mu"] == ["1", "2", "1"]
    assert data["field"] == "Q"


def test_tight_spheres_both_modes():
    for d in (1, 2, 3):
        s = standard_sphere(d)
        assert is_tight(s, QQ, "direct").tight
        assert is_tight(s, QQ, "p18").tight


def test_tight_witness():
    c4 = Complex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    res = is_tight(c4, QQ, "direct")
    assert not res.tight
    assert res.witness == (("1", "3"), 0)


def test_tight_modes_agree(corp):
    for name in ("torus_7", "rp2_6", "lutz_S2_8", "M_1_2"):
        X = corp[name].complex
        for fld in (QQ, Z2):
            assert is_tight(X, fld, "direct").tight == \
                is_tight(X, fld, "p18").tight, (name, str(fld))


def test_tight_direct_cap():
    with pytest.raises(BudgetError):
        is_tight(corpus()["S3_16"].complex, QQ, "direct")


def test_sigma_g_report_stacked_spheres():
    s = random_stacked_sphere(2, 6, seed=1)
    lines = sigma_g_report(s, 1, QQ, certified=True)
    assert all(l.status == "holds" for l in lines)
    lines = sigma_g_report(s, 1, QQ, certified=False)
    assert lines[0].status == "not-applicable"


def test_sigma_g_report_kn_link(corp):
    lk = link(corp["M_2_4"].complex, (0,))
    lines = sigma_g_report(lk, 2, QQ, certified=True)
    assert all(l.status == "holds" for l in lines)


def test_p23_bounds_m14(corp):
    m14 = corp["M_1_4"].complex
    beta1 = betti(m14, Z2).beta[1]
    assert beta1 == 1
    assert all(fj == bound for _, fj, bound in p23_bounds(m14, beta1))


def test_battery_torus(corp):
    tor = corp["torus_7"].complex
    assert w_k_membership(tor, 1).certified
    lines = {l.prop: l for l in criterion_battery(tor, 1, QQ, wk_certified=True)}
    assert lines["P22a"].status == "holds"
    assert lines["L10"].status == "holds"
    assert lines["L9"].status == "holds"
    assert lines["P20a"].status == "holds"
    assert lines["P20c"].status == "holds"


def test_battery_m14(corp):
    m14 = corp["M_1_4"].complex
    lines = {l.prop: l for l in criterion_battery(m14, 1, QQ, wk_certified=True)}
    assert lines["P23a"].status == "equality"
    assert lines["P23b"].status == "holds"      # strict: not 2-neighbourly
    assert lines["P20"].status == "not-applicable"


def test_battery_m24(corp):
    # M(2,4) is in W_2(4) but not 2-neighbourly (the diagonals are
    # missing), so the neighbourly criteria report not-applicable; the
    # general lower bound holds strictly (its equality case is W_1)
    m24 = corp["M_2_4"].complex
    lines = {l.prop: l for l in criterion_battery(m24, 2, Z2, wk_certified=True)}
    assert lines["P23a"].status == "holds"
    assert lines["P20"].status == "not-applicable"
    assert lines["P21"].status == "not-applicable"
