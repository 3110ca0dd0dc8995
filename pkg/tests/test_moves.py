"""Bistellar/shelling engine, certificates and searches."""
import random

import pytest

from stellar.constructions import (LUTZ_B2_SHELLING, cross_polytope,
                                   random_stacked_ball, random_stacked_sphere,
                                   standard_ball, standard_sphere)
from stellar.core import Complex, boundary, facet_hash, join, link
from stellar.moves import (BistellarMove, HypothesisViolation, MoveCertificate,
                           MoveError, apply_bistellar, apply_reverse,
                           bistellar_face_delta, canonical_ball,
                           canonical_manifold, ears, enumerate_bistellar,
                           find_shelling, is_1_stacked_via_tree,
                           is_k_stacked_ball, replay_bistellar,
                           replay_shelling, stellation_search, verify_shelling,
                           w_k_membership)
from stellar.vectors import f_vector, g_vector, h_vector
from stellar.verify import brute_force_bistellar

FIVE_VERTEX_SPHERE = ["124", "134", "234", "125", "135", "235"]


def test_enumerate_against_oracle_small(corp):
    for X in (standard_sphere(2),
              Complex.from_facets(FIVE_VERTEX_SPHERE),
              Complex.from_facets(["12", "23", "34", "45", "51"]),
              cross_polytope(2),
              corp["torus_7"].complex,
              corp["rp2_6"].complex,
              corp["lutz_S3_8"].complex):
        assert enumerate_bistellar(X) == brute_force_bistellar(X)


def test_minimal_spheres_admit_no_moves():
    for d in (1, 2, 3):
        assert enumerate_bistellar(standard_sphere(d)) == []


def test_five_vertex_sphere_moves():
    X = Complex.from_facets(FIVE_VERTEX_SPHERE)
    moves = enumerate_bistellar(X)
    # both vertex removals and the three edge flips onto the missing 45
    removals = [m for m in moves if m.index == 2]
    assert {m.alpha for m in removals} == {("4",), ("5",)}
    flips = [m for m in moves if m.index == 1]
    assert all(m.beta == ("4", "5") for m in flips)
    assert len(flips) == 3


def test_apply_zero_move_and_reverse():
    s = standard_sphere(2)
    mv = BistellarMove(("1", "2", "3"), ("5",), 0)
    y = apply_bistellar(s, mv)
    assert f_vector(y) == (5, 9, 6)
    assert apply_reverse(y, mv) == s


def test_apply_checks_admissibility():
    s = standard_sphere(2)
    with pytest.raises(MoveError):
        apply_bistellar(s, BistellarMove(("1", "2"), ("3", "4"), 1))
    with pytest.raises(MoveError):
        apply_bistellar(s, BistellarMove(("1", "2", "3"), ("4",), 0))


def test_face_delta_law():
    X = Complex.from_facets(FIVE_VERTEX_SPHERE)
    for mv in enumerate_bistellar(X):
        Y = apply_bistellar(X, mv)
        delta = bistellar_face_delta(X.dim, mv.index)
        fx, fy = f_vector(X), f_vector(Y)
        fy = fy + (0,) * (len(fx) - len(fy))
        assert tuple(fy[i] - fx[i] for i in range(len(fx))) == delta


def test_g_delta_law_random_walk():
    rng = random.Random(11)
    X = standard_sphere(3)
    fresh = 6
    for _ in range(60):
        options = list(enumerate_bistellar(X))
        if X.m < 10:
            facet = X.facets_as_names()[rng.randrange(len(X.facets))]
            options.append(BistellarMove(facet, (str(fresh),), 0))
            fresh += 1
        mv = options[rng.randrange(len(options))]
        g0, X = g_vector(X), apply_bistellar(X, mv)
        g1 = g_vector(X)
        d = X.dim
        for j in range(d + 1):
            expect = (1 if j == mv.index else -1 if j == d - mv.index else 0) \
                if 2 * j != d else 0
            assert g1[j + 1] - g0[j + 1] == expect


def test_verify_shelling_lutz(corp):
    cert = verify_shelling(corp["lutz_B2"].complex,
                           [list(f) for f in LUTZ_B2_SHELLING])
    assert cert.kind == "shelling" and cert.length == 14
    assert cert.k_bound == 2  # 2-shelled
    h = h_vector(corp["lutz_B2"].complex)
    counts = cert.index_counts()
    assert all(counts.get(j - 1, 0) == h[j] for j in range(1, len(h)))


def test_verify_shelling_rejects_bad_order(corp):
    order = [list(f) for f in LUTZ_B2_SHELLING]
    order[1], order[-1] = order[-1], order[1]
    with pytest.raises(MoveError):
        verify_shelling(corp["lutz_B2"].complex, order)


def test_single_facet_ball_empty_certificate():
    b = standard_ball(3)
    cert = verify_shelling(b, [["1", "2", "3", "4"]])
    assert cert.length == 0 and cert.k_bound == 0


def test_shelling_replay_and_json(corp):
    lb2 = corp["lutz_B2"].complex
    cert = verify_shelling(lb2, [list(f) for f in LUTZ_B2_SHELLING])
    start = Complex.from_facets([list(LUTZ_B2_SHELLING[0])])
    end = replay_shelling(start, cert.steps)
    assert end == lb2 and facet_hash(end) == cert.end_hash
    again = MoveCertificate.from_json(cert.to_json())
    assert again == cert


def test_shelling_bistellar_boundary_consistency(corp):
    # shelling a ball acts on its boundary as the matching bistellar move
    lb2 = corp["lutz_B2"].complex
    cert = verify_shelling(lb2, [list(f) for f in LUTZ_B2_SHELLING])
    cur = Complex.from_facets([list(LUTZ_B2_SHELLING[0])])
    for mv in cert.steps:
        nxt = replay_shelling(cur, [mv])
        got = boundary(nxt)
        expect = apply_bistellar(boundary(cur),
                                 BistellarMove(mv.alpha, mv.beta, mv.index))
        assert got == expect
        cur = nxt


def test_find_shelling(corp):
    assert find_shelling(corp["ziegler_B2"].complex).status == "none"
    res = find_shelling(corp["lutz_B2"].complex)
    assert res.found and res.certificate.k_bound == 2
    res = find_shelling(corp["ziegler_B1"].complex)
    assert res.found and res.certificate.k_bound <= 1
    assert find_shelling(standard_ball(4)).found


def test_ears(corp):
    assert ears(corp["ziegler_B2"].complex) == []
    assert ears(corp["lutz_B2"].complex) == [("2", "4", "5", "7")]
    b = standard_ball(3)
    assert ears(b) == [b.facets_as_names()[0]]


def test_k_stacked(corp):
    assert is_k_stacked_ball(corp["B4_16"].complex, 2)
    assert not is_k_stacked_ball(corp["B4_16"].complex, 1)
    assert is_k_stacked_ball(corp["D6_18"].complex, 2)
    assert is_k_stacked_ball(standard_ball(4), 0)
    # cone over any vertex antistar is d-stacked
    s = random_stacked_sphere(2, 8, seed=2)
    from stellar.constructions import cone_over_antistar
    assert is_k_stacked_ball(cone_over_antistar(s, 0), s.dim)


def test_tree_criterion_matches_skeleton_test(corp):
    for name in ("ziegler_B1", "ziegler_B2", "lutz_B1", "lutz_B2"):
        B = corp[name].complex
        assert is_1_stacked_via_tree(B) == is_k_stacked_ball(B, 1)
    for seed in range(50):
        B = random_stacked_ball(3, 6, seed=seed)
        assert is_1_stacked_via_tree(B) and is_k_stacked_ball(B, 1)


def test_canonical_ball():
    for d, k in ((2, 1), (3, 1), (4, 2)):
        got = canonical_ball(standard_sphere(d), k)
        assert got == standard_ball(d + 1) or \
            got.facet_name_set() == standard_ball(d + 1).facet_name_set()
    five = Complex.from_facets(FIVE_VERTEX_SPHERE)
    ball = canonical_ball(five, 1)
    assert sorted(tuple(sorted(f)) for f in ball.facets_as_names()) == \
        [("1", "2", "3", "4"), ("1", "2", "3", "5")]


def test_canonical_ball_guards(corp):
    with pytest.raises(Exception):
        canonical_ball(corp["S3_16"].complex, 2)  # d < 2k
    # a non-1-stellated sphere fails validation rather than succeeding
    with pytest.raises(HypothesisViolation):
        canonical_ball(corp["torus_7"].complex, 1)


def test_canonical_manifold(corp):
    assert canonical_manifold(corp["M_1_4"].complex, 1) == corp["Mbar_1_4"].complex
    got = canonical_manifold(standard_sphere(2), 0)
    assert got.facet_name_set() == standard_ball(3).facet_name_set()
    with pytest.raises(Exception):
        canonical_manifold(corp["M_1_3"].complex, 1)  # d < 2k+2


def test_stellation_pentagon():
    pent = Complex.from_facets(["12", "23", "34", "45", "51"])
    out = stellation_search(pent, 1, seed=0)
    assert out.found
    assert out.certificate.length == h_vector(pent)[1] - 1 == 2
    assert replay_bistellar(out.start, out.certificate.steps) == pent


def test_stellation_standard_is_empty():
    out = stellation_search(standard_sphere(3), 1)
    assert out.found and out.certificate.length == 0


def test_stellation_unflippable_exhausts(corp):
    out = stellation_search(corp["S3_16"].complex, 3, budget=10 ** 4)
    assert out.status == "exhausted"


def test_stellation_kn_link_counts(corp):
    lk = link(corp["M_2_5"].complex, (0,))
    out = stellation_search(lk, 2, seed=0)
    assert out.found
    assert out.certificate.index_counts() == {0: 6, 1: 15}


def test_stellation_certificates_replay(corp):
    s = random_stacked_sphere(3, 9, seed=4)
    out = stellation_search(s, 1, seed=1)
    assert out.found
    assert replay_bistellar(out.start, out.certificate.steps) == s
    assert all(mv.index == 0 for mv in out.certificate.steps)


def test_c2_no_middle_moves_on_stacked_spheres():
    # 1-stellated d-spheres admit no moves of index 2..d-1
    for d, seed in ((3, 0), (4, 1)):
        s = random_stacked_sphere(d, d + 5, seed=seed)
        for mv in enumerate_bistellar(s):
            assert not (2 <= mv.index <= d - 1)


def test_p2_shelled_iff_shellable_and_stacked(corp):
    # certificates with all indices < k witness k-stackedness
    for name, k in (("lutz_B2", 2), ("ziegler_B1", 1), ("lutz_B1", 1)):
        B = corp[name].complex
        res = find_shelling(B)
        assert res.found
        assert res.certificate.k_bound <= k
        assert is_k_stacked_ball(B, k)


def test_wk_membership(corp):
    rep = w_k_membership(corp["M_1_2"].complex, 1, seed=0)
    assert rep.certified
    rep = w_k_membership(standard_sphere(3), 0)
    assert rep.certified  # standard links only
    # cross polytope links are cross polytopes: not (d-2)-stellated, so
    # the search dead-ends deterministically
    rep = w_k_membership(cross_polytope(2), 0, budget=100)
    assert not rep.certified


def test_btilde_nonshellable_two_stacked_ball(corp):
    from stellar.core import connected_sum
    lb2 = corp["lutz_B2"].complex
    tri = Complex.from_facets([("a", "b", "c")])
    B = join(lb2, tri)
    assert ears(B) == [("2", "4", "5", "7", "a", "b", "c")]
    Bp = Complex.from_facets([tuple(n + "p" for n in f)
                              for f in B.facets_as_names()])
    glue = ("2", "4", "5", "a", "b", "c")
    Bt = connected_sum(B, Bp, [B.id_of(v) for v in glue],
                       [Bp.id_of(v + "p") for v in glue],
                       {v + "p": v for v in glue})
    assert Bt.m == 16 and len(Bt.facets) == 30
    assert is_k_stacked_ball(Bt, 2)
    assert ears(Bt) == []
    assert find_shelling(Bt).status == "none"
    # boundary is the connected sum of the boundary spheres
    S, Sp = boundary(B), boundary(Bp)
    St = connected_sum(S, Sp, [S.id_of(v) for v in glue],
                       [Sp.id_of(v + "p") for v in glue],
                       {v + "p": v for v in glue})
    assert St == boundary(Bt)
