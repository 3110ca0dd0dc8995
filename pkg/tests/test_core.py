"""Core complex representation and elementary constructions."""
import warnings

import pytest

from stellar.core import (Complex, InputError, NotAFaceError, StructureError,
                          antistar, are_isomorphic, boundary, connected_sum,
                          dual_graph, facet_hash, format_facets, induced,
                          is_pseudomanifold, is_weak_pseudomanifold, join,
                          link, neighbourliness, parse_facets, skeleton, star)
from stellar.constructions import (corpus, cross_polytope, standard_ball,
                                   standard_sphere)
from stellar.vectors import f_vector


def mask(X, names):
    return [X.id_of(n) for n in names]


def test_from_facets_basic():
    X = Complex.from_facets([[1, 2], [2, 3], [3, 1]])
    assert X.dim == 1 and X.m == 3
    assert f_vector(X) == (3, 3)


def test_from_facets_sigma316(corp):
    X = corp["Sigma3_16"].complex
    assert X.m == 16 and X.dim == 3 and len(X.facets) == 90


def test_from_facets_drops_dominated():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        X = Complex.from_facets([[1, 2, 3], [1, 2]])
    assert len(X.facets) == 1 and X.dim == 2
    assert any("dominated" in str(x.message) for x in w)


def test_from_facets_duplicate_vertex_rejected():
    with pytest.raises(InputError):
        Complex.from_facets([[1, 1, 2]])


def test_skeleton():
    s24 = standard_sphere(2)
    g = skeleton(s24, 1)
    assert f_vector(g) == (4, 6)  # K4
    assert skeleton(s24, s24.dim) == s24


def test_skeleton_s316_is_k16(corp):
    sk = skeleton(corp["S3_16"].complex, 1)
    assert f_vector(sk) == (16, 120)  # complete graph


def test_skeleton_range_error():
    with pytest.raises(Exception):
        skeleton(standard_sphere(2), 5)


def test_link_star_antistar():
    s24 = standard_sphere(2)
    lk = link(s24, mask(s24, ["1"]))
    assert lk.dim == 1 and lk.m == 3 and len(lk.facets) == 3
    ast = antistar(s24, s24.id_of("1"))
    assert ast.facets_as_names() == [("2", "3", "4")]
    with pytest.raises(NotAFaceError):
        link(standard_sphere(1), mask(standard_sphere(1), ["1", "2", "3"]))


def test_link_of_facet_is_empty_complex():
    s = standard_sphere(1)
    lk = link(s, mask(s, ["1", "2"]))
    assert lk.dim == -1 and lk == Complex.empty()


def _face_names(X):
    out = set()
    for t in range(X.dim + 1):
        for f in X.faces_of_dim(t):
            out.add(frozenset(X.names_of_mask(f)))
    return out


def test_star_antistar_partition(corp):
    # star(x) = x * link(x); X = star(x) + antistar(x), meeting in link(x)
    for name in corp:
        X = corp[name].complex
        for v in range(X.m):
            st = star(X, (v,))
            lk = link(X, (v,))
            cone = join(Complex.from_facets([("&apex",)]), lk)
            ren = Complex.from_facets(
                [tuple(X.name_of(v) if n == "&apex" else n for n in f)
                 for f in cone.facets_as_names()])
            assert ren == st
            ast = antistar(X, v)
            sf, af = _face_names(st), _face_names(ast)
            assert sf | af == _face_names(X)
            assert sf & af == _face_names(lk)


def test_induced():
    c4 = Complex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    two_points = induced(c4, mask(c4, ["1", "3"]))
    assert two_points.dim == 0 and two_points.m == 2
    assert induced(c4, range(c4.m)) == c4
    # ids outside V(X) are ignored
    assert induced(c4, [0, 99]) == induced(c4, [0])


def test_induced_cross_polytope_missing_diagonal():
    x = cross_polytope(3)
    pair = induced(x, mask(x, ["x1", "y1"]))
    assert pair.dim == 0 and pair.m == 2


def test_join():
    s0 = standard_sphere(0)
    s0b = Complex.from_facets([["a"], ["b"]])
    c4 = join(s0, s0b)
    assert c4.dim == 1 and f_vector(c4) == (4, 4)
    with pytest.raises(InputError):
        join(s0, s0)


def test_join_of_zero_spheres_is_cross_polytope():
    d = 2
    parts = [Complex.from_facets([[f"x{i}"], [f"y{i}"]]) for i in range(1, d + 2)]
    X = parts[0]
    for p in parts[1:]:
        X = join(X, p)
    assert are_isomorphic(X, cross_polytope(d))


def test_join_cone_euler():
    tor = corpus()["torus_7"].complex
    cone = join(tor, Complex.from_facets([["pt"]]))
    f = f_vector(cone)
    assert sum((-1) ** i * fi for i, fi in enumerate(f)) == 1


def test_join_associative_up_to_isomorphism():
    a = Complex.from_facets([["a1", "a2"]])
    b = Complex.from_facets([["b1"], ["b2"]])
    c = Complex.from_facets([["c1", "c2", "c3"]])
    left = join(join(a, b), c)
    right = join(a, join(b, c))
    assert are_isomorphic(left, right)


def test_boundary():
    for d in (1, 2, 3, 4):
        assert boundary(standard_ball(d)) == standard_sphere(d - 1)
    assert boundary(standard_ball(0)) == Complex.empty()  # S^{-1}
    assert boundary(standard_sphere(2)) == Complex.empty()
    with pytest.raises(StructureError):
        boundary(Complex.from_facets([[1, 2], [2, 3], [2, 4], [2, 5]]))


def test_boundary_of_boundary_empty_on_corpus_balls(corp):
    for name in ("ziegler_B1", "ziegler_B2", "lutz_B1", "lutz_B2", "B4_16"):
        assert boundary(boundary(corp[name].complex)) == Complex.empty()


def test_dual_graph(corp):
    dg = dual_graph(standard_sphere(2))
    assert dg.n == 4 and len(dg.edges) == 6  # K4
    assert dual_graph(corp["ziegler_B1"].complex).is_path()
    two = Complex.from_facets([[1, 2, 3], [4, 5, 6]])
    assert not is_pseudomanifold(two)
    assert is_weak_pseudomanifold(two)


def test_dual_graph_edge_count_is_interior_ridges(corp):
    for name in ("lutz_B2", "ziegler_B2", "S3_16", "torus_7"):
        X = corp[name].complex
        dg = dual_graph(X)
        d = X.dim
        interior = X.n_faces(d - 1) - len(boundary(X).facet_masks) \
            if boundary(X) != Complex.empty() else X.n_faces(d - 1)
        assert len(dg.edges) == interior


def test_neighbourliness(corp):
    assert neighbourliness(corp["S3_16"].complex) == 2
    for d in (1, 2, 3, 4):
        assert neighbourliness(standard_sphere(d)) == d + 1
    c4 = Complex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    assert neighbourliness(c4) == 1


def test_connected_sum_spheres():
    a = standard_sphere(2)
    b = Complex.from_facets([["p", "q", "r"], ["p", "q", "s"],
                             ["p", "r", "s"], ["q", "r", "s"]])
    glued = connected_sum(a, b, mask(a, ["1", "2", "3"]),
                          [b.id_of(v) for v in "pqr"],
                          {"p": "1", "q": "2", "r": "3"})
    assert f_vector(glued) == (5, 9, 6)
    assert boundary(glued) == Complex.empty()


def test_connected_sum_errors():
    a = standard_sphere(2)
    b = standard_sphere(1)
    with pytest.raises(InputError):
        connected_sum(a, b, mask(a, ["1", "2", "3"]), [0, 1], {"1": "1", "2": "2"})


def test_facet_file_round_trip(tmp_path, corp):
    X = corp["Sigma3_16"].complex
    p = tmp_path / "sigma.fct"
    p.write_text(format_facets(X), encoding="utf-8")
    Y = parse_facets(p.read_text(encoding="utf-8"))
    assert Y == X
    # second save is byte-identical
    assert format_facets(Y) == format_facets(X)


def test_facet_file_comments_and_tokens():
    X = parse_facets("# header\nx3 6' b  # trailing\n\nx3 a\n")
    assert X.m == 4 and X.dim == 2 and len(X.facets) == 2


def test_facet_hash_order_insensitive():
    a = Complex.from_facets([[1, 2, 3], [2, 3, 4]])
    b = Complex.from_facets([[4, 3, 2], [3, 2, 1]])
    assert facet_hash(a) == facet_hash(b)


def test_face_index_matches_direct_scan(corp):
    # oracle equivalence on a small complex: membership via subset scan
    X = corp["torus_7"].complex
    from itertools import combinations as comb
    for r in range(1, X.dim + 2):
        for sub in comb(range(X.m), r):
            direct = any(set(sub) <= set(f) for f in X.facets)
            assert X.has_face(sub) == direct


def test_isomorphism():
    a = Complex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]])
    b = Complex.from_facets([["w", "x"], ["x", "y"], ["y", "z"], ["z", "w"]])
    path = Complex.from_facets([[1, 2], [2, 3], [3, 4]])
    assert are_isomorphic(a, b)
    assert not are_isomorphic(a, path)
