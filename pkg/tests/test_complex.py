"""
单纯复形：构造、计数、链接、链接条件、收缩与细分

Run: python -m pytest tests/test_complex.py -v
"""
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.complex import (_face_table, all_faces, check_link_condition, contract_edge, cross_polytope_boundary,
                           cycle, dump_facets, edges, euler_characteristic, f_vector, faces, from_facets, generate,
                           h_vector, link, link_condition_at, make_face, parse_facets, simplex_boundary,
                           stellar_subdivide_edge, tchebyshev_subdivision)
from utils.errors import (AbsentFaceError, BadOrderError, MalformedFaceError, ParseError, PreconditionError,
                          RangeError, SizeGuardError)


# =============================================================================
# 构造
# =============================================================================

def test_make_face_sorts_and_rejects_bad_labels():
    assert make_face([3, 1, 2]) == (1, 2, 3)
    with pytest.raises(MalformedFaceError):
        make_face([1, 1])
    with pytest.raises(MalformedFaceError):
        make_face([-1, 2])


def test_from_facets_keeps_maximal_faces_only():
    K = from_facets([[0, 1, 2], [0, 1], [3, 2]])
    assert K.facets == ((0, 1, 2), (2, 3))
    assert K.vertex_count == 4
    assert not K.is_pure


def test_empty_face_complex():
    """[[]] 是只含空面的复形，与空复形不同"""
    K = from_facets([[]])
    assert K.facets == ((),)
    assert K.dim == -1
    assert not K.is_void
    assert from_facets([]).is_void


def test_vertex_count_uses_max_label():
    assert from_facets([[0, 5]]).vertex_count == 6


# =============================================================================
# 计数
# =============================================================================

def test_octahedron_counts():
    K = cross_polytope_boundary(3)
    assert f_vector(K).entries == (6, 12, 8)
    assert h_vector(K).entries == (1, 3, 3, 1)
    assert euler_characteristic(K) == 2


def test_cross_4_and_simplex_boundary_counts():
    assert f_vector(cross_polytope_boundary(4)).entries == (8, 24, 32, 16)
    assert h_vector(cross_polytope_boundary(4)).entries == (1, 4, 6, 4, 1)
    assert f_vector(simplex_boundary(3)).entries == (4, 6, 4)
    assert h_vector(simplex_boundary(3)).entries == (1, 1, 1, 1)
    assert h_vector(cycle(5)).entries == (1, 3, 1)


def test_f_vector_pads_lower_dimensional_complex():
    assert f_vector(cycle(4), 3).entries == (4, 4, 0)


def test_face_enumeration_respects_guard():
    with pytest.raises(SizeGuardError):
        faces(cross_polytope_boundary(4), 1, guard=10)


def test_face_table_cache_is_bounded():
    assert _face_table.cache_info().maxsize <= 64


def test_all_faces_includes_empty_face():
    assert () in all_faces(cycle(3))
    assert len(all_faces(cycle(3))) == 7


# =============================================================================
# 链接与链接条件
# =============================================================================

def test_vertex_link_of_octahedron_is_four_cycle():
    lk = link(cross_polytope_boundary(3), (0,))
    assert f_vector(lk).entries == (4, 4)
    assert sorted(lk.facets) == [(2, 4), (2, 5), (3, 4), (3, 5)]


def test_link_of_absent_face():
    with pytest.raises(AbsentFaceError):
        link(cross_polytope_boundary(3), (0, 1))


def test_link_condition_holds_on_cross_polytope():
    report = check_link_condition(cross_polytope_boundary(3))
    assert report.ok
    assert report.violating_edges == []


def test_link_condition_fails_on_simplex_boundary():
    K = simplex_boundary(3)
    assert not link_condition_at(K, (0, 1))
    report = check_link_condition(K)
    assert not report.ok
    assert report.violating_edges[0] == (0, 1)
    assert len(report.violating_edges) == 6


def test_link_condition_requires_pure_complex():
    with pytest.raises(PreconditionError):
        check_link_condition(from_facets([[0, 1, 2], [2, 3]]))


# =============================================================================
# 收缩与细分
# =============================================================================

def test_contract_edge_of_four_cycle():
    result = contract_edge(cycle(4), (1, 0))
    assert result.contracted_vertex == 0
    assert result.complex.facets == ((0, 2), (0, 3), (2, 3))
    assert h_vector(result.complex).entries == (1, 1, 1)
    assert result.removed_second_copies == 2


def test_contract_missing_edge():
    with pytest.raises(AbsentFaceError):
        contract_edge(cross_polytope_boundary(3), (0, 1))


def test_stellar_subdivision_of_octahedron_edge():
    K = stellar_subdivide_edge(cross_polytope_boundary(3), (0, 2))
    assert f_vector(K).entries == (7, 15, 10)
    assert K.vertex_count == 7


def test_tchebyshev_subdivision_of_triangle():
    T = tchebyshev_subdivision(cycle(3))
    assert f_vector(T).entries == (6, 6)
    reordered = tchebyshev_subdivision(cycle(3), edge_order=[(1, 2), (0, 2), (0, 1)])
    assert f_vector(reordered).entries == (6, 6)


def test_tchebyshev_f_vector_ignores_edge_order():
    K = cross_polytope_boundary(3)
    rng = random.Random(13)
    for _ in range(10):
        order = list(edges(K))
        rng.shuffle(order)
        assert f_vector(tchebyshev_subdivision(K, edge_order=order)).entries == (18, 48, 32)


def test_tchebyshev_subdivision_rejects_bad_order_and_no_edges():
    with pytest.raises(BadOrderError):
        tchebyshev_subdivision(cycle(3), edge_order=[(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        tchebyshev_subdivision(from_facets([[0], [1]]))


# =============================================================================
# 生成器与面列表
# =============================================================================

def test_generate():
    assert f_vector(generate("cross:3")).entries == (6, 12, 8)
    assert len(edges(generate("cycle:6"))) == 6
    with pytest.raises(ParseError):
        generate("torus:3")
    with pytest.raises(ParseError):
        generate("cross:x")
    with pytest.raises(RangeError):
        generate("cycle:2")


def test_parse_facets_text_and_json():
    text = "# 三角形边界\n0 1\n1 2  # 注释\n\n0 2\n"
    K = parse_facets(text)
    assert K.facets == ((0, 1), (0, 2), (1, 2))
    assert parse_facets('{"facets": [[0, 1], [1, 2], [0, 2]]}') == K
    assert parse_facets(dump_facets(K)) == K
    assert parse_facets(dump_facets(K, "json")) == K


def test_parse_facets_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_facets("0 1\n1 x\n")
    assert exc.value.position == 2
