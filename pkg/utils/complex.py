"""
抽象单纯复形

复形以极大面（facet）集合表示，面为严格递增的顶点标签元组，空面 () 显式表示。
所有操作返回新的复形，不修改输入。
"""
import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config import get_guard
from utils.errors import (AbsentFaceError, BadOrderError, MalformedFaceError, ParseError,
                          PreconditionError, RangeError, SizeGuardError)
from utils.vectors import CountVector, f_to_h

logger = logging.getLogger("calc")

Face = Tuple[int, ...]


def make_face(labels: Iterable[int]) -> Face:
    """规范化一个面：排序、检查重复与负标签"""
    labels = [int(v) for v in labels]
    face = tuple(sorted(labels))
    if len(set(face)) != len(face):
        raise MalformedFaceError(f"面 {labels} 含有重复顶点")
    if face and face[0] < 0:
        raise MalformedFaceError(f"面 {labels} 含有负标签")
    return face


@dataclass(frozen=True)
class SimplicialComplex:
    facets: Tuple[Face, ...]
    vertex_count: int

    @property
    def dim(self) -> int:
        """最大面的维数；空复形与 {∅} 均为 -1"""
        if not self.facets:
            return -1
        return max(len(f) for f in self.facets) - 1

    @property
    def d(self) -> int:
        return self.dim + 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def contains(self, face: Sequence[int]) -> bool:
        members = set(face)
        return any(members.issubset(f) for f in self.facets)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, facets={len(self.facets)})"


@dataclass(frozen=True)
class ContractionResult:
    complex: SimplicialComplex
    contracted_vertex: int
    removed_second_copies: int


@dataclass(frozen=True)
class LinkConditionReport:
    results: Tuple[Tuple[Face, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.results)

    @property
    def violating_edges(self) -> List[Face]:
        return [edge for edge, passed in self.results if not passed]


def from_facets(facet_lists: Iterable[Iterable[int]]) -> SimplicialComplex:
    """
    由面列表构造复形，去掉被其他面包含的面

    Args:
        facet_lists: 顶点标签序列的序列；[[]] 表示只含空面的复形 {∅}

    Returns:
        SimplicialComplex: 极大面按字典序排列
    """
    faces = {make_face(f) for f in facet_lists}
    kept: List[Face] = []
    for face in sorted(faces, key=len, reverse=True):
        members = set(face)
        if not any(members.issubset(other) for other in kept):
            kept.append(face)
    kept.sort()
    labels = [v for f in kept for v in f]
    return SimplicialComplex(facets=tuple(kept), vertex_count=max(labels) + 1 if labels else 0)


def face_table(K: SimplicialComplex, guard: Optional[int] = None) -> Dict[int, FrozenSet[Face]]:
    """
    按顶点数枚举全部面（含空面）

    Returns:
        Dict[int, FrozenSet[Face]]: 顶点数 -> 该大小的面集合
    """
    return _face_table(K, guard or get_guard('max_faces'))


@lru_cache(maxsize=32)
def _face_table(K: SimplicialComplex, guard: int) -> Dict[int, FrozenSet[Face]]:
    estimate = sum(2 ** len(f) for f in K.facets)
    if estimate > guard:
        raise SizeGuardError(f"面枚举规模约 {estimate} 超过上限 {guard}")
    table: Dict[int, set] = {}
    for facet in K.facets:
        for size in range(len(facet) + 1):
            table.setdefault(size, set()).update(combinations(facet, size))
    return {size: frozenset(faces) for size, faces in table.items()}


def faces(K: SimplicialComplex, dim: int, guard: Optional[int] = None) -> List[Face]:
    """给定维数的全部面，按字典序"""
    return sorted(face_table(K, guard).get(dim + 1, ()))


def all_faces(K: SimplicialComplex, guard: Optional[int] = None) -> FrozenSet[Face]:
    return frozenset().union(*face_table(K, guard).values()) if K.facets else frozenset()


def vertices(K: SimplicialComplex) -> List[int]:
    return sorted({v for f in K.facets for v in f})


def edges(K: SimplicialComplex, guard: Optional[int] = None) -> List[Face]:
    return faces(K, 1, guard)


def f_vector(K: SimplicialComplex, d: Optional[int] = None, guard: Optional[int] = None) -> CountVector:
    """
    f向量 (f_0, ..., f_{d-1})，f_{-1} = 1 不计入

    Args:
        K: 复形
        d: 目标长度，默认 dim + 1；较低维的复形（例如链接）按 0 补齐
    """
    d = K.d if d is None else d
    table = face_table(K, guard)
    return CountVector('f', d, tuple(len(table.get(i + 1, ())) for i in range(d)))


def h_vector(K: SimplicialComplex, d: Optional[int] = None, guard: Optional[int] = None) -> CountVector:
    """复形的 h 向量，f 向量按 d 补齐后变换"""
    return f_to_h(f_vector(K, d, guard))


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** i * f for i, f in enumerate(f_vector(K).entries))


def link(K: SimplicialComplex, F: Sequence[int]) -> SimplicialComplex:
    """lk(F) = {G ∈ K : G ∪ F ∈ K, G ∩ F = ∅}"""
    face = make_face(F)
    if not K.contains(face):
        raise AbsentFaceError(f"面 {list(face)} 不在复形中")
    members = set(face)
    return from_facets(tuple(v for v in facet if v not in members)
                       for facet in K.facets if members.issubset(facet))


def _require_edge(K: SimplicialComplex, e: Sequence[int]) -> Face:
    edge = make_face(e)
    if len(edge) != 2 or not K.contains(edge):
        raise AbsentFaceError(f"{list(edge)} 不是复形中的边")
    return edge


def link_condition_at(K: SimplicialComplex, e: Sequence[int]) -> bool:
    """lk(a) ∩ lk(b) = lk({a, b})，按面集合比较"""
    a, b = _require_edge(K, e)
    common = all_faces(link(K, (a,))) & all_faces(link(K, (b,)))
    return common == all_faces(link(K, (a, b)))


def check_link_condition(K: SimplicialComplex) -> LinkConditionReport:
    if not K.is_pure or K.dim < 1:
        raise PreconditionError("链接条件检查要求复形是纯的且维数至少为 1")
    report = LinkConditionReport(tuple((e, link_condition_at(K, e)) for e in edges(K)))
    if not report.ok:
        logger.info(json.dumps({"event": "link_condition_failed",
                                "edges": [list(e) for e in report.violating_edges]}, ensure_ascii=False))
    return report


def contract_edge(K: SimplicialComplex, e: Sequence[int]) -> ContractionResult:
    """
    收缩边 e = {a, b}：b 重命名为 a = min(e)，重复的像合并

    removed_second_copies 是收缩前后面总数之差（含空面）。
    """
    a, b = _require_edge(K, e)
    images = [tuple(a if v == b else v for v in facet) if b in facet else facet for facet in K.facets]
    contracted = from_facets(set(f) for f in images)
    removed = len(all_faces(K)) - len(all_faces(contracted))
    return ContractionResult(complex=contracted, contracted_vertex=a, removed_second_copies=removed)


def stellar_subdivide_edge(K: SimplicialComplex, e: Sequence[int]) -> SimplicialComplex:
    """在边 e 上插入新顶点 w = vertex_count"""
    a, b = _require_edge(K, e)
    w = K.vertex_count
    new_facets: List[Tuple[int, ...]] = []
    for facet in K.facets:
        if a in facet and b in facet:
            new_facets.append(tuple(v for v in facet if v != a) + (w,))
            new_facets.append(tuple(v for v in facet if v != b) + (w,))
        else:
            new_facets.append(facet)
    return from_facets(new_facets)


def tchebyshev_subdivision(K: SimplicialComplex, edge_order: Optional[Sequence[Sequence[int]]] = None) -> SimplicialComplex:
    """
    依次细分每条原始边（细分过程中新产生的边不再细分）

    Args:
        K: 至少含一条边的复形
        edge_order: 原始边的一个排列，默认字典序
    """
    original = edges(K)
    if not original:
        raise PreconditionError("复形没有边")
    if edge_order is None:
        order = original
    else:
        order = [make_face(e) for e in edge_order]
        if sorted(order) != original:
            raise BadOrderError("edge_order 不是原始边集的排列")
    result = K
    for edge in order:
        result = stellar_subdivide_edge(result, edge)
    return result


# 生成器
def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """d 维交叉多胞形的边界，对径点对为 (2i, 2i+1)"""
    if d < 1:
        raise RangeError("cross_polytope_boundary 要求 d >= 1")
    return from_facets(product(*[(2 * i, 2 * i + 1) for i in range(d)]))


def simplex_boundary(d: int) -> SimplicialComplex:
    if d < 1:
        raise RangeError("simplex_boundary 要求 d >= 1")
    return from_facets(combinations(range(d + 1), d))


def cycle(n: int) -> SimplicialComplex:
    if n < 3:
        raise RangeError("cycle 要求 n >= 3")
    return from_facets((i, (i + 1) % n) for i in range(n))


GENERATORS = {
    "cross": cross_polytope_boundary,
    "simplexboundary": simplex_boundary,
    "cycle": cycle,
}

GENERATOR_LABELS = {
    "cross": "交叉多胞形边界",
    "simplexboundary": "单纯形边界",
    "cycle": "圈",
}


def generate(text: str) -> SimplicialComplex:
    """
    按 "family:parameter" 生成复形，例如 "cross:4"、"cycle:6"
    """
    family, sep, param = text.partition(':')
    family = family.strip().lower()
    if not sep or family not in GENERATORS:
        raise ParseError(f"无法识别的生成器 '{text}'，可用: {', '.join(GENERATORS)}", position=0)
    try:
        value = int(param)
    except ValueError:
        raise ParseError(f"生成器参数 '{param}' 不是整数", position=len(family) + 1)
    return GENERATORS[family](value)


# 面列表文件
def parse_facets(text: str) -> SimplicialComplex:
    """解析面列表：每行一个面、空白分隔、# 注释；或 JSON {"facets": [...]}"""
    stripped = text.strip()
    if stripped.startswith('{'):
        try:
            data = json.loads(stripped)
            return from_facets(data["facets"])
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError(f"JSON 面列表无效: {e}")
    facet_lists = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            facet_lists.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"第 {lineno} 行含有非整数标签", position=lineno)
    return from_facets(facet_lists)


def load_facets(path: str) -> SimplicialComplex:
    with open(path, 'r', encoding='utf-8') as f:
        return parse_facets(f.read())


def dump_facets(K: SimplicialComplex, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"facets": [list(f) for f in K.facets]})
    return "\n".join(" ".join(str(v) for v in f) for f in K.facets) + "\n"
