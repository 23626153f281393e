"""计算过程中使用的异常类型"""


class CombError(Exception):
    """所有组合计算错误的基类"""


class MalformedFaceError(CombError):
    """面中含有重复顶点或负标签"""


class AbsentFaceError(CombError):
    """面不在单纯复形中"""


class RangeError(CombError):
    """参数超出允许范围"""


class ShapeError(CombError):
    """向量或权重序列长度不匹配"""


class NotReciprocalError(CombError):
    """h向量不是回文的"""


class DivisibilityError(CombError):
    """奇数维时 h(t) 不能被 (1+t) 整除"""


class NormalizationError(CombError):
    """首项不满足规范化条件（gamma_0 = 1 或 z_N = 2^N）"""


class SizeGuardError(CombError):
    """枚举规模超过配置的上限"""


class BadOrderError(CombError):
    """边的顺序不是原始边集的一个排列"""


class PreconditionError(CombError):
    """前置条件不满足，例如链接条件失败"""

    def __init__(self, message, edges=()):
        super().__init__(message)
        self.edges = tuple(edges)


class ParseError(CombError):
    """输入解析失败"""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (位置 {position})"
        super().__init__(message)
        self.position = position
