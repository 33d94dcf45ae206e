"""异常类型定义"""


class CatoError(ValueError):
    """所有输入/前置条件错误的基类"""


class UnsupportedTypeError(CatoError):
    """未知或超出秩上限的根系类型"""


class DepthError(CatoError):
    """所需的权空间超出截断深度"""


class HypothesisError(CatoError):
    """违反 p 的假设条件 (B/C/F4 需 p > 2, G2 需 p > 3)"""


class IntegralityError(CatoError):
    """断言的整性性质不成立"""


class TableMismatchError(CatoError):
    """两个元素来自不同的 Chevalley 表"""
