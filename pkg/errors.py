# coding = utf-8
"""
异常类型
所有计算模块抛出的错误都继承自 EllipticGenusError，CLI 据此映射退出码
"""


class EllipticGenusError(Exception):
    """椭圆亏格计算的基础异常"""

    def __init__(self, message, operation=None):
        self.operation = operation
        if operation:
            message = f"[{operation}] {message}"
        super().__init__(message)


class RingMismatchError(EllipticGenusError):
    """两个级数的系数环不一致"""


class NotInvertibleError(EllipticGenusError):
    """零级数或首项系数不是单位"""


class PrecisionError(EllipticGenusError):
    """请求的系数超出了已知截断"""


class PoleAtTorsionPointError(EllipticGenusError):
    """有理函数在挠点处分母为零"""


class MissingCharacteristicNumberError(EllipticGenusError):
    """配对时缺少某个混合示性数"""

    def __init__(self, monomial_key, component=None, operation=None):
        self.monomial_key = monomial_key
        self.component = component
        where = f"（分支 {component}）" if component else ""
        super().__init__(f"缺少示性数 {monomial_key}{where}", operation)


class DescriptorError(EllipticGenusError):
    """描述文件不符合格式，path 指向出错的 JSON 位置"""

    def __init__(self, message, path="$", operation="parse_descriptor"):
        self.path = path
        super().__init__(f"{path}: {message}", operation)


class BookkeepingError(EllipticGenusError):
    """维数记账 Σ 2·d_k + dim Y = dim M 不成立"""

    def __init__(self, component, message, operation="parse_descriptor"):
        self.component = component
        super().__init__(f"分支 {component}: {message}", operation)


class NonTruncatingBundleError(EllipticGenusError):
    """形式变量 t 没有携带正的 q 权重，展开不会截断"""


class RotationDatumError(EllipticGenusError):
    """旋转数为 0 或重数非正"""


class EmptyFixedSetError(EllipticGenusError):
    """需要不动点分支的运算收到了空的分支列表"""
