"""
例外類別定義
"""


class PermqError(ValueError):
    """所有領域錯誤的基礎類別"""

    code = "permq_error"

    def to_dict(self) -> dict:
        """轉換為 CLI 輸出用的字典"""
        return {"error": self.code, "message": str(self)}


class ValidationError(PermqError):
    """輸入資料格式錯誤 (重複值、超出範圍、負值等)"""

    code = "validation_error"


class DomainError(PermqError):
    """參數超出數學定義域"""

    code = "domain_error"


class ResourceLimitError(PermqError):
    """超過設定的計算上限"""

    code = "resource_limit"


class MustLowerError(PermqError):
    """含控制樣式的多控制 X 閘必須先降階"""

    code = "must_lower"


class ImpossibleBranchError(PermqError):
    """測量坍縮到機率為零的分支"""

    code = "impossible_branch"
