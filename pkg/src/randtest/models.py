"""
雙樣本隨機化檢定的資料模型
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from config.settings import DEFAULT_TAIL, SHOT_CHUNK_SIZE
from src.utils.exceptions import DomainError, ValidationError
from src.utils.helpers import is_power_of_two

TAILS = ("LE", "GE", "TWO_SIDED")

ClassKey = Tuple[int, ...]


@dataclass(frozen=True)
class Dataset:
    """N = 2^n 個非負資料點 a_j"""

    values: Tuple[float, ...]

    def __post_init__(self):
        try:
            values = tuple(float(v) for v in self.values)
        except (TypeError, ValueError) as e:
            raise ValidationError(f"資料必須是數值: {e}") from e
        object.__setattr__(self, "values", values)

        if not is_power_of_two(len(values)) or len(values) < 2:
            raise ValidationError(f"資料筆數必須是 2 的次方 (>= 2): {len(values)}")
        if any(not math.isfinite(v) for v in values):
            raise ValidationError("資料不可包含 NaN 或無限大")
        if any(v < 0 for v in values):
            raise ValidationError("資料不可包含負值")
        if sum(values) <= 0:
            raise ValidationError("資料總和必須為正")

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def n_qubits(self) -> int:
        return self.size.bit_length() - 1

    @property
    def total(self) -> float:
        return float(sum(self.values))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def probabilities(self) -> np.ndarray:
        """p_j = a_j / Σa"""
        arr = self.as_array()
        return arr / arr.sum()

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Dataset":
        """
        讀取資料檔

        .json 為 JSON 陣列，其餘視為每行一個數值的 CSV

        Args:
            path: 檔案路徑

        Returns:
            Dataset
        """
        path = Path(path)
        if not path.exists():
            raise ValidationError(f"找不到資料檔: {path}")

        if path.suffix.lower() == ".json":
            with open(path, "r", encoding="utf-8") as f:
                try:
                    raw = json.load(f)
                except json.JSONDecodeError as e:
                    raise ValidationError(f"資料檔不是合法的 JSON: {e}") from e
            if not isinstance(raw, list):
                raise ValidationError("JSON 資料檔必須是陣列")
            try:
                series = pd.Series(raw, dtype=float)
            except (TypeError, ValueError) as e:
                raise ValidationError(f"JSON 陣列含有非數值元素: {e}") from e
        else:
            try:
                frame = pd.read_csv(path, header=None, comment="#", skip_blank_lines=True)
            except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
                raise ValidationError(f"無法解析 CSV 資料檔: {e}") from e
            if frame.shape[1] != 1:
                raise ValidationError(f"CSV 每行只能有一個數值，實際 {frame.shape[1]} 欄")
            series = pd.to_numeric(frame.iloc[:, 0], errors="coerce")
            if series.isna().any():
                raise ValidationError("CSV 含有無法解析的數值")

        return cls(tuple(series.tolist()))


@dataclass(frozen=True)
class TestConfig:
    """
    檢定設定

    shots 為抽樣置換次數；exact 模式以模擬器的精確機率取代每個類別的測量統計
    """

    __test__ = False

    n: int
    m: int
    shots: int
    seed: int
    exact: bool = False
    tail: str = DEFAULT_TAIL
    workers: int = 1
    t_star: Optional[float] = None
    chunk_size: int = SHOT_CHUNK_SIZE

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n 必須 >= 2: {self.n}")
        if not 1 <= self.m < self.n:
            raise DomainError(f"m 必須介於 [1, {self.n - 1}]: {self.m}")
        if self.shots <= 0:
            raise DomainError(f"shots 必須為正整數: {self.shots}")
        if self.tail not in TAILS:
            raise DomainError(f"未知的尾端: {self.tail} (可用: {', '.join(TAILS)})")
        if self.workers < 1:
            raise DomainError(f"workers 必須 >= 1: {self.workers}")
        if self.chunk_size < 1:
            raise DomainError(f"chunk_size 必須 >= 1: {self.chunk_size}")

    @property
    def size(self) -> int:
        return 2 ** self.n

    @property
    def K(self) -> int:
        """每個樣本的大小 2^{n-m}"""
        return 2 ** (self.n - self.m)


@dataclass
class ClassStats:
    """單一類別 (K 樣本) 的累計結果"""

    key: ClassKey
    scale: float  # Σa / K
    p_exact: float
    samples: int = 0
    ones: int = 0
    zeros: int = 0
    exact: bool = False

    @property
    def shots(self) -> int:
        return self.ones + self.zeros

    @property
    def p_hat(self) -> float:
        if self.exact:
            return self.p_exact
        if self.shots == 0:
            return 0.0
        return self.ones / self.shots

    @property
    def mean_hat(self) -> float:
        """樣本平均 = p_hat · Σa / K"""
        return self.p_hat * self.scale

    def merge(self, other: "ClassStats") -> None:
        self.samples += other.samples
        self.ones += other.ones
        self.zeros += other.zeros

    def to_dict(self) -> dict:
        return {
            "key": list(self.key),
            "samples": self.samples,
            "ones": self.ones,
            "zeros": self.zeros,
            "p_exact": self.p_exact,
            "p_hat": self.p_hat,
            "mean_hat": self.mean_hat,
        }


@dataclass
class TestReport:
    """檢定報告"""

    __test__ = False

    config: TestConfig
    total: float
    classes: Dict[ClassKey, ClassStats] = field(default_factory=dict)
    t_star: float = 0.0
    p_value: float = 1.0
    under_sampled: List[ClassKey] = field(default_factory=list)
    tie_tolerance: float = 0.0

    def class_statistic(self, stats: ClassStats) -> float:
        """T = 第一樣本平均 - 其餘資料平均"""
        K = self.config.K
        rest = self.config.size - K
        return stats.mean_hat - (self.total - K * stats.mean_hat) / rest

    def statistic_error(self, stats: ClassStats) -> float:
        """T 估計值的二項標準誤 (exact 模式為 0)"""
        if stats.exact or stats.shots == 0:
            return 0.0
        K = self.config.K
        slope = stats.scale * (1 + K / (self.config.size - K))
        p = stats.p_hat
        return slope * math.sqrt(p * (1 - p) / stats.shots)

    def sorted_classes(self) -> List[ClassStats]:
        return [self.classes[key] for key in sorted(self.classes)]

    def to_dict(self) -> dict:
        """JSON 輸出格式"""
        return {
            "n": self.config.n,
            "m": self.config.m,
            "K": self.config.K,
            "shots": self.config.shots,
            "seed": self.config.seed,
            "exact": self.config.exact,
            "tail": self.config.tail,
            "t_star": self.t_star,
            "p_value": self.p_value,
            "tie_tolerance": self.tie_tolerance,
            "class_count": len(self.classes),
            "classes": [
                {**stats.to_dict(), "statistic": self.class_statistic(stats)}
                for stats in self.sorted_classes()
            ],
            "under_sampled": [list(key) for key in self.under_sampled],
        }

    def to_frame(self) -> pd.DataFrame:
        """每個類別一列的 DataFrame"""
        rows = []
        for stats in self.sorted_classes():
            row = stats.to_dict()
            row["key"] = tuple(stats.key)
            row["statistic"] = self.class_statistic(stats)
            rows.append(row)
        columns = ["key", "samples", "ones", "zeros", "p_exact", "p_hat", "mean_hat", "statistic"]
        return pd.DataFrame(rows, columns=columns)
