"""
設定檔 - 計算上限、數值容差、預設參數等配置

所有數值皆可透過環境變數 (或 .env) 覆寫
"""

import os

# 嘗試載入 .env
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    return int(value) if value else default


# 窮舉上限
ENUMERATION_MAX_N = _env_int("PERMQ_ENUMERATION_MAX_N", 10)  # N! 成長極快
EXHAUSTIVE_SPLIT_CAP = _env_int("PERMQ_EXHAUSTIVE_SPLIT_CAP", 1_000_000)  # C(N,K)
GRAPH_MAX_N = _env_int("PERMQ_GRAPH_MAX_N", 8)  # S_N^G 有 N! 個頂點

# 模擬器上限
STATE_MAX_QUBITS = _env_int("PERMQ_STATE_MAX_QUBITS", 20)
UNITARY_MAX_QUBITS = _env_int("PERMQ_UNITARY_MAX_QUBITS", 6)

# 數值容差
NORM_TOLERANCE = 1e-9
IMPOSSIBLE_BRANCH_PROB = 1e-15
PVALUE_TIE_TOLERANCE = 1e-9

# 隨機檢定設定
DEFAULT_SEED = _env_int("PERMQ_SEED", 2024)
DEFAULT_TAIL = "LE"
SHOT_CHUNK_SIZE = _env_int("PERMQ_SHOT_CHUNK_SIZE", 4096)
MIN_CLASS_SHOTS = _env_int("PERMQ_MIN_CLASS_SHOTS", 100)  # 低於此數的類別會發出警告
SHOT_TIE_SIGMAS = 3.0  # shot 模式下 T 與 t* 差距在此倍數標準誤內視為平手

# 日誌設定
LOG_LEVEL = os.getenv("PERMQ_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"
