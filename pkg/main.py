#!/usr/bin/env python3
"""
置換抽樣與量子電路合成工具 - 命令列入口

所有結果輸出到 stdout (JSON / JSON lines / QASM / DOT)，日誌輸出到 stderr
"""

import argparse
import itertools
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

# 將專案根目錄加入 Python path
sys.path.insert(0, str(Path(__file__).parent))

from config.settings import DEFAULT_SEED, DEFAULT_TAIL, LOG_DATEFMT, LOG_FORMAT, LOG_LEVEL
from src.circuits import emit_qasm, gate_count_report, lower_circuit, synth_word
from src.graphs import build_sym_group_graph, degree_check, to_dot, to_json
from src.permutations import (
    PermutationArray,
    TranspositionWord,
    decompose,
    enumerate_sn,
    inversion_count,
    parse_cycles,
)
from src.randtest import TAILS, Dataset, TestConfig, run_quantum_sim
from src.sampling import RestrictionSpec, measure_register, prepare_register
from src.utils import (
    PermqError,
    ValidationError,
    derive_seed,
    ensure_int_sequence,
    parse_json_arg,
    text_to_word,
)

# 設定日誌 (輸出到 stderr)
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format=LOG_FORMAT,
    datefmt=LOG_DATEFMT,
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")


def _emit_error(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload, ensure_ascii=False) + "\n")


class JsonErrorParser(argparse.ArgumentParser):
    """參數錯誤時在 stderr 輸出 usage_error JSON 後以 exit code 2 結束"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        _emit_error({"error": "usage_error", "message": message})
        self.exit(2)


def cmd_enumerate(args) -> None:
    """依列舉順序輸出 (perm, word) JSON lines"""
    if args.limit is not None and args.limit < 0:
        raise ValidationError(f"--limit 不可為負: {args.limit}")

    stream = enumerate_sn(args.n)
    if args.limit is not None:
        stream = itertools.islice(stream, args.limit)

    count = 0
    for perm, word in stream:
        _emit({"perm": list(perm.entries), "word": list(word.letters)})
        count += 1
    logger.info(f"[enumerate] 輸出 {count} 個置換")


def cmd_decompose(args) -> None:
    """將置換分解為規範轉置字"""
    if args.cycles is not None:
        if args.n is None:
            raise ValidationError("使用 --cycles 時必須提供 --n")
        perm = parse_cycles(args.cycles, args.n)
    else:
        raw = parse_json_arg(args.perm, "--perm")
        if not isinstance(raw, list):
            raise ValidationError("--perm 必須是 JSON 陣列")
        perm = PermutationArray.of(ensure_int_sequence(raw, "--perm"))

    word = decompose(perm)
    _emit(
        {
            "perm": list(perm.entries),
            "word": list(word.letters),
            "text": word.text(),
            "length": len(word),
            "inversions": inversion_count(perm),
        }
    )


def cmd_sample(args) -> None:
    """以暫存器測量抽樣，輸出 JSON lines"""
    restriction = None
    if args.restrict:
        path = Path(args.restrict)
        if not path.exists():
            raise ValidationError(f"找不到限制設定檔: {path}")
        with open(path, "r", encoding="utf-8") as f:
            restriction = RestrictionSpec.from_dict(parse_json_arg(f.read(), "--restrict"))

    if args.count < 0:
        raise ValidationError(f"--count 不可為負: {args.count}")

    register = prepare_register(args.n, restriction)
    rng = np.random.default_rng(derive_seed(args.seed, "sample"))
    for _ in range(args.count):
        _emit(measure_register(register, rng).to_dict())
    logger.info(f"[sample] N={args.n}, 輸出 {args.count} 個樣本 (seed={args.seed})")


def cmd_synth(args) -> None:
    """合成轉置字的電路"""
    if args.word.lstrip().startswith("["):
        raw = parse_json_arg(args.word, "--word")
        letters = ensure_int_sequence(raw, "--word")
    else:
        letters = text_to_word(args.word)
    word = TranspositionWord(2 ** args.qubits, letters)

    circuit = synth_word(word, args.qubits)
    if args.lower:
        circuit = lower_circuit(circuit)

    if args.qasm:
        sys.stdout.write(emit_qasm(circuit))
        return

    payload = circuit.to_dict()
    payload["counts"] = circuit.counts()
    payload["lowered_counts"] = gate_count_report(circuit).to_dict()
    _emit(payload)


def cmd_randtest(args) -> None:
    """執行量子模擬隨機化檢定"""
    dataset = Dataset.from_file(args.data)
    if args.n is not None and args.n != dataset.n_qubits:
        raise ValidationError(f"--n={args.n} 與資料筆數 {dataset.size} 不符")

    config = TestConfig(
        n=dataset.n_qubits,
        m=args.m,
        shots=args.shots,
        seed=args.seed,
        exact=args.exact,
        tail=args.tail,
        workers=args.workers,
        t_star=args.t_star,
    )
    report = run_quantum_sim(dataset, config)
    _emit(report.to_dict())


def cmd_corona(args) -> None:
    """建立 S_N^G 並輸出 JSON 或 DOT"""
    graph = build_sym_group_graph(args.n)
    report = degree_check(graph)
    if not report.passed:
        logger.warning(f"[corona] 度數公式不符: {report.counterexamples[:3]}")

    if args.dot:
        sys.stdout.write(to_dot(graph))
        return
    _emit(to_json(graph))


def build_parser() -> argparse.ArgumentParser:
    parser = JsonErrorParser(
        description="置換抽樣與量子電路合成工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
範例:
  python main.py enumerate --n 4                       列舉 S_4
  python main.py decompose --perm "[3,2,0,1]"          分解置換
  python main.py sample --n 5 --count 10 --seed 7      均勻抽樣
  python main.py synth --word "[5]" --qubits 3 --lower 合成 s_5 電路
  python main.py randtest --data data.csv --m 2 --shots 10000 --seed 1
  python main.py corona --n 4 --dot                    輸出 S_4^G 的 DOT
        """,
    )
    parser.add_argument("--verbose", action="store_true", help="顯示 DEBUG 日誌")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="列舉 S_N")
    p.add_argument("--n", type=int, required=True, help="符號數 N")
    p.add_argument("--limit", type=int, default=None, help="最多輸出筆數")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("decompose", help="將置換分解為相鄰轉置")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", type=str, help='置換陣列 JSON，例如 "[3,2,0,1]"')
    group.add_argument("--cycles", type=str, help='輪換表示，例如 "(0 3 1)"')
    p.add_argument("--n", type=int, default=None, help="使用 --cycles 時的符號數")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("sample", help="以輔助 qudit 暫存器抽樣")
    p.add_argument("--n", type=int, required=True, help="符號數 N")
    p.add_argument("--count", type=int, required=True, help="樣本數")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"亂數種子 (預設: {DEFAULT_SEED})")
    p.add_argument("--restrict", type=str, default=None, help="限制設定 JSON 檔")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("synth", help="合成轉置字的電路")
    p.add_argument("--word", type=str, required=True, help='轉置字 JSON 或文字，例如 "[5]" 或 "s5 s4"')
    p.add_argument("--qubits", type=int, required=True, help="量子位元數 n")
    p.add_argument("--lower", action="store_true", help="將控制樣式降階為 X + Toffoli")
    p.add_argument("--qasm", action="store_true", help="輸出 OpenQASM 3")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("randtest", help="量子模擬雙樣本隨機化檢定")
    p.add_argument("--data", type=str, required=True, help="資料檔 (CSV 每行一值或 JSON 陣列)")
    p.add_argument("--n", type=int, default=None, help="量子位元數 (預設由資料推得)")
    p.add_argument("--m", type=int, required=True, help="控制位元數 m")
    p.add_argument("--shots", type=int, required=True, help="抽樣次數")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"亂數種子 (預設: {DEFAULT_SEED})")
    p.add_argument("--exact", action="store_true", help="以精確機率取代測量統計")
    p.add_argument("--tail", choices=TAILS, default=DEFAULT_TAIL, help=f"p 值尾端 (預設: {DEFAULT_TAIL})")
    p.add_argument("--workers", type=int, default=1, help="平行執行緒數")
    p.add_argument("--t-star", dest="t_star", type=float, default=None, help="觀察統計量 (預設由資料原始分組計算)")
    p.set_defaults(handler=cmd_randtest)

    p = sub.add_parser("corona", help="建立巢狀 corona 圖 S_N^G")
    p.add_argument("--n", type=int, required=True, help="符號數 N")
    p.add_argument("--dot", action="store_true", help="輸出 DOT 而非 JSON")
    p.set_defaults(handler=cmd_corona)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主程式入口"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        args.handler(args)
    except PermqError as e:
        logger.error(f"[{args.command}] {e}")
        _emit_error(e.to_dict())
        return 2
    except Exception as e:
        logger.exception(f"[{args.command}] 未預期的錯誤: {e}")
        _emit_error({"error": "internal_error", "message": f"{type(e).__name__}: {e}"})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
