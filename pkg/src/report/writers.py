"""
결과 파일 쓰기 (JSON, CSV, SVG)

같은 설정과 씨앗이면 바이트 단위로 같은 파일이 나오도록 시각 정보는 넣지 않습니다.
"""

from typing import Any, Optional
import json
import logging
import math
import os
import sys

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from wavefront import ProfileSolution

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = '%.17g'
SVG_HASH_SALT = 'semiwave'


def to_jsonable(value: Any) -> Any:
    """numpy 값과 NaN/inf 를 JSON 으로 옮길 수 있는 꼴로 변환"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps(payload: dict) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, payload: dict, config: Optional[dict] = None) -> str:
    """payload (와 config) 를 정렬된 키로 저장"""
    body = dict(payload)
    if config is not None:
        body['config'] = config
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps(body))
    logger.info(f"JSON 저장: {path}")
    return path


def write_csv(path: str, frame: pd.DataFrame) -> str:
    """유효숫자 17자리 고정 형식 CSV"""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')
    logger.info(f"CSV 저장: {path} ({len(frame)}행)")
    return path


def write_profile_svg(path: str, sol: ProfileSolution, window: float = 30.0) -> str:
    """프로파일, κ 기준선, 맞춘 왼쪽 꼬리를 그린 SVG"""
    plt.rcParams['svg.hashsalt'] = SVG_HASH_SALT
    fig, ax = plt.subplots(figsize=(8, 4.5))
    try:
        mask = (sol.t >= -window) & (sol.t <= window)
        ax.plot(sol.t[mask], sol.phi[mask], color='tab:blue', linewidth=1.5, label='φ(t)')
        ax.axhline(sol.kappa, color='gray', linestyle='--', linewidth=1.0, label='κ')

        left = sol.t[mask & (sol.t <= 0)]
        if left.size:
            ax.plot(left, sol.tail(left), color='tab:red', linestyle=':', linewidth=1.2, label='tail fit')

        ax.set_ylim(0.0, 1.2 * max(float(np.max(sol.phi)), sol.kappa))
        ax.set_xlabel('t')
        ax.set_ylabel('φ')
        ax.set_title(f"{sol.model.name}, c = {sol.c:.6g}")
        ax.legend(loc='lower right')
        ax.grid(True, alpha=0.3)

        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        fig.savefig(path, format='svg', metadata={'Date': None})
    finally:
        plt.close(fig)
    logger.info(f"SVG 저장: {path}")
    return path
