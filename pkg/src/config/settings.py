"""
실행 설정

우선순위: 기본값 < 명령줄 옵션 < TOML 설정 파일
환경 변수 (.env 지원):
    SEMIWAVE_OUTPUT_DIR  기본 출력 디렉토리 (없으면 ./output)
    SEMIWAVE_DB_URL      실행 기록 DB URL (없으면 data/runs.db)
    SEMIWAVE_LOG_LEVEL   로그 레벨 (없으면 INFO)
"""

from dataclasses import asdict, dataclass, field, fields, replace
from typing import Any, Dict, List, Optional
import hashlib
import json
import logging
import os
import sys
import tomllib

from dotenv import load_dotenv

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from reaction import Model, Smoothness, make_custom_model, make_model
from wavefront import SolverOptions
from .presets import preset_params

logger = logging.getLogger(__name__)

ENV_OUTPUT_DIR = 'SEMIWAVE_OUTPUT_DIR'
ENV_DB_URL = 'SEMIWAVE_DB_URL'
ENV_LOG_LEVEL = 'SEMIWAVE_LOG_LEVEL'

MODEL_KEYS = ('name', 'h', 'p', 'z', 'k', 'kappa', 'expression', 'taps', 'smoothness')


@dataclass
class RunConfig:
    """
    한 번의 실행을 재현하는 데 필요한 모든 설정

    c 가 None이고 critical 이면 c* + c_offset 을 씁니다.
    """

    command: str = 'speed'
    model: Dict[str, Any] = field(default_factory=dict)

    # 속도
    c: Optional[float] = None
    critical: bool = False
    c_offset: float = 0.0

    # 격자와 솔버
    t_min: Optional[float] = None
    t_max: float = 40.0
    step: float = 0.02
    damping: float = 0.5
    tol: float = 1e-8
    max_iter: int = 20000
    acceleration: str = 'none'

    # 표본과 씨앗
    samples: int = 10000
    seed: int = 0
    epsilon: float = 0.1
    n_seeds: int = 0
    workers: int = 1
    diagnostics: bool = False

    # 영점 세기
    re_min: Optional[float] = None
    re_max: Optional[float] = None
    im_max: Optional[float] = None

    # 시간 발전
    dx: float = 0.1
    t_run: float = 40.0
    domain: Optional[List[float]] = None
    tail_rate: Optional[float] = None
    implicit: bool = False
    compact: bool = False
    compare: bool = False

    # 출력
    out_dir: Optional[str] = None
    svg: bool = False
    oracle: bool = False
    record: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    def config_hash(self) -> str:
        """출력 디렉토리와 기록 여부를 뺀 설정의 SHA-256"""
        payload = self.to_dict()
        payload.pop('out_dir', None)
        payload.pop('record', None)
        text = json.dumps(payload, sort_keys=True, default=str)
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def solver_options(self) -> SolverOptions:
        return SolverOptions(
            t_min=self.t_min,
            t_max=self.t_max,
            step=self.step,
            damping=self.damping,
            tol=self.tol,
            max_iter=self.max_iter,
            acceleration=self.acceleration,
        )

    @property
    def model_name(self) -> str:
        return str(self.model.get('name', ''))


def load_env():
    """.env 파일이 있으면 환경 변수로 읽기 (이미 있는 값은 유지)"""
    load_dotenv(override=False)


def default_output_dir() -> str:
    return os.getenv(ENV_OUTPUT_DIR) or os.path.join(os.getcwd(), 'output')


def default_db_url() -> Optional[str]:
    return os.getenv(ENV_DB_URL) or None


def default_log_level() -> str:
    return (os.getenv(ENV_LOG_LEVEL) or 'INFO').upper()


def load_toml(path: str) -> dict:
    """TOML 설정 파일 읽기"""
    try:
        with open(path, 'rb') as f:
            return tomllib.load(f)
    except FileNotFoundError as e:
        raise ValueError(f"설정 파일이 없습니다: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise ValueError(f"설정 파일을 해석할 수 없습니다: {path}: {e}") from e


def _flatten(data: dict) -> Dict[str, Any]:
    """[model] 은 그대로, 그 밖의 표는 한 단계 펼침"""
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        if key == 'model':
            if not isinstance(value, dict):
                raise ValueError("[model] 은 표여야 합니다")
            flat['model'] = value
        elif isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return flat


def merge_config(base: RunConfig, overrides: Dict[str, Any]) -> RunConfig:
    """
    base 위에 overrides 덮어쓰기 (model 은 키 단위로 합침)

    Raises:
        ValueError: 알 수 없는 설정 키
    """
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ValueError(f"알 수 없는 설정 키: {', '.join(unknown)}")

    updates = dict(overrides)
    if 'model' in updates:
        model = dict(base.model)
        model.update(updates['model'])
        bad = sorted(set(model) - set(MODEL_KEYS))
        if bad:
            raise ValueError(f"알 수 없는 모델 키: {', '.join(bad)}")
        updates['model'] = model
    if updates.get('domain') is not None:
        updates['domain'] = [float(v) for v in updates['domain']]
    return replace(base, **updates)


def build_config(flags: Dict[str, Any], config_path: Optional[str] = None) -> RunConfig:
    """
    기본값 < 명령줄 옵션 < 설정 파일 순으로 RunConfig 생성

    Args:
        flags: 명령줄에서 실제로 지정된 값 (None 은 미지정으로 보고 무시)
        config_path: TOML 파일 경로
    """
    given = {k: v for k, v in flags.items() if v is not None}
    model = {k: given.pop(k) for k in list(given) if k in MODEL_KEYS}
    if model:
        given['model'] = model

    config = merge_config(RunConfig(), given)
    if config_path:
        config = merge_config(config, _flatten(load_toml(config_path)))
        logger.info(f"설정 파일 적용: {config_path}")

    if not config.model_name:
        raise ValueError("모델 이름이 필요합니다 (--model 또는 [model] name)")
    if config.out_dir is None:
        config = replace(config, out_dir=default_output_dir())
    return config


def resolve_model(model_conf: Dict[str, Any]) -> Model:
    """
    모델 설정 → Model

    Raises:
        ValueError: 알 수 없는 이름, 파라미터 오류
    """
    name = model_conf.get('name')
    smoothness = None
    if model_conf.get('smoothness'):
        s = model_conf['smoothness']
        smoothness = Smoothness(K=float(s['K']), alpha=float(s['alpha']), delta=float(s['delta']))

    if name == 'custom':
        if 'expression' not in model_conf or 'taps' not in model_conf:
            raise ValueError("custom 모델에는 expression 과 [model.taps] 가 필요합니다")
        taps = {str(k): float(v) for k, v in model_conf['taps'].items()}
        h = float(model_conf.get('h', max(-min(taps.values()), 0.0)))
        kappa = model_conf.get('kappa')
        model = make_custom_model(
            model_conf['expression'], taps, h,
            kappa=float(kappa) if kappa is not None else None,
            smoothness=smoothness,
        )
        model.measure.require_nondegenerate()
        return model

    params = preset_params(name)
    for key in ('h', 'p', 'z', 'k'):
        if key in model_conf and model_conf[key] is not None:
            if key not in params:
                raise ValueError(f"모델 {name}에는 파라미터 {key}가 없습니다")
            params[key] = float(model_conf[key])
    h = params.pop('h')
    model = make_model(name, h, **params)
    if smoothness is not None:
        model = replace(model, smoothness=smoothness)
    return model
