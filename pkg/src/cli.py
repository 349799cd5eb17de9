#!/usr/bin/env python3
"""
CLI 명령어 엔트리 포인트

사용법:
    uv run semiwave speed --model kpp --h 1.0 --c 2.5
    uv run semiwave speed --model nicholson --p 2 --h 1 --critical
    uv run semiwave zeros --model kpp --h 0 --c 2.5 --re-min 0.4 --re-max 2.1 --im-max 50
    uv run semiwave profile --model kpp --h 2 --c 2.5 --svg
    uv run semiwave verify --model may --p 2 --z 2 --k 1
    uv run semiwave evolve --model kpp --h 1 --c 2.5 --compare
    uv run semiwave runs --limit 10
    uv run test-semiwave
"""

import argparse
import logging
import sys
import os
from typing import List, Optional

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import build_config, default_db_url, default_log_level, load_env
from pipeline import EXIT_CONFIG, EXIT_OK, run_command
from report import dumps

logger = logging.getLogger(__name__)

JSON_COMMANDS = ('speed', 'zeros', 'verify')


def _add_model_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('모델')
    group.add_argument('--model', dest='name', help='kpp | nicholson | may | ub_violating | custom')
    group.add_argument('--h', type=float, help='최대 지연')
    group.add_argument('--p', type=float, help="g'(0) (nicholson, may)")
    group.add_argument('--z', type=float, help='May 지수')
    group.add_argument('--k', type=float, help='May 척도')
    group.add_argument('--kappa', type=float, help='custom 모델의 양의 평형점')
    group.add_argument('--expression', help='custom 반응식 (sympy)')
    group.add_argument('--tap', action='append', metavar='SYMBOL=S', help='custom 탭 기호와 지연 (반복 가능)')


def _add_speed_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('속도')
    group.add_argument('--c', type=float, help='속도')
    group.add_argument('--critical', action='store_true', default=None, help='c = c* 사용')
    group.add_argument('--c-offset', type=float, help='c* 에 더할 값')


def _add_solver_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group('솔버')
    group.add_argument('--t-min', type=float, help='격자 왼쪽 끝 (기본 -40/λ₁)')
    group.add_argument('--t-max', type=float, help='격자 오른쪽 끝')
    group.add_argument('--step', type=float, help='격자 간격')
    group.add_argument('--damping', type=float, help='감쇠 계수 ω')
    group.add_argument('--tol', type=float, help='수렴 허용 오차')
    group.add_argument('--max-iter', type=int, help='최대 반복')
    group.add_argument('--acceleration', choices=['none', 'anderson'], help='가속 방식')


def _add_common_args(parser: argparse.ArgumentParser):
    parser.add_argument('--config', help='TOML 설정 파일 (옵션보다 우선)')
    parser.add_argument('--out-dir', help='출력 디렉토리 (기본 SEMIWAVE_OUTPUT_DIR 또는 ./output)')
    parser.add_argument('--record', action='store_true', default=None, help='실행 기록 DB에 저장')
    parser.add_argument('--log-level', help='로그 레벨 (기본 SEMIWAVE_LOG_LEVEL 또는 INFO)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='semiwave', description='지연 반응-확산 방정식의 반파면 계산 도구')
    sub = parser.add_subparsers(dest='command', required=True)

    speed = sub.add_parser('speed', help='c*, λ₁(c), λ₂(c), 지배성')
    _add_model_args(speed)
    _add_speed_args(speed)
    _add_common_args(speed)

    zeros = sub.add_parser('zeros', help='직사각형 안 특성 함수 영점 개수')
    _add_model_args(zeros)
    _add_speed_args(zeros)
    zeros.add_argument('--re-min', type=float, help='실수부 하한')
    zeros.add_argument('--re-max', type=float, help='실수부 상한')
    zeros.add_argument('--im-max', type=float, help='허수부 절댓값 상한')
    _add_common_args(zeros)

    profile = sub.add_parser('profile', help='반파면 프로파일 계산')
    _add_model_args(profile)
    _add_speed_args(profile)
    _add_solver_args(profile)
    profile.add_argument('--svg', action='store_true', default=None, help='SVG 그림 저장')
    profile.add_argument('--oracle', action='store_true', default=None, help='h=0 사격법과 비교')
    _add_common_args(profile)

    verify = sub.add_parser('verify', help='가설 검사, 진단량, 일치 검사')
    _add_model_args(verify)
    _add_speed_args(verify)
    _add_solver_args(verify)
    verify.add_argument('--samples', type=int, help='가설별 표본 수')
    verify.add_argument('--seed', type=int, help='난수 씨앗')
    verify.add_argument('--epsilon', type=float, help='(LB) 의 ε')
    verify.add_argument('--seeds', dest='n_seeds', type=int, help='일치 검사 씨앗 수 (0이면 생략)')
    verify.add_argument('--workers', type=int, help='일치 검사 동시 풀이 수')
    verify.add_argument('--diagnostics', action='store_true', default=None, help='Q 와 π 적분 계산')
    _add_common_args(verify)

    evolve = sub.add_parser('evolve', help='시간 발전 전선 속도')
    _add_model_args(evolve)
    _add_speed_args(evolve)
    _add_solver_args(evolve)
    evolve.add_argument('--dx', type=float, help='공간 간격')
    evolve.add_argument('--t-run', type=float, help='실행 시간')
    evolve.add_argument('--domain', type=float, nargs=2, metavar=('L_MINUS', 'L_PLUS'), help='공간 영역')
    evolve.add_argument('--tail-rate', type=float, help='초기 자료 왼쪽 꼬리 감쇠율')
    evolve.add_argument('--implicit', action='store_true', default=None, help='반암시적 확산')
    evolve.add_argument('--compact', action='store_true', default=None, help='계단형 (왼쪽 0) 초기 자료')
    evolve.add_argument('--compare', action='store_true', default=None, help='솔버 프로파일과 비교')
    _add_common_args(evolve)

    runs = sub.add_parser('runs', help='실행 기록 조회')
    runs.add_argument('--model', help='모델 이름으로 거르기')
    runs.add_argument('--limit', type=int, default=20, help='표시할 실행 수')
    runs.add_argument('--log-level', help='로그 레벨')
    return parser


def _parse_taps(items: Optional[List[str]]) -> Optional[dict]:
    if not items:
        return None
    taps = {}
    for item in items:
        if '=' not in item:
            raise ValueError(f"탭은 SYMBOL=S 형식이어야 합니다: {item}")
        symbol, delay = item.split('=', 1)
        taps[symbol.strip()] = float(delay)
    return taps


def configure_logging(level: Optional[str]):
    level_name = (level or default_log_level()).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def list_runs(model: Optional[str], limit: int) -> int:
    """실행 기록 표 출력"""
    import pandas as pd
    from database import Database, RunQueries

    db = Database(default_db_url())
    db.create_tables()
    with db.get_session() as session:
        if model:
            runs = RunQueries.get_runs_by_model(session, model)[-limit:]
        else:
            runs = RunQueries.get_recent_runs(session, limit)
        rows = [
            {
                'id': r.id,
                'command': r.command,
                'model': r.model,
                'status': r.status,
                'exit_code': r.exit_code,
                'created_at': r.created_at.strftime('%Y-%m-%d %H:%M:%S') if r.created_at else '',
            }
            for r in runs
        ]

    if not rows:
        print("실행 기록이 없습니다.")
        return EXIT_OK
    print(pd.DataFrame(rows).to_string(index=False))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    명령 실행 후 종료 코드 반환

    종료 코드: 0 정상, 2 잘못된 설정, 3 수치 실패, 4 프로파일 미수렴, 5 가설 실패
    """
    load_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    if args.command == 'runs':
        return list_runs(args.model, args.limit)

    flags = {k: v for k, v in vars(args).items() if k not in ('config', 'log_level', 'tap')}
    try:
        flags['taps'] = _parse_taps(args.tap)
        config = build_config(flags, args.config)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"semiwave: 오류: {e}", file=sys.stderr)
        return EXIT_CONFIG

    result = run_command(config)
    if config.command in JSON_COMMANDS:
        sys.stdout.write(dumps(result['payload']))
        print(result.get('summary', ''), file=sys.stderr)
    else:
        print(result.get('summary', ''))
    return result['exit_code']


def run():
    """콘솔 스크립트 엔트리"""
    sys.exit(main())


def test_command():
    """
    단위 테스트 실행 CLI

    사용법:
        uv run test-semiwave
        uv run test-semiwave tests/unit/test_chareq.py
        uv run test-semiwave -m "not slow"
    """
    import pytest

    # sys.argv[0]는 스크립트 이름이므로 제거하고 나머지 인자만 전달
    args = sys.argv[1:]
    sys.exit(pytest.main(args))


if __name__ == '__main__':
    run()
