#!/usr/bin/env python3
"""
명령별 실행 흐름

각 run_* 함수는 단계별로 예외를 잡아 결과 딕셔너리에 모읍니다:

    {'command', 'model', 'success', 'exit_code', 'payload', 'errors', 'files'}

종료 코드: 0 정상, 2 잘못된 설정, 3 수치 실패, 4 프로파일 미수렴, 5 가설 실패
"""

import sys
import os
from typing import Optional, Tuple
import logging

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.dirname(__file__))

from asymptotics import fit_decay, is_monotone
from chareq import (
    ContourError, CriticalSpeedError, analyze_speed, count_zeros_detailed,
    critical_speed, real_roots
)
from config import RunConfig, default_db_url, resolve_model
from database import Database, RunSaver
from evolution import compact_front, compare_with_profile, traveling_front
from reaction import Model
from report import RunReport, write_csv, write_json, write_profile_svg
from verify import VerificationReport, align_profiles, check_hypotheses, diagnostics_Q, uniqueness_harness
from wavefront import ProfileSolution, shoot_front, solve_profile

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_NOT_CONVERGED = 4
EXIT_HYPOTHESIS = 5

STATUS = {
    EXIT_OK: 'ok',
    EXIT_CONFIG: 'invalid_config',
    EXIT_NUMERICAL: 'numerical_failure',
    EXIT_NOT_CONVERGED: 'not_converged',
    EXIT_HYPOTHESIS: 'hypothesis_failed',
}

DEFAULT_VERIFY_OFFSET = 0.5


def _new_result(config: RunConfig) -> dict:
    return {
        'command': config.command,
        'model': config.model_name,
        'success': True,
        'exit_code': EXIT_OK,
        'payload': {},
        'errors': [],
        'files': [],
    }


def _fail(result: dict, code: int, message: str) -> dict:
    result['success'] = False
    if result['exit_code'] == EXIT_OK:
        result['exit_code'] = code
    result['errors'].append(message)
    return result


def _load_model(config: RunConfig, result: dict) -> Optional[Model]:
    try:
        return resolve_model(config.model)
    except ValueError as e:
        logger.error(f"모델 설정 오류: {e}")
        _fail(result, EXIT_CONFIG, f"모델: {e}")
        return None


def resolve_speed(config: RunConfig, model: Model, default_offset: float = 0.0) -> Tuple[float, bool]:
    """(c, c* 에서 왔는지) 설정의 c, critical, c_offset 해석"""
    if config.c is not None and not config.critical:
        return float(config.c), False
    offset = config.c_offset if config.critical or config.c_offset else default_offset
    return critical_speed(model).c_star + offset, True


def _output_path(config: RunConfig, name: str) -> str:
    return os.path.join(config.out_dir, name)


def _finish(config: RunConfig, result: dict) -> dict:
    """JSON 본문 저장, 요약 작성, 실행 기록"""
    payload = result['payload']
    payload['exit_code'] = result['exit_code']
    payload['errors'] = list(result['errors'])

    try:
        path = write_json(_output_path(config, f"{config.command}.json"), payload, config.to_dict())
        result['files'].append(path)
    except OSError as e:
        logger.error(f"JSON 저장 실패: {e}", exc_info=True)
        result['errors'].append(f"JSON 저장: {e}")

    reporter = RunReport()
    result['summary'] = reporter.generate_report(config.command, config.model_name, payload, result['errors'])
    try:
        result['files'].append(reporter.save_report(result['summary'], _output_path(config, 'summary.txt')))
    except OSError as e:
        result['errors'].append(f"요약 저장: {e}")

    if config.record:
        record_run(config, result)
    return result


def record_run(config: RunConfig, result: dict, db: Optional[Database] = None) -> Optional[int]:
    """실행 기록 저장 (실패해도 종료 코드는 바꾸지 않음)"""
    try:
        db = db or Database(default_db_url())
        db.create_tables()
        with db.get_session() as session:
            saver = RunSaver(session)
            run = saver.save_run(
                command=config.command,
                model=config.model_name,
                config=config.to_dict(),
                config_hash=config.config_hash(),
                status=STATUS.get(result['exit_code'], 'failed'),
                exit_code=result['exit_code'],
            )
            payload = result['payload']
            if payload.get('speed') and payload['speed'].get('c_star') is not None:
                saver.save_speed(run.id, payload['speed'])
            if payload.get('profile'):
                saver.save_profile(run.id, payload['profile'])
            if payload.get('verification'):
                saver.save_hypotheses(run.id, list(payload['verification']['hypotheses'].values()))
            result['run_id'] = run.id
            return run.id
    except Exception as e:
        logger.error(f"실행 기록 저장 실패: {e}", exc_info=True)
        result['errors'].append(f"실행 기록: {e}")
        return None


def run_speed(config: RunConfig) -> dict:
    """c*, λ₁(c), λ₂(c), 지배성"""
    result = _new_result(config)
    model = _load_model(config, result)
    if model is None:
        return _finish(config, result)

    try:
        crit = critical_speed(model)
        result['payload']['critical_speed'] = crit.to_dict()
        if crit.agreed is False:
            _fail(
                result, EXIT_NUMERICAL,
                f"임계 속도: Newton c*={crit.newton[0]:.15g}와 이분법 c*={crit.bisection:.15g}가 다릅니다"
            )
        if config.critical or config.c is None:
            analysis = analyze_speed(model, c=None, c_offset=config.c_offset)
        else:
            analysis = analyze_speed(model, c=config.c)
        result['payload']['speed'] = analysis.to_dict()
        if analysis.subcritical:
            logger.warning(f"{model.name}: c={analysis.c} < c*={analysis.c_star}, 실근이 없습니다")
    except (CriticalSpeedError, ContourError) as e:
        logger.error(f"속도 분석 실패: {e}", exc_info=True)
        _fail(result, EXIT_NUMERICAL, f"속도 분석: {e}")
    except ValueError as e:
        _fail(result, EXIT_CONFIG, f"속도 분석: {e}")
    return _finish(config, result)


def run_zeros(config: RunConfig) -> dict:
    """직사각형 안 χ(·, c) 영점 개수"""
    result = _new_result(config)
    model = _load_model(config, result)
    if model is None:
        return _finish(config, result)

    try:
        c, _ = resolve_speed(config, model)
        re_min, re_max, im_max = config.re_min, config.re_max, config.im_max
        if re_min is None or re_max is None:
            roots = real_roots(model, c)
            if roots is None:
                raise ValueError(f"c={c} < c* 이고 실수부 범위가 지정되지 않았습니다")
            re_min = roots.lambda1 - 1e-3 if re_min is None else re_min
            re_max = roots.lambda2 + 1e-3 if re_max is None else re_max
        im_max = 50.0 if im_max is None else im_max

        zeros = count_zeros_detailed(model, c, (re_min, re_max), im_max)
        result['payload']['c'] = c
        result['payload']['zeros'] = zeros.to_dict()
        logger.info(f"{model.name}: c={c:.6g} 영점 {zeros.count}개")
    except ContourError as e:
        logger.error(f"영점 세기 실패: {e}", exc_info=True)
        _fail(result, EXIT_NUMERICAL, f"영점: {e}")
    except ValueError as e:
        _fail(result, EXIT_CONFIG, f"영점: {e}")
    return _finish(config, result)


def profile_report(sol: ProfileSolution, result: dict, oracle: bool = False) -> dict:
    """수렴한 해의 감쇠 적합, 진동, 진단량, 사격법 비교를 요약에 추가"""
    summary = sol.summary()
    if not sol.converged:
        return summary

    try:
        fit = fit_decay(sol)
        summary['decay'] = fit.to_dict()
        summary['oscillatory'] = fit.oscillatory
    except ValueError as e:
        logger.warning(f"감쇠 적합 실패: {e}")
        result['errors'].append(f"감쇠 적합: {e}")
    summary['monotone'] = is_monotone(sol)

    try:
        summary['Q_min'], summary['pi_integral'] = diagnostics_Q(sol)
    except ValueError as e:
        result['errors'].append(f"진단량: {e}")

    if oracle:
        try:
            reference = shoot_front(sol.model, sol.c, sol.t)
            shift, error = align_profiles(sol.t, reference, sol.phi, max_shift=1.0)
            summary['oracle_error'] = error
            summary['oracle_shift'] = shift
        except (ValueError, RuntimeError) as e:
            logger.warning(f"사격법 비교 생략: {e}")
            result['errors'].append(f"사격법: {e}")
    return summary


def run_profile(config: RunConfig) -> dict:
    """프로파일 계산과 CSV/JSON/SVG 출력"""
    result = _new_result(config)
    model = _load_model(config, result)
    if model is None:
        return _finish(config, result)

    try:
        options = config.solver_options()
        c, _ = resolve_speed(config, model)
        sol = solve_profile(model, c, options)
    except ValueError as e:
        _fail(result, EXIT_CONFIG, f"프로파일: {e}")
        return _finish(config, result)
    except Exception as e:
        logger.error(f"프로파일 계산 실패: {e}", exc_info=True)
        _fail(result, EXIT_NUMERICAL, f"프로파일: {e}")
        return _finish(config, result)

    result['solution'] = sol
    result['payload']['profile'] = profile_report(sol, result, oracle=config.oracle)
    if not sol.converged:
        _fail(result, EXIT_NOT_CONVERGED, f"프로파일 미수렴: 잔차 {sol.residual:.3e} > tol {sol.tol:g}")

    result['files'].append(write_csv(_output_path(config, 'profile.csv'), sol.to_frame()))
    if config.svg:
        try:
            result['files'].append(write_profile_svg(_output_path(config, 'profile.svg'), sol))
        except Exception as e:
            logger.error(f"SVG 저장 실패: {e}", exc_info=True)
            result['errors'].append(f"SVG: {e}")
    return _finish(config, result)


def run_verify(config: RunConfig) -> dict:
    """가설 검사, (선택) 진단량과 일치 검사"""
    result = _new_result(config)
    model = _load_model(config, result)
    if model is None:
        return _finish(config, result)

    try:
        hypotheses = check_hypotheses(model, config.samples, config.seed, config.epsilon)
    except ValueError as e:
        _fail(result, EXIT_CONFIG, f"가설 검사: {e}")
        return _finish(config, result)

    report = VerificationReport(model=model.name, hypotheses=hypotheses, tol=config.tol)
    options = config.solver_options()

    if config.diagnostics or config.n_seeds > 0:
        try:
            c, _ = resolve_speed(config, model, default_offset=DEFAULT_VERIFY_OFFSET)
            result['payload']['c'] = c
        except CriticalSpeedError as e:
            _fail(result, EXIT_NUMERICAL, f"임계 속도: {e}")
            c = None

        if c is not None and config.diagnostics:
            sol = solve_profile(model, c, options)
            if sol.converged:
                report.q_min, report.pi_integral = diagnostics_Q(sol)
            else:
                _fail(result, EXIT_NOT_CONVERGED, "진단용 프로파일 미수렴")

        if c is not None and config.n_seeds > 0:
            report.uniqueness = uniqueness_harness(
                model, c, config.n_seeds, options, seed=config.seed, workers=config.workers
            )

    result['report'] = report
    result['payload']['verification'] = report.to_dict()
    if not report.passed:
        problems = report.failed
        if not report.diagnostics_ok:
            problems = problems + ['diagnostics']
        if not report.uniqueness_ok:
            problems = problems + ['uniqueness']
        _fail(result, EXIT_HYPOTHESIS, f"검증 실패: {', '.join(problems)}")
    return _finish(config, result)


def run_evolve(config: RunConfig) -> dict:
    """시간 발전 전선 속도와 (선택) 솔버 프로파일 비교"""
    result = _new_result(config)
    model = _load_model(config, result)
    if model is None:
        return _finish(config, result)

    domain = tuple(config.domain) if config.domain else None
    try:
        if config.compact:
            expected = critical_speed(model).c_star
            front = compact_front(model, config.t_run, config.dx, domain, config.implicit, expected_speed=expected)
        else:
            if config.tail_rate is not None:
                rate = config.tail_rate
            else:
                c, _ = resolve_speed(config, model)
                roots = real_roots(model, c)
                if roots is None:
                    raise ValueError(f"c={c} < c*: 꼬리 감쇠율을 정할 수 없습니다")
                rate = roots.lambda1
            front = traveling_front(model, rate, config.t_run, config.dx, domain, config.implicit)
    except ValueError as e:
        _fail(result, EXIT_CONFIG, f"시간 발전: {e}")
        return _finish(config, result)
    except Exception as e:
        logger.error(f"시간 발전 실패: {e}", exc_info=True)
        _fail(result, EXIT_NUMERICAL, f"시간 발전: {e}")
        return _finish(config, result)

    result['front'] = front
    evolution = front.to_dict()
    result['files'].append(write_csv(_output_path(config, 'front.csv'), front.to_frame()))
    state = front.state
    final = pd.DataFrame({'x': state.x, 'u': np.array(state.u)})
    result['files'].append(write_csv(_output_path(config, 'final_profile.csv'), final))

    if front.aborted:
        _fail(result, EXIT_NUMERICAL, f"전선이 영역을 벗어나 t={front.times[-1] if front.times else 0:.4g} 에서 중단")
    elif config.compare and front.expected_speed is not None:
        sol = solve_profile(model, front.expected_speed, config.solver_options())
        if sol.converged:
            evolution['profile_error'] = compare_with_profile(state, sol)
        else:
            result['errors'].append("비교용 프로파일 미수렴")

    result['payload']['evolution'] = evolution
    return _finish(config, result)


COMMANDS = {
    'speed': run_speed,
    'zeros': run_zeros,
    'profile': run_profile,
    'verify': run_verify,
    'evolve': run_evolve,
}


def run_command(config: RunConfig) -> dict:
    """config.command 에 맞는 실행"""
    runner = COMMANDS.get(config.command)
    if runner is None:
        raise ValueError(f"알 수 없는 명령: {config.command} (사용 가능: {', '.join(COMMANDS)})")
    logger.info(f"{'=' * 60}")
    logger.info(f"{config.command}: {config.model_name}")
    logger.info(f"{'=' * 60}")
    return runner(config)
