import json
import logging
import sys
import os
from sqlalchemy.orm import Session
from sqlalchemy.exc import IntegrityError
from typing import List, Optional

# 상대 경로 처리
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from models import RunRecord, SpeedRecord, ProfileRecord, HypothesisRecord

logger = logging.getLogger(__name__)

class RunSaver:
    """실행 결과를 데이터베이스에 저장"""

    def __init__(self, db_session: Session):
        self.session = db_session

    def save_run(
        self,
        command: str,
        model: str,
        config: dict,
        config_hash: str,
        status: str,
        exit_code: int
    ) -> RunRecord:
        """
        실행 한 건 저장

        Args:
            command: 하위 명령
            model: 모델 이름
            config: 해석된 전체 설정
            config_hash: 설정 해시
            status: 실행 상태
            exit_code: 종료 코드

        Returns:
            저장된 RunRecord
        """
        run = RunRecord(
            command=command,
            model=model,
            config_json=json.dumps(config, sort_keys=True, default=str),
            config_hash=config_hash,
            status=status,
            exit_code=exit_code,
        )
        self.session.add(run)
        self.session.commit()
        logger.info(f"실행 기록 저장: {run}")
        return run

    def save_speed(self, run_id: int, analysis: dict) -> Optional[SpeedRecord]:
        """속도 분석 저장 (analysis 는 SpeedAnalysis.to_dict() 형식)"""
        try:
            record = SpeedRecord(
                run_id=run_id,
                c=analysis['c'],
                c_star=analysis['c_star'],
                lambda_star=analysis['lambda_star'],
                lambda1=analysis.get('lambda1'),
                lambda2=analysis.get('lambda2'),
                critical=bool(analysis.get('critical', False)),
                dominance_ok=analysis.get('dominance_ok'),
            )
            self.session.add(record)
            self.session.commit()
            return record
        except IntegrityError:
            self.session.rollback()
            logger.debug(f"중복 데이터 스킵: 속도 분석 run_id={run_id}")
            return None

    def save_profile(self, run_id: int, summary: dict) -> Optional[ProfileRecord]:
        """프로파일 요약 저장 (summary 는 프로파일 보고서 형식)"""
        grid = summary.get('grid', {})
        decay = summary.get('decay') or {}
        try:
            record = ProfileRecord(
                run_id=run_id,
                c=summary['c'],
                step=grid.get('step'),
                t_min=grid.get('t_min'),
                t_max=grid.get('t_max'),
                residual=summary.get('residual'),
                iterations=summary.get('iterations', 0),
                converged=bool(summary.get('converged', False)),
                decay_rate=decay.get('rate'),
                decay_mode=decay.get('mode'),
                oscillatory=summary.get('oscillatory'),
                q_min=summary.get('Q_min'),
                pi_integral=summary.get('pi_integral'),
            )
            self.session.add(record)
            self.session.commit()
            return record
        except IntegrityError:
            self.session.rollback()
            logger.debug(f"중복 데이터 스킵: 프로파일 run_id={run_id}")
            return None

    def save_hypotheses(self, run_id: int, results: List[dict]) -> int:
        """
        가설 검사 결과 저장

        Returns:
            저장된 레코드 수
        """
        saved_count = 0
        for result in results:
            try:
                counterexample = result.get('counterexample')
                record = HypothesisRecord(
                    run_id=run_id,
                    name=result['name'],
                    passed=bool(result['passed']),
                    counterexample_json=json.dumps(counterexample, sort_keys=True) if counterexample else None,
                    n_samples=result.get('n_samples'),
                    seed=result.get('seed'),
                )
                self.session.add(record)
                self.session.commit()
                saved_count = saved_count + 1
            except IntegrityError:
                self.session.rollback()
                logger.debug(f"중복 데이터 스킵: 가설 {result.get('name')} run_id={run_id}")
            except Exception as e:
                self.session.rollback()
                logger.error(f"가설 저장 실패: {result.get('name')} - {e}")

        logger.info(f"가설 결과 저장: {saved_count}개 (run_id={run_id})")
        return saved_count
