from sqlalchemy.orm import Session
from sqlalchemy import desc
from datetime import datetime
from typing import List, Optional
import sys
import os

# 상대 경로 처리
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from models import RunRecord, SpeedRecord, ProfileRecord, HypothesisRecord

class RunQueries:
    """실행 기록 조회 쿼리"""

    @staticmethod
    def get_run(session: Session, run_id: int) -> Optional[RunRecord]:
        """실행 하나 조회"""
        return session.query(RunRecord).filter_by(id=run_id).first()

    @staticmethod
    def get_recent_runs(session: Session, limit: int = 20) -> List[RunRecord]:
        """최근 실행 조회 (최신순)"""
        return session.query(RunRecord)\
            .order_by(desc(RunRecord.created_at), desc(RunRecord.id))\
            .limit(limit).all()

    @staticmethod
    def get_runs_by_model(session: Session, model: str, command: str = None) -> List[RunRecord]:
        """모델별 실행 조회"""
        query = session.query(RunRecord).filter_by(model=model)
        if command:
            query = query.filter(RunRecord.command == command)
        return query.order_by(RunRecord.id).all()

    @staticmethod
    def get_speed(session: Session, run_id: int) -> Optional[SpeedRecord]:
        """실행의 속도 분석 조회"""
        return session.query(SpeedRecord).filter_by(run_id=run_id).first()

    @staticmethod
    def get_profiles(
        session: Session,
        model: str = None,
        converged: bool = None
    ) -> List[ProfileRecord]:
        """프로파일 요약 조회"""
        query = session.query(ProfileRecord).join(RunRecord, ProfileRecord.run_id == RunRecord.id)

        if model:
            query = query.filter(RunRecord.model == model)
        if converged is not None:
            query = query.filter(ProfileRecord.converged == converged)

        return query.order_by(ProfileRecord.run_id).all()

    @staticmethod
    def get_hypotheses(session: Session, run_id: int) -> List[HypothesisRecord]:
        """실행의 가설 검사 결과 조회"""
        return session.query(HypothesisRecord).filter_by(run_id=run_id)\
            .order_by(HypothesisRecord.id).all()

    @staticmethod
    def get_failed_hypotheses(session: Session, model: str = None) -> List[HypothesisRecord]:
        """실패한 가설 조회"""
        query = session.query(HypothesisRecord).filter(HypothesisRecord.passed.is_(False))
        if model:
            query = query.join(RunRecord, HypothesisRecord.run_id == RunRecord.id)\
                .filter(RunRecord.model == model)
        return query.order_by(HypothesisRecord.run_id, HypothesisRecord.id).all()

    @staticmethod
    def delete_runs_before(session: Session, cutoff: datetime) -> int:
        """cutoff 이전 실행과 딸린 기록 삭제, 삭제한 실행 수 반환"""
        run_ids = [r.id for r in session.query(RunRecord.id).filter(RunRecord.created_at < cutoff).all()]
        if not run_ids:
            return 0

        for model in (SpeedRecord, ProfileRecord, HypothesisRecord):
            session.query(model).filter(model.run_id.in_(run_ids)).delete(synchronize_session=False)
        session.query(RunRecord).filter(RunRecord.id.in_(run_ids)).delete(synchronize_session=False)
        session.commit()
        return len(run_ids)
