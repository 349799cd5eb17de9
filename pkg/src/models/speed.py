from sqlalchemy import Column, Integer, Float, Boolean, DateTime, ForeignKey, UniqueConstraint
from .run import Base
from datetime import datetime

class SpeedRecord(Base):
    __tablename__ = 'speed_analysis'

    # 컬럼 정의
    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('runs.id'), nullable=False, comment='실행 ID')
    c = Column(Float, nullable=False, comment='속도')
    c_star = Column(Float, nullable=False, comment='임계 속도')
    lambda_star = Column(Float, nullable=False, comment='임계 이중근')
    lambda1 = Column(Float, comment='작은 실근 (아임계면 NULL)')
    lambda2 = Column(Float, comment='큰 실근 (아임계면 NULL)')
    critical = Column(Boolean, nullable=False, comment='이중근 여부')
    dominance_ok = Column(Boolean, comment='지배성 확인 결과')
    created_at = Column(DateTime, default=datetime.now, comment='등록일시')

    # 제약조건
    __table_args__ = (
        UniqueConstraint('run_id', name='uq_speed_run'),
    )

    def __repr__(self):
        return f"<SpeedRecord(run_id={self.run_id}, c={self.c}, c_star={self.c_star})>"
