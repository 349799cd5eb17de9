from sqlalchemy import Column, Integer, Float, Boolean, String, DateTime, ForeignKey, Index, UniqueConstraint
from .run import Base
from datetime import datetime

class ProfileRecord(Base):
    __tablename__ = 'profiles'

    # 컬럼 정의
    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('runs.id'), nullable=False, comment='실행 ID')
    c = Column(Float, nullable=False, comment='속도')
    step = Column(Float, nullable=False, comment='격자 간격')
    t_min = Column(Float, nullable=False, comment='격자 왼쪽 끝')
    t_max = Column(Float, nullable=False, comment='격자 오른쪽 끝')
    residual = Column(Float, comment='sup|Aφ - φ|')
    iterations = Column(Integer, nullable=False, comment='반복 횟수')
    converged = Column(Boolean, nullable=False, comment='수렴 여부')
    decay_rate = Column(Float, comment='맞춘 꼬리 감쇠율')
    decay_mode = Column(String(40), comment='감쇠 모드')
    oscillatory = Column(Boolean, comment='κ 주위 진동 여부')
    q_min = Column(Float, comment='Q 최솟값')
    pi_integral = Column(Float, comment='π 적분')
    created_at = Column(DateTime, default=datetime.now, comment='등록일시')

    # 제약조건 및 인덱스
    __table_args__ = (
        UniqueConstraint('run_id', name='uq_profile_run'),
        Index('idx_profile_converged', 'converged'),
    )

    def __repr__(self):
        return f"<ProfileRecord(run_id={self.run_id}, c={self.c}, converged={self.converged})>"
