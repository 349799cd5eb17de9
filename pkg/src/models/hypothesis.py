from sqlalchemy import Column, Integer, String, Boolean, Text, DateTime, ForeignKey, Index, UniqueConstraint
from .run import Base
from datetime import datetime

class HypothesisRecord(Base):
    __tablename__ = 'hypotheses'

    # 컬럼 정의
    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('runs.id'), nullable=False, comment='실행 ID')
    name = Column(String(4), nullable=False, comment='가설 (M/S/J/ND/UB/LB)')
    passed = Column(Boolean, nullable=False, comment='통과 여부')
    counterexample_json = Column(Text, comment='반례 (JSON)')
    n_samples = Column(Integer, comment='표본 수')
    seed = Column(Integer, comment='씨앗')
    created_at = Column(DateTime, default=datetime.now, comment='등록일시')

    # 제약조건 및 인덱스
    __table_args__ = (
        UniqueConstraint('run_id', 'name', name='uq_run_hypothesis'),
        Index('idx_hypothesis_passed', 'passed'),
    )

    def __repr__(self):
        return f"<HypothesisRecord(run_id={self.run_id}, name='{self.name}', passed={self.passed})>"
