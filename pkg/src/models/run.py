from sqlalchemy import Column, String, Integer, Text, DateTime, Index
from sqlalchemy.ext.declarative import declarative_base
from datetime import datetime

Base = declarative_base()

class RunRecord(Base):
    __tablename__ = 'runs'

    # 컬럼 정의
    id = Column(Integer, primary_key=True, autoincrement=True)
    command = Column(String(20), nullable=False, comment='하위 명령 (speed/zeros/profile/verify/evolve)')
    model = Column(String(50), nullable=False, comment='모델 이름')
    config_json = Column(Text, nullable=False, comment='해석된 전체 설정 (JSON)')
    config_hash = Column(String(64), nullable=False, comment='설정 SHA-256')
    status = Column(String(20), nullable=False, comment='ok / failed / not_converged / hypothesis_failed')
    exit_code = Column(Integer, nullable=False, comment='종료 코드')
    created_at = Column(DateTime, default=datetime.now, comment='실행일시')

    # 인덱스
    __table_args__ = (
        Index('idx_run_model', 'model'),
        Index('idx_run_created', 'created_at'),
        Index('idx_run_hash', 'config_hash'),
    )

    def __repr__(self):
        return f"<RunRecord(id={self.id}, command='{self.command}', model='{self.model}', status='{self.status}')>"
