"""
실행 기록 DB 연결

URL 우선순위: 인자 > SEMIWAVE_DB_URL > <프로젝트>/data/runs.db
SQLite 파일 URL이면 상위 디렉토리를 만들어 둡니다.
"""

import os
import sys
from contextlib import contextmanager
from typing import Iterator, Optional
import logging

from sqlalchemy import create_engine, inspect
from sqlalchemy.engine import make_url
from sqlalchemy.orm import Session, sessionmaker

sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from models import Base

logger = logging.getLogger(__name__)

ENV_DB_URL = 'SEMIWAVE_DB_URL'
DEFAULT_DATA_DIR = os.path.join(os.path.dirname(__file__), '..', '..', 'data')
DEFAULT_DB_FILE = 'runs.db'


def resolve_db_url(db_url: Optional[str] = None) -> str:
    """실행 기록 DB URL 결정 (SQLite 파일이면 디렉토리 생성)"""
    db_url = db_url or os.getenv(ENV_DB_URL)
    if not db_url:
        db_dir = os.path.abspath(DEFAULT_DATA_DIR)
        db_url = f'sqlite:///{os.path.join(db_dir, DEFAULT_DB_FILE)}'

    url = make_url(db_url)
    if url.get_backend_name() == 'sqlite' and url.database not in (None, '', ':memory:'):
        parent = os.path.dirname(os.path.abspath(url.database))
        os.makedirs(parent, exist_ok=True)
    return db_url


class Database:
    """실행 기록 (runs, speed_analysis, profiles, hypotheses) 연결"""

    def __init__(self, db_url: Optional[str] = None):
        self.db_url = resolve_db_url(db_url)
        self.engine = create_engine(self.db_url, echo=False, pool_pre_ping=True)
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)
        logger.info(f"실행 기록 DB 연결: {self.engine.url.render_as_string(hide_password=True)}")

    def create_tables(self):
        """없는 기록 테이블만 생성"""
        existing = set(inspect(self.engine).get_table_names())
        Base.metadata.create_all(bind=self.engine)
        created = sorted(set(Base.metadata.tables) - existing)
        if created:
            logger.info(f"실행 기록 테이블 생성: {', '.join(created)}")

    def table_names(self) -> list:
        return sorted(inspect(self.engine).get_table_names())

    def dispose(self):
        """연결 풀 정리"""
        self.engine.dispose()

    @contextmanager
    def get_session(self) -> Iterator[Session]:
        """세션 컨텍스트 매니저 (커밋은 호출 쪽에서)"""
        session = self.SessionLocal()
        try:
            yield session
        finally:
            session.close()
