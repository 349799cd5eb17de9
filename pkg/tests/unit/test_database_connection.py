"""
Database 클래스 테스트
"""

import pytest
from sqlalchemy import inspect
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from database.connection import Database, resolve_db_url
from models import RunRecord


def _run(model: str = 'kpp', command: str = 'speed') -> RunRecord:
    return RunRecord(
        command=command, model=model, config_json='{}', config_hash='0' * 64,
        status='ok', exit_code=0,
    )


class TestDatabase:
    """Database 클래스 테스트"""

    def test_init_with_default_url(self):
        """기본 SQLite URL로 초기화"""
        db = Database()
        assert db.engine is not None
        assert 'runs.db' in str(db.engine.url)

    def test_init_from_env(self, monkeypatch):
        """SEMIWAVE_DB_URL 사용"""
        monkeypatch.setenv('SEMIWAVE_DB_URL', 'sqlite:///:memory:')
        db = Database()
        assert str(db.engine.url) == 'sqlite:///:memory:'

    def test_init_with_custom_url(self):
        """커스텀 URL로 초기화 (인메모리)"""
        db = Database(db_url='sqlite:///:memory:')
        assert db.db_url == 'sqlite:///:memory:'

    def test_create_tables(self, test_database):
        """4개 테이블 생성 확인"""
        tables = inspect(test_database.engine).get_table_names()
        for table in ['runs', 'speed_analysis', 'profiles', 'hypotheses']:
            assert table in tables, f"테이블 {table}이 생성되지 않았습니다"

    def test_create_tables_is_idempotent(self, test_database):
        """두 번 불러도 기존 기록 유지"""
        with test_database.get_session() as session:
            session.add(_run())
            session.commit()

        test_database.create_tables()
        assert test_database.table_names() == ['hypotheses', 'profiles', 'runs', 'speed_analysis']
        with test_database.get_session() as session:
            assert session.query(RunRecord).count() == 1

    def test_get_session_context_manager(self, test_database):
        """세션 컨텍스트 매니저 사용"""
        with test_database.get_session() as session:
            assert session.is_active
            session.add(_run())
            session.commit()

        with test_database.get_session() as session:
            result = session.query(RunRecord).filter_by(model='kpp').first()
            assert result is not None
            assert result.created_at is not None

    def test_get_session_auto_close_on_error(self, test_database):
        """예외 발생 시에도 커밋된 데이터는 유지"""
        with pytest.raises(ValueError):
            with test_database.get_session() as session:
                session.add(_run())
                session.commit()
                raise ValueError("테스트 예외")

        with test_database.get_session() as session:
            assert session.query(RunRecord).count() == 1

    def test_transaction_rollback(self, test_database):
        """롤백한 데이터는 남지 않음"""
        with test_database.get_session() as session:
            session.add(_run())
            session.rollback()

        with test_database.get_session() as session:
            assert session.query(RunRecord).count() == 0


class TestResolveDbUrl:
    """resolve_db_url 테스트"""

    def test_argument_wins_over_env(self, monkeypatch):
        monkeypatch.setenv('SEMIWAVE_DB_URL', 'sqlite:///env.db')
        assert resolve_db_url('sqlite:///:memory:') == 'sqlite:///:memory:'

    def test_default_file(self, monkeypatch):
        monkeypatch.delenv('SEMIWAVE_DB_URL', raising=False)
        url = resolve_db_url()
        assert url.startswith('sqlite:///')
        assert url.endswith('runs.db')

    def test_creates_sqlite_parent_dir(self, tmp_path, monkeypatch):
        """환경 변수의 SQLite 경로도 상위 디렉토리를 만듦"""
        target = tmp_path / 'nested' / 'ledger' / 'runs.db'
        monkeypatch.setenv('SEMIWAVE_DB_URL', f'sqlite:///{target}')
        db = Database()
        assert target.parent.is_dir()
        db.create_tables()
        assert target.exists()
        db.dispose()
