"""
pytest 공통 픽스처 및 설정
"""

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
import sys
import os

# src 디렉토리를 경로에 추가
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from models import Base
from database.connection import Database
from reaction import builtin_kpp, may, nicholson, ub_violating
from wavefront import SolverOptions, solve_profile


# ============================================================================
# 데이터베이스 픽스처
# ============================================================================

@pytest.fixture(scope="function")
def db_engine():
    """SQLite 인메모리 DB 엔진 생성"""
    engine = create_engine('sqlite:///:memory:', echo=False)
    Base.metadata.create_all(bind=engine)
    yield engine
    Base.metadata.drop_all(bind=engine)
    engine.dispose()


@pytest.fixture(scope="function")
def db_session(db_engine):
    """테스트용 DB 세션"""
    Session = sessionmaker(bind=db_engine)
    session = Session()
    yield session
    session.close()


@pytest.fixture(scope="function")
def test_database():
    """Database 인스턴스 (인메모리)"""
    db = Database(db_url='sqlite:///:memory:')
    db.create_tables()
    yield db
    db.dispose()


# ============================================================================
# 모델 픽스처
# ============================================================================

@pytest.fixture
def kpp_model():
    """지연 KPP-Fisher (h=1)"""
    return builtin_kpp(1.0)


@pytest.fixture
def kpp_local():
    """지연 없는 KPP-Fisher (h=0)"""
    return builtin_kpp(0.0)


@pytest.fixture
def nicholson_model():
    """Nicholson (h=1, p=2)"""
    return nicholson(1.0, 2.0)


@pytest.fixture
def may_model():
    """May (h=1, p=2, z=2, k=1)"""
    return may(1.0, 2.0, 2.0, 1.0)


@pytest.fixture
def ub_violating_model():
    """(UB) 위반 합성 모델"""
    return ub_violating()


# ============================================================================
# 프로파일 픽스처
# ============================================================================

@pytest.fixture(scope="session")
def fast_options():
    """테스트용 솔버 설정 (거친 격자)"""
    return SolverOptions(t_min=-40.0, t_max=30.0, step=0.05, damping=0.8, tol=1e-8)


@pytest.fixture(scope="session")
def kpp_solution(fast_options):
    """수렴한 h=0, c=2.5 KPP 프로파일 (세션 공유)"""
    sol = solve_profile(builtin_kpp(0.0), 2.5, fast_options)
    assert sol.converged
    return sol


# ============================================================================
# 출력 픽스처
# ============================================================================

@pytest.fixture
def out_dir(tmp_path):
    """임시 출력 디렉토리"""
    path = tmp_path / 'output'
    path.mkdir()
    return str(path)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """SEMIWAVE_* 환경 변수 제거 (자동 적용)"""
    for name in ('SEMIWAVE_OUTPUT_DIR', 'SEMIWAVE_DB_URL', 'SEMIWAVE_LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
